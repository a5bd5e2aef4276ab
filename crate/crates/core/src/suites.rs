//! Exhaustive and seeded verification suites, one per acceptance
//! criterion. Each returns an [`Outcome`] instead of panicking so that
//! callers can print a line per criterion and keep going.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{card_formula, enumerate_products, phi_fiber_census, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::gf::{
    is_irreducible, make_prime_field, roots_in, smallest_irreducible, Elem, Field, Poly,
};
use crate::linalg::{eigen_data_in, is_cyclic, rank, Mat};
use crate::spancrit::{
    assemble, common_splitting_field, commutator_2x2_sides, condition_c_from, eigenvector_matrices,
    gdsm_dimension, irreducible_criterion, kron_eigenvalue_set, pbh_sides, psi_apply, psi_matrix,
    rabs_identity_check, shift_example, span_dimension_with, theorem1_verdict_with, SpanReport,
};
use crate::DEFAULT_SEED;

/// Seed and rank routine shared by all suites. Replacing the rank routine
/// is how the suites are checked to catch a broken build.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub rank: fn(&Mat) -> usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            rank,
        }
    }
}

impl SuiteConfig {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    /// Every check of the criterion held. Runtime is judged separately.
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
    /// Results reported but excluded from `passed`.
    pub exploratory: Option<String>,
}

impl Outcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn ok(&self) -> bool {
        self.passed && self.within_limit()
    }

    /// `PASS`/`FAIL` line with timing and detail.
    pub fn line(&self) -> String {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{status}] criterion {:>2} {}: {} ({:.2}s, limit {}s)",
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        if let Some(e) = &self.exploratory {
            s.push_str(&format!("; exploratory: {e}"));
        }
        s
    }
}

struct Spec {
    id: u8,
    name: &'static str,
    limit: u64,
    run: fn(&SuiteConfig) -> Result<Checked>,
}

struct Checked {
    passed: bool,
    detail: String,
    exploratory: Option<String>,
}

impl Checked {
    fn new(passed: bool, detail: String) -> Checked {
        Checked {
            passed,
            detail,
            exploratory: None,
        }
    }
}

const SPECS: [Spec; 10] = [
    Spec {
        id: 1,
        name: "span criterion, exhaustive F2 2x2",
        limit: 10,
        run: span_criterion_exhaustive,
    },
    Spec {
        id: 2,
        name: "span criterion, sampled F3 and F2 companions",
        limit: 60,
        run: span_criterion_sampled,
    },
    Spec {
        id: 3,
        name: "shift example",
        limit: 5,
        run: shift_examples,
    },
    Spec {
        id: 4,
        name: "Krylov vs eigenvalue pencil rank",
        limit: 30,
        run: pbh_random,
    },
    Spec {
        id: 5,
        name: "nonzero entries of USV",
        limit: 60,
        run: gdsm_random,
    },
    Spec {
        id: 6,
        name: "irreducible pairs and gcd(m,n)",
        limit: 10,
        run: irreducible_pairs,
    },
    Spec {
        id: 7,
        name: "cardinality formula grid",
        limit: 120,
        run: cardinality_grid,
    },
    Spec {
        id: 8,
        name: "outer product fiber census",
        limit: 10,
        run: fiber_census,
    },
    Spec {
        id: 9,
        name: "2x2 commutator test",
        limit: 60,
        run: commutator_exhaustive,
    },
    Spec {
        id: 10,
        name: "psi map consistency",
        limit: 60,
        run: psi_consistency,
    },
];

/// Criteria run by the quick self-test: exhaustive F2 checks and the
/// counting grid.
pub const QUICK: [u8; 5] = [1, 3, 6, 7, 8];

/// Runs one criterion by number (1 to 10).
pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Option<Outcome> {
    let spec = SPECS.iter().find(|s| s.id == id)?;
    let start = Instant::now();
    let checked = (spec.run)(cfg).unwrap_or_else(|e| Checked::new(false, format!("error: {e}")));
    Some(Outcome {
        id,
        name: spec.name,
        passed: checked.passed,
        detail: checked.detail,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(spec.limit),
        exploratory: checked.exploratory,
    })
}

/// Runs all ten criteria in order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<Outcome> {
    (1..=10).filter_map(|id| run_criterion(id, cfg)).collect()
}

/// Every `rows x cols` matrix over a prime field.
pub fn all_matrices(field: &Field, rows: usize, cols: usize) -> Vec<Mat> {
    let q = field.order() as usize;
    let total = q.pow((rows * cols) as u32);
    (0..total)
        .map(|mut t| {
            Mat::from_fn(field, rows, cols, |_, _| {
                let e = field.from_int((t % q) as i64);
                t /= q;
                e
            })
        })
        .collect()
}

/// Every monic polynomial of degree `d` over a prime field.
fn all_monic(field: &Field, d: usize) -> Vec<Poly> {
    all_matrices(field, 1, d)
        .into_iter()
        .map(|row| {
            let mut c = row.entries().to_vec();
            c.push(field.one());
            Poly::new(field, c)
        })
        .collect()
}

fn random_irreducible<R: Rng>(field: &Field, d: usize, rng: &mut R) -> Result<Poly> {
    loop {
        let g = Poly::random_monic(field, d, rng);
        if is_irreducible(&g)? {
            return Ok(g);
        }
    }
}

/// Verdict from cached eigen data; the span side uses `cfg.rank`.
struct Cached {
    cyclic: HashMap<Vec<u32>, bool>,
}

impl Cached {
    fn new() -> Cached {
        Cached {
            cyclic: HashMap::new(),
        }
    }

    fn cyclic(&mut self, m: &Mat) -> Result<bool> {
        if let Some(&c) = self.cyclic.get(&m.key()) {
            return Ok(c);
        }
        let c = is_cyclic(m)?;
        self.cyclic.insert(m.key(), c);
        Ok(c)
    }

    fn verdicts(
        &mut self,
        a: &Mat,
        b: &Mat,
        ss: &[Mat],
        cfg: &SuiteConfig,
    ) -> Result<Vec<SpanReport>> {
        let ext = common_splitting_field(a, b)?;
        let ea = eigen_data_in(a, &ext)?;
        let eb = eigen_data_in(b, &ext)?;
        let (ac, bc) = (self.cyclic(a)?, self.cyclic(b)?);
        ss.iter()
            .map(|s| {
                let span = span_dimension_with(a, b, s, cfg.rank)?;
                Ok(assemble(
                    a.rows(),
                    b.rows(),
                    span,
                    ac,
                    bc,
                    condition_c_from(&ea, &eb, s)?,
                ))
            })
            .collect()
    }
}

fn report_ok(r: &SpanReport, a: &Mat, b: &Mat, s: &Mat) -> Result<bool> {
    let witness_ok = match &r.witness {
        Some(w) => w.verify(a, b, s)?,
        None => r.condition_c,
    };
    Ok(r.consistency_ok && witness_ok)
}

fn span_criterion_exhaustive(cfg: &SuiteConfig) -> Result<Checked> {
    let f2 = make_prime_field(2)?;
    let mats = all_matrices(&f2, 2, 2);
    let mut cache = Cached::new();
    let (mut total, mut bad, mut full) = (0, 0, 0);
    for a in &mats {
        for b in &mats {
            for (s, r) in mats.iter().zip(cache.verdicts(a, b, &mats, cfg)?) {
                total += 1;
                full += r.spans_full as usize;
                if !report_ok(&r, a, b, s)? {
                    bad += 1;
                }
            }
        }
    }
    Ok(Checked::new(
        bad == 0 && total == 4096,
        format!("{total} triples, {full} spanning, {bad} exceptions"),
    ))
}

fn span_criterion_sampled(cfg: &SuiteConfig) -> Result<Checked> {
    let f3 = make_prime_field(3)?;
    let mut rng = cfg.rng(2);
    let mut bad_f3 = 0;
    for _ in 0..10_000 {
        let a = Mat::random(&f3, 2, 2, &mut rng);
        let b = Mat::random(&f3, 2, 2, &mut rng);
        let s = Mat::random(&f3, 2, 2, &mut rng);
        let r = theorem1_verdict_with(&a, &b, &s, cfg.rank)?;
        if !report_ok(&r, &a, &b, &s)? {
            bad_f3 += 1;
        }
    }

    let f2 = make_prime_field(2)?;
    let all_s = all_matrices(&f2, 2, 3);
    let mut cache = Cached::new();
    let (mut total, mut bad_f2) = (0, 0);
    for pa in all_monic(&f2, 2) {
        for pb in all_monic(&f2, 3) {
            let (a, b) = (Mat::companion(&pa)?, Mat::companion(&pb)?);
            for (s, r) in all_s.iter().zip(cache.verdicts(&a, &b, &all_s, cfg)?) {
                total += 1;
                if !report_ok(&r, &a, &b, s)? {
                    bad_f2 += 1;
                }
            }
        }
    }
    Ok(Checked::new(
        bad_f3 == 0 && bad_f2 == 0 && total == 2048,
        format!("F3: 10000 triples, {bad_f3} exceptions; F2 companions: {total} triples, {bad_f2} exceptions"),
    ))
}

fn shift_examples(cfg: &SuiteConfig) -> Result<Checked> {
    let mut bad = Vec::new();
    for p in [2, 3] {
        let field = make_prime_field(p)?;
        for m in 2..=5 {
            for n in 2..=5 {
                let (a, b, s) = shift_example(&field, m, n);
                let mut ok = span_dimension_with(&a, &b, &s, cfg.rank)? == m * n;
                let a_pows = a.powers(m)?;
                let b_pows = b.powers(n)?;
                for (i, ai) in a_pows.iter().enumerate() {
                    for (j, bj) in b_pows.iter().enumerate() {
                        ok &= ai.mul(&s)?.mul(bj)? == Mat::unit(&field, m, n, i, j);
                    }
                }
                if !ok {
                    bad.push(format!("F{p} {m}x{n}"));
                }
            }
        }
    }
    Ok(Checked::new(
        bad.is_empty(),
        format!("32 instances, failures: {bad:?}"),
    ))
}

fn pbh_random(cfg: &SuiteConfig) -> Result<Checked> {
    let mut rng = cfg.rng(4);
    let (mut checks, mut bad) = (0, 0);
    for p in [2, 3, 5] {
        let field = make_prime_field(p)?;
        for _ in 0..1000 {
            let pp = rng.gen_range(1..=4);
            let qq = rng.gen_range(1..=4);
            let h = Mat::random(&field, pp, pp, &mut rng);
            let k = Mat::random(&field, pp, qq, &mut rng);
            let min = h.minpoly()?.degree().unwrap_or(0);
            for d in min..=pp {
                let (krylov, pencil) = pbh_sides(&h, &k, d)?;
                checks += 1;
                bad += (krylov != pencil) as usize;
            }
        }
    }
    Ok(Checked::new(
        bad == 0,
        format!("3000 pairs, {checks} (H, K, d) checks, {bad} disagreements"),
    ))
}

fn square_free_random<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Result<Mat> {
    loop {
        let m = Mat::random(field, n, n, rng);
        let chi = m.charpoly()?;
        if chi.gcd(&chi.derivative())?.is_one() {
            return Ok(m);
        }
    }
}

fn gdsm_random(cfg: &SuiteConfig) -> Result<Checked> {
    let mut rng = cfg.rng(5);
    let (mut bad_dim, mut bad_identity, mut resampled) = (0, 0, 0);
    for p in [5, 7, 11] {
        let field = make_prime_field(p)?;
        let mut done = 0;
        while done < 200 {
            let m = rng.gen_range(1..=4);
            let n = rng.gen_range(1..=4);
            let a = square_free_random(&field, m, &mut rng)?;
            let b = square_free_random(&field, n, &mut rng)?;
            let s = Mat::random(&field, m, n, &mut rng);
            let (u, v) = match eigenvector_matrices(&a, &b) {
                Ok(uv) => uv,
                // the common splitting field is beyond the supported order
                Err(Error::Overflow(_)) => {
                    resampled += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            done += 1;
            if gdsm_dimension(&a, &b, &s)? != span_dimension_with(&a, &b, &s, cfg.rank)? {
                bad_dim += 1;
            }
            if !rabs_identity_check(&a, &b, &s, &u, &v)? {
                bad_identity += 1;
            }
        }
    }
    Ok(Checked::new(
        bad_dim == 0 && bad_identity == 0,
        format!(
            "600 instances ({resampled} resampled for field size), {bad_dim} dimension mismatches, {bad_identity} identity failures"
        ),
    ))
}

fn irreducible_pairs(cfg: &SuiteConfig) -> Result<Checked> {
    let f2 = make_prime_field(2)?;
    let quad = Mat::companion(&Poly::from_ints(&f2, &[1, 1, 1]))?;
    let mut coprime_ok = true;
    for cubic in [[1, 1, 0, 1], [1, 0, 1, 1]] {
        let b = Mat::companion(&Poly::from_ints(&f2, &cubic))?;
        coprime_ok &= irreducible_criterion(&quad, &b)?;
        for s in all_matrices(&f2, 2, 3).iter().skip(1) {
            coprime_ok &= span_dimension_with(&quad, &b, s, cfg.rank)? == 6;
        }
    }
    let mut failing = 0;
    for s in all_matrices(&f2, 2, 2).iter().skip(1) {
        failing += (span_dimension_with(&quad, &quad, s, cfg.rank)? < 4) as usize;
    }
    let common_ok = !irreducible_criterion(&quad, &quad)? && failing > 0;
    Ok(Checked::new(
        coprime_ok && common_ok,
        format!(
            "2x3: all 63 nonzero S span: {coprime_ok}; 2x2: {failing} of 15 nonzero S fail to span"
        ),
    ))
}

fn cardinality_grid(cfg: &SuiteConfig) -> Result<Checked> {
    let mut bad = Vec::new();
    let mut checks = 0;
    for (q, m, n) in [(2u64, 2usize, 3usize), (2, 3, 4), (3, 2, 3)] {
        let field = make_prime_field(q)?;
        let a = Mat::companion(&smallest_irreducible(&field, m as u32)?)?;
        let b = Mat::companion(&smallest_irreducible(&field, n as u32)?)?;
        let s = Mat::unit(&field, m, n, 0, 0);
        if span_dimension_with(&a, &b, &s, cfg.rank)? != m * n {
            bad.push(format!("q={q} {m}x{n}: instance does not span"));
            continue;
        }
        for h in 0..=m {
            for k in 0..=n {
                checks += 1;
                let count = enumerate_products(&a, &b, &s, h, k, DEFAULT_BUDGET)?.count;
                let formula = card_formula(q, h as u32, k as u32)?;
                if count != formula {
                    bad.push(format!("q={q} h={h} k={k}: {count} vs {formula}"));
                }
            }
        }
    }
    Ok(Checked::new(
        bad.is_empty(),
        format!("{checks} (q, h, k) points, mismatches: {bad:?}"),
    ))
}

fn fiber_census(_: &SuiteConfig) -> Result<Checked> {
    let mut bad = Vec::new();
    for (q, h, k) in [(2u64, 1usize, 1usize), (2, 2, 2), (3, 2, 2)] {
        let c = phi_fiber_census(h, k, q, DEFAULT_BUDGET)?;
        let zero = (q as u128).pow(h as u32) + (q as u128).pow(k as u32) - 1;
        if c.zero_fiber != zero || c.nonzero_fiber != Some(q as u128 - 1) {
            bad.push(format!(
                "({q},{h},{k}): zero {} nonzero {:?}",
                c.zero_fiber, c.nonzero_fiber
            ));
        }
    }
    Ok(Checked::new(
        bad.is_empty(),
        format!("3 cases, failures: {bad:?}"),
    ))
}

fn commutator_run(field: &Field) -> Result<(usize, usize)> {
    let mats = all_matrices(field, 2, 2);
    let mut bad = 0;
    for a in &mats {
        for b in &mats {
            let (invertible, structural) = commutator_2x2_sides(a, b)?;
            bad += (invertible != structural) as usize;
        }
    }
    Ok((mats.len() * mats.len(), bad))
}

fn commutator_exhaustive(_: &SuiteConfig) -> Result<Checked> {
    let (total, bad) = commutator_run(&make_prime_field(3)?)?;
    let (total2, bad2) = commutator_run(&make_prime_field(2)?)?;
    let mut c = Checked::new(
        bad == 0 && total == 6561,
        format!("F3: {total} pairs, {bad} exceptions"),
    );
    c.exploratory = Some(format!("F2: {total2} pairs, {bad2} disagreements"));
    Ok(c)
}

fn multiset(field: &Field, mut v: Vec<Elem>) -> Vec<Vec<u32>> {
    v.sort_by_key(|&e| field.coeffs(e));
    v.into_iter().map(|e| field.coeffs(e)).collect()
}

fn psi_consistency(cfg: &SuiteConfig) -> Result<Checked> {
    let mut rng = cfg.rng(10);
    let mut bad_psi = 0;
    for _ in 0..500 {
        let field = make_prime_field([2, 3, 5, 7][rng.gen_range(0..4)])?;
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let a = Mat::random(&field, m, m, &mut rng);
        let b = Mat::random(&field, n, n, &mut rng);
        let s = Mat::random(&field, m, n, &mut rng);
        let z = Mat::random(&field, m, n, &mut rng);
        if psi_apply(&z, &a, &b, &s)?.vec() != psi_matrix(&z, &a, &b)?.mul(&s.vec())? {
            bad_psi += 1;
        }
    }

    let mut bad_eig = 0;
    for (p, max_dim) in [(2u64, 4usize), (3, 3)] {
        let field = make_prime_field(p)?;
        for _ in 0..50 {
            let m = rng.gen_range(1..=max_dim);
            let n = rng.gen_range(1..=max_dim);
            let a = Mat::companion(&random_irreducible(&field, m, &mut rng)?)?;
            let b = Mat::companion(&random_irreducible(&field, n, &mut rng)?)?;
            let z = Mat::random(&field, m, n, &mut rng);
            let (ext, vals) = kron_eigenvalue_set(&z, &a, &b)?;
            let roots = roots_in(&psi_matrix(&z, &a, &b)?.charpoly()?, &ext)?;
            let expanded = roots
                .iter()
                .flat_map(|&(r, k)| std::iter::repeat_n(r, k))
                .collect();
            if multiset(&ext, vals) != multiset(&ext, expanded) {
                bad_eig += 1;
            }
        }
    }
    Ok(Checked::new(
        bad_psi == 0 && bad_eig == 0,
        format!("500 tuples, {bad_psi} psi mismatches; 100 irreducible pairs, {bad_eig} eigenvalue mismatches"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spancrit::condition_c;

    #[test]
    fn enumeration_helpers() {
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(all_matrices(&f3, 1, 2).len(), 9);
        assert_eq!(all_monic(&f3, 2).len(), 9);
        assert!(all_monic(&f3, 2)
            .iter()
            .all(|p| p.degree() == Some(2) && p.is_monic()));
    }

    #[test]
    fn broken_rank_is_caught() {
        fn off_by_one(m: &Mat) -> usize {
            rank(m).saturating_sub(1)
        }
        let cfg = SuiteConfig {
            rank: off_by_one,
            ..SuiteConfig::default()
        };
        for id in QUICK {
            let o = run_criterion(id, &cfg).unwrap();
            if id != 8 {
                assert!(!o.passed, "criterion {id} missed the broken rank");
            }
        }
    }

    #[test]
    fn condition_c_cache_matches_direct() {
        let f2 = make_prime_field(2).unwrap();
        let mats = all_matrices(&f2, 2, 2);
        let mut cache = Cached::new();
        for a in mats.iter().step_by(3) {
            for b in mats.iter().step_by(5) {
                let rs = cache
                    .verdicts(a, b, &mats, &SuiteConfig::default())
                    .unwrap();
                for (s, r) in mats.iter().zip(rs) {
                    assert_eq!(r.condition_c, condition_c(a, b, s).unwrap().holds);
                }
            }
        }
    }
}
