//! Irreducibility testing, factorization and root finding over finite fields.
//!
//! Factorization runs square-free decomposition, then distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting. The
//! equal-degree step is randomized; the randomness source is always passed
//! in, and [`factor`] uses a fixed seed so its output is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{checked_order, prime_factors, Elem, Field, MAX_ORDER};
use super::lcm;
use super::poly::Poly;
use crate::error::{Error, Result};

const FACTOR_SEED: u64 = 0x0063_6661_6374_6f72;

/// Rabin's test: `x^{q^n} = x mod f` and `gcd(x^{q^{n/r}} - x, f) = 1` for
/// every prime `r | n`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let field = f.field();
    let q = field.order();
    let x = Poly::x(field);
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.clone());
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(q, &f)?;
        frob.push(next);
    }
    if frob[n] != x.rem(&f)? {
        return Ok(false);
    }
    for r in prime_factors(n as u64) {
        let h = frob[n / r as usize].sub(&x)?;
        if !h.gcd(&f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lexicographically smallest monic irreducible of degree `d` over a
/// prime field, comparing coefficient vectors from the constant term up.
pub fn smallest_irreducible(base: &Field, d: u32) -> Result<Poly> {
    if !base.is_prime_field() {
        return Err(Error::BaseNotPrime);
    }
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let p = base.characteristic();
    let count = checked_order(p, d)
        .ok_or_else(|| Error::Overflow(format!("{p}^{d} exceeds {MAX_ORDER}")))?;
    let d = d as usize;
    // with the constant term most significant, every candidate below
    // count / p has c_0 = 0 and is divisible by x
    let start = if d >= 2 { count / p as u64 } else { 0 };
    for t in start..count {
        let mut coeffs = vec![base.zero(); d + 1];
        let mut r = t;
        // c_0 is the most significant digit of t
        for slot in coeffs[..d].iter_mut().rev() {
            *slot = base.from_int((r % p as u64) as i64);
            r /= p as u64;
        }
        coeffs[d] = base.one();
        let cand = Poly::new(base, coeffs);
        if is_irreducible(&cand)? {
            return Ok(cand);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn pth_root_poly(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pth_root(c))
        .collect();
    Poly::new(field, coeffs)
}

/// Square-free decomposition of a nonzero polynomial: monic, pairwise
/// coprime square-free parts `g_i` with `monic(f) = prod g_i^{m_i}`.
pub fn square_free_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let d = f.derivative();
    let mut c = if d.is_zero() { f.clone() } else { f.gcd(&d)? };
    if !d.is_zero() {
        let mut w = f.exact_div(&c)?;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c)?;
            let fac = w.exact_div(&y)?;
            if !fac.is_one() {
                out.push((fac, i));
            }
            c = c.exact_div(&y)?;
            w = y;
            i += 1;
        }
    }
    if !c.is_one() {
        for (g, m) in square_free_decomposition(&pth_root_poly(&c))? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a monic square-free polynomial into products of irreducible
/// factors of equal degree, returned as `(product, degree)` pairs.
pub fn distinct_degree_factorization(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field.order();
    let x = Poly::x(field);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.clone();
    let mut i = 0;
    while rest.degree().unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        h = h.pow_mod(q, &rest)?;
        let g = h.sub(&x)?.gcd(&rest)?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    Ok(out)
}

/// Cantor-Zassenhaus splitting of a monic square-free product of
/// irreducibles all of degree `k`. Characteristic 2 uses the trace map;
/// odd characteristic uses the quadratic-residue test.
pub fn equal_degree_split<R: Rng + ?Sized>(f: &Poly, k: usize, rng: &mut R) -> Result<Vec<Poly>> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n % k != 0 {
        return Err(Error::InvalidArgument(format!(
            "degree {n} is not a multiple of {k}"
        )));
    }
    if n == k {
        return Ok(vec![f.monic()]);
    }
    let field = f.field();
    let q = field.order();
    let one = Poly::one(field);
    loop {
        let a = Poly::random(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.characteristic() == 2 {
            let steps = field.degree() as usize * k;
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..steps {
                t = t.mul_mod(&t, f)?;
                s = s.add(&t)?;
            }
            s
        } else {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k {
                t = t.pow_mod(q, f)?;
                acc = acc.mul_mod(&t, f)?;
            }
            acc.pow_mod((q - 1) / 2, f)?.sub(&one)?
        };
        let g = b.gcd(f)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree_split(&g, k, rng)?;
            out.extend(equal_degree_split(&f.exact_div(&g)?, k, rng)?);
            return Ok(out);
        }
    }
}

/// Full factorization into monic irreducibles with multiplicities, sorted
/// by degree and then coefficients. The input is normalized to monic; a
/// constant input yields an empty list.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    factor_with_rng(f, &mut ChaCha8Rng::seed_from_u64(FACTOR_SEED))
}

pub fn factor_with_rng<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    for (part, mult) in square_free_decomposition(f)? {
        for (g, k) in distinct_degree_factorization(&part)? {
            for h in equal_degree_split(&g, k, rng)? {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// Roots of `f` lying in `ext`, each once with its multiplicity, sorted by
/// coefficient vector. `ext` must contain the field of `f`.
pub fn roots_in(f: &Poly, ext: &Field) -> Result<Vec<(Elem, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.embed_into(ext)?.monic();
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let x = Poly::x(ext);
    let h = x.pow_mod(ext.order(), &g)?;
    let linear = h.sub(&x)?.gcd(&g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut roots = Vec::new();
    for l in equal_degree_split(&linear, 1, &mut rng)? {
        let r = ext.neg(l.coeff(0));
        let mut mult = 0;
        let mut rest = g.clone();
        loop {
            let (quot, rem) = rest.div_rem(&l)?;
            if !rem.is_zero() {
                break;
            }
            mult += 1;
            rest = quot;
        }
        roots.push((r, mult));
    }
    roots.sort_by_key(|&(r, _)| ext.coeffs(r));
    Ok(roots)
}

/// Degree over the prime field of the splitting field of `f`.
pub fn splitting_degree(f: &Poly) -> Result<u32> {
    let field = f.field();
    let e = field.degree() as u64;
    let l = factor(f)?.iter().fold(e, |acc, (g, _)| {
        lcm(acc, e * g.degree().unwrap_or(0).max(1) as u64)
    });
    if l > 32 || checked_order(field.characteristic(), l as u32).is_none() {
        return Err(Error::Overflow(format!(
            "splitting field F_{}^{l} exceeds {MAX_ORDER}",
            field.characteristic()
        )));
    }
    Ok(l as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_prime_field;

    fn p(field: &Field, c: &[i64]) -> Poly {
        Poly::from_ints(field, c)
    }

    fn remultiply(field: &Field, factors: &[(Poly, usize)]) -> Poly {
        factors.iter().fold(Poly::one(field), |acc, (g, m)| {
            acc.mul(&g.pow(*m as u32)).unwrap()
        })
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = make_prime_field(2).unwrap();
        let f3 = make_prime_field(3).unwrap();
        assert!(is_irreducible(&p(&f2, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&p(&f2, &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&f3, &[1, 0, 1])).unwrap());
        assert_eq!(is_irreducible(&Poly::zero(&f2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn smallest_irreducible_examples() {
        let f2 = make_prime_field(2).unwrap();
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(smallest_irreducible(&f2, 2).unwrap(), p(&f2, &[1, 1, 1]));
        assert_eq!(smallest_irreducible(&f2, 1).unwrap(), p(&f2, &[0, 1]));
        assert_eq!(smallest_irreducible(&f3, 2).unwrap(), p(&f3, &[1, 0, 1]));
        assert!(matches!(
            smallest_irreducible(&f2, 40),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn smallest_irreducible_matches_enumeration() {
        // Oracle: walk monic quadratics/cubics over F_3 in lex order and keep
        // the first with no roots in F_3.
        let f3 = make_prime_field(3).unwrap();
        for d in [2u32, 3] {
            let mut found = None;
            'outer: for t in 0..3u64.pow(d) {
                let mut c: Vec<i64> = (0..d)
                    .map(|i| ((t / 3u64.pow(d - 1 - i)) % 3) as i64)
                    .collect();
                c.push(1);
                let cand = p(&f3, &c);
                for a in f3.elements() {
                    if cand.eval(a).unwrap().is_zero() {
                        continue 'outer;
                    }
                }
                found = Some(cand);
                break;
            }
            assert_eq!(smallest_irreducible(&f3, d).unwrap(), found.unwrap());
        }
    }

    #[test]
    fn factor_examples() {
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(
            factor(&p(&f2, &[1, 0, 1])).unwrap(),
            vec![(p(&f2, &[1, 1]), 2)]
        );
        assert_eq!(
            factor(&p(&f2, &[0, 1, 0, 0, 1])).unwrap(),
            vec![
                (p(&f2, &[0, 1]), 1),
                (p(&f2, &[1, 1]), 1),
                (p(&f2, &[1, 1, 1]), 1)
            ]
        );
    }

    #[test]
    fn x9_minus_x_over_f3() {
        let f3 = make_prime_field(3).unwrap();
        let mut c = vec![0i64; 10];
        c[9] = 1;
        c[1] = -1;
        let f = p(&f3, &c);
        let fs = factor(&f).unwrap();
        // 3 linear + 3 irreducible quadratics
        assert_eq!(fs.len(), 6);
        assert_eq!(fs.iter().filter(|(g, _)| g.degree() == Some(1)).count(), 3);
        assert!(fs
            .iter()
            .all(|(g, m)| *m == 1 && is_irreducible(g).unwrap()));
        assert_eq!(remultiply(&f3, &fs), f);
    }

    #[test]
    fn factor_over_extension_field() {
        let f4 = Field::galois(2, 2).unwrap();
        let f2 = make_prime_field(2).unwrap();
        // x^2 + x + 1 splits over F_4
        let g = p(&f2, &[1, 1, 1]).embed_into(&f4).unwrap();
        let fs = factor(&g).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(h, m)| h.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn repeated_pth_power_factors() {
        let f3 = make_prime_field(3).unwrap();
        // (x+1)^3 (x^2+1)^4 (x+2)
        let f = p(&f3, &[1, 1])
            .pow(3)
            .mul(&p(&f3, &[1, 0, 1]).pow(4))
            .unwrap()
            .mul(&p(&f3, &[2, 1]))
            .unwrap();
        let fs = factor(&f).unwrap();
        assert_eq!(
            fs,
            vec![
                (p(&f3, &[1, 1]), 3),
                (p(&f3, &[2, 1]), 1),
                (p(&f3, &[1, 0, 1]), 4)
            ]
        );
    }

    #[test]
    fn roots_examples() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = Field::galois(2, 2).unwrap();
        let f8 = Field::galois(2, 3).unwrap();
        let q = p(&f2, &[1, 1, 1]);
        let r4 = roots_in(&q, &f4).unwrap();
        let g = f4.generator();
        assert_eq!(r4.len(), 2);
        assert!(r4.contains(&(g, 1)) && r4.contains(&(f4.mul(g, g), 1)));
        assert!(roots_in(&q, &f2).unwrap().is_empty());
        // oracle: evaluate at every element of F_8
        assert!(f8.elements().all(|a| !q.eval(a).unwrap().is_zero()));
        assert!(roots_in(&q, &f8).unwrap().is_empty());
    }

    #[test]
    fn roots_with_multiplicity_in_splitting_field() {
        let f3 = make_prime_field(3).unwrap();
        let f = p(&f3, &[1, 0, 1]).mul(&p(&f3, &[1, 1]).pow(2)).unwrap();
        let ext = Field::galois(3, splitting_degree(&f).unwrap()).unwrap();
        let roots = roots_in(&f, &ext).unwrap();
        assert_eq!(roots.iter().map(|r| r.1).sum::<usize>(), 4);
    }

    #[test]
    fn roots_require_embedding() {
        let f4 = Field::galois(2, 2).unwrap();
        let f8 = Field::galois(2, 3).unwrap();
        let q = Poly::x(&f4);
        assert!(matches!(
            roots_in(&q, &f8),
            Err(Error::EmbeddingUnavailable { .. })
        ));
    }

    #[test]
    fn random_factor_roundtrip_and_irreducibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for pr in [2u64, 3, 5] {
            let f = make_prime_field(pr).unwrap();
            for _ in 0..500 {
                let deg = rng.gen_range(1..=8);
                let g = Poly::random_monic(&f, deg, &mut rng);
                let fs = factor(&g).unwrap();
                assert_eq!(remultiply(&f, &fs), g);
                for (h, _) in &fs {
                    assert!(is_irreducible(h).unwrap());
                }
                let single = fs.len() == 1 && fs[0].1 == 1;
                assert_eq!(is_irreducible(&g).unwrap(), single, "{g}");
                let Ok(l) = splitting_degree(&g) else {
                    continue;
                };
                if l <= 12 {
                    let ext = Field::galois(pr, l).unwrap();
                    let total: usize = roots_in(&g, &ext).unwrap().iter().map(|r| r.1).sum();
                    assert_eq!(total, deg);
                }
            }
        }
    }
}
