//! Command implementations. Each returns the text to print and the exit
//! status, leaving I/O to the caller.

use std::io::IsTerminal;

use anyhow::bail;
use matspan::counting::{card_formula, check_cardinality};
use matspan::gf::{is_irreducible, Elem, Field, Poly};
use matspan::spancrit::{pbh_sides, shift_example, span_dimension, theorem1_verdict, SpanReport};
use matspan::suites::{run_all, run_criterion, SuiteConfig, QUICK};
use matspan::{Error, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::instance::{FieldSpec, Instance, InstanceFile};

/// Exit statuses shared by all commands.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Text and exit status of a finished command.
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// ANSI colouring, off when `NO_COLOR` is set or stdout is not a terminal.
#[derive(Clone, Copy)]
pub struct Style {
    color: bool,
}

impl Style {
    pub fn detect() -> Style {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Style {
            color: !no_color && std::io::stdout().is_terminal(),
        }
    }

    pub fn plain() -> Style {
        Style { color: false }
    }

    fn paint(&self, text: &str, good: bool) -> String {
        if self.color {
            format!("\x1b[{}m{text}\x1b[0m", if good { 32 } else { 31 })
        } else {
            text.to_string()
        }
    }

    fn yes_no(&self, b: bool) -> String {
        self.paint(if b { "yes" } else { "no" }, b)
    }
}

fn coeffs(field: &Field, e: Elem) -> Vec<u32> {
    field.coeffs(e)
}

fn vector_coeffs(m: &Mat) -> Vec<Vec<u32>> {
    m.entries().iter().map(|&e| coeffs(m.field(), e)).collect()
}

fn fmt_vector(m: &Mat) -> String {
    let parts: Vec<String> = m
        .entries()
        .iter()
        .map(|&e| format!("{:?}", coeffs(m.field(), e)))
        .collect();
    format!("({})", parts.join(", "))
}

fn field_json(field: &Field) -> Value {
    let spec = FieldSpec::of(field);
    json!({ "p": spec.p, "degree": spec.degree, "modulus": spec.modulus })
}

fn field_label(field: &Field) -> String {
    if field.is_prime_field() {
        format!("F_{}", field.characteristic())
    } else {
        format!(
            "F_{}^{} (modulus {:?}, constant term first)",
            field.characteristic(),
            field.degree(),
            field.modulus()
        )
    }
}

/// Stable JSON form of a report. Field elements are coefficient vectors
/// over the prime field, constant term first.
pub fn report_json(field: &Field, r: &SpanReport) -> Value {
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "field": field_json(&w.field),
            "alpha": coeffs(&w.field, w.alpha),
            "beta": coeffs(&w.field, w.beta),
            "u": vector_coeffs(&w.u),
            "v": vector_coeffs(&w.v),
            "uSv": coeffs(&w.field, w.value_usv),
        })
    });
    json!({
        "field": field_json(field),
        "m": r.m,
        "n": r.n,
        "span_dim": r.span_dim,
        "spans_full": r.spans_full,
        "a_cyclic": r.a_cyclic,
        "b_cyclic": r.b_cyclic,
        "condition_c": r.condition_c,
        "witness": witness,
        "consistency_ok": r.consistency_ok,
    })
}

pub fn report_text(field: &Field, r: &SpanReport, style: Style) -> String {
    let mut s = String::new();
    s.push_str(&format!("field: {}\n", field_label(field)));
    s.push_str(&format!("dimensions: m={}, n={}\n", r.m, r.n));
    s.push_str(&format!(
        "span dimension: {} of {}\n",
        r.span_dim,
        r.m * r.n
    ));
    s.push_str(&format!("spans full: {}\n", style.yes_no(r.spans_full)));
    s.push_str(&format!("A cyclic: {}\n", style.yes_no(r.a_cyclic)));
    s.push_str(&format!("B cyclic: {}\n", style.yes_no(r.b_cyclic)));
    s.push_str(&format!(
        "uSv != 0 for all eigenvector pairs: {}\n",
        style.yes_no(r.condition_c)
    ));
    if let Some(w) = &r.witness {
        s.push_str(&format!("witness over {}:\n", field_label(&w.field)));
        s.push_str(&format!("  alpha = {:?}\n", coeffs(&w.field, w.alpha)));
        s.push_str(&format!("  beta  = {:?}\n", coeffs(&w.field, w.beta)));
        s.push_str(&format!("  u     = {}\n", fmt_vector(&w.u)));
        s.push_str(&format!("  v     = {}\n", fmt_vector(&w.v)));
        s.push_str(&format!("  uSv   = {:?}\n", coeffs(&w.field, w.value_usv)));
    }
    s.push_str(&format!(
        "consistency: {}\n",
        style.paint(
            if r.consistency_ok { "ok" } else { "VIOLATED" },
            r.consistency_ok
        )
    ));
    s
}

pub fn analyze(inst: &Instance, as_json: bool, style: Style) -> anyhow::Result<Output> {
    let r = theorem1_verdict(&inst.a, &inst.b, &inst.s)?;
    let stdout = if as_json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&report_json(&inst.field, &r))?
        )
    } else {
        report_text(&inst.field, &r, style)
    };
    let (stderr, code) = if !r.consistency_ok {
        (
            "internal defect: the rank side and the eigenvector side disagree on this instance\n"
                .to_string(),
            EXIT_ERROR,
        )
    } else if r.spans_full {
        (String::new(), EXIT_OK)
    } else {
        (String::new(), EXIT_NEGATIVE)
    };
    Ok(Output {
        stdout,
        stderr,
        code,
    })
}

pub fn span_dim(inst: &Instance) -> anyhow::Result<Output> {
    let d = span_dimension(&inst.a, &inst.b, &inst.s)?;
    let full = d == inst.a.rows() * inst.b.rows();
    Ok(Output {
        stdout: format!("{d}\n"),
        stderr: String::new(),
        code: if full { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

/// Krylov and pencil rank conditions with `H = A`, `K = S`.
pub fn pbh(inst: &Instance, d: Option<usize>, style: Style) -> anyhow::Result<Output> {
    let d = d.unwrap_or(inst.a.rows());
    let (krylov, pencil) = pbh_sides(&inst.a, &inst.s, d)?;
    let mut stdout = format!(
        "Krylov matrix [K HK ... H^{}K] full rank: {}\neigenvalue pencils [lI-H K] full rank: {}\n",
        d.saturating_sub(1),
        style.yes_no(krylov),
        style.yes_no(pencil)
    );
    if krylov != pencil {
        return Ok(Output {
            stdout,
            stderr: "internal defect: the two rank conditions disagree\n".into(),
            code: EXIT_ERROR,
        });
    }
    stdout.push_str(&format!("verdict: {krylov}\n"));
    Ok(Output {
        stdout,
        stderr: String::new(),
        code: if krylov { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

pub fn cardinality(
    inst: &Instance,
    h: usize,
    k: usize,
    enumerate: bool,
    budget: u128,
) -> anyhow::Result<Output> {
    let (m, n) = (inst.a.rows(), inst.b.rows());
    let (hc, kc) = (h.min(m), k.min(n));
    let mut stderr = String::new();
    if hc != h || kc != k {
        stderr.push_str(&format!("warning: clamped (h, k) = ({h}, {k}) to ({hc}, {kc}); polynomial sets stop growing at m={m}, n={n}\n"));
    }
    let q = inst.field.order();
    let formula = card_formula(q, hc as u32, kc as u32)?;
    let mut stdout = format!("q={q} h={hc} k={kc}\nformula: {formula}\n");
    if !enumerate {
        return Ok(Output {
            stdout,
            stderr,
            code: EXIT_OK,
        });
    }
    let check = match check_cardinality(&inst.a, &inst.b, &inst.s, hc, kc, budget) {
        Err(Error::BudgetExceeded { needed, budget }) => {
            bail!("enumeration needs {needed} products, above the budget of {budget}; rerun with --budget {needed}")
        }
        other => other?,
    };
    stdout.push_str(&format!("enumerated: {}\n", check.enumeration.count));
    let (verdict, code) = if !check.spans_full {
        ("HYPOTHESIS-FAILED", EXIT_NEGATIVE)
    } else if check.agrees() {
        ("AGREE", EXIT_OK)
    } else {
        stderr.push_str(
            "internal defect: the formula and the enumeration differ on a spanning instance\n",
        );
        ("DISAGREE", EXIT_ERROR)
    };
    stdout.push_str(&format!("{verdict}\n"));
    Ok(Output {
        stdout,
        stderr,
        code,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    ShiftExample,
    RandomCyclic,
    IrreduciblePair,
    Random,
}

fn random_irreducible(field: &Field, d: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<Poly> {
    loop {
        let g = Poly::random_monic(field, d, rng);
        if is_irreducible(&g)? {
            return Ok(g);
        }
    }
}

/// A seeded instance of the requested kind.
pub fn generate(
    kind: Kind,
    p: u64,
    degree: u32,
    m: usize,
    n: usize,
    seed: u64,
) -> anyhow::Result<InstanceFile> {
    if m == 0 || n == 0 {
        bail!("m and n must be at least 1");
    }
    let field = Field::galois(p, degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, s) = match kind {
        Kind::ShiftExample => shift_example(&field, m, n),
        Kind::RandomCyclic => (
            Mat::companion(&Poly::random_monic(&field, m, &mut rng))?,
            Mat::companion(&Poly::random_monic(&field, n, &mut rng))?,
            Mat::random(&field, m, n, &mut rng),
        ),
        Kind::IrreduciblePair => {
            let a = Mat::companion(&random_irreducible(&field, m, &mut rng)?)?;
            let b = Mat::companion(&random_irreducible(&field, n, &mut rng)?)?;
            let s = loop {
                let s = Mat::random(&field, m, n, &mut rng);
                if !s.is_zero() {
                    break s;
                }
            };
            (a, b, s)
        }
        Kind::Random => (
            Mat::random(&field, m, m, &mut rng),
            Mat::random(&field, n, n, &mut rng),
            Mat::random(&field, m, n, &mut rng),
        ),
    };
    Ok(InstanceFile::from_matrices(&a, &b, &s))
}

/// Runs the quick (`full = false`) or full suite list.
pub fn selftest(full: bool, cfg: &SuiteConfig, style: Style) -> Output {
    let outcomes = if full {
        run_all(cfg)
    } else {
        QUICK
            .iter()
            .filter_map(|&id| run_criterion(id, cfg))
            .collect()
    };
    let mut stdout = String::new();
    for o in &outcomes {
        let line = o.line();
        let tag = if o.ok() { "[PASS]" } else { "[FAIL]" };
        stdout.push_str(&line.replacen(tag, &style.paint(tag, o.ok()), 1));
        stdout.push('\n');
    }
    let failed = outcomes.iter().filter(|o| !o.ok()).count();
    stdout.push_str(&format!(
        "{} of {} suites passed\n",
        outcomes.len() - failed,
        outcomes.len()
    ));
    Output {
        stdout,
        stderr: String::new(),
        code: if failed == 0 { EXIT_OK } else { EXIT_NEGATIVE },
    }
}
