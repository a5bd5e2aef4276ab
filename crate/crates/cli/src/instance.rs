//! The JSON instance file: a field description and the matrices `A`, `B`,
//! `S`.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use matspan::gf::{make_extension, make_prime_field, Elem, Field, Poly};
use matspan::Mat;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub degree: u32,
    /// Coefficients of the monic modulus, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> u32 {
    1
}

/// A matrix entry: a residue in a prime field or a coefficient vector,
/// constant term first, in an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Coeffs(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldSpec,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Entry>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Entry>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Entry>>,
}

/// A parsed instance with its field resolved.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: Field,
    pub a: Mat,
    pub b: Mat,
    pub s: Mat,
}

impl FieldSpec {
    pub fn resolve(&self) -> anyhow::Result<Field> {
        if self.degree == 0 {
            bail!("field.degree: must be at least 1");
        }
        let base = make_prime_field(self.p).map_err(|e| anyhow!("field.p: {e}"))?;
        match (&self.modulus, self.degree) {
            (None, 1) => Ok(base),
            (None, d) => Field::galois(self.p, d).map_err(|e| anyhow!("field: {e}")),
            (Some(m), d) => {
                if m.len() != d as usize + 1 {
                    bail!(
                        "field.modulus: expected {} coefficients for degree {d}, got {}",
                        d + 1,
                        m.len()
                    );
                }
                if let Some(c) = m.iter().find(|&&c| c >= self.p) {
                    bail!("field.modulus: residue {c} out of range for p={}", self.p);
                }
                if d == 1 {
                    if m[1] != 1 {
                        bail!("field.modulus: must be monic");
                    }
                    return Ok(base);
                }
                let coeffs = m.iter().map(|&c| base.from_int(c as i64)).collect();
                make_extension(&base, &Poly::new(&base, coeffs))
                    .map_err(|e| anyhow!("field.modulus: {e}"))
            }
        }
    }

    /// Describes `field`, stating the modulus whenever it is an extension.
    pub fn of(field: &Field) -> FieldSpec {
        let modulus =
            (!field.is_prime_field()).then(|| field.modulus().iter().map(|&c| c as u64).collect());
        FieldSpec {
            p: field.characteristic() as u64,
            degree: field.degree(),
            modulus,
        }
    }
}

fn parse_entry(field: &Field, e: &Entry, at: &str) -> anyhow::Result<Elem> {
    let p = field.characteristic() as i64;
    let coeffs: Vec<i64> = match e {
        Entry::Int(c) => vec![*c],
        Entry::Coeffs(v) => {
            if v.len() != field.degree() as usize {
                bail!(
                    "{at}: expected {} coefficients, got {}",
                    field.degree(),
                    v.len()
                );
            }
            v.clone()
        }
    };
    if matches!(e, Entry::Int(_)) && field.degree() > 1 {
        bail!(
            "{at}: extension entries must be coefficient arrays of length {}",
            field.degree()
        );
    }
    if let Some(c) = coeffs.iter().find(|&&c| c < 0 || c >= p) {
        bail!("{at}: residue {c} out of range for p={p}");
    }
    let raw: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
    field
        .from_coeffs(&raw)
        .map_err(|err| anyhow!("{at}: {err}"))
}

fn parse_matrix(field: &Field, rows: &[Vec<Entry>], name: &str) -> anyhow::Result<Mat> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            bail!(
                "{name}[{i}]: row has {} entries, expected {cols}",
                row.len()
            );
        }
        for (j, e) in row.iter().enumerate() {
            data.push(parse_entry(field, e, &format!("{name}[{i}][{j}]"))?);
        }
    }
    Ok(Mat::from_vec(field, rows.len(), cols, data)?)
}

fn render_matrix(m: &Mat) -> Vec<Vec<Entry>> {
    let f = m.field();
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let c = f.coeffs(m.get(i, j));
                    if f.is_prime_field() {
                        Entry::Int(c[0] as i64)
                    } else {
                        Entry::Coeffs(c.into_iter().map(i64::from).collect())
                    }
                })
                .collect()
        })
        .collect()
}

impl InstanceFile {
    pub fn from_json(text: &str) -> anyhow::Result<InstanceFile> {
        serde_json::from_str(text).map_err(|e| {
            anyhow!(
                "parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            )
        })
    }

    pub fn read(path: &Path) -> anyhow::Result<InstanceFile> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        InstanceFile::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Pretty JSON with one matrix row per line.
    pub fn to_json(&self) -> String {
        let field = serde_json::to_string(&self.field).expect("field serializes");
        let matrix = |rows: &[Vec<Entry>]| {
            let rows: Vec<String> = rows
                .iter()
                .map(|r| format!("    {}", serde_json::to_string(r).expect("row serializes")))
                .collect();
            format!("[\n{}\n  ]", rows.join(",\n"))
        };
        format!(
            "{{\n  \"field\": {field},\n  \"A\": {},\n  \"B\": {},\n  \"S\": {}\n}}",
            matrix(&self.a),
            matrix(&self.b),
            matrix(&self.s)
        )
    }

    /// Resolves the field and checks every entry and dimension.
    pub fn instance(&self) -> anyhow::Result<Instance> {
        let field = self.field.resolve()?;
        let a = parse_matrix(&field, &self.a, "A")?;
        let b = parse_matrix(&field, &self.b, "B")?;
        let s = parse_matrix(&field, &self.s, "S")?;
        if !a.is_square() {
            bail!("A: must be square, got {}x{}", a.rows(), a.cols());
        }
        if !b.is_square() {
            bail!("B: must be square, got {}x{}", b.rows(), b.cols());
        }
        if s.rows() != a.rows() || s.cols() != b.rows() {
            bail!(
                "S: must be {}x{}, got {}x{}",
                a.rows(),
                b.rows(),
                s.rows(),
                s.cols()
            );
        }
        Ok(Instance { field, a, b, s })
    }

    /// The file describing `(A, B, S)`, with the modulus stated for
    /// extension fields.
    pub fn from_matrices(a: &Mat, b: &Mat, s: &Mat) -> InstanceFile {
        InstanceFile {
            field: FieldSpec::of(a.field()),
            a: render_matrix(a),
            b: render_matrix(b),
            s: render_matrix(s),
        }
    }
}
