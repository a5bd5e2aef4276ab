//! Cardinality of `P^h[A] S P^k[B]`, where `P^h[M]` is the set of `p(M)`
//! for polynomials `p` of degree below `h`.
//!
//! When `{A^i S B^j}` spans the full matrix space the set has
//! `(q^h - 1)(q^k - 1)/(q - 1) + 1` elements. [`enumerate_products`] is the
//! brute-force oracle for that count and [`phi_fiber_census`] checks the
//! fiber sizes of `(x, y) -> x y^T` on which the count rests.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Mat;
use crate::spancrit::spans_full;

/// Default cap on the number of `(p, r)` pairs or `(x, y)` pairs visited.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

fn overflow() -> Error {
    Error::Overflow("cardinality exceeds 128 bits".into())
}

fn checked_pow(q: u64, e: u32) -> Result<u128> {
    (q as u128).checked_pow(e).ok_or_else(overflow)
}

/// `(q^h - 1)(q^k - 1)/(q - 1) + 1`.
pub fn card_formula(q: u64, h: u32, k: u32) -> Result<u128> {
    if q < 2 {
        return Err(Error::InvalidOrder(q));
    }
    let a = checked_pow(q, h)? - 1;
    let b = checked_pow(q, k)? - 1;
    // q - 1 divides q^h - 1, so divide first to keep the product small
    let a = a / (q as u128 - 1);
    Ok(a.checked_mul(b).ok_or_else(overflow)? + 1)
}

/// Result of [`enumerate_products`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Number of distinct matrices `p(A) S r(B)`.
    pub count: u128,
    /// Effective degree bounds after clamping to `(m, n)`.
    pub h: usize,
    pub k: usize,
    /// Whether the requested `h` or `k` exceeded `m` or `n`.
    pub clamped: bool,
}

/// Every polynomial of degree below `len` as a coefficient vector, in
/// lexicographic order.
fn coefficient_vectors(field: &Field, len: usize) -> Vec<Vec<Elem>> {
    let elems: Vec<Elem> = field.elements().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elems.iter().map(move |&e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

/// All `c_0 I + c_1 M + ... + c_{len-1} M^{len-1}`.
fn polynomial_values(m: &Mat, len: usize) -> Result<Vec<Mat>> {
    let pows = m.powers(len)?;
    coefficient_vectors(m.field(), len)
        .into_iter()
        .map(|c| {
            let mut acc = Mat::zeros(m.field(), m.rows(), m.cols());
            for (ci, pi) in c.iter().zip(&pows) {
                if !ci.is_zero() {
                    acc = acc.add(&pi.scale(*ci))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn dedup(mats: Vec<Mat>) -> Vec<Mat> {
    let mut seen = HashSet::new();
    mats.into_iter().filter(|x| seen.insert(x.key())).collect()
}

/// Counts the distinct matrices `p(A) S r(B)` with `deg p < h` and
/// `deg r < k` by enumeration. `h` and `k` are clamped to `m` and `n`, past
/// which the polynomial sets no longer grow.
pub fn enumerate_products(
    a: &Mat,
    b: &Mat,
    s: &Mat,
    h: usize,
    k: usize,
    budget: u128,
) -> Result<Enumeration> {
    let m = a.require_square()?;
    let n = b.require_square()?;
    if s.rows() != m || s.cols() != n {
        return Err(Error::DimensionMismatch(format!("S must be {m}x{n}")));
    }
    let (hc, kc) = (h.min(m), k.min(n));
    let q = a.field().order();
    let needed = checked_pow(q, hc as u32)?
        .checked_mul(checked_pow(q, kc as u32)?)
        .ok_or_else(overflow)?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    // the product set only depends on the distinct left and right factors
    let left = dedup(
        polynomial_values(a, hc)?
            .iter()
            .map(|p| p.mul(s))
            .collect::<Result<_>>()?,
    );
    let right = dedup(polynomial_values(b, kc)?);
    let mut seen = HashSet::new();
    for l in &left {
        for r in &right {
            seen.insert(l.mul(r)?.key());
        }
    }
    Ok(Enumeration {
        count: seen.len() as u128,
        h: hc,
        k: kc,
        clamped: hc != h || kc != k,
    })
}

/// Formula value, enumeration and the spanning hypothesis for one query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityCheck {
    pub formula: u128,
    pub enumeration: Enumeration,
    pub spans_full: bool,
}

impl CardinalityCheck {
    /// The formula is only claimed when the span is full.
    pub fn agrees(&self) -> bool {
        self.formula == self.enumeration.count
    }
}

/// Runs [`enumerate_products`] and compares it with [`card_formula`] at the
/// clamped degree bounds.
pub fn check_cardinality(
    a: &Mat,
    b: &Mat,
    s: &Mat,
    h: usize,
    k: usize,
    budget: u128,
) -> Result<CardinalityCheck> {
    let enumeration = enumerate_products(a, b, s, h, k, budget)?;
    let formula = card_formula(
        a.field().order(),
        enumeration.h as u32,
        enumeration.k as u32,
    )?;
    Ok(CardinalityCheck {
        formula,
        enumeration,
        spans_full: spans_full(a, b, s)?,
    })
}

/// Fiber sizes of `φ(x, y) = x y^T` on `F_q^h x F_q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCensus {
    pub zero_fiber: u128,
    /// Common size of every nonzero fiber, `None` when there are none.
    pub nonzero_fiber: Option<u128>,
    /// Number of distinct nonzero images.
    pub nonzero_images: u128,
}

/// Enumerates `φ` over all pairs and checks that the nonzero fibers have a
/// common size; fails with [`Error::NonUniformFiber`] otherwise.
pub fn phi_fiber_census(h: usize, k: usize, q: u64, budget: u128) -> Result<FiberCensus> {
    let field = Field::of_order(q)?;
    let needed = checked_pow(q, h as u32)?
        .checked_mul(checked_pow(q, k as u32)?)
        .ok_or_else(overflow)?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let xs = coefficient_vectors(&field, h);
    let ys = coefficient_vectors(&field, k);
    let mut fibers: HashMap<Vec<u32>, u128> = HashMap::new();
    let mut zero_fiber = 0u128;
    for x in &xs {
        for y in &ys {
            let prod = Mat::from_fn(&field, h, k, |i, j| field.mul(x[i], y[j]));
            if prod.is_zero() {
                zero_fiber += 1;
            } else {
                *fibers.entry(prod.key()).or_default() += 1;
            }
        }
    }
    let sizes: HashSet<u128> = fibers.values().copied().collect();
    if sizes.len() > 1 {
        let mut sizes: Vec<_> = sizes.into_iter().collect();
        sizes.sort_unstable();
        return Err(Error::NonUniformFiber(format!("sizes {sizes:?}")));
    }
    Ok(FiberCensus {
        zero_fiber,
        nonzero_fiber: sizes.into_iter().next(),
        nonzero_images: fibers.len() as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_prime_field, Poly};
    use crate::spancrit::shift_example;
    use proptest::prelude::*;

    fn companion(field: &Field, c: &[i64]) -> Mat {
        Mat::companion(&Poly::from_ints(field, c)).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(card_formula(5, 0, 3).unwrap(), 1);
        assert_eq!(card_formula(2, 1, 1).unwrap(), 2);
        assert_eq!(card_formula(2, 2, 3).unwrap(), 22);
        assert_eq!(card_formula(2, 2, 2).unwrap(), 10);
        assert_eq!(card_formula(1, 1, 1).unwrap_err(), Error::InvalidOrder(1));
        assert!(matches!(
            card_formula(1 << 40, 4, 4),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let f2 = make_prime_field(2).unwrap();
        let (a, b, s) = shift_example(&f2, 2, 2);
        assert_eq!(
            enumerate_products(&a, &b, &s, 2, 2, DEFAULT_BUDGET)
                .unwrap()
                .count,
            10
        );
        assert_eq!(
            enumerate_products(&a, &b, &s, 0, 2, DEFAULT_BUDGET)
                .unwrap()
                .count,
            1
        );
        assert_eq!(
            enumerate_products(&a, &b, &s, 1, 1, DEFAULT_BUDGET)
                .unwrap()
                .count,
            2
        );

        let a = companion(&f2, &[1, 1, 1]);
        let b = companion(&f2, &[1, 1, 0, 1]);
        let s = Mat::unit(&f2, 2, 3, 0, 0);
        assert_eq!(
            enumerate_products(&a, &b, &s, 2, 3, DEFAULT_BUDGET)
                .unwrap()
                .count,
            22
        );
    }

    #[test]
    fn clamping_and_budget() {
        let f2 = make_prime_field(2).unwrap();
        let (a, b, s) = shift_example(&f2, 2, 2);
        let e = enumerate_products(&a, &b, &s, 5, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((e.h, e.k, e.clamped, e.count), (2, 2, true, 10));
        assert_eq!(
            enumerate_products(&a, &b, &s, 2, 2, 15).unwrap_err(),
            Error::BudgetExceeded {
                needed: 16,
                budget: 15
            }
        );
    }

    #[test]
    fn non_spanning_instance_is_flagged() {
        let f2 = make_prime_field(2).unwrap();
        let c = companion(&f2, &[1, 1, 1]);
        let s = Mat::identity(&f2, 2);
        let check = check_cardinality(&c, &c, &s, 2, 2, DEFAULT_BUDGET).unwrap();
        assert!(!check.spans_full);
        assert_eq!(check.formula, 10);
        // p(C) r(C) ranges over the four polynomials in C
        assert_eq!(check.enumeration.count, 4);
    }

    #[test]
    fn census_examples() {
        let c = phi_fiber_census(1, 1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            (c.zero_fiber, c.nonzero_fiber, c.nonzero_images),
            (3, Some(1), 1)
        );
        let c = phi_fiber_census(2, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((c.zero_fiber, c.nonzero_fiber), (17, Some(2)));
        let c = phi_fiber_census(3, 0, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!((c.zero_fiber, c.nonzero_fiber), (125, None));
        let c = phi_fiber_census(2, 1, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!((c.zero_fiber, c.nonzero_fiber), (16 + 4 - 1, Some(3)));
        assert!(matches!(
            phi_fiber_census(1, 1, 6, DEFAULT_BUDGET),
            Err(Error::InvalidOrder(6))
        ));
    }

    #[test]
    fn count_is_monotone_and_instance_independent() {
        let f3 = make_prime_field(3).unwrap();
        let a = companion(&f3, &[1, 0, 1]);
        let b = companion(&f3, &[1, 2, 0, 1]);
        let s1 = Mat::unit(&f3, 2, 3, 0, 0);
        let s2 = Mat::from_ints(&f3, 2, 3, &[1, 2, 0, 0, 1, 1]);
        let (sa, sb, ss) = shift_example(&f3, 2, 3);
        for h in 0..=2 {
            let mut prev = 0;
            for k in 0..=3 {
                let c = enumerate_products(&a, &b, &s1, h, k, DEFAULT_BUDGET)
                    .unwrap()
                    .count;
                assert!(c >= prev);
                prev = c;
                assert_eq!(
                    c,
                    enumerate_products(&a, &b, &s2, h, k, DEFAULT_BUDGET)
                        .unwrap()
                        .count
                );
                assert_eq!(
                    c,
                    enumerate_products(&sa, &sb, &ss, h, k, DEFAULT_BUDGET)
                        .unwrap()
                        .count
                );
                assert_eq!(c, card_formula(3, h as u32, k as u32).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn formula_division_is_exact(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16]), h in 0u32..8, k in 0u32..8) {
            let qh = (q as u128).pow(h) - 1;
            let qk = (q as u128).pow(k) - 1;
            prop_assert_eq!(qh * qk % (q as u128 - 1), 0);
            prop_assert_eq!(card_formula(q, h, k).unwrap(), qh * qk / (q as u128 - 1) + 1);
        }

        #[test]
        fn fibers_partition_the_domain(q in prop::sample::select(vec![2u64, 3, 4, 5]), h in 0usize..3, k in 0usize..3) {
            let c = phi_fiber_census(h, k, q, DEFAULT_BUDGET).unwrap();
            let total = (q as u128).pow((h + k) as u32);
            let qh = (q as u128).pow(h as u32);
            let qk = (q as u128).pow(k as u32);
            prop_assert_eq!(c.zero_fiber, qh + qk - 1);
            prop_assert_eq!(c.zero_fiber + c.nonzero_images * c.nonzero_fiber.unwrap_or(0), total);
            if c.nonzero_images > 0 {
                prop_assert_eq!(c.nonzero_fiber, Some(q as u128 - 1));
            }
            prop_assert_eq!(c.nonzero_images + 1, card_formula(q, h as u32, k as u32).unwrap());
        }
    }
}
