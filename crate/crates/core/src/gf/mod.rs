//! Finite fields, their elements, and univariate polynomials over them.
//!
//! Every extension is flattened over its prime field: `F_{p^d}` is always
//! `F_p[x]/(m)` for a monic irreducible `m` of degree `d`, and the common
//! extension of `F_{p^a}` and `F_{p^b}` is the canonical `F_{p^lcm(a,b)}`.

mod embed;
mod factor;
mod field;
mod poly;

pub use embed::{embed, Embedding};
pub use factor::{
    distinct_degree_factorization, equal_degree_split, factor, factor_with_rng, is_irreducible,
    roots_in, smallest_irreducible, splitting_degree, square_free_decomposition,
};
pub use field::{make_prime_field, Elem, Field, MAX_ORDER};
pub use poly::Poly;

use crate::error::{Error, Result};

/// Builds `base[x]/(modulus)`. The base must be a prime field and the
/// modulus a monic irreducible of degree at least 2 over it.
pub fn make_extension(base: &Field, modulus: &Poly) -> Result<Field> {
    if !base.is_prime_field() {
        return Err(Error::BaseNotPrime);
    }
    if modulus.field() != base {
        return Err(Error::FieldMismatch);
    }
    let d = match modulus.degree() {
        Some(d) if d >= 2 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "extension modulus must have degree at least 2".into(),
            ))
        }
    };
    if modulus.leading() != Some(base.one()) {
        return Err(Error::InvalidArgument(
            "extension modulus must be monic".into(),
        ));
    }
    if field::checked_order(base.characteristic(), d as u32).is_none() {
        return Err(Error::Overflow(format!(
            "{}^{d} exceeds {MAX_ORDER}",
            base.characteristic()
        )));
    }
    if !is_irreducible(modulus)? {
        return Err(Error::NotIrreducible(modulus.to_string()));
    }
    let coeffs = modulus.coeffs().iter().map(|&c| c.raw()).collect();
    Field::from_modulus(base.characteristic(), coeffs)
}

/// The smallest canonical field containing both `a` and `b`.
pub fn compositum(a: &Field, b: &Field) -> Result<Field> {
    if a.characteristic() != b.characteristic() {
        return Err(Error::FieldMismatch);
    }
    let l = lcm(a.degree() as u64, b.degree() as u64);
    if l == b.degree() as u64 {
        return Ok(b.clone());
    }
    if l == a.degree() as u64 {
        return Ok(a.clone());
    }
    Field::galois(a.characteristic() as u64, l as u32)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_defining_relation() {
        let f2 = make_prime_field(2).unwrap();
        let m = Poly::from_ints(&f2, &[1, 1, 1]);
        let f4 = make_extension(&f2, &m).unwrap();
        let g = f4.generator();
        assert_eq!(f4.mul(g, g), f4.add(g, f4.one()));
        assert_eq!(m.eval(g).unwrap(), f4.zero());
    }

    #[test]
    fn f9_defining_relation() {
        let f3 = make_prime_field(3).unwrap();
        let f9 = make_extension(&f3, &Poly::from_ints(&f3, &[1, 0, 1])).unwrap();
        let g = f9.generator();
        assert_eq!(f9.mul(g, g), f9.from_int(2));
    }

    #[test]
    fn extension_errors() {
        let f2 = make_prime_field(2).unwrap();
        let bad = Poly::from_ints(&f2, &[1, 0, 1]);
        assert!(matches!(
            make_extension(&f2, &bad),
            Err(Error::NotIrreducible(_))
        ));
        let f4 = Field::galois(2, 2).unwrap();
        let over_f4 = Poly::from_ints(&f4, &[1, 1, 1]);
        assert_eq!(
            make_extension(&f4, &over_f4).unwrap_err(),
            Error::BaseNotPrime
        );
        let big = Poly::from_ints(&f2, &{
            let mut c = vec![0i64; 33];
            c[0] = 1;
            c[32] = 1;
            c
        });
        assert!(matches!(make_extension(&f2, &big), Err(Error::Overflow(_))));
    }

    #[test]
    fn compositum_degrees() {
        let f4 = Field::galois(2, 2).unwrap();
        let f8 = Field::galois(2, 3).unwrap();
        assert_eq!(compositum(&f4, &f8).unwrap().degree(), 6);
        assert_eq!(
            compositum(&f4, &Field::galois(2, 4).unwrap())
                .unwrap()
                .degree(),
            4
        );
    }
}
