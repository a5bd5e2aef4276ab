//! Exact finite-field linear algebra for spanning sets of the form
//! `{A^i S B^j}`.
//!
//! * [`gf`] builds prime and extension fields and does polynomial
//!   arithmetic, factorization and root finding.
//! * [`linalg`] is dense exact linear algebra, including eigenstructure over
//!   splitting fields.
//! * [`spancrit`] decides whether `{A^i S B^j}` spans the whole matrix space,
//!   with witnesses, and checks the related rank and dimension criteria.
//! * [`counting`] counts the product sets `P^h[A] S P^k[B]`.
//! * [`suites`] holds the exhaustive and seeded verification suites.

pub mod counting;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod spancrit;
pub mod suites;

pub use error::{Error, Result};
pub use gf::{Elem, Field, Poly};
pub use linalg::Mat;

/// Seed used by every randomized suite unless one is given explicitly.
pub const DEFAULT_SEED: u64 = 20150617;
