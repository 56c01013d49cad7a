//! Quadratic permutation polynomials over `Z_N`.
//!
//! Decides whether `F(x) = f1*x + f2*x^2 (mod N)` has a quadratic inverse,
//! computes the inverse(s) exactly, and builds interleaver/deinterleaver
//! tables. The [`oracle`] module re-derives everything by brute force on small
//! moduli.
//!
//! ```
//! use qpp_core::{quadratic_inverse, InverseOutcome, QuadraticPP};
//!
//! let f = QuadraticPP::new(1024, 15, 16)?;
//! match quadratic_inverse(&f)? {
//!     InverseOutcome::Two { first, second } => {
//!         assert_eq!((first.g1, first.g2), (751, 272));
//!         assert_eq!((second.g1, second.g2), (239, 784));
//!     }
//!     other => panic!("unexpected {other:?}"),
//! }
//! # Ok::<(), qpp_core::Error>(())
//! ```

pub mod error;
pub mod modmath;
pub mod oracle;
mod par;
pub mod polyring;
pub mod qppinv;

pub use error::{Error, Result};
pub use modmath::{
    arithmetic_inverse, factorize, gcd, solve_linear_congruence, valuation, CongruenceSolutions,
    Factorization, Valuation, MAX_MODULUS,
};
pub use par::parallel_available;
pub use polyring::{
    invert_table, is_permutation_polynomial, permutation_table, PermutationCertificate,
    PermutationTable, PolynomialModN, QuadraticPP,
};
pub use qppinv::{
    exists_quadratic_inverse, exponent_profile, is_inverse_pair, is_self_inverse, partial_inverse,
    quadratic_inverse, quadratic_inverse_checked, quartic_vanishes, ExistenceReport,
    InverseOutcome, QuadraticCoeffs,
};
