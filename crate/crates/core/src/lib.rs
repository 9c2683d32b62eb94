//! Exact symbolic arithmetic for the Weyl-Clifford algebra, the angular
//! momentum algebra and the total angular momentum algebra.
//!
//! All containers are generic over a [`Scalar`]; the aliases below fix the
//! exact rational coefficients used for verification.

pub mod ama;
pub mod emit;
pub mod error;
pub mod gr;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod pairing;
pub mod scalar;
pub mod tama;
pub mod uncross;
pub mod wc;

pub use error::{Error, Result};
pub use gr::GrElement;
pub use monomial::{Monomial, MAX_DIM};
pub use scalar::{Rational, Scalar};
pub use wc::{AlgebraContext, Generator, Parity, WcElement};

/// Weyl-Clifford element with exact rational coefficients.
pub type Wc = WcElement<Rational>;
/// Associated graded element with exact rational coefficients.
pub type Gr = GrElement<Rational>;
/// Floating point variant for quick numerical experiments.
pub type WcF64 = WcElement<f64>;
