//! Complete integrals, theta functions and the Jacobi elliptic functions.

mod carlson;
mod context;
mod jacobi;
mod theta;

pub use carlson::{carlson_rf, incomplete_first_kind};
pub use context::{EllipticContext, DEFAULT_TOL, MODULUS_MAX, MODULUS_MIN};
pub use jacobi::Jacobi;
pub use theta::{ThetaKind, ThetaValues};
