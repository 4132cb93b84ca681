pub mod error;
pub mod perm;

pub use error::{Error, Result};
pub use perm::{FilteredClosure, Permutation};
pub mod pairing;

pub use pairing::{CategoryTruncation, Family, PairingDiagram};
pub mod tensor;
pub mod duality;
pub mod classify;

pub use classify::{ProjClass, ProjQGClass, QGClass, SphereClass};
pub use duality::ProjectiveCategoryTruncation;

pub use tensor::{Matrix, Model};

/// Exact integer matrices: Gram matrices and stacked `T_π` vectors.
pub type ExactMatrix = Matrix<num_bigint::BigInt>;
/// Matrices over the rationals, used as an independent rank route.
pub type RationalMatrix = Matrix<num_rational::BigRational>;
pub type HalfLibModel64 = tensor::HalfLibModel<f64>;
pub type ProjectiveModel64 = tensor::ProjectiveModel<f64>;
