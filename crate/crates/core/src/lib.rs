pub mod bounds;
pub mod error;
pub mod handles;
pub mod jsj;
pub mod lattice;
pub mod linalg;
pub mod num_serde;
pub mod presentation;
pub mod scalar;

use num_bigint::BigInt;

pub use error::Error;

pub type IntMatrix = linalg::Matrix<BigInt>;
pub type LatticeVector = lattice::Vec2<BigInt>;
