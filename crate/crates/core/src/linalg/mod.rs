//! Exact integer matrix algebra.

mod kernel;
mod matrix;
mod smith;

pub use kernel::{bounded_kernel_basis, rational_kernel_basis, same_rational_span, to_rational, FundamentalSolutionSet};
pub use matrix::Matrix;
pub use smith::{invariant_factors, smith_normal_form, torsion_orders, SmithForm, Torsion};
