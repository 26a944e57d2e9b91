//! Finitely generated abelian groups, exact integer linear algebra and relative cohomology.

mod cochain;
mod cohomology;
mod effective;
mod fg;
pub mod matrix;

pub use cochain::Cochain;
pub use cohomology::{cohomology_group, Cohomology, CochainOps, RelativeComplex};
pub use effective::{
    balanced, cokernel_from_generators, combination, kernel_abelian, kernel_generators_abelianized, multiple,
    Cokernel, EffectiveAbelian, Extractor, GroupOps, Subquotient,
};
pub use fg::FgAbelian;
pub use matrix::{smith_normal_form, solve_exact, solve_modular, IntegerMatrix, LinearSystem, Smith};
