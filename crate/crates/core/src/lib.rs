//! Homotopy classes of maps into Moore–Postnikov towers, computed with exact integer linear
//! algebra on finite simplicial sets.
//!
//! The layers, bottom up: [`simplicial`] (finite simplicial sets, maps, products, quotients),
//! [`abelian`] (Smith normal form, effective abelian groups, relative cohomology), [`em`]
//! (Eilenberg–MacLane simplices and k-invariant expressions), [`polycyclic`] (fully effective
//! polycyclic groups), [`tower`] (stages, lifts, homotopies) and [`engine`] (the exact-sequence
//! recursion, nullhomotopies, suspension groups and homotopy decisions).

pub mod abelian;
pub mod em;
pub mod engine;
pub mod error;
pub mod polycyclic;
pub mod simplicial;
pub mod tower;

pub use abelian::{cohomology_group, Cochain, Cohomology, EffectiveAbelian, FgAbelian, GroupOps, RelativeComplex};
pub use em::{KExpr, KInvariant};
pub use engine::{
    check_homotopy, decide_homotopic, suspension_group_top, Decision, Engine, ProblemInstance, SuspensionGroup,
};
pub use error::{Error, Result};
pub use polycyclic::Polycyclic;
pub use simplicial::{SimplexId, SimplicialMap, SimplicialPair, SimplicialSet, Subcomplex};
pub use tower::{catalog, Tower, TowerMap};
