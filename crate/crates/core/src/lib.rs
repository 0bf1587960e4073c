//! Exact combinatorics for two constructions: the calculus of paracyclic
//! morphisms with its cyclic duality, and finite orbit 2-categories built
//! from a crossed module acting on an equivariant preorder of subgroup
//! carriers. Everything is small enough to verify by exhaustive scan, and
//! the validators do exactly that, reporting witnesses for every failure.

pub mod crossed;
pub mod format;
pub mod group;
pub mod instances;
pub mod orbit;
pub mod para;
pub mod preorder;
pub mod report;

pub use crossed::CrossedModule;
pub use group::{FiniteGroup, GroupAction, GroupHom, Subgroup};
pub use orbit::{CosetMorphism, HoMorphism, OrbitInstance};
pub use para::{ParaMorphism, SubcategoryTag};
pub use preorder::{Cosieve, EquivariantPreorder, SelfDuality, SubgroupPresheaf};
pub use report::{CheckRecord, Report, Status};
