//! Finite abelian groups in invariant-factor coordinates, their subgroups,
//! and the purity / direct-summand / direct-double tests.

mod group;
mod lattice;
mod subgroup;

pub use group::{group_from_presentation, Element, FiniteAbelianGroup, Presentation};
pub(crate) use group::cyclic_sum;
pub(crate) use lattice::ElementTable;
pub use lattice::{direct_summand_complement, enumerate_subgroups, is_direct_summand, SubgroupLattice, DEFAULT_CAP};
pub use subgroup::{PurityWitness, Subgroup};
