//! Permutation group machinery: closure, stabilizer chains, lattices,
//! Sylow subgroups, actions, and a small constructor catalog.

mod action;
pub mod catalog;
mod chain;
mod handle;
mod lattice;
mod sylow;
mod table;

pub use action::{coset_action, core_of, is_primitive, ActionInstance, CosetData};
pub use chain::StabilizerChain;
pub use handle::{Caps, ElementStore, GroupHandle};
pub use lattice::{length, LengthResult, SubgroupLattice};
pub use sylow::{
    elementary_kernel, elementary_quotient_rank, p_group_rank, p_part, sylow_in_table, sylow_subgroup,
};
pub use table::{CayleyTable, ElemSet, Subgroup};

#[cfg(test)]
mod tests;
