//! Benchmark fixtures.
//!
//! Group handles cache their Cayley table and lattice, so every fixture
//! builds a fresh handle; benches call these inside the timed closure or
//! as a batched setup, depending on what they measure.

use genset_lab_core::group::{catalog, ActionInstance, GroupHandle};
use genset_lab_core::lie::{projective_group, LieGroupSpec};
use genset_lab_core::Result;

/// Permutation groups used across benches, smallest first.
pub fn named_group(name: &str) -> Result<GroupHandle> {
    match name {
        "S4" => catalog::symmetric(4),
        "S5" => catalog::symmetric(5),
        "A5" => catalog::alternating(5),
        "A6" => catalog::alternating(6),
        "F21" => catalog::frobenius(7, 2),
        "D8xC9" => catalog::direct_product(&catalog::dihedral(4)?, &catalog::cyclic(9)?),
        "PSL_2(7)" => psl(2, 7, 1),
        "PSL_2(8)" => psl(2, 2, 3),
        other => Err(genset_lab_core::Error::Invalid(format!("unknown bench group {other}"))),
    }
}

pub fn psl(n: usize, p: u32, f: u32) -> Result<GroupHandle> {
    projective_group(&LieGroupSpec::new(n, p, f)?)
}

pub fn natural_action(name: &str) -> Result<ActionInstance> {
    ActionInstance::natural(&named_group(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_orders() {
        for (name, order) in [
            ("S4", 24),
            ("S5", 120),
            ("A5", 60),
            ("A6", 360),
            ("F21", 21),
            ("D8xC9", 72),
            ("PSL_2(7)", 168),
            ("PSL_2(8)", 504),
        ] {
            assert_eq!(named_group(name).unwrap().order().unwrap(), order, "{name}");
        }
        assert!(named_group("nope").is_err());
    }
}
