use super::catalog::*;
use super::*;
use crate::arith::{binary_ones, Permutation};

fn perm(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

/// Counts subgroups by testing every subset containing the identity for
/// closure under multiplication. Only for tiny groups.
fn brute_force_subgroup_count(group: &GroupHandle) -> usize {
    let t = group.table().unwrap();
    let n = t.order();
    assert!(n <= 16);
    (0u32..1 << (n - 1))
        .filter(|mask| {
            let has = |x: u32| x == 0 || mask >> (x - 1) & 1 == 1;
            (0..n as u32)
                .filter(|&a| has(a))
                .all(|a| (0..n as u32).filter(|&b| has(b)).all(|b| has(t.mul(a, b))))
        })
        .count()
}

fn catalog() -> Vec<(&'static str, GroupHandle)> {
    vec![
        ("C6", cyclic(6).unwrap()),
        ("C8", cyclic(8).unwrap()),
        ("S3", symmetric(3).unwrap()),
        ("S4", symmetric(4).unwrap()),
        ("A4", alternating(4).unwrap()),
        ("A5", alternating(5).unwrap()),
        ("D8", dihedral(4).unwrap()),
        ("D10", dihedral(5).unwrap()),
        ("Q8", quaternion().unwrap()),
        ("F21", metacyclic(7, 3, 2).unwrap()),
        ("F20", metacyclic(5, 4, 2).unwrap()),
        ("C2^3", elementary_abelian(2, 3).unwrap()),
    ]
}

#[test]
fn closure_examples() {
    let s4 = GroupHandle::close(&[perm(4, "(1 2)"), perm(4, "(1 2 3 4)")]).unwrap();
    assert_eq!(s4.order().unwrap(), 24);
    assert_eq!(GroupHandle::close(&[Permutation::identity(5)]).unwrap().order().unwrap(), 1);
    let a5 = GroupHandle::close(&[perm(5, "(1 2 3 4 5)"), perm(5, "(3 4 5)")]).unwrap();
    assert_eq!(a5.order().unwrap(), 60);
    let store = s4.elements().unwrap();
    assert!(store.get(0).is_identity());
}

#[test]
fn closure_errors() {
    let mixed = GroupHandle::close(&[perm(4, "(1 2)"), perm(5, "(1 2)")]);
    assert!(matches!(mixed, Err(crate::Error::Invalid(_))));
    let caps = Caps {
        closure: 100,
        ..Caps::default()
    };
    let too_big = GroupHandle::close_with(&[perm(5, "(1 2)"), perm(5, "(1 2 3 4 5)")], caps);
    assert!(matches!(too_big, Err(crate::Error::CapExceeded { .. })));
}

#[test]
fn chain_order_matches_closure() {
    let mut groups = catalog();
    groups.push(("S6", symmetric(6).unwrap()));
    groups.push(("S4xC6", direct_product(&symmetric(4).unwrap(), &cyclic(6).unwrap()).unwrap()));
    for (name, g) in groups {
        let chain = StabilizerChain::new(g.degree(), g.generators(), 10_000).unwrap();
        assert!(chain.is_valid(), "{name}");
        assert_eq!(chain.order().unwrap(), g.elements().unwrap().len() as u128, "{name}");
    }
}

#[test]
fn sifting_membership_agrees_with_element_set() {
    use proptest::prelude::*;
    use proptest::strategy::ValueTree;
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for (name, g) in catalog() {
        let chain = g.chain().unwrap();
        let store = g.elements().unwrap();
        for x in store.elements() {
            assert!(chain.contains(x), "{name}");
        }
        let strategy = Just((0..g.degree() as u32).collect::<Vec<_>>()).prop_shuffle();
        let mut outside = 0;
        while outside < 100 {
            let images = strategy.new_tree(&mut runner).unwrap().current();
            let p = Permutation::from_images(images).unwrap();
            let member = store.index_of(&p).is_some();
            assert_eq!(chain.contains(&p), member, "{name} {p}");
            if !member {
                outside += 1;
            }
            if g.order().unwrap() == (1..=g.degree() as u128).product::<u128>() {
                break;
            }
        }
    }
}

#[test]
fn pointwise_stabilizer_examples() {
    let s4 = symmetric(4).unwrap();
    assert_eq!(s4.pointwise_stabilizer(&[0]).unwrap().order().unwrap(), 6);
    assert_eq!(s4.pointwise_stabilizer(&[0, 1, 2]).unwrap().order().unwrap(), 1);
    let d8 = GroupHandle::close(&[perm(4, "(1 2 3 4)"), perm(4, "(1 3)")]).unwrap();
    let stab = d8.pointwise_stabilizer(&[0, 2]).unwrap();
    assert_eq!(stab.order().unwrap(), 2);
    for g in stab.generators() {
        assert_eq!((g.apply(0), g.apply(2)), (0, 2));
    }
    // agrees with filtering the element list
    for points in [vec![0], vec![1, 3], vec![0, 1], vec![]] {
        let by_chain = d8.pointwise_stabilizer(&points).unwrap().order().unwrap();
        let by_filter = d8
            .elements()
            .unwrap()
            .elements()
            .iter()
            .filter(|g| points.iter().all(|&x| g.apply(x) == x))
            .count();
        assert_eq!(by_chain, by_filter as u128);
    }
}

#[test]
fn lattice_examples() {
    let c6 = SubgroupLattice::new(&cyclic(6).unwrap()).unwrap();
    assert_eq!(c6.len(), 4);
    let s4 = SubgroupLattice::new(&symmetric(4).unwrap()).unwrap();
    let maxes = s4.maximal_subgroups();
    let mut orders: Vec<usize> = maxes.iter().map(|&i| s4.get(i).order()).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![6, 6, 6, 6, 8, 8, 8, 12]);
    assert_eq!(s4.len(), 30);
    assert_eq!(s4.conjugacy_classes().len(), 11);
    let q8 = SubgroupLattice::new(&quaternion().unwrap()).unwrap();
    assert_eq!(q8.len(), 6);
    assert_eq!(q8.maximal_subgroups().len(), 3);
}

#[test]
fn lattice_matches_brute_force() {
    for (name, g) in catalog() {
        if g.order().unwrap() > 16 {
            continue;
        }
        let lattice = SubgroupLattice::new(&g).unwrap();
        assert_eq!(lattice.len(), brute_force_subgroup_count(&g), "{name}");
    }
}

#[test]
fn lattice_invariants() {
    for (name, g) in catalog() {
        let lat = SubgroupLattice::new(&g).unwrap();
        let top = lat.whole_index();
        assert_eq!(lat.get(top).order() as u128, g.order().unwrap(), "{name}");
        assert_eq!(lat.get(0).order(), 1, "{name}");
        for i in 0..lat.len() {
            // maximal flags agree with the containment relation
            let expect = i != top
                && (0..lat.len()).all(|j| j == top || j == i || !lat.contains(j, i));
            assert_eq!(lat.is_maximal(i), expect, "{name} subgroup {i}");
        }
    }
}

fn length_formula(n: u64) -> usize {
    ((3 * n - 1) / 2 - u64::from(binary_ones(n))) as usize
}

#[test]
fn length_of_symmetric_groups() {
    for n in 2..=6 {
        let l = length(&symmetric(n).unwrap()).unwrap();
        assert_eq!(l.length, length_formula(n as u64), "S{n}");
        let chain = l.chain_orders.unwrap();
        assert_eq!(chain.len(), l.length + 1);
        assert_eq!(*chain.last().unwrap(), 1);
        assert!(chain.windows(2).all(|w| w[0] > w[1] && w[0] % w[1] == 0));
    }
    assert_eq!(length(&cyclic(8).unwrap()).unwrap().length, 3);
    assert_eq!(length(&symmetric(4).unwrap()).unwrap().length, 4);
    assert_eq!(length(&symmetric(5).unwrap()).unwrap().length, 5);
}

#[test]
fn length_of_large_p_group_uses_shortcut() {
    let caps = Caps {
        lattice: 8,
        ..Caps::default()
    };
    let c16 = cyclic(16).unwrap().with_caps(caps).unwrap();
    let l = length(&c16).unwrap();
    assert_eq!(l.length, 4);
    assert!(l.chain_orders.is_none());
    assert!(length(&cyclic(12).unwrap().with_caps(caps).unwrap()).is_err());
}

#[test]
fn length_bounds_and_additivity() {
    let groups = catalog();
    for (name, g) in &groups {
        let l = length(g).unwrap().length as f64;
        assert!(l <= (g.order().unwrap() as f64).log2() + 1e-9, "{name}");
    }
    let small: Vec<_> = groups.iter().filter(|(_, g)| g.order().unwrap() <= 24).collect();
    for (a, g) in &small {
        for (b, h) in &small {
            let prod = direct_product(g, h).unwrap();
            if prod.order().unwrap() > 200 {
                continue;
            }
            assert_eq!(
                length(&prod).unwrap().length,
                length(g).unwrap().length + length(h).unwrap().length,
                "{a} x {b}"
            );
        }
    }
}

#[test]
fn sylow_examples() {
    let s4 = symmetric(4).unwrap();
    let p2 = sylow_subgroup(&s4, 2).unwrap();
    assert_eq!(p2.order().unwrap(), 8);
    assert_eq!(p_group_rank(&p2, 2).unwrap(), 2);
    assert_eq!(sylow_subgroup(&s4, 3).unwrap().order().unwrap(), 3);
    assert_eq!(sylow_subgroup(&cyclic(6).unwrap(), 5).unwrap().order().unwrap(), 1);
    assert!(sylow_subgroup(&s4, 4).is_err());
}

#[test]
fn sylow_orders_are_full_p_parts() {
    for (name, g) in catalog() {
        let order = g.order().unwrap() as u64;
        for (p, e) in crate::arith::factorize(order).factors().to_vec() {
            let s = sylow_subgroup(&g, p).unwrap();
            assert_eq!(s.order().unwrap(), u128::from(p.pow(e)), "{name} p={p}");
            assert!(s.is_subgroup_of(&g).unwrap());
        }
    }
}

#[test]
fn p_group_ranks() {
    assert_eq!(p_group_rank(&cyclic(8).unwrap(), 2).unwrap(), 1);
    assert_eq!(p_group_rank(&dihedral(4).unwrap(), 2).unwrap(), 2);
    assert_eq!(p_group_rank(&quaternion().unwrap(), 2).unwrap(), 2);
    assert_eq!(p_group_rank(&elementary_abelian(3, 2).unwrap(), 3).unwrap(), 2);
    assert!(p_group_rank(&symmetric(3).unwrap(), 2).is_err());
}

#[test]
fn coset_action_examples() {
    let s4 = symmetric(4).unwrap();
    let s3 = s4.pointwise_stabilizer(&[3]).unwrap();
    let act = coset_action(&s4, &s3).unwrap();
    assert_eq!(act.degree(), 4);
    assert!(act.is_faithful() && act.is_transitive());
    assert!(is_primitive(&act).unwrap());

    let a4 = alternating(4).unwrap();
    let act = coset_action(&s4, &a4).unwrap();
    assert_eq!(act.degree(), 2);
    assert!(!act.is_faithful());

    let a5 = alternating(5).unwrap();
    let a4_in_a5 = a5.pointwise_stabilizer(&[4]).unwrap();
    let act = coset_action(&a5, &a4_in_a5).unwrap();
    assert_eq!(act.degree(), 5);
    assert!(act.is_faithful());

    assert!(coset_action(&a4, &s4).is_err());
}

#[test]
fn coset_action_faithfulness_matches_core() {
    for (name, g) in catalog() {
        let lat = SubgroupLattice::new(&g).unwrap();
        for sub in lat.subgroups() {
            let h = g.subgroup(sub).unwrap();
            let act = coset_action(&g, &h).unwrap();
            assert_eq!(act.degree() as u128, g.order().unwrap() / h.order().unwrap());
            assert!(act.group().is_transitive());
            let image_order = act.group().order().unwrap();
            assert_eq!(act.is_faithful(), image_order == g.order().unwrap(), "{name}");
        }
    }
}

#[test]
fn primitivity_examples() {
    let s4 = ActionInstance::natural(&symmetric(4).unwrap()).unwrap();
    assert!(is_primitive(&s4).unwrap());
    let d8 = ActionInstance::natural(&dihedral(4).unwrap()).unwrap();
    assert!(!is_primitive(&d8).unwrap());
    let c6 = ActionInstance::natural(&cyclic(6).unwrap()).unwrap();
    assert!(!is_primitive(&c6).unwrap());
    let c5 = ActionInstance::natural(&cyclic(5).unwrap()).unwrap();
    assert!(is_primitive(&c5).unwrap());
    let intransitive = ActionInstance::natural(&GroupHandle::close(&[perm(4, "(1 2)")]).unwrap()).unwrap();
    assert!(is_primitive(&intransitive).is_err());
}

#[test]
fn constructor_orders() {
    assert_eq!(metacyclic(7, 3, 2).unwrap().order().unwrap(), 21);
    assert_eq!(metacyclic(5, 4, 2).unwrap().order().unwrap(), 20);
    assert_eq!(metacyclic(5, 2, 1).unwrap().order().unwrap(), 10);
    assert_eq!(metacyclic_inverted(5, 2, 1).unwrap().order().unwrap(), 20);
    assert_eq!(metacyclic_inverted(7, 3, 2).unwrap().order().unwrap(), 42);
    assert_eq!(
        direct_product(&symmetric(4).unwrap(), &cyclic(6).unwrap()).unwrap().order().unwrap(),
        144
    );
    assert!(metacyclic(7, 3, 3).is_err());
    assert!(metacyclic(6, 2, 2).is_err());
    assert_eq!(quaternion().unwrap().order().unwrap(), 8);
    assert_eq!(frobenius(7, 2).unwrap().order().unwrap(), 21);
    assert_eq!(frobenius(11, 2).unwrap().order().unwrap(), 110);
    assert_eq!(frobenius(5, 1).unwrap().order().unwrap(), 5);
    assert!(frobenius(6, 5).is_err());
    assert_eq!(dihedral(4).unwrap().order().unwrap(), 8);
    for n in 1..=6 {
        let s = symmetric(n).unwrap().order().unwrap();
        assert_eq!(s, (1..=n as u128).product::<u128>());
        let a = alternating(n).unwrap().order().unwrap();
        assert_eq!(a, if n < 2 { 1 } else { s / 2 });
    }
}

#[test]
fn metacyclic_relations_hold() {
    for (m, n, k) in [(7, 3, 2), (5, 4, 2), (9, 6, 2), (5, 2, 1)] {
        let g = metacyclic(m, n, k).unwrap();
        let (a, b) = (&g.generators()[0], &g.generators()[1]);
        assert!(a.pow(m as u64).is_identity());
        assert!(b.pow(n as u64).is_identity());
        assert_eq!(a.conjugate_by(b), a.pow(k as u64));
    }
    let g = metacyclic_inverted(7, 3, 2).unwrap();
    let (a, b, c) = (&g.generators()[0], &g.generators()[1], &g.generators()[2]);
    assert_eq!(a.conjugate_by(c), a.inverse());
    assert_eq!(b.then(c), c.then(b));
}
