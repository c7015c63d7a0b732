//! Base invariants of a faithful action: the maximal minimal base size `B`,
//! the height `H` and the maximal irredundant base size `I`.
//!
//! Every search works with pointwise stabilizers `G_(S)`. Two backends
//! compute them: intersections of point-stabilizer bitsets over the element
//! list, or stabilizer chains built incrementally from the stabilizer of a
//! smaller set. Longest irredundant chains are memoized on the fixed-point
//! set of `G_(S)`, which determines `G_(S)`.

use crate::arith::{big_omega, factorize, omega};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::group::{is_primitive, ActionInstance, ElemSet, GroupHandle};
use serde::Serialize;
use std::cell::RefCell;
use std::collections::HashMap;

/// How pointwise stabilizers are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizerRoute {
    /// Element bitsets up to [`AUTO_ELEMENT_LIMIT`], chains beyond.
    #[default]
    Auto,
    Elements,
    Chain,
}

/// Largest group order for which [`StabilizerRoute::Auto`] lists elements.
pub const AUTO_ELEMENT_LIMIT: u128 = 50_000;

#[derive(Clone)]
enum Stab {
    Bits(ElemSet),
    Chain(GroupHandle, u128),
}

enum Backend {
    Elements { points: Vec<ElemSet> },
    Chain { memo: RefCell<HashMap<Vec<usize>, Stab>> },
}

/// Pointwise-stabilizer oracle for one action.
struct Stabilizers<'a> {
    action: &'a ActionInstance,
    backend: Backend,
    whole: Stab,
    route: StabilizerRoute,
}

impl<'a> Stabilizers<'a> {
    fn new(action: &'a ActionInstance, route: StabilizerRoute) -> Result<Self> {
        let group = action.group();
        let order = group.order()?;
        let route = match route {
            StabilizerRoute::Auto if order <= AUTO_ELEMENT_LIMIT => StabilizerRoute::Elements,
            StabilizerRoute::Auto => StabilizerRoute::Chain,
            other => other,
        };
        Ok(match route {
            StabilizerRoute::Elements => {
                let n = group.elements()?.len();
                let points = (0..action.degree())
                    .map(|p| group.point_stabilizer_ids(p))
                    .collect::<Result<_>>()?;
                Self {
                    action,
                    backend: Backend::Elements { points },
                    whole: Stab::Bits(ElemSet::full(n)),
                    route,
                }
            }
            _ => Self {
                action,
                backend: Backend::Chain {
                    memo: RefCell::new(HashMap::new()),
                },
                whole: Stab::Chain(group.clone(), order),
                route,
            },
        })
    }

    fn order(&self, s: &Stab) -> u128 {
        match s {
            Stab::Bits(b) => b.len() as u128,
            Stab::Chain(_, o) => *o,
        }
    }

    fn fixes(&self, s: &Stab, p: usize) -> bool {
        match (s, &self.backend) {
            (Stab::Bits(b), Backend::Elements { points }) => b.is_subset(&points[p]),
            (Stab::Chain(h, _), _) => h.generators().iter().all(|g| g.apply(p) == p),
            _ => unreachable!("stabilizer from another backend"),
        }
    }

    /// `G_(S ∪ {p})` from `s = G_(S)`.
    fn add(&self, s: &Stab, set: &[usize], p: usize) -> Result<Stab> {
        match (s, &self.backend) {
            (Stab::Bits(b), Backend::Elements { points }) => Ok(Stab::Bits(b.intersection(&points[p]))),
            (Stab::Chain(h, _), Backend::Chain { memo }) => {
                let mut key = set.to_vec();
                key.push(p);
                key.sort_unstable();
                key.dedup();
                if let Some(found) = memo.borrow().get(&key) {
                    return Ok(found.clone());
                }
                let child = h.pointwise_stabilizer(&[p])?;
                let order = child.order()?;
                let stab = Stab::Chain(child, order);
                memo.borrow_mut().insert(key, stab.clone());
                Ok(stab)
            }
            _ => unreachable!("stabilizer from another backend"),
        }
    }

    /// `G_(S)` from scratch, adding points in the given order.
    fn of(&self, set: &[usize]) -> Result<Stab> {
        let mut s = self.whole.clone();
        for (i, &p) in set.iter().enumerate() {
            s = self.add(&s, &set[..i], p)?;
        }
        Ok(s)
    }

    fn fixed_points(&self, s: &Stab) -> Vec<usize> {
        (0..self.action.degree()).filter(|&p| self.fixes(s, p)).collect()
    }

    /// Full definitional check: every proper subset has a strictly larger
    /// pointwise stabilizer.
    fn is_independent_all_subsets(&self, set: &[usize]) -> Result<bool> {
        let k = set.len();
        let full = self.order(&self.of(set)?);
        for mask in 0..(1u64 << k) - 1 {
            let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            if self.order(&self.of(&sub)?) <= full {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Longest irredundant chains below each closed set, memoized.
/// Best extension length and first point, keyed by the prefix.
type PrefixMemo = HashMap<Vec<usize>, (usize, Option<usize>)>;

struct Irredundant<'a, 'b> {
    stabs: &'b Stabilizers<'a>,
    memo: RefCell<PrefixMemo>,
}

impl Irredundant<'_, '_> {
    /// Length of the longest strictly decreasing chain of pointwise
    /// stabilizers from `G_(closed)` to `1`, and the first point of one.
    fn depth(&self, s: &Stab, closed: &[usize], candidates: Option<&[usize]>) -> Result<(usize, Option<usize>)> {
        if let Some(&found) = self.memo.borrow().get(closed) {
            if candidates.is_none() {
                return Ok(found);
            }
        }
        let order = self.stabs.order(s);
        let ceiling = big_omega(u64::try_from(order).map_err(|_| Error::Overflow("stabilizer order".into()))?) as usize;
        let mut best = (0, None);
        if order > 1 {
            let all: Vec<usize>;
            let points = match candidates {
                Some(c) => c,
                None => {
                    all = (0..self.stabs.action.degree()).collect();
                    &all
                }
            };
            for &p in points {
                if closed.binary_search(&p).is_ok() {
                    continue;
                }
                let child = self.stabs.add(s, closed, p)?;
                let child_closed = self.stabs.fixed_points(&child);
                let (d, _) = self.depth(&child, &child_closed, None)?;
                if d + 1 > best.0 {
                    best = (d + 1, Some(p));
                    if best.0 == ceiling {
                        break;
                    }
                }
            }
        }
        if candidates.is_none() {
            self.memo.borrow_mut().insert(closed.to_vec(), best);
        }
        Ok(best)
    }

    fn witness(&self, orbit_reps: &[usize]) -> Result<Vec<usize>> {
        let mut s = self.stabs.whole.clone();
        let mut closed = self.stabs.fixed_points(&s);
        let mut seq = Vec::new();
        let (_, mut next) = self.depth(&s, &closed, Some(orbit_reps))?;
        while let Some(p) = next {
            seq.push(p);
            s = self.stabs.add(&s, &closed, p)?;
            closed = self.stabs.fixed_points(&s);
            next = self.depth(&s, &closed, None)?.1;
        }
        Ok(seq)
    }
}

/// `B`, `H`, `I` and the relational-complexity bound `H + 1`, with
/// witnesses. Points in witnesses are 0-indexed.
#[derive(Debug, Clone, Serialize)]
pub struct BaseReport {
    pub degree: usize,
    pub order: String,
    pub route: StabilizerRoute,
    pub b: usize,
    pub h: usize,
    pub i: usize,
    pub rc_upper: usize,
    pub b_witness: Vec<usize>,
    pub h_witness: Vec<usize>,
    pub i_witness: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Height,
    MinimalBase,
}

struct SetSearch<'a, 'b, 'c> {
    stabs: &'b Stabilizers<'a>,
    chains: &'c Irredundant<'a, 'b>,
    target: Target,
    best: usize,
    witness: Vec<usize>,
}

impl SetSearch<'_, '_, '_> {
    /// Extends the independent set `set` (with stabilizer `s`, and `without[i]`
    /// the stabilizer of `set` minus its `i`-th point) by points `>= start`.
    fn dfs(&mut self, set: &mut Vec<usize>, s: &Stab, without: &[Stab], start: usize, skip: usize) -> Result<()> {
        let order = self.stabs.order(s);
        let accept = match self.target {
            Target::Height => true,
            Target::MinimalBase => order == 1,
        };
        if accept && set.len() > self.best {
            self.best = set.len();
            self.witness = set.clone();
        }
        if order == 1 {
            return Ok(());
        }
        let closed = self.stabs.fixed_points(s);
        let (depth, _) = self.chains.depth(s, &closed, None)?;
        if set.len() + depth <= self.best {
            return Ok(());
        }
        for p in start..self.stabs.action.degree() {
            if p == skip || closed.binary_search(&p).is_ok() {
                continue;
            }
            let child = self.stabs.add(s, set, p)?;
            let child_order = self.stabs.order(&child);
            let mut child_without = Vec::with_capacity(without.len() + 1);
            let mut independent = true;
            for (i, w) in without.iter().enumerate() {
                let rest: Vec<usize> = set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                let wp = self.stabs.add(w, &rest, p)?;
                if self.stabs.order(&wp) <= child_order {
                    independent = false;
                    break;
                }
                child_without.push(wp);
            }
            if !independent {
                continue;
            }
            child_without.push(s.clone());
            set.push(p);
            self.dfs(set, &child, &child_without, p + 1, skip)?;
            set.pop();
        }
        Ok(())
    }
}

fn orbit_reps(action: &ActionInstance) -> Vec<usize> {
    action.group().orbits().iter().map(|o| o[0]).collect()
}

fn search_sets(stabs: &Stabilizers, chains: &Irredundant, target: Target) -> Result<(usize, Vec<usize>)> {
    let mut search = SetSearch {
        stabs,
        chains,
        target,
        best: 0,
        witness: Vec::new(),
    };
    let whole = stabs.whole.clone();
    if stabs.order(&whole) == 1 {
        return Ok((0, Vec::new()));
    }
    // Some image of any non-empty set contains an orbit representative;
    // the remaining points are then an arbitrary increasing set.
    for r in orbit_reps(stabs.action) {
        if stabs.fixes(&whole, r) {
            continue;
        }
        let s = stabs.add(&whole, &[], r)?;
        let mut set = vec![r];
        search.dfs(&mut set, &s, std::slice::from_ref(&whole), 0, r)?;
    }
    Ok((search.best, search.witness))
}

/// Computes `B`, `H`, `I` for a faithful action.
pub fn base_invariants(action: &ActionInstance, route: StabilizerRoute) -> Result<BaseReport> {
    action.require_faithful()?;
    let stabs = Stabilizers::new(action, route)?;
    let chains = Irredundant {
        stabs: &stabs,
        memo: RefCell::new(HashMap::new()),
    };
    let reps = orbit_reps(action);
    let i_witness = chains.witness(&reps)?;
    let (h, h_witness) = search_sets(&stabs, &chains, Target::Height)?;
    let (b, b_witness) = search_sets(&stabs, &chains, Target::MinimalBase)?;
    if !stabs.is_independent_all_subsets(&h_witness)? || !stabs.is_independent_all_subsets(&b_witness)? {
        return Err(Error::invalid("witness failed the all-subsets independence check"));
    }
    Ok(BaseReport {
        degree: action.degree(),
        order: action.group().order()?.to_string(),
        route: stabs.route,
        b,
        h,
        i: i_witness.len(),
        rc_upper: h + 1,
        b_witness,
        h_witness,
        i_witness,
    })
}

pub fn max_irredundant_base(action: &ActionInstance) -> Result<(usize, Vec<usize>)> {
    let r = base_invariants(action, StabilizerRoute::Auto)?;
    Ok((r.i, r.i_witness))
}

pub fn height(action: &ActionInstance) -> Result<(usize, Vec<usize>)> {
    let r = base_invariants(action, StabilizerRoute::Auto)?;
    Ok((r.h, r.h_witness))
}

pub fn max_minimal_base(action: &ActionInstance) -> Result<(usize, Vec<usize>)> {
    let r = base_invariants(action, StabilizerRoute::Auto)?;
    Ok((r.b, r.b_witness))
}

pub fn rc_upper_bound(report: &BaseReport) -> usize {
    report.h + 1
}

/// Both sides of `H(G,Ω) ≤ H(N,Ω) + ω(|G/N|)` for a normal subgroup `N`
/// with cyclic quotient, plus the reduction `Δ ⊆ Γ` from a largest
/// independent set `Γ` of `G` to a set independent for `N` with the same
/// `N`-stabilizer.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicQuotientReport {
    pub index: u64,
    pub omega_index: usize,
    pub h_group: usize,
    pub h_normal: usize,
    pub gamma: Vec<usize>,
    pub delta: Vec<usize>,
    pub checks: Vec<Check>,
}

fn validate_cyclic_quotient(group: &GroupHandle, normal: &GroupHandle) -> Result<u64> {
    if !normal.is_subgroup_of(group)? {
        return Err(Error::pre("N is not a subgroup of G"));
    }
    for g in group.generators() {
        for h in normal.generators() {
            if !normal.contains(&h.conjugate_by(g))? {
                return Err(Error::pre("N is not normal in G"));
            }
        }
    }
    let index = u64::try_from(group.order()? / normal.order()?).map_err(|_| Error::Overflow("index".into()))?;
    let table = group.table()?;
    let n_ids = group.ids_of(normal)?;
    let cyclic = (0..table.order() as u32).any(|g| {
        let mut x = g;
        let mut j = 1;
        while !n_ids.set.contains(x) {
            x = table.mul(x, g);
            j += 1;
        }
        j == index
    });
    if !cyclic {
        return Err(Error::pre("G/N is not cyclic"));
    }
    Ok(index)
}

pub fn check_cyclic_quotient(action: &ActionInstance, normal: &GroupHandle) -> Result<CyclicQuotientReport> {
    action.require_faithful()?;
    let group = action.group();
    let index = validate_cyclic_quotient(group, normal)?;
    let g_report = base_invariants(action, StabilizerRoute::Auto)?;
    let n_action = action.restrict(normal)?;
    let n_report = base_invariants(&n_action, StabilizerRoute::Auto)?;
    let n_stabs = Stabilizers::new(&n_action, StabilizerRoute::Auto)?;
    let gamma = g_report.h_witness.clone();
    let target = n_stabs.order(&n_stabs.of(&gamma)?);
    let mut delta = gamma.clone();
    'reduce: loop {
        for i in 0..delta.len() {
            let mut rest = delta.clone();
            rest.remove(i);
            if n_stabs.order(&n_stabs.of(&rest)?) == target {
                delta = rest;
                continue 'reduce;
            }
        }
        break;
    }
    let omega_index = omega(index);
    let checks = vec![
        Check::le(
            "H(G) <= H(N) + omega(|G/N|)",
            g_report.h as u64,
            n_report.h as u64 + omega_index as u64,
        ),
        Check::holds("Delta is independent for N", n_stabs.is_independent_all_subsets(&delta)?),
        Check::eq(
            "|N_(Delta)| = |N_(Gamma)|",
            n_stabs.order(&n_stabs.of(&delta)?),
            target,
        ),
        Check::le("|Delta| <= H(N)", delta.len() as u64, n_report.h as u64),
        Check::le(
            "|Gamma \\ Delta| <= omega(|G/N|)",
            (gamma.len() - delta.len()) as u64,
            omega_index as u64,
        ),
    ];
    Ok(CyclicQuotientReport {
        index,
        omega_index,
        h_group: g_report.h,
        h_normal: n_report.h,
        gamma,
        delta,
        checks,
    })
}

/// Constants of the general height bound `H ≤ A·r^B + ω(f)`.
pub const HEIGHT_A: u64 = 177;
pub const HEIGHT_B: u32 = 8;

/// `H`, `B` and the RC bound against `177·r⁸ + ω(f)` for a faithful
/// primitive action of a group of Lie type of rank `r` over `GF(p^f)`.
/// The inequality is checked for the acting group itself.
pub fn check_height_bound(action: &ActionInstance, report: &BaseReport, rank: u32, f: u64) -> Result<Vec<Check>> {
    action.require_faithful()?;
    if !is_primitive(action)? {
        return Err(Error::pre("action is not primitive"));
    }
    if rank == 0 || f == 0 {
        return Err(Error::pre("rank and field degree must be positive"));
    }
    let bound = HEIGHT_A * u64::from(rank).pow(HEIGHT_B) + factorize(f).omega() as u64;
    Ok(vec![
        Check::le("H <= 177 r^8 + omega(f)", report.h as u64, bound),
        Check::le("B <= 177 r^8 + omega(f)", report.b as u64, bound),
        Check::le("RC bound <= 177 r^8 + omega(f) + 1", report.rc_upper as u64, bound + 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Permutation;
    use crate::group::catalog::*;
    use crate::group::{coset_action, length, SubgroupLattice};

    /// Definitional oracle over all subsets and all sequences of points,
    /// filtering the element list directly.
    fn brute_force(action: &ActionInstance) -> (usize, usize, usize) {
        let group = action.group();
        let elements: Vec<Permutation> = group.elements().unwrap().elements().to_vec();
        let n = action.degree();
        assert!(n <= 10);
        let stab = |mask: u32| {
            elements
                .iter()
                .filter(|g| (0..n).all(|p| mask >> p & 1 == 0 || g.apply(p) == p))
                .count()
        };
        let orders: Vec<usize> = (0..1u32 << n).map(stab).collect();
        let independent = |mask: u32| {
            let mut sub = mask;
            // every proper submask
            loop {
                sub = sub.wrapping_sub(1) & mask;
                if sub == mask {
                    break true;
                }
                if orders[sub as usize] <= orders[mask as usize] {
                    break false;
                }
                if sub == 0 {
                    break true;
                }
            }
        };
        let mut h = 0;
        let mut b = 0;
        for mask in 0..1u32 << n {
            if mask == 0 || !independent(mask) {
                continue;
            }
            let size = mask.count_ones() as usize;
            h = h.max(size);
            let is_base = orders[mask as usize] == 1;
            let minimal = (0..n).filter(|&p| mask >> p & 1 == 1).all(|p| orders[(mask & !(1 << p)) as usize] > 1);
            if is_base && minimal {
                b = b.max(size);
            }
        }
        fn longest(orders: &[usize], n: usize, mask: u32) -> usize {
            if orders[mask as usize] == 1 {
                return 0;
            }
            (0..n)
                .filter(|&p| orders[(mask | 1 << p) as usize] < orders[mask as usize])
                .map(|p| 1 + longest(orders, n, mask | 1 << p))
                .max()
                .unwrap_or(0)
        }
        (b, h, longest(&orders, n, 0))
    }

    fn natural(g: GroupHandle) -> ActionInstance {
        ActionInstance::natural(&g).unwrap()
    }

    #[test]
    fn spec_examples() {
        let s4 = base_invariants(&natural(symmetric(4).unwrap()), StabilizerRoute::Auto).unwrap();
        assert_eq!((s4.b, s4.h, s4.i, s4.rc_upper), (3, 3, 3, 4));
        let c5 = base_invariants(&natural(cyclic(5).unwrap()), StabilizerRoute::Auto).unwrap();
        assert_eq!((c5.b, c5.i), (1, 1));
        let d8 = base_invariants(&natural(dihedral(4).unwrap()), StabilizerRoute::Auto).unwrap();
        assert_eq!((d8.h, d8.i, d8.rc_upper), (2, 2, 3));
        let c6 = base_invariants(&natural(cyclic(6).unwrap()), StabilizerRoute::Auto).unwrap();
        assert_eq!((c6.h, c6.rc_upper), (1, 2));
        let a5 = base_invariants(&natural(alternating(5).unwrap()), StabilizerRoute::Auto).unwrap();
        assert_eq!(a5.b, 3);
    }

    #[test]
    fn symmetric_natural_actions() {
        for n in 3..=5 {
            let r = base_invariants(&natural(symmetric(n).unwrap()), StabilizerRoute::Auto).unwrap();
            assert_eq!((r.b, r.h, r.i), (n - 1, n - 1, n - 1));
        }
    }

    fn small_actions() -> Vec<ActionInstance> {
        let mut out: Vec<ActionInstance> = [
            symmetric(4),
            alternating(4),
            alternating(5),
            dihedral(4),
            dihedral(5),
            quaternion(),
            metacyclic(7, 3, 2),
            cyclic(6),
            elementary_abelian(2, 3),
        ]
        .into_iter()
        .map(|g| natural(g.unwrap()))
        .filter(|a| a.degree() <= 10)
        .collect();
        for g in [symmetric(4).unwrap(), alternating(5).unwrap()] {
            let lat = SubgroupLattice::new(&g).unwrap();
            for i in lat.maximal_subgroups() {
                let act = coset_action(&g, &g.subgroup(lat.get(i)).unwrap()).unwrap();
                if act.is_faithful() && act.degree() <= 10 {
                    out.push(act);
                }
            }
        }
        // intransitive
        out.push(natural(
            GroupHandle::close(&[
                Permutation::parse_cycles(5, "(1 2)").unwrap(),
                Permutation::parse_cycles(5, "(3 4 5)").unwrap(),
            ])
            .unwrap(),
        ));
        out
    }

    #[test]
    fn search_matches_definitions() {
        for action in small_actions() {
            let (b, h, i) = brute_force(&action);
            for route in [StabilizerRoute::Elements, StabilizerRoute::Chain] {
                let r = base_invariants(&action, route).unwrap();
                assert_eq!((r.b, r.h, r.i), (b, h, i), "{action:?} {route:?}");
            }
        }
    }

    #[test]
    fn chain_of_inequalities() {
        for action in small_actions() {
            let r = base_invariants(&action, StabilizerRoute::Auto).unwrap();
            assert!(r.b <= r.h && r.h <= r.i);
            assert!(r.i <= length(action.group()).unwrap().length);
        }
    }

    #[test]
    fn not_faithful_is_rejected() {
        let s4 = symmetric(4).unwrap();
        let act = coset_action(&s4, &alternating(4).unwrap()).unwrap();
        assert!(matches!(base_invariants(&act, StabilizerRoute::Auto), Err(Error::Precondition(_))));
    }

    #[test]
    fn cyclic_quotient_examples() {
        let s4 = natural(symmetric(4).unwrap());
        let r = check_cyclic_quotient(&s4, &alternating(4).unwrap()).unwrap();
        assert_eq!(r.index, 2);
        assert!(r.checks.iter().all(|c| c.passed), "{:?}", r.checks);

        let c6 = cyclic(6).unwrap();
        let c3 = GroupHandle::close(&[c6.generators()[0].pow(2)]).unwrap();
        let r = check_cyclic_quotient(&natural(c6), &c3).unwrap();
        assert_eq!((r.h_group, r.h_normal, r.omega_index), (1, 1, 1));
        assert!(r.checks.iter().all(|c| c.passed));

        let d8 = dihedral(4).unwrap();
        let c4 = GroupHandle::close(&[d8.generators()[0].clone()]).unwrap();
        assert_eq!(c4.order().unwrap(), 4);
        let r = check_cyclic_quotient(&natural(d8), &c4).unwrap();
        assert_eq!(r.h_group, 2);
        assert!(r.checks.iter().all(|c| c.passed));

        let s4 = symmetric(4).unwrap();
        let v4 = GroupHandle::close(&[
            Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap(),
            Permutation::parse_cycles(4, "(1 3)(2 4)").unwrap(),
        ])
        .unwrap();
        // S4/V4 is S3, not cyclic
        assert!(check_cyclic_quotient(&natural(s4), &v4).is_err());
    }

    #[test]
    fn height_bound_requires_primitive() {
        let d8 = natural(dihedral(4).unwrap());
        let r = base_invariants(&d8, StabilizerRoute::Auto).unwrap();
        assert!(check_height_bound(&d8, &r, 1, 1).is_err());
        let s5 = natural(symmetric(5).unwrap());
        let r = base_invariants(&s5, StabilizerRoute::Auto).unwrap();
        let checks = check_height_bound(&s5, &r, 1, 1).unwrap();
        assert!(checks.iter().all(|c| c.passed));
        assert_eq!(checks[0].rhs, "177");
    }
}
