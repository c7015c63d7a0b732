//! Generation invariants: `d(G)`, `m(G)`, `δ(G)`, nilpotency, and the
//! inequalities tying them to `ℓ(G)`.
//!
//! Independence and generation of a set `X` depend only on the cyclic
//! subgroups `⟨x⟩`, so both searches run over cyclic subgroups of the
//! lattice rather than over elements, and witnesses use the least generator
//! of each cyclic subgroup.

use crate::arith::{factorize, Permutation};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::group::{p_group_rank, sylow_in_table, GroupHandle, SubgroupLattice};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, AtomicUsize, Ordering};

/// A subset of a group together with whether it generates and whether it is
/// a minimal generating set.
#[derive(Debug, Clone, Serialize)]
pub struct GenSet {
    #[serde(skip)]
    group: GroupHandle,
    elements: Vec<Permutation>,
    generates: bool,
    minimal: bool,
}

impl GenSet {
    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generates(&self) -> bool {
        self.generates
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }
}

fn subgroup_order(group: &GroupHandle, gens: &[Permutation]) -> Result<u128> {
    GroupHandle::new(group.degree(), gens.to_vec(), group.caps())?.order()
}

/// Tests whether `xs` generates `group`, and whether every leave-one-out
/// subset generates a proper subgroup. Duplicates are collapsed first.
pub fn is_minimal_genset(group: &GroupHandle, xs: &[Permutation]) -> Result<GenSet> {
    let mut elements: Vec<Permutation> = Vec::with_capacity(xs.len());
    for x in xs {
        if !group.contains(x)? {
            return Err(Error::pre(format!("{x} is not an element of the group")));
        }
        if !elements.contains(x) {
            elements.push(x.clone());
        }
    }
    let order = group.order()?;
    let generates = subgroup_order(group, &elements)? == order;
    let mut minimal = generates;
    for i in 0..elements.len() {
        if !minimal {
            break;
        }
        let rest: Vec<Permutation> = elements
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.clone())
            .collect();
        minimal = subgroup_order(group, &rest)? < order;
    }
    Ok(GenSet {
        group: group.clone(),
        elements,
        generates,
        minimal,
    })
}

/// Cyclic subgroups of a lattice, with a lazily filled join table
/// `(subgroup, cyclic subgroup) -> subgroup`.
struct CyclicSpace<'a> {
    lattice: &'a SubgroupLattice,
    /// Lattice index of each non-trivial cyclic subgroup, ascending.
    cyclic: Vec<usize>,
    /// Least element generating each cyclic subgroup.
    generator: Vec<u32>,
    /// Cyclic position of `⟨e⟩` for each element `e` (unused for identity).
    position_of: Vec<u32>,
    /// Longest chain from each subgroup up to the whole group.
    up: Vec<usize>,
    joins: Vec<AtomicU32>,
}

const UNSET: u32 = u32::MAX;

impl<'a> CyclicSpace<'a> {
    fn new(lattice: &'a SubgroupLattice) -> Self {
        let table = lattice.table();
        let n = table.order();
        let mut position_of_lattice = vec![UNSET; lattice.len()];
        let mut cyclic = Vec::new();
        let mut generator = Vec::new();
        let mut element_lattice = vec![0usize; n];
        for e in 1..n as u32 {
            let idx = lattice
                .index_of(&table.generate(&[e]).set)
                .expect("cyclic subgroups are in the lattice");
            element_lattice[e as usize] = idx;
            if position_of_lattice[idx] == UNSET {
                position_of_lattice[idx] = 0;
                cyclic.push(idx);
            }
        }
        cyclic.sort_unstable();
        for (pos, &idx) in cyclic.iter().enumerate() {
            position_of_lattice[idx] = pos as u32;
            generator.push(UNSET);
        }
        let mut position_of = vec![UNSET; n];
        for e in 1..n as u32 {
            let pos = position_of_lattice[element_lattice[e as usize]];
            position_of[e as usize] = pos;
            if generator[pos as usize] == UNSET {
                generator[pos as usize] = e;
            }
        }
        let mut up = vec![0usize; lattice.len()];
        for j in (0..lattice.len()).rev() {
            for &i in lattice.proper_subgroups(j) {
                up[i] = up[i].max(up[j] + 1);
            }
        }
        let joins = (0..lattice.len() * cyclic.len()).map(|_| AtomicU32::new(UNSET)).collect();
        Self {
            lattice,
            cyclic,
            generator,
            position_of,
            up,
            joins,
        }
    }

    fn count(&self) -> usize {
        self.cyclic.len()
    }

    fn top(&self) -> usize {
        self.lattice.whole_index()
    }

    fn contains(&self, sub: usize, c: usize) -> bool {
        self.lattice.contains(sub, self.cyclic[c])
    }

    fn join(&self, sub: usize, c: usize) -> usize {
        let slot = &self.joins[sub * self.cyclic.len() + c];
        let cached = slot.load(Ordering::Relaxed);
        if cached != UNSET {
            return cached as usize;
        }
        let joined = if self.contains(sub, c) {
            sub
        } else {
            let ext = self.lattice.table().extend(self.lattice.get(sub), self.generator[c]);
            self.lattice.index_of(&ext.set).expect("joins are in the lattice")
        };
        slot.store(joined as u32, Ordering::Relaxed);
        joined
    }

    /// Orbit representatives among `candidates` under conjugation by the
    /// group generated by `acting`.
    fn orbit_reps(&self, acting: &[u32], candidates: impl Iterator<Item = usize>) -> Vec<usize> {
        let table = self.lattice.table();
        let mut seen = vec![false; self.count()];
        let mut reps = Vec::new();
        for c in candidates {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            reps.push(c);
            let mut queue = VecDeque::from([c]);
            while let Some(d) = queue.pop_front() {
                for &g in acting {
                    let e = self.position_of[table.conj(self.generator[d], g) as usize] as usize;
                    if !seen[e] {
                        seen[e] = true;
                        queue.push_back(e);
                    }
                }
            }
        }
        reps
    }

    fn normalizer_gens(&self, c: usize) -> Vec<u32> {
        let table = self.lattice.table();
        let set = table.normalizer(self.lattice.get(self.cyclic[c]));
        table.subgroup_from_set(&set).gens
    }

    fn witness(&self, group: &GroupHandle, chosen: &[usize]) -> Result<Vec<Permutation>> {
        let store = group.elements()?;
        Ok(chosen.iter().map(|&c| store.get(self.generator[c]).clone()).collect())
    }
}

/// Partial independent set: chosen cyclic positions, the subgroups generated
/// by each leave-one-out subset, and the subgroup generated by all.
#[derive(Clone)]
struct Node {
    chosen: Vec<usize>,
    without: Vec<usize>,
    current: usize,
}

impl Node {
    fn root() -> Self {
        Self {
            chosen: Vec::new(),
            without: Vec::new(),
            current: 0,
        }
    }

    /// `self ∪ {c}` if it is still independent.
    fn extend(&self, space: &CyclicSpace, c: usize) -> Option<Node> {
        if space.contains(self.current, c) {
            return None;
        }
        let mut without = Vec::with_capacity(self.without.len() + 1);
        for (&x, &w) in self.chosen.iter().zip(&self.without) {
            let joined = space.join(w, c);
            if space.contains(joined, x) {
                return None;
            }
            without.push(joined);
        }
        without.push(self.current);
        let mut chosen = self.chosen.clone();
        chosen.push(c);
        Some(Node {
            chosen,
            without,
            current: space.join(self.current, c),
        })
    }
}

/// Result of the `m(G)` search.
#[derive(Debug, Clone, Serialize)]
pub struct MaxMinimalResult {
    pub value: usize,
    /// `false` when the node budget ran out; `value` is then a lower bound.
    pub exact: bool,
    #[serde(skip_serializing)]
    pub nodes: u64,
    pub witness: Vec<Permutation>,
}

struct Search<'a> {
    space: &'a CyclicSpace<'a>,
    best: AtomicUsize,
    nodes: AtomicU64,
    budget: Option<u64>,
    exhausted: AtomicBool,
}

struct Branch {
    best: usize,
    witness: Vec<usize>,
}

impl Search<'_> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| n > b) {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    /// Depth-first over the remaining positions in increasing order. The
    /// bound admits ties with the global best so that a branch attaining the
    /// maximum always reports the first such set in its own order.
    fn dfs(&self, node: &Node, start: usize, skip: &[usize], branch: &mut Branch) {
        if !self.tick() {
            return;
        }
        let space = self.space;
        if node.current == space.top() {
            if node.chosen.len() > branch.best {
                branch.best = node.chosen.len();
                branch.witness = node.chosen.clone();
                self.best.fetch_max(branch.best, Ordering::Relaxed);
            }
            return;
        }
        let bound = node.chosen.len() + space.up[node.current];
        if bound < (branch.best + 1).max(self.best.load(Ordering::Relaxed)) {
            return;
        }
        for c in start..space.count() {
            if skip.contains(&c) {
                continue;
            }
            if let Some(child) = node.extend(space, c) {
                self.dfs(&child, c + 1, skip, branch);
            }
        }
    }
}

fn table_lattice(group: &GroupHandle) -> Result<SubgroupLattice> {
    SubgroupLattice::new(group)
}

/// `m(G)` with a witness. The first element ranges over conjugacy classes of
/// cyclic subgroups, the second over orbits of the first one's normalizer;
/// the rest are taken in increasing order. Exhaustive up to the exhaustive
/// cap; beyond it the node budget applies.
pub fn max_minimal_genset_size(group: &GroupHandle) -> Result<MaxMinimalResult> {
    let lattice = table_lattice(group)?;
    max_minimal_with_lattice(group, &lattice)
}

fn max_minimal_with_lattice(group: &GroupHandle, lattice: &SubgroupLattice) -> Result<MaxMinimalResult> {
    let order = group.order()?;
    if order == 1 {
        return Ok(MaxMinimalResult {
            value: 0,
            exact: true,
            nodes: 0,
            witness: Vec::new(),
        });
    }
    let space = CyclicSpace::new(lattice);
    let caps = group.caps();
    let search = Search {
        space: &space,
        best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        budget: (order > caps.exhaustive as u128).then_some(caps.node_budget),
        exhausted: AtomicBool::new(false),
    };
    let table = lattice.table();
    let root = Node::root();
    let mut branches: Vec<(Vec<usize>, Node)> = Vec::new();
    for x1 in space.orbit_reps(table.generators(), 0..space.count()) {
        let first = root.extend(&space, x1).expect("a non-trivial cyclic subgroup is independent");
        let acting = space.normalizer_gens(x1);
        let seconds = space.orbit_reps(&acting, (0..space.count()).filter(|&c| c != x1));
        branches.push((vec![x1], first.clone()));
        for x2 in seconds {
            if let Some(second) = first.extend(&space, x2) {
                branches.push((vec![x1, x2], second));
            }
        }
    }
    let results: Vec<Branch> = branches
        .par_iter()
        .map(|(skip, node)| {
            let mut branch = Branch {
                best: 0,
                witness: Vec::new(),
            };
            if skip.len() == 1 {
                // Only the one-element set itself; larger sets go through
                // the two-element branches.
                if node.current == space.top() {
                    branch.best = 1;
                    branch.witness = node.chosen.clone();
                    search.best.fetch_max(1, Ordering::Relaxed);
                }
            } else {
                search.dfs(node, 0, skip, &mut branch);
            }
            branch
        })
        .collect();
    let value = results.iter().map(|b| b.best).max().unwrap_or(0);
    let chosen = results
        .iter()
        .find(|b| b.best == value)
        .map(|b| b.witness.clone())
        .unwrap_or_default();
    Ok(MaxMinimalResult {
        value,
        exact: !search.exhausted.load(Ordering::Relaxed),
        nodes: search.nodes.load(Ordering::Relaxed),
        witness: space.witness(group, &chosen)?,
    })
}

/// `d(G)` with a witness, by iterative deepening over the same space.
pub fn min_genset_size(group: &GroupHandle) -> Result<(usize, Vec<Permutation>)> {
    let lattice = table_lattice(group)?;
    min_genset_with_lattice(group, &lattice)
}

fn min_genset_with_lattice(group: &GroupHandle, lattice: &SubgroupLattice) -> Result<(usize, Vec<Permutation>)> {
    if group.order()? == 1 {
        return Ok((0, Vec::new()));
    }
    let space = CyclicSpace::new(lattice);
    let reps = space.orbit_reps(lattice.table().generators(), 0..space.count());

    fn reach(space: &CyclicSpace, chosen: &mut Vec<usize>, current: usize, start: usize, depth: usize) -> bool {
        if current == space.top() {
            return true;
        }
        if depth == 0 {
            return false;
        }
        for c in start..space.count() {
            if chosen.contains(&c) || space.contains(current, c) {
                continue;
            }
            chosen.push(c);
            if reach(space, chosen, space.join(current, c), c + 1, depth - 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    for k in 1.. {
        for &x1 in &reps {
            let mut chosen = vec![x1];
            if reach(&space, &mut chosen, space.cyclic[x1], 0, k - 1) {
                return Ok((k, space.witness(group, &chosen)?));
            }
        }
    }
    unreachable!("the whole group generates itself")
}

/// `δ(G) = Σ_p d(G_p)` together with the per-prime ranks.
pub fn delta(group: &GroupHandle) -> Result<(u32, Vec<(u64, u32)>)> {
    let order = u64::try_from(group.order()?).map_err(|_| Error::Overflow("group order".into()))?;
    let table = group.table()?;
    let mut ranks = Vec::new();
    for p in factorize(order).primes() {
        let sylow = group.subgroup(&sylow_in_table(table, p))?;
        ranks.push((p, p_group_rank(&sylow, p)?));
    }
    Ok((ranks.iter().map(|&(_, r)| r).sum(), ranks))
}

/// Nilpotent iff every Sylow subgroup is normal.
pub fn is_nilpotent(group: &GroupHandle) -> Result<bool> {
    let order = u64::try_from(group.order()?).map_err(|_| Error::Overflow("group order".into()))?;
    let table = group.table()?;
    Ok(factorize(order)
        .primes()
        .into_iter()
        .all(|p| table.is_normal(&sylow_in_table(table, p))))
}

/// The tuple `(d, m, δ, ℓ)` with witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub order: String,
    pub d: usize,
    pub m: usize,
    pub m_exact: bool,
    /// Search nodes visited; varies with thread scheduling, so it is left
    /// out of serialized reports.
    #[serde(skip_serializing)]
    pub m_nodes: u64,
    pub delta: u32,
    pub length: usize,
    pub nilpotent: bool,
    pub sylow_ranks: Vec<(u64, u32)>,
    pub d_witness: Vec<Permutation>,
    pub m_witness: Vec<Permutation>,
    /// Orders along a longest subgroup chain, from `G` down to `1`.
    pub chain_orders: Vec<usize>,
}

pub fn invariants(group: &GroupHandle) -> Result<InvariantReport> {
    let lattice = table_lattice(group)?;
    let top = lattice.whole_index();
    let (d, d_witness) = min_genset_with_lattice(group, &lattice)?;
    let m = max_minimal_with_lattice(group, &lattice)?;
    let (delta, sylow_ranks) = delta(group)?;
    Ok(InvariantReport {
        order: group.order()?.to_string(),
        d,
        m: m.value,
        m_exact: m.exact,
        m_nodes: m.nodes,
        delta,
        length: lattice.length_of(top),
        nilpotent: is_nilpotent(group)?,
        sylow_ranks,
        d_witness,
        m_witness: m.witness,
        chain_orders: lattice
            .longest_chain_from(top)
            .iter()
            .map(|&i| lattice.get(i).order())
            .collect(),
    })
}

/// Leading constant and exponent of the general bound `m ≤ a·δ^b`.
pub const BOUND_A: u64 = 10_000_000_000;
pub const BOUND_B: u32 = 10;

/// The inequalities relating the invariants, with raw values.
pub fn check_bounds(report: &InvariantReport) -> Vec<Check> {
    let max_sylow_rank = report.sylow_ranks.iter().map(|&(_, r)| r).max().unwrap_or(0);
    let mut checks = vec![
        Check::le("d <= m", report.d as u64, report.m as u64),
        Check::le("m <= length", report.m as u64, report.length as u64),
        Check::le(
            "m <= 10^10 * delta^10",
            report.m as u64,
            BigInt::from(BOUND_A) * BigInt::from(report.delta).pow(BOUND_B),
        ),
        Check::le("d <= max_p d(G_p) + 1", report.d as u64, max_sylow_rank + 1),
    ];
    if report.nilpotent {
        checks.push(Check::eq("nilpotent: m = delta", report.m as u64, report.delta));
        checks.push(Check::eq("nilpotent: d = max_p d(G_p)", report.d as u64, max_sylow_rank));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::group::length;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    /// Exhaustive oracle: every subset of elements, maximal size of a
    /// generating subset none of whose leave-one-out subsets generates.
    fn brute_force_d_m(group: &GroupHandle) -> (usize, usize) {
        let t = group.table().unwrap();
        let n = t.order() as u32;
        let full = n as usize;
        let generated = |xs: &[u32]| t.generate(xs).order();
        let mut d = usize::MAX;
        let mut m = 0;
        let mut stack: Vec<(Vec<u32>, u32)> = vec![(Vec::new(), 1)];
        while let Some((xs, start)) = stack.pop() {
            if !xs.is_empty() && generated(&xs) == full {
                let minimal = (0..xs.len()).all(|i| {
                    let rest: Vec<u32> = xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                    generated(&rest) < full
                });
                if minimal {
                    d = d.min(xs.len());
                    m = m.max(xs.len());
                }
                continue;
            }
            for x in start..n {
                let mut ys = xs.clone();
                ys.push(x);
                stack.push((ys, x + 1));
            }
        }
        (d, m)
    }

    #[test]
    fn minimal_genset_examples() {
        let s4 = symmetric(4).unwrap();
        let g = is_minimal_genset(&s4, &[perm(4, "(1 2)"), perm(4, "(2 3)"), perm(4, "(3 4)")]).unwrap();
        assert!(g.generates() && g.is_minimal());
        let g = is_minimal_genset(&s4, &[perm(4, "(1 2)"), perm(4, "(1 2 3 4)"), perm(4, "(3 4)")]).unwrap();
        assert!(g.generates() && !g.is_minimal());
        let c6 = cyclic(6).unwrap();
        let g = is_minimal_genset(&c6, &[c6.generators()[0].clone()]).unwrap();
        assert!(g.generates() && g.is_minimal());
        let g = is_minimal_genset(&s4, &[perm(4, "(1 2)")]).unwrap();
        assert!(!g.generates() && !g.is_minimal());
        assert!(is_minimal_genset(&alternating(4).unwrap(), &[perm(4, "(1 2)")]).is_err());
    }

    #[test]
    fn searches_match_subset_enumeration() {
        for g in [
            cyclic(6).unwrap(),
            symmetric(3).unwrap(),
            dihedral(4).unwrap(),
            quaternion().unwrap(),
            elementary_abelian(2, 3).unwrap(),
            alternating(4).unwrap(),
            cyclic(12).unwrap(),
            dihedral(6).unwrap(),
        ] {
            let (d, m) = brute_force_d_m(&g);
            assert_eq!(min_genset_size(&g).unwrap().0, d);
            let found = max_minimal_genset_size(&g).unwrap();
            assert!(found.exact);
            assert_eq!(found.value, m);
            let check = is_minimal_genset(&g, &found.witness).unwrap();
            assert!(check.is_minimal() && check.len() == m);
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(min_genset_size(&elementary_abelian(2, 2).unwrap()).unwrap().0, 2);
        assert_eq!(min_genset_size(&alternating(5).unwrap()).unwrap().0, 2);
        let d8 = dihedral(4).unwrap();
        assert_eq!(min_genset_size(&d8).unwrap().0 as u32, p_group_rank(&d8, 2).unwrap());
        assert_eq!(max_minimal_genset_size(&symmetric(4).unwrap()).unwrap().value, 3);
        assert_eq!(max_minimal_genset_size(&alternating(5).unwrap()).unwrap().value, 3);
        assert_eq!(max_minimal_genset_size(&cyclic(6).unwrap()).unwrap().value, 2);
        assert_eq!(max_minimal_genset_size(&GroupHandle::trivial(3)).unwrap().value, 0);
    }

    #[test]
    fn delta_and_nilpotency() {
        assert_eq!(delta(&symmetric(4).unwrap()).unwrap().0, 3);
        assert_eq!(delta(&cyclic(6).unwrap()).unwrap().0, 2);
        // A5: Sylow 2 is a Klein four-group, Sylow 3 and 5 are cyclic.
        assert_eq!(delta(&alternating(5).unwrap()).unwrap().1, vec![(2, 2), (3, 1), (5, 1)]);
        assert!(is_nilpotent(&cyclic(12).unwrap()).unwrap());
        assert!(!is_nilpotent(&symmetric(4).unwrap()).unwrap());
        let d8c9 = direct_product(&dihedral(4).unwrap(), &cyclic(9).unwrap()).unwrap();
        assert!(is_nilpotent(&d8c9).unwrap());
    }

    #[test]
    fn report_and_bounds() {
        let r = invariants(&symmetric(4).unwrap()).unwrap();
        assert_eq!((r.d, r.m, r.delta, r.length), (2, 3, 3, 4));
        assert!(check_bounds(&r).iter().all(|c| c.passed));
        let r = invariants(&cyclic(6).unwrap()).unwrap();
        assert_eq!((r.d, r.m, r.delta, r.length), (1, 2, 2, 2));
        let r = invariants(&elementary_abelian(2, 4).unwrap()).unwrap();
        assert_eq!((r.m, r.delta), (4, 4));
        let r = invariants(&metacyclic(7, 3, 2).unwrap()).unwrap();
        assert!(check_bounds(&r).iter().all(|c| c.passed));
        assert_eq!(r.length, length(&metacyclic(7, 3, 2).unwrap()).unwrap().length);
    }

    #[test]
    fn p_groups_have_d_equal_m_equal_rank() {
        for (g, p) in [
            (dihedral(4).unwrap(), 2),
            (quaternion().unwrap(), 2),
            (cyclic(9).unwrap(), 3),
            (elementary_abelian(3, 2).unwrap(), 3),
            (direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap(), 2),
        ] {
            let r = invariants(&g).unwrap();
            let rank = p_group_rank(&g, p).unwrap() as usize;
            assert_eq!((r.d, r.m), (rank, rank));
        }
    }

    #[test]
    fn search_is_deterministic() {
        let g = symmetric(5).unwrap();
        let a = max_minimal_genset_size(&g).unwrap();
        let b = max_minimal_genset_size(&g).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.value, 4);
    }
}
