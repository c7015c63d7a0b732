//! Subgroup lattice by cyclic extension, and subgroup-chain length.

use super::table::{CayleyTable, ElemSet, Subgroup};
use super::GroupHandle;
use crate::arith::big_omega;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// Every subgroup of a tabled group, sorted by order and then by element set.
pub struct SubgroupLattice {
    table: Arc<CayleyTable>,
    subgroups: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    /// `below[i]`: indices of the proper subgroups of subgroup `i`.
    below: Vec<Vec<usize>>,
    below_bits: Vec<ElemSet>,
    maximal: Vec<bool>,
    length: Vec<usize>,
}

impl SubgroupLattice {
    /// Seeds with every cyclic subgroup, then joins each subgroup found with
    /// each cyclic subgroup until no new subgroup appears. Every subgroup is
    /// a join of cyclic subgroups, so the fixpoint is the whole lattice.
    pub fn new(group: &GroupHandle) -> Result<Self> {
        let order = group.order()?;
        let cap = group.caps().lattice as u128;
        if order > cap {
            return Err(Error::cap("lattice group order", order, cap));
        }
        let table = Arc::clone(group.table()?);
        Ok(Self::from_table(table))
    }

    pub(crate) fn from_table(table: Arc<CayleyTable>) -> Self {
        let n = table.order();
        let mut found: Vec<Subgroup> = Vec::new();
        let mut seen: HashMap<ElemSet, usize> = HashMap::new();
        let mut cyclic_gens: Vec<u32> = Vec::new();
        for g in 0..n as u32 {
            let c = table.generate(&[g]);
            if !seen.contains_key(&c.set) {
                seen.insert(c.set.clone(), found.len());
                found.push(c);
                if g != 0 {
                    cyclic_gens.push(g);
                }
            }
        }
        let mut i = 0;
        while i < found.len() {
            if found[i].order() < n {
                for &g in &cyclic_gens {
                    if found[i].set.contains(g) {
                        continue;
                    }
                    let joined = table.extend(&found[i], g);
                    if !seen.contains_key(&joined.set) {
                        seen.insert(joined.set.clone(), found.len());
                        found.push(joined);
                    }
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.set.cmp(&b.set)));
        let index: HashMap<ElemSet, usize> = found
            .iter()
            .enumerate()
            .map(|(i, s)| (s.set.clone(), i))
            .collect();

        let count = found.len();
        let mut below = vec![Vec::new(); count];
        let mut below_bits = vec![ElemSet::empty(count); count];
        for (i, big) in found.iter().enumerate() {
            for (j, small) in found[..i].iter().enumerate() {
                if small.order() < big.order()
                    && big.order() % small.order() == 0
                    && small.set.is_subset(&big.set)
                {
                    below[i].push(j);
                    below_bits[i].insert(j as u32);
                }
            }
        }
        let top = count - 1;
        let mut maximal = vec![false; count];
        if top > 0 {
            let proper_of_top = &below[top];
            for &k in proper_of_top {
                maximal[k] = !proper_of_top.iter().any(|&l| below_bits[l].contains(k as u32));
            }
        }
        let mut length = vec![0usize; count];
        for i in 0..count {
            length[i] = below[i].iter().map(|&j| length[j] + 1).max().unwrap_or(0);
        }
        Self {
            table,
            subgroups: found,
            index,
            below,
            below_bits,
            maximal,
            length,
        }
    }

    pub fn table(&self) -> &Arc<CayleyTable> {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Indices of the proper subgroups of subgroup `i`.
    pub fn proper_subgroups(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    pub fn contains(&self, big: usize, small: usize) -> bool {
        big == small || self.below_bits[big].contains(small as u32)
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.maximal[i]
    }

    /// Indices of the maximal subgroups of the whole group.
    pub fn maximal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.maximal[i]).collect()
    }

    /// Maximal subgroups of subgroup `i`.
    pub fn maximal_subgroups_of(&self, i: usize) -> Vec<usize> {
        let proper = &self.below[i];
        proper
            .iter()
            .copied()
            .filter(|&k| !proper.iter().any(|&l| self.below_bits[l].contains(k as u32)))
            .collect()
    }

    /// `ℓ` of subgroup `i`.
    pub fn length_of(&self, i: usize) -> usize {
        self.length[i]
    }

    /// A longest chain from subgroup `i` down to the trivial group, choosing
    /// the least-index subgroup at each step.
    pub fn longest_chain_from(&self, i: usize) -> Vec<usize> {
        let mut chain = vec![i];
        let mut cur = i;
        while self.length[cur] > 0 {
            cur = *self.below[cur]
                .iter()
                .find(|&&j| self.length[j] + 1 == self.length[cur])
                .expect("length is realized by some proper subgroup");
            chain.push(cur);
        }
        chain
    }

    /// Conjugacy class id for each subgroup; classes numbered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.len()];
        let mut classes = Vec::new();
        for i in 0..self.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[i] = id;
            let mut members = vec![i];
            let mut stack = vec![i];
            while let Some(j) = stack.pop() {
                for &g in self.table.generators() {
                    let conj = self.table.conjugate_set(&self.subgroups[j].set, g);
                    let k = self.index[&conj];
                    if class_of[k] == usize::MAX {
                        class_of[k] = id;
                        members.push(k);
                        stack.push(k);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

/// `ℓ(G)` with a witness chain of subgroup orders from `G` down to `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthResult {
    pub length: usize,
    /// Orders along one longest chain; `None` for the p-group shortcut.
    pub chain_orders: Option<Vec<usize>>,
}

/// Length of the longest subgroup chain. Uses the lattice when the group is
/// within the lattice cap; a p-group beyond it gets `Ω(|G|)` directly.
pub fn length(group: &GroupHandle) -> Result<LengthResult> {
    let order = group.order()?;
    if order <= group.caps().lattice as u128 {
        let lattice = SubgroupLattice::new(group)?;
        let top = lattice.whole_index();
        let chain = lattice.longest_chain_from(top);
        return Ok(LengthResult {
            length: lattice.length_of(top),
            chain_orders: Some(chain.iter().map(|&i| lattice.get(i).order()).collect()),
        });
    }
    let order64 = u64::try_from(order).map_err(|_| Error::Overflow("group order".into()))?;
    let f = crate::arith::factorize(order64);
    if f.omega() == 1 {
        return Ok(LengthResult {
            length: big_omega(order64) as usize,
            chain_orders: None,
        });
    }
    Err(Error::cap("lattice group order", order, group.caps().lattice as u128))
}
