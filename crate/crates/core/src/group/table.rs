//! Element-ID level algorithms over a full multiplication table.

use super::ElementStore;
use crate::arith::Permutation;
use std::collections::VecDeque;

/// Bitset over element IDs `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i as u32);
        }
        s
    }

    pub fn from_ids(n: usize, ids: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(n);
        for i in ids {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &ElemSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + b)
            })
        })
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup of a tabled group: its elements in closure order, as a set, and
/// a (not necessarily minimal) generating list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: Vec<u32>,
    pub set: ElemSet,
    pub gens: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Multiplication table of a finite group whose elements are numbered
/// `0..n` with `0` the identity.
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<u32>,
}

impl CayleyTable {
    pub(crate) fn from_store(store: &ElementStore, gen_perms: &[Permutation], gens: &[u32]) -> Self {
        let n = store.len();
        let k = gen_perms.len();
        let mut right = Vec::with_capacity(n * k);
        for a in store.elements() {
            for g in gen_perms {
                right.push(store.index_of(&a.then(g)).expect("closed under multiplication"));
            }
        }
        let parents = store.parents();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut mul[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (p, g) = parents[b];
                row[b] = right[row[p as usize] as usize * k + g as usize];
            }
        }
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n as u32).find(|&b| mul[a * n + b as usize] == 0).unwrap();
        }
        Self {
            n,
            mul,
            inv,
            gens: gens.to_vec(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.n as u32).collect(),
            set: ElemSet::full(self.n),
            gens: self.gens.clone(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            elements: vec![0],
            set: ElemSet::from_ids(self.n, [0]),
            gens: Vec::new(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        gens.iter()
            .fold(self.trivial(), |acc, &g| self.extend(&acc, g))
    }

    /// `⟨base, g⟩` by Dimino's coset enumeration.
    pub fn extend(&self, base: &Subgroup, g: u32) -> Subgroup {
        if base.set.contains(g) {
            return base.clone();
        }
        let mut gens = base.gens.clone();
        gens.push(g);
        let mut set = base.set.clone();
        let mut elements = base.elements.clone();
        let mut reps = vec![0u32];
        let add_coset = |t: u32, set: &mut ElemSet, elements: &mut Vec<u32>, reps: &mut Vec<u32>| {
            for &k in &base.elements {
                let x = self.mul(k, t);
                set.insert(x);
                elements.push(x);
            }
            reps.push(t);
        };
        add_coset(g, &mut set, &mut elements, &mut reps);
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let t = self.mul(r, s);
                if !set.contains(t) {
                    add_coset(t, &mut set, &mut elements, &mut reps);
                }
            }
            i += 1;
        }
        Subgroup { elements, set, gens }
    }

    /// Subgroup with a known element set; generators are recovered greedily.
    pub fn subgroup_from_set(&self, set: &ElemSet) -> Subgroup {
        let mut sub = self.trivial();
        for x in set.iter() {
            if !sub.set.contains(x) {
                sub = self.extend(&sub, x);
            }
        }
        debug_assert_eq!(&sub.set, set);
        sub
    }

    pub fn conjugate_set(&self, set: &ElemSet, g: u32) -> ElemSet {
        ElemSet::from_ids(self.n, set.iter().map(|x| self.conj(x, g)))
    }

    pub fn normalizer(&self, sub: &Subgroup) -> ElemSet {
        ElemSet::from_ids(
            self.n,
            (0..self.n as u32).filter(|&g| sub.gens.iter().all(|&h| sub.set.contains(self.conj(h, g)))),
        )
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        sub.gens
            .iter()
            .all(|&h| self.gens.iter().all(|&g| sub.set.contains(self.conj(h, g))))
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut class_of = vec![u32::MAX; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![x];
            class_of[x as usize] = id;
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in &self.gens {
                    let z = self.conj(y, g);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = id;
                        members.push(z);
                        queue.push_back(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Orbit representatives (least element) of a subgroup acting on
    /// elements by conjugation.
    pub fn conjugation_orbit_reps(&self, acting: &Subgroup, among: impl Iterator<Item = u32>) -> Vec<u32> {
        let mut seen = ElemSet::empty(self.n);
        let mut reps = Vec::new();
        for x in among {
            if seen.contains(x) {
                continue;
            }
            reps.push(x);
            seen.insert(x);
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in &acting.gens {
                    let z = self.conj(y, g);
                    if seen.insert(z) {
                        queue.push_back(z);
                    }
                }
            }
        }
        reps
    }

    pub fn centralizer(&self, x: u32) -> Subgroup {
        let set = ElemSet::from_ids(
            self.n,
            (0..self.n as u32).filter(|&g| self.mul(x, g) == self.mul(g, x)),
        );
        self.subgroup_from_set(&set)
    }
}
