use super::chain::StabilizerChain;
use super::table::{CayleyTable, ElemSet, Subgroup};
use crate::arith::Permutation;
use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

/// Resource limits shared by every computation on a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose elements are enumerated.
    pub closure: usize,
    /// Largest permutation degree.
    pub degree: usize,
    /// Largest group whose subgroup lattice is enumerated.
    pub lattice: usize,
    /// Node budget for searches on groups larger than `exhaustive`.
    pub node_budget: u64,
    /// Groups up to this order are searched without a node budget.
    pub exhaustive: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            closure: 1_000_000,
            degree: 10_000,
            lattice: 2000,
            node_budget: 100_000_000,
            exhaustive: 1000,
        }
    }
}

/// All elements of a closed group, numbered in breadth-first order from the
/// identity with generators taken in input order.
pub struct ElementStore {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    parent: Vec<(u32, u32)>,
}

impl ElementStore {
    fn close(degree: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut parent = vec![(0u32, 0u32)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, g) in gens.iter().enumerate() {
                let y = elements[i].then(g);
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(Error::cap("closure order", cap as u128 + 1, cap as u128));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    parent.push((i as u32, k as u32));
                    elements.push(y);
                }
            }
        }
        Ok(Self {
            elements,
            index,
            parent,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn get(&self, id: u32) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }

    /// For each non-identity element, the element it was reached from and the
    /// generator used; elements are stored in breadth-first order.
    pub(crate) fn parents(&self) -> &[(u32, u32)] {
        &self.parent
    }
}

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    caps: Caps,
    elements: OnceLock<Arc<ElementStore>>,
    chain: OnceLock<Arc<StabilizerChain>>,
    table: OnceLock<Arc<CayleyTable>>,
}

/// A finitely generated permutation group with lazily cached element set,
/// multiplication table, and stabilizer chain. Cheap to clone.
#[derive(Clone)]
pub struct GroupHandle {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHandle")
            .field("degree", &self.inner.degree)
            .field("gens", &self.inner.gens)
            .finish()
    }
}

impl GroupHandle {
    /// Lazy handle: nothing is computed until asked for.
    pub fn new(degree: usize, gens: Vec<Permutation>, caps: Caps) -> Result<Self> {
        if degree > caps.degree {
            return Err(Error::cap("degree", degree as u128, caps.degree as u128));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "mixed degrees: generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        Ok(Self {
            inner: Arc::new(Inner {
                degree,
                gens,
                caps,
                elements: OnceLock::new(),
                chain: OnceLock::new(),
                table: OnceLock::new(),
            }),
        })
    }

    /// Closes the generators under multiplication, caching every element.
    pub fn close(gens: &[Permutation]) -> Result<Self> {
        Self::close_with(gens, Caps::default())
    }

    pub fn close_with(gens: &[Permutation], caps: Caps) -> Result<Self> {
        let degree = gens
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::invalid("close needs at least one generator (use the identity for the trivial group)"))?;
        let handle = Self::new(degree, gens.to_vec(), caps)?;
        handle.elements()?;
        Ok(handle)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, vec![Permutation::identity(degree)], Caps::default()).expect("identity has the right degree")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.gens
    }

    pub fn caps(&self) -> Caps {
        self.inner.caps
    }

    /// A handle on the same generators with different caps; fails when the
    /// degree exceeds the new degree cap.
    pub fn with_caps(&self, caps: Caps) -> Result<Self> {
        Self::new(self.degree(), self.generators().to_vec(), caps)
    }

    pub fn elements(&self) -> Result<&Arc<ElementStore>> {
        if let Some(e) = self.inner.elements.get() {
            return Ok(e);
        }
        let store = ElementStore::close(self.inner.degree, &self.inner.gens, self.inner.caps.closure)?;
        Ok(self.inner.elements.get_or_init(|| Arc::new(store)))
    }

    pub fn has_elements(&self) -> bool {
        self.inner.elements.get().is_some()
    }

    pub fn chain(&self) -> Result<&Arc<StabilizerChain>> {
        if let Some(c) = self.inner.chain.get() {
            return Ok(c);
        }
        let chain = StabilizerChain::new(self.inner.degree, &self.inner.gens, self.inner.caps.degree)?;
        Ok(self.inner.chain.get_or_init(|| Arc::new(chain)))
    }

    /// Multiplication table; requires `order <= caps.lattice`.
    pub fn table(&self) -> Result<&Arc<CayleyTable>> {
        if let Some(t) = self.inner.table.get() {
            return Ok(t);
        }
        let store = self.elements()?;
        if store.len() > self.inner.caps.lattice {
            return Err(Error::cap("table order", store.len() as u128, self.inner.caps.lattice as u128));
        }
        let gen_ids: Vec<u32> = self
            .inner
            .gens
            .iter()
            .map(|g| store.index_of(g).unwrap())
            .collect();
        let table = CayleyTable::from_store(store, &self.inner.gens, &gen_ids);
        Ok(self.inner.table.get_or_init(|| Arc::new(table)))
    }

    /// Order from the element set when cached, else from the stabilizer chain.
    pub fn order(&self) -> Result<u128> {
        match self.inner.elements.get() {
            Some(e) => Ok(e.len() as u128),
            None => self.chain()?.order(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree() {
            return Ok(false);
        }
        match self.inner.elements.get() {
            Some(e) => Ok(e.index_of(g).is_some()),
            None => Ok(self.chain()?.contains(g)),
        }
    }

    pub fn is_subgroup_of(&self, other: &GroupHandle) -> Result<bool> {
        for g in self.generators() {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every generator fixes every point.
    pub fn is_trivial(&self) -> bool {
        self.generators().iter().all(Permutation::is_identity)
    }

    /// Handle for the subgroup with the given element IDs of this group's table.
    pub fn subgroup(&self, sub: &Subgroup) -> Result<GroupHandle> {
        let store = self.elements()?;
        let gens: Vec<Permutation> = if sub.gens.is_empty() {
            vec![Permutation::identity(self.degree())]
        } else {
            sub.gens.iter().map(|&g| store.get(g).clone()).collect()
        };
        Self::close_with(&gens, self.caps())
    }

    /// Element IDs (in this group's numbering) of a subgroup given by handle.
    pub fn ids_of(&self, sub: &GroupHandle) -> Result<Subgroup> {
        let store = self.elements()?;
        let table = self.table()?;
        let mut ids = Vec::new();
        for g in sub.generators() {
            ids.push(
                store
                    .index_of(g)
                    .ok_or_else(|| Error::pre(format!("{g} is not an element of the group")))?,
            );
        }
        Ok(table.generate(&ids))
    }

    /// Pointwise stabilizer of `points`, computed by a base change on the
    /// stabilizer chain.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<GroupHandle> {
        let chain = StabilizerChain::with_base_prefix(self.degree(), self.generators(), points, self.caps().degree)?;
        let mut uniq = points.to_vec();
        uniq.sort_unstable();
        uniq.dedup();
        let gens = chain.level_generators(uniq.len());
        let gens = if gens.is_empty() {
            vec![Permutation::identity(self.degree())]
        } else {
            gens.to_vec()
        };
        let handle = Self::new(self.degree(), gens, self.caps())?;
        let sub_chain = StabilizerChain::new(self.degree(), handle.generators(), self.caps().degree)?;
        let _ = handle.inner.chain.set(Arc::new(sub_chain));
        Ok(handle)
    }

    /// Set of element IDs fixing `point`.
    pub fn point_stabilizer_ids(&self, point: usize) -> Result<ElemSet> {
        let store = self.elements()?;
        Ok(ElemSet::from_ids(
            store.len(),
            store
                .elements()
                .iter()
                .enumerate()
                .filter(|(_, g)| g.apply(point) == point)
                .map(|(i, _)| i as u32),
        ))
    }

    /// Orbits of the natural action, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for g in self.generators() {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() <= 1 || self.orbits().len() == 1
    }
}
