use super::table::{CayleyTable, ElemSet, Subgroup};
use super::GroupHandle;
use crate::arith::Permutation;
use crate::error::{Error, Result};
use std::sync::Arc;

/// Bookkeeping for an action on right cosets `Hx`, so elements and subgroups
/// of the source group can be pushed into the action.
#[derive(Clone)]
pub struct CosetData {
    table: Arc<CayleyTable>,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl CosetData {
    /// Permutation induced on cosets by an element ID of the source group.
    pub fn image(&self, g: u32) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|&r| self.coset_of[self.table.mul(r, g) as usize])
            .collect();
        Permutation::from_images(images).expect("right multiplication permutes cosets")
    }
}

/// A group acting on `{0, …, degree-1}` through `group`'s permutations.
#[derive(Clone)]
pub struct ActionInstance {
    group: GroupHandle,
    source_order: u128,
    faithful: bool,
    transitive: bool,
    cosets: Option<CosetData>,
}

impl std::fmt::Debug for ActionInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionInstance")
            .field("degree", &self.degree())
            .field("faithful", &self.faithful)
            .field("transitive", &self.transitive)
            .finish()
    }
}

impl ActionInstance {
    /// The natural action of a permutation group on its points; always faithful.
    pub fn natural(group: &GroupHandle) -> Result<Self> {
        Ok(Self {
            source_order: group.order()?,
            faithful: true,
            transitive: group.is_transitive(),
            group: group.clone(),
            cosets: None,
        })
    }

    /// The image group, as permutations of the domain.
    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn source_order(&self) -> u128 {
        self.source_order
    }

    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn cosets(&self) -> Option<&CosetData> {
        self.cosets.as_ref()
    }

    pub fn require_faithful(&self) -> Result<()> {
        if self.faithful {
            Ok(())
        } else {
            Err(Error::pre("action is not faithful"))
        }
    }

    /// Restriction to a subgroup, given by permutations of this domain.
    pub fn restrict(&self, sub: &GroupHandle) -> Result<ActionInstance> {
        if sub.degree() != self.degree() {
            return Err(Error::pre("subgroup acts on a different domain"));
        }
        ActionInstance::natural(sub)
    }
}

/// Action of `group` on the right cosets of `sub` by right multiplication.
pub fn coset_action(group: &GroupHandle, sub: &GroupHandle) -> Result<ActionInstance> {
    if !sub.is_subgroup_of(group)? {
        return Err(Error::pre("not a subgroup"));
    }
    let table = Arc::clone(group.table()?);
    let h = group.ids_of(sub)?;
    coset_action_ids(group, &table, &h)
}

pub(crate) fn coset_action_ids(group: &GroupHandle, table: &Arc<CayleyTable>, h: &Subgroup) -> Result<ActionInstance> {
    let n = table.order();
    let index = n / h.order();
    if index > group.caps().degree {
        return Err(Error::cap("coset action degree", index as u128, group.caps().degree as u128));
    }
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::with_capacity(index);
    for x in 0..n as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &k in &h.elements {
            coset_of[table.mul(k, x) as usize] = c;
        }
    }
    let data = CosetData {
        table: Arc::clone(table),
        coset_of,
        reps,
    };
    let gens: Vec<Permutation> = table.generators().iter().map(|&g| data.image(g)).collect();
    let gens = if gens.is_empty() {
        vec![Permutation::identity(index)]
    } else {
        gens
    };
    let core = core_of(table, h, &data.reps);
    let image = GroupHandle::new(index, gens, group.caps())?;
    Ok(ActionInstance {
        source_order: n as u128,
        faithful: core.len() == 1,
        transitive: true,
        group: image,
        cosets: Some(data),
    })
}

/// `⋂ r^-1 H r` over coset representatives `r`.
pub fn core_of(table: &CayleyTable, h: &Subgroup, reps: &[u32]) -> ElemSet {
    let mut core = h.set.clone();
    for &r in reps {
        core.intersect_with(&table.conjugate_set(&h.set, r));
    }
    core
}

/// Primitivity by computing, for every point `b`, the finest block system
/// in which `0` and `b` share a block.
pub fn is_primitive(action: &ActionInstance) -> Result<bool> {
    if !action.is_transitive() {
        return Err(Error::pre("primitivity needs a transitive action"));
    }
    let n = action.degree();
    let gens = action.group().generators();
    Ok((1..n).all(|b| minimal_block_size(n, gens, b) == n))
}

fn minimal_block_size(n: usize, gens: &[Permutation], b: usize) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut pending = vec![(0usize, b)];
    while let Some((x, y)) = pending.pop() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[ry] = rx;
        for g in gens {
            pending.push((g.apply(x), g.apply(y)));
        }
    }
    let root = find(&mut parent, 0);
    (0..n).filter(|&x| find(&mut parent, x) == root).count()
}
