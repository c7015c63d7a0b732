//! Deterministic Schreier–Sims with explicit transversals.

use crate::arith::Permutation;
use crate::error::{Error, Result};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Self {
            point,
            gens,
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.point];
        let mut queue = VecDeque::from([self.point]);
        while let Some(x) = queue.pop_front() {
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(s);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
}

/// Base and strong generating set: level `k` is the pointwise stabilizer of
/// the first `k` base points, with its fundamental orbit and transversal.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, gens: &[Permutation], degree_cap: usize) -> Result<Self> {
        Self::with_base_prefix(degree, gens, &[], degree_cap)
    }

    /// Chain whose base starts with `prefix` (duplicates ignored). Level
    /// `prefix.len()` is then the pointwise stabilizer of `prefix`.
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize], degree_cap: usize) -> Result<Self> {
        if degree > degree_cap {
            return Err(Error::cap("degree", degree as u128, degree_cap as u128));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
        let mut base: Vec<usize> = Vec::new();
        for &b in prefix {
            if b >= degree {
                return Err(Error::invalid(format!("base point {b} outside degree {degree}")));
            }
            if !base.contains(&b) {
                base.push(b);
            }
        }
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(first_moved(g));
            }
        }
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        for (i, &b) in base.iter().enumerate() {
            let level_gens = strong
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(b, level_gens, degree));
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match chain.failing_schreier_generator(level) {
                None => i -= 1,
                Some((residue, drop)) => {
                    if drop == chain.levels.len() {
                        let b = first_moved(&residue);
                        chain.levels.push(Level::new(b, Vec::new(), degree));
                    }
                    for l in level + 1..=drop {
                        chain.levels[l].gens.push(residue.clone());
                        chain.levels[l].rebuild(degree);
                    }
                    i = drop as isize;
                }
            }
        }
        Ok(chain)
    }

    /// First Schreier generator of `level` that does not sift through the
    /// levels below it, with its residue and the level where sifting stopped.
    fn failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &x in &lv.orbit {
            let ux = lv.transversal[x].as_ref().unwrap();
            for s in &lv.gens {
                let y = s.apply(x);
                let uy = lv.transversal[y].as_ref().unwrap();
                let g = ux.then(s).then(&uy.inverse());
                let (residue, drop) = self.sift_from(g, level + 1);
                if drop < self.levels.len() || !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `start..`. Returns the residue and the index
    /// of the level where it fell out (`levels.len()` if it passed them all).
    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, lv) in self.levels.iter().enumerate().skip(start) {
            let y = g.apply(lv.point);
            match &lv.transversal[y] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Strong generators of the pointwise stabilizer of the first `k` base points.
    pub fn level_generators(&self, k: usize) -> &[Permutation] {
        self.levels.get(k).map_or(&[], |l| &l.gens)
    }

    pub fn fundamental_orbit(&self, k: usize) -> &[usize] {
        &self.levels[k].orbit
    }

    /// Order as the product of fundamental orbit lengths.
    pub fn order(&self) -> Result<u128> {
        self.order_from(0)
    }

    /// Order of the level-`k` subgroup.
    pub fn order_from(&self, k: usize) -> Result<u128> {
        self.levels.iter().skip(k).try_fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .ok_or_else(|| Error::Overflow("stabilizer chain order".into()))
        })
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (residue, drop) = self.sift_from(g.clone(), 0);
            drop == self.levels.len() && residue.is_identity()
        }
    }

    /// Checks the structural invariants: level generators fix the earlier
    /// base points, and every strong generator sifts.
    pub fn is_valid(&self) -> bool {
        self.levels.iter().enumerate().all(|(k, lv)| {
            lv.gens.iter().all(|g| {
                self.levels[..k].iter().all(|e| g.apply(e.point) == e.point) && self.contains(g)
            })
        })
    }
}

fn first_moved(g: &Permutation) -> usize {
    (0..g.degree())
        .find(|&x| g.apply(x) != x)
        .expect("non-identity permutation moves a point")
}
