use super::table::{CayleyTable, Subgroup};
use super::GroupHandle;
use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// A Sylow `p`-subgroup, grown one factor of `p` at a time: while `P` is not
/// Sylow, `p` divides `|N(P):P|`, so some `g ∈ N(P) \ P` has `g^p ∈ P`.
/// The least such element ID is taken at each step.
pub fn sylow_in_table(table: &CayleyTable, p: u64) -> Subgroup {
    let target = p_part(table.order() as u64, p);
    let mut sylow = table.trivial();
    while (sylow.order() as u64) < target {
        let normalizer = table.normalizer(&sylow);
        let g = normalizer
            .iter()
            .find(|&g| !sylow.set.contains(g) && sylow.set.contains(table.pow(g, p)))
            .expect("a non-Sylow p-subgroup grows inside its normalizer");
        sylow = table.extend(&sylow, g);
    }
    sylow
}

pub fn sylow_subgroup(group: &GroupHandle, p: u64) -> Result<GroupHandle> {
    check_prime(p)?;
    let table = group.table()?;
    let sub = sylow_in_table(table, p);
    group.subgroup(&sub)
}

/// `⟨[H,H], H^p⟩`, the smallest normal subgroup of `H` with elementary
/// abelian `p`-quotient; the Frattini subgroup when `H` is a `p`-group.
pub fn elementary_kernel(table: &CayleyTable, sub: &Subgroup, p: u64) -> Subgroup {
    let mut seeds: Vec<u32> = Vec::new();
    for (i, &a) in sub.gens.iter().enumerate() {
        seeds.push(table.pow(a, p));
        for &b in &sub.gens[i + 1..] {
            seeds.push(table.commutator(a, b));
        }
    }
    let mut kernel = table.generate(&seeds);
    // normal closure inside `sub`
    loop {
        let missing = kernel
            .gens
            .iter()
            .flat_map(|&k| sub.gens.iter().map(move |&h| (k, h)))
            .map(|(k, h)| table.conj(k, h))
            .find(|&c| !kernel.set.contains(c));
        match missing {
            Some(c) => kernel = table.extend(&kernel, c),
            None => return kernel,
        }
    }
}

/// `log_p |H : ⟨[H,H], H^p⟩|`.
pub fn elementary_quotient_rank(table: &CayleyTable, sub: &Subgroup, p: u64) -> u32 {
    let kernel = elementary_kernel(table, sub, p);
    let index = (sub.order() / kernel.order()) as u64;
    log_exact(index, p).expect("elementary abelian quotient has p-power order")
}

/// `d(P) = log_p |P / Φ(P)|` for a `p`-group `P` (Burnside basis theorem).
pub fn p_group_rank(group: &GroupHandle, p: u64) -> Result<u32> {
    check_prime(p)?;
    let order = group.order()?;
    if order > 1 && log_exact(order as u64, p).is_none() {
        return Err(Error::pre(format!("group of order {order} is not a {p}-group")));
    }
    let table = group.table()?;
    Ok(elementary_quotient_rank(table, &table.whole(), p))
}

pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(factorize(n).exponent_of(p))
}

pub(crate) fn log_exact(n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::pre(format!("{p} is not prime")))
    }
}
