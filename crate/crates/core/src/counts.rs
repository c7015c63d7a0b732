//! Closed-form counts checked against exhaustive lattices: `ℓ(S_n)`,
//! maximal subgroups of `H × C_n` and of metacyclic groups, plus the
//! constant arithmetic and the prime-counting bound.

use crate::arith::{binary_ones, factorize, gcd, omega, prime_pi};
use crate::check::{Check, Relation};
use crate::error::{Error, Result};
use crate::group::catalog::{cyclic, direct_product, metacyclic, metacyclic_inverted, symmetric};
use crate::group::{elementary_quotient_rank, GroupHandle, SubgroupLattice};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// `⌊(3n-1)/2⌋ - b_n` with `b_n` the number of ones in binary `n`.
pub fn length_formula_sn(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::pre("n must be at least 2"));
    }
    Ok((3 * n - 1) / 2 - u64::from(binary_ones(n)))
}

/// `|Hom(H, C_p)| = p^s` with `s` the rank of `H/[H,H]H^p`.
pub fn hom_count_to_cyclic(group: &GroupHandle, p: u64) -> Result<u64> {
    if !crate::arith::is_prime(p) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    if group.order()? == 1 {
        return Ok(1);
    }
    let table = group.table()?;
    let s = elementary_quotient_rank(table, &table.whole(), p);
    crate::arith::checked_pow(p, s)
}

/// A formula value set against an exhaustive count and a bound.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub target: String,
    pub formula: Option<u64>,
    pub oracle: Option<u64>,
    pub bound: u64,
    pub checks: Vec<Check>,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn maximal_count(group: &GroupHandle) -> Result<u64> {
    Ok(SubgroupLattice::new(group)?.maximal_subgroups().len() as u64)
}

/// `|ℳ(H)| + |ℳ(C_n)| + Σ_{p | n}(|Hom(H,C_p)| - 1)` against the lattice of
/// `H × C_n`, and the bound `9 + ω(n)`.
pub fn goursat_maximal_count(label: &str, h: &GroupHandle, n: u64) -> Result<CountReport> {
    if h.order()? > 24 {
        return Err(Error::pre("H must embed in S4"));
    }
    if n == 0 {
        return Err(Error::pre("n must be positive"));
    }
    let mut formula = maximal_count(h)? + omega(n) as u64;
    for p in factorize(n).primes() {
        formula += hom_count_to_cyclic(h, p)? - 1;
    }
    let bound = 9 + omega(n) as u64;
    let product = direct_product(h, &cyclic(n as usize)?)?;
    let mut checks = Vec::new();
    let oracle = match maximal_count(&product) {
        Ok(count) => {
            checks.push(Check::eq("formula = lattice count", formula, count));
            checks.push(Check::le("lattice count <= 9 + omega(n)", count, bound));
            Some(count)
        }
        Err(Error::CapExceeded { .. }) => {
            checks.push(Check::le("formula <= 9 + omega(n)", formula, bound));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(CountReport {
        target: format!("{label} x C{n}"),
        formula: Some(formula),
        oracle,
        bound,
        checks,
    })
}

/// One representative from each conjugacy class of subgroups of `S_4`,
/// labelled by order and class position.
pub fn s4_subgroup_classes() -> Result<Vec<(String, GroupHandle)>> {
    let s4 = symmetric(4)?;
    let lattice = SubgroupLattice::new(&s4)?;
    lattice
        .conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let sub = lattice.get(class[0]);
            Ok((format!("S4-class{}(order {})", i + 1, sub.order()), s4.subgroup(sub)?))
        })
        .collect()
}

/// The Goursat check over all subgroup classes of `S_4` and each `n`.
pub fn goursat_sweep(ns: &[u64]) -> Result<Vec<CountReport>> {
    let classes = s4_subgroup_classes()?;
    let jobs: Vec<(usize, u64)> = ns.iter().flat_map(|&n| (0..classes.len()).map(move |i| (i, n))).collect();
    jobs.par_iter()
        .map(|&(i, n)| goursat_maximal_count(&classes[i].0, &classes[i].1, n))
        .collect()
}

/// Lattice count of maximal subgroups of `C_m : C_n` (or its extension by
/// the inverting involution) against `m + ω(n)` (or `2m + ω(n) + 2`).
pub fn metacyclic_maximal_count(m: usize, n: usize, k: usize, inverted: bool) -> Result<CountReport> {
    let group = if inverted {
        metacyclic_inverted(m, n, k)?
    } else {
        metacyclic(m, n, k)?
    };
    let expected_order = (m * n * if inverted { 2 } else { 1 }) as u128;
    let count = maximal_count(&group)?;
    let omega_n = omega(n as u64) as u64;
    let (bound, name) = if inverted {
        (2 * m as u64 + omega_n + 2, "count <= 2m + omega(n) + 2")
    } else {
        (m as u64 + omega_n, "count <= m + omega(n)")
    };
    Ok(CountReport {
        target: format!("{}({m},{n},{k})", if inverted { "metacyclic-inv" } else { "metacyclic" }),
        formula: None,
        oracle: Some(count),
        bound,
        checks: vec![
            Check::eq("group order", group.order()?, expected_order),
            Check::le(name, count, bound),
        ],
    })
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    (0..exp).fold(1 % m, |acc, _| acc * base % m)
}

/// Least `k^j mod m` over `j` coprime to `n`: replacing `b` by `b^j` gives
/// an isomorphic group, so only one `k` per class is built.
fn canonical_k(m: usize, n: usize, k: usize) -> usize {
    (1..=n.max(1))
        .filter(|&j| gcd(j as u64, n as u64) == 1)
        .map(|j| pow_mod(k, j, m))
        .min()
        .unwrap_or(k % m)
}

/// All valid `(m, n, k)` with `mn ≤ limit` and `0 ≤ k < m`, grouped by
/// canonical `k`, plus the number of tuples failing the preconditions.
pub fn metacyclic_tuples(limit: usize) -> (Vec<(usize, usize, usize)>, usize) {
    let mut kept = BTreeSet::new();
    let mut skipped = 0;
    for m in 1..=limit {
        for n in 1..=limit / m {
            for k in 0..m.max(1) {
                let valid = gcd(k as u64, m as u64) == 1 && pow_mod(k, n, m) == 1 % m;
                if valid {
                    kept.insert((m, n, canonical_k(m, n, k)));
                } else {
                    skipped += 1;
                }
            }
        }
    }
    (kept.into_iter().collect(), skipped)
}

/// Summary of the metacyclic sweep.
#[derive(Debug, Clone, Serialize)]
pub struct MetacyclicSweep {
    pub limit: usize,
    pub groups_checked: usize,
    pub tuples_skipped: usize,
    pub failures: Vec<CountReport>,
    /// The Frobenius group of order 21 attaining `m + ω(n)`.
    pub frobenius21: CountReport,
    pub checks: Vec<Check>,
}

pub fn metacyclic_sweep(limit: usize) -> Result<MetacyclicSweep> {
    let (tuples, skipped) = metacyclic_tuples(limit);
    let jobs: Vec<(usize, usize, usize, bool)> = tuples
        .iter()
        .flat_map(|&(m, n, k)| [(m, n, k, false), (m, n, k, true)])
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(m, n, k, inv)| metacyclic_maximal_count(m, n, k, inv))
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<CountReport> = reports.iter().filter(|r| !r.passed()).cloned().collect();
    let frobenius21 = metacyclic_maximal_count(7, 3, 2, false)?;
    let checks = vec![
        Check::eq("sweep failures", failures.len() as u64, 0u64),
        Check::eq("Frobenius(21) maximal subgroups", frobenius21.oracle.unwrap_or(0), 8u64),
        Check::eq("Frobenius(21) attains m + omega(n)", frobenius21.oracle.unwrap_or(0), frobenius21.bound),
    ];
    Ok(MetacyclicSweep {
        limit,
        groups_checked: reports.len(),
        tuples_skipped: skipped,
        failures,
        frobenius21,
        checks,
    })
}

/// Arithmetic of the constants behind the general bounds.
pub fn constants_audit() -> Vec<Check> {
    let (a, b, c) = (177u64, 8u64, 192u64);
    let alpha = (100 * a).max(c);
    let beta = b + 2;
    let three_beta = 3u64.pow(beta as u32);
    let alpha_prime = 100_000u64;
    let gamma = 52u64;
    let a_const = (alpha_prime * three_beta).max(gamma);
    vec![
        Check::eq("max(100*177, 192)", alpha, 17_700u64),
        Check::eq("beta = 8 + 2", beta, 10u64),
        Check::eq("3^10", three_beta, 59_049u64),
        Check::eq("10^5 * 3^10", alpha_prime * three_beta, 5_904_900_000u64),
        Check::int("10^5 * 3^10 < 10^10", alpha_prime * three_beta, Relation::Lt, 10_000_000_000u64),
        Check::int("max(10^5 * 3^10, 52) < 10^10", a_const, Relation::Lt, 10_000_000_000u64),
        Check::eq("b = max(10, 2)", beta.max(2), 10u64),
    ]
}

/// Largest argument accepted by [`check_pi_bound`].
pub const PI_SIEVE_CAP: usize = 1_000_000;

/// `π(n) > n / ln n` and `ln n < √n`.
pub fn check_pi_bound(n: usize) -> Result<Vec<Check>> {
    if n < 17 {
        return Err(Error::pre("the prime-counting bound is checked from n = 17"));
    }
    if n > PI_SIEVE_CAP {
        return Err(Error::cap("sieve size", n as u128, PI_SIEVE_CAP as u128));
    }
    let x = n as f64;
    Ok(vec![
        Check::real(format!("pi({n}) > {n}/ln {n}"), prime_pi(n) as f64, Relation::Gt, x / x.ln()),
        Check::real(format!("ln {n} < sqrt {n}"), x.ln(), Relation::Lt, x.sqrt()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::length;

    #[test]
    fn length_formula_values() {
        assert_eq!(length_formula_sn(4).unwrap(), 4);
        assert_eq!(length_formula_sn(5).unwrap(), 5);
        assert_eq!(length_formula_sn(8).unwrap(), 10);
        for n in 2..=6u64 {
            assert_eq!(
                length_formula_sn(n).unwrap() as usize,
                length(&symmetric(n as usize).unwrap()).unwrap().length
            );
        }
        assert!(length_formula_sn(1).is_err());
    }

    /// `1 + (p-1)·#{normal subgroups of index p}`, straight from the lattice.
    fn hom_count_oracle(g: &GroupHandle, p: u64) -> u64 {
        let lat = SubgroupLattice::new(g).unwrap();
        let order = g.order().unwrap() as u64;
        let t = lat.table();
        let normal_index_p = lat
            .subgroups()
            .iter()
            .filter(|s| s.order() as u64 * p == order && t.is_normal(s))
            .count() as u64;
        1 + (p - 1) * normal_index_p
    }

    #[test]
    fn hom_counts() {
        let s4 = symmetric(4).unwrap();
        assert_eq!(hom_count_to_cyclic(&s4, 2).unwrap(), 2);
        assert_eq!(hom_count_to_cyclic(&s4, 3).unwrap(), 1);
        assert_eq!(hom_count_to_cyclic(&GroupHandle::trivial(1), 5).unwrap(), 1);
        for (_, h) in s4_subgroup_classes().unwrap() {
            for p in [2, 3, 5] {
                let count = hom_count_to_cyclic(&h, p).unwrap();
                assert_eq!(count, hom_count_oracle(&h, p));
                assert!(crate::group::p_part(count, p) == count);
            }
        }
    }

    #[test]
    fn goursat_examples() {
        let r = goursat_maximal_count("1", &GroupHandle::trivial(1), 12).unwrap();
        assert_eq!(r.oracle, Some(2));
        let c2 = cyclic(2).unwrap();
        let r = goursat_maximal_count("C2", &c2, 2).unwrap();
        assert_eq!((r.formula, r.oracle), (Some(3), Some(3)));
        let r = goursat_maximal_count("S4", &symmetric(4).unwrap(), 6).unwrap();
        assert_eq!((r.formula, r.oracle, r.bound), (Some(11), Some(11), 11));
        assert!(r.passed());
    }

    #[test]
    fn s4_has_eleven_classes() {
        let classes = s4_subgroup_classes().unwrap();
        assert_eq!(classes.len(), 11);
        let mut orders: Vec<u128> = classes.iter().map(|(_, h)| h.order().unwrap()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
    }

    #[test]
    fn metacyclic_examples() {
        let r = metacyclic_maximal_count(7, 3, 2, false).unwrap();
        assert_eq!((r.oracle, r.bound), (Some(8), 8));
        let r = metacyclic_maximal_count(5, 4, 2, false).unwrap();
        assert!(r.passed() && r.bound == 6);
        let r = metacyclic_maximal_count(5, 2, 1, true).unwrap();
        assert!(r.passed() && r.bound == 13);
    }

    #[test]
    fn canonical_k_classes() {
        // 2 and 4 generate the same subgroup of units mod 7
        assert_eq!(canonical_k(7, 3, 4), canonical_k(7, 3, 2));
        let (tuples, skipped) = metacyclic_tuples(12);
        assert!(tuples.contains(&(3, 2, 1)) && tuples.contains(&(3, 2, 2)));
        assert!(skipped > 0);
        for &(m, n, k) in &tuples {
            assert_eq!(gcd(k as u64, m as u64), 1);
            assert_eq!(pow_mod(k, n, m), 1 % m);
        }
    }

    #[test]
    fn isomorphic_k_give_equal_counts() {
        for (m, n, k, j) in [(7, 3, 2, 2), (13, 4, 5, 3), (9, 6, 2, 5)] {
            let k2 = pow_mod(k, j, m);
            for inv in [false, true] {
                assert_eq!(
                    metacyclic_maximal_count(m, n, k, inv).unwrap().oracle,
                    metacyclic_maximal_count(m, n, k2, inv).unwrap().oracle
                );
            }
        }
    }

    #[test]
    fn constants() {
        let checks = constants_audit();
        assert!(checks.iter().all(|c| c.passed));
        assert_eq!(checks[0].lhs, "17700");
    }

    #[test]
    fn pi_bound() {
        for n in [17, 54, 100, 1000] {
            assert!(check_pi_bound(n).unwrap().iter().all(|c| c.passed));
        }
        let c = &check_pi_bound(54).unwrap()[0];
        assert_eq!(c.lhs, "16.000000");
        assert_eq!(&c.rhs[..5], "13.53");
        assert!(check_pi_bound(10).is_err());
        assert!(check_pi_bound(PI_SIEVE_CAP + 1).is_err());
    }
}
