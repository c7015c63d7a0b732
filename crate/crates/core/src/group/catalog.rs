//! Standard permutation realizations of small groups.

use super::GroupHandle;
use crate::arith::{gcd, Permutation};
use crate::error::{Error, Result};

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(degree, &[points.into_iter().collect()]).expect("valid cycle")
}

fn map(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..degree).map(|x| f(x) as u32).collect()).expect("bijection")
}

/// `S_n` on `n` points, generated by `(0 1)` and `(0 1 … n-1)`.
pub fn symmetric(n: usize) -> Result<GroupHandle> {
    if n == 0 {
        return Err(Error::pre("degree must be positive"));
    }
    if n == 1 {
        return Ok(GroupHandle::trivial(1));
    }
    GroupHandle::close(&[cycle(n, [0, 1]), cycle(n, 0..n)])
}

/// `A_n` on `n` points: `(0 … n-1)` and `(n-3 n-2 n-1)` for odd `n`,
/// `(0 1 2)` and `(1 … n-1)` for even `n`.
pub fn alternating(n: usize) -> Result<GroupHandle> {
    if n == 0 {
        return Err(Error::pre("degree must be positive"));
    }
    if n < 3 {
        return Ok(GroupHandle::trivial(n));
    }
    let gens = if n % 2 == 1 {
        vec![cycle(n, 0..n), cycle(n, n - 3..n)]
    } else {
        vec![cycle(n, [0, 1, 2]), cycle(n, 1..n)]
    };
    GroupHandle::close(&gens)
}

/// `C_n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> Result<GroupHandle> {
    if n == 0 {
        return Err(Error::pre("order must be positive"));
    }
    if n == 1 {
        return Ok(GroupHandle::trivial(1));
    }
    GroupHandle::close(&[cycle(n, 0..n)])
}

/// Symmetries of the regular `n`-gon (order `2n`) on its vertices.
pub fn dihedral(n: usize) -> Result<GroupHandle> {
    if n < 3 {
        return Err(Error::pre("dihedral groups need at least 3 vertices"));
    }
    GroupHandle::close(&[cycle(n, 0..n), map(n, |x| (n - x) % n)])
}

/// `Q_8` in its regular representation.
pub fn quaternion() -> Result<GroupHandle> {
    // Element 2u + s is (-1)^s times unit u, with units 1, i, j, k.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let times = |x: usize, unit: usize| {
        let (u, s) = (x / 2, x % 2);
        let (w, t) = UNIT[u][unit];
        2 * w + (s ^ t)
    };
    GroupHandle::close(&[map(8, |x| times(x, 1)), map(8, |x| times(x, 2))])
}

pub fn elementary_abelian(p: usize, rank: usize) -> Result<GroupHandle> {
    let mut g = cyclic(p)?;
    for _ in 1..rank {
        g = direct_product(&g, &cyclic(p)?)?;
    }
    Ok(g)
}

/// `G × H` acting on the disjoint union of the two domains.
pub fn direct_product(g: &GroupHandle, h: &GroupHandle) -> Result<GroupHandle> {
    let degree = g.degree() + h.degree();
    let left = g.generators().iter().map(|p| p.shifted(0, degree));
    let right = h.generators().iter().map(|p| p.shifted(g.degree(), degree));
    let mut gens: Vec<Permutation> = left.chain(right).filter(|p| !p.is_identity()).collect();
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    GroupHandle::close_with(&gens, g.caps())
}

/// The affine group `{x ↦ ax + b : a ∈ ⟨k⟩}` on `Z_p`, of order
/// `p · ord_p(k)`; `frobenius(7, 2)` is the Frobenius group of order 21.
pub fn frobenius(p: usize, k: usize) -> Result<GroupHandle> {
    if !crate::arith::is_prime(p as u64) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    if k % p == 0 {
        return Err(Error::pre("multiplier must be a unit"));
    }
    let mut gens = vec![cycle(p, 0..p)];
    if k % p != 1 {
        gens.push(map(p, |x| x * k % p));
    }
    GroupHandle::close(&gens)
}

fn check_metacyclic(m: usize, n: usize, k: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::pre("m and n must be positive"));
    }
    if gcd(k as u64, m as u64) != 1 {
        return Err(Error::pre(format!("gcd({k}, {m}) != 1")));
    }
    let mut power = 1 % m;
    for _ in 0..n {
        power = power * (k % m) % m;
    }
    if power != 1 % m {
        return Err(Error::pre(format!("{m} does not divide {k}^{n} - 1")));
    }
    Ok(())
}

fn metacyclic_gens(m: usize, n: usize, k: usize, extra: usize) -> Vec<Permutation> {
    let degree = m + n + extra;
    let a = map(degree, |x| if x < m { (x + 1) % m } else { x });
    let b = map(degree, |x| {
        if x < m {
            x * k % m
        } else if x < m + n {
            m + (x - m + 1) % n
        } else {
            x
        }
    });
    vec![a, b]
}

/// `⟨a, b | a^m, b^n, b⁻¹ab = a^k⟩` of order `mn`: `a` is `x ↦ x+1` and `b`
/// is `x ↦ kx` on `Z_m`, with `b` also cycling a separate copy of `Z_n` so
/// that the action is faithful even when `k` has order less than `n`.
pub fn metacyclic(m: usize, n: usize, k: usize) -> Result<GroupHandle> {
    check_metacyclic(m, n, k)?;
    let g = GroupHandle::close(&metacyclic_gens(m, n, k, 0))?;
    debug_assert_eq!(g.order()?, (m * n) as u128);
    Ok(g)
}

/// `C_m : (C_n × C_2)` of order `2mn`, where the involution `c` acts as
/// `x ↦ -x` on `Z_m` (and swaps two extra points), commuting with `b`.
pub fn metacyclic_inverted(m: usize, n: usize, k: usize) -> Result<GroupHandle> {
    check_metacyclic(m, n, k)?;
    let mut gens = metacyclic_gens(m, n, k, 2);
    let degree = m + n + 2;
    gens.push(map(degree, |x| {
        if x < m {
            (m - x) % m
        } else if x < m + n {
            x
        } else {
            2 * (m + n) + 1 - x
        }
    }));
    let g = GroupHandle::close(&gens)?;
    debug_assert_eq!(g.order()?, (2 * m * n) as u128);
    Ok(g)
}
