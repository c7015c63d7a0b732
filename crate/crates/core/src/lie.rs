//! `SL_n(q)` and `PSL_n(q)` through explicit matrices: root elements, torus
//! elements, the minimal generating set of size `2r + ω(f)`, the
//! projective permutation action, order formulas and prime-divisor counts.

use crate::arith::{factorize, gcd, is_prime, zsigmondy_ppd, FieldElement, FieldMatrix, FiniteField, Permutation, PrimeFactorization};
use crate::check::{Check, Relation};
use crate::error::{Error, Result};
use crate::genset::max_minimal_genset_size;
use crate::group::{Caps, GroupHandle};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// Type `A_r`: `SL_n(p^f)` with `n = r + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LieGroupSpec {
    pub n: usize,
    pub p: u32,
    pub f: u32,
}

impl LieGroupSpec {
    pub fn new(n: usize, p: u32, f: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::pre("dimension must be at least 2"));
        }
        if !is_prime(u64::from(p)) {
            return Err(Error::pre(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::pre("field degree must be positive"));
        }
        Ok(Self { n, p, f })
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn q(&self) -> u64 {
        u64::from(self.p).pow(self.f)
    }

    /// Number of projective points, `(q^n - 1)/(q - 1)`.
    pub fn projective_degree(&self) -> Result<u128> {
        let q = u128::from(self.q());
        let mut total = 0u128;
        let mut power = 1u128;
        for _ in 0..self.n {
            total = total.checked_add(power).ok_or_else(|| Error::Overflow("projective degree".into()))?;
            power = power.checked_mul(q).ok_or_else(|| Error::Overflow("projective degree".into()))?;
        }
        Ok(total)
    }

    pub fn field(&self) -> Result<Arc<FiniteField>> {
        Ok(Arc::new(FiniteField::new(self.p, self.f)?))
    }
}

impl std::fmt::Display for LieGroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PSL_{}({})", self.n, self.q())
    }
}

/// `x_i = I + E_{i,i+1}` and `y_i = I + E_{i+1,i}` for `1 ≤ i ≤ r`.
pub fn root_elements(field: &Arc<FiniteField>, n: usize, i: usize) -> Result<(FieldMatrix, FieldMatrix)> {
    if i == 0 || i >= n {
        return Err(Error::pre(format!("root index {i} outside 1..={}", n - 1)));
    }
    Ok((
        FieldMatrix::elementary(field, n, i - 1, i, field.one()),
        FieldMatrix::elementary(field, n, i, i - 1, field.one()),
    ))
}

/// `diag(λ, λ⁻¹, 1, …, 1)`.
pub fn torus_element(field: &Arc<FiniteField>, n: usize, lambda: FieldElement) -> Result<FieldMatrix> {
    if lambda.is_zero() {
        return Err(Error::pre("torus parameter must be nonzero"));
    }
    let mut diag = vec![field.one(); n];
    diag[0] = lambda;
    diag[1] = field.inv(lambda)?;
    Ok(FieldMatrix::diagonal(field, &diag))
}

/// The generating set `{x_1..x_r, y_1..y_r, z_1..z_k}` with `k = ω(f)`.
#[derive(Debug, Clone, Serialize)]
pub struct LieGenSet {
    pub spec: LieGroupSpec,
    #[serde(skip)]
    pub field: Arc<FiniteField>,
    #[serde(skip)]
    pub x: Vec<FieldMatrix>,
    #[serde(skip)]
    pub y: Vec<FieldMatrix>,
    #[serde(skip)]
    pub z: Vec<FieldMatrix>,
    /// `λ_i`, a generator of `GF(p^{f_i})^*`.
    pub lambdas: Vec<FieldElement>,
    /// `(e_i, f_i)` with `f_i = e_i^{a_i}` the full `e_i`-part of `f`.
    pub subfields: Vec<(u32, u32)>,
}

impl LieGenSet {
    pub fn len(&self) -> usize {
        self.x.len() + self.y.len() + self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Matrices with labels `x1…, y1…, z1…`, in that order.
    pub fn labelled(&self) -> Vec<(String, &FieldMatrix)> {
        let mut out = Vec::with_capacity(self.len());
        for (tag, mats) in [("x", &self.x), ("y", &self.y), ("z", &self.z)] {
            for (i, m) in mats.iter().enumerate() {
                out.push((format!("{tag}{}", i + 1), m));
            }
        }
        out
    }

    pub fn matrices(&self) -> Vec<FieldMatrix> {
        self.labelled().into_iter().map(|(_, m)| m.clone()).collect()
    }
}

pub fn build_lie_genset(spec: &LieGroupSpec) -> Result<LieGenSet> {
    let field = spec.field()?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 1..spec.n {
        let (xi, yi) = root_elements(&field, spec.n, i)?;
        x.push(xi);
        y.push(yi);
    }
    let mut z = Vec::new();
    let mut lambdas = Vec::new();
    let mut subfields = Vec::new();
    for &(e, a) in factorize(u64::from(spec.f)).factors() {
        let e = e as u32;
        let fi = e.pow(a);
        let lambda = field.subfield_primitive_element(fi)?;
        z.push(torus_element(&field, spec.n, lambda)?);
        lambdas.push(lambda);
        subfields.push((e, fi));
    }
    Ok(LieGenSet {
        spec: *spec,
        field,
        x,
        y,
        z,
        lambdas,
        subfields,
    })
}

/// Canonical projective points (last nonzero coordinate `1`), sorted
/// lexicographically by packed coordinates.
pub fn projective_points(field: &FiniteField, n: usize) -> Vec<Vec<FieldElement>> {
    let q = field.order();
    let mut points = Vec::new();
    for last in (0..n).rev() {
        // coordinates before `last` free, `last` is one, after it zero
        let free = last as u32;
        let count = (q as u64).pow(free);
        for code in 0..count {
            let mut v = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..free {
                v.push(field.element((c % u64::from(q)) as u32).expect("digit below q"));
                c /= u64::from(q);
            }
            v.reverse();
            v.push(field.one());
            v.resize(n, field.zero());
            points.push(v);
        }
    }
    points.sort_unstable();
    points
}

fn normalize(field: &FiniteField, v: &mut [FieldElement]) {
    let last = v.iter().rposition(|a| !a.is_zero()).expect("nonzero vector");
    let scale = field.inv(v[last]).expect("nonzero");
    for a in v.iter_mut() {
        *a = field.mul(*a, scale);
    }
}

/// Permutation images of matrices on the projective points.
pub struct ProjectiveSpace {
    field: Arc<FiniteField>,
    points: Vec<Vec<FieldElement>>,
    index: HashMap<Vec<FieldElement>, usize>,
}

impl ProjectiveSpace {
    pub fn new(field: &Arc<FiniteField>, n: usize, degree_cap: usize) -> Result<Self> {
        let degree = (0..n as u32).map(|i| u128::from(field.order()).pow(i)).sum::<u128>();
        if degree > degree_cap as u128 {
            return Err(Error::cap("projective degree", degree, degree_cap as u128));
        }
        let points = projective_points(field, n);
        let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(Self {
            field: Arc::clone(field),
            points,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    fn image_of(&self, mut v: Vec<FieldElement>) -> u32 {
        normalize(&self.field, &mut v);
        self.index[&v] as u32
    }

    pub fn permutation(&self, m: &FieldMatrix) -> Result<Permutation> {
        if m.determinant().is_zero() {
            return Err(Error::pre("matrix is singular"));
        }
        let images = self.points.iter().map(|v| self.image_of(m.act(v))).collect();
        Permutation::from_images(images)
    }

    /// The field automorphism `a ↦ a^p` applied coordinatewise.
    pub fn frobenius(&self) -> Result<Permutation> {
        let images = self
            .points
            .iter()
            .map(|v| self.image_of(v.iter().map(|&a| self.field.frobenius(a)).collect()))
            .collect();
        Permutation::from_images(images)
    }
}

/// The group generated by the images of `matrices` on projective points.
pub fn projective_action(field: &Arc<FiniteField>, n: usize, matrices: &[FieldMatrix], caps: Caps) -> Result<GroupHandle> {
    let space = ProjectiveSpace::new(field, n, caps.degree)?;
    let gens = matrices.iter().map(|m| space.permutation(m)).collect::<Result<Vec<_>>>()?;
    GroupHandle::new(space.degree(), gens, caps)
}

/// `PSL_n(q)` on its projective points, generated by the images of the
/// `2r + ω(f)` generating set.
pub fn projective_group(spec: &LieGroupSpec) -> Result<GroupHandle> {
    projective_group_with(spec, Caps::default())
}

pub fn projective_group_with(spec: &LieGroupSpec, caps: Caps) -> Result<GroupHandle> {
    let set = build_lie_genset(spec)?;
    projective_action(&set.field, spec.n, &set.matrices(), caps)
}

/// `PSL_n(q)` extended by the Frobenius automorphism, `PΣL_n(q)`.
pub fn semilinear_group(spec: &LieGroupSpec) -> Result<GroupHandle> {
    semilinear_group_with(spec, Caps::default())
}

pub fn semilinear_group_with(spec: &LieGroupSpec, caps: Caps) -> Result<GroupHandle> {
    let set = build_lie_genset(spec)?;
    let space = ProjectiveSpace::new(&set.field, spec.n, caps.degree)?;
    let mut gens = set.matrices().iter().map(|m| space.permutation(m)).collect::<Result<Vec<_>>>()?;
    gens.push(space.frobenius()?);
    GroupHandle::new(space.degree(), gens, caps)
}

/// `q^{n(n-1)/2} · Π_{i=2..n}(q^i - 1) / gcd(n, q - 1)`.
pub fn psl_order(n: usize, q: u64) -> Result<BigUint> {
    if n < 2 || q < 2 {
        return Err(Error::pre("psl_order needs n >= 2 and q >= 2"));
    }
    let qb = BigUint::from(q);
    let mut order = qb.pow((n * (n - 1) / 2) as u32);
    for i in 2..=n {
        order *= qb.pow(i as u32) - BigUint::one();
    }
    Ok(order / BigUint::from(gcd(n as u64, q - 1)))
}

/// Factorization of `|PSL_n(q)|` assembled from the factors of each `q^i - 1`.
pub fn psl_order_factorization(spec: &LieGroupSpec) -> Result<PrimeFactorization> {
    let q = spec.q();
    let mut acc = PrimeFactorization::one();
    let p_part = factorize(u64::from(spec.p));
    for _ in 0..(spec.f as usize * spec.n * (spec.n - 1) / 2) {
        acc = acc.mul(&p_part);
    }
    for i in 2..=spec.n as u32 {
        let term = crate::arith::checked_pow(q, i)? - 1;
        acc = acc.mul(&factorize(term));
    }
    acc.div(&factorize(gcd(spec.n as u64, q - 1)))
}

/// Outcome of verifying the `2r + ω(f)` generating set.
#[derive(Debug, Clone, Serialize)]
pub struct LieGenSetReport {
    pub spec: LieGroupSpec,
    pub set_size: usize,
    pub expected_size: usize,
    pub psl_order: String,
    pub generated_order: String,
    /// `(omitted label, order of the subgroup generated by the rest)`.
    pub leave_one_out: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

pub fn verify_lie_genset(spec: &LieGroupSpec) -> Result<LieGenSetReport> {
    verify_lie_genset_with(spec, Caps::default())
}

pub fn verify_lie_genset_with(spec: &LieGroupSpec, caps: Caps) -> Result<LieGenSetReport> {
    let set = build_lie_genset(spec)?;
    let space = ProjectiveSpace::new(&set.field, spec.n, caps.degree)?;
    let labelled = set.labelled();
    let perms = labelled
        .iter()
        .map(|(_, m)| space.permutation(m))
        .collect::<Result<Vec<_>>>()?;
    let expected_order = psl_order(spec.n, spec.q())?;
    let degree = space.degree();
    let order_of = |gens: Vec<Permutation>| -> Result<u128> {
        if gens.is_empty() {
            return Ok(1);
        }
        GroupHandle::new(degree, gens, caps)?.order()
    };
    let full = order_of(perms.clone())?;
    let rest: Vec<Result<u128>> = (0..perms.len())
        .into_par_iter()
        .map(|i| {
            let gens = perms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            order_of(gens)
        })
        .collect();
    let rest = rest.into_iter().collect::<Result<Vec<_>>>()?;

    let expected_size = 2 * spec.rank() + factorize(u64::from(spec.f)).omega();
    let mut checks = vec![
        Check::holds(
            "all generators have determinant 1",
            labelled.iter().all(|(_, m)| m.determinant() == set.field.one()),
        ),
        Check::eq("|X| = 2r + omega(f)", set.len() as u64, expected_size as u64),
        Check::eq("|<X>| = |PSL_n(q)|", BigUint::from(full), expected_order.clone()),
    ];
    for ((label, _), &order) in labelled.iter().zip(&rest) {
        checks.push(Check::int(
            format!("|<X \\ {label}>| < |PSL_n(q)|"),
            BigUint::from(order),
            Relation::Lt,
            expected_order.clone(),
        ));
    }
    for (i, &(e, _)) in set.subfields.iter().enumerate() {
        let label = format!("z{}", i + 1);
        let pos = labelled.iter().position(|(l, _)| *l == label).expect("label present");
        let sub_q = u64::from(spec.p).pow(spec.f / e);
        let sub_order = psl_order(spec.n, sub_q)?;
        checks.push(Check::holds(
            format!("|<X \\ {label}>| divides |PSL_{}({sub_q})|", spec.n),
            (&sub_order % BigUint::from(rest[pos])).is_zero(),
        ));
    }
    checks.push(Check::ge(
        "m(G) lower bound 2r + omega(f) certified",
        if checks.iter().all(|c| c.passed) { set.len() as u64 } else { 0 },
        expected_size as u64,
    ));
    Ok(LieGenSetReport {
        spec: *spec,
        set_size: set.len(),
        expected_size,
        psl_order: expected_order.to_string(),
        generated_order: full.to_string(),
        leave_one_out: labelled.iter().zip(&rest).map(|((l, _), o)| (l.clone(), o.to_string())).collect(),
        checks,
    })
}

/// `ω(|PSL_n(q)|) ≥ max(1, (r-1)/2) + ω(f)` with the primitive prime
/// divisors used by the counting argument.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub spec: LieGroupSpec,
    pub order_factors: Vec<(u64, u32)>,
    /// `(i, ppd of p^i - 1)` along `1, e1, e1e2, …, 3f, …, nf`; `None`
    /// marks the Zsigmondy exception.
    pub witnesses: Vec<(u32, Option<u64>)>,
    /// Exponents along the chain whose `p^i - 1` has no primitive divisor.
    pub exceptions: usize,
    /// Distinct primes among `p` and the witnesses.
    pub witness_primes: Vec<u64>,
    pub checks: Vec<Check>,
}

pub fn check_omega_bound(spec: &LieGroupSpec) -> Result<OmegaReport> {
    let factors = psl_order_factorization(spec)?;
    let f_primes: Vec<u32> = factorize(u64::from(spec.f)).primes().map(|e| e as u32).collect();
    let mut exponents = vec![1u32];
    let mut running = 1u32;
    for &e in &f_primes {
        running *= e;
        exponents.push(running);
    }
    for d in 3..=spec.n as u32 {
        exponents.push(spec.f * d);
    }
    let mut witnesses = Vec::new();
    for &i in &exponents {
        witnesses.push((i, zsigmondy_ppd(u64::from(spec.p), i)?));
    }
    let r = spec.rank() as f64;
    let bound = 1f64.max((r - 1.0) / 2.0) + f_primes.len() as f64;
    let mut witness_primes: Vec<u64> = witnesses.iter().filter_map(|&(_, w)| w).collect();
    witness_primes.push(u64::from(spec.p));
    witness_primes.sort_unstable();
    witness_primes.dedup();
    let exceptions = witnesses.iter().filter(|(_, w)| w.is_none()).count();
    let checks = vec![
        Check::real(
            "omega(|PSL_n(q)|) >= max(1, (r-1)/2) + omega(f)",
            factors.omega() as f64,
            Relation::Ge,
            bound,
        ),
        Check::holds(
            "every witness prime divides |PSL_n(q)|",
            witness_primes.iter().all(|&w| factors.exponent_of(w) > 0),
        ),
        Check::eq(
            "factorization reproduces psl_order",
            factors.to_biguint(),
            psl_order(spec.n, spec.q())?,
        ),
    ];
    Ok(OmegaReport {
        spec: *spec,
        order_factors: factors.factors().to_vec(),
        witnesses,
        exceptions,
        witness_primes,
        checks,
    })
}

/// Exact `m(PSL_2(q))` against `max{6, ω(f)+2}` and `2 + ω(f)`.
#[derive(Debug, Clone, Serialize)]
pub struct SaxlWhistonReport {
    pub spec: LieGroupSpec,
    pub m: usize,
    pub exact: bool,
    pub checks: Vec<Check>,
}

pub fn check_saxl_whiston(spec: &LieGroupSpec) -> Result<SaxlWhistonReport> {
    if spec.n != 2 {
        return Err(Error::pre("the bound concerns PSL_2"));
    }
    let group = projective_group(spec)?;
    let m = max_minimal_genset_size(&group)?;
    let omega_f = factorize(u64::from(spec.f)).omega() as u64;
    let checks = vec![
        Check::holds("m computed exhaustively", m.exact),
        Check::le("m <= max(6, omega(f) + 2)", m.value as u64, 6.max(omega_f + 2)),
        Check::ge("m >= 2 + omega(f)", m.value as u64, 2 + omega_f),
    ];
    Ok(SaxlWhistonReport {
        spec: *spec,
        m: m.value,
        exact: m.exact,
        checks,
    })
}
