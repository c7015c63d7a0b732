//! Record builders shared by the subcommands and the suite catalog.

use crate::error::Result;
use crate::report::Outcome;
use crate::spec::Metadata;
use genset_lab_core::base::{base_invariants, check_cyclic_quotient, check_height_bound, BaseReport, StabilizerRoute};
use genset_lab_core::check::Check;
use genset_lab_core::genset::{check_bounds, invariants, max_minimal_genset_size, InvariantReport};
use genset_lab_core::group::{coset_action, is_primitive, length, ActionInstance, Caps, GroupHandle, SubgroupLattice};
use genset_lab_core::arith::FieldMatrix;
use genset_lab_core::lie::{build_lie_genset, verify_lie_genset_with, LieGenSet, LieGenSetReport, LieGroupSpec};
use genset_lab_core::Error as CoreError;
use serde::Serialize;

/// `(d, m, δ, ℓ)` with the inequalities between them.
pub fn invariants_outcome(group: &GroupHandle) -> Result<(InvariantReport, Outcome)> {
    let report = invariants(group)?;
    let mut outcome = Outcome::new(check_bounds(&report), &report);
    outcome.partial = !report.m_exact;
    Ok((report, outcome))
}

/// The maximal subgroups of `group` up to conjugacy, one representative
/// per class, in order of increasing subgroup order.
pub fn maximal_subgroup_classes(group: &GroupHandle) -> Result<Vec<GroupHandle>> {
    let lattice = SubgroupLattice::new(group)?;
    let mut reps: Vec<usize> = lattice
        .conjugacy_classes()
        .into_iter()
        .filter(|class| lattice.is_maximal(class[0]))
        .map(|class| class[0])
        .collect();
    reps.sort_unstable();
    Ok(reps
        .into_iter()
        .map(|i| group.subgroup(lattice.get(i)))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Action on the cosets of the `k`-th class (1-indexed) of maximal subgroups.
pub fn maximal_coset_action(group: &GroupHandle, k: usize) -> Result<(ActionInstance, u128)> {
    let classes = maximal_subgroup_classes(group)?;
    let sub = k
        .checked_sub(1)
        .and_then(|i| classes.get(i))
        .ok_or_else(|| CoreError::Precondition(format!("--coset {k}: the group has {} classes of maximal subgroups", classes.len())))?;
    Ok((coset_action(group, sub)?, sub.order()?))
}

fn one_indexed(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

/// Base invariants as reported: witnesses use 1-indexed points.
#[derive(Debug, Clone, Serialize)]
pub struct ActionData {
    pub group: String,
    pub degree: usize,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_stabilizer_order: Option<String>,
    pub transitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    pub route: StabilizerRoute,
    pub b: usize,
    pub h: usize,
    pub i: usize,
    pub rc_upper: usize,
    pub b_witness: Vec<usize>,
    pub h_witness: Vec<usize>,
    pub i_witness: Vec<usize>,
    /// `None` when the group is too large for the subgroup lattice.
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Metadata::is_empty")]
    pub declared: Metadata,
}

pub struct ActionOptions {
    pub route: StabilizerRoute,
    /// Also compute `m(G)` and check `m ≤ ℓ(G)`.
    pub with_m: bool,
    pub point_stabilizer_order: Option<u128>,
}

/// `B ≤ H ≤ I ≤ ℓ(G)` for a faithful action, plus `m ≤ ℓ` on request and
/// the height bound for primitive actions when rank and field degree are
/// declared.
pub fn action_outcome(label: &str, action: &ActionInstance, metadata: &Metadata, opts: &ActionOptions) -> Result<Outcome> {
    action.require_faithful()?;
    let report: BaseReport = base_invariants(action, opts.route)?;
    let group = action.group();
    let mut checks = vec![
        Check::le("B <= H", report.b as u64, report.h as u64),
        Check::le("H <= I", report.h as u64, report.i as u64),
    ];
    let ell = match length(group) {
        Ok(l) => Some(l.length),
        Err(CoreError::CapExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(ell) = ell {
        checks.push(Check::le("I <= length(G)", report.i as u64, ell as u64));
    }
    let mut partial = false;
    let mut m = None;
    if opts.with_m {
        let result = max_minimal_genset_size(group)?;
        partial = !result.exact;
        if let Some(ell) = ell {
            checks.push(Check::le("m(G) <= length(G)", result.value as u64, ell as u64));
        }
        m = Some(result.value);
    }
    let primitive = if action.is_transitive() { Some(is_primitive(action)?) } else { Some(false) };
    if let (Some(rank), Some(f), Some(true)) = (metadata.rank, metadata.field_degree, primitive) {
        checks.extend(check_height_bound(action, &report, rank, f)?);
    }
    let data = ActionData {
        group: label.to_string(),
        degree: report.degree,
        order: report.order.clone(),
        point_stabilizer_order: opts.point_stabilizer_order.map(|o| o.to_string()),
        transitive: action.is_transitive(),
        primitive,
        route: report.route,
        b: report.b,
        h: report.h,
        i: report.i,
        rc_upper: report.rc_upper,
        b_witness: one_indexed(&report.b_witness),
        h_witness: one_indexed(&report.h_witness),
        i_witness: one_indexed(&report.i_witness),
        length: ell,
        m,
        declared: metadata.clone(),
    };
    let mut outcome = Outcome::new(checks, data);
    outcome.partial = partial;
    Ok(outcome)
}

/// `H(G) ≤ H(N) + ω(|G:N|)` for a normal subgroup with cyclic quotient.
pub fn cyclic_quotient_outcome(action: &ActionInstance, normal: &GroupHandle) -> Result<Outcome> {
    let mut report = check_cyclic_quotient(action, normal)?;
    report.gamma = one_indexed(&report.gamma);
    report.delta = one_indexed(&report.delta);
    Ok(Outcome::new(report.checks.clone(), &report))
}

#[derive(Debug, Clone, Serialize)]
struct NamedMatrix {
    label: String,
    /// Row-major; each entry is its coefficient vector over `GF(p)`,
    /// lowest degree first.
    rows: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, Serialize)]
struct ConstructData {
    group: String,
    p: u32,
    f: u32,
    modulus: Vec<u32>,
    generators: Vec<NamedMatrix>,
    lambdas: Vec<Vec<u32>>,
    subfields: Vec<(u32, u32)>,
    verification: LieGenSetReport,
}

/// The root and torus generating set of `PSL_n(p^f)` with its verification:
/// it generates, and every leave-one-out subset generates a proper subgroup.
pub fn construct_outcome(spec: &LieGroupSpec, caps: Caps) -> Result<Outcome> {
    let set = build_lie_genset(spec)?;
    let field = &set.field;
    let generators = set
        .labelled()
        .into_iter()
        .map(|(label, m)| NamedMatrix {
            label,
            rows: m
                .rows()
                .iter()
                .map(|r| r.iter().map(|&a| field.coefficients(a)).collect())
                .collect(),
        })
        .collect();
    let verification = verify_lie_genset_with(spec, caps)?;
    let mut checks = shape_checks(spec, &set)?;
    checks.extend(verification.checks.iter().cloned());
    let data = ConstructData {
        group: spec.to_string(),
        p: spec.p,
        f: spec.f,
        modulus: field.modulus().to_vec(),
        generators,
        lambdas: set.lambdas.iter().map(|&l| field.coefficients(l)).collect(),
        subfields: set.subfields.clone(),
        verification: verification.clone(),
    };
    Ok(Outcome::new(checks, data))
}

/// Each generator against the matrix it should be, rebuilt entry by entry:
/// `x_i = I + E_{i,i+1}`, `y_i = I + E_{i+1,i}`, `z_j = diag(λ_j, λ_j⁻¹, 1, …)`
/// with `λ_j` of order `p^{f_j} - 1`.
fn shape_checks(spec: &LieGroupSpec, set: &LieGenSet) -> Result<Vec<Check>> {
    let field = &set.field;
    let n = spec.n;
    let one = field.one();
    let mut checks = Vec::new();
    for i in 0..n - 1 {
        checks.push(Check::holds(
            format!("x{} = I + E({},{})", i + 1, i + 1, i + 2),
            set.x[i] == FieldMatrix::elementary(field, n, i, i + 1, one),
        ));
        checks.push(Check::holds(
            format!("y{} = I + E({},{})", i + 1, i + 2, i + 1),
            set.y[i] == FieldMatrix::elementary(field, n, i + 1, i, one),
        ));
    }
    for (j, (&lambda, &(_, fj))) in set.lambdas.iter().zip(&set.subfields).enumerate() {
        let mut diag = vec![one; n];
        diag[0] = lambda;
        diag[1] = field.inv(lambda)?;
        checks.push(Check::holds(
            format!("z{} = diag(lambda, lambda^-1, 1, ...)", j + 1),
            set.z[j] == FieldMatrix::diagonal(field, &diag),
        ));
        checks.push(Check::eq(
            format!("order of lambda{} = p^{fj} - 1", j + 1),
            field.multiplicative_order(lambda)?,
            u64::from(spec.p).pow(fj) - 1,
        ));
    }
    Ok(checks)
}
