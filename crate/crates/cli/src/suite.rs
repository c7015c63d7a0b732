//! The acceptance catalog. Every job yields one record; records come out in
//! catalog order whatever order the jobs finish in.

use crate::commands::{
    action_outcome, construct_outcome, cyclic_quotient_outcome, invariants_outcome, maximal_subgroup_classes,
    ActionOptions,
};
use crate::error::Result;
use crate::report::{Outcome, Record, ReportDocument};
use crate::spec::Metadata;
use genset_lab_core::arith::{binary_ones, checked_pow, factorize, multiplicative_order, zsigmondy_ppd};
use genset_lab_core::base::{base_invariants, StabilizerRoute};
use genset_lab_core::check::Check;
use genset_lab_core::counts::{
    check_pi_bound, constants_audit, goursat_maximal_count, length_formula_sn, metacyclic_sweep, s4_subgroup_classes,
};
use genset_lab_core::genset::max_minimal_genset_size;
use genset_lab_core::group::catalog::*;
use genset_lab_core::group::{coset_action, is_primitive, length, ActionInstance, Caps, GroupHandle};
use genset_lab_core::lie::{
    check_omega_bound, check_saxl_whiston, projective_group, semilinear_group, LieGroupSpec,
};
use rayon::prelude::*;
use serde_json::json;
use std::time::Instant;

/// Builds a group together with a normal subgroup of it.
type PairBuilder = fn() -> genset_lab_core::Result<(GroupHandle, GroupHandle)>;
/// A value known through an isomorphism, with its description.
type KnownValue = Option<(&'static str, u64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Formulas,
    Genset,
    Actions,
    Lie,
    All,
}

type Run = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub struct Job {
    pub id: String,
    pub criteria: &'static [u8],
    pub anchor: &'static str,
    pub kind: &'static str,
    run: Run,
}

fn job(
    id: impl Into<String>,
    criteria: &'static [u8],
    anchor: &'static str,
    kind: &'static str,
    run: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
) -> Job {
    Job {
        id: id.into(),
        criteria,
        anchor,
        kind,
        run: Box::new(run),
    }
}

impl Job {
    pub fn run(&self, timings: bool) -> Record {
        let start = Instant::now();
        let result = (self.run)();
        let mut record = Record::from_result(&self.id, self.criteria, self.anchor, self.kind, result);
        if timings {
            record.elapsed_ms = Some((start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
        }
        record
    }
}

/// Parameters of the formula sweeps.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FormulaParams {
    pub metacyclic_limit: usize,
    pub goursat_n: Vec<u64>,
}

impl Default for FormulaParams {
    fn default() -> Self {
        Self {
            metacyclic_limit: 200,
            goursat_n: vec![2, 6, 30],
        }
    }
}

pub fn catalog(suite: Suite) -> Vec<Job> {
    match suite {
        Suite::Formulas => formula_jobs(&FormulaParams::default()),
        Suite::Genset => genset_jobs(),
        Suite::Actions => action_jobs(),
        Suite::Lie => lie_jobs(),
        Suite::All => {
            let mut jobs = formula_jobs(&FormulaParams::default());
            jobs.extend(genset_jobs());
            jobs.extend(action_jobs());
            jobs.extend(lie_jobs());
            jobs
        }
    }
}

pub fn run_jobs(jobs: &[Job], timings: bool) -> Vec<Record> {
    jobs.par_iter().map(|j| j.run(timings)).collect()
}

pub fn run_suite(suite: Suite, timings: bool) -> ReportDocument {
    let records = run_jobs(&catalog(suite), timings);
    ReportDocument::new(json!({"command": "suite", "suite": suite, "timings": timings}), records)
}

/// Adds `name: data[key] = expected` to an outcome.
fn expect(outcome: &mut Outcome, name: &str, key: &str, expected: u64) {
    let value = outcome.data.get(key).and_then(|v| v.as_u64()).unwrap_or(u64::MAX);
    outcome.checks.push(Check::eq(name.to_string(), value, expected));
}

pub const LENGTH_ANCHOR: &str = "length of S_n equals floor((3n - 1)/2) minus the number of ones in binary n";
pub const GOURSAT_ANCHOR: &str =
    "maximal subgroups of H x C_n (H <= S4) number |M(H)| + |M(C_n)| + sum over p | n of (|Hom(H, C_p)| - 1), at most 9 + omega(n)";
pub const METACYCLIC_ANCHOR: &str =
    "C_m : C_n has at most m + omega(n) maximal subgroups, C_m : (C_n x C_2) at most 2m + omega(n) + 2";
pub const CONSTANTS_ANCHOR: &str = "arithmetic of the constants in the general bounds";
pub const PI_ANCHOR: &str = "prime-counting estimate pi(n) > n / ln n";

pub fn formula_jobs(params: &FormulaParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    for (n, expected) in [(2u64, 1u64), (3, 2), (4, 4), (5, 5), (6, 6)] {
        jobs.push(job(format!("length/S{n}"), &[1], LENGTH_ANCHOR, "count", move || {
            let l = length(&symmetric(n as usize)?)?;
            let formula = length_formula_sn(n)?;
            let checks = vec![
                Check::eq("length(S_n) by lattice = formula", l.length as u64, formula),
                Check::eq("length(S_n) = tabulated value", l.length as u64, expected),
            ];
            let data = json!({
                "n": n,
                "length": l.length,
                "formula": formula,
                "binary_ones": binary_ones(n),
                "chain_orders": l.chain_orders,
            });
            Ok(Outcome::new(checks, data))
        }));
    }
    for &n in &params.goursat_n {
        for class in 0..11 {
            jobs.push(job(
                format!("goursat/n={n}/class{}", class + 1),
                &[5],
                GOURSAT_ANCHOR,
                "count",
                move || {
                    let classes = s4_subgroup_classes()?;
                    let (label, h) = classes.get(class).ok_or_else(|| {
                        genset_lab_core::Error::Precondition(format!("S4 has {} subgroup classes", classes.len()))
                    })?;
                    let report = goursat_maximal_count(label, h, n)?;
                    let mut checks = report.checks.clone();
                    if h.order()? == 24 && n == 6 {
                        let count = report.oracle.unwrap_or(0);
                        checks.push(Check::eq("|M(S4 x C6)| = 11", count, 11u64));
                        checks.push(Check::eq("S4 x C6 attains 9 + omega(6)", count, report.bound));
                    }
                    Ok(Outcome::new(checks, &report))
                },
            ));
        }
    }
    let limit = params.metacyclic_limit;
    jobs.push(job(format!("metacyclic/mn<={limit}"), &[6], METACYCLIC_ANCHOR, "count", move || {
        let sweep = metacyclic_sweep(limit)?;
        let mut checks = sweep.checks.clone();
        checks.push(Check::int(
            "groups checked",
            sweep.groups_checked as u64,
            genset_lab_core::check::Relation::Gt,
            0u64,
        ));
        Ok(Outcome::new(checks, &sweep))
    }));
    jobs.push(job("constants/audit", &[11], CONSTANTS_ANCHOR, "verification", || {
        Ok(Outcome::new(constants_audit(), json!(null)))
    }));
    for n in [17usize, 1000, 1_000_000] {
        jobs.push(job(format!("constants/prime-counting/n={n}"), &[11], PI_ANCHOR, "verification", move || {
            Ok(Outcome::new(check_pi_bound(n)?, json!({"n": n})))
        }));
    }
    jobs
}

pub const WHISTON_ANCHOR: &str = "m(S_n) = n - 1 and m(A_n) = n - 2";
pub const INVARIANTS_ANCHOR: &str = "d <= m <= length and m <= 10^10 delta^10";
pub const NILPOTENT_ANCHOR: &str = "for nilpotent G, m(G) = delta(G) and d(G) = max_p d(G_p)";

type Build = fn() -> genset_lab_core::Result<GroupHandle>;

pub fn genset_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    let whiston: [(&str, Build, u64, bool); 5] = [
        ("S4", || symmetric(4), 3, true),
        ("S5", || symmetric(5), 4, true),
        ("A5", || alternating(5), 3, true),
        ("A6", || alternating(6), 4, true),
        ("S6", || symmetric(6), 5, false),
    ];
    for (label, build, m, gating) in whiston {
        let anchor = if gating { WHISTON_ANCHOR } else { "m(S_n) = n - 1 (S6, beyond the required range)" };
        jobs.push(job(format!("whiston/{label}"), &[2, 11], anchor, "invariants", move || {
            let (report, mut outcome) = invariants_outcome(&build()?)?;
            outcome.checks.push(Check::holds("m computed exhaustively", report.m_exact));
            outcome.checks.push(Check::eq(format!("m({label})"), report.m as u64, m));
            if label == "S4" {
                expect(&mut outcome, "d(S4)", "d", 2);
                expect(&mut outcome, "delta(S4)", "delta", 3);
                expect(&mut outcome, "length(S4)", "length", 4);
            }
            if label == "S6" {
                expect(&mut outcome, "length(S6)", "length", 6);
            }
            Ok(outcome)
        }));
    }
    jobs.push(job("invariants/C6", &[11], INVARIANTS_ANCHOR, "invariants", || {
        let (_, mut outcome) = invariants_outcome(&cyclic(6)?)?;
        for (key, value) in [("d", 1), ("m", 2), ("delta", 2), ("length", 2)] {
            expect(&mut outcome, &format!("{key}(C6)"), key, value);
        }
        Ok(outcome)
    }));
    // (label, group, d, m)
    let nilpotent: [(&str, Build, u64, u64); 5] = [
        ("C12", || cyclic(12), 1, 2),
        ("C2^4", || elementary_abelian(2, 4), 4, 4),
        ("D8 x C9", || direct_product(&dihedral(4)?, &cyclic(9)?), 2, 3),
        ("Q8 x C3", || direct_product(&quaternion()?, &cyclic(3)?), 2, 3),
        ("C30", || cyclic(30), 1, 3),
    ];
    for (label, build, d, m) in nilpotent {
        jobs.push(job(format!("nilpotent/{label}"), &[9, 11], NILPOTENT_ANCHOR, "invariants", move || {
            let (report, mut outcome) = invariants_outcome(&build()?)?;
            outcome.checks.push(Check::holds("group is nilpotent", report.nilpotent));
            outcome.checks.push(Check::holds("m computed exhaustively", report.m_exact));
            expect(&mut outcome, &format!("d({label})"), "d", d);
            expect(&mut outcome, &format!("m({label})"), "m", m);
            Ok(outcome)
        }));
    }
    jobs
}

pub const CHAIN_ANCHOR: &str = "B <= H <= I <= length(G) and m(G) <= length(G)";
pub const COSET_ANCHOR: &str =
    "B <= H <= I <= length(G) on every faithful primitive coset action, with H <= 177 r^8 + omega(f)";
pub const QUOTIENT_ANCHOR: &str = "H(G) <= H(N) + omega(|G:N|) for N normal in G with G/N cyclic";
pub const HEIGHT_ANCHOR: &str = "H <= 177 r^8 + omega(f) for primitive groups of Lie type of rank r over GF(p^f)";

fn lie(n: usize, p: u32, f: u32) -> genset_lab_core::Result<LieGroupSpec> {
    LieGroupSpec::new(n, p, f)
}

pub fn action_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    let natural: Vec<(String, Build)> = vec![
        ("S2".into(), || symmetric(2)),
        ("S3".into(), || symmetric(3)),
        ("S4".into(), || symmetric(4)),
        ("S5".into(), || symmetric(5)),
        ("S6".into(), || symmetric(6)),
        ("A3".into(), || alternating(3)),
        ("A4".into(), || alternating(4)),
        ("A5".into(), || alternating(5)),
        ("A6".into(), || alternating(6)),
        ("D8".into(), || dihedral(4)),
        ("F21".into(), || frobenius(7, 2)),
    ];
    for (label, build) in natural {
        jobs.push(job(format!("chain/{label}/natural"), &[7], CHAIN_ANCHOR, "base", move || {
            let group = build()?;
            let action = ActionInstance::natural(&group)?;
            let opts = ActionOptions {
                route: StabilizerRoute::Auto,
                with_m: true,
                point_stabilizer_order: None,
            };
            let mut outcome = action_outcome(&label, &action, &Metadata::default(), &opts)?;
            if label == "S4" {
                for (key, value) in [("b", 3), ("h", 3), ("i", 3), ("rc_upper", 4)] {
                    expect(&mut outcome, &format!("{key}(S4 natural)"), key, value);
                }
            }
            if label == "D8" {
                for (key, value) in [("h", 2), ("i", 2), ("rc_upper", 3)] {
                    expect(&mut outcome, &format!("{key}(D8 on the square)"), key, value);
                }
            }
            Ok(outcome)
        }));
    }
    // (label, group, faithful primitive actions on maximal-subgroup cosets, rank, f)
    let cosets: [(&str, Build, u64, u32, u64); 5] = [
        ("A5", || alternating(5), 3, 1, 1),
        ("S5", || symmetric(5), 3, 1, 1),
        ("PSL_2(7)", || projective_group(&lie(2, 7, 1)?), 3, 1, 1),
        ("PSL_2(8)", || projective_group(&lie(2, 2, 3)?), 3, 1, 3),
        ("PSL_2(9)", || projective_group(&lie(2, 3, 2)?), 5, 1, 2),
    ];
    for (label, build, expected, rank, f) in cosets {
        jobs.push(job(format!("chain/{label}/maximal-cosets"), &[7, 11], COSET_ANCHOR, "base", move || {
            coset_catalog(label, &build()?, expected, rank, f)
        }));
    }
    let quotients: [(&str, PairBuilder); 7] = [
        ("S4 > A4", || Ok((symmetric(4)?, alternating(4)?))),
        ("C6 > C3", || {
            let g = cyclic(6)?;
            let n = GroupHandle::close(&[g.generators()[0].pow(2)])?;
            Ok((g, n))
        }),
        ("D8 > C4", || {
            let g = dihedral(4)?;
            let n = GroupHandle::close(&[g.generators()[0].clone()])?;
            Ok((g, n))
        }),
        ("S5 > A5", || Ok((symmetric(5)?, alternating(5)?))),
        ("PSigmaL_2(9) > PSL_2(9)", || {
            let s = lie(2, 3, 2)?;
            Ok((semilinear_group(&s)?, projective_group(&s)?))
        }),
        ("PGammaL_2(8) > PSL_2(8)", || {
            let s = lie(2, 2, 3)?;
            Ok((semilinear_group(&s)?, projective_group(&s)?))
        }),
        ("F21 > C7", || {
            let g = frobenius(7, 2)?;
            let n = GroupHandle::close(&[g.generators()[0].clone()])?;
            Ok((g, n))
        }),
    ];
    for (label, build) in quotients {
        jobs.push(job(format!("cyclic-quotient/{label}"), &[8], QUOTIENT_ANCHOR, "base", move || {
            let (g, n) = build()?;
            let action = ActionInstance::natural(&g)?;
            let mut outcome = cyclic_quotient_outcome(&action, &n)?;
            if let Some(obj) = outcome.data.as_object_mut() {
                obj.insert("degree".into(), json!(g.degree()));
                obj.insert("group_order".into(), json!(g.order()?.to_string()));
            }
            Ok(outcome)
        }));
    }
    // (n, p, f, route): natural actions on projective points.
    let height: [(usize, u32, u32, StabilizerRoute); 8] = [
        (2, 2, 2, StabilizerRoute::Auto),
        (2, 5, 1, StabilizerRoute::Auto),
        (2, 7, 1, StabilizerRoute::Auto),
        (2, 2, 3, StabilizerRoute::Auto),
        (2, 3, 2, StabilizerRoute::Auto),
        (3, 2, 1, StabilizerRoute::Auto),
        (3, 3, 1, StabilizerRoute::Auto),
        (2, 2, 6, StabilizerRoute::Chain),
    ];
    for (n, p, f, route) in height {
        let spec = match lie(n, p, f) {
            Ok(s) => s,
            Err(_) => continue,
        };
        jobs.push(job(format!("height-bound/{spec}/projective"), &[11], HEIGHT_ANCHOR, "base", move || {
            let group = projective_group(&spec)?;
            let action = ActionInstance::natural(&group)?;
            let metadata = Metadata {
                rank: Some(spec.rank() as u32),
                field_degree: Some(u64::from(spec.f)),
            };
            let opts = ActionOptions {
                route,
                with_m: false,
                point_stabilizer_order: None,
            };
            let mut outcome = action_outcome(&spec.to_string(), &action, &metadata, &opts)?;
            outcome.checks.push(Check::holds("action is primitive", is_primitive(&action)?));
            if route != StabilizerRoute::Chain {
                let chain = base_invariants(&action, StabilizerRoute::Chain)?;
                expect(&mut outcome, "B by stabilizer chains", "b", chain.b as u64);
                expect(&mut outcome, "H by stabilizer chains", "h", chain.h as u64);
                expect(&mut outcome, "I by stabilizer chains", "i", chain.i as u64);
            }
            Ok(outcome)
        }));
    }
    jobs
}

fn coset_catalog(label: &str, group: &GroupHandle, expected: u64, rank: u32, f: u64) -> Result<Outcome> {
    let metadata = Metadata {
        rank: Some(rank),
        field_degree: Some(f),
    };
    let ell = length(group)?.length;
    let m = max_minimal_genset_size(group)?;
    let mut checks = vec![
        Check::holds("m computed exhaustively", m.exact),
        Check::le("m(G) <= length(G)", m.value as u64, ell as u64),
    ];
    let mut actions = Vec::new();
    let mut excluded = Vec::new();
    for (k, sub) in maximal_subgroup_classes(group)?.iter().enumerate() {
        let action = coset_action(group, sub)?;
        let tag = format!("cosets of class {} (order {})", k + 1, sub.order()?);
        if !action.is_faithful() {
            excluded.push(tag);
            continue;
        }
        let opts = ActionOptions {
            route: StabilizerRoute::Auto,
            with_m: false,
            point_stabilizer_order: Some(sub.order()?),
        };
        let outcome = action_outcome(label, &action, &metadata, &opts)?;
        checks.push(Check::holds(format!("{tag}: primitive"), is_primitive(&action)?));
        for mut c in outcome.checks {
            c.name = format!("{tag}: {}", c.name);
            checks.push(c);
        }
        actions.push(outcome.data);
    }
    checks.push(Check::eq("faithful primitive coset actions", actions.len() as u64, expected));
    let data = json!({
        "group": label,
        "order": group.order()?.to_string(),
        "length": ell,
        "m": m.value,
        "actions": actions,
        "excluded": excluded,
    });
    Ok(Outcome::new(checks, data))
}

pub const SAXL_ANCHOR: &str = "2 + omega(f) <= m(PSL_2(p^f)) <= max(6, omega(f) + 2)";
pub const GENSET_ANCHOR: &str =
    "PSL_n(p^f) has a minimal generating set of size 2r + omega(f) built from root and torus elements";
pub const OMEGA_ANCHOR: &str = "omega(|PSL_n(q)|) >= max(1, (r - 1)/2) + omega(f)";
pub const ZSIGMONDY_ANCHOR: &str =
    "p^i - 1 has a primitive prime divisor except for (p, i) = (2, 6) and i = 2 with p + 1 a power of 2";

pub fn lie_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    // (p, f, value known through an isomorphism, if any)
    let saxl: [(u32, u32, KnownValue); 5] = [
        (2, 2, Some(("PSL_2(4) = A5", 3))),
        (5, 1, Some(("PSL_2(5) = A5", 3))),
        (7, 1, None),
        (2, 3, None),
        (3, 2, Some(("PSL_2(9) = A6", 4))),
    ];
    for (p, f, known) in saxl {
        let spec = lie(2, p, f).expect("valid");
        jobs.push(job(format!("saxl-whiston/{spec}"), &[3], SAXL_ANCHOR, "invariants", move || {
            let report = check_saxl_whiston(&spec)?;
            let mut checks = report.checks.clone();
            if let Some((name, m)) = known {
                checks.push(Check::eq(format!("m agrees with {name}"), report.m as u64, m));
            }
            Ok(Outcome::new(checks, &report))
        }));
    }
    // (n, p, f, expected order of the generated group, if tabulated)
    let constructions: [(usize, u32, u32, Option<u64>); 12] = [
        (2, 2, 6, Some(262_080)),
        (3, 2, 2, Some(20_160)),
        (2, 2, 2, Some(60)),
        (2, 2, 3, Some(504)),
        (2, 3, 2, Some(360)),
        (2, 2, 4, Some(4080)),
        (2, 3, 3, Some(9828)),
        (2, 7, 2, Some(58_800)),
        (3, 2, 1, Some(168)),
        (3, 3, 1, Some(5616)),
        (4, 2, 1, Some(20_160)),
        (3, 2, 6, None),
    ];
    for (n, p, f, order) in constructions {
        let spec = lie(n, p, f).expect("valid");
        jobs.push(job(format!("lie-genset/{spec}"), &[4], GENSET_ANCHOR, "verification", move || {
            let mut outcome = construct_outcome(&spec, Caps::default())?;
            if let Some(order) = order {
                let generated = outcome.data["verification"]["generated_order"]
                    .as_str()
                    .and_then(|s| s.parse::<u64>().ok())
                    .unwrap_or(0);
                outcome.checks.push(Check::eq(format!("|<X>| = {order}"), generated, order));
            }
            Ok(outcome)
        }));
    }
    for (n, p, f) in [(2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 2, 4), (2, 3, 3), (2, 2, 6), (4, 2, 1)] {
        let spec = lie(n, p, f).expect("valid");
        jobs.push(job(format!("omega/{spec}"), &[10], OMEGA_ANCHOR, "verification", move || {
            let report = check_omega_bound(&spec)?;
            Ok(Outcome::new(report.checks.clone(), &report))
        }));
    }
    jobs.push(job("zsigmondy/p<=7,i<=12", &[10], ZSIGMONDY_ANCHOR, "verification", zsigmondy_sweep));
    jobs
}

fn zsigmondy_sweep() -> Result<Outcome> {
    let mut empty = Vec::new();
    let mut disagreements = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for i in 2..=12u32 {
            let ppd = zsigmondy_ppd(p, i)?;
            // A prime r divides p^i - 1 primitively exactly when p has order i mod r.
            let primitive: Vec<u64> = factorize(checked_pow(p, i)? - 1)
                .primes()
                .filter(|&r| multiplicative_order(p % r, r) == u64::from(i))
                .collect();
            let agrees = match ppd {
                Some(r) => primitive.contains(&r),
                None => primitive.is_empty(),
            };
            if !agrees {
                disagreements.push((p, i));
            }
            if ppd.is_none() {
                empty.push((p, i));
            }
        }
    }
    let mut expected = vec![(2u64, 6u32)];
    expected.extend([2u64, 3, 5, 7].into_iter().filter(|p| (p + 1).is_power_of_two()).map(|p| (p, 2)));
    expected.sort_unstable();
    let checks = vec![
        Check::holds("ppd agrees with the multiplicative-order oracle", disagreements.is_empty()),
        Check::holds(format!("no ppd exactly at {expected:?}"), empty == expected),
    ];
    Ok(Outcome::new(
        checks,
        json!({"empty": empty, "expected_empty": expected, "disagreements": disagreements}),
    ))
}
