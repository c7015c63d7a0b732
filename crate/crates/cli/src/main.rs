use clap::{Args, Parser, Subcommand, ValueEnum};
use genset_lab::commands::{action_outcome, construct_outcome, cyclic_quotient_outcome, invariants_outcome, maximal_coset_action, ActionOptions};
use genset_lab::error::{CliError, Result};
use genset_lab::report::{Record, ReportDocument};
use genset_lab::spec::GroupSpecDocument;
use genset_lab::suite::{self, FormulaParams, Suite};
use genset_lab_core::base::StabilizerRoute;
use genset_lab_core::group::{ActionInstance, Caps};
use genset_lab_core::lie::LieGroupSpec;
use serde::Serialize;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact verification of minimal generating set and base invariants of
/// small finite groups.
#[derive(Parser)]
#[command(name = "genset-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Report encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time per record (reports then differ between runs).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Args, Serialize)]
struct CapArgs {
    /// Largest group whose elements are enumerated.
    #[arg(long, global = true, default_value_t = Caps::default().closure)]
    closure_cap: usize,
    /// Largest permutation degree.
    #[arg(long, global = true, default_value_t = Caps::default().degree)]
    degree_cap: usize,
    /// Largest group whose subgroup lattice is built.
    #[arg(long, global = true, default_value_t = Caps::default().lattice)]
    lattice_cap: usize,
    /// Search nodes allowed for m(G) on groups of order above 1000.
    #[arg(long, global = true, default_value_t = Caps::default().node_budget)]
    node_budget: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            closure: self.closure_cap,
            degree: self.degree_cap,
            lattice: self.lattice_cap,
            node_budget: self.node_budget,
            ..Caps::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Route {
    Auto,
    Elements,
    Chain,
}

impl From<Route> for StabilizerRoute {
    fn from(r: Route) -> Self {
        match r {
            Route::Auto => StabilizerRoute::Auto,
            Route::Elements => StabilizerRoute::Elements,
            Route::Chain => StabilizerRoute::Chain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum Family {
    /// Type A: PSL_n(p^f).
    A,
}

#[derive(Subcommand)]
enum Command {
    /// d, m, delta and length of a group, with witnesses.
    Invariants {
        /// Group-spec document (JSON).
        spec: PathBuf,
    },
    /// B, H, I and the relational-complexity bound of a faithful action.
    Action {
        spec: PathBuf,
        /// Act on the cosets of the K-th conjugacy class of maximal
        /// subgroups (1-indexed, by increasing order) instead of on points.
        #[arg(long, value_name = "K")]
        coset: Option<usize>,
        /// How pointwise stabilizers are computed.
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        stabilizers: Route,
        /// Normal subgroup with cyclic quotient: also check
        /// H(G) <= H(N) + omega(|G:N|).
        #[arg(long, value_name = "SPEC")]
        normal: Option<PathBuf>,
    },
    /// The root and torus generating set of PSL_n(p^f), verified.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        f: u32,
    },
    /// Subgroup-count formulas against exhaustive counts.
    Formulas {
        #[arg(long, default_value_t = 200)]
        metacyclic_limit: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,6,30")]
        goursat_n: Vec<u64>,
    },
    /// Run the acceptance catalog.
    Suite {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

fn timed(timings: bool, f: impl FnOnce() -> Record) -> Record {
    let start = std::time::Instant::now();
    let mut record = f();
    if timings {
        record.elapsed_ms = Some((start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
    }
    record
}

fn run(cli: &Cli) -> Result<ReportDocument> {
    let caps = cli.caps.caps();
    let timings = cli.output.timings;
    match &cli.command {
        Command::Invariants { spec } => {
            let doc = GroupSpecDocument::load(spec)?;
            let label = doc.label();
            let record = timed(timings, || {
                let result = doc
                    .build(caps)
                    .and_then(|built| Ok(invariants_outcome(&built.group)?.1));
                Record::from_result(format!("invariants/{label}"), &[], suite::INVARIANTS_ANCHOR, "invariants", result)
            });
            let input = json!({"command": "invariants", "spec": doc, "caps": cli.caps});
            Ok(ReportDocument::new(input, vec![record]))
        }
        Command::Action {
            spec,
            coset,
            stabilizers,
            normal,
        } => {
            let doc = GroupSpecDocument::load(spec)?;
            let normal_doc = normal.as_deref().map(GroupSpecDocument::load).transpose()?;
            let label = doc.label();
            let mut records = Vec::new();
            let built = doc.build(caps);
            let action = built.as_ref().map_err(clone_err).and_then(|b| match coset {
                Some(k) => Ok(maximal_coset_action(&b.group, *k)?),
                None => Ok((ActionInstance::natural(&b.group)?, 1)),
            });
            let where_ = coset.map_or("natural".to_string(), |k| format!("cosets-{k}"));
            records.push(timed(timings, || {
                let result = action.as_ref().map_err(clone_err).and_then(|(action, stab)| {
                    let b = built.as_ref().map_err(clone_err)?;
                    let opts = ActionOptions {
                        route: (*stabilizers).into(),
                        with_m: false,
                        point_stabilizer_order: coset.map(|_| *stab),
                    };
                    action_outcome(&label, action, &b.metadata, &opts)
                });
                Record::from_result(format!("action/{label}/{where_}"), &[], suite::CHAIN_ANCHOR, "base", result)
            }));
            if let Some(ndoc) = &normal_doc {
                let nlabel = ndoc.label();
                records.push(timed(timings, || {
                    let result = action.as_ref().map_err(clone_err).and_then(|(action, _)| {
                        let n = ndoc.build(caps)?;
                        cyclic_quotient_outcome(action, &n.group)
                    });
                    Record::from_result(
                        format!("cyclic-quotient/{label} > {nlabel}"),
                        &[],
                        suite::QUOTIENT_ANCHOR,
                        "base",
                        result,
                    )
                }));
            }
            let input = json!({
                "command": "action",
                "spec": doc,
                "coset": coset,
                "stabilizers": stabilizers,
                "normal": normal_doc,
                "caps": cli.caps,
            });
            Ok(ReportDocument::new(input, records))
        }
        Command::Construct { family, n, p, f } => {
            let record = timed(timings, || {
                let result = LieGroupSpec::new(*n, *p, *f)
                    .map_err(CliError::from)
                    .and_then(|spec| construct_outcome(&spec, caps));
                Record::from_result(
                    format!("construct/A/n={n},p={p},f={f}"),
                    &[],
                    suite::GENSET_ANCHOR,
                    "verification",
                    result,
                )
            });
            let input = json!({"command": "construct", "family": family, "n": n, "p": p, "f": f, "caps": cli.caps});
            Ok(ReportDocument::new(input, vec![record]))
        }
        Command::Formulas {
            metacyclic_limit,
            goursat_n,
        } => {
            let params = FormulaParams {
                metacyclic_limit: *metacyclic_limit,
                goursat_n: goursat_n.clone(),
            };
            let records = suite::run_jobs(&suite::formula_jobs(&params), timings);
            Ok(ReportDocument::new(json!({"command": "formulas", "params": params}), records))
        }
        Command::Suite { suite } => Ok(suite::run_suite(*suite, timings)),
    }
}

/// Errors are not `Clone`; a shared failure is re-raised by message with
/// its exit-code class kept.
fn clone_err(e: &CliError) -> CliError {
    match e {
        CliError::Core(c) => CliError::Core(c.clone()),
        other => CliError::Parse(other.to_string()),
    }
}

fn emit(cli: &Cli, doc: &ReportDocument) -> Result<()> {
    let text = match cli.output.format {
        Format::Json => doc.to_json()?,
        Format::Csv => doc.to_csv()?,
    };
    match &cli.output.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    genset_lab::configure_threads();
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|doc| {
        emit(&cli, &doc)?;
        Ok(doc)
    });
    match outcome {
        Ok(doc) => {
            eprintln!("{}", doc.summary);
            ExitCode::from(doc.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
