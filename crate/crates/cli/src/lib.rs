//! Front end for the genset-lab verifier: group-spec documents, report
//! documents, the subcommand record builders and the acceptance suite.

pub mod commands;
pub mod error;
pub mod report;
pub mod spec;
pub mod suite;

/// Sizes the global thread pool from `GENSET_LAB_THREADS`; an absent or
/// unparsable value keeps the rayon default.
pub fn configure_threads() {
    let threads = std::env::var("GENSET_LAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    if let Some(n) = threads {
        // Fails only if the pool was already built, which leaves it as is.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
