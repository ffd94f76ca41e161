//! Discrepancy evaluation, the Beck–Fiala solver and lower-bound oracles.

mod beck_fiala;
mod coloring;
mod exact;
mod spectral;

pub use beck_fiala::{beck_fiala, beck_fiala_checked, beck_fiala_report, BeckFialaReport};
pub use coloring::{eval_discrepancy, Coloring, Evaluation};
pub use exact::{exact_discrepancy, exact_discrepancy_capped, herdisc_search, HerdiscBound, DEFAULT_EXACT_CAP};
pub use spectral::{spectral_lower_bound, SPECTRAL_WORK_CAP};
