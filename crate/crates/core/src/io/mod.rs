//! Log ingestion, synthetic data and persisted documents.

pub mod log;
pub mod store;
pub mod synthetic;

pub use log::{parse_log, print_log, ParseOptions, ParsedLog};
pub use store::{load_habits, load_reports, load_truth, save_habits, save_reports, save_truth};
pub use synthetic::{generate_synthetic, SyntheticDataset, SyntheticProfile, TruthEntry};
