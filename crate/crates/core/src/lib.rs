//! A-priori detection of IoT service conflicts among the residents of a
//! smart home.
//!
//! The pipeline turns raw ON/OFF service logs into per-resident usage habits
//! and flags habits of different residents that compete for the same
//! service attribute at the same place and time:
//!
//! 1. [`io::parse_log`] reads whitespace-separated sensor logs into
//!    [`ServiceEvent`]s.
//! 2. [`preprocess`] settles rapid value changes and bins numeric values.
//! 3. [`habit::mine_habits`] extracts recurring usage windows with
//!    per-value consistency scores.
//! 4. [`conflict`] groups overlapping habits, prunes loosely coupled groups
//!    by temporal proximity and classifies the rest as strong, tau or weak
//!    conflicts from the information gain of their value distributions.
//!
//! [`eval`] measures detection quality against planted ground truth from
//! [`io::synthetic`].

pub mod config;
pub mod conflict;
pub mod error;
pub mod eval;
pub mod habit;
pub mod io;
pub mod model;
pub mod pipeline;
pub mod preprocess;

pub use conflict::{ConflictClass, ConflictReport, OverlapGroup};
pub use error::{Error, Result};
pub use habit::{FuzzyServiceAttribute, MiningParams, ServiceUsageHabit};
pub use model::{AllenRelation, AttrValue, ServiceEvent, TimeInterval};
