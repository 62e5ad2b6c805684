//! Conflict detection over mined habits.
//!
//! Habits are clustered by location, swept into groups of co-active habits
//! of distinct residents, pruned by temporal proximity, and the survivors
//! are classified by the information gain of their attribute values.

mod detect;
mod overlap;
mod score;

pub use detect::{
    class_counts, consistency_table, detect, score_group, ConflictReport, GroupKey, Scores,
};
pub use overlap::{
    cluster_by_location, find_overlap_groups, temporal_proximity, HabitSymbol, OverlapGroup,
    Polarity,
};
pub use score::{
    classify, entropy, gain, max_entropy, ConflictClass, ConsistencyTable, DISTRIBUTION_TOLERANCE,
    ZERO_GAIN,
};

use crate::habit::ServiceUsageHabit;

/// Every overlap group of a habit database, location by location.
pub fn overlap_groups(habits: &[ServiceUsageHabit]) -> Vec<OverlapGroup> {
    cluster_by_location(habits)
        .values()
        .flat_map(|cluster| find_overlap_groups(cluster))
        .collect()
}
