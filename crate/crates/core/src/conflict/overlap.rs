//! Selection of overlapping habits: location clustering, the start/end
//! symbol sweep, and the temporal proximity of a group.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::habit::{AttributeKey, ServiceUsageHabit};
use crate::model::TimeInterval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    // End sorts first so touching windows are never co-active.
    End,
    Start,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HabitSymbol {
    pub habit: String,
    pub polarity: Polarity,
    pub time: i64,
}

impl HabitSymbol {
    fn order_key(&self) -> (i64, Polarity, &str) {
        (self.time, self.polarity, &self.habit)
    }
}

/// Habits of distinct residents that are in use at the same time, place and
/// attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapGroup {
    pub location: String,
    pub attribute: AttributeKey,
    pub habits: Vec<ServiceUsageHabit>,
    pub symbols: Vec<HabitSymbol>,
    pub span: TimeInterval,
}

impl OverlapGroup {
    /// Builds a group from its member habits, deriving symbols and span.
    pub fn new(
        location: &str,
        attribute: AttributeKey,
        mut habits: Vec<ServiceUsageHabit>,
    ) -> Result<Self> {
        habits.sort_by(|a, b| a.id.cmp(&b.id));
        habits.dedup_by(|a, b| a.id == b.id);
        let mut symbols: Vec<HabitSymbol> = habits
            .iter()
            .flat_map(|h| {
                [
                    HabitSymbol {
                        habit: h.id.clone(),
                        polarity: Polarity::Start,
                        time: h.window_start,
                    },
                    HabitSymbol {
                        habit: h.id.clone(),
                        polarity: Polarity::End,
                        time: h.window_end,
                    },
                ]
            })
            .collect();
        symbols.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        let first = symbols
            .first()
            .ok_or(Error::EmptyInput("overlap group without habits"))?;
        let last = symbols.last().expect("non-empty");
        let span = TimeInterval::new(first.time, last.time).map_err(|_| Error::DegenerateSpan)?;
        Ok(OverlapGroup {
            location: location.to_string(),
            attribute,
            habits,
            symbols,
            span,
        })
    }

    pub fn users(&self) -> BTreeSet<&str> {
        self.habits.iter().map(|h| h.user_id.as_str()).collect()
    }
}

/// Partitions habits by exact location name.
pub fn cluster_by_location(
    habits: &[ServiceUsageHabit],
) -> BTreeMap<String, Vec<ServiceUsageHabit>> {
    let mut clusters: BTreeMap<String, Vec<ServiceUsageHabit>> = BTreeMap::new();
    for habit in habits {
        clusters
            .entry(habit.location.clone())
            .or_default()
            .push(habit.clone());
    }
    clusters
}

/// Sweeps the time-ordered start/end symbols of one location's habits.
///
/// For every attribute, each maximal stretch during which at least two
/// residents have a habit in progress yields one group holding every habit
/// in progress at some point of that stretch. Habits never in progress
/// together with another resident's habit are left out.
pub fn find_overlap_groups(cluster: &[ServiceUsageHabit]) -> Vec<OverlapGroup> {
    let mut by_attribute: BTreeMap<AttributeKey, Vec<&ServiceUsageHabit>> = BTreeMap::new();
    for habit in cluster {
        for fsa in &habit.fsas {
            by_attribute.entry(fsa.key()).or_default().push(habit);
        }
    }

    let mut groups = Vec::new();
    for (attribute, habits) in by_attribute {
        let mut symbols: Vec<(i64, Polarity, usize)> = habits
            .iter()
            .enumerate()
            .flat_map(|(i, h)| {
                [
                    (h.window_start, Polarity::Start, i),
                    (h.window_end, Polarity::End, i),
                ]
            })
            .collect();
        symbols.sort();

        let mut active: BTreeSet<usize> = BTreeSet::new();
        let mut run: Option<BTreeSet<usize>> = None;
        let mut cursor = 0;
        while cursor < symbols.len() {
            let time = symbols[cursor].0;
            while cursor < symbols.len() && symbols[cursor].0 == time {
                let (_, polarity, i) = symbols[cursor];
                match polarity {
                    Polarity::Start => active.insert(i),
                    Polarity::End => active.remove(&i),
                };
                cursor += 1;
            }
            let residents: BTreeSet<&str> =
                active.iter().map(|&i| habits[i].user_id.as_str()).collect();
            if residents.len() >= 2 {
                run.get_or_insert_with(BTreeSet::new)
                    .extend(active.iter().copied());
            } else if let Some(members) = run.take() {
                let members = members.into_iter().map(|i| habits[i].clone()).collect();
                let location = &habits[0].location;
                groups.push(
                    OverlapGroup::new(location, attribute.clone(), members)
                        .expect("co-active habits"),
                );
            }
        }
    }
    groups
}

/// Average share of the group span during which each habit is in progress:
/// the integral of the in-progress count over the span divided by span
/// length times habit count.
pub fn temporal_proximity(group: &OverlapGroup) -> Result<f64> {
    let span = group.span.duration();
    let n = group.habits.len();
    if span <= 0 || n == 0 {
        return Err(Error::DegenerateSpan);
    }
    let mut active: i64 = 0;
    let mut covered: i64 = 0;
    let mut previous = group.symbols[0].time;
    for symbol in &group.symbols {
        covered += active * (symbol.time - previous);
        previous = symbol.time;
        match symbol.polarity {
            Polarity::Start => active += 1,
            Polarity::End => active -= 1,
        }
    }
    Ok(covered as f64 / (span as f64 * n as f64))
}
