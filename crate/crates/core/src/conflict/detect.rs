use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::overlap::{temporal_proximity, OverlapGroup};
use super::score::{classify, gain, max_entropy, ConflictClass, ConsistencyTable};
use crate::error::{Error, Result};
use crate::habit::AttributeKey;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub entropy: f64,
    pub max_entropy: f64,
    pub gain: f64,
    pub value_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConflictReport {
    pub group: OverlapGroup,
    /// Absent for pruned groups.
    pub scores: Option<Scores>,
    pub proximity: f64,
    pub class: ConflictClass,
    pub users: Vec<String>,
}

impl ConflictReport {
    /// Identity used to match reports against ground truth.
    pub fn key(&self) -> GroupKey {
        GroupKey {
            location: self.group.location.clone(),
            attribute: self.group.attribute.clone(),
            residents: self.users.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupKey {
    pub location: String,
    pub attribute: AttributeKey,
    pub residents: BTreeSet<String>,
}

impl std::fmt::Display for GroupKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let residents: Vec<&str> = self.residents.iter().map(String::as_str).collect();
        write!(
            f,
            "{}/{}/{}",
            self.location,
            self.attribute,
            residents.join(",")
        )
    }
}

/// One row per resident over the values any member habit uses.
///
/// A resident with several habits in the group contributes the
/// support-weighted average of their distributions.
pub fn consistency_table(group: &OverlapGroup) -> Result<ConsistencyTable> {
    let mut per_user: BTreeMap<&str, BTreeMap<&str, f64>> = BTreeMap::new();
    let mut universe: BTreeSet<&str> = BTreeSet::new();
    for habit in &group.habits {
        let fsa = habit.fsa(&group.attribute).ok_or_else(|| {
            Error::InvalidTable(format!("habit `{}` lacks {}", habit.id, group.attribute))
        })?;
        let row = per_user.entry(&habit.user_id).or_default();
        for (value, score) in &fsa.values {
            universe.insert(value);
            *row.entry(value).or_default() += score * habit.support.max(1) as f64;
        }
    }
    let values: Vec<String> = universe.iter().map(|v| v.to_string()).collect();
    let users: Vec<String> = per_user.keys().map(|u| u.to_string()).collect();
    let rows = per_user
        .values()
        .map(|row| {
            let total: f64 = row.values().sum();
            universe
                .iter()
                .map(|v| row.get(v).copied().unwrap_or(0.0) / total)
                .collect()
        })
        .collect();
    ConsistencyTable::from_rows(users, values, rows)
}

/// Scores a single group without pruning.
pub fn score_group(group: &OverlapGroup) -> Result<(Scores, ConflictClass)> {
    let table = consistency_table(group)?;
    let n = table.value_count();
    let e_max = max_entropy(n)?;
    let g = gain(&table);
    let class = classify(g, e_max, n)?;
    Ok((
        Scores {
            entropy: table.entropy(),
            max_entropy: e_max,
            gain: g,
            value_count: n,
        },
        class,
    ))
}

/// Classifies every group, pruning those whose temporal proximity is below
/// `mu`. Reports come back ordered by location, attribute and span start.
pub fn detect(groups: &[OverlapGroup], mu: f64) -> Result<Vec<ConflictReport>> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidThreshold(mu));
    }
    let mut reports = groups
        .iter()
        .map(|group| {
            let proximity = temporal_proximity(group)?;
            let users = group.users().into_iter().map(str::to_string).collect();
            let (scores, class) = if proximity < mu {
                (None, ConflictClass::Pruned)
            } else {
                let (scores, class) = score_group(group)?;
                (Some(scores), class)
            };
            Ok(ConflictReport {
                group: group.clone(),
                scores,
                proximity,
                class,
                users,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| {
        (
            &a.group.location,
            &a.group.attribute,
            a.group.span.start(),
            &a.users,
        )
            .cmp(&(
                &b.group.location,
                &b.group.attribute,
                b.group.span.start(),
                &b.users,
            ))
    });
    Ok(reports)
}

/// Report counts per class.
pub fn class_counts(reports: &[ConflictReport]) -> BTreeMap<ConflictClass, usize> {
    let mut counts = BTreeMap::new();
    for report in reports {
        *counts.entry(report.class).or_default() += 1;
    }
    counts
}
