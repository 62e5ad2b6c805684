//! Service usage habits: recurring daily windows of one resident's use of a
//! service, annotated with how consistently each attribute value is chosen.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{day_start, ServiceEvent, TimeInterval, MINUTES_PER_DAY};

/// Tolerance on consistency-score sums.
pub const SCORE_SUM_TOLERANCE: f64 = 1e-9;

/// Attribute used for services whose events carry no attribute values.
pub const STATE_ATTRIBUTE: &str = "state";

/// Rounds to 12 significant digits, the precision scores are stored with.
pub fn quantize_score(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// A service attribute qualified by the service that owns it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AttributeKey {
    pub service_id: String,
    pub name: String,
}

impl AttributeKey {
    pub fn new(service_id: &str, name: &str) -> Self {
        AttributeKey {
            service_id: service_id.to_string(),
            name: name.to_string(),
        }
    }
}

impl fmt::Display for AttributeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.service_id, self.name)
    }
}

/// An attribute together with the consistency score of every value the
/// resident has used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyServiceAttribute {
    pub fsa_id: String,
    pub name: String,
    pub service_id: String,
    pub values: BTreeMap<String, f64>,
}

impl FuzzyServiceAttribute {
    pub fn key(&self) -> AttributeKey {
        AttributeKey::new(&self.service_id, &self.name)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.values.is_empty() {
            return Err(format!("attribute `{}` has no values", self.name));
        }
        if let Some((v, s)) = self.values.iter().find(|(_, &s)| !(s > 0.0 && s <= 1.0)) {
            return Err(format!("score {s} of value `{v}` outside (0, 1]"));
        }
        let total: f64 = self.values.values().sum();
        if (total - 1.0).abs() > SCORE_SUM_TOLERANCE {
            return Err(format!(
                "scores of `{}` sum to {total}, expected 1",
                self.name
            ));
        }
        Ok(())
    }
}

/// Consistency scores from relative value frequencies over `events`.
///
/// Events must share user and service; events lacking `attribute` are
/// ignored.
pub fn mine_fsa(
    fsa_id: &str,
    attribute: &str,
    events: &[&ServiceEvent],
) -> Result<FuzzyServiceAttribute> {
    let first = events
        .first()
        .ok_or(Error::EmptyInput("no events for attribute"))?;
    if events
        .iter()
        .any(|e| e.user_id != first.user_id || e.service_id != first.service_id)
    {
        return Err(Error::InvalidDistribution(
            "attribute events span several users or services".into(),
        ));
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for event in events {
        if let Some(value) = event.attributes.get(attribute) {
            *counts.entry(value.label()).or_default() += 1;
        }
    }
    let total: usize = counts.values().sum();
    if total == 0 {
        return Err(Error::EmptyInput("no event carries the attribute"));
    }
    let values = counts
        .into_iter()
        .map(|(v, c)| (v, quantize_score(c as f64 / total as f64)))
        .collect();
    Ok(FuzzyServiceAttribute {
        fsa_id: fsa_id.to_string(),
        name: attribute.to_string(),
        service_id: first.service_id.clone(),
        values,
    })
}

/// A resident's recurring usage window, in minutes of the day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServiceUsageHabit {
    pub id: String,
    pub user_id: String,
    pub fsas: Vec<FuzzyServiceAttribute>,
    pub window_start: i64,
    pub start_tolerance: i64,
    pub window_end: i64,
    pub end_tolerance: i64,
    pub location: String,
    pub support: usize,
}

impl ServiceUsageHabit {
    pub fn window(&self) -> TimeInterval {
        TimeInterval::new(self.window_start, self.window_end).expect("validated habit window")
    }

    pub fn fsa(&self, key: &AttributeKey) -> Option<&FuzzyServiceAttribute> {
        self.fsas
            .iter()
            .find(|f| f.service_id == key.service_id && f.name == key.name)
    }

    pub fn services(&self) -> BTreeSet<&str> {
        self.fsas.iter().map(|f| f.service_id.as_str()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::InvalidHabit {
            id: self.id.clone(),
            reason,
        };
        if !(0 <= self.window_start
            && self.window_start < self.window_end
            && self.window_end <= MINUTES_PER_DAY)
        {
            return Err(fail(format!(
                "window {}..{} not inside one day with start before end",
                self.window_start, self.window_end
            )));
        }
        if self.start_tolerance < 0 || self.end_tolerance < 0 {
            return Err(fail("negative tolerance".into()));
        }
        if self.fsas.is_empty() {
            return Err(fail("no fuzzy service attributes".into()));
        }
        let mut keys = BTreeSet::new();
        for fsa in &self.fsas {
            if !keys.insert(fsa.key()) {
                return Err(fail(format!("attribute {} appears twice", fsa.key())));
            }
            fsa.validate().map_err(fail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MiningParams {
    /// A start further than this from the running cluster mean opens a new cluster.
    pub gap_minutes: f64,
    pub min_support: usize,
    /// Minimum intersection-over-union of two windows for a complex habit;
    /// values above 1 disable merging.
    pub complex_merge_overlap: f64,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            gap_minutes: 60.0,
            min_support: 5,
            complex_merge_overlap: 0.8,
        }
    }
}

struct Occurrence<'a> {
    start: f64,
    end: f64,
    event: &'a ServiceEvent,
}

/// Mines every resident's habits from a stabilized, binned event set.
///
/// Per (user, service, location), daily occurrences are sorted by start
/// minute and gap-clustered; clusters with enough support become habits
/// whose windows are the rounded cluster means and whose tolerances bound
/// every member. Same-resident habits of different services at one location
/// with near-identical windows are then merged into complex habits.
pub fn mine_habits(events: &[ServiceEvent], params: &MiningParams) -> Vec<ServiceUsageHabit> {
    let mut streams: BTreeMap<(&str, &str, &str), Vec<Occurrence<'_>>> = BTreeMap::new();
    for event in events {
        let day = day_start(event.start());
        streams
            .entry((&event.user_id, &event.service_id, &event.location))
            .or_default()
            .push(Occurrence {
                start: (event.start() - day) as f64 / 60.0,
                end: (event.interval.end() - day) as f64 / 60.0,
                event,
            });
    }

    let mut habits = Vec::new();
    for ((user, service, location), mut occurrences) in streams {
        occurrences.sort_by(|a, b| a.start.total_cmp(&b.start));
        for (index, cluster) in gap_clusters(&occurrences, params.gap_minutes)
            .into_iter()
            .enumerate()
        {
            if cluster.len() < params.min_support.max(1) {
                continue;
            }
            let id = format!("{user}/{service}/{location}#{index}");
            habits.push(habit_from_cluster(id, user, location, cluster));
        }
    }

    let mut habits = merge_complex(habits, params.complex_merge_overlap);
    habits.sort_by(|a, b| {
        (&a.location, &a.user_id, a.window_start, &a.id).cmp(&(
            &b.location,
            &b.user_id,
            b.window_start,
            &b.id,
        ))
    });
    habits
}

fn gap_clusters<'o, 'e>(occurrences: &'o [Occurrence<'e>], gap: f64) -> Vec<&'o [Occurrence<'e>]> {
    let mut clusters = Vec::new();
    let mut begin = 0;
    let mut sum = 0.0;
    for (i, occ) in occurrences.iter().enumerate() {
        if i > begin && occ.start - sum / (i - begin) as f64 > gap {
            clusters.push(&occurrences[begin..i]);
            begin = i;
            sum = 0.0;
        }
        sum += occ.start;
    }
    if begin < occurrences.len() {
        clusters.push(&occurrences[begin..]);
    }
    clusters
}

fn habit_from_cluster(
    id: String,
    user: &str,
    location: &str,
    cluster: &[Occurrence<'_>],
) -> ServiceUsageHabit {
    let n = cluster.len() as f64;
    let mean_start = cluster.iter().map(|o| o.start).sum::<f64>() / n;
    let mean_end = cluster.iter().map(|o| o.end).sum::<f64>() / n;
    let window_start = (mean_start.round() as i64).clamp(0, MINUTES_PER_DAY - 1);
    let window_end = (mean_end.round() as i64).clamp(window_start + 1, MINUTES_PER_DAY);
    let max_dev = |anchor: i64, pick: fn(&Occurrence<'_>) -> f64| {
        cluster
            .iter()
            .map(|o| (pick(o) - anchor as f64).abs())
            .fold(0.0, f64::max)
            .ceil() as i64
    };

    let members: Vec<&ServiceEvent> = cluster.iter().map(|o| o.event).collect();
    let names: BTreeSet<&str> = members
        .iter()
        .flat_map(|e| e.attributes.keys().map(String::as_str))
        .collect();
    let fsas = if names.is_empty() {
        vec![FuzzyServiceAttribute {
            fsa_id: format!("{id}/{STATE_ATTRIBUTE}"),
            name: STATE_ATTRIBUTE.into(),
            service_id: members[0].service_id.clone(),
            values: BTreeMap::from([("on".to_string(), 1.0)]),
        }]
    } else {
        names
            .into_iter()
            .map(|name| {
                mine_fsa(&format!("{id}/{name}"), name, &members)
                    .expect("cluster carries the attribute")
            })
            .collect()
    };

    ServiceUsageHabit {
        user_id: user.to_string(),
        fsas,
        window_start,
        start_tolerance: max_dev(window_start, |o| o.start),
        window_end,
        end_tolerance: max_dev(window_end, |o| o.end),
        location: location.to_string(),
        support: cluster.len(),
        id,
    }
}

fn window_iou(a: &ServiceUsageHabit, b: &ServiceUsageHabit) -> f64 {
    let inter = (a.window_end.min(b.window_end) - a.window_start.max(b.window_start)).max(0);
    let union = a.window_end.max(b.window_end) - a.window_start.min(b.window_start);
    inter as f64 / union as f64
}

fn merge_complex(habits: Vec<ServiceUsageHabit>, threshold: f64) -> Vec<ServiceUsageHabit> {
    if threshold > 1.0 {
        return habits;
    }
    let mut merged: Vec<ServiceUsageHabit> = Vec::with_capacity(habits.len());
    for habit in habits {
        let target = merged.iter_mut().find(|m| {
            m.user_id == habit.user_id
                && m.location == habit.location
                && m.services().is_disjoint(&habit.services())
                && window_iou(m, &habit) >= threshold
        });
        match target {
            Some(m) => {
                m.id = format!("{}+{}", m.id, habit.id);
                m.fsas.extend(habit.fsas);
                m.fsas.sort_by_key(FuzzyServiceAttribute::key);
                let start = m.window_start.min(habit.window_start);
                let end = m.window_end.max(habit.window_end);
                m.start_tolerance = (m.start_tolerance + m.window_start - start)
                    .max(habit.start_tolerance + habit.window_start - start);
                m.end_tolerance = (m.end_tolerance + end - m.window_end)
                    .max(habit.end_tolerance + end - habit.window_end);
                m.window_start = start;
                m.window_end = end;
                m.support = m.support.min(habit.support);
            }
            None => merged.push(habit),
        }
    }
    merged
}
