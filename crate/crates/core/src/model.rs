//! Services, service events and the interval algebra shared by every stage.
//!
//! Event timestamps are whole seconds on a naive local clock (no time zone),
//! counted from the Unix epoch. Habit windows reuse [`TimeInterval`] with
//! minute-of-day units; none of the algebra below depends on the unit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::{NaiveDate, NaiveDateTime, NaiveTime};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SECONDS_PER_DAY: i64 = 86_400;
pub const MINUTES_PER_DAY: i64 = 1_440;

/// Seconds since the Unix epoch on a naive local clock.
pub type Timestamp = i64;

pub fn timestamp(date: NaiveDate, time: NaiveTime) -> Timestamp {
    NaiveDateTime::new(date, time).and_utc().timestamp()
}

pub fn datetime(ts: Timestamp) -> NaiveDateTime {
    chrono::DateTime::from_timestamp(ts, 0)
        .expect("timestamp in chrono range")
        .naive_utc()
}

/// Start of the day containing `ts`.
pub fn day_start(ts: Timestamp) -> Timestamp {
    ts.div_euclid(SECONDS_PER_DAY) * SECONDS_PER_DAY
}

/// Closed interval with `start < end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct TimeInterval {
    start: i64,
    end: i64,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    start: i64,
    end: i64,
}

impl TryFrom<RawInterval> for TimeInterval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        TimeInterval::new(raw.start, raw.end)
    }
}

impl From<TimeInterval> for RawInterval {
    fn from(iv: TimeInterval) -> Self {
        RawInterval {
            start: iv.start,
            end: iv.end,
        }
    }
}

impl TimeInterval {
    pub fn new(start: i64, end: i64) -> Result<Self> {
        if start < end {
            Ok(TimeInterval { start, end })
        } else {
            Err(Error::InvalidInterval { start, end })
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.end
    }

    pub fn duration(&self) -> i64 {
        self.end - self.start
    }

    pub fn contains(&self, t: i64) -> bool {
        self.start <= t && t <= self.end
    }

    /// Splits an interval in seconds at every midnight it crosses.
    pub fn split_at_midnight(&self) -> Vec<TimeInterval> {
        let mut parts = Vec::new();
        let mut cursor = self.start;
        while cursor < self.end {
            let next_midnight = day_start(cursor) + SECONDS_PER_DAY;
            let stop = next_midnight.min(self.end);
            parts.push(TimeInterval {
                start: cursor,
                end: stop,
            });
            cursor = stop;
        }
        parts
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// The thirteen qualitative relations between two intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AllenRelation {
    Before,
    Meets,
    Overlaps,
    Starts,
    During,
    Finishes,
    Equals,
    FinishedBy,
    Contains,
    StartedBy,
    OverlappedBy,
    MetBy,
    After,
}

impl AllenRelation {
    pub const ALL: [AllenRelation; 13] = [
        AllenRelation::Before,
        AllenRelation::Meets,
        AllenRelation::Overlaps,
        AllenRelation::Starts,
        AllenRelation::During,
        AllenRelation::Finishes,
        AllenRelation::Equals,
        AllenRelation::FinishedBy,
        AllenRelation::Contains,
        AllenRelation::StartedBy,
        AllenRelation::OverlappedBy,
        AllenRelation::MetBy,
        AllenRelation::After,
    ];

    pub fn inverse(self) -> AllenRelation {
        use AllenRelation::*;
        match self {
            Before => After,
            Meets => MetBy,
            Overlaps => OverlappedBy,
            Starts => StartedBy,
            During => Contains,
            Finishes => FinishedBy,
            Equals => Equals,
            FinishedBy => Finishes,
            Contains => During,
            StartedBy => Starts,
            OverlappedBy => Overlaps,
            MetBy => Meets,
            After => Before,
        }
    }

    /// True when the two intervals share a stretch of positive duration.
    pub fn is_overlap(self) -> bool {
        !matches!(
            self,
            AllenRelation::Before
                | AllenRelation::Meets
                | AllenRelation::MetBy
                | AllenRelation::After
        )
    }
}

/// Relation of `a` with respect to `b`.
pub fn allen_relation(a: &TimeInterval, b: &TimeInterval) -> AllenRelation {
    use std::cmp::Ordering::*;
    use AllenRelation::*;

    if a.end < b.start {
        return Before;
    }
    if a.end == b.start {
        return Meets;
    }
    if b.end < a.start {
        return After;
    }
    if b.end == a.start {
        return MetBy;
    }
    match (a.start.cmp(&b.start), a.end.cmp(&b.end)) {
        (Equal, Equal) => Equals,
        (Equal, Less) => Starts,
        (Equal, Greater) => StartedBy,
        (Greater, Equal) => Finishes,
        (Less, Equal) => FinishedBy,
        (Greater, Less) => During,
        (Less, Greater) => Contains,
        (Less, Less) => Overlaps,
        (Greater, Greater) => OverlappedBy,
    }
}

/// Common stretch of two intervals; touching endpoints yield `None`.
pub fn temporal_intersection(a: &TimeInterval, b: &TimeInterval) -> Option<TimeInterval> {
    let start = a.start.max(b.start);
    let end = a.end.min(b.end);
    (start < end).then_some(TimeInterval { start, end })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceDescriptor {
    pub service_id: String,
    pub service_name: String,
    pub functions: BTreeSet<String>,
    pub qos_attributes: BTreeSet<String>,
}

impl ServiceDescriptor {
    pub fn new<F, Q>(
        service_id: &str,
        service_name: &str,
        functions: F,
        qos_attributes: Q,
    ) -> Result<Self>
    where
        F: IntoIterator,
        F::Item: Into<String>,
        Q: IntoIterator,
        Q::Item: Into<String>,
    {
        let functions: BTreeSet<String> = functions.into_iter().map(Into::into).collect();
        let qos_attributes: BTreeSet<String> = qos_attributes.into_iter().map(Into::into).collect();
        if functions.is_empty() || qos_attributes.is_empty() {
            return Err(Error::InvalidDescriptor(
                service_id.to_string(),
                "functions and QoS attributes must be non-empty".into(),
            ));
        }
        Ok(ServiceDescriptor {
            service_id: service_id.to_string(),
            service_name: service_name.to_string(),
            functions,
            qos_attributes,
        })
    }

    pub fn declares(&self, attribute: &str) -> bool {
        self.functions.contains(attribute) || self.qos_attributes.contains(attribute)
    }
}

/// Services of one home keyed by id.
#[derive(Debug, Clone, Default)]
pub struct ServiceCatalog {
    services: BTreeMap<String, ServiceDescriptor>,
}

impl ServiceCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, descriptor: ServiceDescriptor) -> Result<()> {
        if self.services.contains_key(&descriptor.service_id) {
            return Err(Error::DuplicateService(descriptor.service_id));
        }
        self.services
            .insert(descriptor.service_id.clone(), descriptor);
        Ok(())
    }

    pub fn get(&self, service_id: &str) -> Option<&ServiceDescriptor> {
        self.services.get(service_id)
    }

    pub fn validate(&self, event: &ServiceEvent) -> Result<()> {
        let descriptor = self
            .get(&event.service_id)
            .ok_or_else(|| Error::UnknownService(event.service_id.clone()))?;
        for attribute in event.attributes.keys() {
            if !descriptor.declares(attribute) {
                return Err(Error::UnknownAttribute {
                    service: event.service_id.clone(),
                    attribute: attribute.clone(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttrValue {
    Categorical(String),
    Numeric(f64),
}

impl AttrValue {
    /// Numeric when the token parses as a finite float.
    pub fn parse(token: &str) -> AttrValue {
        match token.parse::<f64>() {
            Ok(v) if v.is_finite() => AttrValue::Numeric(v),
            _ => AttrValue::Categorical(token.to_string()),
        }
    }

    pub fn as_numeric(&self) -> Option<f64> {
        match self {
            AttrValue::Numeric(v) => Some(*v),
            AttrValue::Categorical(_) => None,
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AttrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttrValue::Categorical(s) => f.write_str(s),
            AttrValue::Numeric(v) => write!(f, "{v}"),
        }
    }
}

/// One usage of a service by one resident at one location.
#[derive(Debug, Clone, PartialEq)]
pub struct ServiceEvent {
    pub service_id: String,
    pub attributes: BTreeMap<String, AttrValue>,
    pub interval: TimeInterval,
    pub location: String,
    pub user_id: String,
}

impl ServiceEvent {
    pub fn start(&self) -> Timestamp {
        self.interval.start()
    }

    /// Identity of the stream this event belongs to.
    pub fn stream_key(&self) -> (&str, &str, &str) {
        (&self.service_id, &self.user_id, &self.location)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(s: i64, e: i64) -> TimeInterval {
        TimeInterval::new(s, e).unwrap()
    }

    fn hm(h: i64, m: i64) -> i64 {
        h * 60 + m
    }

    #[test]
    fn rejects_empty_and_inverted() {
        assert!(TimeInterval::new(3, 3).is_err());
        assert!(TimeInterval::new(4, 3).is_err());
    }

    #[test]
    fn relation_examples() {
        let a = iv(hm(8, 10), hm(9, 10));
        let b = iv(hm(8, 0), hm(9, 0));
        assert_eq!(allen_relation(&a, &b), AllenRelation::OverlappedBy);
        assert_eq!(allen_relation(&iv(1, 2), &iv(1, 2)), AllenRelation::Equals);
        assert_eq!(allen_relation(&iv(1, 2), &iv(2, 3)), AllenRelation::Meets);
        assert_eq!(allen_relation(&iv(1, 2), &iv(3, 4)), AllenRelation::Before);
        assert_eq!(allen_relation(&iv(2, 3), &iv(1, 4)), AllenRelation::During);
        assert_eq!(allen_relation(&iv(1, 3), &iv(1, 4)), AllenRelation::Starts);
        assert_eq!(
            allen_relation(&iv(2, 4), &iv(1, 4)),
            AllenRelation::Finishes
        );
    }

    #[test]
    fn intersection_examples() {
        let x =
            temporal_intersection(&iv(hm(20, 0), hm(21, 0)), &iv(hm(20, 45), hm(21, 45))).unwrap();
        assert_eq!(x, iv(hm(20, 45), hm(21, 0)));
        assert_eq!(x.duration(), 15);
        assert_eq!(temporal_intersection(&iv(1, 2), &iv(3, 4)), None);
        let y =
            temporal_intersection(&iv(hm(18, 0), hm(19, 0)), &iv(hm(18, 10), hm(19, 10))).unwrap();
        assert_eq!(y.duration(), 50);
        assert_eq!(temporal_intersection(&iv(1, 2), &iv(2, 3)), None);
    }

    #[test]
    fn midnight_split() {
        let day = 10 * SECONDS_PER_DAY;
        let parts = TimeInterval::new(day - 600, day + 1200)
            .unwrap()
            .split_at_midnight();
        assert_eq!(parts, vec![iv(day - 600, day), iv(day, day + 1200)]);
        let whole = iv(day + 5, day + 50);
        assert_eq!(whole.split_at_midnight(), vec![whole]);
    }

    #[test]
    fn catalog_validation() {
        let mut catalog = ServiceCatalog::new();
        catalog
            .insert(ServiceDescriptor::new("5", "TV", ["channel"], ["volume"]).unwrap())
            .unwrap();
        assert!(catalog
            .insert(ServiceDescriptor::new("5", "TV2", ["channel"], ["volume"]).unwrap())
            .is_err());
        assert!(ServiceDescriptor::new("6", "X", Vec::<String>::new(), ["v"]).is_err());

        let mut event = ServiceEvent {
            service_id: "5".into(),
            attributes: BTreeMap::from([("channel".into(), AttrValue::parse("Fox"))]),
            interval: iv(0, 60),
            location: "living room".into(),
            user_id: "3".into(),
        };
        catalog.validate(&event).unwrap();
        event
            .attributes
            .insert("brightness".into(), AttrValue::Numeric(50.0));
        assert!(matches!(
            catalog.validate(&event),
            Err(Error::UnknownAttribute { .. })
        ));
        event.service_id = "9".into();
        assert!(matches!(
            catalog.validate(&event),
            Err(Error::UnknownService(_))
        ));
    }

    fn interval() -> impl Strategy<Value = TimeInterval> {
        (0i64..50, 1i64..20).prop_map(|(s, d)| iv(s, s + d))
    }

    proptest! {
        #[test]
        fn relation_is_unique_and_inverse(a in interval(), b in interval()) {
            let r = allen_relation(&a, &b);
            prop_assert_eq!(allen_relation(&b, &a), r.inverse());
            // the relation's defining predicate holds for exactly one variant
            let holding: Vec<_> = AllenRelation::ALL.iter().filter(|rel| {
                let (s1, e1, s2, e2) = (a.start(), a.end(), b.start(), b.end());
                match rel {
                    AllenRelation::Before => e1 < s2,
                    AllenRelation::Meets => e1 == s2,
                    AllenRelation::Overlaps => s1 < s2 && s2 < e1 && e1 < e2,
                    AllenRelation::Starts => s1 == s2 && e1 < e2,
                    AllenRelation::During => s2 < s1 && e1 < e2,
                    AllenRelation::Finishes => e1 == e2 && s2 < s1,
                    AllenRelation::Equals => s1 == s2 && e1 == e2,
                    AllenRelation::FinishedBy => e1 == e2 && s1 < s2,
                    AllenRelation::Contains => s1 < s2 && e2 < e1,
                    AllenRelation::StartedBy => s1 == s2 && e2 < e1,
                    AllenRelation::OverlappedBy => s2 < s1 && s1 < e2 && e2 < e1,
                    AllenRelation::MetBy => e2 == s1,
                    AllenRelation::After => e2 < s1,
                }
            }).collect();
            prop_assert_eq!(holding, vec![&r]);
        }

        #[test]
        fn intersection_properties(a in interval(), b in interval()) {
            let ab = temporal_intersection(&a, &b);
            prop_assert_eq!(ab, temporal_intersection(&b, &a));
            if let Some(x) = ab {
                prop_assert!(x.duration() <= a.duration().min(b.duration()));
            }
            prop_assert_eq!(ab.is_some(), allen_relation(&a, &b).is_overlap());
        }
    }
}
