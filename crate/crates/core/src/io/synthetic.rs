//! Seeded multi-resident event streams with planted conflicts.
//!
//! Every template fires once per simulated day. Attribute values follow a
//! fixed quota per template (the count of each value is its probability
//! times the number of days, largest remainder rounding) in a seeded random
//! order, so a noise-free run reproduces the template distributions exactly.

use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conflict::{classify, gain, max_entropy, ConflictClass, ConsistencyTable, GroupKey};
use crate::error::{Error, Result};
use crate::habit::AttributeKey;
use crate::io::log::sort_events;
use crate::model::{
    timestamp, AttrValue, ServiceEvent, TimeInterval, MINUTES_PER_DAY, SECONDS_PER_DAY,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HabitTemplate {
    pub resident: String,
    pub service_id: String,
    pub location: String,
    pub start_minute: i64,
    pub end_minute: i64,
    #[serde(default)]
    pub start_tolerance: i64,
    #[serde(default)]
    pub end_tolerance: i64,
    /// attribute -> value -> probability
    pub attributes: BTreeMap<String, BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedConflict {
    pub location: String,
    pub service_id: String,
    pub attribute: String,
    pub residents: BTreeSet<String>,
    pub class: ConflictClass,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    /// Extra uniform jitter on every start and end, in minutes.
    #[serde(default)]
    pub jitter_minutes: i64,
    #[serde(default)]
    pub skip_probability: f64,
    /// Chance that a usage is preceded by a burst of short value changes.
    #[serde(default)]
    pub surf_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticProfile {
    pub seed: u64,
    pub days: u32,
    #[serde(default = "default_start_date")]
    pub start_date: NaiveDate,
    pub residents: Vec<String>,
    pub templates: Vec<HabitTemplate>,
    #[serde(default)]
    pub planted: Vec<PlantedConflict>,
    #[serde(default)]
    pub noise: NoiseParams,
}

fn default_start_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2011, 6, 15).expect("valid date")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthEntry {
    pub key: GroupKey,
    pub class: ConflictClass,
    /// Gain of the template distributions.
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset {
    pub events: Vec<ServiceEvent>,
    pub truth: Vec<TruthEntry>,
}

impl SyntheticProfile {
    pub fn new(seed: u64, days: u32) -> Self {
        SyntheticProfile {
            seed,
            days,
            start_date: default_start_date(),
            residents: Vec::new(),
            templates: Vec::new(),
            planted: Vec::new(),
            noise: NoiseParams::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidProfile(msg));
        if self.days == 0 {
            return fail("at least one day required".into());
        }
        let residents: BTreeSet<&str> = self.residents.iter().map(String::as_str).collect();
        if !(0.0..=1.0).contains(&self.noise.skip_probability)
            || !(0.0..=1.0).contains(&self.noise.surf_probability)
        {
            return fail("noise probabilities must lie in [0, 1]".into());
        }
        if self.noise.jitter_minutes < 0 {
            return fail("negative jitter".into());
        }
        for t in &self.templates {
            if !residents.contains(t.resident.as_str()) {
                return fail(format!("template resident `{}` not listed", t.resident));
            }
            let slack_start = t.start_tolerance + self.noise.jitter_minutes;
            let slack_end = t.end_tolerance + self.noise.jitter_minutes;
            if t.start_tolerance < 0 || t.end_tolerance < 0 {
                return fail(format!(
                    "negative tolerance in template of `{}`",
                    t.resident
                ));
            }
            if !(t.start_minute - slack_start >= 0
                && t.end_minute + slack_end <= MINUTES_PER_DAY
                && t.start_minute + slack_start < t.end_minute - slack_end)
            {
                return fail(format!(
                    "window {}..{} of `{}` leaves 00:00-24:00 or collapses under jitter",
                    t.start_minute, t.end_minute, t.resident
                ));
            }
            if t.attributes.is_empty() {
                return fail(format!("template of `{}` has no attributes", t.resident));
            }
            for (name, dist) in &t.attributes {
                let total: f64 = dist.values().sum();
                if dist.is_empty() || dist.values().any(|p| *p < 0.0) || (total - 1.0).abs() > 1e-9
                {
                    return fail(format!(
                        "distribution of `{name}` for `{}` is not a probability vector",
                        t.resident
                    ));
                }
            }
        }
        Ok(())
    }

    fn template_for(&self, resident: &str, planted: &PlantedConflict) -> Result<&HabitTemplate> {
        let mut matches = self.templates.iter().filter(|t| {
            t.resident == resident
                && t.location == planted.location
                && t.service_id == planted.service_id
                && t.attributes.contains_key(&planted.attribute)
        });
        match (matches.next(), matches.next()) {
            (Some(t), None) => Ok(t),
            (None, _) => Err(Error::InvalidProfile(format!(
                "planted conflict at {} lists `{resident}` without a matching template",
                planted.location
            ))),
            (Some(_), Some(_)) => Err(Error::InvalidProfile(format!(
                "`{resident}` has several templates for {}.{} at {}",
                planted.service_id, planted.attribute, planted.location
            ))),
        }
    }

    /// Gain and class the planted residents' template distributions induce.
    pub fn planted_outcome(&self, planted: &PlantedConflict) -> Result<(f64, ConflictClass)> {
        if planted.residents.len() < 2 {
            return Err(Error::InvalidProfile(
                "planted conflict needs two residents".into(),
            ));
        }
        let templates = planted
            .residents
            .iter()
            .map(|r| self.template_for(r, planted))
            .collect::<Result<Vec<_>>>()?;
        let universe: BTreeSet<&String> = templates
            .iter()
            .flat_map(|t| {
                t.attributes[&planted.attribute]
                    .iter()
                    .filter(|(_, p)| **p > 0.0)
                    .map(|(v, _)| v)
            })
            .collect();
        let rows = templates
            .iter()
            .map(|t| {
                let dist = &t.attributes[&planted.attribute];
                universe
                    .iter()
                    .map(|v| dist.get(*v).copied().unwrap_or(0.0))
                    .collect()
            })
            .collect();
        let table = ConsistencyTable::from_rows(
            planted.residents.iter().cloned().collect(),
            universe.into_iter().cloned().collect(),
            rows,
        )?;
        let n = table.value_count();
        let g = gain(&table);
        Ok((g, classify(g, max_entropy(n)?, n)?))
    }

    /// Keeps only `residents`, re-deriving every planted class.
    ///
    /// Planted conflicts left with fewer than two residents are dropped.
    pub fn restricted(&self, residents: &[String]) -> Result<SyntheticProfile> {
        let keep: BTreeSet<&String> = residents.iter().collect();
        let mut out = self.clone();
        out.residents.retain(|r| keep.contains(r));
        out.templates.retain(|t| keep.contains(&t.resident));
        out.planted = Vec::new();
        for planted in &self.planted {
            let members: BTreeSet<String> = planted
                .residents
                .iter()
                .filter(|r| keep.contains(r))
                .cloned()
                .collect();
            if members.len() < 2 {
                continue;
            }
            let mut p = PlantedConflict {
                residents: members,
                ..planted.clone()
            };
            p.class = out.planted_outcome(&p)?.1;
            out.planted.push(p);
        }
        Ok(out)
    }
}

/// Value sequence of length `days` honouring the distribution's quotas.
fn quota_schedule(dist: &BTreeMap<String, f64>, days: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    let exact: Vec<(&String, f64)> = dist.iter().map(|(v, p)| (v, p * days as f64)).collect();
    let mut counts: Vec<usize> = exact.iter().map(|(_, x)| x.floor() as usize).collect();
    let mut remaining = days - counts.iter().sum::<usize>().min(days);
    let mut order: Vec<usize> = (0..exact.len()).collect();
    // largest remainder first, ties by value name
    order.sort_by(|&a, &b| {
        let ra = exact[a].1 - exact[a].1.floor();
        let rb = exact[b].1 - exact[b].1.floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if remaining == 0 {
            break;
        }
        counts[i] += 1;
        remaining -= 1;
    }
    let mut schedule: Vec<String> = exact
        .iter()
        .zip(&counts)
        .flat_map(|((v, _), &c)| std::iter::repeat_n((*v).clone(), c))
        .collect();
    schedule.truncate(days);
    schedule.shuffle(rng);
    schedule
}

/// Generates the event stream and ground truth of a profile.
///
/// Identical profiles (seed included) give identical output. Every planted
/// conflict is checked against the class its template distributions
/// actually induce.
pub fn generate_synthetic(profile: &SyntheticProfile) -> Result<SyntheticDataset> {
    profile.validate()?;

    let mut truth = Vec::with_capacity(profile.planted.len());
    for planted in &profile.planted {
        let (g, class) = profile.planted_outcome(planted)?;
        if class != planted.class {
            return Err(Error::InvalidProfile(format!(
                "planted {} conflict at {} on {}.{} has gain {g:.4}, which classifies as {class}",
                planted.class, planted.location, planted.service_id, planted.attribute
            )));
        }
        truth.push(TruthEntry {
            key: GroupKey {
                location: planted.location.clone(),
                attribute: AttributeKey::new(&planted.service_id, &planted.attribute),
                residents: planted.residents.clone(),
            },
            class,
            gain: g,
        });
    }
    truth.sort_by(|a, b| a.key.cmp(&b.key));

    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let days = profile.days as usize;
    let base = timestamp(profile.start_date, chrono::NaiveTime::MIN);
    let jitter = |rng: &mut ChaCha8Rng, tol: i64| {
        if tol > 0 {
            rng.gen_range(-tol..=tol)
        } else {
            0
        }
    };
    let mut events = Vec::new();

    for template in &profile.templates {
        let schedules: BTreeMap<&String, Vec<String>> = template
            .attributes
            .iter()
            .map(|(name, dist)| (name, quota_schedule(dist, days, &mut rng)))
            .collect();
        let start_tol = template.start_tolerance + profile.noise.jitter_minutes;
        let end_tol = template.end_tolerance + profile.noise.jitter_minutes;

        for day in 0..days {
            if profile.noise.skip_probability > 0.0 && rng.gen_bool(profile.noise.skip_probability)
            {
                continue;
            }
            let start_min = template.start_minute + jitter(&mut rng, start_tol);
            let end_min = template.end_minute + jitter(&mut rng, end_tol);
            let day_base = base + day as i64 * SECONDS_PER_DAY;
            let start = day_base + start_min * 60;
            let end = day_base + end_min * 60;
            let attributes: BTreeMap<String, AttrValue> = schedules
                .iter()
                .map(|(name, schedule)| ((*name).clone(), AttrValue::parse(&schedule[day])))
                .collect();

            let mut settle_at = start;
            if profile.noise.surf_probability > 0.0 && rng.gen_bool(profile.noise.surf_probability)
            {
                let hops = rng.gen_range(1..=2i64);
                settle_at = start + 15 * hops;
                for hop in 0..hops {
                    let mut transient = attributes.clone();
                    for (name, value) in transient.iter_mut() {
                        let choices: Vec<&String> = template.attributes[name].keys().collect();
                        *value = AttrValue::parse(choices[rng.gen_range(0..choices.len())]);
                    }
                    events.push(ServiceEvent {
                        service_id: template.service_id.clone(),
                        attributes: transient,
                        interval: TimeInterval::new(start + 15 * hop, start + 15 * (hop + 1))?,
                        location: template.location.clone(),
                        user_id: template.resident.clone(),
                    });
                }
            }
            events.push(ServiceEvent {
                service_id: template.service_id.clone(),
                attributes,
                interval: TimeInterval::new(settle_at, end)?,
                location: template.location.clone(),
                user_id: template.resident.clone(),
            });
        }
    }
    sort_events(&mut events);
    Ok(SyntheticDataset { events, truth })
}

/// Ready-made profiles mirroring the motivating TV scenarios.
pub mod presets {
    use super::*;

    fn one_hot(value: &str) -> BTreeMap<String, f64> {
        BTreeMap::from([(value.to_string(), 1.0)])
    }

    pub fn distribution(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(v, p)| (v.to_string(), *p)).collect()
    }

    pub fn tv_template(
        resident: &str,
        location: &str,
        start: i64,
        end: i64,
        channels: BTreeMap<String, f64>,
    ) -> HabitTemplate {
        HabitTemplate {
            resident: resident.into(),
            service_id: "TV".into(),
            location: location.into(),
            start_minute: start,
            end_minute: end,
            start_tolerance: 0,
            end_tolerance: 0,
            attributes: BTreeMap::from([("channel".to_string(), channels)]),
        }
    }

    fn residents(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("R{i}")).collect()
    }

    /// Four residents with one-hot channel habits; R1-R3 overlap in the
    /// morning, R4 watches alone later.
    pub fn definite_conflict(seed: u64, days: u32) -> SyntheticProfile {
        let mut p = SyntheticProfile::new(seed, days);
        p.residents = residents(4);
        p.templates = vec![
            tv_template("R1", "living", 490, 550, one_hot("Fox")),
            tv_template("R2", "living", 480, 540, one_hot("MTV")),
            tv_template("R3", "living", 510, 560, one_hot("Discovery")),
            tv_template("R4", "living", 600, 660, one_hot("MTV")),
        ];
        p.planted = vec![PlantedConflict {
            location: "living".into(),
            service_id: "TV".into(),
            attribute: "channel".into(),
            residents: ["R1", "R2", "R3"].iter().map(|s| s.to_string()).collect(),
            class: ConflictClass::Strong,
        }];
        p
    }

    /// Same windows as [`definite_conflict`] with mixed channel preferences.
    pub fn probable_conflict(seed: u64, days: u32) -> SyntheticProfile {
        let mut p = definite_conflict(seed, days);
        let mixes = [
            distribution(&[("Fox", 0.5), ("MTV", 0.4), ("Discovery", 0.1)]),
            distribution(&[("Fox", 0.25), ("MTV", 0.45), ("Discovery", 0.3)]),
            distribution(&[("Fox", 0.3), ("MTV", 0.1), ("Discovery", 0.6)]),
        ];
        for (template, mix) in p.templates.iter_mut().zip(mixes) {
            template.attributes.insert("channel".into(), mix);
        }
        p.planted[0].class = ConflictClass::Weak;
        p
    }

    /// Channel mixes for each class, for groups of two or three residents.
    pub fn class_mixes(class: ConflictClass, residents: usize) -> Vec<BTreeMap<String, f64>> {
        let pick = |rows: &[&[(&str, f64)]]| {
            rows.iter()
                .take(residents)
                .map(|r| distribution(r))
                .collect()
        };
        match class {
            ConflictClass::Strong => {
                pick(&[&[("Fox", 1.0)], &[("MTV", 1.0)], &[("Discovery", 1.0)]])
            }
            // a third resident dilutes the gain, so the pair is pushed further apart
            ConflictClass::Tau if residents >= 3 => pick(&[
                &[("Fox", 0.9), ("MTV", 0.1)],
                &[("Fox", 0.1), ("MTV", 0.9)],
                &[("Fox", 0.5), ("MTV", 0.5)],
            ]),
            ConflictClass::Tau => {
                pick(&[&[("Fox", 0.8), ("MTV", 0.2)], &[("Fox", 0.2), ("MTV", 0.8)]])
            }
            ConflictClass::Weak => pick(&[
                &[("Fox", 0.5), ("MTV", 0.4), ("Discovery", 0.1)],
                &[("Fox", 0.25), ("MTV", 0.45), ("Discovery", 0.3)],
                &[("Fox", 0.3), ("MTV", 0.1), ("Discovery", 0.6)],
            ]),
            ConflictClass::NoConflict | ConflictClass::Pruned => {
                vec![distribution(&[("Fox", 0.6), ("Discovery", 0.4)]); residents]
            }
        }
    }

    /// One planted group of the benchmark.
    #[derive(Debug, Clone, Copy)]
    pub struct GroupSpec {
        pub class: ConflictClass,
        pub residents: usize,
        /// Minutes the second resident's window trails the first one's.
        pub offset: i64,
    }

    /// Places each group in a room of its own, with one-hour windows starting
    /// between 06:00 and 11:30 and staggered by the group's offset.
    pub fn planted_benchmark(seed: u64, days: u32, groups: &[GroupSpec]) -> SyntheticProfile {
        let max_residents = groups.iter().map(|g| g.residents).max().unwrap_or(2);
        let mut p = SyntheticProfile::new(seed, days);
        p.residents = residents(max_residents);
        for (i, spec) in groups.iter().enumerate() {
            let location = format!("room{i:02}");
            let slot_start = 360 + 30 * (i % 12) as i64;
            let mixes = class_mixes(spec.class, spec.residents);
            let mut members = BTreeSet::new();
            for (r, mix) in mixes.into_iter().enumerate() {
                let start = slot_start + spec.offset * r as i64;
                let resident = format!("R{}", r + 1);
                p.templates
                    .push(tv_template(&resident, &location, start, start + 60, mix));
                members.insert(resident);
            }
            p.planted.push(PlantedConflict {
                location,
                service_id: "TV".into(),
                attribute: "channel".into(),
                residents: members,
                class: spec.class,
            });
        }
        p
    }

    fn template(
        resident: &str,
        service: &str,
        attribute: &str,
        location: &str,
        window: (i64, i64),
        value: &str,
    ) -> HabitTemplate {
        HabitTemplate {
            resident: resident.into(),
            service_id: service.into(),
            location: location.into(),
            start_minute: window.0,
            end_minute: window.1,
            start_tolerance: 0,
            end_tolerance: 0,
            attributes: BTreeMap::from([(attribute.to_string(), one_hot(value))]),
        }
    }

    /// Four residents sharing a TV, a radio, an air conditioner and a lamp.
    /// Each added resident brings contention over at least one more service.
    pub fn household(seed: u64, days: u32) -> SyntheticProfile {
        let mut p = SyntheticProfile::new(seed, days);
        p.residents = residents(4);
        p.templates = vec![
            tv_template("R1", "living", 1200, 1260, one_hot("Fox")),
            tv_template("R2", "living", 1210, 1270, one_hot("MTV")),
            tv_template("R4", "living", 1220, 1280, one_hot("MTV")),
            template("R1", "Radio", "station", "kitchen", (420, 450), "news"),
            template("R3", "Radio", "station", "kitchen", (425, 455), "music"),
            template("R2", "AC", "mode", "bedroom", (1320, 1380), "cool"),
            template("R3", "AC", "mode", "bedroom", (1330, 1390), "heat"),
            template("R3", "Lamp", "level", "study", (1080, 1140), "dim"),
            template("R4", "Lamp", "level", "study", (1090, 1150), "bright"),
        ];
        let planted =
            |location: &str, service: &str, attribute: &str, members: &[&str]| PlantedConflict {
                location: location.into(),
                service_id: service.into(),
                attribute: attribute.into(),
                residents: members.iter().map(|s| s.to_string()).collect(),
                class: ConflictClass::Strong,
            };
        p.planted = vec![
            planted("living", "TV", "channel", &["R1", "R2", "R4"]),
            planted("kitchen", "Radio", "station", &["R1", "R3"]),
            planted("bedroom", "AC", "mode", &["R2", "R3"]),
            planted("study", "Lamp", "level", &["R3", "R4"]),
        ];
        p
    }

    /// 24 groups: 8 strong, 6 tau, 6 weak and 4 without conflict, of two
    /// and three residents alternately.
    pub fn mixed_benchmark(seed: u64, days: u32) -> SyntheticProfile {
        let plan = [
            (ConflictClass::Strong, 8),
            (ConflictClass::Tau, 6),
            (ConflictClass::Weak, 6),
            (ConflictClass::NoConflict, 4),
        ];
        let specs: Vec<GroupSpec> = plan
            .iter()
            .flat_map(|&(class, n)| std::iter::repeat_n(class, n))
            .enumerate()
            .map(|(i, class)| GroupSpec {
                class,
                residents: 2 + i % 2,
                offset: 5 * (i % 3) as i64,
            })
            .collect();
        planted_benchmark(seed, days, &specs)
    }

    /// Strong pairs only; every other pair trails by 45 minutes (proximity
    /// 4/7), the rest by 10 (proximity 6/7).
    pub fn pruning_benchmark(seed: u64, days: u32, groups: usize) -> SyntheticProfile {
        let specs: Vec<GroupSpec> = (0..groups)
            .map(|i| GroupSpec {
                class: ConflictClass::Strong,
                residents: 2,
                offset: if i % 2 == 0 { 45 } else { 10 },
            })
            .collect();
        planted_benchmark(seed, days, &specs)
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn definite_profile_truth() {
        let data = generate_synthetic(&definite_conflict(7, 10)).unwrap();
        assert_eq!(data.truth.len(), 1);
        assert_eq!(data.truth[0].class, ConflictClass::Strong);
        assert_eq!(data.events.len(), 40);
    }

    #[test]
    fn single_resident_has_no_planted_conflicts() {
        let p = definite_conflict(7, 10)
            .restricted(&["R1".to_string()])
            .unwrap();
        let data = generate_synthetic(&p).unwrap();
        assert!(data.truth.is_empty());
        assert_eq!(data.events.len(), 10);
    }

    #[test]
    fn probable_profile_gain() {
        let data = generate_synthetic(&probable_conflict(7, 20)).unwrap();
        assert!((data.truth[0].gain - 0.185).abs() < 1e-3);
        assert_eq!(data.truth[0].class, ConflictClass::Weak);
    }

    #[test]
    fn wrong_planted_class_is_rejected() {
        let mut p = probable_conflict(7, 20);
        p.planted[0].class = ConflictClass::Strong;
        assert!(matches!(
            generate_synthetic(&p),
            Err(Error::InvalidProfile(_))
        ));
    }

    #[test]
    fn windows_outside_the_day_are_rejected() {
        let mut p = definite_conflict(7, 10);
        p.templates[0].end_minute = 1500;
        assert!(generate_synthetic(&p).is_err());
        let mut p = definite_conflict(7, 10);
        p.templates[0].start_minute = 5;
        p.templates[0].start_tolerance = 10;
        assert!(generate_synthetic(&p).is_err());
    }

    #[test]
    fn same_seed_same_stream() {
        let mut p = probable_conflict(42, 30);
        p.noise = NoiseParams {
            jitter_minutes: 5,
            skip_probability: 0.1,
            surf_probability: 0.3,
        };
        let a = generate_synthetic(&p).unwrap();
        let b = generate_synthetic(&p).unwrap();
        assert_eq!(a.events, b.events);
        p.seed = 43;
        assert_ne!(generate_synthetic(&p).unwrap().events, a.events);
    }

    #[test]
    fn quotas_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let dist = distribution(&[("a", 0.5), ("b", 0.4), ("c", 0.1)]);
        let schedule = quota_schedule(&dist, 20, &mut rng);
        let count = |v: &str| schedule.iter().filter(|s| *s == v).count();
        assert_eq!((count("a"), count("b"), count("c")), (10, 8, 2));
        let thirds = distribution(&[("a", 1.0 / 3.0), ("b", 1.0 / 3.0), ("c", 1.0 / 3.0)]);
        assert_eq!(quota_schedule(&thirds, 10, &mut rng).len(), 10);
    }

    #[test]
    fn class_mixes_match_their_class() {
        for class in ConflictClass::SCORED {
            for residents in 2..=3 {
                let groups = [GroupSpec {
                    class,
                    residents,
                    offset: 5,
                }];
                let p = planted_benchmark(1, 20, &groups);
                generate_synthetic(&p).unwrap_or_else(|e| panic!("{class} x{residents}: {e}"));
            }
        }
    }
}
