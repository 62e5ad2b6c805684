//! How tightly two residents' habits coincide, and what pruning does with it.

use std::collections::BTreeMap;

use conflict_lens::conflict::{detect, temporal_proximity, OverlapGroup};
use conflict_lens::habit::{AttributeKey, FuzzyServiceAttribute};
use conflict_lens::ServiceUsageHabit;

fn habit(user: &str, start: i64, end: i64, channel: &str) -> ServiceUsageHabit {
    ServiceUsageHabit {
        id: format!("{user}/TV"),
        user_id: user.into(),
        fsas: vec![FuzzyServiceAttribute {
            fsa_id: format!("{user}/TV/channel"),
            name: "channel".into(),
            service_id: "TV".into(),
            values: BTreeMap::from([(channel.into(), 1.0)]),
        }],
        window_start: start,
        start_tolerance: 0,
        window_end: end,
        end_tolerance: 0,
        location: "living".into(),
        support: 20,
    }
}

fn main() -> conflict_lens::Result<()> {
    let key = AttributeKey::new("TV", "channel");
    let loose = OverlapGroup::new(
        "living",
        key.clone(),
        vec![
            habit("R1", 1200, 1260, "Fox"),
            habit("R2", 1245, 1305, "MTV"),
        ],
    )?;
    let tight = OverlapGroup::new(
        "den",
        key,
        vec![
            habit("R3", 1080, 1140, "Fox"),
            habit("R4", 1090, 1150, "MTV"),
        ],
    )?;
    println!(
        "20:00-21:00 vs 20:45-21:45: {:.3}",
        temporal_proximity(&loose)?
    );
    println!(
        "18:00-19:00 vs 18:10-19:10: {:.3}",
        temporal_proximity(&tight)?
    );
    for mu in [0.0, 0.6, 0.9] {
        let classes: Vec<String> = detect(&[loose.clone(), tight.clone()], mu)?
            .iter()
            .map(|r| format!("{}={}", r.group.location, r.class))
            .collect();
        println!("mu={mu}: {}", classes.join(" "));
    }
    Ok(())
}
