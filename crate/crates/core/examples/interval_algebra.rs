//! Allen relations between usage windows, and where two windows intersect.

use conflict_lens::model::{allen_relation, temporal_intersection, TimeInterval};
use conflict_lens::AllenRelation;

fn main() -> conflict_lens::Result<()> {
    let evening = TimeInterval::new(20 * 60, 21 * 60)?;
    let others = [
        (
            "20:45-21:45",
            TimeInterval::new(20 * 60 + 45, 21 * 60 + 45)?,
        ),
        ("21:00-22:00", TimeInterval::new(21 * 60, 22 * 60)?),
        (
            "20:15-20:30",
            TimeInterval::new(20 * 60 + 15, 20 * 60 + 30)?,
        ),
        ("20:00-21:00", evening),
    ];
    for (label, other) in others {
        let relation = allen_relation(&evening, &other);
        let shared = temporal_intersection(&evening, &other).map_or(0, |i| i.duration());
        println!(
            "20:00-21:00 {relation:?} {label}: overlap={} shared={shared} min, inverse {:?}",
            relation.is_overlap(),
            relation.inverse()
        );
    }
    println!("{} relations in total", AllenRelation::ALL.len());

    // a usage that runs past midnight is split into per-day pieces
    let late = TimeInterval::new(86_400 - 600, 86_400 + 1200)?;
    for piece in late.split_at_midnight() {
        println!("piece {}..{}", piece.start(), piece.end());
    }
    Ok(())
}
