//! Mixed preferences: a conflict is possible but far from certain.

use conflict_lens::conflict::{classify, gain, max_entropy, ConsistencyTable};

fn main() -> conflict_lens::Result<()> {
    let users = vec!["R1".to_string(), "R2".into(), "R3".into()];
    let values = vec!["Fox".to_string(), "MTV".into(), "Discovery".into()];
    let rows = vec![
        vec![0.5, 0.4, 0.1],
        vec![0.25, 0.45, 0.3],
        vec![0.3, 0.1, 0.6],
    ];
    let table = ConsistencyTable::from_rows(users, values, rows)?;
    let g = gain(&table);
    let e_max = max_entropy(3)?;
    println!("E(channel) = {:.3}", table.entropy());
    println!("E(channel | user) = {:.3}", table.conditional_entropy());
    println!("G(channel | user) = {g:.3} of at most {e_max:.3}");
    println!(
        "strong from {:.3}, tau from {:.3}",
        e_max / 2.0,
        e_max / 8.0
    );
    println!("class: {}", classify(g, e_max, 3)?);

    // row counts work too; heavier rows weigh more in the mixture
    let counted = ConsistencyTable::from_counts(
        vec!["R1".into(), "R2".into()],
        vec!["Fox".into(), "MTV".into()],
        vec![vec![18.0, 2.0], vec![1.0, 4.0]],
    )?;
    println!(
        "counted table gain {:.3}, mixture {:?}",
        gain(&counted),
        counted.mixture()
    );
    Ok(())
}
