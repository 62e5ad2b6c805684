//! Recall per class as the proximity threshold rises. Writes plot data.

use conflict_lens::config::Config;
use conflict_lens::eval::{sweep_threshold, sweep_tsv};
use conflict_lens::io::generate_synthetic;
use conflict_lens::io::synthetic::presets;
use conflict_lens::pipeline;

fn main() -> conflict_lens::Result<()> {
    let data = generate_synthetic(&presets::mixed_benchmark(3, 20))?;
    let (_, groups) = pipeline::groups(&data.events, &Config::default())?;
    let mus: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let table = sweep_tsv(&sweep_threshold(&groups, &data.truth, &mus)?);
    print!("{table}");
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, &table)?;
        println!("wrote {path}");
    }
    Ok(())
}
