//! Planting conflicts of every class and checking how many come back.

use conflict_lens::config::Config;
use conflict_lens::eval::evaluate;
use conflict_lens::io::generate_synthetic;
use conflict_lens::io::synthetic::presets;
use conflict_lens::pipeline;

fn main() -> conflict_lens::Result<()> {
    let mut profile = presets::mixed_benchmark(7, 30);
    profile.noise.jitter_minutes = 4;
    profile.noise.surf_probability = 0.2;
    let data = generate_synthetic(&profile)?;
    println!(
        "{} events, {} planted groups",
        data.events.len(),
        data.truth.len()
    );
    let reports = pipeline::run(&data.events, &Config::default(), 0.0)?;
    let metrics = evaluate(&reports, &data.truth)?;
    print!("{}", metrics.to_tsv());
    Ok(())
}
