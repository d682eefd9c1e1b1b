//! Loads a scene file and renders every pair, as the `render` subcommand does.
//!
//! `cargo run --example scene_batch -- [scene.toml] [out_dir]`

use std::path::PathBuf;

use anchor_rir::output::{run, RunOptions};
use anchor_rir::scene::{load_scene, OutputFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/two_mics.toml")
    });
    let mut scene = load_scene(&path)?;
    if let Some(dir) = args.next() {
        scene.config.output.directory = std::env::current_dir()?.join(dir);
    }
    scene.config.output.formats = vec![OutputFormat::Csv, OutputFormat::Wav, OutputFormat::Raw];
    let report = run(&scene, &RunOptions::default())?;
    for r in &report.manifest.outputs {
        println!(
            "{} -> {}: peak {:.4e}, first arrival {:?}",
            r.source, r.microphone, r.peak, r.first_arrival
        );
        for f in &r.files {
            println!("  {}", f.display());
        }
    }
    println!("input sha256 {}", report.manifest.input_sha256);
    Ok(())
}
