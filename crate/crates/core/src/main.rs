use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use anchor_rir::output::{emit_pattern_plot, run, write_plot_csv, RunError, RunOptions};
use anchor_rir::scene::{resolve_pattern, OutputFormat, SceneConfig, SceneError};

#[derive(Parser)]
#[command(
    name = "anchor-rir",
    version,
    about = "Directional room impulse responses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render every source/microphone pair of a scene file.
    Render {
        scene: PathBuf,
        /// Output directory (overrides `output.directory`).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Comma-separated formats: csv, wav, raw.
        #[arg(short, long, value_delimiter = ',')]
        format: Vec<String>,
        #[arg(long)]
        qx: Option<u32>,
        #[arg(long)]
        qy: Option<u32>,
        #[arg(long)]
        qz: Option<u32>,
        /// Directional cutoff; negative renders every image omnidirectional.
        #[arg(long, allow_negative_numbers = true)]
        qmax: Option<i32>,
        /// Per-image half length D.
        #[arg(long)]
        half_length: Option<usize>,
        /// Impulse response length in samples.
        #[arg(long)]
        length: Option<usize>,
        #[arg(short, long)]
        workers: Option<usize>,
        /// Manifest path (overrides `output.manifest`).
        #[arg(short, long)]
        manifest: Option<PathBuf>,
        /// Peak-normalize to 0.9 before writing.
        #[arg(long)]
        normalize: bool,
    },
    /// Write polar plot data for a pattern.
    PlotPattern {
        /// Built-in name or pattern file.
        pattern: String,
        /// Frequencies in Hz, comma-separated.
        #[arg(short, long, value_delimiter = ',', required = true)]
        frequency: Vec<f64>,
        /// Angular step in degrees.
        #[arg(short, long, default_value_t = 1.0)]
        resolution: f64,
        #[arg(short, long, default_value_t = 16000.0)]
        sample_rate: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum Failure {
    Validation(String),
    Runtime(String),
}

impl From<SceneError> for Failure {
    fn from(e: SceneError) -> Self {
        match e {
            SceneError::Io { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn absolute(p: PathBuf) -> PathBuf {
    if p.is_absolute() {
        p
    } else {
        std::env::current_dir().map(|c| c.join(&p)).unwrap_or(p)
    }
}

fn render_cmd(scene_path: &Path, over: Overrides, workers: Option<usize>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(scene_path).map_err(|source| SceneError::Io {
        path: scene_path.to_path_buf(),
        source,
    })?;
    let mut cfg = SceneConfig::parse(&text)?;
    over.apply(&mut cfg)?;
    let base = scene_path.parent().unwrap_or_else(|| Path::new("."));
    let scene = cfg.resolve(base)?;
    if workers == Some(0) {
        return Err(Failure::Validation("--workers must be at least 1".into()));
    }
    let report = run(&scene, &RunOptions { workers })?;
    for r in &report.manifest.outputs {
        println!(
            "{} -> {}: peak {:.6e}, rms {:.6e}, first arrival {}",
            r.source,
            r.microphone,
            r.peak,
            r.rms,
            r.first_arrival.map_or("-".to_string(), |i| i.to_string())
        );
    }
    if let Some(p) = &report.manifest_path {
        println!("manifest {}", p.display());
    }
    Ok(())
}

struct Overrides {
    output: Option<PathBuf>,
    format: Vec<String>,
    q: [Option<u32>; 3],
    qmax: Option<i32>,
    half_length: Option<usize>,
    length: Option<usize>,
    manifest: Option<PathBuf>,
    normalize: bool,
}

impl Overrides {
    fn apply(self, cfg: &mut SceneConfig) -> Result<(), Failure> {
        if let Some(dir) = self.output {
            cfg.output.directory = absolute(dir);
        }
        if !self.format.is_empty() {
            cfg.output.formats = self
                .format
                .iter()
                .map(|f| {
                    OutputFormat::parse(f)
                        .ok_or_else(|| Failure::Validation(format!("unknown format {f:?}")))
                })
                .collect::<Result<_, _>>()?;
        }
        for (axis, q) in self.q.iter().enumerate() {
            if let Some(q) = q {
                cfg.render.reflection_order[axis] = *q;
            }
        }
        if let Some(q) = self.qmax {
            cfg.render.directional_order = q;
        }
        if let Some(d) = self.half_length {
            cfg.render.half_length = d;
            cfg.render.centering = None;
            cfg.render.fft_size = None;
        }
        if let Some(l) = self.length {
            cfg.render.length = l;
        }
        if let Some(m) = self.manifest {
            cfg.output.manifest = Some(absolute(m));
        }
        cfg.output.normalize |= self.normalize;
        Ok(())
    }
}

fn plot_cmd(
    pattern: &str,
    freqs: &[f64],
    resolution: f64,
    sample_rate: f64,
    output: &Path,
) -> Result<(), Failure> {
    let p =
        resolve_pattern(pattern, Path::new(".")).map_err(|e| Failure::Validation(e.to_string()))?;
    let rows = emit_pattern_plot(&p, freqs, resolution, sample_rate)
        .map_err(|e| Failure::Validation(e.to_string()))?;
    write_plot_csv(output, &rows)?;
    println!("{} rows -> {}", rows.len(), output.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Render {
            scene,
            output,
            format,
            qx,
            qy,
            qz,
            qmax,
            half_length,
            length,
            workers,
            manifest,
            normalize,
        } => render_cmd(
            &scene,
            Overrides {
                output,
                format,
                q: [qx, qy, qz],
                qmax,
                half_length,
                length,
                manifest,
                normalize,
            },
            workers,
        ),
        Command::PlotPattern {
            pattern,
            frequency,
            resolution,
            sample_rate,
            output,
        } => plot_cmd(&pattern, &frequency, resolution, sample_rate, &output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
