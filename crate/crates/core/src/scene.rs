//! Scene files.
//!
//! A scene is a TOML document describing the room, the render settings,
//! the transducers and the requested outputs:
//!
//! ```toml
//! [room]
//! dimensions = [4.0, 4.0, 4.0]
//! reflection = [0.96, 0.8, 0.96, 0.9, 0.5, 0.5]   # x0 x1 y0 y1 z0 z1
//! speed_of_sound = 340.0
//! sample_rate = 16000.0
//!
//! [render]
//! reflection_order = [8, 8, 8]
//! directional_order = 2        # negative: every image omnidirectional
//! length = 2048
//! half_length = 32             # optional
//!
//! [[sources]]
//! name = "talker"
//! position = [3.0, 3.0, 1.0]
//! z_anchor = [3.1, 3.1, 1.0]
//! x_anchor = [2.9, 3.1, 1.0]
//! pattern = "speaker"          # built-in name or pattern file path
//!
//! [[microphones]]
//! position = [1.5, 1.5, 1.0]
//! z_anchor = [1.4, 1.4, 1.0]
//! x_anchor = [1.6, 1.4, 1.0]
//! pattern = "omni"
//!
//! [output]
//! directory = "out"
//! formats = ["csv", "wav", "raw"]
//! ```
//!
//! Relative pattern paths and output directories are resolved against the
//! directory holding the scene file.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delay::{default_fft_size, DEFAULT_HALF_LENGTH};
use crate::geometry::{RoomSpec, Vec3};
use crate::orientation::DirectedEndpoint;
use crate::patterns::file::{load_pattern, PatternFileError};
use crate::patterns::Pattern;
use crate::renderer::{RenderConfig, Transducer};

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("cannot read scene {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}", parse_message(.line, .column, .message))]
    Parse {
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },
    #[error("invalid `{field}`: {reason}")]
    Validation { field: String, reason: String },
    #[error("pattern for `{field}`: {source}")]
    Pattern {
        field: String,
        source: PatternFileError,
    },
}

fn parse_message(line: &Option<usize>, column: &Option<usize>, message: &str) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("parse error at line {l}, column {c}: {message}"),
        _ => format!("parse error: {message}"),
    }
}

fn invalid(field: impl Into<String>, reason: impl fmt::Display) -> SceneError {
    SceneError::Validation {
        field: field.into(),
        reason: reason.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoomSection {
    pub dimensions: [f64; 3],
    pub reflection: [f64; 6],
    pub speed_of_sound: f64,
    pub sample_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderSection {
    pub reflection_order: [u32; 3],
    pub directional_order: i32,
    pub length: usize,
    #[serde(default = "default_half_length")]
    pub half_length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centering: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fft_size: Option<usize>,
}

fn default_half_length() -> usize {
    DEFAULT_HALF_LENGTH
}

impl RenderSection {
    pub fn to_config(&self) -> RenderConfig {
        let cfg = RenderConfig::new(self.reflection_order, self.directional_order, self.length)
            .with_half_length(self.half_length);
        let cfg = match self.centering {
            Some(c) => cfg.with_centering(c),
            None => cfg,
        };
        match self.fft_size {
            Some(n) => cfg.with_fft_size(n),
            None => cfg.with_fft_size(default_fft_size(self.half_length)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransducerSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub position: [f64; 3],
    pub z_anchor: [f64; 3],
    pub x_anchor: [f64; 3],
    pub pattern: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Wav,
    Raw,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Wav => "wav",
            OutputFormat::Raw => "f64",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "csv" => Some(OutputFormat::Csv),
            "wav" => Some(OutputFormat::Wav),
            "raw" | "f64" | "bin" => Some(OutputFormat::Raw),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_directory")]
    pub directory: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<OutputFormat>,
    /// Peak-normalize to 0.9 full scale before writing.
    #[serde(default)]
    pub normalize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<PathBuf>,
}

fn default_directory() -> PathBuf {
    PathBuf::from("out")
}

fn default_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv]
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            directory: default_directory(),
            formats: default_formats(),
            normalize: false,
            manifest: None,
        }
    }
}

/// The scene document as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub room: RoomSection,
    pub render: RenderSection,
    #[serde(default)]
    pub sources: Vec<TransducerSection>,
    #[serde(default)]
    pub microphones: Vec<TransducerSection>,
    #[serde(default)]
    pub output: OutputSection,
}

/// A transducer with its resolved pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedTransducer {
    pub name: String,
    pub transducer: Transducer,
}

/// A validated scene, ready to render.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub config: SceneConfig,
    pub room: RoomSpec,
    pub render: RenderConfig,
    pub sources: Vec<NamedTransducer>,
    pub microphones: Vec<NamedTransducer>,
    /// Directory relative paths are resolved against.
    pub base_dir: PathBuf,
}

impl Scene {
    pub fn output_directory(&self) -> PathBuf {
        self.base_dir.join(&self.config.output.directory)
    }

    pub fn manifest_path(&self) -> Option<PathBuf> {
        self.config
            .output
            .manifest
            .as_ref()
            .map(|m| self.base_dir.join(m))
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

impl SceneConfig {
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = match e.span() {
                Some(span) => {
                    let (l, c) = line_col(text, span.start);
                    (Some(l), Some(c))
                }
                None => (None, None),
            };
            SceneError::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scene config always serializes")
    }

    /// Checks every invariant and resolves patterns against `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<Scene, SceneError> {
        let r = &self.room;
        let room = RoomSpec::new(r.dimensions, r.reflection, r.speed_of_sound, r.sample_rate)
            .map_err(|e| invalid("room", e))?;
        if r.sample_rate.fract() != 0.0 {
            return Err(invalid("room.sample_rate", "must be a whole number of Hz"));
        }
        let render = self.render.to_config();
        render.validate().map_err(|e| invalid("render", e))?;

        let formats = &self.output.formats;
        if formats.is_empty() {
            return Err(invalid("output.formats", "at least one format is required"));
        }
        for (i, f) in formats.iter().enumerate() {
            if formats[..i].contains(f) {
                return Err(invalid(format!("output.formats[{i}]"), "listed twice"));
            }
        }

        let sources = resolve_group("sources", "src", &self.sources, &room, base_dir)?;
        let microphones = resolve_group("microphones", "mic", &self.microphones, &room, base_dir)?;
        for (si, s) in sources.iter().enumerate() {
            for (mi, m) in microphones.iter().enumerate() {
                if s.transducer.pose.position == m.transducer.pose.position {
                    return Err(invalid(
                        format!("microphones[{mi}].position"),
                        format!("coincides with sources[{si}].position"),
                    ));
                }
            }
        }
        Ok(Scene {
            config: self.clone(),
            room,
            render,
            sources,
            microphones,
            base_dir: base_dir.to_path_buf(),
        })
    }
}

fn resolve_group(
    key: &str,
    prefix: &str,
    entries: &[TransducerSection],
    room: &RoomSpec,
    base_dir: &Path,
) -> Result<Vec<NamedTransducer>, SceneError> {
    if entries.is_empty() {
        return Err(invalid(key, "at least one entry is required"));
    }
    let mut out: Vec<NamedTransducer> = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let field = |sub: &str| format!("{key}[{i}].{sub}");
        let name = e.name.clone().unwrap_or_else(|| format!("{prefix}{i}"));
        if name.is_empty()
            || !name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
        {
            return Err(invalid(
                field("name"),
                format!("{name:?} must be non-empty and use only [A-Za-z0-9._-]"),
            ));
        }
        if out.iter().any(|t| t.name == name) {
            return Err(invalid(field("name"), format!("{name:?} is used twice")));
        }
        let position = Vec3::from(e.position);
        room.ensure_inside(&position)
            .map_err(|err| invalid(field("position"), err))?;
        let pose = DirectedEndpoint::new(position, Vec3::from(e.z_anchor), Vec3::from(e.x_anchor))
            .map_err(|err| invalid(field("z_anchor/x_anchor"), err))?;
        let pattern =
            resolve_pattern(&e.pattern, base_dir).map_err(|source| SceneError::Pattern {
                field: field("pattern"),
                source,
            })?;
        out.push(NamedTransducer {
            name,
            transducer: Transducer::new(pose, pattern),
        });
    }
    Ok(out)
}

/// Built-in pattern name, or a pattern file path relative to `base_dir`.
pub fn resolve_pattern(reference: &str, base_dir: &Path) -> Result<Pattern, PatternFileError> {
    match Pattern::builtin(reference) {
        Some(p) => Ok(p),
        None => load_pattern(&base_dir.join(reference)),
    }
}

pub fn parse_scene(text: &str, base_dir: &Path) -> Result<Scene, SceneError> {
    SceneConfig::parse(text)?.resolve(base_dir)
}

pub fn load_scene(path: &Path) -> Result<Scene, SceneError> {
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_scene(&text, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = r#"
[room]
dimensions = [4.0, 4.0, 4.0]
reflection = [0.96, 0.8, 0.96, 0.9, 0.5, 0.5]
speed_of_sound = 340.0
sample_rate = 16000.0

[render]
reflection_order = [8, 8, 8]
directional_order = 2
length = 2048

[[sources]]
name = "talker"
position = [3.0, 3.0, 1.0]
z_anchor = [3.1, 3.1, 1.0]
x_anchor = [2.9, 3.1, 1.0]
pattern = "speaker"

[[microphones]]
position = [1.5, 1.5, 1.0]
z_anchor = [1.4, 1.4, 1.0]
x_anchor = [1.6, 1.4, 1.0]
pattern = "omni"
"#;

    fn here() -> &'static Path {
        Path::new(".")
    }

    #[test]
    fn fixture_resolves() {
        let s = parse_scene(FIXTURE, here()).unwrap();
        assert_eq!(s.room.dimensions, [4.0; 3]);
        assert_eq!(s.room.reflections, [0.96, 0.8, 0.96, 0.9, 0.5, 0.5]);
        assert_eq!(
            s.sources[0].transducer.pose.position,
            Vec3::new(3.0, 3.0, 1.0)
        );
        assert_eq!(
            s.microphones[0].transducer.pose.position,
            Vec3::new(1.5, 1.5, 1.0)
        );
        assert_eq!(s.microphones[0].name, "mic0");
        assert_eq!(s.sources[0].transducer.pattern, Pattern::SimplifiedSpeaker);
        assert_eq!(s.render.half_length, 32);
        assert_eq!(s.config.output.formats, vec![OutputFormat::Csv]);
    }

    #[test]
    fn round_trip() {
        let a = parse_scene(FIXTURE, here()).unwrap();
        let b = parse_scene(&a.config.to_toml_string(), here()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn source_outside_room() {
        let text = FIXTURE.replace("position = [3.0, 3.0, 1.0]", "position = [5.0, 1.0, 1.0]");
        match parse_scene(&text, here()) {
            Err(SceneError::Validation { field, .. }) => assert_eq!(field, "sources[0].position"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_x_anchor_names_the_field() {
        let text = FIXTURE.replace("x_anchor = [2.9, 3.1, 1.0]\n", "");
        let err = parse_scene(&text, here()).unwrap_err();
        assert!(
            matches!(err, SceneError::Parse { line: Some(_), .. }),
            "{err:?}"
        );
        assert!(err.to_string().contains("x_anchor"), "{err}");
    }

    #[test]
    fn empty_microphones() {
        let cut = FIXTURE.find("[[microphones]]").unwrap();
        match parse_scene(&FIXTURE[..cut], here()) {
            Err(SceneError::Validation { field, .. }) => assert_eq!(field, "microphones"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_rejected() {
        let text = FIXTURE.replace("length = 2048", "length = 2048\nlenght = 1");
        let err = parse_scene(&text, here()).unwrap_err();
        assert!(err.to_string().contains("lenght"), "{err}");
    }

    #[test]
    fn missing_pattern_file() {
        let text = FIXTURE.replace("\"omni\"", "\"nope.toml\"");
        match parse_scene(&text, here()) {
            Err(SceneError::Pattern { field, .. }) => assert_eq!(field, "microphones[0].pattern"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coincident_mic_and_source() {
        let text = FIXTURE.replace("position = [1.5, 1.5, 1.0]", "position = [3.0, 3.0, 1.0]");
        let err = parse_scene(&text, here()).unwrap_err();
        assert!(err.to_string().contains("coincides"), "{err}");
    }

    #[test]
    fn line_col_counts_from_one() {
        assert_eq!(line_col("ab\ncd", 4), (2, 2));
        assert_eq!(line_col("ab", 0), (1, 1));
    }
}
