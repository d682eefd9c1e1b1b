use std::path::{Path, PathBuf};

use anchor_rir::patterns::file::load_pattern;
use anchor_rir::patterns::voice::synthetic_voice;
use anchor_rir::scene::{load_scene, parse_scene, SceneConfig, SceneError};
use anchor_rir::{Orientation, Pattern, Vec3};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

#[test]
fn shipped_room_fixture() {
    let s = load_scene(&fixture("room.toml")).unwrap();
    assert_eq!(s.room.dimensions, [4.0, 4.0, 4.0]);
    assert_eq!(s.room.reflections, [0.96, 0.8, 0.96, 0.9, 0.5, 0.5]);
    assert_eq!(s.room.sample_rate, 16000.0);
    assert_eq!(
        s.sources[0].transducer.pose.position,
        Vec3::new(3.0, 3.0, 1.0)
    );
    assert_eq!(
        s.microphones[0].transducer.pose.position,
        Vec3::new(1.5, 1.5, 1.0)
    );
    assert_eq!(s.render.length, 2048);
}

#[test]
fn serialized_scene_loads_back_equal() {
    for name in ["room.toml", "two_mics.toml"] {
        let path = fixture(name);
        let a = load_scene(&path).unwrap();
        let text = a.config.to_toml_string();
        assert_eq!(SceneConfig::parse(&text).unwrap(), a.config);
        let b = parse_scene(&text, path.parent().unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn pattern_file_reference_resolves_next_to_scene() {
    let text = std::fs::read_to_string(fixture("room.toml"))
        .unwrap()
        .replace("pattern = \"speaker\"", "pattern = \"voice_sh_m9.toml\"");
    let s = parse_scene(&text, &fixture("")).unwrap();
    assert!(matches!(
        s.sources[0].transducer.pattern,
        Pattern::SphericalHarmonics(_)
    ));
}

#[test]
fn shipped_voice_fixture_matches_generator() {
    let file = load_pattern(&fixture("voice_sh_m9.toml")).unwrap();
    assert_eq!(file, synthetic_voice());
    let front = file
        .evaluate(4000.0, 16000.0, &Orientation::from_angles(0.0, 0.0))
        .unwrap();
    let back = file
        .evaluate(
            4000.0,
            16000.0,
            &Orientation::from_angles(std::f64::consts::PI, 0.0),
        )
        .unwrap();
    assert!(20.0 * (front.norm() / back.norm()).log10() > 10.0);
}

#[test]
fn validation_names_the_field() {
    let base = std::fs::read_to_string(fixture("room.toml")).unwrap();
    let cases = [
        (
            "position = [3.0, 3.0, 1.0]",
            "position = [5.0, 1.0, 1.0]",
            "sources[0].position",
        ),
        (
            "dimensions = [4.0, 4.0, 4.0]",
            "dimensions = [4.0, -4.0, 4.0]",
            "room",
        ),
        ("length = 2048", "length = 0", "render"),
        ("formats = [\"csv\"]", "formats = []", "output.formats"),
        ("name = \"omni\"", "name = \"a/b\"", "microphones[0].name"),
        (
            "z_anchor = [1.4, 1.4, 1.0]",
            "z_anchor = [1.5, 1.5, 1.0]",
            "microphones[0].z_anchor/x_anchor",
        ),
    ];
    for (from, to, field) in cases {
        assert!(base.contains(from), "{from}");
        match parse_scene(&base.replacen(from, to, 1), Path::new(".")) {
            Err(SceneError::Validation { field: f, .. }) => assert_eq!(f, field, "{to}"),
            other => panic!("{to}: {other:?}"),
        }
    }
}

#[test]
fn parse_errors_carry_position() {
    let base = std::fs::read_to_string(fixture("room.toml")).unwrap();
    let text = base.replace("x_anchor = [2.9, 3.1, 1.0]\n", "");
    match parse_scene(&text, Path::new(".")) {
        Err(e @ SceneError::Parse { line: Some(_), .. }) => {
            let msg = e.to_string();
            assert!(msg.contains("x_anchor") && msg.contains("line"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    let text = base.replace("speed_of_sound = 340.0", "speed_of_sound = \"fast\"");
    match parse_scene(&text, Path::new(".")) {
        Err(SceneError::Parse { line, .. }) => assert_eq!(line, Some(6)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn missing_scene_file_is_io() {
    assert!(matches!(
        load_scene(Path::new("/nonexistent/scene.toml")),
        Err(SceneError::Io { .. })
    ));
}
