//! Writes the synthetic degree-9 talker to `fixtures/voice_sh_m9.toml`.

use std::path::PathBuf;

use anchor_rir::patterns::file::pattern_to_toml;
use anchor_rir::patterns::voice::synthetic_voice;

fn main() -> std::io::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/voice_sh_m9.toml")
        });
    let text = pattern_to_toml(&synthetic_voice());
    std::fs::write(&path, text)?;
    println!("wrote {}", path.display());
    Ok(())
}
