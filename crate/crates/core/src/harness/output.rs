use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::run::SweepRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "d,p,q,sigma,backend,t,pl,stderr,n";

pub fn version_string() -> String {
    match option_env!("QSD_GIT_DESCRIBE") {
        Some(g) => format!("{} {} ({g})", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        None => format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.d, r.p, r.q, r.sigma, r.backend, r.t, r.pl, r.stderr, r.n
        ));
    }
    out
}

/// Generic CSV with the given header; fields are written with `Display`.
pub fn table_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Sidecar<'a, C: Serialize, D: Serialize> {
    version: String,
    config: &'a C,
    results: &'a D,
    wall_time: Vec<f64>,
}

/// `<path>.json` next to the CSV.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn write_json_sidecar<C: Serialize, D: Serialize>(
    csv: &Path,
    config: &C,
    results: &D,
    wall_time: Vec<f64>,
) -> Result<()> {
    let doc = Sidecar { version: version_string(), config, results, wall_time };
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Serialization(e.to_string()))?;
    write_text(&sidecar_path(csv), &text)
}
