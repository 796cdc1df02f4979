//! Named diagrams stored as `<name>.pd` files.

use std::fs;
use std::path::{Path, PathBuf};

use foamhom::diagram::LinkDiagram;

use crate::CliError;

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "FOAMHOM_CORPUS";

pub fn corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"),
    }
}

/// All corpus entries sorted by name.
pub fn load_all(dir: &Path) -> Result<Vec<(String, LinkDiagram)>, CliError> {
    let mut out = Vec::new();
    let entries = fs::read_dir(dir).map_err(|e| CliError::Validation(format!("{}: {}", dir.display(), e)))?;
    for entry in entries {
        let path = entry.map_err(|e| CliError::Validation(e.to_string()))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("pd") {
            continue;
        }
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        out.push((name, read_pd_file(&path)?));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn read_pd_file(path: &Path) -> Result<LinkDiagram, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {}", path.display(), e)))?;
    let body: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join(" ");
    LinkDiagram::parse(body.trim()).map_err(|e| CliError::Validation(format!("{}: {}", path.display(), e)))
}

/// Resolves a diagram argument: literal PD text, a file, or a corpus name.
pub fn resolve(arg: &str) -> Result<LinkDiagram, CliError> {
    let trimmed = arg.trim();
    if trimmed.starts_with("PD[") {
        return LinkDiagram::parse(trimmed).map_err(|e| CliError::Validation(e.to_string()));
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        return read_pd_file(path);
    }
    let named = corpus_dir().join(format!("{}.pd", trimmed));
    if named.is_file() {
        return read_pd_file(&named);
    }
    Err(CliError::Validation(format!("`{}` is neither PD text, a file, nor a corpus entry", trimmed)))
}
