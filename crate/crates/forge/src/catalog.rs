//! Lattice lookup: built-in forms first, then the JSON files of the
//! catalog directory, then a path to a single JSON file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use theta_forge_core::lattice::{named, QuadraticForm};

use crate::ForgeError;

/// Environment variable naming a directory of lattice JSON files.
pub const CATALOG_ENV: &str = "THETA_FORGE_CATALOG";

/// On-disk format: `{"name": "...", "gram": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub gram: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    BuiltIn,
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub name: String,
    pub form: QuadraticForm,
    pub source: Source,
}

pub fn builtins() -> Vec<Lattice> {
    named::all()
        .into_iter()
        .map(|(name, form)| Lattice { name: name.to_string(), form, source: Source::BuiltIn })
        .collect()
}

/// Reads and validates one lattice file.
pub fn load_file(path: &Path) -> Result<Lattice, ForgeError> {
    let bad = |msg: String| ForgeError::BadFile { path: path.to_path_buf(), msg };
    let text = fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    let entry: CatalogEntry = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let form = QuadraticForm::new(&entry.gram).map_err(|e| bad(e.to_string()))?;
    Ok(Lattice { name: entry.name, form, source: Source::File(path.to_path_buf()) })
}

/// Every `*.json` file in `dir`, in file-name order. A malformed file is an
/// error rather than being skipped.
pub fn scan_dir(dir: &Path) -> Result<Vec<Lattice>, ForgeError> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| ForgeError::BadFile { path: dir.to_path_buf(), msg: e.to_string() })? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            paths.push(path);
        }
    }
    paths.sort();
    paths.iter().map(|p| load_file(p)).collect()
}

/// Built-ins followed by the directory's entries.
pub fn list(dir: Option<&Path>) -> Result<Vec<Lattice>, ForgeError> {
    let mut all = builtins();
    if let Some(dir) = dir {
        all.extend(scan_dir(dir)?);
    }
    Ok(all)
}

pub fn resolve(spec: &str, dir: Option<&Path>) -> Result<Lattice, ForgeError> {
    if let Some(l) = builtins().into_iter().find(|l| l.name == spec) {
        return Ok(l);
    }
    if let Some(dir) = dir {
        if let Some(l) = scan_dir(dir)?.into_iter().find(|l| l.name == spec) {
            return Ok(l);
        }
    }
    let path = Path::new(spec);
    if path.is_file() {
        return load_file(path);
    }
    Err(ForgeError::UnknownLattice(spec.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        for name in ["A2", "D4", "E8", "2I2", "2A2"] {
            assert_eq!(resolve(name, None).unwrap().name, name);
        }
        assert!(matches!(resolve("NOPE", None), Err(ForgeError::UnknownLattice(_))));
    }

    #[test]
    fn entry_round_trip() {
        let e = CatalogEntry { name: "A1xA1".into(), gram: vec![vec![2, 0], vec![0, 2]] };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"name":"A1xA1","gram":[[2,0],[0,2]]}"#);
        assert_eq!(serde_json::from_str::<CatalogEntry>(&s).unwrap(), e);
    }
}
