use std::path::{Path, PathBuf};

use serde::Serialize;

use kummer_core::exec::Execution;
use kummer_core::isometry_group::keum::{
    parse_keum, sha256_hex, validate_keum, KeumError, KeumValidation, TABLE_SIZE,
};

use crate::suites::RunError;

#[derive(Debug, Serialize)]
pub struct ImportReport {
    pub file: PathBuf,
    pub digest: String,
    pub entries: usize,
    pub accepted: bool,
    /// Table-level problems (count, duplicates).
    pub problems: Vec<String>,
    pub failures: Vec<EntryFailure>,
}

#[derive(Debug, Serialize)]
pub struct EntryFailure {
    pub hexad: String,
    pub properties: Vec<String>,
}

impl From<&KeumValidation> for EntryFailure {
    fn from(v: &KeumValidation) -> Self {
        EntryFailure {
            hexad: v.hexad.to_string(),
            properties: v.failures.iter().map(|p| p.to_string()).collect(),
        }
    }
}

/// Parses and validates every entry; the table is accepted only when it
/// has all 120 hexads once each and every entry passes.
pub fn import_keum(path: &Path, exec: Execution) -> Result<ImportReport, RunError> {
    let bytes = std::fs::read(path).map_err(|source| RunError::Io { path: path.to_path_buf(), source })?;
    let entries = parse_keum(&bytes).map_err(RunError::Keum)?;
    let mut problems = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (w, _) in &entries {
        if !seen.insert(w.labels) {
            problems.push(KeumError::Duplicate(w.to_string()).to_string());
        }
    }
    if entries.len() != TABLE_SIZE {
        problems.push(KeumError::Count { got: entries.len(), expected: TABLE_SIZE }.to_string());
    }
    let validations = exec.map(&entries, |(w, z)| validate_keum(z, w));
    let failures: Vec<EntryFailure> = validations.iter().filter(|v| !v.passed()).map(EntryFailure::from).collect();
    Ok(ImportReport {
        file: path.to_path_buf(),
        digest: sha256_hex(&bytes),
        entries: entries.len(),
        accepted: problems.is_empty() && failures.is_empty(),
        problems,
        failures,
    })
}
