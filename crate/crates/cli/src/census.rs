//! Batch analysis of a graph6 stream with a resumable JSON-lines cache.
//!
//! Every cache line is a [`CensusRecord`] whose `checksum` is the SHA-256 of
//! the record serialized without it. A line that fails to parse or whose
//! checksum does not match aborts the run.

use std::collections::{HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use binedge_core::graph::parse_graph6;
use binedge_core::{compare, FieldSpec, Graph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusBody {
    pub graph: String,
    pub field: FieldSpec,
    pub depth: usize,
    pub dim: usize,
    pub cm: bool,
    pub buchsbaum: bool,
    pub reg: i64,
    pub q_size: usize,
    pub verify: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    #[serde(flatten)]
    pub body: CensusBody,
    pub checksum: String,
}

impl CensusBody {
    pub fn checksum(&self) -> String {
        let json = serde_json::to_string(self).expect("census records serialize");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn seal(self) -> CensusRecord {
        CensusRecord { checksum: self.checksum(), body: self }
    }
}

impl CensusRecord {
    pub fn key(&self) -> (String, FieldSpec) {
        (self.body.graph.clone(), self.body.field)
    }

    pub fn is_intact(&self) -> bool {
        self.body.checksum() == self.checksum
    }
}

/// Records of this run in input order, and how many were computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOutcome {
    pub records: Vec<CensusRecord>,
    pub computed: usize,
    pub cached: usize,
}

impl CensusOutcome {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.body.verify == "pass")
    }
}

pub fn analyze_one(key: &str, g: &Graph, field: FieldSpec, truncation: usize) -> Result<CensusBody, CliError> {
    let profile = binedge_core::multiplicities(g, field)?;
    let verify = compare(g, field, truncation)?;
    Ok(CensusBody {
        graph: key.to_string(),
        field,
        depth: profile.depth(),
        dim: profile.dim(),
        cm: profile.is_cohen_macaulay(),
        buchsbaum: profile.is_buchsbaum(),
        reg: profile.regularity().series_based,
        q_size: profile.poset().len(),
        verify: if verify.passed() { "pass" } else { "fail" }.to_string(),
    })
}

/// Reads and validates a cache; a missing file is an empty cache.
pub fn load_cache(path: &Path) -> Result<HashMap<(String, FieldSpec), CensusRecord>, CliError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(HashMap::new()),
        Err(source) => return Err(CliError::Read { path: path.display().to_string(), source }),
    };
    let corrupt = |line: usize, reason: String| CliError::CacheCorrupt { path: path.to_path_buf(), line, reason };
    let mut out = HashMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| corrupt(i + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CensusRecord = serde_json::from_str(&line).map_err(|e| corrupt(i + 1, e.to_string()))?;
        if !record.is_intact() {
            return Err(corrupt(i + 1, "checksum mismatch".into()));
        }
        out.insert(record.key(), record);
    }
    Ok(out)
}

/// Graph6 keys of a stream, skipping blank lines and `#` comments.
pub fn read_keys(input: impl BufRead) -> Result<Vec<String>, CliError> {
    let mut keys = Vec::new();
    for line in input.lines() {
        let line = line.map_err(|source| CliError::Read { path: "<input>".into(), source })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        keys.push(line.to_string());
    }
    Ok(keys)
}

pub fn cmd_census(
    input: impl BufRead,
    cache: Option<&Path>,
    field: FieldSpec,
    truncation: usize,
) -> Result<CensusOutcome, CliError> {
    let keys = read_keys(input)?;
    let mut known = match cache {
        Some(path) => load_cache(path)?,
        None => HashMap::new(),
    };
    let mut seen = HashSet::new();
    let mut pending: Vec<(String, Graph)> = Vec::new();
    for key in &keys {
        if !seen.insert(key.clone()) || known.contains_key(&(key.clone(), field)) {
            continue;
        }
        pending.push((key.clone(), parse_graph6(key)?));
    }
    let fresh: Vec<CensusRecord> = pending
        .par_iter()
        .map(|(key, g)| analyze_one(key, g, field, truncation).map(CensusBody::seal))
        .collect::<Result<_, _>>()?;
    if let Some(path) = cache {
        append(path, &fresh)?;
    }
    let computed = fresh.len();
    for r in fresh {
        known.insert(r.key(), r);
    }
    let mut emitted = HashSet::new();
    let records: Vec<CensusRecord> =
        keys.iter().filter(|k| emitted.insert((*k).clone())).map(|k| known[&(k.clone(), field)].clone()).collect();
    let cached = records.len() - computed;
    Ok(CensusOutcome { records, computed, cached })
}

fn append(path: &Path, records: &[CensusRecord]) -> Result<(), CliError> {
    if records.is_empty() {
        return Ok(());
    }
    let err = |source| CliError::Write { path: PathBuf::from(path), source };
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(err)?;
    let mut buf = String::new();
    for r in records {
        buf.push_str(&serde_json::to_string(r).expect("census records serialize"));
        buf.push('\n');
    }
    file.write_all(buf.as_bytes()).map_err(err)?;
    file.flush().map_err(err)
}
