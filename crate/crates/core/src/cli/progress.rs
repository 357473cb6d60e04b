//! Append-only progress files: one header line, then one completed case per line.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::{CaseResult, Totals};
use crate::verify::CampaignPlan;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressHeader {
    pub campaign: String,
    pub fingerprint: String,
}

/// What a progress file holds after loading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressRecord {
    pub header: ProgressHeader,
    pub completed: BTreeMap<String, CaseResult>,
}

impl ProgressRecord {
    pub fn tallies(&self) -> Totals {
        let cases: Vec<CaseResult> = self.completed.values().cloned().collect();
        Totals::tally(&cases)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ProgressError {
    #[error("progress file {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("progress file belongs to campaign {found}, not {expected}")]
    WrongCampaign { found: String, expected: String },
    #[error("progress file was written for a different configuration (fingerprint {found}, expected {expected})")]
    Fingerprint { found: String, expected: String },
    #[error("progress file has an unreadable header")]
    BadHeader,
    #[error("progress file records unknown case {0}")]
    UnknownCase(String),
}

/// SHA-256 of the canonical JSON of the campaign and its grid.
pub fn fingerprint(plan: &CampaignPlan) -> String {
    let canon = serde_json::to_vec(&plan.identity()).expect("json values serialize");
    hex::encode(Sha256::digest(&canon))
}

/// Open (or create) the progress file for `plan` and read back completed cases.
///
/// A torn final line from an interrupted write is dropped and the file is
/// rewritten without it.
pub fn open_progress(path: &Path, plan: &CampaignPlan) -> Result<(ProgressRecord, File), ProgressError> {
    let io_err = |source| ProgressError::Io {
        path: path.display().to_string(),
        source,
    };
    let header = ProgressHeader {
        campaign: plan.campaign.clone(),
        fingerprint: fingerprint(plan),
    };
    let existing = match File::open(path) {
        Ok(f) => {
            let lines: Vec<String> = BufReader::new(f)
                .lines()
                .collect::<Result<_, _>>()
                .map_err(io_err)?;
            Some(lines)
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => None,
        Err(e) => return Err(io_err(e)),
    };
    let mut completed = BTreeMap::new();
    let lines = existing.unwrap_or_default();
    if lines.is_empty() {
        let mut f = File::create(path).map_err(io_err)?;
        writeln!(f, "{}", serde_json::to_string(&header).expect("header serializes")).map_err(io_err)?;
        f.flush().map_err(io_err)?;
    } else {
        let found: ProgressHeader =
            serde_json::from_str(&lines[0]).map_err(|_| ProgressError::BadHeader)?;
        if found.campaign != header.campaign {
            return Err(ProgressError::WrongCampaign {
                found: found.campaign,
                expected: header.campaign,
            });
        }
        if found.fingerprint != header.fingerprint {
            return Err(ProgressError::Fingerprint {
                found: found.fingerprint,
                expected: header.fingerprint,
            });
        }
        let known: std::collections::HashSet<&str> = plan.keys().collect();
        let mut kept = 1;
        for line in &lines[1..] {
            let Ok(case) = serde_json::from_str::<CaseResult>(line) else {
                break;
            };
            if !known.contains(case.key.as_str()) {
                return Err(ProgressError::UnknownCase(case.key));
            }
            completed.insert(case.key.clone(), case);
            kept += 1;
        }
        if kept < lines.len() {
            let mut f = File::create(path).map_err(io_err)?;
            for line in &lines[..kept] {
                writeln!(f, "{line}").map_err(io_err)?;
            }
            f.flush().map_err(io_err)?;
        }
    }
    let file = OpenOptions::new().append(true).open(path).map_err(io_err)?;
    Ok((ProgressRecord { header, completed }, file))
}

pub fn append_case(file: &mut File, case: &CaseResult) -> io::Result<()> {
    let line = serde_json::to_string(case).map_err(io::Error::other)?;
    writeln!(file, "{line}")?;
    file.flush()
}
