//! On-disk cache of generated tables, calibration constants, series-derived
//! evidence and root profiles.
//!
//! ```text
//! HECKEMOD-CACHE 1
//! calibration=two-adic
//! nmax=30
//! ...
//! sha256 <hex> atable.txt
//! ```
//!
//! The manifest is written last, so an interrupted write leaves either the
//! previous manifest or none. Every artifact listed in it is checksummed on
//! load and a mismatch is a hard error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::report::VerdictRecord;
use crate::error::{Error, Result};
use crate::factor::RootProfile;
use crate::interp::{parse_atable, write_atable, InterpolatedA};

const MANIFEST: &str = "manifest.txt";
const HEADER: &str = "HECKEMOD-CACHE 1";
pub const ATABLE_FILE: &str = "atable.txt";
pub const CALIBRATION_FILE: &str = "calibration.txt";
pub const EVIDENCE_FILE: &str = "evidence.json";
pub const PROFILES_FILE: &str = "profiles.txt";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Everything a cache directory holds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CacheContents {
    /// Parameters the artifacts were produced with.
    pub keys: BTreeMap<String, String>,
    pub atable: Vec<InterpolatedA>,
    pub calibration: String,
    pub evidence: Vec<VerdictRecord>,
    pub profiles: Vec<RootProfile>,
}

impl CacheContents {
    pub fn key(&self, k: &str) -> Option<&str> {
        self.keys.get(k).map(String::as_str)
    }
}

pub struct Cache {
    root: PathBuf,
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CacheCorrupt(msg.into())
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// `None` when the directory holds no manifest yet.
    pub fn load(&self) -> Result<Option<CacheContents>> {
        let manifest = match fs::read_to_string(self.root.join(MANIFEST)) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut lines = manifest.lines();
        if lines.next() != Some(HEADER) {
            return Err(corrupt(format!("{MANIFEST} lacks the '{HEADER}' header")));
        }
        let mut keys = BTreeMap::new();
        let mut files = BTreeMap::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix("sha256 ") {
                let (digest, name) = rest
                    .split_once(' ')
                    .ok_or_else(|| corrupt(format!("bad checksum line '{line}'")))?;
                let bytes = fs::read(self.root.join(name)).map_err(|e| {
                    corrupt(format!("{name} listed in manifest but unreadable: {e}"))
                })?;
                if sha256_hex(&bytes) != digest {
                    return Err(corrupt(format!("checksum mismatch for {name}")));
                }
                let text = String::from_utf8(bytes)
                    .map_err(|_| corrupt(format!("{name} is not UTF-8")))?;
                files.insert(name.to_string(), text);
            } else {
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| corrupt(format!("bad manifest line '{line}'")))?;
                keys.insert(k.to_string(), v.to_string());
            }
        }
        let mut out = CacheContents {
            keys,
            ..CacheContents::default()
        };
        if let Some(t) = files.get(ATABLE_FILE) {
            out.atable = parse_atable(t).map_err(|e| corrupt(format!("{ATABLE_FILE}: {e}")))?;
        }
        if let Some(t) = files.get(CALIBRATION_FILE) {
            out.calibration = t.clone();
        }
        if let Some(t) = files.get(EVIDENCE_FILE) {
            out.evidence =
                serde_json::from_str(t).map_err(|e| corrupt(format!("{EVIDENCE_FILE}: {e}")))?;
        }
        if let Some(t) = files.get(PROFILES_FILE) {
            out.profiles = t
                .lines()
                .map(str::parse)
                .collect::<Result<_>>()
                .map_err(|e| corrupt(format!("{PROFILES_FILE}: {e}")))?;
        }
        Ok(Some(out))
    }

    pub fn store(&self, c: &CacheContents) -> Result<()> {
        fs::create_dir_all(&self.root)?;
        let mut manifest = format!("{HEADER}\n");
        for (k, v) in &c.keys {
            manifest.push_str(&format!("{k}={v}\n"));
        }
        let profiles: String = c.profiles.iter().map(|p| p.to_line() + "\n").collect();
        let artifacts = [
            (ATABLE_FILE, write_atable(&c.atable)),
            (CALIBRATION_FILE, c.calibration.clone()),
            (
                EVIDENCE_FILE,
                serde_json::to_string_pretty(&c.evidence)? + "\n",
            ),
            (PROFILES_FILE, profiles),
        ];
        for (name, text) in &artifacts {
            fs::write(self.root.join(name), text)?;
            manifest.push_str(&format!("sha256 {} {name}\n", sha256_hex(text.as_bytes())));
        }
        fs::write(self.root.join(MANIFEST), manifest)?;
        Ok(())
    }
}
