//! OEIS b-files: parsing, cached fetching and comparison with local tables.
//!
//! A snapshot of the A000570 b-file is compiled into the crate so every
//! check can run offline.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use crate::counting::SequenceTable;
use crate::error::{Error, Result};

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "TOURTRACK_CACHE_DIR";

pub const UNIQUE_TOURNAMENTS_ID: &str = "A000570";

const A000570_SNAPSHOT: &str = include_str!("../data/A000570.bfile.txt");

/// Validated OEIS identifier: `A` followed by six digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn parse(id: &str) -> Result<Self> {
        let ok =
            id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
        if ok {
            Ok(Self(id.to_owned()))
        } else {
            Err(Error::InvalidSequenceId(id.to_owned()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn url(&self) -> String {
        format!("https://oeis.org/{}/b{}.txt", self.0, &self.0[1..])
    }

    pub fn cache_file(&self, cache_dir: &Path) -> PathBuf {
        cache_dir.join(format!("{}.bfile.txt", self.0))
    }

    /// Snapshot shipped with the crate, if any.
    pub fn bundled(&self) -> Option<&'static str> {
        (self.0 == UNIQUE_TOURNAMENTS_ID).then_some(A000570_SNAPSHOT)
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub sequence_id: String,
    pub entries: Vec<(u64, BigUint)>,
}

impl BFile {
    /// Serializes back to b-file text; comments are not preserved.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, value) in &self.entries {
            writeln!(out, "{n} {value}").expect("write to string");
        }
        out
    }

    pub fn get(&self, index: u64) -> Option<&BigUint> {
        let first = self.entries.first()?.0;
        let pos = usize::try_from(index.checked_sub(first)?).ok()?;
        self.entries.get(pos).map(|(_, v)| v)
    }

    pub fn first_index(&self) -> Option<u64> {
        self.entries.first().map(|e| e.0)
    }

    pub fn last_index(&self) -> Option<u64> {
        self.entries.last().map(|e| e.0)
    }
}

/// Parses `n a(n)` lines; `#` lines are comments and blank lines are skipped.
pub fn parse_bfile(sequence_id: &str, text: &str) -> Result<BFile> {
    let mut entries: Vec<(u64, BigUint)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| Error::Parse {
            line: line_no,
            message: message.to_owned(),
        };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected \"index value\""));
        };
        let index: u64 = index.parse().map_err(|_| err("index is not an integer"))?;
        let value: BigUint = value
            .parse()
            .map_err(|_| err("value is not a non-negative integer"))?;
        if let Some(&(prev, _)) = entries.last() {
            if index != prev + 1 {
                return Err(Error::Gap {
                    line: line_no,
                    expected: prev + 1,
                    found: index,
                });
            }
        }
        entries.push((index, value));
    }
    Ok(BFile {
        sequence_id: sequence_id.to_owned(),
        entries,
    })
}

/// `$TOURTRACK_CACHE_DIR`, else a `tourtrack` directory under the user cache.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("tourtrack");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("tourtrack");
    }
    PathBuf::from(".tourtrack-cache")
}

/// Loads a b-file from the cache, the bundled snapshot (offline) or the OEIS
/// server (online), writing fresh downloads into `cache_dir`.
pub fn fetch_bfile(sequence_id: &str, cache_dir: &Path, offline: bool) -> Result<BFile> {
    fetch_bfile_with(sequence_id, cache_dir, offline, http_get)
}

/// [`fetch_bfile`] with the HTTP transport supplied by the caller.
pub fn fetch_bfile_with(
    sequence_id: &str,
    cache_dir: &Path,
    offline: bool,
    download: impl FnOnce(&str) -> Result<String>,
) -> Result<BFile> {
    let id = SequenceId::parse(sequence_id)?;
    let cached = id.cache_file(cache_dir);
    if cached.is_file() {
        return parse_bfile(id.as_str(), &fs::read_to_string(&cached)?);
    }
    if offline {
        let text = id
            .bundled()
            .ok_or_else(|| Error::Unavailable(id.to_string()))?;
        return parse_bfile(id.as_str(), text);
    }
    let text = download(&id.url())?;
    let parsed = parse_bfile(id.as_str(), &text)?;
    fs::create_dir_all(cache_dir)?;
    fs::write(&cached, &text)?;
    Ok(parsed)
}

/// Reads a b-file from an explicit path.
pub fn load_bfile(sequence_id: &str, path: &Path) -> Result<BFile> {
    let id = SequenceId::parse(sequence_id)?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Unavailable(format!("{id} at {}: {e}", path.display())))?;
    parse_bfile(id.as_str(), &text)
}

fn http_get(url: &str) -> Result<String> {
    ureq::get(url)
        .call()
        .and_then(|mut response| response.body_mut().read_to_string())
        .map_err(|e| Error::Network(format!("{url}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermComparison {
    /// Index in the remote numbering.
    pub index: u64,
    pub local: BigUint,
    pub remote: BigUint,
}

impl TermComparison {
    pub fn matches(&self) -> bool {
        self.local == self.remote
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub terms: Vec<TermComparison>,
}

impl Comparison {
    pub fn first_mismatch(&self) -> Option<&TermComparison> {
        self.terms.iter().find(|t| !t.matches())
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &TermComparison> {
        self.terms.iter().filter(|t| !t.matches())
    }

    pub fn is_full_match(&self) -> bool {
        self.first_mismatch().is_none()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Compares `local` term `k` with `remote` term `k + shift` over the overlap.
pub fn compare(local: &SequenceTable, remote: &BFile, shift: i64) -> Result<Comparison> {
    let terms: Vec<TermComparison> = local
        .indexed()
        .filter_map(|(k, value)| {
            let index = u64::try_from(k + shift).ok()?;
            let remote = remote.get(index)?;
            Some(TermComparison {
                index,
                local: value.clone(),
                remote: remote.clone(),
            })
        })
        .collect();
    if terms.is_empty() {
        return Err(Error::NoOverlap);
    }
    Ok(Comparison { terms })
}
