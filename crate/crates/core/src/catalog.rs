//! Append-only, deduplicated store of found squares.
//!
//! One JSON record per line:
//!
//! ```text
//! {"n":4,"cells":[[...],...],"residuum":8,"canonical":false,"source":{"mode":"randomized","seed":7,"worker":0}}
//! ```
//!
//! The dedup identity of a record is the flattened canonical form of its
//! square. A final line without a newline that fails to parse is treated as
//! an interrupted write: it is skipped on load and cut off when the catalog
//! is reopened for appending.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::rows_to_square;
use crate::square::{magic_residuum, Square};
use crate::transform::canonical_form;

/// Which search produced a record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worker: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub canonical_key: Vec<u32>,
    pub representative: Square,
    pub residuum: i64,
    pub discovered_by: Fingerprint,
}

impl CatalogRecord {
    /// Builds a record for a magic square, deriving key and residuum.
    pub fn new(representative: Square, discovered_by: Fingerprint) -> Result<Self> {
        let residuum = magic_residuum(&representative)
            .ok_or_else(|| Error::InvalidRecord("square is not magic".into()))?;
        Ok(CatalogRecord {
            canonical_key: canonical_form(&representative).into_cells(),
            representative,
            residuum,
            discovered_by,
        })
    }

    pub fn order(&self) -> usize {
        self.representative.order()
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidRecord(msg.into()));
        match magic_residuum(&self.representative) {
            None => return bad("square is not magic"),
            Some(r) if r != self.residuum => {
                return Err(Error::InvalidRecord(format!(
                    "stored residuum {} but the square has {r}",
                    self.residuum
                )))
            }
            Some(_) => {}
        }
        if canonical_form(&self.representative).cells() != self.canonical_key.as_slice() {
            return bad("canonical key does not match the square");
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    n: usize,
    cells: Vec<Vec<u32>>,
    residuum: i64,
    canonical: bool,
    source: Fingerprint,
}

fn encode(record: &CatalogRecord) -> String {
    let wire = Wire {
        n: record.order(),
        cells: record.representative.to_rows(),
        residuum: record.residuum,
        canonical: record.representative.cells() == record.canonical_key.as_slice(),
        source: record.discovered_by.clone(),
    };
    serde_json::to_string(&wire).expect("records always serialize")
}

fn decode(line: &str) -> Result<CatalogRecord> {
    let wire: Wire = serde_json::from_str(line).map_err(|e| Error::InvalidRecord(e.to_string()))?;
    let square = rows_to_square(wire.n, &wire.cells, 1)?;
    let canonical_key = canonical_form(&square).into_cells();
    if wire.canonical != (square.cells() == canonical_key.as_slice()) {
        return Err(Error::InvalidRecord("\"canonical\" flag is wrong".into()));
    }
    let record = CatalogRecord {
        canonical_key,
        representative: square,
        residuum: wire.residuum,
        discovered_by: wire.source,
    };
    record.check()?;
    Ok(record)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CatalogStats {
    pub total: u64,
    pub per_order: BTreeMap<usize, u64>,
    /// Order, then residuum.
    pub per_residuum: BTreeMap<usize, BTreeMap<i64, u64>>,
}

impl CatalogStats {
    fn add(&mut self, record: &CatalogRecord) {
        self.total += 1;
        *self.per_order.entry(record.order()).or_default() += 1;
        *self
            .per_residuum
            .entry(record.order())
            .or_default()
            .entry(record.residuum)
            .or_default() += 1;
    }
}

#[derive(Clone, Debug, Default)]
pub struct Loaded {
    pub records: Vec<CatalogRecord>,
    pub stats: CatalogStats,
    /// Number of skipped partial trailing records (0 or 1).
    pub warnings: usize,
    /// Byte length of the complete records.
    valid_len: u64,
}

/// Parses catalog contents; `path` is only used in error messages.
pub fn parse(bytes: &[u8], path: &Path) -> Result<Loaded> {
    let corrupt = |line: usize, msg: String| Error::CatalogCorrupt {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut loaded = Loaded::default();
    let mut keys = HashSet::new();
    let mut offset = 0usize;
    let mut line_no = 0;
    while offset < bytes.len() {
        line_no += 1;
        let (line, next, terminated) = match bytes[offset..].iter().position(|&b| b == b'\n') {
            Some(p) => (&bytes[offset..offset + p], offset + p + 1, true),
            None => (&bytes[offset..], bytes.len(), false),
        };
        let parsed = std::str::from_utf8(line)
            .map_err(|e| Error::InvalidRecord(e.to_string()))
            .and_then(decode);
        match parsed {
            Ok(record) => {
                if !keys.insert(record.canonical_key.clone()) {
                    return Err(corrupt(line_no, "duplicate canonical key".into()));
                }
                loaded.stats.add(&record);
                loaded.records.push(record);
                loaded.valid_len = next as u64;
            }
            Err(_) if !terminated => loaded.warnings += 1,
            Err(e) => return Err(corrupt(line_no, e.to_string())),
        }
        offset = next;
    }
    Ok(loaded)
}

/// Reads every complete record of the catalog at `path`.
pub fn load(path: impl AsRef<Path>) -> Result<Loaded> {
    let path = path.as_ref();
    parse(&std::fs::read(path)?, path)
}

/// Single-writer handle that appends new symmetry classes.
pub struct Catalog {
    path: PathBuf,
    file: File,
    keys: HashSet<Vec<u32>>,
    stats: CatalogStats,
    /// Whether the file ends mid-line (a complete final record without
    /// its newline).
    needs_newline: bool,
}

impl Catalog {
    /// Opens or creates the catalog, dropping an interrupted final record.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let existing = match std::fs::read(&path) {
            Ok(bytes) => Some(bytes),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(e) => return Err(e.into()),
        };
        let loaded = match &existing {
            Some(bytes) => parse(bytes, &path)?,
            None => Loaded::default(),
        };
        let file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(&path)?;
        let len = existing.as_ref().map_or(0, |b| b.len() as u64);
        if loaded.valid_len < len {
            file.set_len(loaded.valid_len)?;
        }
        let needs_newline = existing
            .as_ref()
            .is_some_and(|b| loaded.valid_len > 0 && b[loaded.valid_len as usize - 1] != b'\n');
        Ok(Catalog {
            path,
            file,
            keys: loaded
                .records
                .into_iter()
                .map(|r| r.canonical_key)
                .collect(),
            stats: loaded.stats,
            needs_newline,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn stats(&self) -> &CatalogStats {
        &self.stats
    }

    pub fn contains(&self, square: &Square) -> bool {
        self.keys.contains(canonical_form(square).cells())
    }

    /// Writes `record` unless its class is already present. The record is
    /// re-verified first; the write is flushed before returning.
    pub fn append(&mut self, record: &CatalogRecord) -> Result<bool> {
        record.check()?;
        if self.keys.contains(&record.canonical_key) {
            return Ok(false);
        }
        let mut line = String::new();
        if self.needs_newline {
            line.push('\n');
        }
        line.push_str(&encode(record));
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        self.needs_newline = false;
        self.keys.insert(record.canonical_key.clone());
        self.stats.add(record);
        Ok(true)
    }
}
