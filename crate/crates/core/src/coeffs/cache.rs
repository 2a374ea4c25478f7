//! On-disk coefficient cache.
//!
//! A cache file is one JSON document:
//!
//! ```json
//! {
//!   "format": "rotinv-coeff-cache",
//!   "version": 1,
//!   "tables": [
//!     {
//!       "kind": "even", "j": 1, "k": 1, "n": 0, "lambda": 1,
//!       "entries": { "0,0,0": "6/1", "0,1,0": "-2/1" },
//!       "checksum": "<sha256 hex>"
//!     }
//!   ]
//! }
//! ```
//!
//! Tables are sorted by `(kind, j, k, n)` and entries by `(a, b, c)`, so
//! building the same cache twice gives byte-identical files. The checksum
//! covers the kind, query, lambda and every entry.

use std::collections::BTreeMap;
use std::path::Path;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use super::{table_closed, CoeffQuery, CoeffTable, Kind};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, rational_string};

pub const FORMAT: &str = "rotinv-coeff-cache";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoeffCache {
    tables: BTreeMap<(Kind, CoeffQuery), CoeffTable>,
}

/// One line of `cache inspect`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub kind: Kind,
    pub j: u32,
    pub k: u32,
    pub n: u32,
    pub lambda: u32,
    pub entries: usize,
    pub checksum: String,
}

struct OrderedEntries<'a>(&'a CoeffTable);

impl Serialize for OrderedEntries<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for ((a, b, c), v) in self.0.entries() {
            map.serialize_entry(&format!("{a},{b},{c}"), &rational_string(v))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TableOut<'a> {
    kind: Kind,
    j: u32,
    k: u32,
    n: u32,
    lambda: u32,
    entries: OrderedEntries<'a>,
    checksum: String,
}

#[derive(Serialize)]
struct DocOut<'a> {
    format: &'static str,
    version: u32,
    tables: Vec<TableOut<'a>>,
}

#[derive(Deserialize)]
struct TableIn {
    kind: Kind,
    j: u32,
    k: u32,
    n: u32,
    lambda: u32,
    entries: BTreeMap<String, String>,
    checksum: String,
}

#[derive(Deserialize)]
struct DocIn {
    format: String,
    version: u32,
    tables: Vec<TableIn>,
}

/// SHA-256 over a canonical text rendering of the table.
pub fn table_checksum(table: &CoeffTable) -> String {
    let q = table.query;
    let mut h = Sha256::new();
    h.update(format!("{} {} {} {} {}\n", table.kind.name(), q.j, q.k, q.n, table.lambda()));
    for ((a, b, c), v) in table.entries() {
        h.update(format!("{a},{b},{c}={}\n", rational_string(v)));
    }
    hex::encode(h.finalize())
}

fn table_key(kind: Kind, j: u32, k: u32, n: u32) -> String {
    format!("{}:{j},{k},{n}", kind.name())
}

impl CoeffCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Closed-form tables of both kinds for every query with `k <= max_l`.
    pub fn build(max_l: u32) -> Result<Self> {
        if max_l > crate::MAX_L {
            return Err(Error::TooLarge(max_l));
        }
        let mut cache = Self::new();
        for q in CoeffQuery::all_up_to(max_l) {
            for kind in [Kind::Even, Kind::Odd] {
                cache.insert(table_closed(q, kind));
            }
        }
        Ok(cache)
    }

    pub fn insert(&mut self, table: CoeffTable) {
        self.tables.insert((table.kind, table.query), table);
    }

    pub fn get(&self, kind: Kind, q: CoeffQuery) -> Option<&CoeffTable> {
        self.tables.get(&(kind, q))
    }

    /// Cached table, or the closed form when absent.
    pub fn get_or_compute(&self, kind: Kind, q: CoeffQuery) -> CoeffTable {
        self.get(kind, q).cloned().unwrap_or_else(|| table_closed(q, kind))
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn tables(&self) -> impl Iterator<Item = &CoeffTable> {
        self.tables.values()
    }

    pub fn manifest(&self) -> Vec<ManifestEntry> {
        self.tables
            .values()
            .map(|t| ManifestEntry {
                kind: t.kind,
                j: t.query.j,
                k: t.query.k,
                n: t.query.n,
                lambda: t.lambda(),
                entries: t.len(),
                checksum: table_checksum(t),
            })
            .collect()
    }

    pub fn to_json_string(&self) -> String {
        let doc = DocOut {
            format: FORMAT,
            version: VERSION,
            tables: self
                .tables
                .values()
                .map(|t| TableOut {
                    kind: t.kind,
                    j: t.query.j,
                    k: t.query.k,
                    n: t.query.n,
                    lambda: t.lambda(),
                    entries: OrderedEntries(t),
                    checksum: table_checksum(t),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("cache serializes");
        s.push('\n');
        s
    }

    /// Parse and validate. An empty or all-whitespace document is an empty
    /// cache.
    pub fn from_json_str(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Self::new());
        }
        let corrupt = |key: &str, reason: String| Error::CorruptCache {
            key: key.to_string(),
            reason,
        };
        let doc: DocIn =
            serde_json::from_str(text).map_err(|e| corrupt("<document>", e.to_string()))?;
        if doc.format != FORMAT {
            return Err(corrupt("format", format!("unexpected format `{}`", doc.format)));
        }
        if doc.version != VERSION {
            return Err(corrupt("version", format!("unsupported version {}", doc.version)));
        }
        let mut cache = Self::new();
        for t in doc.tables {
            let key = table_key(t.kind, t.j, t.k, t.n);
            let q = CoeffQuery::new(t.j, t.k, t.n).map_err(|e| corrupt(&key, e.to_string()))?;
            if t.lambda != q.lambda() {
                return Err(corrupt(&key, format!("lambda {} should be {}", t.lambda, q.lambda())));
            }
            let mut table = CoeffTable::empty(q, t.kind);
            for (idx, value) in &t.entries {
                let entry_key = format!("{key}:{idx}");
                let parts: Vec<i64> = idx
                    .split(',')
                    .map(|p| p.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| corrupt(&entry_key, "malformed index".into()))?;
                let [a, b, c] = parts[..] else {
                    return Err(corrupt(&entry_key, "index needs three components".into()));
                };
                if !q.in_domain(a, b, c) {
                    return Err(corrupt(&entry_key, "index outside the table domain".into()));
                }
                let v = parse_rational(value).map_err(|e| corrupt(&entry_key, e.to_string()))?;
                if rational_string(&v) != *value {
                    return Err(corrupt(&entry_key, format!("non-canonical rational `{value}`")));
                }
                table.insert(a as u32, b as u32, c as u32, v);
            }
            if !table.covers_domain() {
                return Err(corrupt(&key, "missing entries".into()));
            }
            if table_checksum(&table) != t.checksum {
                return Err(corrupt(&key, "checksum mismatch".into()));
            }
            if cache.get(t.kind, q).is_some() {
                return Err(corrupt(&key, "duplicate table".into()));
            }
            cache.insert(table);
        }
        Ok(cache)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string())
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}
