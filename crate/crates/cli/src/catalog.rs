//! Persistent ledger of known values `T(shape)`.
//!
//! One tab-separated line per record:
//!
//! ```text
//! 5:1,6:3 d=4	18	exact	paper/search	0
//! ```
//!
//! holding the canonical shape key, the value, `exact` or `lower`, the
//! provenance and a Unix timestamp. Records are only ever appended;
//! [`Catalog::compact`] rewrites the file keeping one winner per key.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use mcwc::bounds::K4_TABLE;
use mcwc::Shape;

pub const CATALOG_ENV: &str = "MCWC_CATALOG";
pub const DEFAULT_CATALOG: &str = "mcwc-catalog.tsv";

/// Parts sorted by `(n_i, w_i)`; `order[j]` is the caller's index of part `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeKey {
    pub parts: Vec<(usize, usize)>,
    pub distance: usize,
    pub order: Vec<usize>,
}

impl ShapeKey {
    pub fn new(lengths: &[usize], weights: &[usize], distance: usize) -> Self {
        let mut order: Vec<usize> = (0..lengths.len()).collect();
        order.sort_by_key(|&i| (lengths[i], weights[i]));
        ShapeKey {
            parts: order.iter().map(|&i| (lengths[i], weights[i])).collect(),
            distance,
            order,
        }
    }

    pub fn of(shape: &Shape) -> Self {
        ShapeKey::new(shape.lengths(), shape.weights(), shape.distance())
    }

    pub fn canonical(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|(n, w)| format!("{n}:{w}")).collect();
        format!("{} d={}", parts.join(","), self.distance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub key: String,
    pub value: u64,
    pub exact: bool,
    pub provenance: String,
    pub timestamp: u64,
}

impl CatalogEntry {
    pub fn new(key: &ShapeKey, value: u64, exact: bool, provenance: impl Into<String>) -> Self {
        CatalogEntry {
            key: key.canonical(),
            value,
            exact,
            provenance: provenance.into(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        }
    }

    fn line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\n",
            self.key,
            self.value,
            if self.exact { "exact" } else { "lower" },
            self.provenance.replace(['\t', '\n'], " "),
            self.timestamp
        )
    }

    fn parse(line_no: usize, line: &str) -> Result<Self> {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 5 {
            bail!("catalog line {line_no}: expected 5 tab-separated fields, found {}", f.len());
        }
        let exact = match f[2] {
            "exact" => true,
            "lower" => false,
            other => bail!("catalog line {line_no}: unknown status {other:?}"),
        };
        Ok(CatalogEntry {
            key: f[0].to_string(),
            value: f[1].parse().with_context(|| format!("catalog line {line_no}: bad value"))?,
            exact,
            provenance: f[3].to_string(),
            timestamp: f[4].parse().with_context(|| format!("catalog line {line_no}: bad timestamp"))?,
        })
    }

    /// `31 exact (paper/search)`
    pub fn summary(&self) -> String {
        format!(
            "{} {} ({})",
            self.value,
            if self.exact { "exact" } else { "lower-bound" },
            self.provenance
        )
    }
}

/// Values built into every catalog.
pub fn seed_entries() -> Vec<CatalogEntry> {
    K4_TABLE
        .iter()
        .map(|&((n1, n2), v)| CatalogEntry {
            timestamp: 0,
            ..CatalogEntry::new(&ShapeKey::new(&[n1, n2], &[3, 1], 4), v as u64, true, "paper/search")
        })
        .collect()
}

fn winner<'a>(entries: impl Iterator<Item = &'a CatalogEntry>) -> Option<&'a CatalogEntry> {
    let mut best: Option<&CatalogEntry> = None;
    for e in entries {
        best = match best {
            None => Some(e),
            Some(b) if b.exact => Some(b),
            Some(_) if e.exact => Some(e),
            Some(b) if e.value > b.value => Some(e),
            keep => keep,
        };
    }
    best
}

pub struct Catalog {
    path: PathBuf,
    entries: Vec<CatalogEntry>,
}

fn read_locked(file: &mut File) -> Result<String> {
    let mut text = String::new();
    file.seek(SeekFrom::Start(0))?;
    file.read_to_string(&mut text)?;
    Ok(text)
}

fn parse_all(text: &str) -> Result<Vec<CatalogEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| CatalogEntry::parse(i + 1, l))
        .collect()
}

impl Catalog {
    /// The explicit path, else `$MCWC_CATALOG`, else the working directory.
    pub fn resolve_path(explicit: Option<&Path>) -> PathBuf {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CATALOG))
    }

    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut entries = seed_entries();
        if path.exists() {
            let mut file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            file.lock_shared()?;
            entries.extend(parse_all(&read_locked(&mut file)?)?);
        }
        Ok(Catalog { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&self, key: &ShapeKey) -> Option<&CatalogEntry> {
        let k = key.canonical();
        winner(self.entries.iter().filter(|e| e.key == k))
    }

    /// Winning entry per key, seeds included.
    pub fn entries(&self) -> Vec<&CatalogEntry> {
        let mut by_key: BTreeMap<&str, Vec<&CatalogEntry>> = BTreeMap::new();
        for e in &self.entries {
            by_key.entry(&e.key).or_default().push(e);
        }
        by_key.into_values().filter_map(|v| winner(v.into_iter())).collect()
    }

    /// Appends `entry` unless an exact value is already known. A conflicting
    /// exact value, or a lower bound above a known exact value, is an error.
    pub fn record(&mut self, entry: CatalogEntry) -> Result<bool> {
        let mut file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("opening {}", self.path.display()))?;
        file.lock()?;
        let mut current = seed_entries();
        current.extend(parse_all(&read_locked(&mut file)?)?);
        if let Some(known) = winner(current.iter().filter(|e| e.key == entry.key)) {
            if known.exact {
                if entry.value > known.value || (entry.exact && entry.value != known.value) {
                    bail!(
                        "{}: new value {} contradicts recorded exact value {}",
                        entry.key,
                        entry.value,
                        known.value
                    );
                }
                self.entries = current;
                return Ok(false);
            }
            if !entry.exact && entry.value <= known.value {
                self.entries = current;
                return Ok(false);
            }
        }
        file.write_all(entry.line().as_bytes())?;
        current.push(entry);
        self.entries = current;
        Ok(true)
    }

    /// Rewrites the file with one winning record per key; seed values are
    /// not written out.
    pub fn compact(&mut self) -> Result<usize> {
        let mut file = OpenOptions::new()
            .create(true)
            .read(true)
            .write(true)
            .truncate(false)
            .open(&self.path)
            .with_context(|| format!("opening {}", self.path.display()))?;
        file.lock()?;
        let stored = parse_all(&read_locked(&mut file)?)?;
        let mut all = seed_entries();
        all.extend(stored);
        self.entries = all;
        let seeds = seed_entries();
        let keep: Vec<CatalogEntry> = self
            .entries()
            .into_iter()
            .filter(|e| !seeds.contains(e))
            .cloned()
            .collect();
        file.set_len(0)?;
        file.seek(SeekFrom::Start(0))?;
        for e in &keep {
            file.write_all(e.line().as_bytes())?;
        }
        Ok(keep.len())
    }
}
