//! The design file format and the lookup of bundled or user-supplied data.
//!
//! ```text
//! # optional comments
//! DESIGN v1 type=triples n=7 params=optimal:2
//! --
//! 0 1 2
//! 0 3 4
//! --
//! ...
//! ```
//!
//! Each `--` line opens a stanza: a factor, a packing, or a parallel class,
//! depending on `type`. Blocks are space-separated point lists.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::format::parse_fields;

use super::factor::FactorSet;
use super::resolvable::{self, ResolvableDesign};
use super::triples::{trivial_family, Triple, TriplePackingFamily};

/// Environment variable naming a directory whose design files take
/// precedence over the bundled ones.
pub const DESIGNS_DIR_ENV: &str = "MCWC_DESIGNS_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Design {
    FactorSet(FactorSet),
    Triples(TriplePackingFamily),
    Resolvable(ResolvableDesign),
}

struct Raw {
    kind: String,
    n: usize,
    params: HashMap<String, usize>,
    stanzas: Vec<(usize, Vec<Vec<usize>>)>,
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty design file"))?;
    let rest = header
        .strip_prefix("DESIGN v1")
        .ok_or_else(|| Error::parse(ln, format!("expected \"DESIGN v1 ...\", found {header:?}")))?;
    let fields = parse_fields(ln, rest)?;
    let kind = fields
        .get("type")
        .cloned()
        .ok_or_else(|| Error::parse(ln, "missing type="))?;
    let n = fields
        .get("n")
        .ok_or_else(|| Error::parse(ln, "missing n="))?
        .parse()
        .map_err(|_| Error::parse(ln, "n= is not an integer"))?;
    let mut params = HashMap::new();
    if let Some(p) = fields.get("params").filter(|p| !p.is_empty()) {
        for item in p.split(',') {
            let (k, v) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, format!("param {item:?} is not key:value")))?;
            let v = v
                .parse()
                .map_err(|_| Error::parse(ln, format!("param {k}: {v:?} is not an integer")))?;
            params.insert(k.to_string(), v);
        }
    }
    let mut stanzas: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    for (ln, line) in lines {
        if line == "--" {
            stanzas.push((ln, Vec::new()));
            continue;
        }
        let block = line
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::parse(ln, format!("{x:?} is not a point"))))
            .collect::<Result<Vec<usize>>>()?;
        if let Some(x) = block.iter().find(|&&x| x >= n) {
            return Err(Error::parse(ln, format!("point {x} outside 0..{n}")));
        }
        stanzas
            .last_mut()
            .ok_or_else(|| Error::parse(ln, "block before the first \"--\" stanza marker"))?
            .1
            .push(block);
    }
    Ok(Raw { kind, n, params, stanzas })
}

fn sized<const K: usize>(ln: usize, b: &[usize]) -> Result<[usize; K]> {
    b.try_into()
        .map_err(|_| Error::parse(ln, format!("block {b:?} should have {K} points")))
}

fn param(raw: &Raw, key: &str) -> Result<usize> {
    raw.params
        .get(key)
        .copied()
        .ok_or_else(|| Error::parse(1, format!("params is missing {key}")))
}

/// Parses a design and checks its invariants.
pub fn parse_design(text: &str) -> Result<Design> {
    let raw = parse_raw(text)?;
    match raw.kind.as_str() {
        "factorset" => {
            let factors = raw
                .stanzas
                .iter()
                .map(|(ln, s)| s.iter().map(|b| sized::<2>(*ln, b).map(|[a, b]| (a, b))).collect())
                .collect::<Result<_>>()?;
            Ok(Design::FactorSet(FactorSet::new(raw.n, factors)?))
        }
        "triples" => {
            let packings: Vec<Vec<Triple>> = raw
                .stanzas
                .iter()
                .map(|(ln, s)| s.iter().map(|b| sized::<3>(*ln, b)).collect())
                .collect::<Result<_>>()?;
            let optimal = raw.params.get("optimal").copied().unwrap_or(0);
            Ok(Design::Triples(TriplePackingFamily::new(raw.n, packings, optimal)?))
        }
        "resolvable" => {
            let classes = raw.stanzas.iter().map(|(_, s)| s.clone()).collect();
            Ok(Design::Resolvable(ResolvableDesign::new(
                raw.n,
                param(&raw, "k")?,
                param(&raw, "lambda")?,
                param(&raw, "alpha")?,
                classes,
            )?))
        }
        other => Err(Error::parse(1, format!("unknown design type {other:?}"))),
    }
}

pub fn write_design(design: &Design) -> String {
    let (header, stanzas): (String, Vec<Vec<Vec<usize>>>) = match design {
        Design::FactorSet(f) => (
            format!("type=factorset n={}", f.n()),
            f.factors()
                .iter()
                .map(|fac| fac.iter().map(|&(a, b)| vec![a, b]).collect())
                .collect(),
        ),
        Design::Triples(t) => (
            format!("type=triples n={} params=optimal:{}", t.n(), t.optimal_count()),
            t.packings()
                .iter()
                .map(|p| p.iter().map(|x| x.to_vec()).collect())
                .collect(),
        ),
        Design::Resolvable(r) => (
            format!(
                "type=resolvable n={} params=k:{},lambda:{},alpha:{}",
                r.points(),
                r.k(),
                r.lambda(),
                r.alpha()
            ),
            r.classes().to_vec(),
        ),
    };
    let mut out = format!("DESIGN v1 {header}\n");
    for s in stanzas {
        out.push_str("--\n");
        for b in s {
            let line: Vec<String> = b.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    out
}

pub fn import_design(path: &Path) -> Result<Design> {
    parse_design(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

fn bundled_triples(n: usize) -> Option<&'static str> {
    Some(match n {
        5 => include_str!("../../data/triples-5.design"),
        7 => include_str!("../../data/triples-7.design"),
        9 => include_str!("../../data/triples-9.design"),
        10 => include_str!("../../data/triples-10.design"),
        11 => include_str!("../../data/triples-11.design"),
        13 => include_str!("../../data/triples-13.design"),
        _ => return None,
    })
}

/// Source of design data: bundled files, optionally overridden by files
/// named `triples-<n>.design` in a directory.
#[derive(Clone, Debug, Default)]
pub struct DesignStore {
    dir: Option<PathBuf>,
}

impl DesignStore {
    pub fn bundled() -> Self {
        DesignStore { dir: None }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        DesignStore { dir: Some(dir.into()) }
    }

    /// Uses the directory in `MCWC_DESIGNS_DIR` when set.
    pub fn from_env() -> Self {
        match std::env::var_os(DESIGNS_DIR_ENV) {
            Some(d) if !d.is_empty() => DesignStore::with_dir(d),
            _ => DesignStore::bundled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn load_triples(&self, n: usize) -> Result<Option<TriplePackingFamily>> {
        let text = match self.dir.as_ref().map(|d| d.join(format!("triples-{n}.design"))) {
            Some(p) if p.exists() => Some(std::fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?),
            _ => bundled_triples(n).map(str::to_string),
        };
        let Some(text) = text else {
            return Ok(None);
        };
        match parse_design(&text)? {
            Design::Triples(f) if f.n() == n => Ok(Some(f)),
            _ => Err(Error::Invariant(format!("triples-{n}.design does not hold a family on {n} points"))),
        }
    }

    /// Pairwise disjoint 2-(n,3,1) packings, largest first. Families for
    /// 6, 8 and 12 points come from those on one more point by deleting a
    /// point.
    pub fn triple_packings(&self, n: usize) -> Result<TriplePackingFamily> {
        if let Some(f) = self.load_triples(n)? {
            return Ok(f);
        }
        if let Some(f) = trivial_family(n) {
            return Ok(f);
        }
        let parent = match n {
            6 => Some((7, 1)),
            8 => Some((9, 8)),
            12 => Some((13, 12)),
            _ => None,
        };
        if let Some((m, point)) = parent {
            if let Some(f) = self.load_triples(m)? {
                return f.delete_point(point);
            }
        }
        Err(Error::Unavailable(format!(
            "no disjoint triple packing family for n = {n}; supply triples-{n}.design in a designs directory \
             (see search_disjoint_packings)"
        )))
    }

    pub fn alpha_resolvable_bibd(&self, m: usize, k: usize, lambda: usize, alpha: usize) -> Result<ResolvableDesign> {
        resolvable::build(self, m, k, lambda, alpha)
    }
}
