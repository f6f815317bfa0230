//! Plain-text formats for codes and generalized packings.
//!
//! ```text
//! MCWC v1
//! m=2 lengths=4,4 weights=2,2 d=4
//! 11001100
//! ...
//! ```
//!
//! ```text
//! PACKING v1
//! m=2 lengths=7,5 composition=3,1 t=3 lambda=1
//! 0,1,2|0
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. An empty part in a
//! block is written `-`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::code::{Code, Codeword, GeneralizedBlock, PackingInstance, Shape};
use crate::error::{Error, Result};

const CODE_MAGIC: &str = "MCWC v1";
const PACKING_MAGIC: &str = "PACKING v1";

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_list(line: usize, key: &str, value: &str) -> Result<Vec<usize>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::parse(line, format!("{key}: {x:?} is not a non-negative integer")))
        })
        .collect()
}

pub(crate) fn parse_fields(line: usize, text: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for tok in text.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value, found {tok:?}")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(line, format!("duplicate key {k:?}")));
        }
    }
    Ok(out)
}

fn field<'a>(fields: &'a HashMap<String, String>, line: usize, key: &str) -> Result<&'a str> {
    fields
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::parse(line, format!("missing {key}=")))
}

fn scalar(fields: &HashMap<String, String>, line: usize, key: &str) -> Result<usize> {
    let v = field(fields, line, key)?;
    v.parse()
        .map_err(|_| Error::parse(line, format!("{key}: {v:?} is not a non-negative integer")))
}

fn check_m(fields: &HashMap<String, String>, line: usize, got: usize) -> Result<()> {
    let m = scalar(fields, line, "m")?;
    if m != got {
        return Err(Error::parse(line, format!("m={m} but {got} parts listed")));
    }
    Ok(())
}

pub fn write_code(code: &Code) -> String {
    let s = code.shape();
    let mut out = format!(
        "{CODE_MAGIC}\nm={} lengths={} weights={} d={}\n",
        s.parts(),
        join(s.lengths()),
        join(s.weights()),
        s.distance()
    );
    for w in code.iter() {
        let _ = writeln!(out, "{w}");
    }
    out
}

/// Parses a code file. Words must have the declared profile and may not
/// repeat; weights and distances are checked by the verifiers, not here.
pub fn read_code(text: &str) -> Result<Code> {
    let mut lines = content_lines(text);
    let (ln, magic) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    if magic != CODE_MAGIC {
        return Err(Error::parse(ln, format!("expected {CODE_MAGIC:?}, found {magic:?}")));
    }
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(ln + 1, "missing header"))?;
    let fields = parse_fields(ln, header)?;
    let lengths = parse_list(ln, "lengths", field(&fields, ln, "lengths")?)?;
    let weights = parse_list(ln, "weights", field(&fields, ln, "weights")?)?;
    check_m(&fields, ln, lengths.len())?;
    let d = scalar(&fields, ln, "d")?;
    let shape = Shape::new(lengths, weights, d).map_err(|e| Error::parse(ln, e.to_string()))?;
    let mut code = Code::empty(shape);
    for (ln, l) in lines {
        let word = Codeword::parse(code.shape().lengths(), l).map_err(|e| Error::parse(ln, e.to_string()))?;
        if !code.insert(word)? {
            return Err(Error::parse(ln, format!("duplicate word {l}")));
        }
    }
    Ok(code)
}

pub fn read_code_file(path: &Path) -> Result<Code> {
    read_code(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

pub fn write_code_file(path: &Path, code: &Code) -> Result<()> {
    std::fs::write(path, write_code(code)).map_err(|e| Error::io(path, e))
}

pub fn write_packing(p: &PackingInstance) -> String {
    let mut out = format!(
        "{PACKING_MAGIC}\nm={} lengths={} composition={} t={} lambda={}\n",
        p.lengths.len(),
        join(&p.lengths),
        join(&p.composition),
        p.strength,
        p.lambda
    );
    for b in &p.blocks {
        let _ = writeln!(out, "{b}");
    }
    out
}

fn parse_block(line: usize, text: &str, m: usize) -> Result<GeneralizedBlock> {
    let parts: Vec<Vec<usize>> = text
        .split('|')
        .map(|p| {
            let p = p.trim();
            if p == "-" {
                Ok(Vec::new())
            } else {
                parse_list(line, "block", p)
            }
        })
        .collect::<Result<_>>()?;
    if parts.len() != m {
        return Err(Error::parse(line, format!("block has {} parts, expected {m}", parts.len())));
    }
    for p in &parts {
        if p.iter().collect::<BTreeSet<_>>().len() != p.len() {
            return Err(Error::parse(line, "repeated point inside a block part"));
        }
    }
    Ok(GeneralizedBlock::new(parts))
}

pub fn read_packing(text: &str) -> Result<PackingInstance> {
    let mut lines = content_lines(text);
    let (ln, magic) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    if magic != PACKING_MAGIC {
        return Err(Error::parse(ln, format!("expected {PACKING_MAGIC:?}, found {magic:?}")));
    }
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(ln + 1, "missing header"))?;
    let fields = parse_fields(ln, header)?;
    let lengths = parse_list(ln, "lengths", field(&fields, ln, "lengths")?)?;
    let composition = parse_list(ln, "composition", field(&fields, ln, "composition")?)?;
    check_m(&fields, ln, lengths.len())?;
    let t = scalar(&fields, ln, "t")?;
    let lambda = scalar(&fields, ln, "lambda")?;
    let m = lengths.len();
    let blocks = lines.map(|(ln, l)| parse_block(ln, l, m)).collect::<Result<_>>()?;
    PackingInstance::new(lengths, composition, t, lambda, blocks).map_err(|e| Error::parse(ln, e.to_string()))
}

pub fn read_packing_file(path: &Path) -> Result<PackingInstance> {
    read_packing(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

pub fn write_packing_file(path: &Path, p: &PackingInstance) -> Result<()> {
    std::fs::write(path, write_packing(p)).map_err(|e| Error::io(path, e))
}
