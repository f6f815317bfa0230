//! Explicit codes and generalized packings, each returned with a
//! certificate of its size, distance and (where known) optimality.

mod drp;
mod k4;
mod product;

pub use drp::{
    code_from_drp, concatenate, drp_from_alpha_resolvable, drp_from_code, example_drp_3x3, example_drp_6x6,
    example_drp_9x9, latin_drp, DrpArray,
};
pub use k4::{construct_k4_packing, construct_k4_packing_with};
pub use product::{
    constant_sum_mcwc, mcwc_w1_d4, mcwc_w2_d4, mcwc_w3_d4, mcwc_w3_d4_with, product_construction, w3_packing_count,
};

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::bounds::{BoundMethod, BoundResult};
use crate::code::{verify_mcwc, Code};
use crate::error::{Error, Result};

/// What a construction claims about its output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCertificate {
    pub size: usize,
    pub distance: usize,
    /// The output meets `bound` and the bound is the true maximum.
    pub optimal: bool,
    pub bound: Option<BoundResult>,
    pub provenance: String,
}

impl ConstructionCertificate {
    /// Certificate for a verified code: optimal when its size reaches an
    /// exact value or any upper bound.
    pub(crate) fn for_code(code: &Code, bound: Option<BoundResult>, provenance: impl Into<String>) -> Result<Self> {
        let report = verify_mcwc(code);
        if !report.passed() {
            return Err(Error::Verification(report.describe_failure().unwrap_or_default()));
        }
        let size = code.len();
        let optimal = bound.as_ref().is_some_and(|b| b.value == size.into());
        Ok(ConstructionCertificate {
            size,
            distance: code.shape().distance(),
            optimal,
            bound,
            provenance: provenance.into(),
        })
    }

    /// `key=value` lines, as written next to a code file.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "size={}", self.size);
        let _ = writeln!(out, "distance={}", self.distance);
        let _ = writeln!(out, "optimal={}", self.optimal);
        if let Some(b) = &self.bound {
            let _ = writeln!(out, "bound={}", b.value);
            let _ = writeln!(out, "bound_method={}", b.method);
            let _ = writeln!(out, "bound_exact={}", b.exact);
        }
        let _ = writeln!(out, "provenance={}", self.provenance);
        out
    }

    /// Reads the fields written by [`to_kv`](Self::to_kv).
    pub fn parse_kv(text: &str) -> Result<ConstructionCertificate> {
        let mut map = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(i + 1, format!("expected key=value, found {line:?}")))?;
            map.insert(k.to_string(), (i + 1, v.to_string()));
        }
        let get = |k: &str| map.get(k).map(|(_, v)| v.as_str());
        let num = |k: &str| -> Result<usize> {
            let (ln, v) = map.get(k).ok_or_else(|| Error::parse(1, format!("missing {k}=")))?;
            v.parse().map_err(|_| Error::parse(*ln, format!("{k}: {v:?} is not an integer")))
        };
        let bound = match (get("bound"), get("bound_method")) {
            (Some(v), Some(m)) => Some(BoundResult::new(
                v.parse::<BigUint>()
                    .map_err(|_| Error::parse(1, format!("bound: {v:?} is not an integer")))?,
                m.parse::<BoundMethod>()?,
                get("bound_exact") == Some("true"),
            )),
            _ => None,
        };
        Ok(ConstructionCertificate {
            size: num("size")?,
            distance: num("distance")?,
            optimal: get("optimal") == Some("true"),
            bound,
            provenance: get("provenance").unwrap_or_default().to_string(),
        })
    }
}
