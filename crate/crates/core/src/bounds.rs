//! Exact values and upper bounds for `T(n, d, w)` and its two-dimensional
//! variant.
//!
//! All arithmetic is done on big integers, and every floor sits exactly
//! where the corresponding formula places it. In the nested expressions,
//! `⌊a · ⌊b⌋⌋` and `⌊a · b⌋` differ.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::code::Shape;
use crate::combin::{binomial, factorial};
use crate::error::{Error, Result};

/// Which formula produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    /// `d > 2W`, `d = 2W` or `d = 2`.
    Trivial,
    /// Minimum over every chain of single-part Johnson reductions.
    Johnson,
    /// One uniform Johnson step `⌊n^m/w^m · M(m, n-1, d, w-1)⌋`.
    JohnsonUniform,
    /// The iterated uniform bound with `s` full layers and `r` leftover rows.
    IteratedUniform,
    /// Minimum over admissible tuples of `∏ C(n_i, t_i) / C(w_i, t_i)`.
    AdmissibleProduct,
    /// `M(m, n, 4, 1) = n^(m-1)`.
    ConstantSum,
    /// `M(m, n, 4, 2) = C(n, 2)^(m-1) ⌊n/2⌋`.
    WeightTwo,
    /// `M(m, n, 4, 3) ≤ C(n, 3)^(m-1) ⌊n/3 ⌊(n-1)/2⌋⌋`, tight for
    /// `n ≡ 0,1,2,3 (mod 6)`, `n ∉ {6, 7}`.
    WeightThree,
    /// `D(n, 4, 3)`.
    PackingNumber43,
    /// `D(n, 3, 2)`.
    PackingNumber32,
    /// `D(n, k, 3)` for total block size four; `case` is 1..=5.
    K4 { case: u8 },
    /// One of the four small `(3,1)` values settled by exhaustive search.
    K4Table,
    /// `⌊n(nl - λ) / (Σ w_i² - nλ)⌋`.
    Lemma2d,
    /// Largest `M` satisfying the refined quadratic inequality.
    Improved2d,
}

impl BoundMethod {
    pub fn tag(&self) -> String {
        match self {
            BoundMethod::Trivial => "trivial".into(),
            BoundMethod::Johnson => "johnson".into(),
            BoundMethod::JohnsonUniform => "johnson-uniform".into(),
            BoundMethod::IteratedUniform => "eq1".into(),
            BoundMethod::AdmissibleProduct => "product".into(),
            BoundMethod::ConstantSum => "w1d4".into(),
            BoundMethod::WeightTwo => "w2d4".into(),
            BoundMethod::WeightThree => "w3d4".into(),
            BoundMethod::PackingNumber43 => "d43".into(),
            BoundMethod::PackingNumber32 => "d32".into(),
            BoundMethod::K4 { case } => format!("k4-case{case}"),
            BoundMethod::K4Table => "k4-table".into(),
            BoundMethod::Lemma2d => "lemma-2d".into(),
            BoundMethod::Improved2d => "improved-2d".into(),
        }
    }
}

impl std::str::FromStr for BoundMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial" => BoundMethod::Trivial,
            "johnson" => BoundMethod::Johnson,
            "johnson-uniform" => BoundMethod::JohnsonUniform,
            "eq1" => BoundMethod::IteratedUniform,
            "product" => BoundMethod::AdmissibleProduct,
            "w1d4" => BoundMethod::ConstantSum,
            "w2d4" => BoundMethod::WeightTwo,
            "w3d4" => BoundMethod::WeightThree,
            "d43" => BoundMethod::PackingNumber43,
            "d32" => BoundMethod::PackingNumber32,
            "k4-table" => BoundMethod::K4Table,
            "lemma-2d" => BoundMethod::Lemma2d,
            "improved-2d" => BoundMethod::Improved2d,
            other => match other.strip_prefix("k4-case").and_then(|c| c.parse().ok()) {
                Some(case @ 1..=5) => BoundMethod::K4 { case },
                _ => return Err(Error::Unsupported(format!("unknown bound method {other:?}"))),
            },
        })
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// A value together with the formula behind it. `exact` means the value is
/// the true maximum, not just an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub value: BigUint,
    pub method: BoundMethod,
    pub exact: bool,
}

impl BoundResult {
    pub fn new(value: impl Into<BigUint>, method: BoundMethod, exact: bool) -> Self {
        BoundResult {
            value: value.into(),
            method,
            exact,
        }
    }

    /// The value as a machine integer, if it fits.
    pub fn as_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.exact { "exact" } else { "upper" };
        write!(f, "{} {} {}", self.method, self.value, kind)
    }
}

/// Per-part counts `t_i ≤ w_i` summing to `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleTuple(Vec<usize>);

impl AdmissibleTuple {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Every `(w, t)`-admissible tuple, in lexicographic order.
pub fn admissible_tuples(caps: &[usize], t: usize) -> Vec<AdmissibleTuple> {
    fn go(caps: &[usize], left: usize, prefix: &mut Vec<usize>, out: &mut Vec<AdmissibleTuple>) {
        match caps.split_first() {
            None => {
                if left == 0 {
                    out.push(AdmissibleTuple(prefix.clone()));
                }
            }
            Some((&cap, rest)) => {
                let room: usize = rest.iter().sum();
                let lo = left.saturating_sub(room);
                for x in lo..=cap.min(left) {
                    prefix.push(x);
                    go(rest, left - x, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(caps, t, &mut Vec::new(), &mut out);
    out
}

type Parts = Vec<(usize, usize)>;

/// Drops weight-zero parts (they hold a single pattern) and sorts the rest.
fn normalize(lengths: &[usize], weights: &[usize]) -> Parts {
    let mut parts: Parts = lengths
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0)
        .map(|(&n, &w)| (n, w))
        .collect();
    parts.sort_unstable();
    parts
}

fn trivial_value(parts: &Parts, d: usize) -> Option<BigUint> {
    let total: usize = parts.iter().map(|p| p.1).sum();
    if d > 2 * total {
        return Some(BigUint::one());
    }
    if d == 2 * total {
        let v = parts.iter().map(|&(n, w)| n / w).min().unwrap_or(1);
        return Some(BigUint::from(v));
    }
    if d == 2 {
        return Some(
            parts
                .iter()
                .fold(BigUint::one(), |acc, &(n, w)| acc * binomial(n, w)),
        );
    }
    None
}

/// The three closed-form cases; `d = 2W` takes the minimum over
/// positive-weight parts only.
pub fn trivial_exact(shape: &Shape) -> Option<BoundResult> {
    let parts = normalize(shape.lengths(), shape.weights());
    trivial_value(&parts, shape.distance()).map(|v| BoundResult::new(v, BoundMethod::Trivial, true))
}

fn johnson_value(parts: &Parts, d: usize, memo: &mut HashMap<Parts, BigUint>) -> BigUint {
    if let Some(v) = trivial_value(parts, d) {
        return v;
    }
    if let Some(v) = memo.get(parts) {
        return v.clone();
    }
    let mut best: Option<BigUint> = None;
    for i in 0..parts.len() {
        if i > 0 && parts[i] == parts[i - 1] {
            continue;
        }
        let (n, w) = parts[i];
        let mut child = parts.clone();
        child[i] = (n - 1, w - 1);
        let child = normalize_parts(child);
        let v = (johnson_value(&child, d, memo) * n) / w;
        best = Some(match best {
            Some(b) if b <= v => b,
            _ => v,
        });
    }
    if let Some(v) = uniform_step(parts, d, memo) {
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    let v = best.unwrap_or_else(BigUint::one);
    memo.insert(parts.clone(), v.clone());
    v
}

fn normalize_parts(parts: Parts) -> Parts {
    let (l, w): (Vec<usize>, Vec<usize>) = parts.into_iter().unzip();
    normalize(&l, &w)
}

fn uniform_step(parts: &Parts, d: usize, memo: &mut HashMap<Parts, BigUint>) -> Option<BigUint> {
    let &(n, w) = parts.first()?;
    if parts.iter().any(|&p| p != (n, w)) {
        return None;
    }
    let m = parts.len() as u32;
    let child = normalize_parts(vec![(n - 1, w - 1); parts.len()]);
    let inner = johnson_value(&child, d, memo);
    Some((BigUint::from(n).pow(m) * inner) / BigUint::from(w).pow(m))
}

/// Smallest value reachable by repeatedly applying single-part reductions
/// `⌊n_i/w_i · T(n', d, w')⌋` (and the uniform reduction where all parts
/// agree) until a closed-form case is reached.
pub fn johnson_recursive(shape: &Shape) -> BoundResult {
    let parts = normalize(shape.lengths(), shape.weights());
    let mut memo = HashMap::new();
    let value = johnson_value(&parts, shape.distance(), &mut memo);
    let exact = trivial_value(&parts, shape.distance()).is_some();
    let method = if exact {
        BoundMethod::Trivial
    } else {
        BoundMethod::Johnson
    };
    BoundResult::new(value, method, exact)
}

/// A single uniform reduction on top of the recursive bound for the reduced
/// shape. `None` for non-uniform shapes or zero weight.
pub fn johnson_uniform(shape: &Shape) -> Option<BoundResult> {
    let (_, w) = shape.uniform_params()?;
    if w == 0 || trivial_exact(shape).is_some() {
        return None;
    }
    let parts = normalize(shape.lengths(), shape.weights());
    let mut memo = HashMap::new();
    let v = uniform_step(&parts, shape.distance(), &mut memo)?;
    Some(BoundResult::new(v, BoundMethod::JohnsonUniform, false))
}

/// Layers `s` and leftover `r` of the iterated uniform bound: `s` is the
/// smallest integer with `m(w-s) - δ + 1 < m` and `r = m(w-s) - δ + 1`.
pub fn iterated_layers(m: usize, w: usize, d: usize) -> (usize, i64) {
    let delta = (d / 2) as i64;
    let (m, w) = (m as i64, w as i64);
    let mut s = 0;
    while m * (w - s) - delta + 1 >= m {
        s += 1;
    }
    (s as usize, m * (w - s) - delta + 1)
}

/// The nested-floor uniform bound
/// `⌊n^m/w^m ⌊(n-1)^m/(w-1)^m ⋯ ⌊(n-s)^r/(w-s)^r⌋⋯⌋⌋`.
pub fn iterated_uniform_bound(m: usize, n: usize, d: usize, w: usize) -> Result<BoundResult> {
    let shape = Shape::uniform(m, n, w, d)?;
    let (s, r) = iterated_layers(m, w, d);
    if r < 0 {
        return trivial_exact(&shape).ok_or_else(|| {
            Error::Unsupported(format!("negative leftover r = {r} outside the trivial range"))
        });
    }
    let r = r as u32;
    let mut value = if w == s {
        BigUint::one()
    } else {
        BigUint::from(n - s).pow(r) / BigUint::from(w - s).pow(r)
    };
    for j in (0..s).rev() {
        value = BigUint::from(n - j).pow(m as u32) * value / BigUint::from(w - j).pow(m as u32);
    }
    let exact = trivial_exact(&shape).is_some();
    Ok(BoundResult::new(value, BoundMethod::IteratedUniform, exact))
}

/// `min_t ⌊∏ C(n_i, t_i) / C(w_i, t_i)⌋` over admissible tuples `t`.
pub fn admissible_product_bound(lengths: &[usize], weights: &[usize], t: usize) -> Result<BoundResult> {
    if lengths.len() != weights.len() {
        return Err(Error::InvalidShape(format!(
            "{} lengths but {} weights",
            lengths.len(),
            weights.len()
        )));
    }
    if lengths.iter().zip(weights).any(|(n, w)| w > n) {
        return Err(Error::InvalidShape("a weight exceeds its part length".into()));
    }
    let tuples = admissible_tuples(weights, t);
    let mut best: Option<BigUint> = None;
    for tuple in &tuples {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for ((&n, &w), &k) in lengths.iter().zip(weights).zip(tuple.counts()) {
            num *= binomial(n, k);
            den *= binomial(w, k);
        }
        let v = num / den;
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    let value = best.ok_or_else(|| {
        Error::Unsupported(format!(
            "no admissible tuple: t = {t} exceeds total weight {}",
            weights.iter().sum::<usize>()
        ))
    })?;
    Ok(BoundResult::new(value, BoundMethod::AdmissibleProduct, false))
}

/// `D(n, 4, 3)`; zero below four points.
pub fn packing_number_4_3(n: usize) -> BoundResult {
    if n < 4 {
        return BoundResult::new(0u32, BoundMethod::PackingNumber43, true);
    }
    let mut inner = (n - 1) * ((n - 2) / 2) / 3;
    if n.is_multiple_of(6) {
        inner -= 1;
    }
    BoundResult::new(n * inner / 4, BoundMethod::PackingNumber43, true)
}

/// `D(n, 3, 2) = ⌊n/3 ⌊(n-1)/2⌋⌋`, less one when `n ≡ 5 (mod 6)`.
pub fn packing_number_3_2(n: usize) -> BoundResult {
    BoundResult::new(triple_packing_size(n), BoundMethod::PackingNumber32, true)
}

pub(crate) fn triple_packing_size(n: usize) -> usize {
    if n < 3 {
        return 0;
    }
    let v = n * ((n - 1) / 2) / 3;
    if n % 6 == 5 {
        v - 1
    } else {
        v
    }
}

/// The four `D((n_1, n_2), (3, 1), 3)` values that differ from the general
/// formula.
pub const K4_TABLE: [((usize, usize), usize); 4] = [((6, 5), 18), ((7, 3), 20), ((7, 4), 26), ((7, 5), 31)];

/// A composition of total size four, reordered so weights are non-increasing;
/// `order[j]` is the caller's index of canonical part `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct K4Canonical {
    pub case: u8,
    pub lengths: Vec<usize>,
    pub order: Vec<usize>,
}

pub(crate) fn k4_canonical(lengths: &[usize], composition: &[usize]) -> Result<K4Canonical> {
    if lengths.len() != composition.len() {
        return Err(Error::InvalidShape(format!(
            "{} lengths but {} composition entries",
            lengths.len(),
            composition.len()
        )));
    }
    if let Some(i) = (0..lengths.len()).find(|&i| composition[i] > lengths[i]) {
        return Err(Error::InvalidShape(format!(
            "part {i}: block size {} exceeds length {}",
            composition[i], lengths[i]
        )));
    }
    let mut order: Vec<usize> = (0..lengths.len()).filter(|&i| composition[i] > 0).collect();
    // weight descending, then length ascending within equal weights
    order.sort_by_key(|&i| (std::cmp::Reverse(composition[i]), lengths[i]));
    let ks: Vec<usize> = order.iter().map(|&i| composition[i]).collect();
    let case = match ks.as_slice() {
        [4] => 1,
        [3, 1] => 2,
        [2, 2] => 3,
        [2, 1, 1] => 4,
        [1, 1, 1, 1] => 5,
        _ => {
            return Err(Error::Unsupported(format!(
                "composition {composition:?} does not have total block size four"
            )))
        }
    };
    let lengths = order.iter().map(|&i| lengths[i]).collect();
    Ok(K4Canonical { case, lengths, order })
}

/// `D(n, k, 3)` for every composition of four.
pub fn k4_packing_number(lengths: &[usize], composition: &[usize]) -> Result<BoundResult> {
    let canon = k4_canonical(lengths, composition)?;
    let n = &canon.lengths;
    let value = match canon.case {
        1 => return Ok(BoundResult::new(packing_number_4_3(n[0]).value, BoundMethod::K4 { case: 1 }, true)),
        2 => {
            let (n1, n2) = (n[0], n[1]);
            if let Some(&(_, v)) = K4_TABLE.iter().find(|(key, _)| *key == (n1, n2)) {
                return Ok(BoundResult::new(v, BoundMethod::K4Table, true));
            }
            let all = binomial(n1, 3);
            let layered = BigUint::from(n2 * triple_packing_size(n1));
            all.min(layered)
        }
        3 => BigUint::from(n[0] * (n[0] - 1) / 2 * (n[1] / 2)),
        4 => {
            let (n1, n2, n3) = (n[0], n[1], n[2]);
            BigUint::from((n1 * (n1 - 1) / 2 * n2).min(n1 / 2 * n2 * n3))
        }
        _ => BigUint::from(n[0] * n[1] * n[2]),
    };
    Ok(BoundResult::new(value, BoundMethod::K4 { case: canon.case }, true))
}

fn sum_squares(weights: &[usize]) -> i128 {
    weights.iter().map(|&w| (w * w) as i128).sum()
}

/// `⌊n(nl - λ) / (Σ w_i² - nλ)⌋`, or `None` when the denominator is not
/// positive.
pub fn bound_2d(_m: usize, n: usize, weights: &[usize], l: usize, lambda: usize) -> Option<BoundResult> {
    let (n_, l_, lam) = (n as i128, l as i128, lambda as i128);
    let den = sum_squares(weights) - n_ * lam;
    let num = n_ * (n_ * l_ - lam);
    if den <= 0 || num < 0 {
        return None;
    }
    Some(BoundResult::new((num / den) as u128, BoundMethod::Lemma2d, false))
}

/// Whether `λM(M-1) ≥ n(mf² + 2rf + r) - Mnl` with `f = ⌊Ml/m⌋`,
/// `r = Ml - mf`.
pub fn improved_inequality_holds(m: usize, n: usize, l: usize, lambda: usize, size: usize) -> bool {
    let (m, n, l, lam, big_m) = (m as i128, n as i128, l as i128, lambda as i128, size as i128);
    let f = big_m * l / m;
    let r = big_m * l - m * f;
    lam * big_m * (big_m - 1) >= n * (m * f * f + 2 * r * f + r) - big_m * n * l
}

/// The same count taken over rows: cell sizes in row `i` sum to `Mw_i`.
fn row_inequality_holds(n: usize, weights: &[usize], l: usize, lambda: usize, size: usize) -> bool {
    let (n, l, lam, big_m) = (n as i128, l as i128, lambda as i128, size as i128);
    let squares: i128 = weights
        .iter()
        .map(|&w| {
            let total = big_m * w as i128;
            let (f, r) = (total / n, total % n);
            n * f * f + 2 * r * f + r
        })
        .sum();
    lam * big_m * (big_m - 1) >= squares - big_m * n * l
}

/// Largest `M` satisfying [`improved_inequality_holds`] and its row
/// counterpart.
///
/// Sums of squares are at least `(Ml)²/m` over columns and `M²Σw_i²/n` over
/// rows, so no `M` beyond `m(nl - λ)/(nl² - mλ)` or beyond [`bound_2d`]
/// qualifies; the scan starts at the smaller of the two. When neither
/// envelope exists, `None` is returned.
pub fn improved_bound_2d(m: usize, n: usize, weights: &[usize], l: usize, lambda: usize) -> Option<BoundResult> {
    if m == 0 || n == 0 {
        return None;
    }
    let (mi, ni, li, lam) = (m as i128, n as i128, l as i128, lambda as i128);
    let slope = ni * li * li - mi * lam;
    let column = (slope > 0).then(|| (mi * (ni * li - lam)).max(0) / slope);
    let row = bound_2d(m, n, weights, l, lambda).and_then(|b| b.value.to_i128());
    let limit = match (column, row) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return None,
    };
    let best = (1..=limit as usize)
        .rev()
        .find(|&size| {
            improved_inequality_holds(m, n, l, lambda, size) && row_inequality_holds(n, weights, l, lambda, size)
        })
        .unwrap_or(0);
    Some(BoundResult::new(best, BoundMethod::Improved2d, false))
}

/// Limit of `T / v^t` when part lengths grow as `c_i v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticLimit {
    pub strength: usize,
    /// `C = min_t ∏ c_i^{t_i} (w_i - t_i)!`.
    pub constant: BigUint,
    /// `C / ∏ w_i!`.
    pub limit: BigRational,
    /// `1 / (w^m (w-1)^m ⋯ (w-s+1)^m (w-s)^r)` for equal weights and unit
    /// proportions.
    pub uniform_form: Option<BigRational>,
}

pub fn asymptotic_limit(weights: &[usize], proportions: &[usize], d: usize) -> Result<AsymptoticLimit> {
    if weights.is_empty() || weights.len() != proportions.len() {
        return Err(Error::InvalidShape("weights and proportions must have equal, positive length".into()));
    }
    if proportions.contains(&0) {
        return Err(Error::InvalidShape("proportions must be at least 1".into()));
    }
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::InvalidShape(format!("distance must be even and positive, got {d}")));
    }
    let total: usize = weights.iter().sum();
    let t = (total + 1)
        .checked_sub(d / 2)
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Unsupported(format!("d = {d} exceeds 2W; the code size is constant")))?;
    let mut constant: Option<BigUint> = None;
    for tuple in admissible_tuples(weights, t) {
        let v = weights
            .iter()
            .zip(proportions)
            .zip(tuple.counts())
            .fold(BigUint::one(), |acc, ((&w, &c), &k)| {
                acc * BigUint::from(c).pow(k as u32) * factorial(w - k)
            });
        if constant.as_ref().is_none_or(|b| v < *b) {
            constant = Some(v);
        }
    }
    let constant = constant.expect("t ≤ W always admits a tuple");
    let denom = weights.iter().fold(BigUint::one(), |acc, &w| acc * factorial(w));
    let limit = BigRational::new(BigInt::from(constant.clone()), BigInt::from(denom));

    let w = weights[0];
    let uniform_form = (weights.iter().all(|&x| x == w) && proportions.iter().all(|&c| c == 1)).then(|| {
        let m = weights.len();
        let (s, r) = iterated_layers(m, w, d);
        let mut den = BigUint::one();
        for j in 0..s {
            den *= BigUint::from(w - j).pow(m as u32);
        }
        if r > 0 {
            den *= BigUint::from(w - s).pow(r as u32);
        }
        BigRational::new(BigInt::one(), BigInt::from(den))
    });
    Ok(AsymptoticLimit {
        strength: t,
        constant,
        limit,
        uniform_form,
    })
}

/// `M(m, n, 4, 1) = n^(m-1)`.
pub fn constant_sum_value(m: usize, n: usize) -> BoundResult {
    BoundResult::new(BigUint::from(n).pow(m.saturating_sub(1) as u32), BoundMethod::ConstantSum, true)
}

/// `M(m, n, 4, 2) = C(n, 2)^(m-1) ⌊n/2⌋`.
pub fn weight_two_value(m: usize, n: usize) -> BoundResult {
    BoundResult::new(
        binomial(n, 2).pow(m.saturating_sub(1) as u32) * (n / 2),
        BoundMethod::WeightTwo,
        true,
    )
}

/// `C(n, 3)^(m-1) ⌊n/3 ⌊(n-1)/2⌋⌋`, an upper bound on `M(m, n, 4, 3)` that
/// is exact for `n ≡ 0,1,2,3 (mod 6)` other than 6 and 7.
pub fn weight_three_value(m: usize, n: usize) -> BoundResult {
    let tight = matches!(n % 6, 0..=3) && n != 6 && n != 7;
    BoundResult::new(
        binomial(n, 3).pow(m.saturating_sub(1) as u32) * (n * (n.saturating_sub(1) / 2) / 3),
        BoundMethod::WeightThree,
        tight,
    )
}

fn exact_family_values(shape: &Shape) -> Vec<BoundResult> {
    let mut out = Vec::new();
    if shape.distance() != 4 {
        return out;
    }
    if let Some((n, w)) = shape.uniform_params() {
        let m = shape.parts();
        match w {
            1 => out.push(constant_sum_value(m, n)),
            2 => out.push(weight_two_value(m, n)),
            3 => out.push(weight_three_value(m, n)),
            _ => {}
        }
    }
    let positive: Vec<usize> = shape.weights().iter().copied().filter(|&w| w > 0).collect();
    if positive == [3] {
        let i = shape.weights().iter().position(|&w| w == 3).unwrap_or(0);
        out.push(packing_number_3_2(shape.lengths()[i]));
    }
    if shape.total_weight() == 4 {
        if let Ok(b) = k4_packing_number(shape.lengths(), shape.weights()) {
            out.push(b);
        }
    }
    out
}

/// Every applicable one-dimensional value for the shape.
pub fn all_bounds(shape: &Shape) -> Vec<BoundResult> {
    let mut out = Vec::new();
    if let Some(b) = trivial_exact(shape) {
        out.push(b);
    }
    out.push(johnson_recursive(shape));
    if let Some(b) = johnson_uniform(shape) {
        out.push(b);
    }
    if let Some((n, w)) = shape.uniform_params() {
        if let Ok(b) = iterated_uniform_bound(shape.parts(), n, shape.distance(), w) {
            out.push(b);
        }
    }
    if let Some(t) = shape.strength() {
        if let Ok(b) = admissible_product_bound(shape.lengths(), shape.weights(), t) {
            out.push(b);
        }
    }
    out.extend(exact_family_values(shape));
    out
}

/// The smallest value among [`all_bounds`]; marked exact when any exact value
/// is known (exact values are never above a valid bound).
pub fn best_bound(shape: &Shape) -> BoundResult {
    let all = all_bounds(shape);
    if let Some(b) = all.iter().find(|b| b.exact) {
        return b.clone();
    }
    all.into_iter()
        .min_by(|a, b| a.value.cmp(&b.value))
        .expect("the recursive bound always applies")
}

/// Two-dimensional bounds; `λ = W - δ` is derived from the shape.
pub fn all_bounds_2d(shape: &Shape, l: usize) -> Result<Vec<BoundResult>> {
    let n = shape
        .matrix_width()
        .ok_or_else(|| Error::NotAMatrix(shape.lengths().to_vec()))?;
    let lambda = shape
        .total_weight()
        .checked_sub(shape.half_distance())
        .ok_or_else(|| Error::InvalidShape("distance exceeds 2W: no pair index".into()))?;
    let mut out = Vec::new();
    out.extend(bound_2d(shape.parts(), n, shape.weights(), l, lambda));
    out.extend(improved_bound_2d(shape.parts(), n, shape.weights(), l, lambda));
    Ok(out)
}
