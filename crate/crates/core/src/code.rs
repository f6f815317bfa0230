//! Partitioned binary words, multiply constant-weight codes, and the
//! equivalent generalized-packing view.
//!
//! A [`Shape`] fixes the part lengths `n_i`, the part weights `w_i` and the
//! even minimum distance `d`. A codeword of that shape has exactly `w_i` ones
//! in part `i`; a [`Code`] is a duplicate-free set of such words whose
//! pairwise Hamming distances are all at least `d`.
//!
//! Replacing every word by its per-part support turns a code into a family of
//! [`GeneralizedBlock`]s. Two words are at distance `2(W - |A ∩ B|)`, so the
//! distance condition is exactly the requirement that no admissible tuple of
//! `t = W - d/2 + 1` points is contained in two blocks.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::bounds::admissible_tuples;
use crate::combin::{binomial, cartesian, subsets_of};
use crate::error::{Error, Result};

/// Parameters of a multiply constant-weight code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    lengths: Vec<usize>,
    weights: Vec<usize>,
    distance: usize,
}

impl Shape {
    pub fn new(lengths: Vec<usize>, weights: Vec<usize>, distance: usize) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidShape("a shape needs at least one part".into()));
        }
        if lengths.len() != weights.len() {
            return Err(Error::InvalidShape(format!(
                "{} lengths but {} weights",
                lengths.len(),
                weights.len()
            )));
        }
        if let Some(i) = lengths.iter().position(|&n| n == 0) {
            return Err(Error::InvalidShape(format!("part {i} has length 0")));
        }
        for (i, (&n, &w)) in lengths.iter().zip(&weights).enumerate() {
            if w > n {
                return Err(Error::InvalidShape(format!(
                    "part {i} has weight {w} > length {n}"
                )));
            }
        }
        if distance == 0 || !distance.is_multiple_of(2) {
            return Err(Error::InvalidShape(format!(
                "distance must be even and positive, got {distance}"
            )));
        }
        Ok(Shape {
            lengths,
            weights,
            distance,
        })
    }

    /// `m` parts of length `n` and weight `w`.
    pub fn uniform(m: usize, n: usize, w: usize, d: usize) -> Result<Self> {
        Shape::new(vec![n; m], vec![w; m], d)
    }

    pub fn parts(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    /// `δ = d/2`.
    pub fn half_distance(&self) -> usize {
        self.distance / 2
    }

    /// `W = Σ w_i`.
    pub fn total_weight(&self) -> usize {
        self.weights.iter().sum()
    }

    pub fn total_length(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Strength `t = W - δ + 1` of the equivalent generalized packing, or
    /// `None` when `d > 2W` (no positive strength exists).
    pub fn strength(&self) -> Option<usize> {
        (self.total_weight() + 1).checked_sub(self.half_distance()).filter(|&t| t > 0)
    }

    /// `(n, w)` when every part has the same length and weight.
    pub fn uniform_params(&self) -> Option<(usize, usize)> {
        let n = self.lengths[0];
        let w = self.weights[0];
        let uniform = self.lengths.iter().all(|&x| x == n) && self.weights.iter().all(|&x| x == w);
        uniform.then_some((n, w))
    }

    /// Common part length, when the code has a matrix view.
    pub fn matrix_width(&self) -> Option<usize> {
        let n = self.lengths[0];
        self.lengths.iter().all(|&x| x == n).then_some(n)
    }

    pub fn with_distance(&self, distance: usize) -> Result<Shape> {
        Shape::new(self.lengths.clone(), self.weights.clone(), distance)
    }

    /// Number of words of this shape, `∏ C(n_i, w_i)`.
    pub fn candidate_count(&self) -> BigUint {
        self.lengths
            .iter()
            .zip(&self.weights)
            .fold(BigUint::one(), |acc, (&n, &w)| acc * binomial(n, w))
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({}),{},({}))",
            join(&self.lengths),
            self.distance,
            join(&self.weights)
        )
    }
}

/// A binary word split into parts. Ordering is the lexicographic order of the
/// concatenated `0`/`1` serialization for words of equal profile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    parts: Vec<Vec<bool>>,
}

impl Codeword {
    pub fn from_parts(parts: Vec<Vec<bool>>) -> Self {
        Codeword { parts }
    }

    /// Builds a word from per-part supports.
    pub fn from_supports(lengths: &[usize], supports: &[Vec<usize>]) -> Result<Self> {
        if lengths.len() != supports.len() {
            return Err(Error::ProfileMismatch {
                left: lengths.to_vec(),
                right: vec![supports.len()],
            });
        }
        let mut parts = Vec::with_capacity(lengths.len());
        for (i, (&n, supp)) in lengths.iter().zip(supports).enumerate() {
            let mut bits = vec![false; n];
            for &x in supp {
                if x >= n {
                    return Err(Error::InvalidShape(format!(
                        "point {x} outside part {i} of length {n}"
                    )));
                }
                bits[x] = true;
            }
            parts.push(bits);
        }
        Ok(Codeword { parts })
    }

    /// Parses the concatenated `0`/`1` serialization.
    pub fn parse(lengths: &[usize], s: &str) -> Result<Self> {
        let s = s.trim();
        let total: usize = lengths.iter().sum();
        if s.len() != total {
            return Err(Error::InvalidShape(format!(
                "word has {} symbols, profile needs {total}",
                s.len()
            )));
        }
        let mut bits = Vec::with_capacity(total);
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::InvalidShape(format!("unexpected symbol {other:?}")))
                }
            }
        }
        let mut parts = Vec::with_capacity(lengths.len());
        let mut rest = bits.as_slice();
        for &n in lengths {
            let (head, tail) = rest.split_at(n);
            parts.push(head.to_vec());
            rest = tail;
        }
        Ok(Codeword { parts })
    }

    pub fn parts(&self) -> &[Vec<bool>] {
        &self.parts
    }

    pub fn profile(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn part_weights(&self) -> Vec<usize> {
        self.parts
            .iter()
            .map(|p| p.iter().filter(|&&b| b).count())
            .collect()
    }

    /// Per-part support sets, each sorted.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.parts
            .iter()
            .map(|p| p.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
            .collect()
    }

    /// Profile and per-part weights agree with `shape`.
    pub fn conforms_to(&self, shape: &Shape) -> bool {
        self.profile() == shape.lengths() && self.part_weights() == shape.weights()
    }

    /// The matrix entry in row `i`, column `j`.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.parts[i][j]
    }

    pub(crate) fn packed(&self) -> Vec<u64> {
        let total: usize = self.parts.iter().map(Vec::len).sum();
        let mut out = vec![0u64; total.div_ceil(64).max(1)];
        let mut pos = 0;
        for part in &self.parts {
            for &b in part {
                if b {
                    out[pos / 64] |= 1 << (pos % 64);
                }
                pos += 1;
            }
        }
        out
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for part in &self.parts {
            for &b in part {
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Hamming distance between words of identical part-length profile.
pub fn distance(u: &Codeword, v: &Codeword) -> Result<usize> {
    if u.profile() != v.profile() {
        return Err(Error::ProfileMismatch {
            left: u.profile(),
            right: v.profile(),
        });
    }
    Ok(u
        .parts
        .iter()
        .zip(&v.parts)
        .map(|(a, b)| a.iter().zip(b).filter(|(x, y)| x != y).count())
        .sum())
}

/// A set of words sharing one [`Shape`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    shape: Shape,
    words: BTreeSet<Codeword>,
}

impl Code {
    pub fn empty(shape: Shape) -> Self {
        Code {
            shape,
            words: BTreeSet::new(),
        }
    }

    /// Collects words, rejecting any whose profile differs from the shape.
    /// Weights and distances are left to [`verify_mcwc`].
    pub fn from_words(shape: Shape, words: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        let mut code = Code::empty(shape);
        for w in words {
            code.insert(w)?;
        }
        Ok(code)
    }

    /// Returns `false` when the word was already present.
    pub fn insert(&mut self, word: Codeword) -> Result<bool> {
        if word.profile() != self.shape.lengths() {
            return Err(Error::ProfileMismatch {
                left: self.shape.lengths().to_vec(),
                right: word.profile(),
            });
        }
        Ok(self.words.insert(word))
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn words(&self) -> &BTreeSet<Codeword> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Codeword> {
        self.words.iter()
    }

    /// Same words, re-declared at another distance.
    pub fn with_distance(self, distance: usize) -> Result<Code> {
        Ok(Code {
            shape: self.shape.with_distance(distance)?,
            words: self.words,
        })
    }
}

/// Tuple of point sets contained in more blocks than the index allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingWitness {
    pub tuple: Vec<Vec<usize>>,
    pub blocks: Vec<usize>,
}

/// Outcome of checking a code or generalized packing. Violations are
/// reported, never raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Per part: every word (block) has the declared weight there.
    pub weight_ok: Vec<bool>,
    /// First word (block) index with a wrong weight.
    pub weight_violation: Option<usize>,
    pub claimed_distance: usize,
    /// `None` when there are fewer than two words.
    pub observed_min_distance: Option<usize>,
    /// A pair attaining the minimum, present iff that minimum is below the
    /// claimed distance.
    pub violating_pair: Option<(usize, usize)>,
    /// Only set by two-dimensional checks.
    pub column_weight_ok: Option<bool>,
    pub column_violation: Option<usize>,
    /// Only set by generalized-packing checks.
    pub overfull: Option<PackingWitness>,
}

impl VerificationReport {
    fn new(parts: usize, claimed_distance: usize) -> Self {
        VerificationReport {
            weight_ok: vec![true; parts],
            weight_violation: None,
            claimed_distance,
            observed_min_distance: None,
            violating_pair: None,
            column_weight_ok: None,
            column_violation: None,
            overfull: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.weight_ok.iter().all(|&b| b)
            && self.violating_pair.is_none()
            && self.column_weight_ok != Some(false)
            && self.overfull.is_none()
    }

    /// Human-readable reason for failure, if any.
    pub fn describe_failure(&self) -> Option<String> {
        if let Some(i) = self.weight_violation {
            return Some(format!("word {i} has wrong part weights"));
        }
        if let Some((a, b)) = self.violating_pair {
            return Some(format!(
                "words {a} and {b} are at distance {} < {}",
                self.observed_min_distance.unwrap_or(0),
                self.claimed_distance
            ));
        }
        if let Some(i) = self.column_violation {
            return Some(format!("word {i} has a column of wrong weight"));
        }
        if let Some(w) = &self.overfull {
            return Some(format!("tuple {:?} lies in blocks {:?}", w.tuple, w.blocks));
        }
        None
    }
}

/// Checks part weights and the minimum distance of every pair of words.
pub fn verify_mcwc(code: &Code) -> VerificationReport {
    let shape = code.shape();
    let mut report = VerificationReport::new(shape.parts(), shape.distance());
    for (idx, word) in code.iter().enumerate() {
        for (i, (&got, &want)) in word.part_weights().iter().zip(shape.weights()).enumerate() {
            if got != want {
                report.weight_ok[i] = false;
                report.weight_violation.get_or_insert(idx);
            }
        }
    }
    let packed: Vec<Vec<u64>> = code.iter().map(Codeword::packed).collect();
    let mut best: Option<(usize, (usize, usize))> = None;
    for a in 0..packed.len() {
        for b in a + 1..packed.len() {
            let dist: u32 = packed[a]
                .iter()
                .zip(&packed[b])
                .map(|(x, y)| (x ^ y).count_ones())
                .sum();
            let dist = dist as usize;
            if best.is_none_or(|(d, _)| dist < d) {
                best = Some((dist, (a, b)));
            }
        }
    }
    if let Some((dist, pair)) = best {
        report.observed_min_distance = Some(dist);
        if dist < shape.distance() {
            report.violating_pair = Some(pair);
        }
    }
    report
}

/// [`verify_mcwc`] plus a constant column weight `l` on the matrix view.
pub fn verify_2d(code: &Code, column_weight: usize) -> Result<VerificationReport> {
    let shape = code.shape();
    let width = shape
        .matrix_width()
        .ok_or_else(|| Error::NotAMatrix(shape.lengths().to_vec()))?;
    let mut report = verify_mcwc(code);
    let mut ok = true;
    for (idx, word) in code.iter().enumerate() {
        let bad = (0..width).any(|j| (0..shape.parts()).filter(|&i| word.bit(i, j)).count() != column_weight);
        if bad {
            ok = false;
            report.column_violation.get_or_insert(idx);
        }
    }
    report.column_weight_ok = Some(ok);
    Ok(report)
}

/// An m-tuple of sorted point sets, one per part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedBlock {
    parts: Vec<Vec<usize>>,
}

impl GeneralizedBlock {
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        for p in &mut parts {
            p.sort_unstable();
        }
        GeneralizedBlock { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }
}

impl fmt::Display for GeneralizedBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| if p.is_empty() { "-".to_string() } else { join(p) })
            .collect();
        f.write_str(&parts.join("|"))
    }
}

/// A `t-(n, k, λ)` generalized packing: blocks drawn from
/// `C(X_1, k_1) × … × C(X_m, k_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingInstance {
    pub lengths: Vec<usize>,
    pub composition: Vec<usize>,
    pub strength: usize,
    pub lambda: usize,
    pub blocks: Vec<GeneralizedBlock>,
}

impl PackingInstance {
    pub fn new(
        lengths: Vec<usize>,
        composition: Vec<usize>,
        strength: usize,
        lambda: usize,
        blocks: Vec<GeneralizedBlock>,
    ) -> Result<Self> {
        if lengths.is_empty() || lengths.len() != composition.len() {
            return Err(Error::InvalidShape(format!(
                "{} lengths but {} composition entries",
                lengths.len(),
                composition.len()
            )));
        }
        if lambda == 0 {
            return Err(Error::InvalidShape("index λ must be positive".into()));
        }
        Ok(PackingInstance {
            lengths,
            composition,
            strength,
            lambda,
            blocks,
        })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn total_weight(&self) -> usize {
        self.composition.iter().sum()
    }
}

/// Supports of the words, as a λ = 1 packing of strength `W - δ + 1`.
pub fn code_to_blocks(code: &Code) -> Result<PackingInstance> {
    let report = verify_mcwc(code);
    if !report.passed() {
        return Err(Error::Verification(
            report.describe_failure().unwrap_or_default(),
        ));
    }
    let shape = code.shape();
    let strength = shape.strength().ok_or_else(|| {
        Error::StrengthMismatch(format!(
            "distance {} exceeds twice the total weight {}",
            shape.distance(),
            shape.total_weight()
        ))
    })?;
    let blocks = code
        .iter()
        .map(|w| GeneralizedBlock::new(w.supports()))
        .collect();
    PackingInstance::new(
        shape.lengths().to_vec(),
        shape.weights().to_vec(),
        strength,
        1,
        blocks,
    )
}

/// Inverse of [`code_to_blocks`]: reads λ = 1 blocks of strength
/// `W - d/2 + 1` back as words at distance `d`.
pub fn blocks_to_code(packing: &PackingInstance, distance: usize) -> Result<Code> {
    let shape = Shape::new(
        packing.lengths.clone(),
        packing.composition.clone(),
        distance,
    )?;
    if packing.lambda != 1 {
        return Err(Error::StrengthMismatch(format!(
            "codes correspond to λ = 1, packing has λ = {}",
            packing.lambda
        )));
    }
    if shape.strength() != Some(packing.strength) {
        return Err(Error::StrengthMismatch(format!(
            "distance {distance} needs strength W - δ + 1 = {:?}, packing has {}",
            shape.strength(),
            packing.strength
        )));
    }
    let mut code = Code::empty(shape);
    for block in &packing.blocks {
        let word = Codeword::from_supports(&packing.lengths, block.parts())?;
        if !code.insert(word)? {
            return Err(Error::Verification(format!("repeated block {block}")));
        }
    }
    let report = verify_mcwc(&code);
    if !report.passed() {
        return Err(Error::Verification(
            report.describe_failure().unwrap_or_default(),
        ));
    }
    Ok(code)
}

/// Every admissible tuple contained in a block is counted; any tuple lying in
/// more than λ blocks is reported with the blocks containing it.
pub fn verify_generalized_packing(packing: &PackingInstance) -> VerificationReport {
    let m = packing.lengths.len();
    let mut report = VerificationReport::new(m, 0);
    for (idx, block) in packing.blocks.iter().enumerate() {
        let ok_shape = block.parts().len() == m
            && block.parts().iter().enumerate().all(|(i, p)| {
                p.len() == packing.composition[i]
                    && p.iter().all(|&x| x < packing.lengths[i])
                    && p.windows(2).all(|w| w[0] < w[1])
            });
        if !ok_shape {
            for i in 0..m {
                let good = block.parts().get(i).is_some_and(|p| p.len() == packing.composition[i]);
                if !good {
                    report.weight_ok[i] = false;
                }
            }
            report.weight_violation.get_or_insert(idx);
        }
    }
    if report.weight_violation.is_some() {
        return report;
    }
    let tuples = admissible_tuples(&packing.composition, packing.strength);
    let mut seen: HashMap<Vec<Vec<usize>>, Vec<usize>> = HashMap::new();
    for (idx, block) in packing.blocks.iter().enumerate() {
        for t in &tuples {
            let choices: Vec<Vec<Vec<usize>>> = block
                .parts()
                .iter()
                .zip(t.counts())
                .map(|(p, &k)| subsets_of(p, k))
                .collect();
            for sub in cartesian(&choices) {
                match seen.entry(sub) {
                    Entry::Occupied(mut e) => {
                        e.get_mut().push(idx);
                        if e.get().len() > packing.lambda && report.overfull.is_none() {
                            report.overfull = Some(PackingWitness {
                                tuple: e.key().clone(),
                                blocks: e.get().clone(),
                            });
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(vec![idx]);
                    }
                }
            }
        }
    }
    report
}
