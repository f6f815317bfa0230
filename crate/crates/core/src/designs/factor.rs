use std::collections::HashSet;

use crate::error::{Error, Result};

/// An edge `{a, b}` stored with `a < b`.
pub type Edge = (usize, usize);

fn edge(a: usize, b: usize) -> Edge {
    (a.min(b), a.max(b))
}

/// A 1-factorization (even `n`) or near-1-factorization (odd `n`) of `K_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    n: usize,
    factors: Vec<Vec<Edge>>,
}

/// Number of factors: `n - 1` for even `n`, `n` for odd `n > 1`.
pub fn gamma(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        n if n % 2 == 0 => n - 1,
        n => n,
    }
}

impl FactorSet {
    /// Checks every factor is a (near-)perfect matching and the factors
    /// partition the edges of `K_n`.
    pub fn new(n: usize, factors: Vec<Vec<Edge>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, f) in factors.iter().enumerate() {
            if f.len() != n / 2 {
                return Err(Error::Invariant(format!(
                    "factor {i} has {} edges, expected {}",
                    f.len(),
                    n / 2
                )));
            }
            let mut hit = vec![false; n];
            for &(a, b) in f {
                if a >= n || b >= n || a == b {
                    return Err(Error::Invariant(format!("factor {i}: bad edge {{{a},{b}}}")));
                }
                if hit[a] || hit[b] {
                    return Err(Error::Invariant(format!("factor {i} is not a matching at edge {{{a},{b}}}")));
                }
                hit[a] = true;
                hit[b] = true;
                if !seen.insert(edge(a, b)) {
                    return Err(Error::Invariant(format!("edge {{{a},{b}}} lies in two factors")));
                }
            }
        }
        if seen.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Invariant(format!(
                "factors cover {} of {} edges",
                seen.len(),
                n * n.saturating_sub(1) / 2
            )));
        }
        let factors = factors
            .into_iter()
            .map(|f| {
                let mut f: Vec<Edge> = f.into_iter().map(|(a, b)| edge(a, b)).collect();
                f.sort_unstable();
                f
            })
            .collect();
        Ok(FactorSet { n, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Vec<Edge>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The point factor `i` misses, for odd `n`.
    pub fn missing_point(&self, i: usize) -> Option<usize> {
        let mut hit = vec![false; self.n];
        for &(a, b) in &self.factors[i] {
            hit[a] = true;
            hit[b] = true;
        }
        hit.iter().position(|&h| !h)
    }
}

/// Circle method: point `n - 1` stays fixed, the others rotate modulo `n - 1`.
pub fn one_factorization(n: usize) -> Result<FactorSet> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidShape(format!("1-factorization needs even n >= 2, got {n}")));
    }
    let q = n - 1;
    let factors = (0..q)
        .map(|i| {
            let mut f = vec![edge(i, q)];
            for j in 1..n / 2 {
                f.push(edge((i + j) % q, (i + q - j) % q));
            }
            f
        })
        .collect();
    FactorSet::new(n, factors)
}

/// `F_i = {{i + j, i - j} : 1 ≤ j ≤ (n-1)/2}` modulo `n`; factor `i` misses `i`.
pub fn near_one_factorization(n: usize) -> Result<FactorSet> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidShape(format!("near-1-factorization needs odd n, got {n}")));
    }
    let factors = (0..n)
        .filter(|_| n > 1)
        .map(|i| (1..=n / 2).map(|j| edge((i + j) % n, (i + n - j) % n)).collect())
        .collect();
    FactorSet::new(n, factors)
}

/// Whichever of the two applies to `n`.
pub fn factorization(n: usize) -> Result<FactorSet> {
    if n.is_multiple_of(2) {
        one_factorization(n)
    } else {
        near_one_factorization(n)
    }
}

/// `r` rows over `n` symbols, each row a permutation, no repeated symbol in
/// a column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinRectangle {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl LatinRectangle {
    pub fn new(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invariant(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Invariant(format!("row {i} is not a permutation of 0..{n}")));
                }
            }
        }
        for j in 0..n {
            let mut seen = HashSet::new();
            for (i, row) in rows.iter().enumerate() {
                if !seen.insert(row[j]) {
                    return Err(Error::Invariant(format!("symbol {} repeats in column {j} at row {i}", row[j])));
                }
            }
        }
        Ok(LatinRectangle { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rows[i][j]
    }
}

/// The first `r` rows of `L[i][j] = (i + j) mod n`.
pub fn latin_rectangle(r: usize, n: usize) -> Result<LatinRectangle> {
    if r == 0 || r > n {
        return Err(Error::InvalidShape(format!("need 1 <= r <= n, got r={r}, n={n}")));
    }
    let rows = (0..r).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    LatinRectangle::new(n, rows)
}
