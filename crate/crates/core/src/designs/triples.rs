use std::collections::{HashMap, HashSet};

use crate::bounds::triple_packing_size;
use crate::error::{Error, Result};

pub type Triple = [usize; 3];

/// Pairwise disjoint 2-(n,3,1) packings, the first `optimal_count` of them
/// of maximum size `D(n, 3, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePackingFamily {
    n: usize,
    packings: Vec<Vec<Triple>>,
    optimal_count: usize,
}

/// `M(n)`, the largest number of pairwise disjoint optimal 2-(n,3,1) packings.
pub fn max_disjoint_optimal(n: usize) -> usize {
    match n {
        0..=2 => 0,
        3 => 1,
        4 => 4,
        5 => 5,
        6 => 4,
        7 => 2,
        n if n % 2 == 1 => n - 2,
        n => n - 1,
    }
}

/// One when a partition of all triples needs an extra, non-optimal packing
/// beyond the `M(n)` optimal ones.
pub fn extra_packings(n: usize) -> usize {
    usize::from(n >= 10 && matches!(n % 6, 4 | 5))
}

impl TriplePackingFamily {
    pub fn new(n: usize, packings: Vec<Vec<Triple>>, optimal_count: usize) -> Result<Self> {
        if optimal_count > packings.len() {
            return Err(Error::Invariant(format!(
                "{optimal_count} optimal packings declared but only {} given",
                packings.len()
            )));
        }
        let optimum = triple_packing_size(n);
        let mut owner: HashMap<Triple, usize> = HashMap::new();
        let mut sorted = Vec::with_capacity(packings.len());
        for (i, p) in packings.into_iter().enumerate() {
            let mut pairs = HashSet::new();
            let mut blocks = Vec::with_capacity(p.len());
            for mut t in p {
                t.sort_unstable();
                if t[2] >= n || t[0] == t[1] || t[1] == t[2] {
                    return Err(Error::Invariant(format!("packing {i}: bad triple {t:?}")));
                }
                for pair in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                    if !pairs.insert(pair) {
                        return Err(Error::Invariant(format!("packing {i}: pair {pair:?} covered twice")));
                    }
                }
                if let Some(j) = owner.insert(t, i) {
                    return Err(Error::Invariant(format!("triple {t:?} lies in packings {j} and {i}")));
                }
                blocks.push(t);
            }
            blocks.sort_unstable();
            if i < optimal_count && blocks.len() != optimum {
                return Err(Error::Invariant(format!(
                    "packing {i} has {} triples, optimal is {optimum}",
                    blocks.len()
                )));
            }
            if let Some(prev) = sorted.last().map(Vec::len) {
                if blocks.len() > prev {
                    return Err(Error::Invariant(format!("packing {i} is larger than packing {}", i - 1)));
                }
            }
            sorted.push(blocks);
        }
        Ok(TriplePackingFamily {
            n,
            packings: sorted,
            optimal_count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn packings(&self) -> &[Vec<Triple>] {
        &self.packings
    }

    pub fn optimal_count(&self) -> usize {
        self.optimal_count
    }

    pub fn len(&self) -> usize {
        self.packings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packings.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.packings.iter().map(Vec::len).collect()
    }

    pub fn total_triples(&self) -> usize {
        self.packings.iter().map(Vec::len).sum()
    }

    /// Every triple of the point set lies in some packing.
    pub fn is_partition(&self) -> bool {
        let n = self.n;
        self.total_triples() == n * n.saturating_sub(1) * n.saturating_sub(2) / 6
    }

    /// Drops every triple through `point` and closes the gap in the labels.
    pub fn delete_point(&self, point: usize) -> Result<TriplePackingFamily> {
        let relabel = |x: usize| if x > point { x - 1 } else { x };
        let mut packings: Vec<Vec<Triple>> = self
            .packings
            .iter()
            .map(|p| {
                p.iter()
                    .filter(|t| !t.contains(&point))
                    .map(|t| t.map(relabel))
                    .collect()
            })
            .collect();
        packings.sort_by_key(|p| std::cmp::Reverse(p.len()));
        let n = self.n - 1;
        let optimum = triple_packing_size(n);
        let optimal = packings.iter().take_while(|p| p.len() == optimum).count();
        TriplePackingFamily::new(n, packings, optimal)
    }
}

pub(crate) fn trivial_family(n: usize) -> Option<TriplePackingFamily> {
    let packings = match n {
        3 => vec![vec![[0, 1, 2]]],
        4 => vec![vec![[0, 1, 2]], vec![[0, 1, 3]], vec![[0, 2, 3]], vec![[1, 2, 3]]],
        _ => return None,
    };
    let count = packings.len();
    TriplePackingFamily::new(n, packings, count).ok()
}
