//! Exact search for small instances: maximum codes as maximum cliques in the
//! distance-compatibility graph, and families of disjoint triple packings.

mod bitset;
mod clique;
mod packings;

pub use bitset::Bitset;
pub use packings::{search_disjoint_packings, MAX_PACKING_POINTS};

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{
    admissible_product_bound, iterated_uniform_bound, johnson_recursive, johnson_uniform, BoundResult,
};
use crate::code::{Code, Codeword, Shape};
use crate::combin::{cartesian, combinations};
use crate::error::{Error, Result};

use clique::{color_sort, expand, greedy, Graph, Limits, Shared};

pub const DEFAULT_CANDIDATE_CAP: usize = 20_000;

/// Limits for one search run. At least one of the node and time limits
/// must be set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub workers: usize,
    pub seed: u64,
    pub candidate_cap: usize,
}

impl SearchBudget {
    pub fn new(node_limit: Option<u64>, time_limit: Option<Duration>) -> Result<Self> {
        if node_limit.is_none() && time_limit.is_none() {
            return Err(Error::InvalidShape("a search budget needs a node or time limit".into()));
        }
        Ok(SearchBudget {
            node_limit,
            time_limit,
            workers: 1,
            seed: 0,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        })
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget::new(Some(limit), None).expect("node limit is set")
    }

    pub fn time(limit: Duration) -> Self {
        SearchBudget::new(None, Some(limit)).expect("time limit is set")
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_candidate_cap(mut self, cap: usize) -> Self {
        self.candidate_cap = cap;
        self
    }

    pub(crate) fn limits(&self, target: usize) -> Limits {
        Limits {
            node_limit: self.node_limit,
            deadline: self.time_limit.map(|t| Instant::now() + t),
            target,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    /// The tree was closed, either exhaustively or by reaching an upper bound.
    ProvedOptimal,
    /// The budget ran out after branch and bound improved on the greedy seed.
    LowerBoundOnly,
    /// The budget ran out before branch and bound found anything better than
    /// the greedy seed.
    ExhaustedBudget,
}

impl SearchStatus {
    pub fn tag(self) -> &'static str {
        match self {
            SearchStatus::ProvedOptimal => "proved-optimal",
            SearchStatus::LowerBoundOnly => "lower-bound-only",
            SearchStatus::ExhaustedBudget => "exhausted-budget",
        }
    }
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub code: Code,
    pub status: SearchStatus,
    pub nodes: u64,
    /// Smallest formula bound used to cut the search short.
    pub upper_bound: Option<BoundResult>,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn size(&self) -> usize {
        self.code.len()
    }

    pub fn proved(&self) -> bool {
        self.status == SearchStatus::ProvedOptimal
    }
}

/// All words of the shape in sorted order, or [`Error::CandidateCap`].
pub fn candidate_words(shape: &Shape, cap: usize) -> Result<Vec<Codeword>> {
    let count = shape.candidate_count();
    if count > cap.into() {
        return Err(Error::CandidateCap {
            count: count.to_string(),
            cap,
        });
    }
    let per_part: Vec<Vec<Vec<usize>>> = shape
        .lengths()
        .iter()
        .zip(shape.weights())
        .map(|(&n, &w)| combinations(n, w))
        .collect();
    let mut words = cartesian(&per_part)
        .into_iter()
        .map(|supports| Codeword::from_supports(shape.lengths(), &supports))
        .collect::<Result<Vec<_>>>()?;
    words.sort();
    Ok(words)
}

/// Proven formula bounds only: values that are themselves search results are
/// left out so the search stays an independent check.
fn formula_bound(shape: &Shape) -> Option<BoundResult> {
    let mut all = vec![johnson_recursive(shape)];
    all.extend(johnson_uniform(shape));
    if let Some((n, w)) = shape.uniform_params() {
        all.extend(iterated_uniform_bound(shape.parts(), n, shape.distance(), w).ok());
    }
    if let Some(t) = shape.strength() {
        all.extend(admissible_product_bound(shape.lengths(), shape.weights(), t).ok());
    }
    all.into_iter().min_by(|a, b| a.value.cmp(&b.value))
}

fn packed(shape: &Shape, w: &Codeword) -> Bitset {
    let mut b = Bitset::new(shape.total_length());
    let mut off = 0;
    for part in w.parts() {
        for (j, &bit) in part.iter().enumerate() {
            if bit {
                b.insert(off + j);
            }
        }
        off += part.len();
    }
    b
}

/// Orbit label of each candidate under the stabilizer of `words[0]`:
/// per-part overlaps with it, sorted within runs of identical parts.
fn orbit_types(shape: &Shape, words: &[Codeword]) -> Vec<usize> {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let group_of: Vec<usize> = shape
        .lengths()
        .iter()
        .zip(shape.weights())
        .map(|(&n, &w)| match groups.iter().position(|&g| g == (n, w)) {
            Some(i) => i,
            None => {
                groups.push((n, w));
                groups.len() - 1
            }
        })
        .collect();
    let base = &words[0];
    let mut labels: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
    words
        .iter()
        .map(|w| {
            let mut key = vec![Vec::new(); groups.len()];
            for (i, (a, b)) in w.parts().iter().zip(base.parts()).enumerate() {
                key[group_of[i]].push(a.iter().zip(b).filter(|(x, y)| **x && **y).count());
            }
            key.iter_mut().for_each(|k| k.sort_unstable());
            let next = labels.len();
            *labels.entry(key).or_insert(next)
        })
        .collect()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("cannot start search workers: {e}")))
}

/// A maximum code of the given shape.
///
/// The first word is fixed to the smallest candidate; the second ranges over
/// one representative per orbit of its stabilizer, and the subtree of the
/// `k`-th representative only admits words of orbit index `k` or later. The
/// resulting subtrees are split once more and shared among the workers.
///
/// ```
/// use mcwc::search::{max_code_search, SearchBudget, SearchStatus};
/// use mcwc::Shape;
/// let shape = Shape::new(vec![4, 4], vec![2, 2], 4).unwrap();
/// let out = max_code_search(&shape, &SearchBudget::nodes(1_000_000)).unwrap();
/// assert_eq!((out.size(), out.status), (12, SearchStatus::ProvedOptimal));
/// ```
pub fn max_code_search(shape: &Shape, budget: &SearchBudget) -> Result<SearchOutcome> {
    let start = Instant::now();
    let words = candidate_words(shape, budget.candidate_cap)?;
    let packs: Vec<Bitset> = words.iter().map(|w| packed(shape, w)).collect();
    // distance 2(W - overlap) >= d; nothing is compatible once d > 2W
    let (total, half) = (shape.total_weight(), shape.half_distance());
    let g = Graph::from_fn(words.len(), |u, v| packs[u].intersection_len(&packs[v]) + half <= total);
    let bound = formula_bound(shape);
    let target = bound
        .as_ref()
        .and_then(|b| b.value.to_usize())
        .unwrap_or(usize::MAX)
        .min(words.len());

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut order: Vec<usize> = (0..words.len()).collect();
    let mut seed_clique = greedy(&g, &order);
    for _ in 0..16 {
        order.shuffle(&mut rng);
        let c = greedy(&g, &order);
        if c.len() > seed_clique.len() {
            seed_clique = c;
        }
    }
    let seed_size = seed_clique.len();
    let shared = Shared::new(seed_clique, budget.limits(target));

    let types = orbit_types(shape, &words);
    let type_count = types.iter().max().map_or(0, |&t| t + 1);
    let mut reps = vec![usize::MAX; type_count];
    for (v, &t) in types.iter().enumerate().rev() {
        reps[t] = v;
    }
    struct Sub {
        root: [usize; 2],
        p: Bitset,
        order: Vec<usize>,
        colors: Vec<usize>,
    }
    let subs: Vec<Sub> = reps
        .iter()
        .enumerate()
        .filter(|&(_, &r)| g.adj[0].contains(r))
        .map(|(k, &r)| {
            let mut p = g.adj[0].intersection(&g.adj[r]);
            for v in p.clone().iter() {
                if types[v] < k {
                    p.remove(v);
                }
            }
            let (order, colors) = color_sort(&g, &p, 0);
            Sub {
                root: [0, r],
                p,
                order,
                colors,
            }
        })
        .collect();
    for s in &subs {
        clique::offer(&shared, &s.root);
    }
    let tasks: Vec<(usize, usize)> = subs
        .iter()
        .enumerate()
        .flat_map(|(k, s)| (0..s.order.len()).rev().map(move |i| (k, i)))
        .collect();
    pool(budget.workers)?.install(|| {
        tasks.par_iter().for_each(|&(k, i)| {
            if shared.stopped() {
                return;
            }
            let s = &subs[k];
            if 2 + s.colors[i] <= shared.best() {
                return;
            }
            let v = s.order[i];
            let mut p = s.p.intersection(&g.adj[v]);
            for &u in &s.order[i + 1..] {
                p.remove(u);
            }
            let mut clique = vec![s.root[0], s.root[1], v];
            if p.is_empty() {
                clique::offer(&shared, &clique);
            } else {
                expand(&g, &shared, &mut clique, p);
            }
        });
    });

    let status = if !shared.budget_hit() || shared.reached_target() {
        SearchStatus::ProvedOptimal
    } else if shared.best() > seed_size {
        SearchStatus::LowerBoundOnly
    } else {
        SearchStatus::ExhaustedBudget
    };
    let code = Code::from_words(shape.clone(), shared.witness().into_iter().map(|i| words[i].clone()))?;
    Ok(SearchOutcome {
        code,
        status,
        nodes: shared.nodes(),
        upper_bound: bound,
        elapsed: start.elapsed(),
    })
}
