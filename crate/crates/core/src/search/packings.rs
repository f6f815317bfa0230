use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::triple_packing_size;
use crate::combin::combinations;
use crate::designs::{extra_packings, max_disjoint_optimal, Triple, TriplePackingFamily};
use crate::error::{Error, Result};

use super::bitset::Bitset;
use super::clique::{expand, Graph, Limits, Shared};
use super::SearchBudget;

pub const MAX_PACKING_POINTS: usize = 13;

const PEEL_NODES: u64 = 200_000;

fn share_pair(a: &Triple, b: &Triple) -> bool {
    a.iter().filter(|x| b.contains(x)).count() >= 2
}

/// Largest packing among `pool` found within the limits, stopping early at
/// `target` triples.
fn peel(pool: &[Triple], target: usize, limits: Limits) -> (Vec<Triple>, u64) {
    let g = Graph::from_fn(pool.len(), |u, v| !share_pair(&pool[u], &pool[v]));
    let shared = Shared::new(Vec::new(), Limits { target, ..limits });
    expand(&g, &shared, &mut Vec::new(), Bitset::full(pool.len()));
    let found = shared.witness().into_iter().map(|i| pool[i]).collect();
    (found, shared.nodes())
}

/// `count` pairwise disjoint packings of triples on `n` points, the first
/// `min(count, M(n))` of them optimal and one further non-optimal packing
/// when `count = M(n) + 1`.
///
/// Packings are peeled off one at a time by a clique search over the unused
/// triples, each in a freshly shuffled order. A stuck level gives up its
/// predecessor and retries from there; repeated failures restart the run.
pub fn search_disjoint_packings(n: usize, count: usize, budget: &SearchBudget) -> Result<TriplePackingFamily> {
    if n > MAX_PACKING_POINTS {
        return Err(Error::Unsupported(format!(
            "packing search is limited to n <= {MAX_PACKING_POINTS}, got {n}"
        )));
    }
    let optimal = max_disjoint_optimal(n);
    let most = optimal + extra_packings(n);
    if count > most {
        return Err(Error::Infeasible(format!(
            "at most {optimal} disjoint optimal packings exist on {n} points ({most} packings in all), {count} requested"
        )));
    }
    let size = triple_packing_size(n);
    let want = count.min(optimal);
    let all: Vec<Triple> = combinations(n, 3).into_iter().map(|t| [t[0], t[1], t[2]]).collect();
    let limits = budget.limits(usize::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut nodes = 0u64;
    let out_of_budget = |nodes: u64| {
        budget.node_limit.is_some_and(|l| nodes >= l) || limits.deadline.is_some_and(|d| std::time::Instant::now() >= d)
    };

    loop {
        let mut used = vec![false; all.len()];
        let mut chosen: Vec<Vec<Triple>> = Vec::new();
        let mut failures = 0;
        while chosen.len() < want && failures <= 4 * want {
            if out_of_budget(nodes) {
                return Err(Error::BudgetExhausted(format!(
                    "{} of {count} disjoint packings on {n} points after {nodes} nodes",
                    chosen.len()
                )));
            }
            let mut pool: Vec<Triple> = all.iter().zip(&used).filter(|(_, &u)| !u).map(|(t, _)| *t).collect();
            pool.shuffle(&mut rng);
            let cap = budget.node_limit.map_or(PEEL_NODES, |l| PEEL_NODES.min(l.saturating_sub(nodes)));
            let (found, spent) = peel(
                &pool,
                size,
                Limits {
                    node_limit: Some(cap),
                    deadline: limits.deadline,
                    target: size,
                },
            );
            nodes += spent;
            if found.len() == size {
                mark(&all, &mut used, &found, true);
                chosen.push(found);
            } else {
                failures += 1;
                if let Some(last) = chosen.pop() {
                    mark(&all, &mut used, &last, false);
                }
            }
        }
        if chosen.len() < want {
            continue;
        }
        if count > want {
            let pool: Vec<Triple> = all.iter().zip(&used).filter(|(_, &u)| !u).map(|(t, _)| *t).collect();
            let (extra, spent) = peel(
                &pool,
                size.saturating_sub(1),
                Limits {
                    node_limit: Some(PEEL_NODES),
                    deadline: limits.deadline,
                    target: size.saturating_sub(1),
                },
            );
            nodes += spent;
            if extra.is_empty() {
                continue;
            }
            chosen.push(extra);
        }
        return TriplePackingFamily::new(n, chosen, want);
    }
}

fn mark(all: &[Triple], used: &mut [bool], packing: &[Triple], value: bool) {
    for t in packing {
        let i = all.binary_search(t).expect("triples are drawn from the full list");
        used[i] = value;
    }
}
