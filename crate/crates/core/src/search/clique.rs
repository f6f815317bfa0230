use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::bitset::Bitset;

pub(crate) struct Graph {
    pub adj: Vec<Bitset>,
}

impl Graph {
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![Bitset::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
        }
        Graph { adj }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.adj.len()
    }
}

pub(crate) struct Limits {
    pub node_limit: Option<u64>,
    pub deadline: Option<Instant>,
    /// Stop as soon as a clique of this size is found.
    pub target: usize,
}

/// State shared across workers: the incumbent and the budget counters.
pub(crate) struct Shared {
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    budget_hit: AtomicBool,
    limits: Limits,
}

const FLUSH: u64 = 256;

impl Shared {
    pub fn new(initial: Vec<usize>, limits: Limits) -> Self {
        let done = initial.len() >= limits.target;
        Shared {
            best: AtomicUsize::new(initial.len()),
            witness: Mutex::new(initial),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(done),
            budget_hit: AtomicBool::new(false),
            limits,
        }
    }

    pub fn best(&self) -> usize {
        self.best.load(Ordering::Relaxed)
    }

    pub fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    pub fn budget_hit(&self) -> bool {
        self.budget_hit.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn witness(&self) -> Vec<usize> {
        self.witness.lock().expect("witness lock").clone()
    }

    pub fn reached_target(&self) -> bool {
        self.best() >= self.limits.target
    }

    fn offer(&self, clique: &[usize]) {
        let len = clique.len();
        let mut cur = self.best.load(Ordering::Relaxed);
        while len > cur {
            match self.best.compare_exchange(cur, len, Ordering::AcqRel, Ordering::Relaxed) {
                Ok(_) => {
                    let mut w = self.witness.lock().expect("witness lock");
                    if w.len() < len {
                        *w = clique.to_vec();
                    }
                    if len >= self.limits.target {
                        self.stop.store(true, Ordering::Relaxed);
                    }
                    return;
                }
                Err(actual) => cur = actual,
            }
        }
    }

    fn charge(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local < FLUSH {
            return !self.stopped();
        }
        self.flush(local);
        !self.stopped()
    }

    fn flush(&self, local: &mut u64) {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        let over_nodes = self.limits.node_limit.is_some_and(|l| total >= l);
        let over_time = self.limits.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.budget_hit.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

/// Greedy sequential colouring of `p` in index order. Only vertices whose
/// colour is at least `kmin` are returned, with colours non-decreasing.
pub(crate) fn color_sort(g: &Graph, p: &Bitset, kmin: usize) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut u = p.clone();
    let mut k = 0;
    while !u.is_empty() {
        k += 1;
        let mut q = u.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&g.adj[v]);
            u.remove(v);
            if k >= kmin {
                order.push(v);
                colors.push(k);
            }
        }
    }
    (order, colors)
}

/// Branch and bound below `clique` over the candidate set `p`. Returns
/// `false` when the search was interrupted.
pub(crate) fn expand(g: &Graph, shared: &Shared, clique: &mut Vec<usize>, p: Bitset) -> bool {
    let mut local = 0;
    let ok = expand_inner(g, shared, clique, p, &mut local);
    shared.flush(&mut local);
    ok
}

fn expand_inner(g: &Graph, shared: &Shared, clique: &mut Vec<usize>, mut p: Bitset, local: &mut u64) -> bool {
    if !shared.charge(local) {
        return false;
    }
    let kmin = (shared.best() + 1).saturating_sub(clique.len());
    let (order, colors) = color_sort(g, &p, kmin);
    for i in (0..order.len()).rev() {
        if clique.len() + colors[i] <= shared.best() {
            return true;
        }
        let v = order[i];
        clique.push(v);
        let np = p.intersection(&g.adj[v]);
        let ok = if np.is_empty() {
            shared.offer(clique);
            true
        } else {
            expand_inner(g, shared, clique, np, local)
        };
        clique.pop();
        if !ok || shared.stopped() {
            return false;
        }
        p.remove(v);
    }
    true
}

/// Offers a clique found outside [`expand`], e.g. by a greedy pass.
pub(crate) fn offer(shared: &Shared, clique: &[usize]) {
    shared.offer(clique);
}

/// Greedy maximal clique following `order`.
pub(crate) fn greedy(g: &Graph, order: &[usize]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for &v in order {
        if clique.iter().all(|&u| g.adj[u].contains(v)) {
            clique.push(v);
        }
    }
    clique
}
