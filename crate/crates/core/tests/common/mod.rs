//! Checks shared by the property suites and the acceptance runner. Every
//! invariant is re-derived here from the raw objects.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use mcwc::bounds::{all_bounds, bound_2d, improved_bound_2d};
use mcwc::designs::{
    check_necessary_conditions, disjoint_triple_packings, factorization, gamma, is_known_exception,
    latin_rectangle, max_disjoint_optimal, ResolvableDesign, TriplePackingFamily,
};
use mcwc::search::{max_code_search, SearchBudget, SearchStatus};
use mcwc::{Code, Codeword, Error, Shape};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `D(n,3,2)`: `⌊n/3 ⌊(n-1)/2⌋⌋`, less one when `n ≡ 5 (mod 6)`.
pub fn triple_packing_number(n: usize) -> usize {
    let base = n * ((n.max(1) - 1) / 2) / 3;
    base - usize::from(n % 6 == 5)
}

#[derive(Clone, Debug)]
pub enum DesignCase {
    Factor(usize),
    Latin(usize, usize),
    Packings(usize, Option<usize>),
    Resolvable(usize, usize, usize, usize),
}

pub fn design_case() -> impl Strategy<Value = DesignCase> {
    prop_oneof![
        (1usize..=40).prop_map(DesignCase::Factor),
        (1usize..=25).prop_flat_map(|n| (1..=n, Just(n))).prop_map(|(r, n)| DesignCase::Latin(r, n)),
        (3usize..=13, proptest::option::of(0usize..13))
            .prop_map(|(n, p)| DesignCase::Packings(n, p.map(|p| p % n))),
        (2usize..=20, 1usize..=3, 1usize..=4).prop_map(|(m, l, a)| DesignCase::Resolvable(m, 2, l, a)),
        (prop::sample::select(vec![7usize, 9, 13]), 1usize..=3, 1usize..=6)
            .prop_map(|(m, l, a)| DesignCase::Resolvable(m, 3, l, a)),
        (prop::sample::select(vec![2usize, 3, 5]), 1usize..=3, 1usize..=3)
            .prop_map(|(q, l, a)| DesignCase::Resolvable(q * q, q, l, a)),
        (2usize..=16, 2usize..=5, 1usize..=4, 1usize..=4).prop_map(|(m, k, l, a)| DesignCase::Resolvable(m, k, l, a)),
    ]
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn check_factor(n: usize) -> Result<(), TestCaseError> {
    let f = factorization(n).map_err(|e| fail(format!("n={n}: {e}")))?;
    let want = match n {
        1 => 0,
        n if n % 2 == 0 => n - 1,
        n => n,
    };
    prop_assert_eq!(f.len(), want);
    prop_assert_eq!(gamma(n), want);
    let mut seen = HashSet::new();
    for (i, factor) in f.factors().iter().enumerate() {
        prop_assert_eq!(factor.len(), n / 2);
        let mut hit = vec![false; n];
        for &(a, b) in factor {
            prop_assert!(a < b && b < n);
            prop_assert!(!hit[a] && !hit[b], "factor {} is not a matching", i);
            hit[a] = true;
            hit[b] = true;
            prop_assert!(seen.insert((a, b)), "edge {{{},{}}} repeats", a, b);
        }
        if n % 2 == 1 {
            let missed: Vec<usize> = (0..n).filter(|&x| !hit[x]).collect();
            prop_assert_eq!(missed, vec![i]);
        }
    }
    prop_assert_eq!(seen.len(), n * (n - 1) / 2);
    Ok(())
}

fn check_latin(r: usize, n: usize) -> Result<(), TestCaseError> {
    let l = latin_rectangle(r, n).map_err(|e| fail(format!("{r}x{n}: {e}")))?;
    prop_assert_eq!(l.rows().len(), r);
    for (i, row) in l.rows().iter().enumerate() {
        let mut sorted = row.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        for (j, &x) in row.iter().enumerate() {
            prop_assert_eq!(x, (i + j) % n);
        }
    }
    for j in 0..n {
        let col: HashSet<usize> = l.rows().iter().map(|row| row[j]).collect();
        prop_assert_eq!(col.len(), r);
    }
    Ok(())
}

/// Triples in range and sorted, pairs at most once inside a packing, triples
/// in at most one packing.
pub fn check_family(f: &TriplePackingFamily) -> Result<(), TestCaseError> {
    let n = f.n();
    let mut triples = HashSet::new();
    for (i, p) in f.packings().iter().enumerate() {
        let mut pairs = HashSet::new();
        for t in p {
            prop_assert!(t[0] < t[1] && t[1] < t[2] && t[2] < n, "bad triple {:?}", t);
            prop_assert!(triples.insert(*t), "triple {:?} in two packings", t);
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                prop_assert!(pairs.insert((a, b)), "pair {{{},{}}} twice in packing {}", a, b, i);
            }
        }
    }
    let size = triple_packing_number(n);
    for p in &f.packings()[..f.optimal_count()] {
        prop_assert_eq!(p.len(), size);
    }
    for p in &f.packings()[f.optimal_count()..] {
        prop_assert!(p.len() < size);
    }
    Ok(())
}

fn check_bundled_family(n: usize, delete: Option<usize>) -> Result<(), TestCaseError> {
    let f = disjoint_triple_packings(n).map_err(|e| fail(format!("n={n}: {e}")))?;
    check_family(&f)?;
    prop_assert_eq!(f.optimal_count(), max_disjoint_optimal(n));
    let sizes = f.sizes();
    prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]), "sizes {:?} increase", sizes);
    if n % 6 == 1 || n % 6 == 3 {
        let lead = if n == 7 { 2 } else { n - 2 };
        prop_assert!(sizes[..lead].iter().all(|&s| s == n * (n - 1) / 6));
    }
    let total: usize = sizes.iter().sum();
    prop_assert_eq!(total as u64, binom(n as u64, 3));
    if let Some(p) = delete {
        let g = f.delete_point(p).map_err(|e| fail(format!("n={n} delete {p}: {e}")))?;
        prop_assert_eq!(g.n(), n - 1);
        check_family(&g)?;
        prop_assert_eq!(g.total_triples() as u64, binom(n as u64 - 1, 3));
    }
    Ok(())
}

pub fn check_resolvable(d: &ResolvableDesign) -> Result<(), TestCaseError> {
    let (m, k, lambda, alpha) = (d.points(), d.k(), d.lambda(), d.alpha());
    let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
    for class in d.classes() {
        let mut degree = vec![0usize; m];
        prop_assert_eq!(class.len(), alpha * m / k);
        for b in class {
            prop_assert_eq!(b.len(), k);
            let set: HashSet<usize> = b.iter().copied().collect();
            prop_assert_eq!(set.len(), k);
            for (i, &x) in b.iter().enumerate() {
                prop_assert!(x < m);
                degree[x] += 1;
                for &y in &b[i + 1..] {
                    *pairs.entry((x.min(y), x.max(y))).or_default() += 1;
                }
            }
        }
        prop_assert!(degree.iter().all(|&c| c == alpha), "class is not {}-parallel", alpha);
    }
    prop_assert_eq!(d.classes().len(), lambda * (m - 1) / (alpha * (k - 1)));
    for x in 0..m {
        for y in x + 1..m {
            prop_assert_eq!(pairs.get(&(x, y)).copied().unwrap_or(0), lambda);
        }
    }
    Ok(())
}

fn check_resolvable_case(m: usize, k: usize, lambda: usize, alpha: usize) -> Result<(), TestCaseError> {
    let necessary = check_necessary_conditions(m, k, lambda, alpha);
    match mcwc::designs::alpha_resolvable_bibd(m, k, lambda, alpha) {
        Ok(d) => {
            prop_assert!(necessary.is_ok());
            prop_assert!(!is_known_exception(m, k, lambda, alpha));
            prop_assert_eq!((d.points(), d.k(), d.lambda(), d.alpha()), (m, k, lambda, alpha));
            check_resolvable(&d)
        }
        Err(Error::NecessaryCondition(_)) | Err(Error::InvalidShape(_)) => {
            prop_assert!(necessary.is_err());
            Ok(())
        }
        Err(Error::KnownException(_)) => {
            prop_assert!(necessary.is_ok() && is_known_exception(m, k, lambda, alpha));
            Ok(())
        }
        Err(Error::Unavailable(_)) => {
            prop_assert!(necessary.is_ok());
            Ok(())
        }
        Err(e) => Err(fail(format!("({m},{k},{lambda},{alpha}): unexpected {e}"))),
    }
}

pub fn check_design_case(case: &DesignCase) -> Result<(), TestCaseError> {
    match *case {
        DesignCase::Factor(n) => check_factor(n),
        DesignCase::Latin(r, n) => check_latin(r, n),
        DesignCase::Packings(n, p) => check_bundled_family(n, p),
        DesignCase::Resolvable(m, k, l, a) => check_resolvable_case(m, k, l, a),
    }
}

pub fn run_design_suite(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&design_case(), |c| check_design_case(&c))
        .map_err(|e| e.to_string())
}

/// The 7-point family splits all 35 triples into packings of sizes
/// 7, 7, 6, 6, 5, 4.
pub fn seven_point_partition() -> Result<(), String> {
    let f = disjoint_triple_packings(7).map_err(|e| e.to_string())?;
    check_family(&f).map_err(|e| e.to_string())?;
    let all: HashSet<[usize; 3]> = f.packings().iter().flatten().copied().collect();
    if f.sizes() != [7, 7, 6, 6, 5, 4] || all.len() != 35 {
        return Err(format!("sizes {:?}, {} distinct triples", f.sizes(), all.len()));
    }
    Ok(())
}

/// Random shape with `m ≤ 3`, `n_i ≤ 9` and an even distance up to `2W + 2`.
pub fn small_shape() -> impl Strategy<Value = Shape> {
    prop::collection::vec((1usize..=9).prop_flat_map(|n| (Just(n), 0..=n)), 1..=3)
        .prop_flat_map(|parts| {
            let w: usize = parts.iter().map(|p| p.1).sum();
            (Just(parts), 1..=w + 1)
        })
        .prop_map(|(parts, half)| {
            let (n, w): (Vec<usize>, Vec<usize>) = parts.into_iter().unzip();
            Shape::new(n, w, 2 * half).unwrap()
        })
}

/// All conforming words, in lexicographic order, or `None` above `cap`.
pub fn all_words(shape: &Shape, cap: usize) -> Option<Vec<Codeword>> {
    if shape.candidate_count() > BigUint::from(cap) {
        return None;
    }
    let mut out: Vec<Vec<Vec<bool>>> = vec![Vec::new()];
    for (&n, &w) in shape.lengths().iter().zip(shape.weights()) {
        let mut parts: Vec<Vec<bool>> = (0u32..1 << n)
            .filter(|x| x.count_ones() as usize == w)
            .map(|x| (0..n).map(|i| x >> (n - 1 - i) & 1 == 1).collect())
            .collect();
        parts.sort();
        out = out
            .into_iter()
            .flat_map(|pre| {
                parts.iter().map(move |p| {
                    let mut v = pre.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    Some(out.into_iter().map(Codeword::from_parts).collect())
}

fn hamming(a: &Codeword, b: &Codeword) -> usize {
    a.parts()
        .iter()
        .zip(b.parts())
        .map(|(x, y)| x.iter().zip(y).filter(|(p, q)| p != q).count())
        .sum()
}

/// First-fit code over the words in order.
pub fn greedy_code(shape: &Shape, words: &[Codeword]) -> Code {
    let mut kept: Vec<Codeword> = Vec::new();
    for w in words {
        if kept.iter().all(|k| hamming(k, w) >= shape.distance()) {
            kept.push(w.clone());
        }
    }
    Code::from_words(shape.clone(), kept).unwrap()
}

/// Sizes of the greedy code and, for small shapes, a budgeted search; every
/// one of them sits at or below every bound, and a proved search equals
/// every exact value.
pub fn check_bounds_on(shape: &Shape) -> Result<(), TestCaseError> {
    let bounds = all_bounds(shape);
    prop_assert!(!bounds.is_empty());
    let mut sizes = Vec::new();
    if let Some(words) = all_words(shape, 20_000) {
        sizes.push(greedy_code(shape, &words).len());
    }
    if shape.candidate_count() <= BigUint::from(2000u32) {
        let budget = SearchBudget::nodes(200_000).with_workers(2);
        let out = max_code_search(shape, &budget).map_err(|e| fail(format!("{shape}: {e}")))?;
        sizes.push(out.size());
        if out.status == SearchStatus::ProvedOptimal {
            for b in bounds.iter().filter(|b| b.exact) {
                prop_assert_eq!(&b.value, &BigUint::from(out.size()), "{} at {}", b, shape);
            }
        }
    }
    for s in sizes {
        for b in &bounds {
            prop_assert!(BigUint::from(s) <= b.value, "size {} above {} at {}", s, b, shape);
        }
    }
    Ok(())
}

pub fn check_2d_order(m: usize, n: usize, weights: &[usize], l: usize, lambda: usize) -> Result<(), TestCaseError> {
    if let (Some(b), Some(i)) = (bound_2d(m, n, weights, l, lambda), improved_bound_2d(m, n, weights, l, lambda)) {
        prop_assert!(i.value <= b.value, "{} above {}", i, b);
    }
    Ok(())
}

/// Row weights read off a random `m × n` matrix of column weight `l`, and a
/// pair index `λ = W - δ` below `W`.
pub fn params_2d() -> impl Strategy<Value = (usize, usize, Vec<usize>, usize, usize)> {
    (1usize..=6, 1usize..=12)
        .prop_flat_map(|(m, n)| (Just(m), Just(n), 1..=m))
        .prop_flat_map(|(m, n, l)| {
            let column = prop::sample::subsequence((0..m).collect::<Vec<_>>(), l);
            (Just(m), Just(n), Just(l), prop::collection::vec(column, n))
        })
        .prop_flat_map(|(m, n, l, cols)| {
            let mut w = vec![0usize; m];
            for c in &cols {
                for &i in c {
                    w[i] += 1;
                }
            }
            (Just(m), Just(n), Just(w), Just(l), 0..n * l)
        })
}

pub fn check_product_m1(n: usize, w: usize, t: usize) -> Result<(), TestCaseError> {
    let b = mcwc::bounds::admissible_product_bound(&[n], &[w], t).map_err(|e| fail(format!("({n},{w},{t}): {e}")))?;
    prop_assert_eq!(b.value, BigUint::from(binom(n as u64, t as u64) / binom(w as u64, t as u64)));
    Ok(())
}

pub fn product_m1() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=9)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, w)| (Just(n), Just(w), 1..=w))
}

/// The bound suite on `cases` random shapes, plus the two-dimensional and
/// single-part checks on as many random parameter sets.
pub fn run_bound_suite(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    r.run(&small_shape(), |s| check_bounds_on(&s)).map_err(|e| e.to_string())?;
    r.run(&params_2d(), |(m, n, w, l, lambda)| check_2d_order(m, n, &w, l, lambda))
        .map_err(|e| e.to_string())?;
    r.run(&product_m1(), |(n, w, t)| check_product_m1(n, w, t))
        .map_err(|e| e.to_string())
}

/// Part weights and every pairwise distance, counted directly.
pub fn code_is_valid(code: &Code) -> Result<(), String> {
    let s = code.shape();
    let words: Vec<&Codeword> = code.iter().collect();
    for w in &words {
        let weights: Vec<usize> = w.parts().iter().map(|p| p.iter().filter(|&&b| b).count()).collect();
        if weights != s.weights() || w.parts().iter().map(Vec::len).collect::<Vec<_>>() != s.lengths() {
            return Err(format!("word {w} does not conform to {s}"));
        }
    }
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = hamming(words[i], words[j]);
            if d < s.distance() {
                return Err(format!("{} and {} at distance {d} < {}", words[i], words[j], s.distance()));
            }
        }
    }
    Ok(())
}
