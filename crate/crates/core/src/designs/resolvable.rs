use std::collections::HashMap;

use crate::error::{Error, Result};

use super::factor::one_factorization;
use super::store::DesignStore;

/// A BIBD(M, k, λ) whose blocks split into α-parallel classes: every point
/// lies in exactly α blocks of each class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvableDesign {
    points: usize,
    k: usize,
    lambda: usize,
    alpha: usize,
    classes: Vec<Vec<Vec<usize>>>,
}

impl ResolvableDesign {
    pub fn new(points: usize, k: usize, lambda: usize, alpha: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        let mut out = Vec::with_capacity(classes.len());
        for (c, class) in classes.into_iter().enumerate() {
            let mut degree = vec![0usize; points];
            let mut blocks = Vec::with_capacity(class.len());
            for mut b in class {
                b.sort_unstable();
                if b.len() != k || b.windows(2).any(|w| w[0] == w[1]) || b.last().is_some_and(|&x| x >= points) {
                    return Err(Error::Invariant(format!("class {c}: bad block {b:?}")));
                }
                for (i, &x) in b.iter().enumerate() {
                    degree[x] += 1;
                    for &y in &b[i + 1..] {
                        *pairs.entry((x, y)).or_default() += 1;
                    }
                }
                blocks.push(b);
            }
            if let Some(x) = degree.iter().position(|&d| d != alpha) {
                return Err(Error::Invariant(format!(
                    "class {c}: point {x} appears {} times, expected {alpha}",
                    degree[x]
                )));
            }
            blocks.sort_unstable();
            out.push(blocks);
        }
        for x in 0..points {
            for y in x + 1..points {
                let got = pairs.get(&(x, y)).copied().unwrap_or(0);
                if got != lambda {
                    return Err(Error::Invariant(format!("pair {{{x},{y}}} lies in {got} blocks, expected {lambda}")));
                }
            }
        }
        Ok(ResolvableDesign {
            points,
            k,
            lambda,
            alpha,
            classes: out,
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    /// `r`, the number of classes.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `b = αM/k`, blocks per class.
    pub fn blocks_per_class(&self) -> usize {
        self.alpha * self.points / self.k
    }
}

/// The three congruences every α-resolvable BIBD(M, k, λ) satisfies.
pub fn check_necessary_conditions(m: usize, k: usize, lambda: usize, alpha: usize) -> Result<()> {
    if k < 2 || k > m || lambda == 0 || alpha == 0 {
        return Err(Error::InvalidShape(format!(
            "need 2 <= k <= M and positive λ, α; got M={m}, k={k}, λ={lambda}, α={alpha}"
        )));
    }
    if !(lambda * (m - 1)).is_multiple_of(alpha * (k - 1)) {
        return Err(Error::NecessaryCondition(format!(
            "λ(M-1) = {} is not divisible by α(k-1) = {}",
            lambda * (m - 1),
            alpha * (k - 1)
        )));
    }
    if !(lambda * m * (m - 1)).is_multiple_of(k * (k - 1)) {
        return Err(Error::NecessaryCondition(format!(
            "λM(M-1) = {} is not divisible by k(k-1) = {}",
            lambda * m * (m - 1),
            k * (k - 1)
        )));
    }
    if !(alpha * m).is_multiple_of(k) {
        return Err(Error::NecessaryCondition(format!("αM = {} is not divisible by k = {k}", alpha * m)));
    }
    Ok(())
}

/// Parameter sets meeting the congruences for which no design exists.
pub fn is_known_exception(m: usize, k: usize, lambda: usize, alpha: usize) -> bool {
    (m == 6 && k == 3 && alpha == 1 && lambda % 4 == 2) || (m, k, lambda, alpha) == (10, 4, 2, 2)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Parallel classes of AG(2, q): lines `y = ax + b` and `x = c`, point
/// `(x, y)` labelled `qx + y`.
fn affine_plane(q: usize) -> Vec<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<Vec<usize>>> = (0..q)
        .map(|a| (0..q).map(|b| (0..q).map(|x| q * x + (a * x + b) % q).collect()).collect())
        .collect();
    classes.push((0..q).map(|c| (0..q).map(|y| q * c + y).collect()).collect());
    classes
}

/// `{x, x + d}` over `Z_M`, one 2-regular class per difference.
fn difference_two_factors(m: usize) -> Vec<Vec<Vec<usize>>> {
    (1..=m / 2)
        .map(|d| (0..m).map(|x| vec![x, (x + d) % m]).collect())
        .collect()
}

/// Classes of a λ = 1 base design, each `alpha0`-parallel.
fn base_classes(store: &DesignStore, m: usize, k: usize) -> Result<Option<(usize, Vec<Vec<Vec<usize>>>)>> {
    if k == m {
        return Ok(Some((1, vec![vec![(0..m).collect()]])));
    }
    if k == 2 {
        if m.is_multiple_of(2) {
            let f = one_factorization(m)?;
            let classes = f
                .factors()
                .iter()
                .map(|fac| fac.iter().map(|&(a, b)| vec![a, b]).collect())
                .collect();
            return Ok(Some((1, classes)));
        }
        return Ok(Some((2, difference_two_factors(m))));
    }
    if is_prime(k) && m == k * k {
        return Ok(Some((1, affine_plane(k))));
    }
    if k == 3 && matches!(m % 6, 1 | 3) {
        if let Ok(family) = store.triple_packings(m) {
            let sts = &family.packings()[0];
            if sts.len() == m * (m - 1) / 6 {
                let class = sts.iter().map(|t| t.to_vec()).collect();
                return Ok(Some(((m - 1) / 2, vec![class])));
            }
        }
    }
    Ok(None)
}

pub(crate) fn build(store: &DesignStore, m: usize, k: usize, lambda: usize, alpha: usize) -> Result<ResolvableDesign> {
    check_necessary_conditions(m, k, lambda, alpha)?;
    if is_known_exception(m, k, lambda, alpha) {
        return Err(Error::KnownException(format!(
            "no {alpha}-resolvable BIBD({m},{k},{lambda}) exists"
        )));
    }
    let unavailable = || Error::Unavailable(format!("no recipe or data for a {alpha}-resolvable BIBD({m},{k},{lambda})"));
    let (alpha0, base) = base_classes(store, m, k)?.ok_or_else(unavailable)?;
    if !alpha.is_multiple_of(alpha0) {
        return Err(unavailable());
    }
    let group = alpha / alpha0;
    let copies: Vec<&Vec<Vec<usize>>> = std::iter::repeat_n(&base, lambda).flatten().collect();
    if !copies.len().is_multiple_of(group) {
        return Err(unavailable());
    }
    let classes = copies.chunks(group).map(|c| c.iter().flat_map(|cl| cl.iter().cloned()).collect()).collect();
    ResolvableDesign::new(m, k, lambda, alpha, classes)
}
