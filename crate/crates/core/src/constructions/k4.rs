use crate::bounds::{k4_canonical, k4_packing_number};
use crate::code::{verify_generalized_packing, GeneralizedBlock, PackingInstance};
use crate::designs::{factorization, latin_rectangle, DesignStore};
use crate::error::{Error, Result};

use super::ConstructionCertificate;

/// Optimal 3-(n, k, 1) generalized packing for a block composition of
/// total size four, using bundled design data; see
/// [`construct_k4_packing_with`].
///
/// ```
/// let (p, cert) = mcwc::constructions::construct_k4_packing(&[7, 5], &[3, 1]).unwrap();
/// assert_eq!(p.len(), 31);
/// assert!(cert.optimal);
/// ```
pub fn construct_k4_packing(lengths: &[usize], composition: &[usize]) -> Result<(PackingInstance, ConstructionCertificate)> {
    construct_k4_packing_with(&DesignStore::bundled(), lengths, composition)
}

/// Parts may come in any order. Composition `(4)` is only built when a
/// single block is optimal (`n ≤ 5`).
pub fn construct_k4_packing_with(
    store: &DesignStore,
    lengths: &[usize],
    composition: &[usize],
) -> Result<(PackingInstance, ConstructionCertificate)> {
    let canon = k4_canonical(lengths, composition)?;
    let n = &canon.lengths;
    let blocks: Vec<Vec<Vec<usize>>> = match canon.case {
        1 => {
            if n[0] > 5 {
                return Err(Error::Unsupported(format!(
                    "optimal 3-({},4,1) packings are not constructed here; use the search command",
                    n[0]
                )));
            }
            vec![vec![(0..4).collect()]]
        }
        2 => {
            let family = store.triple_packings(n[0])?;
            let j = family.len().min(n[1]);
            family.packings()[..j]
                .iter()
                .enumerate()
                .flat_map(|(i, p)| p.iter().map(move |t| vec![t.to_vec(), vec![i]]))
                .collect()
        }
        3 => {
            let (f1, f2) = (factorization(n[0])?, factorization(n[1])?);
            let mut out = Vec::new();
            for (a, b) in f1.factors().iter().zip(f2.factors()) {
                for &(x, y) in a {
                    for &(u, v) in b {
                        out.push(vec![vec![x, y], vec![u, v]]);
                    }
                }
            }
            out
        }
        4 => {
            let f = factorization(n[0])?;
            let square = latin_rectangle(n[1], n[2])?;
            let s = f.len().min(n[2]);
            let mut out = Vec::new();
            for i in 0..n[1] {
                for j in 0..n[2] {
                    let x = square.get(i, j);
                    if x < s {
                        for &(a, b) in &f.factors()[x] {
                            out.push(vec![vec![a, b], vec![i], vec![j]]);
                        }
                    }
                }
            }
            out
        }
        _ => {
            let mut out = Vec::new();
            for a in 0..n[0] {
                for b in 0..n[1] {
                    for c in 0..n[2] {
                        let d = (3 * n[3] - (a + b + c) % n[3]) % n[3];
                        out.push(vec![vec![a], vec![b], vec![c], vec![d]]);
                    }
                }
            }
            out
        }
    };
    let blocks = blocks
        .into_iter()
        .map(|canonical| {
            let mut parts = vec![Vec::new(); lengths.len()];
            for (j, part) in canonical.into_iter().enumerate() {
                parts[canon.order[j]] = part;
            }
            GeneralizedBlock::new(parts)
        })
        .collect();
    let packing = PackingInstance::new(lengths.to_vec(), composition.to_vec(), 3, 1, blocks)?;
    let report = verify_generalized_packing(&packing);
    if !report.passed() {
        return Err(Error::Verification(report.describe_failure().unwrap_or_default()));
    }
    let bound = k4_packing_number(lengths, composition)?;
    if bound.value != packing.len().into() {
        return Err(Error::Invariant(format!(
            "construction gave {} blocks, packing number is {}",
            packing.len(),
            bound.value
        )));
    }
    let provenance = match canon.case {
        2 if bound.method == crate::bounds::BoundMethod::K4Table => {
            "disjoint triple packings; optimality by exhaustive search"
        }
        2 => "disjoint triple packings",
        3 => "paired factorizations",
        4 => "Latin rectangle over a factorization",
        5 => "constant-sum quadruples",
        _ => "single block",
    };
    let cert = ConstructionCertificate {
        size: packing.len(),
        distance: 4,
        optimal: true,
        bound: Some(bound),
        provenance: provenance.into(),
    };
    Ok((packing, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        for (l, v) in [([6, 5], 18), ([7, 3], 20), ([7, 4], 26), ([7, 5], 31)] {
            assert_eq!(construct_k4_packing(&l, &[3, 1]).unwrap().0.len(), v);
        }
    }

    #[test]
    fn other_cases() {
        assert_eq!(construct_k4_packing(&[3, 3], &[2, 2]).unwrap().0.len(), 3);
        assert_eq!(construct_k4_packing(&[2, 2, 2, 2], &[1, 1, 1, 1]).unwrap().0.len(), 8);
        assert_eq!(construct_k4_packing(&[3, 2, 2], &[2, 1, 1]).unwrap().0.len(), 4);
        assert_eq!(construct_k4_packing(&[5, 4, 3, 2], &[1, 1, 1, 1]).unwrap().0.len(), 24);
        // parts in a non-canonical order
        assert_eq!(construct_k4_packing(&[2, 5, 2], &[1, 2, 1]).unwrap().0.len(), 8);
        assert_eq!(construct_k4_packing(&[5], &[4]).unwrap().0.len(), 1);
        assert!(matches!(construct_k4_packing(&[8], &[4]), Err(Error::Unsupported(_))));
    }
}
