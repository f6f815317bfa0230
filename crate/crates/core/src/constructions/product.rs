use crate::bounds::{constant_sum_value, weight_three_value, weight_two_value};
use crate::code::{verify_mcwc, Code, Codeword, Shape};
use crate::designs::{factorization, max_disjoint_optimal, DesignStore};
use crate::error::{Error, Result};

use super::ConstructionCertificate;

/// Words with one `1` per part at positions `s_1, ..., s_m` where
/// `Σ s_i ≡ 0 (mod n)`.
///
/// ```
/// let code = mcwc::constructions::constant_sum_mcwc(3, 2).unwrap();
/// assert_eq!(code.len(), 4);
/// ```
pub fn constant_sum_mcwc(m: usize, n: usize) -> Result<Code> {
    let shape = Shape::uniform(m, n, 1, 4)?;
    let mut code = Code::empty(shape);
    let mut digits = vec![0usize; m - 1];
    loop {
        let sum: usize = digits.iter().sum();
        let mut supports: Vec<Vec<usize>> = digits.iter().map(|&s| vec![s]).collect();
        supports.push(vec![(n - sum % n) % n]);
        code.insert(Codeword::from_supports(&vec![n; m], &supports)?)?;
        let Some(i) = digits.iter().rposition(|&s| s + 1 < n) else {
            break;
        };
        digits[i] += 1;
        digits[i + 1..].iter_mut().for_each(|s| *s = 0);
    }
    Ok(code)
}

fn single_part(code: &Code) -> Result<(usize, usize)> {
    match (code.shape().lengths(), code.shape().weights()) {
        ([n], [w]) => Ok((*n, *w)),
        _ => Err(Error::InvalidShape(format!(
            "inner codes must have one part, found shape {}",
            code.shape()
        ))),
    }
}

/// `D = ⋃_u C_{j_1} × ⋯ × C_{j_m}` over outer words `u` with supports
/// `({j_1}, …, {j_m})`; symbol `j` selects `inner[j]`.
///
/// Each inner code is a CWC(n, d₁, w) and their union a CWC(n, d₂, w); the
/// outer code has weight one per part and distance `d₃`. The output is
/// declared at distance `min(d₃d₂/2, d₁)` and verified there.
pub fn product_construction(inner: &[Code], outer: &Code, d1: usize, d2: usize) -> Result<(Code, ConstructionCertificate)> {
    let first = inner
        .first()
        .ok_or_else(|| Error::InvalidShape("no inner codes".into()))?;
    let (n, w) = single_part(first)?;
    for c in inner {
        if single_part(c)? != (n, w) {
            return Err(Error::InvalidShape("inner codes differ in length or weight".into()));
        }
    }
    let os = outer.shape();
    if os.weights().iter().any(|&x| x != 1) {
        return Err(Error::InvalidShape(format!("outer code must have weight one per part, found {os}")));
    }
    if let Some(&s) = os.lengths().iter().max() {
        if s > inner.len() {
            return Err(Error::InvalidShape(format!(
                "outer symbols range over {s} values but only {} inner codes are given",
                inner.len()
            )));
        }
    }
    let m = os.parts();
    let distance = (os.distance() * d2 / 2).min(d1);
    let shape = Shape::new(vec![n; m], vec![w; m], distance)?;
    let mut code = Code::empty(shape);
    let inner_words: Vec<Vec<&Codeword>> = inner.iter().map(|c| c.iter().collect()).collect();
    for u in outer.iter() {
        let symbols: Vec<usize> = u.supports().iter().map(|s| s[0]).collect();
        let mut idx = vec![0usize; m];
        if symbols.iter().any(|&j| inner_words[j].is_empty()) {
            continue;
        }
        loop {
            let parts = (0..m).map(|i| inner_words[symbols[i]][idx[i]].parts()[0].clone()).collect();
            code.insert(Codeword::from_parts(parts))?;
            let Some(i) = (0..m).rposition(|i| idx[i] + 1 < inner_words[symbols[i]].len()) else {
                break;
            };
            idx[i] += 1;
            idx[i + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    let report = verify_mcwc(&code);
    if !report.passed() {
        return Err(Error::Verification(report.describe_failure().unwrap_or_default()));
    }
    let cert = ConstructionCertificate::for_code(&code, None, "product construction")?;
    Ok((code, cert))
}

fn cwc_from_blocks(n: usize, w: usize, d: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Code> {
    let words = blocks
        .into_iter()
        .map(|b| Codeword::from_supports(&[n], &[b]))
        .collect::<Result<Vec<_>>>()?;
    Code::from_words(Shape::new(vec![n], vec![w], d)?, words)
}

/// Optimal MCWC(m, n, 4, 1) of size `n^(m-1)`.
pub fn mcwc_w1_d4(m: usize, n: usize) -> Result<(Code, ConstructionCertificate)> {
    let code = constant_sum_mcwc(m, n)?;
    let cert = ConstructionCertificate::for_code(&code, Some(constant_sum_value(m, n)), "constant-sum code")?;
    Ok((code, cert))
}

/// Optimal MCWC(m, n, 4, 2) of size `C(n,2)^(m-1) ⌊n/2⌋`: the factors of a
/// (near-)1-factorization of `K_n` as inner codes under a constant-sum
/// outer code.
///
/// ```
/// let (code, cert) = mcwc::constructions::mcwc_w2_d4(2, 4).unwrap();
/// assert_eq!(code.len(), 12);
/// assert!(cert.optimal);
/// ```
pub fn mcwc_w2_d4(m: usize, n: usize) -> Result<(Code, ConstructionCertificate)> {
    if n < 2 {
        return Err(Error::InvalidShape(format!("weight 2 needs n >= 2, got {n}")));
    }
    let factors = factorization(n)?;
    let inner = factors
        .factors()
        .iter()
        .map(|f| cwc_from_blocks(n, 2, 4, f.iter().map(|&(a, b)| vec![a, b])))
        .collect::<Result<Vec<_>>>()?;
    let outer = constant_sum_mcwc(m, inner.len())?;
    let (code, _) = product_construction(&inner, &outer, 4, 2)?;
    let code = code.with_distance(4)?;
    let cert = ConstructionCertificate::for_code(
        &code,
        Some(weight_two_value(m, n)),
        "factorization inner codes, constant-sum outer code",
    )?;
    Ok((code, cert))
}

/// Number of disjoint triple packings the weight-3 construction uses, or
/// why `n` is not covered.
pub fn w3_packing_count(n: usize) -> Result<usize> {
    match n {
        6 | 7 => Err(Error::Unsupported(format!(
            "n = {n}: the weight-3 construction needs more disjoint optimal triple packings than exist"
        ))),
        3 => Ok(1),
        n if n >= 8 && (n % 6 <= 3 || n >= 10) => Ok(max_disjoint_optimal(n)),
        n => Err(Error::Unsupported(format!(
            "n = {n}: the weight-3 construction covers n ≡ 0,1,2,3 (mod 6) and n >= 10 otherwise"
        ))),
    }
}

/// MCWC(m, n, 4, 3) from disjoint optimal triple packings under a
/// constant-sum outer code; see [`mcwc_w3_d4_with`].
pub fn mcwc_w3_d4(m: usize, n: usize) -> Result<(Code, ConstructionCertificate)> {
    mcwc_w3_d4_with(&DesignStore::bundled(), m, n)
}

/// Optimal for `n ≡ 0,1,2,3 (mod 6)`, `n ∉ {6, 7}`; for `n ≡ 4, 5` with
/// `n ≥ 10` the size is `D(n,3,2)^m M(n)^(m-1)` and the certificate is
/// not marked optimal.
pub fn mcwc_w3_d4_with(store: &DesignStore, m: usize, n: usize) -> Result<(Code, ConstructionCertificate)> {
    let s = w3_packing_count(n)?;
    let family = store.triple_packings(n)?;
    if family.optimal_count() < s {
        return Err(Error::Unavailable(format!(
            "the family on {n} points has {} optimal packings, {s} needed",
            family.optimal_count()
        )));
    }
    let inner = family.packings()[..s]
        .iter()
        .map(|p| cwc_from_blocks(n, 3, 4, p.iter().map(|t| t.to_vec())))
        .collect::<Result<Vec<_>>>()?;
    let outer = constant_sum_mcwc(m, s)?;
    let (code, _) = product_construction(&inner, &outer, 4, 2)?;
    let code = code.with_distance(4)?;
    let bound = weight_three_value(m, n);
    let provenance = if bound.exact {
        "disjoint optimal triple packings, constant-sum outer code"
    } else {
        "disjoint optimal triple packings, constant-sum outer code (lower bound)"
    };
    let cert = ConstructionCertificate::for_code(&code, Some(bound), provenance)?;
    Ok((code, cert))
}
