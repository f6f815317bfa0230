use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use crate::bounds::{bound_2d, improved_bound_2d, BoundResult};
use crate::code::{verify_2d, Code, Codeword, Shape};
use crate::designs::{latin_rectangle, ResolvableDesign};
use crate::error::{Error, Result};

use super::ConstructionCertificate;

/// An `m × n` array of blocks over points `0..M`: every point lies in `w_i`
/// cells of row `i` and `l` cells of every column, and no pair of points
/// shares more than `λ` cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrpArray {
    points: usize,
    cells: Vec<Vec<Vec<usize>>>,
    row_weights: Vec<usize>,
    column_weight: usize,
    lambda: usize,
}

impl DrpArray {
    pub fn new(
        points: usize,
        cells: Vec<Vec<Vec<usize>>>,
        row_weights: Vec<usize>,
        column_weight: usize,
        lambda: usize,
    ) -> Result<Self> {
        let m = cells.len();
        let n = cells.first().map_or(0, Vec::len);
        if points == 0 || m == 0 || n == 0 {
            return Err(Error::Invariant("array needs at least one point, row and column".into()));
        }
        if row_weights.len() != m {
            return Err(Error::Invariant(format!("{m} rows but {} row weights", row_weights.len())));
        }
        if let Some(i) = row_weights.iter().position(|&w| w == 0) {
            return Err(Error::Invariant(format!("row {i} has weight zero")));
        }
        let mut cells = cells;
        let mut col_count = vec![vec![0usize; points]; n];
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, row) in cells.iter_mut().enumerate() {
            if row.len() != n {
                return Err(Error::Invariant(format!("row {i} has {} cells, expected {n}", row.len())));
            }
            let mut row_count = vec![0usize; points];
            for (j, cell) in row.iter_mut().enumerate() {
                cell.sort_unstable();
                if cell.windows(2).any(|w| w[0] == w[1]) || cell.last().is_some_and(|&x| x >= points) {
                    return Err(Error::Invariant(format!("cell ({i},{j}) holds a bad block {cell:?}")));
                }
                for (a, &x) in cell.iter().enumerate() {
                    row_count[x] += 1;
                    col_count[j][x] += 1;
                    for &y in &cell[a + 1..] {
                        *pairs.entry((x, y)).or_default() += 1;
                    }
                }
            }
            if let Some(x) = row_count.iter().position(|&c| c != row_weights[i]) {
                return Err(Error::Invariant(format!(
                    "row {i}: point {x} appears {} times, expected {}",
                    row_count[x], row_weights[i]
                )));
            }
        }
        for (j, counts) in col_count.iter().enumerate() {
            if let Some(x) = counts.iter().position(|&c| c != column_weight) {
                return Err(Error::Invariant(format!(
                    "column {j}: point {x} appears {} times, expected {column_weight}",
                    counts[x]
                )));
            }
        }
        if let Some((&(x, y), &c)) = pairs.iter().filter(|(_, &c)| c > lambda).min() {
            return Err(Error::Invariant(format!("pair {{{x},{y}}} shares {c} cells, more than λ = {lambda}")));
        }
        Ok(DrpArray {
            points,
            cells,
            row_weights,
            column_weight,
            lambda,
        })
    }

    /// Reads weights from the first column and row occurrences, and takes
    /// `λ` as the largest pair multiplicity.
    pub fn infer(points: usize, cells: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let row_weights = cells
            .iter()
            .map(|row| row.iter().filter(|c| c.contains(&0)).count())
            .collect();
        let column_weight = cells
            .iter()
            .filter(|row| row.first().is_some_and(|c| c.contains(&0)))
            .count();
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for cell in cells.iter().flatten() {
            for (a, &x) in cell.iter().enumerate() {
                for &y in &cell[a + 1..] {
                    *pairs.entry((x.min(y), x.max(y))).or_default() += 1;
                }
            }
        }
        let lambda = pairs.values().copied().max().unwrap_or(0);
        DrpArray::new(points, cells, row_weights, column_weight, lambda)
    }

    /// Rows separated by `/`, cells by spaces, each cell written as its
    /// single-digit points (`.` for an empty cell).
    pub fn parse_compact(points: usize, text: &str) -> Result<Self> {
        let cells = text
            .split('/')
            .enumerate()
            .map(|(i, row)| {
                row.split_whitespace()
                    .map(|cell| {
                        if cell == "." {
                            return Ok(Vec::new());
                        }
                        cell.chars()
                            .map(|c| {
                                c.to_digit(10)
                                    .map(|d| d as usize)
                                    .ok_or_else(|| Error::parse(i + 1, format!("bad cell {cell:?}")))
                            })
                            .collect()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        DrpArray::infer(points, cells)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn columns(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cell(&self, i: usize, j: usize) -> &[usize] {
        &self.cells[i][j]
    }

    pub fn cells(&self) -> &[Vec<Vec<usize>>] {
        &self.cells
    }

    pub fn row_weights(&self) -> &[usize] {
        &self.row_weights
    }

    pub fn column_weight(&self) -> usize {
        self.column_weight
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `2(W - λ)`.
    pub fn distance(&self) -> usize {
        2 * (self.row_weights.iter().sum::<usize>() - self.lambda)
    }
}

impl fmt::Display for DrpArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.cells {
            let cells: Vec<String> = row
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        ".".to_string()
                    } else {
                        c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                    }
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// One word per point `x`: entry `(i, j)` is 1 iff `x ∈ R_ij`.
///
/// ```
/// use mcwc::constructions::{code_from_drp, example_drp_3x3};
/// let code = code_from_drp(&example_drp_3x3()).unwrap();
/// assert_eq!((code.len(), code.shape().distance()), (3, 6));
/// ```
pub fn code_from_drp(d: &DrpArray) -> Result<Code> {
    let (m, n) = (d.rows(), d.columns());
    let total: usize = d.row_weights.iter().sum();
    if d.lambda >= total {
        return Err(Error::Invariant(format!("λ = {} leaves no distance at W = {total}", d.lambda)));
    }
    let shape = Shape::new(vec![n; m], d.row_weights.clone(), d.distance())?;
    let words = (0..d.points).map(|x| {
        Codeword::from_parts(
            d.cells
                .iter()
                .map(|row| row.iter().map(|c| c.contains(&x)).collect())
                .collect(),
        )
    });
    let code = Code::from_words(shape, words)?;
    let report = verify_2d(&code, d.column_weight)?;
    if !report.passed() || code.len() != d.points {
        return Err(Error::Verification(
            report
                .describe_failure()
                .unwrap_or_else(|| "two points give the same word".into()),
        ));
    }
    Ok(code)
}

/// Points are numbered by the sorted order of their words.
pub fn drp_from_code(c: &Code, l: usize) -> Result<DrpArray> {
    let report = verify_2d(c, l)?;
    if !report.passed() {
        return Err(Error::Verification(report.describe_failure().unwrap_or_default()));
    }
    let shape = c.shape();
    let (m, n) = (shape.parts(), shape.matrix_width().unwrap_or(0));
    let mut cells = vec![vec![Vec::new(); n]; m];
    for (x, word) in c.iter().enumerate() {
        for (i, row) in cells.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if word.bit(i, j) {
                    cell.push(x);
                }
            }
        }
    }
    let lambda = shape.total_weight() - shape.half_distance();
    DrpArray::new(c.len(), cells, shape.weights().to_vec(), l, lambda)
}

/// The cyclic Latin square of order `n` as a DRP(n, 0; 1, 1; n, n): `n`
/// permutation matrices at distance `2n`, which is optimal.
pub fn latin_drp(n: usize) -> Result<(DrpArray, Code, ConstructionCertificate)> {
    let square = latin_rectangle(n, n)?;
    let cells = square
        .rows()
        .iter()
        .map(|row| row.iter().map(|&x| vec![x]).collect())
        .collect();
    let drp = DrpArray::new(n, cells, vec![1; n], 1, 0)?;
    let code = code_from_drp(&drp)?;
    let bound = BoundResult::new(BigUint::from(n), crate::bounds::BoundMethod::Trivial, true);
    let cert = ConstructionCertificate::for_code(&code, Some(bound), "cyclic Latin square")?;
    Ok((drp, code, cert))
}

fn certify_2d(code: &Code, l: usize, provenance: &str) -> Result<ConstructionCertificate> {
    let shape = code.shape();
    let (m, n) = (shape.parts(), shape.matrix_width().unwrap_or(0));
    let lambda = shape.total_weight() - shape.half_distance();
    let size = BigUint::from(code.len());
    let bound = [
        improved_bound_2d(m, n, shape.weights(), l, lambda),
        bound_2d(m, n, shape.weights(), l, lambda),
    ]
    .into_iter()
    .flatten()
    .min_by(|a, b| a.value.cmp(&b.value));
    let mut cert = ConstructionCertificate::for_code(code, bound, provenance)?;
    cert.optimal = cert.bound.as_ref().is_some_and(|b| b.value == size);
    Ok(cert)
}

/// For each class `i`, a `b × b` array with the class down the first column
/// and cyclic shifts across; the `r = st` arrays are tiled `s × t`.
///
/// Yields a DRP(M, bλ; αt, αs; bs, bt), a 2DMCWC of distance `2b(αr - λ)`.
/// The certificate is marked optimal when the size meets the 2D bounds.
pub fn drp_from_alpha_resolvable(
    design: &ResolvableDesign,
    s: usize,
    t: usize,
) -> Result<(DrpArray, ConstructionCertificate)> {
    let r = design.class_count();
    if s * t != r || s == 0 {
        return Err(Error::InvalidShape(format!("s·t = {} but the design has {r} classes", s * t)));
    }
    let b = design.blocks_per_class();
    let mut cells = vec![vec![Vec::new(); b * t]; b * s];
    for (i, class) in design.classes().iter().enumerate() {
        let (p, q) = (i / t, i % t);
        for j in 0..b {
            for c in 0..b {
                cells[p * b + j][q * b + c] = class[(j + c) % b].clone();
            }
        }
    }
    let alpha = design.alpha();
    let drp = DrpArray::new(
        design.points(),
        cells,
        vec![alpha * t; b * s],
        alpha * s,
        b * design.lambda(),
    )?;
    let code = code_from_drp(&drp)?;
    let cert = certify_2d(&code, alpha * s, "tiled cyclic arrays of an α-resolvable design")?;
    Ok((drp, cert))
}

/// Tiles every codeword `a` times vertically and `b` times horizontally.
pub fn concatenate(code: &Code, a: usize, b: usize) -> Result<(Code, ConstructionCertificate)> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidShape("copy counts must be positive".into()));
    }
    let shape = code.shape();
    let n = shape
        .matrix_width()
        .ok_or_else(|| Error::NotAMatrix(shape.lengths().to_vec()))?;
    let first = code
        .iter()
        .next()
        .ok_or_else(|| Error::InvalidShape("cannot tile an empty code".into()))?;
    let l = (0..shape.parts()).filter(|&i| first.bit(i, 0)).count();
    let report = verify_2d(code, l)?;
    if !report.passed() {
        return Err(Error::Verification(report.describe_failure().unwrap_or_default()));
    }
    let m = shape.parts();
    let weights = (0..a * m).map(|i| b * shape.weights()[i % m]).collect();
    let out_shape = Shape::new(vec![b * n; a * m], weights, a * b * shape.distance())?;
    let words = code.iter().map(|w| {
        Codeword::from_parts(
            (0..a * m)
                .map(|i| (0..b * n).map(|j| w.bit(i % m, j % n)).collect())
                .collect(),
        )
    });
    let out = Code::from_words(out_shape, words)?;
    let report = verify_2d(&out, a * l)?;
    if !report.passed() {
        return Err(Error::Verification(report.describe_failure().unwrap_or_default()));
    }
    let cert = certify_2d(&out, a * l, "tiled copies")?;
    Ok((out, cert))
}

/// The 3 × 3 DRP(3, 3; 2, 2; 3, 3) over `Z_3`.
pub fn example_drp_3x3() -> DrpArray {
    DrpArray::parse_compact(3, "01 12 02 / 02 01 12 / 12 02 01").expect("bundled array is valid")
}

/// An optimal 2DMCWC(6, 6, 20, 2, 2) of size 4.
pub fn example_drp_6x6() -> DrpArray {
    DrpArray::parse_compact(
        4,
        "01 23 0 1 2 3 / 23 01 3 0 1 2 / 2 3 02 13 0 1 / 1 2 13 02 3 0 / 0 1 2 3 03 12 / 3 0 1 2 12 03",
    )
    .expect("bundled array is valid")
}

/// An optimal 2DMCWC(9, 9, 32, 2, 2) of size 6.
pub fn example_drp_9x9() -> DrpArray {
    DrpArray::parse_compact(
        6,
        "01 45 12 2 3 0 3 5 4 / 25 13 04 3 0 1 4 2 5 / 34 02 35 0 1 2 5 4 1 / \
         4 5 5 03 14 03 2 1 2 / 3 4 2 15 05 24 1 3 0 / 5 1 4 24 23 15 0 0 3 / \
         0 2 3 5 4 3 01 45 12 / 1 3 0 4 2 5 25 13 04 / 2 0 1 1 5 4 34 02 35",
    )
    .expect("bundled array is valid")
}
