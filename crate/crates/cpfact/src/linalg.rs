//! Exact Gaussian elimination over the rationals.
//!
//! Everything here works on dense `Vec<Vec<Rational>>` rows. Pivots are
//! chosen by least index (first nonzero), so results are deterministic
//! for a given input order.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Rational;

/// Outcome of an exact linear solve `M x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolve {
    /// The unique solution; the columns of `M` are independent and `b`
    /// lies in their span.
    Unique(Vec<Rational>),
    /// `b` is not in the column span of `M`.
    NoSolution,
    /// Consistent but the columns of `M` are dependent.
    Underdetermined,
}

/// Solve `M x = b` exactly, `M` given as rows.
pub fn solve_linear_system(m: &[Vec<Rational>], b: &[Rational]) -> Result<LinearSolve> {
    let rows = m.len();
    if rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {rows} rows, right-hand side has {} entries",
            b.len()
        )));
    }
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged matrix rows".into()));
    }

    // Augmented matrix [M | b], reduced to row echelon form.
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, src);
        let pivot = aug[pivot_row][col].clone();
        for entry in &mut aug[pivot_row][col..] {
            *entry = &*entry / &pivot;
        }
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=cols {
                    let delta = &factor * &aug[pivot_row][c];
                    aug[r][c] = &aug[r][c] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    // Inconsistent row: zero coefficients with nonzero rhs.
    for r in pivot_row..rows {
        if !aug[r][cols].is_zero() {
            return Ok(LinearSolve::NoSolution);
        }
    }

    if pivot_cols.len() < cols {
        return Ok(LinearSolve::Underdetermined);
    }

    let mut x = vec![Rational::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[r][cols].clone();
    }
    Ok(LinearSolve::Unique(x))
}

/// Incremental echelon basis used for greedy independence scans.
#[derive(Debug, Default)]
pub struct EchelonBasis {
    // Rows in echelon form, each paired with its leading column.
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; returns the residual if nonzero.
    fn reduce(&self, v: &[Rational]) -> Option<(usize, Vec<Rational>)> {
        let mut v = v.to_vec();
        for (lead, row) in &self.rows {
            if !v[*lead].is_zero() {
                let factor = v[*lead].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    let delta = &factor * r;
                    *x = &*x - &delta;
                }
            }
        }
        let lead = v.iter().position(|x| !x.is_zero())?;
        let pivot = v[lead].clone();
        for x in &mut v {
            *x = &*x / &pivot;
        }
        Some((lead, v))
    }

    /// Insert `v` if independent of the rows already kept.
    pub fn try_insert(&mut self, v: &[Rational]) -> bool {
        match self.reduce(v) {
            Some(row) => {
                self.rows.push(row);
                true
            }
            None => false,
        }
    }

    pub fn is_independent(&self, v: &[Rational]) -> bool {
        self.reduce(v).is_some()
    }
}

/// Indices of the maximal prefix-greedy independent subset: scan in the
/// given order, keep a vector iff it is independent of those already kept.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis = EchelonBasis::new();
    let mut kept = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if basis.try_insert(v) {
            kept.push(i);
        }
    }
    kept
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    independent_subset(vectors).len()
}

/// A nonzero `z` with `row . z = 0` for every row, or `None` when the
/// rows have full column rank. Deterministic: the first free column gets
/// coefficient 1.
pub fn nullspace_vector(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    let mut reduced: Vec<Vec<Rational>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for row in rows {
        debug_assert_eq!(row.len(), dim);
        let mut r = row.clone();
        for (p, pr) in pivot_cols.iter().zip(&reduced) {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, e) in r.iter_mut().zip(pr) {
                    let delta = &f * e;
                    *x = &*x - &delta;
                }
            }
        }
        if let Some(lead) = r.iter().position(|x| !x.is_zero()) {
            let pivot = r[lead].clone();
            for x in &mut r {
                *x = &*x / &pivot;
            }
            // Back-eliminate so earlier rows are clear in this column.
            for (pr, _) in reduced.iter_mut().zip(0..) {
                if !pr[lead].is_zero() {
                    let f = pr[lead].clone();
                    for (x, e) in pr.iter_mut().zip(&r) {
                        let delta = &f * e;
                        *x = &*x - &delta;
                    }
                }
            }
            reduced.push(r);
            pivot_cols.push(lead);
        }
    }
    let free = (0..dim).find(|c| !pivot_cols.contains(c))?;
    let mut z = vec![Rational::zero(); dim];
    z[free] = Rational::from_integer(1.into());
    for (p, pr) in pivot_cols.iter().zip(&reduced) {
        z[*p] = -pr[free].clone();
    }
    Some(z)
}

/// A nontrivial dependency `sum_i beta_i v_i = 0`, or `None` if the
/// vectors are independent. The first dependent vector (in input order)
/// carries coefficient 1.
pub fn dependency(vectors: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let mut basis = EchelonBasis::new();
    let mut kept: Vec<usize> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if basis.try_insert(v) {
            kept.push(i);
            continue;
        }
        // v_i depends on the kept prefix: solve for the combination.
        let cols: Vec<Vec<Rational>> = kept.iter().map(|&k| vectors[k].clone()).collect();
        let dim = v.len();
        let rows: Vec<Vec<Rational>> = (0..dim)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        match solve_linear_system(&rows, v) {
            Ok(LinearSolve::Unique(coeffs)) => {
                let mut beta = vec![Rational::zero(); vectors.len()];
                for (&k, c) in kept.iter().zip(coeffs) {
                    beta[k] = -c;
                }
                beta[i] = Rational::from_integer(1.into());
                return Some(beta);
            }
            _ => unreachable!("dependent vector must be solvable over the kept basis"),
        }
    }
    None
}
