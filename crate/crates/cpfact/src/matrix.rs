//! Exact scalar, vector and symmetric-matrix types.
//!
//! Every quantity in this crate is an arbitrary-precision rational;
//! no floating point appears anywhere in the data flow. Symmetric
//! matrices store only the upper triangle and expose the `svec`
//! coordinates used by the LP layer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nonzero vector in `Z^n` with nonnegative coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidArgument(
                "lattice vector has a negative coordinate".into(),
            ));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Unit vector `e_i` in dimension `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); n];
        coords[i] = BigInt::one();
        Self { coords }
    }

    /// All-ones vector in dimension `n`.
    pub fn ones(n: usize) -> Self {
        Self {
            coords: vec![BigInt::one(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn linf_norm(&self) -> BigInt {
        self.coords
            .iter()
            .max()
            .cloned()
            .expect("lattice vector is nonempty")
    }

    /// Gcd of all coordinates (positive since the vector is nonzero).
    pub fn coordinate_gcd(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.coordinate_gcd().is_one()
    }

    /// `v^T B v` by direct double summation.
    pub fn quadratic_form(&self, b: &SymMatrix) -> Result<Rational> {
        if self.len() != b.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector has length {}, matrix dimension {}",
                self.len(),
                b.dim()
            )));
        }
        let mut acc = Rational::zero();
        for i in 0..self.len() {
            for j in 0..self.len() {
                acc += b.get(i, j) * Rational::from_integer(&self.coords[i] * &self.coords[j]);
            }
        }
        Ok(acc)
    }
}

impl std::fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Symmetric `n x n` matrix of rationals, upper triangle stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * (2 * n - i + 1) / 2 + (j - i)
}

impl SymMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from the upper triangle in row-major order.
    pub fn from_upper(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * (n + 1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} upper-triangle entries for dimension {}, got {}",
                n * (n + 1) / 2,
                n,
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    /// Build from full rows, rejecting asymmetric input.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, rows[i][j].clone());
            }
        }
        Ok(m)
    }

    /// Shorthand for small test matrices with integer-pair entries.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let converted: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rint(x)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        &self.entries[upper_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let idx = upper_index(self.n, i, j);
        self.entries[idx] = value;
    }

    pub fn upper_entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{0} and {}x{1} matrices",
                self.n, other.n
            )));
        }
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// Trace inner product `<A, B> = sum_{ij} A_ij B_ij`.
pub fn inner_product(a: &SymMatrix, b: &SymMatrix) -> Result<Rational> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of {}x{0} and {}x{1} matrices",
            a.dim(),
            b.dim()
        )));
    }
    let n = a.dim();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in i..n {
            let term = a.get(i, j) * b.get(i, j);
            if i == j {
                acc += term;
            } else {
                acc += Rational::from_integer(BigInt::from(2)) * term;
            }
        }
    }
    Ok(acc)
}

/// The rank-one matrix `v v^T`.
pub fn rank_one(v: &LatticeVector) -> SymMatrix {
    let n = v.len();
    let mut m = SymMatrix::zero(n);
    for i in 0..n {
        for j in i..n {
            m.set(
                i,
                j,
                Rational::from_integer(&v.coords()[i] * &v.coords()[j]),
            );
        }
    }
    m
}

/// Plain upper-triangle coordinates of `A`, row-major. Inverse of [`unsvec`].
pub fn svec(a: &SymMatrix) -> Vec<Rational> {
    a.entries.clone()
}

/// Weighted coordinates: off-diagonal entries doubled, so that the plain
/// dot product `svec_weighted(A) . svec(B)` equals `<A, B>` while all
/// values stay rational.
pub fn svec_weighted(a: &SymMatrix) -> Vec<Rational> {
    let n = a.dim();
    let two = Rational::from_integer(BigInt::from(2));
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let e = a.get(i, j);
            out.push(if i == j { e.clone() } else { &two * e });
        }
    }
    out
}

/// Rebuild a symmetric matrix from plain upper-triangle coordinates.
pub fn unsvec(y: &[Rational], n: usize) -> Result<SymMatrix> {
    SymMatrix::from_upper(n, y.to_vec())
}

/// Inverse of [`svec_weighted`]: off-diagonal coordinates are halved.
pub fn unsvec_weighted(y: &[Rational], n: usize) -> Result<SymMatrix> {
    if y.len() != n * (n + 1) / 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected {} coordinates for dimension {n}, got {}",
            n * (n + 1) / 2,
            y.len()
        )));
    }
    let half = rat(1, 2);
    let mut m = SymMatrix::zero(n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let v = if i == j { y[k].clone() } else { &half * &y[k] };
            m.set(i, j, v);
            k += 1;
        }
    }
    Ok(m)
}

/// Exact dot product of two rational vectors.
pub fn dot(x: &[Rational], y: &[Rational]) -> Result<Rational> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "dot product of vectors with lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter().zip(y).map(|(a, b)| a * b).sum())
}
