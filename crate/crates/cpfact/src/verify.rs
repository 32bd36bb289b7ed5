//! Independent certificate verification.
//!
//! The checker re-accumulates `sum alpha_i v_i v_i^T` on a full dense
//! grid straight from the atom coordinates, sharing no summation code
//! with the factorizer, and compares entrywise against the target.

use num_traits::Signed;

use crate::factorize::Certificate;
use crate::matrix::{Rational, SymMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

/// Check a certificate against `A`. Total: every defect is reported as
/// `Invalid` with the first failed check.
pub fn verify_certificate(a: &SymMatrix, cert: &Certificate) -> Verdict {
    let n = a.dim();
    if cert.n != n {
        return Verdict::Invalid(format!(
            "dimension mismatch: certificate says {}, matrix is {n}x{n}",
            cert.n
        ));
    }
    for (_, v) in &cert.atoms {
        if v.len() != n {
            return Verdict::Invalid(format!(
                "dimension mismatch: atom of length {}, expected {n}",
                v.len()
            ));
        }
    }
    if cert.atoms.iter().any(|(alpha, _)| alpha.is_negative()) {
        return Verdict::Invalid("negative coefficient".into());
    }
    // LatticeVector construction already enforces nonnegative nonzero
    // coordinates; re-check here so the verifier stands on its own.
    for (_, v) in &cert.atoms {
        if v.coords().iter().any(Signed::is_negative) {
            return Verdict::Invalid("atom with negative coordinate".into());
        }
        if v.coords().iter().all(num_traits::Zero::is_zero) {
            return Verdict::Invalid("zero atom".into());
        }
    }

    let mut grid = vec![vec![Rational::from_integer(0.into()); n]; n];
    for (alpha, v) in &cert.atoms {
        for i in 0..n {
            for j in 0..n {
                grid[i][j] += alpha * Rational::from_integer(&v.coords()[i] * &v.coords()[j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if &grid[i][j] != a.get(i, j) {
                return Verdict::Invalid("sum mismatch".into());
            }
        }
    }

    if cert.atoms.len() > n * (n + 1) / 2 {
        return Verdict::Invalid(format!(
            "atom count {} exceeds n(n+1)/2 = {}",
            cert.atoms.len(),
            n * (n + 1) / 2
        ));
    }
    Verdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::CertificateMeta;
    use crate::matrix::{rint, LatticeVector};

    fn cert(n: usize, atoms: Vec<(i64, &[i64])>) -> Certificate {
        Certificate {
            n,
            atoms: atoms
                .into_iter()
                .map(|(a, v)| (rint(a), LatticeVector::from_i64(v).unwrap()))
                .collect(),
            meta: CertificateMeta::unknown(),
        }
    }

    #[test]
    fn valid_standard_example() {
        let a = SymMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap();
        let c = cert(2, vec![(1, &[1, 0]), (1, &[0, 1]), (1, &[1, 1])]);
        assert_eq!(verify_certificate(&a, &c), Verdict::Valid);
    }

    #[test]
    fn incomplete_sum_detected() {
        let a = SymMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap();
        let c = cert(2, vec![(1, &[1, 0])]);
        assert_eq!(
            verify_certificate(&a, &c),
            Verdict::Invalid("sum mismatch".into())
        );
    }

    #[test]
    fn negative_coefficient_fires_before_sum_check() {
        let a = SymMatrix::identity(2);
        let c = cert(2, vec![(-1, &[1, 0]), (2, &[1, 0]), (1, &[0, 1])]);
        assert_eq!(
            verify_certificate(&a, &c),
            Verdict::Invalid("negative coefficient".into())
        );
    }

    #[test]
    fn dimension_mismatch_detected() {
        let a = SymMatrix::identity(3);
        let c = cert(2, vec![(1, &[1, 0]), (1, &[0, 1])]);
        assert!(matches!(verify_certificate(&a, &c), Verdict::Invalid(_)));
    }

    #[test]
    fn atom_count_bound_enforced() {
        // Four atoms summing correctly to a 2x2 matrix still exceed
        // n(n+1)/2 = 3.
        let a = SymMatrix::from_i64_rows(&[&[4, 1], &[1, 4]]).unwrap();
        let c = cert(
            2,
            vec![(1, &[1, 0]), (2, &[1, 0]), (3, &[0, 1]), (1, &[1, 1])],
        );
        assert_eq!(
            verify_certificate(&a, &c),
            Verdict::Invalid("atom count 4 exceeds n(n+1)/2 = 3".into())
        );
    }
}
