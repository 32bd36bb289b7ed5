//! Lattice-vector separation, Dirichlet approximation, and the
//! copositivity-refutation construction.
//!
//! The separation oracle enumerates nonnegative integer vectors by
//! increasing sup-norm shells and reports those with `v'Bv < 1`. Only
//! primitive vectors (coordinate gcd 1) are emitted: a violating
//! non-primitive vector always has a violating primitive multiple with
//! smaller norm, so parallel constraints would be redundant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{LatticeVector, Rational, SymMatrix};

/// Bounds for the separation enumeration.
#[derive(Debug, Clone)]
pub struct SeparationConfig {
    /// Enumerate `v` with `1 <= ||v||_inf <= linf_bound`.
    pub linf_bound: u64,
    /// Stop after collecting this many violating vectors.
    pub max_violations: usize,
}

impl SeparationConfig {
    pub fn new(linf_bound: u64, max_violations: usize) -> Result<Self> {
        if linf_bound < 1 || max_violations < 1 {
            return Err(Error::InvalidArgument(
                "separation bounds must be at least 1".into(),
            ));
        }
        Ok(Self {
            linf_bound,
            max_violations,
        })
    }
}

/// All vectors in `{0..=r}^n` with some coordinate equal to `r`,
/// in lexicographic order (leftmost coordinate most significant).
fn shell(n: usize, r: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        if v.iter().any(|&c| c == r) {
            out.push(v.clone());
        }
        // Odometer increment in base r+1.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < r {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
    }
}

fn is_primitive(coords: &[u64]) -> bool {
    coords.iter().fold(0u64, |acc, &c| acc.gcd(&c)) == 1
}

/// All primitive vectors in `Z^n_{>=0}` with `1 <= ||v||_inf <= linf_bound`,
/// ordered by increasing sup norm, then lexicographically.
pub fn primitive_vectors(n: usize, linf_bound: u64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for r in 1..=linf_bound {
        for coords in shell(n, r) {
            if is_primitive(&coords) {
                out.push(
                    LatticeVector::new(coords.iter().map(|&c| BigInt::from(c)).collect())
                        .expect("shell vectors are nonzero and nonnegative"),
                );
            }
        }
    }
    out
}

/// Violating lattice vectors `v'Bv < 1` within the configured bounds,
/// ordered by increasing sup norm, then lexicographically. An empty
/// result certifies only that no violation exists up to `linf_bound`.
pub fn find_violations(b: &SymMatrix, cfg: &SeparationConfig) -> Vec<LatticeVector> {
    let n = b.dim();
    let one = Rational::one();
    let mut found = Vec::new();
    for r in 1..=cfg.linf_bound {
        let candidates = shell(n, r);
        // Shells are evaluated in parallel and re-sorted by candidate
        // index, so output order is independent of the worker count.
        let mut hits: Vec<(usize, LatticeVector)> = candidates
            .par_iter()
            .enumerate()
            .filter_map(|(idx, coords)| {
                if !is_primitive(coords) {
                    return None;
                }
                let v = LatticeVector::new(coords.iter().map(|&c| BigInt::from(c)).collect())
                    .expect("shell vectors are nonzero and nonnegative");
                let value = v.quadratic_form(b).expect("dimensions match by construction");
                (value < one).then_some((idx, v))
            })
            .collect();
        hits.sort_by_key(|(idx, _)| *idx);
        for (_, v) in hits {
            found.push(v);
            if found.len() == cfg.max_violations {
                return found;
            }
        }
    }
    found
}

/// Simultaneous approximation `p_i/q` of the inputs, with
/// `1 <= q <= eps^{-n}` and `|alpha_i - p_i/q| <= eps/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletResult {
    pub p: Vec<BigInt>,
    pub q: BigInt,
    pub epsilon: Rational,
}

impl DirichletResult {
    /// Validates the two defining inequalities against the inputs.
    pub fn new(alphas: &[Rational], p: Vec<BigInt>, q: BigInt, epsilon: Rational) -> Result<Self> {
        if q < BigInt::one() {
            return Err(Error::Internal("Dirichlet denominator below 1".into()));
        }
        let n = alphas.len() as i32;
        let bound = epsilon.pow(-n);
        if Rational::from_integer(q.clone()) > bound {
            return Err(Error::Internal(
                "Dirichlet denominator exceeds eps^{-n}".into(),
            ));
        }
        let qr = Rational::from_integer(q.clone());
        for (alpha, pi) in alphas.iter().zip(&p) {
            let err = (alpha - Rational::from_integer(pi.clone()) / &qr).abs();
            if err > &epsilon / &qr {
                return Err(Error::Internal(
                    "Dirichlet approximation error exceeds eps/q".into(),
                ));
            }
        }
        Ok(Self { p, q, epsilon })
    }
}

/// Smallest `q` in `1..=ceil(eps^{-n})` whose nearest-integer numerators
/// satisfy the Dirichlet bound. A brute-force scan; the theorem makes it
/// finite and its postconditions are re-checked on every return.
pub fn dirichlet(alphas: &[Rational], epsilon: &Rational) -> Result<DirichletResult> {
    if alphas.is_empty() {
        return Err(Error::InvalidArgument("empty approximation target".into()));
    }
    if !epsilon.is_positive() || *epsilon >= Rational::one() {
        return Err(Error::InvalidArgument(
            "epsilon must lie strictly between 0 and 1".into(),
        ));
    }
    let n = alphas.len() as i32;
    let q_max = epsilon.pow(-n).ceil().to_integer();
    let mut q = BigInt::one();
    while q <= q_max {
        let qr = Rational::from_integer(q.clone());
        let p: Vec<BigInt> = alphas
            .iter()
            .map(|a| (a * &qr).round().to_integer())
            .collect();
        let ok = alphas.iter().zip(&p).all(|(a, pi)| {
            (a - Rational::from_integer(pi.clone()) / &qr).abs() <= epsilon / &qr
        });
        if ok {
            return DirichletResult::new(alphas, p, q, epsilon.clone());
        }
        q += 1;
    }
    Err(Error::Internal(
        "no Dirichlet denominator within the theorem's bound".into(),
    ))
}

/// Given copositive `B` with a strictly positive rational zero direction
/// `x` (checked: `x'Bx = 0`), produce a nonnegative integer vector `p`
/// with small quadratic value `<B, pp^T>`, refuting `<B, vv^T> >= 1` for
/// all lattice vectors once the value drops below 1.
pub fn refute_membership(
    b: &SymMatrix,
    x: &[Rational],
    epsilon: &Rational,
) -> Result<(LatticeVector, Rational)> {
    if x.len() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "direction has length {}, matrix dimension {}",
            x.len(),
            b.dim()
        )));
    }
    let mut quad = Rational::zero();
    for i in 0..x.len() {
        for j in 0..x.len() {
            quad += b.get(i, j) * &x[i] * &x[j];
        }
    }
    if !quad.is_zero() {
        return Err(Error::InvalidArgument(
            "x'Bx must vanish exactly for the refutation construction".into(),
        ));
    }
    let approx = dirichlet(x, epsilon)?;
    // x_i > 0, so negative numerators can only come from rounding noise;
    // clamping keeps p in the nonnegative lattice.
    let p: Vec<BigInt> = approx
        .p
        .into_iter()
        .map(|pi| if pi.is_negative() { BigInt::zero() } else { pi })
        .collect();
    if p.iter().all(|pi| pi.is_zero()) {
        return Err(Error::InvalidArgument(
            "epsilon too large: approximation collapsed to the zero vector".into(),
        ));
    }
    let p = LatticeVector::new(p)?;
    let value = p.quadratic_form(b)?;
    Ok((p, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{rat, rint, SymMatrix};

    fn sym(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_i64_rows(rows).unwrap()
    }

    fn cfg(r: u64) -> SeparationConfig {
        SeparationConfig::new(r, 1000).unwrap()
    }

    #[test]
    fn identity_has_no_violations() {
        let b = SymMatrix::identity(2);
        assert!(find_violations(&b, &cfg(4)).is_empty());
    }

    #[test]
    fn scaled_identity_violated_by_units() {
        let b = SymMatrix::identity(2).scale(&rat(1, 2));
        let hits = find_violations(&b, &cfg(1));
        let coords: Vec<Vec<i64>> = hits
            .iter()
            .map(|v| v.coords().iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        assert!(coords.contains(&vec![0, 1]));
        assert!(coords.contains(&vec![1, 0]));
    }

    #[test]
    fn hyperbolic_form_matches_exhaustive_oracle() {
        let b = sym(&[&[1, -1], &[-1, 1]]);
        let hits = find_violations(&b, &cfg(3));
        // Independent exhaustive double loop, primitive vectors only.
        let mut expected = Vec::new();
        for r in 1..=3i64 {
            for i in 0..=r {
                for j in 0..=r {
                    if i.max(j) != r || num_integer::gcd(i, j) != 1 {
                        continue;
                    }
                    let v = LatticeVector::from_i64(&[i, j]).unwrap();
                    if v.quadratic_form(&b).unwrap() < Rational::one() {
                        expected.push(v);
                    }
                }
            }
        }
        assert_eq!(hits, expected);
        assert!(hits.contains(&LatticeVector::from_i64(&[1, 1]).unwrap()));
        // (1,2) hits exactly 1 and is not a violation; non-primitive
        // (2,2) and (3,3) are covered by (1,1).
        assert!(!hits.contains(&LatticeVector::from_i64(&[1, 2]).unwrap()));
        assert!(!hits.contains(&LatticeVector::from_i64(&[2, 2]).unwrap()));
    }

    #[test]
    fn violations_are_sound() {
        let b = sym(&[&[1, -1], &[-1, 2]]);
        for v in find_violations(&b, &cfg(4)) {
            assert!(v.quadratic_form(&b).unwrap() < Rational::one());
        }
    }

    #[test]
    fn max_violations_truncates_in_order() {
        let b = SymMatrix::zero(2);
        let all = find_violations(&b, &cfg(3));
        let two = find_violations(&b, &SeparationConfig::new(3, 2).unwrap());
        assert_eq!(two.as_slice(), &all[..2]);
    }

    #[test]
    fn dirichlet_half() {
        // q = 1 fails |1/2 - p| <= 2/5; q = 2 is exact.
        let res = dirichlet(&[rat(1, 2)], &rat(2, 5)).unwrap();
        assert_eq!(res.q, BigInt::from(2));
        assert_eq!(res.p, vec![BigInt::from(1)]);
    }

    #[test]
    fn dirichlet_integers_approximate_themselves() {
        let res = dirichlet(&[rint(3), rint(7)], &rat(1, 2)).unwrap();
        assert_eq!(res.q, BigInt::from(1));
        assert_eq!(res.p, vec![BigInt::from(3), BigInt::from(7)]);
    }

    #[test]
    fn dirichlet_thirds() {
        let alphas = [rat(1, 3), rat(2, 3)];
        let eps = rat(1, 4);
        let res = dirichlet(&alphas, &eps).unwrap();
        assert!(res.q <= BigInt::from(3));
        // Exhaustive scan: the returned q is the smallest valid one.
        let qr = Rational::from_integer(res.q.clone());
        for q in 1..i64::try_from(&res.q).unwrap() {
            let q_rat = rint(q);
            let ok = alphas.iter().all(|a| {
                let p = (a * &q_rat).round();
                (a - &p / &q_rat).abs() <= &eps / &q_rat
            });
            assert!(!ok, "q = {q} should not satisfy the bound");
        }
        for (a, p) in alphas.iter().zip(&res.p) {
            assert!((a - Rational::from_integer(p.clone()) / &qr).abs() <= &eps / &qr);
        }
    }

    #[test]
    fn dirichlet_rejects_bad_epsilon() {
        assert!(dirichlet(&[rat(1, 2)], &rint(1)).is_err());
        assert!(dirichlet(&[rat(1, 2)], &rint(0)).is_err());
    }

    #[test]
    fn refute_hyperbolic_exact_zero() {
        let b = sym(&[&[1, -1], &[-1, 1]]);
        let (p, value) = refute_membership(&b, &[rint(1), rint(1)], &rat(1, 2)).unwrap();
        assert_eq!(p, LatticeVector::from_i64(&[1, 1]).unwrap());
        assert!(value.is_zero());
    }

    #[test]
    fn refute_scaled_direction() {
        let b = sym(&[&[1, -1], &[-1, 1]]);
        let (p, value) = refute_membership(&b, &[rat(1, 2), rat(1, 2)], &rat(1, 2)).unwrap();
        let c = p.coords();
        assert_eq!(c[0], c[1]);
        assert!(value.is_zero());
    }

    #[test]
    fn refute_psd_with_rational_kernel() {
        // B = [[4,-2],[-2,1]] has zero direction x = (1/3, 2/3).
        let b = sym(&[&[4, -2], &[-2, 1]]);
        let (p, value) = refute_membership(&b, &[rat(1, 3), rat(2, 3)], &rat(1, 4)).unwrap();
        assert!(value < Rational::one());
        // Re-multiplication oracle for <B, pp^T>.
        let oracle = p.quadratic_form(&b).unwrap();
        assert_eq!(value, oracle);
    }

    #[test]
    fn refute_rejects_nonzero_direction_value() {
        let b = SymMatrix::identity(2);
        assert!(refute_membership(&b, &[rint(1), rint(1)], &rat(1, 2)).is_err());
    }
}
