//! Instance generation and boundary examples.
//!
//! Interior instances are certified by construction: the witness atoms
//! contain all unit vectors and at least one entrywise-positive vector,
//! each with a strictly positive coefficient, which places the sum in
//! the interior of the completely positive cone. The generator uses
//! ChaCha8 keyed by the seed, so corpora reproduce bit-exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factorize::{Certificate, CertificateMeta};
use crate::matrix::{inner_product, rank_one, LatticeVector, Rational, SymMatrix};
use crate::verify::{verify_certificate, Verdict};

/// A matrix known to lie in the interior, with its generating witness.
#[derive(Debug, Clone)]
pub struct InteriorInstance {
    pub matrix: SymMatrix,
    pub witness: Certificate,
    pub seed: u64,
}

/// A boundary member of the cone with an exact boundary witness.
#[derive(Debug, Clone)]
pub struct BoundaryExample {
    pub matrix: SymMatrix,
    /// Entrywise-nonnegative (hence copositive) `C` with `<A, C> = 0`.
    pub copositive_witness: SymMatrix,
    pub factorization: Certificate,
}

fn random_positive_rational(rng: &mut ChaCha8Rng, coeff_bound: u64) -> Rational {
    let num = rng.gen_range(1..=coeff_bound);
    let den = rng.gen_range(1..=coeff_bound);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn random_primitive_vector(rng: &mut ChaCha8Rng, n: usize, coord_bound: u64) -> LatticeVector {
    loop {
        let coords: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=coord_bound)).collect();
        let g = coords.iter().fold(0u64, |acc, &c| acc.gcd(&c));
        if g == 0 {
            continue;
        }
        return LatticeVector::new(coords.iter().map(|&c| BigInt::from(c / g)).collect())
            .expect("nonzero by construction");
    }
}

/// Draw random primitive atoms, append the unit vectors and the
/// all-ones vector, and sum with random positive rational coefficients.
/// The number of random atoms is capped so the witness stays within the
/// Caratheodory bound `n(n+1)/2` and passes the verifier unchanged.
/// Deterministic in `seed`.
pub fn generate_interior(
    n: usize,
    seed: u64,
    coeff_bound: u64,
    coord_bound: u64,
) -> Result<InteriorInstance> {
    if n < 1 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if coeff_bound < 1 || coord_bound < 1 {
        return Err(Error::InvalidArgument("bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let random_atoms = n.min((n * (n + 1) / 2).saturating_sub(n + 1));
    let mut atoms: Vec<LatticeVector> = (0..random_atoms)
        .map(|_| random_primitive_vector(&mut rng, n, coord_bound))
        .collect();
    atoms.extend((0..n).map(|i| LatticeVector::unit(n, i)));
    atoms.push(LatticeVector::ones(n));
    // Drop duplicates (a random atom may coincide with a unit vector;
    // for n = 1 the all-ones vector is the unit vector).
    let mut seen = std::collections::HashSet::new();
    atoms.retain(|v| seen.insert(v.clone()));

    let pairs: Vec<(Rational, LatticeVector)> = atoms
        .into_iter()
        .map(|v| (random_positive_rational(&mut rng, coeff_bound), v))
        .collect();

    let mut matrix = SymMatrix::zero(n);
    for (alpha, v) in &pairs {
        matrix = matrix.add(&rank_one(v).scale(alpha))?;
    }
    let witness = Certificate {
        n,
        atoms: pairs,
        meta: CertificateMeta::unknown(),
    };
    if let Verdict::Invalid(reason) = verify_certificate(&matrix, &witness) {
        return Err(Error::Internal(format!(
            "generated witness failed verification: {reason}"
        )));
    }
    Ok(InteriorInstance {
        matrix,
        witness,
        seed,
    })
}

/// Known boundary members of the cone, each with a copositive witness
/// `C` orthogonal to it and an exact cp-factorization.
pub fn boundary_examples(n: usize) -> Result<Vec<BoundaryExample>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "boundary examples require dimension at least 2".into(),
        ));
    }
    let mut out = Vec::new();

    // Identity: orthogonal to the all-ones off-diagonal matrix.
    let identity = SymMatrix::identity(n);
    let mut off_ones = SymMatrix::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            off_ones.set(i, j, Rational::one());
        }
    }
    out.push(BoundaryExample {
        matrix: identity.clone(),
        copositive_witness: off_ones,
        factorization: Certificate {
            n,
            atoms: (0..n)
                .map(|i| (Rational::one(), LatticeVector::unit(n, i)))
                .collect(),
            meta: CertificateMeta::unknown(),
        },
    });

    // Rank-one corner e1 e1^T: orthogonal to diag(0, 1, ..., 1).
    let corner = rank_one(&LatticeVector::unit(n, 0));
    let mut tail_diag = SymMatrix::zero(n);
    for i in 1..n {
        tail_diag.set(i, i, Rational::one());
    }
    out.push(BoundaryExample {
        matrix: corner,
        copositive_witness: tail_diag,
        factorization: Certificate {
            n,
            atoms: vec![(Rational::one(), LatticeVector::unit(n, 0))],
            meta: CertificateMeta::unknown(),
        },
    });

    // Degenerate diagonal diag(1, ..., 1, 0): orthogonal to E_nn.
    let mut degenerate = SymMatrix::zero(n);
    for i in 0..n - 1 {
        degenerate.set(i, i, Rational::one());
    }
    let mut last_diag = SymMatrix::zero(n);
    last_diag.set(n - 1, n - 1, Rational::one());
    out.push(BoundaryExample {
        matrix: degenerate,
        copositive_witness: last_diag,
        factorization: Certificate {
            n,
            atoms: (0..n - 1)
                .map(|i| (Rational::one(), LatticeVector::unit(n, i)))
                .collect(),
            meta: CertificateMeta::unknown(),
        },
    });

    for ex in &out {
        let orth = inner_product(&ex.matrix, &ex.copositive_witness)?;
        if !orth.is_zero() {
            return Err(Error::Internal("boundary witness is not orthogonal".into()));
        }
        if let Verdict::Invalid(reason) = verify_certificate(&ex.matrix, &ex.factorization) {
            return Err(Error::Internal(format!(
                "shipped boundary factorization is invalid: {reason}"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn minimal_construction_matches_hand_example() {
        // No random atoms, all coefficients 1: unit vectors plus the
        // all-ones vector give [[2,1],[1,2]].
        let atoms = [
            LatticeVector::unit(2, 0),
            LatticeVector::unit(2, 1),
            LatticeVector::ones(2),
        ];
        let mut a = SymMatrix::zero(2);
        for v in &atoms {
            a = a.add(&rank_one(v)).unwrap();
        }
        assert_eq!(a, SymMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap());
    }

    #[test]
    fn generated_witness_verifies() {
        for n in 1..=4 {
            let inst = generate_interior(n, 42, 10, 3).unwrap();
            // The sum itself must reproduce the matrix exactly.
            let mut rebuilt = SymMatrix::zero(n);
            for (alpha, v) in &inst.witness.atoms {
                rebuilt = rebuilt.add(&rank_one(v).scale(alpha)).unwrap();
            }
            assert_eq!(rebuilt, inst.matrix);
        }
    }

    #[test]
    fn witness_contains_units_and_positive_vector() {
        let inst = generate_interior(3, 7, 10, 3).unwrap();
        for i in 0..3 {
            let unit = LatticeVector::unit(3, i);
            assert!(inst
                .witness
                .atoms
                .iter()
                .any(|(a, v)| *v == unit && a.is_positive()));
        }
        assert!(inst
            .witness
            .atoms
            .iter()
            .any(|(a, v)| v.coords().iter().all(|c| c.is_positive()) && a.is_positive()));
    }

    #[test]
    fn deterministic_in_seed() {
        let a = generate_interior(4, 123, 10, 3).unwrap();
        let b = generate_interior(4, 123, 10, 3).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.witness.atoms, b.witness.atoms);
        let c = generate_interior(4, 124, 10, 3).unwrap();
        assert_ne!(a.matrix, c.matrix);
    }

    #[test]
    fn boundary_examples_ship_their_witnesses() {
        for n in 2..=4 {
            let examples = boundary_examples(n).unwrap();
            assert!(examples.len() >= 3);
            for ex in examples {
                assert!(inner_product(&ex.matrix, &ex.copositive_witness)
                    .unwrap()
                    .is_zero());
                // Entrywise nonnegative witness, hence copositive.
                for i in 0..n {
                    for j in 0..n {
                        assert!(!ex.copositive_witness.get(i, j).is_negative());
                    }
                }
                assert_eq!(
                    verify_certificate(&ex.matrix, &ex.factorization),
                    Verdict::Valid
                );
            }
        }
    }

    #[test]
    fn boundary_examples_reject_small_dimension() {
        assert!(boundary_examples(1).is_err());
    }
}
