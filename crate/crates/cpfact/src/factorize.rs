//! The cp-factorization pipeline.
//!
//! A cutting-plane loop minimizes `<A, B>` over the polytope of matrices
//! `B` satisfying `<B, vv^T> >= 1` for an adaptively grown set of lattice
//! vectors `v`, together with `<A, B> <= lambda`. At a separation-clean
//! optimal vertex the active constraints supply the candidate atoms;
//! exact cone membership, a Caratheodory reduction and a rational solve
//! turn them into a certificate `A = sum alpha_i v_i v_i^T`, which is
//! re-checked by the independent verifier before being reported.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{find_violations, primitive_vectors, SeparationConfig};
use crate::linalg::{dependency, solve_linear_system, LinearSolve};
use crate::lp::{cone_membership, solve_min, ConeMembership, LinearProgram, SolveOutcome};
use crate::matrix::{
    inner_product, rank_one, svec, svec_weighted, unsvec, unsvec_weighted, LatticeVector,
    Rational, SymMatrix,
};
use crate::verify::{verify_certificate, Verdict};

/// Provenance of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateMeta {
    pub lambda: Rational,
    pub final_linf_bound: u64,
    pub lp_pivots: usize,
    pub separation_rounds: usize,
}

impl CertificateMeta {
    /// Placeholder for certificates whose provenance was not recorded,
    /// e.g. ones read back from a file.
    pub fn unknown() -> Self {
        Self {
            lambda: Rational::zero(),
            final_linf_bound: 0,
            lp_pivots: 0,
            separation_rounds: 0,
        }
    }
}

/// Exact conic decomposition `A = sum alpha_i v_i v_i^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub atoms: Vec<(Rational, LatticeVector)>,
    pub meta: CertificateMeta,
}

#[derive(Debug, Clone)]
pub struct FactorizeConfig {
    /// Sup-norm bound for the initial constraint set.
    pub initial_linf_bound: u64,
    /// Largest sup-norm bound the separation oracle may reach.
    pub max_linf_bound: u64,
    /// `lambda = lambda_multiplier * trace(A)`.
    pub lambda_multiplier: Rational,
    /// Cap on cutting-plane rounds.
    pub max_rounds: usize,
}

impl Default for FactorizeConfig {
    fn default() -> Self {
        Self {
            initial_linf_bound: 2,
            max_linf_bound: 8,
            lambda_multiplier: Rational::one(),
            max_rounds: 1000,
        }
    }
}

impl FactorizeConfig {
    fn validate(&self) -> Result<()> {
        if self.initial_linf_bound < 1 || self.initial_linf_bound > self.max_linf_bound {
            return Err(Error::InvalidArgument(
                "require 1 <= initial_linf_bound <= max_linf_bound".into(),
            ));
        }
        if self.max_rounds < 1 {
            return Err(Error::InvalidArgument("max_rounds must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum FactorizeOutcome {
    Success(Certificate),
    /// The configured bounds ran out before a certificate was found.
    BoundExceeded {
        final_linf_bound: u64,
        best_point: Option<SymMatrix>,
    },
    /// A direction `C` with `<A, C> < 0` and `<C, vv^T> >= 0` for every
    /// enumerated lattice vector: evidence that `A` is not interior.
    NotInteriorSuspected {
        witness: SymMatrix,
    },
}

/// `lambda = multiplier * trace(A)`. The identity matrix satisfies every
/// lattice constraint and `<A, I> = trace(A)`, so the LP stays feasible.
pub fn choose_lambda(a: &SymMatrix, cfg: &FactorizeConfig) -> Result<Rational> {
    let trace = a.trace();
    if !trace.is_positive() {
        return Err(Error::InvalidArgument(
            "trace must be positive for a nonzero completely positive matrix".into(),
        ));
    }
    Ok(&cfg.lambda_multiplier * trace)
}

const VIOLATIONS_PER_ROUND: usize = 64;

/// Primitive vectors `v` with `v'Cv < 0`, smallest shells first; used to
/// cut off unbounded or separating directions.
fn negative_directions(c: &SymMatrix, linf_bound: u64) -> Vec<LatticeVector> {
    primitive_vectors(c.dim(), linf_bound)
        .into_iter()
        .filter(|v| v.quadratic_form(c).expect("dims match").is_negative())
        .take(VIOLATIONS_PER_ROUND)
        .collect()
}

pub fn factorize(a: &SymMatrix, cfg: &FactorizeConfig) -> Result<FactorizeOutcome> {
    cfg.validate()?;
    let n = a.dim();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let lambda = choose_lambda(a, cfg)?;
    let objective = svec_weighted(a);

    // Seed with the 0/1 shell only; separation re-adds deeper vectors as
    // cuts, which keeps the first tableau small.
    let mut pool = primitive_vectors(n, 1);
    let mut linf_bound = cfg.initial_linf_bound;
    let mut rounds = 0usize;
    let mut lp_pivots = 0usize;
    let mut best_point: Option<SymMatrix> = None;
    let mut last_objective: Option<Rational> = None;

    loop {
        rounds += 1;
        if rounds > cfg.max_rounds {
            return Ok(FactorizeOutcome::BoundExceeded {
                final_linf_bound: linf_bound,
                best_point,
            });
        }

        let mut constraints: Vec<(Vec<Rational>, Rational)> = pool
            .iter()
            .map(|v| (svec_weighted(&rank_one(v)), Rational::one()))
            .collect();
        constraints.push((objective.iter().map(|x| -x.clone()).collect(), -&lambda));
        let lp = LinearProgram::new(objective.clone(), constraints)?;

        match solve_min(&lp)? {
            SolveOutcome::Infeasible => {
                return Err(Error::Internal(
                    "the identity matrix is always feasible; infeasible LP is a bug".into(),
                ));
            }
            SolveOutcome::Unbounded { ray } => {
                // The ray satisfies <D, vv^T> >= 0 for every pooled v and
                // <A, D> < 0; cut it off or report it.
                let direction = unsvec(&ray, n)?;
                let cuts = negative_directions(&direction, cfg.max_linf_bound);
                if cuts.is_empty() {
                    return Ok(FactorizeOutcome::NotInteriorSuspected { witness: direction });
                }
                let largest = cuts
                    .iter()
                    .map(|v| u64::try_from(&v.linf_norm()).expect("bounded shells"))
                    .max()
                    .expect("nonempty");
                linf_bound = linf_bound.max(largest);
                pool.extend(cuts);
                continue;
            }
            SolveOutcome::Optimal(solution) => {
                lp_pivots += solution.pivots;
                // Adding constraints can only push the minimum up.
                if let Some(prev) = &last_objective {
                    if solution.objective_value < *prev {
                        return Err(Error::Internal(
                            "LP objective decreased after adding constraints".into(),
                        ));
                    }
                }
                last_objective = Some(solution.objective_value.clone());
                let mut point = unsvec(&solution.point, n)?;
                best_point = Some(point.clone());

                let sep_cfg = SeparationConfig::new(linf_bound, VIOLATIONS_PER_ROUND)?;
                let violations = find_violations(&point, &sep_cfg);
                if !violations.is_empty() {
                    // Constraint management: once the pool outgrows the
                    // ambient dimension, keep only rows tight at the
                    // current vertex. The separation oracle re-adds any
                    // dropped row that becomes violated again, and the
                    // round cap bounds the loop, but dropping rows voids
                    // the objective-monotonicity invariant.
                    let d = objective.len();
                    if pool.len() > 3 * d {
                        let before = pool.len();
                        pool.retain(|v| {
                            inner_product(&point, &rank_one(v)).expect("dims match")
                                == Rational::one()
                        });
                        if pool.len() < before {
                            last_objective = None;
                        }
                    }
                    pool.extend(violations);
                    continue;
                }

                // Separation-clean vertex: extract and solve, following
                // the separating-hyperplane argument when membership fails.
                loop {
                    rounds += 1;
                    if rounds > cfg.max_rounds {
                        return Ok(FactorizeOutcome::BoundExceeded {
                            final_linf_bound: linf_bound,
                            best_point: Some(point),
                        });
                    }
                    let active: Vec<LatticeVector> = pool
                        .iter()
                        .filter(|v| {
                            inner_product(&point, &rank_one(v)).expect("dims match")
                                == Rational::one()
                        })
                        .cloned()
                        .collect();
                    let generators: Vec<Vec<Rational>> =
                        active.iter().map(|v| svec(&rank_one(v))).collect();
                    match cone_membership(&svec(a), &generators)? {
                        ConeMembership::InCone(mu) => {
                            let (atoms, _) = caratheodory_reduce(&active, &mu, a)?;
                            let alphas = solve_coefficients(&atoms, a)?;
                            let cert = Certificate {
                                n,
                                atoms: alphas.into_iter().zip(atoms).collect(),
                                meta: CertificateMeta {
                                    lambda,
                                    final_linf_bound: linf_bound,
                                    lp_pivots,
                                    separation_rounds: rounds,
                                },
                            };
                            if cert.atoms.len() > n * (n + 1) / 2 {
                                return Err(Error::Internal(
                                    "certificate exceeds the Caratheodory bound".into(),
                                ));
                            }
                            if let Verdict::Invalid(reason) = verify_certificate(a, &cert) {
                                return Err(Error::Internal(format!(
                                    "certificate failed independent verification: {reason}"
                                )));
                            }
                            return Ok(FactorizeOutcome::Success(cert));
                        }
                        ConeMembership::Separated(witness_coords) => {
                            let witness = unsvec_weighted(&witness_coords, n)?;
                            match farkas_step(&point, &witness, &pool, a)? {
                                Some(moved) => {
                                    // Strict objective decrease, per round.
                                    let old = inner_product(a, &point)?;
                                    let new = inner_product(a, &moved)?;
                                    if new >= old {
                                        return Err(Error::Internal(
                                            "separating step failed to decrease the objective"
                                                .into(),
                                        ));
                                    }
                                    point = moved;
                                    last_objective = None;
                                    let violations = find_violations(&point, &sep_cfg);
                                    if !violations.is_empty() {
                                        pool.extend(violations);
                                        break; // re-solve the LP
                                    }
                                }
                                None => {
                                    // No constraint blocks the witness
                                    // direction: cut it or report it.
                                    let cuts =
                                        negative_directions(&witness, cfg.max_linf_bound);
                                    if cuts.is_empty() {
                                        return Ok(FactorizeOutcome::NotInteriorSuspected {
                                            witness,
                                        });
                                    }
                                    let largest = cuts
                                        .iter()
                                        .map(|v| {
                                            u64::try_from(&v.linf_norm())
                                                .expect("bounded shells")
                                        })
                                        .max()
                                        .expect("nonempty");
                                    linf_bound = linf_bound.max(largest);
                                    pool.extend(cuts);
                                    break; // re-solve the LP
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Largest exact step `mu` keeping `point + mu * witness` feasible for
/// every pooled constraint and the lambda cap; `None` when no constraint
/// blocks the direction.
fn farkas_step(
    point: &SymMatrix,
    witness: &SymMatrix,
    pool: &[LatticeVector],
    a: &SymMatrix,
) -> Result<Option<SymMatrix>> {
    let mut best: Option<Rational> = None;
    for v in pool {
        let atom = rank_one(v);
        let rate = inner_product(witness, &atom)?;
        if rate.is_negative() {
            let slack = inner_product(point, &atom)? - Rational::one();
            let step = slack / -rate;
            if best.as_ref().map_or(true, |b| step < *b) {
                best = Some(step);
            }
        }
    }
    // <A, witness> < 0, so the lambda cap only gains slack.
    debug_assert!(inner_product(a, witness)?.is_negative());
    match best {
        Some(step) if step.is_positive() => Ok(Some(point.add(&witness.scale(&step))?)),
        Some(_) => Err(Error::Internal(
            "zero-length separating step; the vertex was not separation-clean".into(),
        )),
        None => Ok(None),
    }
}

/// Shrink a conic combination reproducing `A` onto linearly independent
/// atoms, keeping the sum exact at every step.
pub fn caratheodory_reduce(
    atoms: &[LatticeVector],
    coefficients: &[Rational],
    a: &SymMatrix,
) -> Result<(Vec<LatticeVector>, Vec<Rational>)> {
    if atoms.len() != coefficients.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} atoms with {} coefficients",
            atoms.len(),
            coefficients.len()
        )));
    }
    if coefficients.iter().any(Rational::is_negative) {
        return Err(Error::InvalidArgument(
            "conic coefficients must be nonnegative".into(),
        ));
    }
    let mut recombined = SymMatrix::zero(a.dim());
    for (v, mu) in atoms.iter().zip(coefficients) {
        recombined = recombined.add(&rank_one(v).scale(mu))?;
    }
    if recombined != *a {
        return Err(Error::InvalidArgument(
            "initial combination does not reproduce the target matrix".into(),
        ));
    }

    let mut support: Vec<usize> = (0..atoms.len())
        .filter(|&i| coefficients[i].is_positive())
        .collect();
    let mut mu: Vec<Rational> = coefficients.to_vec();

    loop {
        let vectors: Vec<Vec<Rational>> = support
            .iter()
            .map(|&i| svec(&rank_one(&atoms[i])))
            .collect();
        let Some(mut beta) = dependency(&vectors) else {
            break;
        };
        if !beta.iter().any(|b| b.is_positive()) {
            for b in &mut beta {
                *b = -b.clone();
            }
        }
        // Largest step keeping all coefficients nonnegative; at least one
        // hits zero.
        let step = support
            .iter()
            .zip(&beta)
            .filter(|(_, b)| b.is_positive())
            .map(|(&i, b)| &mu[i] / b)
            .min()
            .expect("some positive dependency coefficient");
        for (&i, b) in support.iter().zip(&beta) {
            let delta = &step * b;
            mu[i] = &mu[i] - &delta;
            debug_assert!(!mu[i].is_negative());
        }
        support.retain(|&i| mu[i].is_positive());
    }

    let kept_atoms: Vec<LatticeVector> = support.iter().map(|&i| atoms[i].clone()).collect();
    let kept_mu: Vec<Rational> = support.iter().map(|&i| mu[i].clone()).collect();
    Ok((kept_atoms, kept_mu))
}

/// The unique rational coefficients expressing `A` over independent atoms.
pub fn solve_coefficients(atoms: &[LatticeVector], a: &SymMatrix) -> Result<Vec<Rational>> {
    let columns: Vec<Vec<Rational>> = atoms.iter().map(|v| svec(&rank_one(v))).collect();
    let dim = a.dim() * (a.dim() + 1) / 2;
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    match solve_linear_system(&rows, &svec(a))? {
        LinearSolve::Unique(alphas) => {
            if alphas.iter().any(Rational::is_negative) {
                return Err(Error::Internal(
                    "negative coefficient after established cone membership".into(),
                ));
            }
            Ok(alphas)
        }
        LinearSolve::NoSolution => Err(Error::Internal(
            "target left the span of the reduced atoms".into(),
        )),
        LinearSolve::Underdetermined => Err(Error::Internal(
            "reduced atoms are not linearly independent".into(),
        )),
    }
}
