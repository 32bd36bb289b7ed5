//! Exact rational simplex.
//!
//! The solver works on inequality-form programs `min c'y, Gy >= h` with
//! free variables, converted internally to standard form (split variables
//! plus slacks) and solved with a dense two-phase tableau. Pivoting uses
//! Bland's least-index rule, so termination is guaranteed and results are
//! deterministic for a given constraint order. Artificial columns are kept
//! in the tableau after phase I: they hold the running basis inverse, from
//! which exact dual multipliers and Farkas certificates are read off.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace_vector, EchelonBasis};
use crate::matrix::{dot, Rational};

const PIVOT_LIMIT: usize = 1_000_000;

/// `min c'y` subject to `g'y >= h` for each constraint row.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<(Vec<Rational>, Rational)>,
    dim: usize,
}

impl LinearProgram {
    pub fn new(
        objective: Vec<Rational>,
        constraints: Vec<(Vec<Rational>, Rational)>,
    ) -> Result<Self> {
        let dim = objective.len();
        for (i, (g, _)) in constraints.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "constraint {i} has {} coefficients, expected {dim}",
                    g.len()
                )));
            }
        }
        let mut seen = HashSet::new();
        for (g, h) in &constraints {
            if !seen.insert((g.clone(), h.clone())) {
                return Err(Error::InvalidArgument(
                    "duplicate constraint rejected".into(),
                ));
            }
        }
        Ok(Self {
            objective,
            constraints,
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[(Vec<Rational>, Rational)] {
        &self.constraints
    }
}

/// An LP vertex in exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSolution {
    /// The optimal point `y*`.
    pub point: Vec<Rational>,
    /// Indices of constraints satisfied with exact equality at `y*`.
    pub active_set: Vec<usize>,
    /// `c'y*`.
    pub objective_value: Rational,
    /// Number of simplex pivots spent.
    pub pivots: usize,
}

#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Optimal(BasicSolution),
    Infeasible,
    /// Feasible but the objective decreases without bound along `ray`
    /// (which satisfies `G ray >= 0` and `c' ray < 0`).
    Unbounded {
        ray: Vec<Rational>,
    },
}

#[derive(Debug, Clone)]
pub enum ConeMembership {
    /// Nonnegative coefficients expressing the target over the generators.
    InCone(Vec<Rational>),
    /// Exact Farkas witness `C` with `<C, target> < 0` and
    /// `<C, gen_i> >= 0` for every generator.
    Separated(Vec<Rational>),
}

// ---------------------------------------------------------------------------
// Standard-form core: min c'x, Ax = b, x >= 0.
// ---------------------------------------------------------------------------

enum StandardOutcome {
    Optimal {
        x: Vec<Rational>,
        objective: Rational,
        /// Dual multipliers with respect to the input rows.
        duals: Vec<Rational>,
        pivots: usize,
    },
    Infeasible {
        /// `w` with `w'A_j <= 0` for every column and `w'b > 0`.
        farkas: Vec<Rational>,
    },
    Unbounded {
        /// Recession direction: `ray >= 0`, `A ray = 0`, `c' ray < 0`.
        ray: Vec<Rational>,
    },
}

struct Tableau {
    /// Each row has width `ncols + 1`; the right-hand side is last.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    nreal: usize,
    ncols: usize,
    pivots: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded { entering: usize },
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        debug_assert!(!p.is_zero());
        for e in &mut self.rows[r] {
            *e = &*e / &p;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for c in 0..=self.ncols {
                let delta = &f * &self.rows[r][c];
                self.rows[i][c] = &self.rows[i][c] - &delta;
            }
        }
        self.basis[r] = j;
        self.pivots += 1;
    }

    fn reduced_costs(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut r = costs.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if costs[b].is_zero() {
                continue;
            }
            let cb = costs[b].clone();
            for (rc, e) in r.iter_mut().zip(row) {
                let delta = &cb * e;
                *rc = &*rc - &delta;
            }
        }
        r
    }

    /// Run Bland simplex with the given costs. `enterable` limits which
    /// columns may enter the basis.
    fn run(&mut self, costs: &[Rational], enterable: impl Fn(usize) -> bool) -> Result<PhaseEnd> {
        let mut reduced = self.reduced_costs(costs);
        loop {
            if self.pivots > PIVOT_LIMIT {
                return Err(Error::PivotLimit(self.pivots));
            }
            let entering = (0..self.ncols).find(|&j| {
                enterable(j) && !self.basis.contains(&j) && reduced[j].is_negative()
            });
            let Some(j) = entering else {
                return Ok(PhaseEnd::Optimal);
            };
            // Ratio test; ties broken by least basis-variable index (Bland).
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][j];
                let replace = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if replace {
                    leaving = Some((i, ratio));
                }
            }
            let Some((r, _)) = leaving else {
                return Ok(PhaseEnd::Unbounded { entering: j });
            };
            self.pivot(r, j);
            // Maintain the reduced-cost row incrementally.
            let f = reduced[j].clone();
            for (rc, e) in reduced.iter_mut().zip(&self.rows[r][..self.ncols]) {
                let delta = &f * e;
                *rc = &*rc - &delta;
            }
        }
    }

    /// Dual multipliers `w = c_B' B^{-1}`, read from the artificial block
    /// (columns `nreal..ncols`), which holds the basis inverse.
    fn duals(&self, costs: &[Rational]) -> Vec<Rational> {
        let m = self.ncols - self.nreal;
        let mut w = vec![Rational::zero(); m];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if costs[b].is_zero() {
                continue;
            }
            for (wi, e) in w.iter_mut().zip(&row[self.nreal..self.ncols]) {
                *wi += &costs[b] * e;
            }
        }
        w
    }
}

/// Solve `min c'x, Ax = b, x >= 0` with two-phase Bland simplex.
fn solve_standard(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<StandardOutcome> {
    let m = a.len();
    let n = c.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "standard-form row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
    }

    // Normalize b >= 0; remember the sign applied to each input row.
    let mut signs = vec![false; m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rational> = a[i].clone();
        let mut rhs = b[i].clone();
        if rhs.is_negative() {
            signs[i] = true;
            for e in &mut row {
                *e = -e.clone();
            }
            rhs = -rhs;
        }
        // Append the artificial block (identity) and the rhs.
        let mut full = row;
        full.extend((0..m).map(|k| {
            if k == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        full.push(rhs);
        rows.push(full);
    }

    let ncols = n + m;
    let mut t = Tableau {
        rows,
        basis: (n..ncols).collect(),
        nreal: n,
        ncols,
        pivots: 0,
    };

    // Phase I: minimize the sum of artificials.
    let mut phase1_costs = vec![Rational::zero(); ncols];
    for cost in &mut phase1_costs[n..] {
        *cost = Rational::one();
    }
    match t.run(&phase1_costs, |_| true)? {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded { .. } => {
            return Err(Error::Internal(
                "phase-I objective is bounded below; unbounded report is a bug".into(),
            ));
        }
    }
    let phase1_value: Rational = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &b)| b >= n)
        .map(|(row, _)| row[ncols].clone())
        .sum();
    if phase1_value.is_positive() {
        let w_int = t.duals(&phase1_costs);
        let farkas: Vec<Rational> = w_int
            .into_iter()
            .zip(&signs)
            .map(|(w, &neg)| if neg { -w } else { w })
            .collect();
        return Ok(StandardOutcome::Infeasible { farkas });
    }

    // Drive remaining artificials out of the basis; rows whose real part
    // vanished are redundant and get dropped.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] < n {
            r += 1;
            continue;
        }
        let pivot_col = (0..n).find(|&j| !t.basis.contains(&j) && !t.rows[r][j].is_zero());
        match pivot_col {
            Some(j) => {
                t.pivot(r, j);
                r += 1;
            }
            None => {
                t.rows.remove(r);
                t.basis.remove(r);
            }
        }
    }

    // Phase II on the real objective; artificials may not re-enter.
    let mut phase2_costs = c.to_vec();
    phase2_costs.extend(std::iter::repeat(Rational::zero()).take(m));
    let end = t.run(&phase2_costs, |j| j < n)?;

    match end {
        PhaseEnd::Unbounded { entering } => {
            let mut ray = vec![Rational::zero(); n];
            ray[entering] = Rational::one();
            for (row, &b) in t.rows.iter().zip(&t.basis) {
                if b < n {
                    ray[b] = -row[entering].clone();
                }
            }
            debug_assert!(ray.iter().all(|x| !x.is_negative()));
            Ok(StandardOutcome::Unbounded { ray })
        }
        PhaseEnd::Optimal => {
            let mut x = vec![Rational::zero(); n];
            for (row, &b) in t.rows.iter().zip(&t.basis) {
                if b < n {
                    x[b] = row[ncols].clone();
                }
            }
            let objective = dot(c, &x)?;
            let w_int = t.duals(&phase2_costs);
            let duals: Vec<Rational> = w_int
                .into_iter()
                .zip(&signs)
                .map(|(w, &neg)| if neg { -w } else { w })
                .collect();
            Ok(StandardOutcome::Optimal {
                x,
                objective,
                duals,
                pivots: t.pivots,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Inequality-form interface.
// ---------------------------------------------------------------------------

/// Solve `min c'y, Gy >= h` to a basic (vertex) optimum.
pub fn solve_min(lp: &LinearProgram) -> Result<SolveOutcome> {
    let d = lp.dim();
    let m = lp.constraints().len();
    if d == 0 || m <= d {
        return solve_min_primal(lp);
    }

    // Row-count asymmetry: the dual `min -h'u, G'u = c, u >= 0` has d
    // equality rows against the primal's m, so solve that instead and
    // read the primal vertex off the dual multipliers.
    let a: Vec<Vec<Rational>> = (0..d)
        .map(|j| lp.constraints().iter().map(|(g, _)| g[j].clone()).collect())
        .collect();
    let b = lp.objective().to_vec();
    let c: Vec<Rational> = lp.constraints().iter().map(|(_, h)| -h.clone()).collect();

    match solve_standard(&a, &b, &c)? {
        // Dual infeasible: the primal is unbounded or empty. Its Farkas
        // vector z satisfies Gz >= 0, c'z < 0, which is an improving ray
        // whenever the primal is nonempty; emptiness itself is decided by
        // `max h'u, G'u = 0, u >= 0` being unbounded (Farkas again), which
        // is another d-row problem.
        StandardOutcome::Infeasible { farkas } => {
            let ray: Vec<Rational> = farkas.into_iter().map(|f| -f).collect();
            for (g, _) in lp.constraints() {
                if dot(g, &ray)?.is_negative() {
                    return Err(Error::Internal("invalid recession direction".into()));
                }
            }
            if !dot(lp.objective(), &ray)?.is_negative() {
                return Err(Error::Internal("recession direction fails to improve".into()));
            }
            let zero = vec![Rational::zero(); d];
            match solve_standard(&a, &zero, &c)? {
                StandardOutcome::Optimal { .. } => Ok(SolveOutcome::Unbounded { ray }),
                StandardOutcome::Unbounded { .. } => Ok(SolveOutcome::Infeasible),
                StandardOutcome::Infeasible { .. } => Err(Error::Internal(
                    "homogeneous system cannot be infeasible".into(),
                )),
            }
        }
        // h'u increases without bound, so the primal is empty.
        StandardOutcome::Unbounded { .. } => Ok(SolveOutcome::Infeasible),
        StandardOutcome::Optimal {
            x: u,
            objective,
            duals,
            pivots,
        } => {
            let value = -objective;
            let mut y: Vec<Rational> = duals.into_iter().map(|w| -w).collect();

            // Certify optimality: u is primal-feasible for the dual and y
            // is feasible with matching objective, so both are optimal.
            let mut combo = vec![Rational::zero(); d];
            let mut dual_obj = Rational::zero();
            for ((g, h), ui) in lp.constraints().iter().zip(&u) {
                if ui.is_negative() {
                    return Err(Error::Internal("negative dual multiplier".into()));
                }
                for (acc, gj) in combo.iter_mut().zip(g) {
                    *acc += ui * gj;
                }
                dual_obj += ui * h;
            }
            if combo != lp.objective() || dual_obj != value {
                return Err(Error::Internal(
                    "dual multipliers fail to reproduce the objective".into(),
                ));
            }
            for (g, h) in lp.constraints() {
                if dot(g, &y)? < *h {
                    return Err(Error::Internal(
                        "dual-derived point violates a primal constraint".into(),
                    ));
                }
            }
            if dot(lp.objective(), &y)? != value {
                return Err(Error::Internal(
                    "dual-derived point misses the certified objective".into(),
                ));
            }

            purify_to_vertex(lp, &mut y)?;

            let active_set: Vec<usize> = lp
                .constraints()
                .iter()
                .enumerate()
                .filter(|(_, (g, h))| dot(g, &y).expect("validated dims") == *h)
                .map(|(i, _)| i)
                .collect();
            if dot(lp.objective(), &y)? != value {
                return Err(Error::Internal("purification changed the objective".into()));
            }
            Ok(SolveOutcome::Optimal(BasicSolution {
                point: y,
                active_set,
                objective_value: value,
                pivots,
            }))
        }
    }
}

fn solve_min_primal(lp: &LinearProgram) -> Result<SolveOutcome> {
    let d = lp.dim();
    let m = lp.constraints().len();

    // Standard form: x = (y+, y-, s), row i: g y+ - g y- - s_i = h_i.
    let n = 2 * d + m;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, (g, h)) in lp.constraints().iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        row.extend(g.iter().cloned());
        row.extend(g.iter().map(|x| -x.clone()));
        row.extend((0..m).map(|k| {
            if k == i {
                -Rational::one()
            } else {
                Rational::zero()
            }
        }));
        a.push(row);
        b.push(h.clone());
    }
    let mut c = Vec::with_capacity(n);
    c.extend(lp.objective().iter().cloned());
    c.extend(lp.objective().iter().map(|x| -x.clone()));
    c.extend(std::iter::repeat(Rational::zero()).take(m));

    match solve_standard(&a, &b, &c)? {
        StandardOutcome::Infeasible { .. } => Ok(SolveOutcome::Infeasible),
        StandardOutcome::Unbounded { ray } => {
            let z: Vec<Rational> = (0..d).map(|j| &ray[j] - &ray[d + j]).collect();
            for (g, _) in lp.constraints() {
                debug_assert!(!dot(g, &z)?.is_negative());
            }
            debug_assert!(dot(lp.objective(), &z)?.is_negative());
            Ok(SolveOutcome::Unbounded { ray: z })
        }
        StandardOutcome::Optimal {
            x,
            objective,
            duals,
            pivots,
        } => {
            let mut y: Vec<Rational> = (0..d).map(|j| &x[j] - &x[d + j]).collect();

            // Weak-duality check: the reconstructed multipliers are
            // nonnegative, satisfy G'u = c, and reproduce the objective.
            let mut combo = vec![Rational::zero(); d];
            let mut dual_obj = Rational::zero();
            for ((g, h), u) in lp.constraints().iter().zip(&duals) {
                if u.is_negative() {
                    return Err(Error::Internal("negative dual multiplier".into()));
                }
                for (acc, gj) in combo.iter_mut().zip(g) {
                    *acc += u * gj;
                }
                dual_obj += u * h;
            }
            if combo != lp.objective() || dual_obj != objective {
                return Err(Error::Internal(
                    "dual multipliers fail to reproduce the objective".into(),
                ));
            }

            purify_to_vertex(lp, &mut y)?;

            let active_set: Vec<usize> = lp
                .constraints()
                .iter()
                .enumerate()
                .filter(|(_, (g, h))| dot(g, &y).expect("validated dims") == *h)
                .map(|(i, _)| i)
                .collect();
            let value = dot(lp.objective(), &y)?;
            if value != objective {
                return Err(Error::Internal("purification changed the objective".into()));
            }
            Ok(SolveOutcome::Optimal(BasicSolution {
                point: y,
                active_set,
                objective_value: objective,
                pivots,
            }))
        }
    }
}

/// Move an optimal point along objective-neutral directions until the
/// active constraints have full rank (a vertex).
fn purify_to_vertex(lp: &LinearProgram, y: &mut Vec<Rational>) -> Result<()> {
    let d = lp.dim();
    loop {
        let mut active_rows: Vec<Vec<Rational>> = Vec::new();
        let mut basis = EchelonBasis::new();
        let mut slacks: Vec<(usize, Rational)> = Vec::new();
        for (i, (g, h)) in lp.constraints().iter().enumerate() {
            let slack = dot(g, y)? - h;
            if slack.is_zero() {
                if basis.try_insert(g) {
                    active_rows.push(g.clone());
                }
            } else {
                slacks.push((i, slack));
            }
        }
        if basis.rank() == d {
            return Ok(());
        }
        // Any null direction of the active rows is objective-neutral at an
        // optimum; search the null space of (active rows, c).
        let mut stacked = active_rows.clone();
        stacked.push(lp.objective().to_vec());
        let Some(z) = nullspace_vector(&stacked, d) else {
            return Err(Error::Internal(
                "optimal point admits an improving null direction".into(),
            ));
        };

        let mut moved = false;
        for dir in [z.clone(), z.iter().map(|x| -x.clone()).collect::<Vec<_>>()] {
            let mut best: Option<Rational> = None;
            for (i, slack) in &slacks {
                let rate = dot(&lp.constraints()[*i].0, &dir)?;
                if rate.is_negative() {
                    let t = slack / &(-rate);
                    if best.as_ref().map_or(true, |b| t < *b) {
                        best = Some(t);
                    }
                }
            }
            if let Some(t) = best {
                for (yj, zj) in y.iter_mut().zip(&dir) {
                    *yj += &t * zj;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            return Err(Error::Internal(
                "feasible region contains a line; no vertex exists".into(),
            ));
        }
    }
}

/// Decide `target in cone{generators}` by a phase-I LP; on failure an
/// exact Farkas witness is returned.
pub fn cone_membership(
    target: &[Rational],
    generators: &[Vec<Rational>],
) -> Result<ConeMembership> {
    let dim = target.len();
    for (i, g) in generators.iter().enumerate() {
        if g.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} has length {}, expected {dim}",
                g.len()
            )));
        }
    }
    // Rows of the equality system: sum_i mu_i gen_i = target.
    let a: Vec<Vec<Rational>> = (0..dim)
        .map(|r| generators.iter().map(|g| g[r].clone()).collect())
        .collect();
    let c = vec![Rational::zero(); generators.len()];

    match solve_standard(&a, target, &c)? {
        StandardOutcome::Unbounded { .. } => Err(Error::Internal(
            "zero objective cannot be unbounded".into(),
        )),
        StandardOutcome::Optimal { x, .. } => {
            // Soundness check before returning.
            for (r, t) in target.iter().enumerate() {
                let s: Rational = generators.iter().zip(&x).map(|(g, mu)| &g[r] * mu).sum();
                if s != *t {
                    return Err(Error::Internal("cone coefficients fail to reproduce the target".into()));
                }
            }
            if x.iter().any(Rational::is_negative) {
                return Err(Error::Internal("negative cone coefficient".into()));
            }
            Ok(ConeMembership::InCone(x))
        }
        StandardOutcome::Infeasible { farkas, .. } => {
            let witness: Vec<Rational> = farkas.iter().map(|w| -w.clone()).collect();
            if !dot(&witness, target)?.is_negative() {
                return Err(Error::Internal("Farkas witness fails <C, target> < 0".into()));
            }
            for g in generators {
                if dot(&witness, g)?.is_negative() {
                    return Err(Error::Internal("Farkas witness fails <C, gen> >= 0".into()));
                }
            }
            Ok(ConeMembership::Separated(witness))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{rank_one, rat, rint, svec, LatticeVector, SymMatrix};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rint(x)).collect()
    }

    fn lp(c: &[i64], cons: &[(&[i64], i64)]) -> LinearProgram {
        LinearProgram::new(
            v(c),
            cons.iter().map(|(g, h)| (v(g), rint(*h))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn box_corner() {
        let p = lp(&[1, 1], &[(&[1, 0], 1), (&[0, 1], 1)]);
        let SolveOutcome::Optimal(sol) = solve_min(&p).unwrap() else {
            panic!("expected optimal");
        };
        assert_eq!(sol.point, v(&[1, 1]));
        assert_eq!(sol.objective_value, rint(2));
        assert_eq!(sol.active_set, vec![0, 1]);
    }

    #[test]
    fn unbounded_ray() {
        let p = lp(&[-1], &[(&[1], 0)]);
        let SolveOutcome::Unbounded { ray } = solve_min(&p).unwrap() else {
            panic!("expected unbounded");
        };
        assert!(ray[0].is_positive());
    }

    #[test]
    fn infeasible_pair() {
        // y >= 1 and -y >= 0 cannot both hold.
        let p = lp(&[1], &[(&[1], 1), (&[-1], 0)]);
        assert!(matches!(solve_min(&p).unwrap(), SolveOutcome::Infeasible));
    }

    #[test]
    fn duplicate_constraint_rejected() {
        let r = LinearProgram::new(v(&[1]), vec![(v(&[1]), rint(1)), (v(&[1]), rint(1))]);
        assert!(r.is_err());
    }

    #[test]
    fn trace_lp_over_small_cone_constraints() {
        // minimize <I2, B> over <B, vv^T> >= 1 for v in {e1, e2, (1,1)}
        // and <A, B> <= 4 with A = [[2,1],[1,2]], in svec coordinates.
        use crate::matrix::svec_weighted;
        let a = SymMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap();
        let atoms = [
            LatticeVector::unit(2, 0),
            LatticeVector::unit(2, 1),
            LatticeVector::from_i64(&[1, 1]).unwrap(),
        ];
        let mut cons: Vec<(Vec<Rational>, Rational)> = atoms
            .iter()
            .map(|atom| (svec_weighted(&rank_one(atom)), rint(1)))
            .collect();
        cons.push((
            svec_weighted(&a).iter().map(|x| -x.clone()).collect(),
            rint(-4),
        ));
        let p = LinearProgram::new(svec_weighted(&SymMatrix::identity(2)), cons).unwrap();
        let SolveOutcome::Optimal(sol) = solve_min(&p).unwrap() else {
            panic!("expected optimal");
        };
        // Cross-check by brute-force vertex enumeration.
        let best = brute_force_optimum(&p).expect("bounded");
        assert_eq!(sol.objective_value, best);
    }

    /// Enumerate all d-subsets of constraints, solve each square system,
    /// filter feasible, take the minimum objective.
    fn brute_force_optimum(p: &LinearProgram) -> Option<Rational> {
        use crate::linalg::{solve_linear_system, LinearSolve};
        let d = p.dim();
        let m = p.constraints().len();
        let mut best: Option<Rational> = None;
        let mut indices = (0..d).collect::<Vec<_>>();
        loop {
            let rows: Vec<Vec<Rational>> = indices
                .iter()
                .map(|&i| p.constraints()[i].0.clone())
                .collect();
            let rhs: Vec<Rational> = indices
                .iter()
                .map(|&i| p.constraints()[i].1.clone())
                .collect();
            if let LinearSolve::Unique(y) = solve_linear_system(&rows, &rhs).unwrap() {
                let feasible = p
                    .constraints()
                    .iter()
                    .all(|(g, h)| dot(g, &y).unwrap() >= *h);
                if feasible {
                    let val = dot(p.objective(), &y).unwrap();
                    if best.as_ref().map_or(true, |b| val < *b) {
                        best = Some(val);
                    }
                }
            }
            // next combination
            let mut i = d;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if indices[i] != i + m - d {
                    indices[i] += 1;
                    for j in i + 1..d {
                        indices[j] = indices[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn cone_membership_in_cone() {
        let a = SymMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap();
        let gens: Vec<Vec<Rational>> = [
            LatticeVector::unit(2, 0),
            LatticeVector::unit(2, 1),
            LatticeVector::from_i64(&[1, 1]).unwrap(),
        ]
        .iter()
        .map(|atom| svec(&rank_one(atom)))
        .collect();
        let ConeMembership::InCone(mu) = cone_membership(&svec(&a), &gens).unwrap() else {
            panic!("expected InCone");
        };
        assert_eq!(mu, v(&[1, 1, 1]));
    }

    #[test]
    fn cone_membership_separated() {
        let neg_i2 = SymMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]]).unwrap();
        let gens = vec![svec(&SymMatrix::identity(2))];
        let ConeMembership::Separated(c) = cone_membership(&svec(&neg_i2), &gens).unwrap()
        else {
            panic!("expected Separated");
        };
        assert!(dot(&c, &svec(&neg_i2)).unwrap().is_negative());
        assert!(!dot(&c, &gens[0]).unwrap().is_negative());
    }

    #[test]
    fn cone_membership_zero_target() {
        let gens = vec![v(&[1, 0]), v(&[0, 1])];
        let ConeMembership::InCone(mu) = cone_membership(&v(&[0, 0]), &gens).unwrap() else {
            panic!("expected InCone");
        };
        assert!(mu.iter().all(Rational::is_zero));
    }

    #[test]
    fn determinism_same_active_set() {
        let p = lp(
            &[1, 2],
            &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1), (&[2, 1], 1)],
        );
        let SolveOutcome::Optimal(a) = solve_min(&p).unwrap() else {
            panic!()
        };
        let SolveOutcome::Optimal(b) = solve_min(&p).unwrap() else {
            panic!()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn fractional_optimum() {
        // min y1 + y2 s.t. 2y1 + y2 >= 3, y1 + 3y2 >= 4 -> intersection (1, 1).
        let p = lp(&[1, 1], &[(&[2, 1], 3), (&[1, 3], 4)]);
        let SolveOutcome::Optimal(sol) = solve_min(&p).unwrap() else {
            panic!()
        };
        assert_eq!(sol.objective_value, rint(2));
        assert_eq!(sol.point, v(&[1, 1]));
        let _ = rat(1, 2);
    }
}
