use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, SolverStatus, SupportedConeT,
};

use super::{
    verify_solution, InfeasibilityEvidence, LinearProgram, LpBackend, LpSolution, LpStatus,
    Relation, SolveError,
};

const NAME: &str = "clarabel";

/// Interior-point backend built on the Clarabel conic solver.
#[derive(Debug, Clone)]
pub struct InteriorPoint {
    pub max_iter: u32,
    /// Internal solver tolerance as a multiple of the requested tolerance.
    pub tighten: f64,
}

impl Default for InteriorPoint {
    fn default() -> Self {
        Self {
            max_iter: 400,
            tighten: 1e-3,
        }
    }
}

#[derive(Clone, Copy)]
enum Origin {
    Row(usize),
    Fixed(usize),
    Upper(usize),
    Lower(usize),
}

impl LpBackend for InteriorPoint {
    fn name(&self) -> &'static str {
        NAME
    }

    fn solve(&self, lp: &LinearProgram, tol: f64) -> Result<LpSolution, SolveError> {
        lp.validate()?;
        let n = lp.num_vars();

        // Equalities first (zero cone), then inequalities (nonnegative cone).
        let mut origins = Vec::new();
        for (i, r) in lp.rows().iter().enumerate() {
            if r.relation == Relation::Eq {
                origins.push(Origin::Row(i));
            }
        }
        for (j, v) in lp.vars().iter().enumerate() {
            if v.lower == v.upper {
                origins.push(Origin::Fixed(j));
            }
        }
        let n_eq = origins.len();
        for (i, r) in lp.rows().iter().enumerate() {
            if r.relation == Relation::Le {
                origins.push(Origin::Row(i));
            }
        }
        for (j, v) in lp.vars().iter().enumerate() {
            if v.lower == v.upper {
                continue;
            }
            if v.upper.is_finite() {
                origins.push(Origin::Upper(j));
            }
            if v.lower.is_finite() {
                origins.push(Origin::Lower(j));
            }
        }
        let m = origins.len();

        let mut ri = Vec::new();
        let mut ci = Vec::new();
        let mut vals = Vec::new();
        let mut b = Vec::with_capacity(m);
        for (k, o) in origins.iter().enumerate() {
            match *o {
                Origin::Row(i) => {
                    let row = &lp.rows()[i];
                    for &(v, a) in &row.coeffs {
                        if a != 0.0 {
                            ri.push(k);
                            ci.push(v.0);
                            vals.push(a);
                        }
                    }
                    b.push(row.rhs);
                }
                Origin::Fixed(j) | Origin::Upper(j) => {
                    ri.push(k);
                    ci.push(j);
                    vals.push(1.0);
                    let v = &lp.vars()[j];
                    b.push(v.upper);
                }
                Origin::Lower(j) => {
                    ri.push(k);
                    ci.push(j);
                    vals.push(-1.0);
                    b.push(-lp.vars()[j].lower);
                }
            }
        }
        let a = CscMatrix::new_from_triplets(m, n, ri, ci, vals);
        let p = CscMatrix::<f64>::zeros((n, n));
        let cones = [
            SupportedConeT::ZeroConeT(n_eq),
            SupportedConeT::NonnegativeConeT(m - n_eq),
        ];
        let inner = (tol * self.tighten).max(1e-12);
        let settings = DefaultSettingsBuilder::default()
            .verbose(false)
            .max_iter(self.max_iter)
            .tol_feas(inner)
            .tol_gap_abs(inner)
            .tol_gap_rel(inner)
            .presolve_enable(false)
            .build()
            .map_err(|e| backend_err(format!("settings: {e:?}")))?;
        let mut solver = DefaultSolver::new(&p, lp.objective(), &a, &b, &cones, settings)
            .map_err(|e| backend_err(format!("setup: {e:?}")))?;
        solver.solve();
        let sol = &solver.solution;
        let iterations = sol.iterations;
        log::debug!(
            "clarabel: {:?} after {iterations} iterations, {:.2} s ({n} vars, {m} cone rows)",
            sol.status,
            sol.solve_time
        );

        match sol.status {
            SolverStatus::Solved | SolverStatus::AlmostSolved => {
                let mut x = sol.x.clone();
                for (xj, v) in x.iter_mut().zip(lp.vars()) {
                    *xj = xj.clamp(v.lower, v.upper);
                }
                let mut duals = vec![0.0; lp.num_rows()];
                for (k, o) in origins.iter().enumerate() {
                    if let Origin::Row(i) = *o {
                        duals[i] = -sol.z[k];
                    }
                }
                let out = LpSolution {
                    status: LpStatus::Optimal,
                    objective: lp.evaluate(&x),
                    primal: x,
                    duals: Some(duals),
                    evidence: None,
                    backend: NAME.into(),
                    iterations,
                };
                if sol.status == SolverStatus::AlmostSolved && !verify_solution(lp, &out, tol).passed() {
                    let mut failed = out;
                    failed.status = LpStatus::NumericalFailure;
                    return Ok(failed);
                }
                Ok(out)
            }
            SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
                let mut rows = vec![0.0; lp.num_rows()];
                let mut lower = vec![0.0; n];
                let mut upper = vec![0.0; n];
                for (k, o) in origins.iter().enumerate() {
                    let z = sol.z[k];
                    match *o {
                        Origin::Row(i) => rows[i] = -z,
                        Origin::Upper(j) => upper[j] += z.max(0.0),
                        Origin::Lower(j) => lower[j] += z.max(0.0),
                        Origin::Fixed(j) => {
                            if z >= 0.0 {
                                upper[j] += z;
                            } else {
                                lower[j] -= z;
                            }
                        }
                    }
                }
                let mut out = LpSolution::non_optimal(LpStatus::Infeasible, n, NAME);
                out.evidence = Some(InfeasibilityEvidence::Farkas { rows, lower, upper });
                out.iterations = iterations;
                Ok(out)
            }
            SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => {
                Ok(LpSolution::non_optimal(LpStatus::Unbounded, n, NAME))
            }
            _ => {
                let mut out = LpSolution::non_optimal(LpStatus::NumericalFailure, n, NAME);
                out.iterations = iterations;
                Ok(out)
            }
        }
    }
}

fn backend_err(message: String) -> SolveError {
    SolveError::Backend {
        backend: NAME.into(),
        message,
    }
}
