use microlp::{ComparisonOp, Error as MlpError, OptimizationDirection, Problem, SolveOutcome};

use super::{
    InfeasibilityEvidence, LinearProgram, LpBackend, LpSolution, LpStatus, Relation, SolveError,
};

const NAME: &str = "microlp";

/// Simplex backend on microlp. Returns vertex solutions without duals; suited to small problems.
#[derive(Debug, Clone, Copy, Default)]
pub struct Simplex;

impl LpBackend for Simplex {
    fn name(&self) -> &'static str {
        NAME
    }

    fn solve(&self, lp: &LinearProgram, _tol: f64) -> Result<LpSolution, SolveError> {
        lp.validate()?;
        let n = lp.num_vars();
        let mut p = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = lp
            .vars()
            .iter()
            .zip(lp.objective())
            .map(|(v, &c)| p.add_var(c, (v.lower, v.upper)))
            .collect();
        for row in lp.rows() {
            let expr: Vec<_> = row.coeffs.iter().map(|&(v, a)| (vars[v.0], a)).collect();
            let op = match row.relation {
                Relation::Le => ComparisonOp::Le,
                Relation::Eq => ComparisonOp::Eq,
            };
            p.add_constraint(expr, op, row.rhs);
        }
        match p.solve() {
            Ok(SolveOutcome::Solution(s)) => {
                let x: Vec<f64> = vars.iter().map(|&v| s.var_value(v)).collect();
                Ok(LpSolution {
                    status: LpStatus::Optimal,
                    objective: lp.evaluate(&x),
                    primal: x,
                    duals: None,
                    evidence: None,
                    backend: NAME.into(),
                    iterations: 0,
                })
            }
            Ok(SolveOutcome::Interrupted(_)) => Ok(LpSolution::non_optimal(LpStatus::NumericalFailure, n, NAME)),
            Err(MlpError::Infeasible) => {
                let mut out = LpSolution::non_optimal(LpStatus::Infeasible, n, NAME);
                out.evidence = Some(InfeasibilityEvidence::PhaseOne { backend: NAME.into() });
                Ok(out)
            }
            Err(MlpError::Unbounded) => Ok(LpSolution::non_optimal(LpStatus::Unbounded, n, NAME)),
            Err(e) => Err(SolveError::Backend {
                backend: NAME.into(),
                message: e.to_string(),
            }),
        }
    }
}
