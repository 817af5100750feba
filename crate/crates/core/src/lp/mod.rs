//! Sparse linear programs, solver backends and independent verification.
//!
//! Problems are always minimisation. Rows are `a·x ≤ b` or `a·x = b`; simple
//! bounds live on the variables. Dual values follow one convention for every
//! backend: with reduced costs `d = c − Aᵀy`, an optimal point has `y ≤ 0` on
//! inequality rows, `d ≥ 0` at a lower bound, `d ≤ 0` at an upper bound and
//! `d = 0` for variables strictly inside their bounds.

mod clarabel_backend;
pub mod dump;
mod simplex;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use clarabel_backend::InteriorPoint;
pub use simplex::Simplex;
pub use verify::{verify_infeasibility, verify_solution, Diagnostics, InfeasibilityCheck};

/// Default relative tolerance for solving and verification.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Handle to a registered variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<(VarId, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(v, a)| a * x[v.0]).sum()
    }

    /// Amount by which `x` violates this row, never negative.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let r = self.activity(x) - self.rhs;
        match self.relation {
            Relation::Le => r.max(0.0),
            Relation::Eq => r.abs(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("variable {name}: lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds { name: String, lower: f64, upper: f64 },
    #[error("variable {name}: bound is NaN")]
    NanBound { name: String },
    #[error("row {row} references unregistered variable index {index}")]
    UnknownVariable { row: String, index: usize },
    #[error("row {row} has a non-finite coefficient or right-hand side")]
    NonFiniteRow { row: String },
    #[error("objective coefficient of {name} is not finite")]
    NonFiniteObjective { name: String },
}

/// Minimisation LP with a variable registry, sparse rows and a linear objective.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    vars: Vec<Variable>,
    rows: Vec<Constraint>,
    objective: Vec<f64>,
    offset: f64,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, lower: f64, upper: f64, cost: f64) -> VarId {
        self.vars.push(Variable {
            name: name.into(),
            lower,
            upper,
        });
        self.objective.push(cost);
        VarId(self.vars.len() - 1)
    }

    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        coeffs: Vec<(VarId, f64)>,
        relation: Relation,
        rhs: f64,
    ) -> usize {
        self.rows.push(Constraint {
            name: name.into(),
            coeffs,
            relation,
            rhs,
        });
        self.rows.len() - 1
    }

    /// Adds `a·x ≥ b` stored as `−a·x ≤ −b`.
    pub fn add_ge_row(&mut self, name: impl Into<String>, coeffs: Vec<(VarId, f64)>, rhs: f64) -> usize {
        let negated = coeffs.into_iter().map(|(v, a)| (v, -a)).collect();
        self.add_row(name, negated, Relation::Le, -rhs)
    }

    pub fn set_cost(&mut self, var: VarId, cost: f64) {
        self.objective[var.0] = cost;
    }

    pub fn add_cost(&mut self, var: VarId, cost: f64) {
        self.objective[var.0] += cost;
    }

    pub fn set_bounds(&mut self, var: VarId, lower: f64, upper: f64) {
        let v = &mut self.vars[var.0];
        v.lower = lower;
        v.upper = upper;
    }

    pub fn set_offset(&mut self, offset: f64) {
        self.offset = offset;
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name).map(VarId)
    }

    /// Objective value of `x`, including the constant offset.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.offset + self.objective.iter().zip(x).map(|(c, v)| c * v).sum::<f64>()
    }

    /// Copy with every objective coefficient and the offset multiplied by `k`.
    pub fn scaled_objective(&self, k: f64) -> Self {
        let mut out = self.clone();
        out.objective.iter_mut().for_each(|c| *c *= k);
        out.offset *= k;
        out
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (v, c) in self.vars.iter().zip(&self.objective) {
            if v.lower.is_nan() || v.upper.is_nan() {
                return Err(ModelError::NanBound { name: v.name.clone() });
            }
            if v.lower > v.upper {
                return Err(ModelError::InvertedBounds {
                    name: v.name.clone(),
                    lower: v.lower,
                    upper: v.upper,
                });
            }
            if !c.is_finite() {
                return Err(ModelError::NonFiniteObjective { name: v.name.clone() });
            }
        }
        for row in &self.rows {
            if !row.rhs.is_finite() || row.coeffs.iter().any(|&(_, a)| !a.is_finite()) {
                return Err(ModelError::NonFiniteRow { row: row.name.clone() });
            }
            if let Some(&(v, _)) = row.coeffs.iter().find(|(v, _)| v.0 >= self.vars.len()) {
                return Err(ModelError::UnknownVariable {
                    row: row.name.clone(),
                    index: v.0,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    NumericalFailure,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::NumericalFailure => "numerical_failure",
        })
    }
}

/// Proof attached to an infeasible result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InfeasibilityEvidence {
    /// Farkas ray: row multipliers `y` (non-positive on `≤` rows) and bound
    /// multipliers `lower ≥ 0`, `upper ≥ 0` with `Aᵀy + lower − upper = 0`
    /// and `bᵀy + lᵀlower − uᵀupper > 0`.
    Farkas {
        rows: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    /// The simplex phase one terminated without a feasible basis.
    PhaseOne { backend: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    /// Objective including the constant offset.
    pub objective: f64,
    /// Row duals in the module's sign convention, when the backend provides them.
    pub duals: Option<Vec<f64>>,
    pub evidence: Option<InfeasibilityEvidence>,
    pub backend: String,
    pub iterations: u32,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub(crate) fn non_optimal(status: LpStatus, n: usize, backend: &str) -> Self {
        Self {
            status,
            primal: vec![f64::NAN; n],
            objective: f64::NAN,
            duals: None,
            evidence: None,
            backend: backend.to_string(),
            iterations: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{backend} backend failed: {message}")]
    Backend { backend: String, message: String },
}

/// A solver that honours the `solve` contract.
pub trait LpBackend: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, lp: &LinearProgram, tol: f64) -> Result<LpSolution, SolveError>;
}

/// Solves with the default interior-point backend.
pub fn solve(lp: &LinearProgram, tol: f64) -> Result<LpSolution, SolveError> {
    InteriorPoint::default().solve(lp, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn backends() -> Vec<Box<dyn LpBackend>> {
        vec![Box::new(InteriorPoint::default()), Box::new(Simplex)]
    }

    #[test]
    fn min_x_above_three() {
        for b in backends() {
            let mut lp = LinearProgram::new();
            let x = lp.add_var("x", f64::NEG_INFINITY, f64::INFINITY, 1.0);
            lp.add_ge_row("lo", vec![(x, 1.0)], 3.0);
            let sol = b.solve(&lp, DEFAULT_TOL).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal, "{}", b.name());
            assert!((sol.primal[0] - 3.0).abs() < 1e-7, "{}: {}", b.name(), sol.primal[0]);
            let d = verify_solution(&lp, &sol, DEFAULT_TOL);
            assert!(d.passed(), "{}: {d}", b.name());
        }
    }

    #[test]
    fn max_x_below_five() {
        for b in backends() {
            let mut lp = LinearProgram::new();
            let x = lp.add_var("x", 0.0, f64::INFINITY, -1.0);
            lp.add_row("hi", vec![(x, 1.0)], Relation::Le, 5.0);
            let sol = b.solve(&lp, DEFAULT_TOL).unwrap();
            assert!((sol.primal[0] - 5.0).abs() < 1e-7, "{}", b.name());
            assert!((sol.objective + 5.0).abs() < 1e-7);
            assert!(verify_solution(&lp, &sol, DEFAULT_TOL).passed());
        }
    }

    #[test]
    fn infeasible_carries_evidence() {
        for b in backends() {
            let mut lp = LinearProgram::new();
            let x = lp.add_var("x", 0.0, 1.0, 1.0);
            let y = lp.add_var("y", 0.0, 1.0, 1.0);
            lp.add_ge_row("sum", vec![(x, 1.0), (y, 1.0)], 3.0);
            let sol = b.solve(&lp, DEFAULT_TOL).unwrap();
            assert_eq!(sol.status, LpStatus::Infeasible, "{}", b.name());
            let ev = sol.evidence.as_ref().expect("evidence");
            if let InfeasibilityEvidence::Farkas { .. } = ev {
                assert!(verify_infeasibility(&lp, ev, DEFAULT_TOL).passed);
            }
        }
    }

    #[test]
    fn unbounded_is_reported() {
        for b in backends() {
            let mut lp = LinearProgram::new();
            let x = lp.add_var("x", 0.0, f64::INFINITY, -1.0);
            let y = lp.add_var("y", 0.0, f64::INFINITY, 0.0);
            lp.add_row("r", vec![(x, 1.0), (y, -1.0)], Relation::Le, 1.0);
            let sol = b.solve(&lp, DEFAULT_TOL).unwrap();
            assert_eq!(sol.status, LpStatus::Unbounded, "{}", b.name());
        }
    }

    #[test]
    fn fixed_and_free_variables() {
        for b in backends() {
            let mut lp = LinearProgram::new();
            let x = lp.add_var("x", 2.0, 2.0, 1.0);
            let y = lp.add_var("y", f64::NEG_INFINITY, f64::INFINITY, 1.0);
            lp.add_row("link", vec![(x, 1.0), (y, 1.0)], Relation::Eq, 7.0);
            lp.set_offset(10.0);
            let sol = b.solve(&lp, DEFAULT_TOL).unwrap();
            assert!((sol.primal[1] - 5.0).abs() < 1e-7);
            assert!((sol.objective - 17.0).abs() < 1e-6);
            assert!(verify_solution(&lp, &sol, DEFAULT_TOL).passed());
        }
    }

    #[test]
    fn validate_catches_bad_models() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var("x", 1.0, 0.0, 0.0);
        assert!(matches!(lp.validate(), Err(ModelError::InvertedBounds { .. })));
        lp.set_bounds(x, 0.0, 1.0);
        lp.add_row("bad", vec![(VarId(4), 1.0)], Relation::Le, 0.0);
        assert!(matches!(lp.validate(), Err(ModelError::UnknownVariable { .. })));
    }
}
