use std::fmt;

use serde::{Deserialize, Serialize};

use super::{InfeasibilityEvidence, LinearProgram, LpSolution, Relation};

/// Residuals of a claimed optimum, all relative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub tol: f64,
    /// Largest `violation / (1 + |rhs|)` over rows and bounds.
    pub max_primal_violation: f64,
    /// Row or variable name where the largest violation occurs.
    pub worst_primal: Option<String>,
    /// Largest sign error in row duals or reduced costs, over `1 + max|c|`.
    pub max_dual_violation: Option<f64>,
    pub worst_dual: Option<String>,
    /// Sum of complementary products over `1 + |objective|`.
    pub complementarity: Option<f64>,
    /// Primal/dual objective difference over `1 + |objective|`.
    pub duality_gap: Option<f64>,
}

impl Diagnostics {
    pub fn passed(&self) -> bool {
        let ok = |v: Option<f64>| v.is_none_or(|x| x <= self.tol);
        self.max_primal_violation <= self.tol
            && ok(self.max_dual_violation)
            && ok(self.complementarity)
            && ok(self.duality_gap)
    }

    pub fn has_duals(&self) -> bool {
        self.max_dual_violation.is_some()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "primal {:.3e} ({})",
            self.max_primal_violation,
            self.worst_primal.as_deref().unwrap_or("-")
        )?;
        if let Some(d) = self.max_dual_violation {
            write!(f, ", dual {:.3e} ({})", d, self.worst_dual.as_deref().unwrap_or("-"))?;
        }
        if let Some(c) = self.complementarity {
            write!(f, ", complementarity {c:.3e}")?;
        }
        if let Some(g) = self.duality_gap {
            write!(f, ", gap {g:.3e}")?;
        }
        write!(f, " [tol {:.1e}: {}]", self.tol, if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Checks a claimed optimum against the problem data without trusting the solver.
pub fn verify_solution(lp: &LinearProgram, sol: &LpSolution, tol: f64) -> Diagnostics {
    let x = &sol.primal;
    let mut worst = 0.0;
    let mut worst_name = None;
    let mut note = |v: f64, name: &str| {
        if v > worst || (v.is_nan() && !worst.is_nan()) {
            worst = if v.is_nan() { f64::INFINITY } else { v };
            worst_name = Some(name.to_string());
        }
    };
    if x.len() != lp.num_vars() {
        note(f64::INFINITY, "primal length");
    } else {
        for row in lp.rows() {
            note(row.violation(x) / (1.0 + row.rhs.abs()), &row.name);
        }
        for (v, &xj) in lp.vars().iter().zip(x) {
            let below = (v.lower - xj).max(0.0) / (1.0 + finite_abs(v.lower));
            let above = (xj - v.upper).max(0.0) / (1.0 + finite_abs(v.upper));
            note(below.max(above), &v.name);
            if !xj.is_finite() {
                note(f64::INFINITY, &v.name);
            }
        }
    }

    let mut diag = Diagnostics {
        tol,
        max_primal_violation: worst,
        worst_primal: worst_name,
        max_dual_violation: None,
        worst_dual: None,
        complementarity: None,
        duality_gap: None,
    };
    let Some(y) = sol.duals.as_ref().filter(|y| y.len() == lp.num_rows() && x.len() == lp.num_vars())
    else {
        return diag;
    };

    let c = lp.objective();
    let c_scale = 1.0 + c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut d = c.to_vec();
    for (row, &yi) in lp.rows().iter().zip(y) {
        for &(v, a) in &row.coeffs {
            d[v.0] -= a * yi;
        }
    }

    let mut dual_worst = 0.0;
    let mut dual_name = None;
    let mut comp = 0.0;
    let mut dual_obj = 0.0;
    for (row, &yi) in lp.rows().iter().zip(y) {
        dual_obj += row.rhs * yi;
        if row.relation == Relation::Le {
            let sign = yi.max(0.0) / c_scale;
            if sign > dual_worst {
                dual_worst = sign;
                dual_name = Some(row.name.clone());
            }
            comp += yi.abs() * (row.rhs - row.activity(x)).max(0.0);
        }
    }
    for ((v, &dj), &xj) in lp.vars().iter().zip(&d).zip(x) {
        let (bound, gap) = if dj >= 0.0 {
            (v.lower, xj - v.lower)
        } else {
            (v.upper, v.upper - xj)
        };
        if bound.is_finite() {
            dual_obj += dj * bound;
            comp += dj.abs() * gap.max(0.0);
        } else {
            let sign = dj.abs() / c_scale;
            if sign > dual_worst {
                dual_worst = sign;
                dual_name = Some(v.name.clone());
            }
        }
    }
    let primal_obj = lp.evaluate(x) - lp.offset();
    let obj_scale = 1.0 + primal_obj.abs();
    diag.max_dual_violation = Some(dual_worst);
    diag.worst_dual = dual_name;
    diag.complementarity = Some(comp / obj_scale);
    diag.duality_gap = Some((primal_obj - dual_obj).abs() / obj_scale);
    diag
}

fn finite_abs(v: f64) -> f64 {
    if v.is_finite() {
        v.abs()
    } else {
        0.0
    }
}

/// Outcome of checking an infeasibility certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfeasibilityCheck {
    /// True when a Farkas ray was supplied and verified.
    pub passed: bool,
    /// Largest `|Aᵀy + lower − upper|` after normalising multipliers to unit max.
    pub residual: f64,
    /// `bᵀy + lᵀlower − uᵀupper` after the same normalisation; must be positive.
    pub margin: f64,
    pub detail: String,
}

/// Verifies a Farkas certificate. Phase-one evidence cannot be checked and does not pass.
pub fn verify_infeasibility(lp: &LinearProgram, evidence: &InfeasibilityEvidence, tol: f64) -> InfeasibilityCheck {
    let (y, lower, upper) = match evidence {
        InfeasibilityEvidence::Farkas { rows, lower, upper } => (rows, lower, upper),
        InfeasibilityEvidence::PhaseOne { backend } => {
            return InfeasibilityCheck {
                passed: false,
                residual: f64::NAN,
                margin: f64::NAN,
                detail: format!("{backend} reported phase-one failure without a certificate"),
            }
        }
    };
    if y.len() != lp.num_rows() || lower.len() != lp.num_vars() || upper.len() != lp.num_vars() {
        return InfeasibilityCheck {
            passed: false,
            residual: f64::NAN,
            margin: f64::NAN,
            detail: "certificate dimensions do not match the problem".into(),
        };
    }
    let scale = y
        .iter()
        .chain(lower.iter())
        .chain(upper.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return InfeasibilityCheck {
            passed: false,
            residual: 0.0,
            margin: 0.0,
            detail: "certificate is identically zero".into(),
        };
    }

    let mut col = vec![0.0; lp.num_vars()];
    let mut margin = 0.0;
    let mut sign_error = 0.0f64;
    for (row, &yi) in lp.rows().iter().zip(y) {
        let yi = yi / scale;
        if row.relation == Relation::Le {
            sign_error = sign_error.max(yi);
        }
        margin += row.rhs * yi;
        for &(v, a) in &row.coeffs {
            col[v.0] += a * yi;
        }
    }
    for (j, v) in lp.vars().iter().enumerate() {
        let lo = lower[j] / scale;
        let up = upper[j] / scale;
        sign_error = sign_error.max(-lo).max(-up);
        col[j] += lo - up;
        if v.lower.is_finite() {
            margin += v.lower * lo;
        } else {
            sign_error = sign_error.max(lo.abs());
        }
        if v.upper.is_finite() {
            margin -= v.upper * up;
        } else {
            sign_error = sign_error.max(up.abs());
        }
    }
    let residual = col.iter().fold(sign_error, |m, v| m.max(v.abs()));
    let passed = residual <= tol && margin > tol;
    InfeasibilityCheck {
        passed,
        residual,
        margin,
        detail: format!("residual {residual:.3e}, margin {margin:.3e}"),
    }
}
