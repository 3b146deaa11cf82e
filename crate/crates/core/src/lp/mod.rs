//! Linear feasibility problems and the fair-assignment LP built from them.

mod assignment;
mod simplex;

pub use assignment::{build_assignment_lp, AssignmentLp};
pub use simplex::solve_feasibility;

use thiserror::Error;

/// Absolute tolerance on constraint residuals of a returned point.
pub const FEAS_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Malformed(String),
    #[error("simplex did not finish within {iterations} iterations")]
    IterationCap { iterations: usize },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("point {point} has no center within radius {radius}")]
    EmptyRow { point: usize, radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// How far `x` is from satisfying this constraint (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// A system of sparse linear constraints over box-bounded variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    num_vars: usize,
    constraints: Vec<Constraint>,
    bounds: Vec<(f64, f64)>,
    start_at_upper: Vec<bool>,
}

impl LinearProgram {
    /// `num_vars` variables, each bounded to `[0, 1]`.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            constraints: Vec::new(),
            bounds: vec![(0.0, 1.0); num_vars],
            start_at_upper: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<(usize, f64)>,
        relation: Relation,
        rhs: f64,
    ) -> Result<usize, LpError> {
        if coeffs.is_empty() {
            return Err(LpError::Malformed("constraint without variables".into()));
        }
        if !rhs.is_finite() {
            return Err(LpError::Malformed(format!("non-finite rhs {rhs}")));
        }
        for &(j, a) in &coeffs {
            if j >= self.num_vars {
                return Err(LpError::Malformed(format!("variable {j} out of range")));
            }
            if !a.is_finite() {
                return Err(LpError::Malformed(format!("non-finite coefficient on {j}")));
            }
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(self.constraints.len() - 1)
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) -> Result<(), LpError> {
        if var >= self.num_vars || !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(LpError::Malformed(format!(
                "bounds [{lo}, {hi}] for variable {var}"
            )));
        }
        self.bounds[var] = (lo, hi);
        Ok(())
    }

    /// Starting-point hint: the solver begins with `var` at its upper bound.
    pub fn set_start_at_upper(&mut self, var: usize, upper: bool) {
        self.start_at_upper[var] = upper;
    }

    /// Largest constraint or bound violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self
            .constraints
            .iter()
            .map(|c| c.violation(x))
            .fold(0.0, f64::max);
        self.bounds
            .iter()
            .zip(x)
            .map(|(&(lo, hi), &v)| (lo - v).max(v - hi).max(0.0))
            .fold(rows, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<f64>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}
