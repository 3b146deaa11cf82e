//! Bounded-variable primal simplex, phase one only.
//!
//! Every row `r` reads `a_r x + sigma_r s_r + tau_r u_r = b_r` with a slack
//! `s_r >= 0` for inequalities (`sigma = +1` for `<=`, `-1` for `>=`) and an
//! artificial `u_r >= 0` for rows whose starting residual the slack cannot
//! absorb. The sum of artificials is minimized; zero means feasible.
//! Entering and leaving variables follow Bland's rule, so the walk is
//! deterministic and cannot cycle.

use super::{Feasibility, LinearProgram, LpError, Relation, FEAS_TOL};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const DROP_TOL: f64 = 1e-13;
const RATIO_TIE: f64 = 1e-12;
const REFRESH_EVERY: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
enum State {
    Basic(usize),
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `B^-1 A`, row-major.
    t: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    kind: Vec<Kind>,
    state: Vec<State>,
    /// Current value of every column (basic ones mirror `beta`).
    value: Vec<f64>,
    basis: Vec<usize>,
    beta: Vec<f64>,
    /// Phase-one reduced costs.
    d: Vec<f64>,
    /// Column that formed the initial (unit) basis of each row and its sign.
    unit_col: Vec<usize>,
    unit_sign: Vec<f64>,
    /// Original sparse rows over all columns, for refreshing `beta`.
    a_rows: Vec<Vec<(usize, f64)>>,
    b: Vec<f64>,
    dead: Vec<bool>,
}

/// Decides whether `lp` has a point satisfying all constraints within
/// [`FEAS_TOL`]; returns such a point when it does.
pub fn solve_feasibility(lp: &LinearProgram) -> Result<Feasibility, LpError> {
    for (j, &(lo, hi)) in lp.bounds().iter().enumerate() {
        if lo > hi {
            return Err(LpError::Malformed(format!("empty bounds on variable {j}")));
        }
    }
    if lp.constraints().is_empty() {
        return Ok(Feasibility::Feasible(
            lp.bounds().iter().map(|b| b.0).collect(),
        ));
    }
    let mut tab = Tableau::build(lp);
    let cap = 50 * (lp.num_vars() + lp.constraints().len());
    let mut iterations = 0;
    loop {
        if iterations % REFRESH_EVERY == 0 && iterations > 0 {
            tab.refresh();
        }
        if tab.infeasibility() <= COST_TOL {
            break;
        }
        let Some(q) = tab.entering() else {
            tab.refresh();
            if tab.infeasibility() > FEAS_TOL {
                return Ok(Feasibility::Infeasible);
            }
            break;
        };
        if iterations >= cap {
            return Err(LpError::IterationCap { iterations });
        }
        tab.step(q)?;
        iterations += 1;
    }
    tab.refresh();
    let x: Vec<f64> = (0..lp.num_vars())
        .map(|j| tab.value[j].clamp(tab.lo[j], tab.hi[j]))
        .collect();
    let worst = lp.max_violation(&x);
    if worst > FEAS_TOL {
        return Err(LpError::Numeric(format!(
            "final point violates a constraint by {worst:e}"
        )));
    }
    Ok(Feasibility::Feasible(x))
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints().len();
        let mut lo: Vec<f64> = lp.bounds().iter().map(|b| b.0).collect();
        let mut hi: Vec<f64> = lp.bounds().iter().map(|b| b.1).collect();
        let mut kind = vec![Kind::Structural; n];
        let mut state: Vec<State> = (0..n)
            .map(|j| {
                if lp.start_at_upper[j] {
                    State::Upper
                } else {
                    State::Lower
                }
            })
            .collect();
        let mut value: Vec<f64> = (0..n)
            .map(|j| if lp.start_at_upper[j] { hi[j] } else { lo[j] })
            .collect();

        let mut a_rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        let mut basis = vec![0; m];
        let mut beta = vec![0.0; m];
        let mut unit_col = vec![0; m];
        let mut unit_sign = vec![0.0; m];

        let push_col = |k: Kind,
                            lo: &mut Vec<f64>,
                            hi: &mut Vec<f64>,
                            kind: &mut Vec<Kind>,
                            state: &mut Vec<State>,
                            value: &mut Vec<f64>| {
            lo.push(0.0);
            hi.push(f64::INFINITY);
            kind.push(k);
            state.push(State::Lower);
            value.push(0.0);
            lo.len() - 1
        };

        for (r, con) in lp.constraints().iter().enumerate() {
            let mut row: Vec<(usize, f64)> = con.coeffs.clone();
            let residual = con.rhs - con.activity(&value[..n]);
            let slack_sign = match con.relation {
                Relation::Le => Some(1.0),
                Relation::Ge => Some(-1.0),
                Relation::Eq => None,
            };
            let slack = slack_sign.map(|s| {
                let c = push_col(
                    Kind::Slack,
                    &mut lo,
                    &mut hi,
                    &mut kind,
                    &mut state,
                    &mut value,
                );
                row.push((c, s));
                (c, s)
            });
            match slack {
                Some((c, s)) if s * residual >= 0.0 => {
                    basis[r] = c;
                    beta[r] = s * residual;
                    unit_col[r] = c;
                    unit_sign[r] = s;
                }
                _ => {
                    let sign = if residual < 0.0 { -1.0 } else { 1.0 };
                    let c = push_col(
                        Kind::Artificial,
                        &mut lo,
                        &mut hi,
                        &mut kind,
                        &mut state,
                        &mut value,
                    );
                    row.push((c, sign));
                    basis[r] = c;
                    beta[r] = residual.abs();
                    unit_col[r] = c;
                    unit_sign[r] = sign;
                }
            }
            a_rows.push(row);
            b.push(con.rhs);
        }

        let cols = lo.len();
        let mut t = vec![0.0; m * cols];
        for (r, row) in a_rows.iter().enumerate() {
            // B = diag(unit_sign), so B^-1 A scales each row by its sign
            let s = unit_sign[r];
            for &(c, a) in row {
                t[r * cols + c] += s * a;
            }
        }
        for (r, &c) in basis.iter().enumerate() {
            state[c] = State::Basic(r);
            value[c] = beta[r];
        }
        let mut d = vec![0.0; cols];
        for c in 0..cols {
            if kind[c] == Kind::Artificial {
                d[c] = 1.0;
            }
        }
        for r in 0..m {
            if kind[basis[r]] == Kind::Artificial {
                for c in 0..cols {
                    d[c] -= t[r * cols + c];
                }
            }
        }
        Self {
            rows: m,
            cols,
            t,
            lo,
            hi,
            kind,
            state,
            value,
            basis,
            beta,
            d,
            unit_col,
            unit_sign,
            a_rows,
            b,
            dead: vec![false; cols],
        }
    }

    fn infeasibility(&self) -> f64 {
        self.basis
            .iter()
            .zip(&self.beta)
            .filter(|(&c, _)| self.kind[c] == Kind::Artificial)
            .map(|(_, &v)| v.max(0.0))
            .sum()
    }

    /// Lowest-index improving nonbasic column.
    fn entering(&self) -> Option<usize> {
        (0..self.cols).find(|&c| {
            if self.dead[c] {
                return false;
            }
            match self.state[c] {
                State::Basic(_) => false,
                State::Lower => self.d[c] < -COST_TOL && self.hi[c] > self.lo[c],
                State::Upper => self.d[c] > COST_TOL,
            }
        })
    }

    fn step(&mut self, q: usize) -> Result<(), LpError> {
        let dir = if self.state[q] == State::Lower { 1.0 } else { -1.0 };
        let cols = self.cols;

        // ratio test; Bland: ties go to the lowest basic column index
        let mut best_t = self.hi[q] - self.lo[q];
        let mut leave: Option<(usize, bool)> = None;
        for r in 0..self.rows {
            let g = dir * self.t[r * cols + q];
            if g.abs() <= PIVOT_TOL {
                continue;
            }
            let bc = self.basis[r];
            let (limit, to_upper) = if g > 0.0 {
                ((self.beta[r] - self.lo[bc]) / g, false)
            } else {
                if self.hi[bc].is_infinite() {
                    continue;
                }
                ((self.hi[bc] - self.beta[r]) / -g, true)
            };
            let limit = limit.max(0.0);
            let better = match leave {
                _ if limit < best_t - RATIO_TIE => true,
                Some((lr, _)) if limit <= best_t + RATIO_TIE => bc < self.basis[lr],
                None if limit <= best_t + RATIO_TIE => {
                    // a row tie with the bound flip: pivot only if strictly
                    // needed, keep the flip
                    false
                }
                _ => false,
            };
            if better {
                best_t = limit;
                leave = Some((r, to_upper));
            }
        }
        if best_t.is_infinite() {
            return Err(LpError::Numeric("unbounded phase-one direction".into()));
        }

        let step = dir * best_t;
        for r in 0..self.rows {
            let a = self.t[r * cols + q];
            if a != 0.0 {
                self.beta[r] -= step * a;
                self.value[self.basis[r]] = self.beta[r];
            }
        }
        self.value[q] += step;

        let Some((p, to_upper)) = leave else {
            self.state[q] = if dir > 0.0 { State::Upper } else { State::Lower };
            self.value[q] = if dir > 0.0 { self.hi[q] } else { self.lo[q] };
            return Ok(());
        };

        let out = self.basis[p];
        self.state[out] = if to_upper { State::Upper } else { State::Lower };
        self.value[out] = if to_upper { self.hi[out] } else { self.lo[out] };
        if self.kind[out] == Kind::Artificial {
            self.dead[out] = true;
        }
        self.basis[p] = q;
        self.state[q] = State::Basic(p);
        self.beta[p] = self.value[q];
        self.pivot(p, q);
        Ok(())
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let cols = self.cols;
        let piv = self.t[p * cols + q];
        let mut nz: Vec<usize> = Vec::new();
        {
            let row = &mut self.t[p * cols..(p + 1) * cols];
            for (c, v) in row.iter_mut().enumerate() {
                if *v != 0.0 {
                    *v /= piv;
                    if v.abs() < DROP_TOL {
                        *v = 0.0;
                    } else {
                        nz.push(c);
                    }
                }
            }
            row[q] = 1.0;
        }
        let (before, rest) = self.t.split_at_mut(p * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let update = |row: &mut [f64]| {
            let f = row[q];
            if f == 0.0 {
                return;
            }
            for &c in &nz {
                let v = row[c] - f * prow[c];
                row[c] = if v.abs() < DROP_TOL { 0.0 } else { v };
            }
            row[q] = 0.0;
        };
        for row in before.chunks_exact_mut(cols) {
            update(row);
        }
        for row in after.chunks_exact_mut(cols) {
            update(row);
        }
        let f = self.d[q];
        if f != 0.0 {
            for &c in &nz {
                let v = self.d[c] - f * prow[c];
                self.d[c] = if v.abs() < DROP_TOL { 0.0 } else { v };
            }
            self.d[q] = 0.0;
        }
    }

    /// Recomputes basic values as `B^-1 (b - N x_N)` using the columns that
    /// formed the initial unit basis.
    fn refresh(&mut self) {
        let cols = self.cols;
        let mut rhs = self.b.clone();
        for (r, row) in self.a_rows.iter().enumerate() {
            for &(c, a) in row {
                if !matches!(self.state[c], State::Basic(_)) {
                    rhs[r] -= a * self.value[c];
                }
            }
        }
        for r in 0..self.rows {
            let mut v = 0.0;
            for (k, &rk) in rhs.iter().enumerate() {
                if rk != 0.0 {
                    // column unit_col[k] of B^-1 A equals B^-1 e_k * unit_sign[k]
                    v += self.t[r * cols + self.unit_col[k]] * self.unit_sign[k] * rk;
                }
            }
            self.beta[r] = v;
            self.value[self.basis[r]] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(lo_rhs: f64, hi_rhs: f64) -> LinearProgram {
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(vec![(0, 1.0)], Relation::Ge, lo_rhs).unwrap();
        lp.add_constraint(vec![(0, 1.0)], Relation::Le, hi_rhs).unwrap();
        lp
    }

    #[test]
    fn single_variable_window() {
        match solve_feasibility(&one_var(0.3, 0.7)).unwrap() {
            Feasibility::Feasible(x) => assert!((0.3 - 1e-7..=0.7 + 1e-7).contains(&x[0])),
            Feasibility::Infeasible => panic!("window is nonempty"),
        }
        assert_eq!(
            solve_feasibility(&one_var(0.8, 0.2)).unwrap(),
            Feasibility::Infeasible
        );
    }

    #[test]
    fn equality_system() {
        // x + y = 1, x - y = 0.5  ->  x = 0.75, y = 0.25
        let mut lp = LinearProgram::new(2);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Eq, 1.0).unwrap();
        lp.add_constraint(vec![(0, 1.0), (1, -1.0)], Relation::Eq, 0.5).unwrap();
        let Feasibility::Feasible(x) = solve_feasibility(&lp).unwrap() else {
            panic!("feasible system")
        };
        assert!((x[0] - 0.75).abs() < 1e-9 && (x[1] - 0.25).abs() < 1e-9);
    }

    #[test]
    fn box_bounds_make_it_infeasible() {
        // x + y = 3 with x, y in [0, 1]
        let mut lp = LinearProgram::new(2);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Eq, 3.0).unwrap();
        assert_eq!(solve_feasibility(&lp).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn start_hint_does_not_change_the_verdict() {
        let mut lp = LinearProgram::new(3);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0), (2, 1.0)], Relation::Eq, 1.0).unwrap();
        lp.add_constraint(vec![(0, 1.0), (1, -1.0)], Relation::Le, 0.0).unwrap();
        lp.add_constraint(vec![(2, 1.0)], Relation::Le, 0.2).unwrap();
        lp.set_start_at_upper(0, true);
        let Feasibility::Feasible(x) = solve_feasibility(&lp).unwrap() else {
            panic!("feasible system")
        };
        assert!(lp.max_violation(&x) <= FEAS_TOL);
    }

    #[test]
    fn rejects_malformed_rows() {
        let mut lp = LinearProgram::new(1);
        assert!(lp.add_constraint(vec![], Relation::Le, 1.0).is_err());
        assert!(lp.add_constraint(vec![(3, 1.0)], Relation::Le, 1.0).is_err());
        assert!(lp.add_constraint(vec![(0, f64::NAN)], Relation::Le, 1.0).is_err());
    }
}
