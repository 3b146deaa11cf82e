use super::{gonzalez, SolverError};
use crate::bounds::GfBounds;
use crate::flow::max_flow_gf;
use crate::instance::Instance;
use crate::lp::{build_assignment_lp, solve_feasibility, Feasibility};
use crate::solution::{FractionalAssignment, Solution};

/// A rounded fair assignment and the LP radius it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct FairAssignment {
    pub solution: Solution,
    pub radius: f64,
    /// Number of LP solves spent in the radius search.
    pub lp_solves: usize,
}

/// Fractional fair assignment at `radius`, or `None` if the LP is infeasible
/// or some point has no center in range.
fn fractional_at(
    inst: &Instance,
    centers: &[usize],
    radius: f64,
    gfb: &GfBounds,
) -> Result<Option<FractionalAssignment>, SolverError> {
    let built = match build_assignment_lp(inst, centers, radius, gfb) {
        Ok(b) => b,
        Err(crate::lp::LpError::EmptyRow { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    match solve_feasibility(&built.lp)? {
        Feasibility::Feasible(x) => Ok(Some(built.to_fractional(&x)?)),
        Feasibility::Infeasible => Ok(None),
    }
}

/// Smallest radius over center-to-point distances at which a fractional fair
/// assignment to `centers` exists, rounded by max-flow.
///
/// Some centers may end up with empty clusters.
pub fn assignment_gf(inst: &Instance, centers: &[usize], gfb: &GfBounds) -> Result<FairAssignment, SolverError> {
    gfb.check_instance(inst)?;
    if centers.is_empty() {
        return Err(SolverError::BadK { k: 0, n: inst.n() });
    }
    let n = inst.n();
    if centers.len() == 1 {
        let c = centers[0];
        let r = inst.proportions();
        let fits = (0..inst.m()).all(|h| {
            gfb.beta(h) - 1e-9 <= r[h] && r[h] <= gfb.alpha(h) + 1e-9
        });
        if !fits {
            return Err(SolverError::Infeasible);
        }
        let radius = inst.row(c).iter().copied().fold(0.0, f64::max);
        return Ok(FairAssignment {
            solution: Solution::new(vec![c], vec![c; n], n)?,
            radius,
            lp_solves: 0,
        });
    }

    let reach = (0..n)
        .map(|j| centers.iter().map(|&c| inst.dist(c, j)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let mut radii: Vec<f64> = centers
        .iter()
        .flat_map(|&c| inst.row(c).iter().copied())
        .filter(|&d| d >= reach)
        .collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();

    let mut lp_solves = 1;
    let top = radii.len() - 1;
    let Some(mut best) = fractional_at(inst, centers, radii[top], gfb)? else {
        return Err(SolverError::Infeasible);
    };
    let (mut lo, mut hi) = (0, top);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        lp_solves += 1;
        match fractional_at(inst, centers, radii[mid], gfb)? {
            Some(x) => {
                best = x;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Ok(FairAssignment {
        solution: max_flow_gf(&best, inst)?,
        radius: radii[hi],
        lp_solves,
    })
}

/// Color-blind centers followed by a fair assignment to them.
pub fn alg_gf(
    inst: &Instance,
    k: usize,
    gfb: &GfBounds,
    seed: Option<u64>,
) -> Result<FairAssignment, SolverError> {
    let blind = gonzalez(inst, k, seed)?;
    assignment_gf(inst, blind.centers(), gfb)
}
