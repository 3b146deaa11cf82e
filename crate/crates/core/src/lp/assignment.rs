use super::{LinearProgram, LpError, Relation};
use crate::bounds::GfBounds;
use crate::instance::Instance;
use crate::solution::{FractionalAssignment, SolutionError};

/// The fair-assignment LP for a fixed center list and radius.
///
/// Variable `v` stands for `x[vars[v].0][vars[v].1]`, i.e. the share of point
/// `vars[v].1` sent to the center in slot `vars[v].0`. Pairs farther apart
/// than the radius have no variable.
#[derive(Debug, Clone)]
pub struct AssignmentLp {
    pub lp: LinearProgram,
    pub vars: Vec<(usize, usize)>,
    pub centers: Vec<usize>,
}

impl AssignmentLp {
    /// Reads a solver point back as a fractional assignment.
    pub fn to_fractional(&self, x: &[f64]) -> Result<FractionalAssignment, SolutionError> {
        let n = self.vars.iter().map(|v| v.1 + 1).max().unwrap_or(0);
        let mut rows = vec![Vec::new(); n];
        for (&(slot, j), &v) in self.vars.iter().zip(x) {
            rows[j].push((slot, v));
        }
        FractionalAssignment::from_raw(self.centers.clone(), rows)
    }
}

pub fn build_assignment_lp(
    inst: &Instance,
    centers: &[usize],
    radius: f64,
    gfb: &GfBounds,
) -> Result<AssignmentLp, LpError> {
    if centers.is_empty() {
        return Err(LpError::Malformed("no centers".into()));
    }
    if gfb.num_colors() != inst.m() {
        return Err(LpError::Malformed(format!(
            "bounds cover {} colors, instance has {}",
            gfb.num_colors(),
            inst.m()
        )));
    }
    let n = inst.n();
    let mut vars = Vec::new();
    let mut by_point: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut by_slot: Vec<Vec<usize>> = vec![Vec::new(); centers.len()];
    let mut nearest = Vec::with_capacity(n);
    for j in 0..n {
        let mut mine = Vec::new();
        let mut best: Option<(f64, usize)> = None;
        for (slot, &c) in centers.iter().enumerate() {
            let d = inst.dist(c, j);
            if d <= radius {
                let v = vars.len();
                vars.push((slot, j));
                mine.push(v);
                by_slot[slot].push(v);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, v));
                }
            }
        }
        let Some((_, v)) = best else {
            return Err(LpError::EmptyRow { point: j, radius });
        };
        nearest.push(v);
        by_point.push(mine);
    }

    let mut lp = LinearProgram::new(vars.len());
    for &v in &nearest {
        lp.set_start_at_upper(v, true);
    }
    for mine in &by_point {
        lp.add_constraint(mine.iter().map(|&v| (v, 1.0)).collect(), Relation::Eq, 1.0)?;
    }
    for slot_vars in &by_slot {
        if slot_vars.is_empty() {
            continue;
        }
        for h in 0..inst.m() {
            let is_h = |v: usize| if inst.color(vars[v].1) == h { 1.0 } else { 0.0 };
            let lower: Vec<(usize, f64)> = slot_vars
                .iter()
                .map(|&v| (v, gfb.beta(h) - is_h(v)))
                .filter(|e| e.1 != 0.0)
                .collect();
            if !lower.is_empty() {
                lp.add_constraint(lower, Relation::Le, 0.0)?;
            }
            let upper: Vec<(usize, f64)> = slot_vars
                .iter()
                .map(|&v| (v, is_h(v) - gfb.alpha(h)))
                .filter(|e| e.1 != 0.0)
                .collect();
            if !upper.is_empty() {
                lp.add_constraint(upper, Relation::Le, 0.0)?;
            }
        }
    }
    Ok(AssignmentLp {
        lp,
        vars,
        centers: centers.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_l_community, ColorPattern};
    use crate::lp::{solve_feasibility, Feasibility};

    #[test]
    fn unreachable_point_is_an_empty_row() {
        let inst = gen_l_community(2, 2, 1.0, ColorPattern::Alternating).unwrap();
        let gfb = GfBounds::uniform(2, 0.5, 0.5).unwrap();
        assert!(matches!(
            build_assignment_lp(&inst, &[0], 0.5, &gfb),
            Err(LpError::EmptyRow { point: 2, .. })
        ));
    }

    #[test]
    fn zero_radius_admits_only_own_community() {
        let inst = gen_l_community(2, 4, 1.0, ColorPattern::Alternating).unwrap();
        let gfb = GfBounds::uniform(2, 0.5, 0.5).unwrap();
        let a = build_assignment_lp(&inst, &[0, 4], 0.0, &gfb).unwrap();
        assert_eq!(a.vars.len(), 8);
        assert!(a.vars.iter().all(|&(slot, j)| slot == j / 4));
    }

    #[test]
    fn balanced_clusters_are_feasible_at_their_radius() {
        // two tight pairs, one of each color per pair
        let feats = vec![vec![0.0], vec![0.5], vec![10.0], vec![10.5]];
        let inst = Instance::from_features(feats, vec![0, 1, 0, 1], 2).unwrap();
        let gfb = GfBounds::uniform(2, 0.5, 0.5).unwrap();
        let a = build_assignment_lp(&inst, &[0, 2], 0.5, &gfb).unwrap();
        let Feasibility::Feasible(x) = solve_feasibility(&a.lp).unwrap() else {
            panic!("indicator assignment is feasible")
        };
        let frac = a.to_fractional(&x).unwrap();
        assert_eq!(frac.value(0, 0), 1.0);
        assert_eq!(frac.value(0, 1), 1.0);
        assert_eq!(frac.value(1, 2), 1.0);
        assert_eq!(frac.value(1, 3), 1.0);
        assert_eq!(frac.gf_violation(&inst, &gfb), 0.0);
    }

    #[test]
    fn full_radius_allows_uniform_split() {
        let feats = (0..6).map(|i| vec![i as f64]).collect();
        let inst = Instance::from_features(feats, vec![0, 0, 0, 0, 1, 1], 2).unwrap();
        let gfb = GfBounds::from_delta(&inst, 0.1).unwrap();
        let a = build_assignment_lp(&inst, &[0, 5], inst.diameter(), &gfb).unwrap();
        let uniform = vec![0.5; a.vars.len()];
        assert!(a.lp.max_violation(&uniform) < 1e-12);
        let Feasibility::Feasible(x) = solve_feasibility(&a.lp).unwrap() else {
            panic!("uniform split is feasible")
        };
        assert!(a.to_fractional(&x).unwrap().gf_violation(&inst, &gfb) <= 1e-7);
    }
}
