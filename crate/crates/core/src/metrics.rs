//! Clustering cost, constraint violations and the price of fairness.

use crate::bounds::{DsBounds, GfBounds};
use crate::instance::Instance;
use crate::solution::Solution;
use serde::{Deserialize, Serialize};

/// Violations at or below this value are reported as zero.
pub const VIOLATION_TOL: f64 = 1e-9;

/// k-center cost: the largest distance from a point to its assigned center.
pub fn cost(inst: &Instance, sol: &Solution) -> f64 {
    sol.assign()
        .iter()
        .enumerate()
        .map(|(j, &c)| inst.dist(j, c))
        .fold(0.0, f64::max)
}

/// Additive GF violation of one cluster given its per-color mass and total
/// mass. Works for integral counts and fractional masses alike; an empty
/// cluster contributes zero.
pub fn cluster_violation(color_mass: &[f64], total: f64, gfb: &GfBounds) -> f64 {
    let mut rho: f64 = 0.0;
    for (h, &c) in color_mass.iter().enumerate() {
        rho = rho
            .max(gfb.beta(h) * total - c)
            .max(c - gfb.alpha(h) * total);
    }
    if rho <= VIOLATION_TOL {
        0.0
    } else {
        rho
    }
}

/// Per-center color counts, parallel to `sol.centers()`.
pub fn color_counts_per_cluster(inst: &Instance, sol: &Solution) -> Vec<Vec<usize>> {
    sol.clusters()
        .iter()
        .map(|members| {
            let mut counts = vec![0; inst.m()];
            for &j in members {
                counts[inst.color(j)] += 1;
            }
            counts
        })
        .collect()
}

/// Smallest `rho` with `beta_h |C_i| - rho <= |C_i^h| <= alpha_h |C_i| + rho`
/// for every cluster and color.
pub fn gf_violation(inst: &Instance, gfb: &GfBounds, sol: &Solution) -> f64 {
    color_counts_per_cluster(inst, sol)
        .iter()
        .map(|counts| {
            let total: usize = counts.iter().sum();
            let mass: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
            cluster_violation(&mass, total as f64, gfb)
        })
        .fold(0.0, f64::max)
}

/// Number of active centers of each color.
pub fn active_center_colors(inst: &Instance, sol: &Solution) -> Vec<usize> {
    let mut k_h = vec![0; inst.m()];
    for c in sol.active_centers() {
        k_h[inst.color(c)] += 1;
    }
    k_h
}

/// Largest under- or over-representation of a color among active centers.
pub fn ds_violation(sol: &Solution, dsb: &DsBounds, inst: &Instance) -> usize {
    active_center_colors(inst, sol)
        .into_iter()
        .enumerate()
        .map(|(h, k_h)| {
            dsb.lo(h)
                .saturating_sub(k_h)
                .max(k_h.saturating_sub(dsb.hi(h)))
        })
        .max()
        .unwrap_or(0)
}

/// Price of fairness `constrained / blind`.
///
/// Returns `f64::INFINITY` when only the blind cost is zero, and 1 when both
/// are zero.
pub fn pof(cost_constrained: f64, cost_blind: f64) -> f64 {
    if cost_blind > 0.0 {
        cost_constrained / cost_blind
    } else if cost_constrained > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub gf_rho: f64,
    pub ds_violation: usize,
    pub inactive_centers: Vec<usize>,
    pub cost: f64,
}

pub fn evaluate(inst: &Instance, sol: &Solution, gfb: &GfBounds, dsb: &DsBounds) -> ViolationReport {
    ViolationReport {
        gf_rho: gf_violation(inst, gfb, sol),
        ds_violation: ds_violation(sol, dsb, inst),
        inactive_centers: sol.inactive_centers(),
        cost: cost(inst, sol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_l_community, ColorPattern};
    use proptest::prelude::*;

    fn points(xs: &[f64], colors: Vec<usize>, m: usize) -> Instance {
        Instance::from_features(xs.iter().map(|&x| vec![x]).collect(), colors, m).unwrap()
    }

    #[test]
    fn cost_examples() {
        let inst = points(&[0.0, 5.0], vec![0, 1], 2);
        let own = Solution::new(vec![0, 1], vec![0, 1], 2).unwrap();
        assert_eq!(cost(&inst, &own), 0.0);
        let both = Solution::new(vec![0], vec![0, 0], 2).unwrap();
        assert_eq!(cost(&inst, &both), 5.0);

        let ci = gen_l_community(2, 4, 1.0, ColorPattern::Alternating).unwrap();
        let sol = Solution::nearest(&ci, vec![0, 4]).unwrap();
        assert_eq!(cost(&ci, &sol), 0.0);
    }

    #[test]
    fn gf_violation_examples() {
        let gfb = GfBounds::uniform(2, 0.5, 0.5).unwrap();
        let inst = points(&[0.0, 1.0, 2.0, 3.0], vec![0, 0, 1, 1], 2);
        let sol = Solution::new(vec![0], vec![0; 4], 4).unwrap();
        assert_eq!(gf_violation(&inst, &gfb, &sol), 0.0);

        let mono = points(&[0.0, 1.0, 2.0, 3.0, 4.0], vec![0, 0, 0, 0, 1], 2);
        let sol = Solution::new(vec![0, 4], vec![0, 0, 0, 0, 4], 5).unwrap();
        // cluster {0..3} is all color 0: 0.5 * 4 - 0 = 2; singleton {4}: 0.5
        assert_eq!(gf_violation(&mono, &gfb, &sol), 2.0);
    }

    #[test]
    fn gf_violation_is_max_over_clusters() {
        // cluster A: 2 of color 0 and 0 of color 1 with beta1 = 0.25 -> 0.5
        // cluster B: 5 of color 0 and 0 of color 1 -> 1.25
        let gfb = GfBounds::new(vec![0.25, 0.25], vec![1.0, 1.0]).unwrap();
        let mut colors = vec![0; 7];
        colors.push(1);
        let inst = points(&(0..8).map(|x| x as f64).collect::<Vec<_>>(), colors, 2);
        let sol = Solution::new(vec![0, 2, 7], vec![0, 0, 2, 2, 2, 2, 2, 7], 8).unwrap();
        assert_eq!(gf_violation(&inst, &gfb, &sol), 1.25);
    }

    #[test]
    fn ds_violation_examples() {
        let inst = points(&[0.0, 1.0, 2.0, 3.0], vec![0, 1, 1, 0], 2);
        let dsb = DsBounds::new(vec![1, 1], vec![2, 2], 2).unwrap();
        let sol = Solution::nearest(&inst, vec![0, 1]).unwrap();
        assert_eq!(ds_violation(&sol, &dsb, &inst), 0);

        let dsb = DsBounds::new(vec![2, 1], vec![3, 3], 3).unwrap();
        let sol = Solution::nearest(&inst, vec![0, 1, 2]).unwrap();
        assert_eq!(ds_violation(&sol, &dsb, &inst), 1);
    }

    #[test]
    fn inactive_center_is_not_counted() {
        let inst = points(&[0.0, 1.0, 2.0, 3.0], vec![0, 1, 1, 0], 2);
        let dsb = DsBounds::new(vec![1, 1], vec![2, 2], 2).unwrap();
        // center 0 (color 0) serves nobody
        let sol = Solution::new(vec![0, 1], vec![1, 1, 1, 1], 4).unwrap();
        assert_eq!(ds_violation(&sol, &dsb, &inst), 1);
        assert_eq!(sol.inactive_centers(), vec![0]);
    }

    #[test]
    fn pof_conventions() {
        assert_eq!(pof(2.0, 1.0), 2.0);
        assert_eq!(pof(1.0, 0.0), f64::INFINITY);
        assert_eq!(pof(0.0, 0.0), 1.0);
    }

    #[test]
    fn nearest_assignment_is_cheapest_for_fixed_centers() {
        let inst = points(&[0.0, 1.0, 4.0, 9.0], vec![0, 1, 0, 1], 2);
        let near = Solution::nearest(&inst, vec![0, 3]).unwrap();
        let other = Solution::new(vec![0, 3], vec![0, 3, 0, 3], 4).unwrap();
        assert!(cost(&inst, &near) <= cost(&inst, &other));
        let swapped = Solution::new(vec![3, 0], near.assign().to_vec(), 4).unwrap();
        assert_eq!(cost(&inst, &near), cost(&inst, &swapped));
    }

    proptest! {
        #[test]
        fn widening_bounds_never_increases_violation(
            counts in prop::collection::vec(prop::collection::vec(0usize..6, 3), 1..5),
            beta in prop::collection::vec(0.05f64..0.4, 3),
            widen in 0.0f64..0.05,
        ) {
            let alpha: Vec<f64> = beta.iter().map(|b| (b + 0.3).min(1.0)).collect();
            let tight = GfBounds::new(beta.clone(), alpha.clone()).unwrap();
            let wide = GfBounds::new(
                beta.iter().map(|b| b - widen).collect(),
                alpha.iter().map(|a| (a + widen).min(1.0)).collect(),
            ).unwrap();
            for c in &counts {
                let mass: Vec<f64> = c.iter().map(|&v| v as f64).collect();
                let total: f64 = mass.iter().sum();
                prop_assert!(cluster_violation(&mass, total, &wide) <= cluster_violation(&mass, total, &tight));
            }
        }

        #[test]
        fn merging_exactly_fair_clusters_stays_fair(
            parts in prop::collection::vec(prop::collection::vec(0usize..9, 3), 2..5),
        ) {
            let gfb = GfBounds::new(vec![0.2, 0.3, 0.15], vec![0.5, 0.6, 0.45]).unwrap();
            let fair: Vec<&Vec<usize>> = parts
                .iter()
                .filter(|c| {
                    let m: Vec<f64> = c.iter().map(|&v| v as f64).collect();
                    let t: f64 = m.iter().sum();
                    t > 0.0 && cluster_violation(&m, t, &gfb) == 0.0
                })
                .collect();
            let merged: Vec<f64> = (0..3)
                .map(|h| fair.iter().map(|c| c[h]).sum::<usize>() as f64)
                .collect();
            let total: f64 = merged.iter().sum();
            prop_assert_eq!(cluster_violation(&merged, total, &gfb), 0.0);
        }
    }
}
