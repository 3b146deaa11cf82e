//! Auditors for distance-based fairness notions.
//!
//! Ratios use the convention `0/0 = 1` and `x/0 = inf` for `x > 0`.

use crate::instance::Instance;
use crate::solution::Solution;

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Population size `ceil(n / k)` that the audits below call a neighborhood
/// or a coalition.
pub fn quota(n: usize, k: usize) -> usize {
    assert!(k > 0, "k must be positive");
    n.div_ceil(k)
}

/// Smallest radius around `j` holding at least `ceil(n/k)` points, `j`
/// included.
pub fn neighborhood_radius(inst: &Instance, k: usize, j: usize) -> f64 {
    let q = quota(inst.n(), k);
    let mut d = inst.row(j).to_vec();
    let (_, nth, _) = d.select_nth_unstable_by(q - 1, f64::total_cmp);
    *nth
}

/// Smallest `alpha` with `d(j, phi(j)) <= alpha * NR(j)` for every point.
pub fn min_alpha_nr(inst: &Instance, sol: &Solution, k: usize) -> f64 {
    (0..inst.n())
        .map(|j| ratio(inst.dist(j, sol.center_of(j)), neighborhood_radius(inst, k, j)))
        .fold(0.0, f64::max)
}

/// Largest per-color mean of `d(j, phi(j))^p`.
pub fn socially_fair_cost(inst: &Instance, sol: &Solution, p: u32) -> f64 {
    let mut sum = vec![0.0; inst.m()];
    let mut count = vec![0usize; inst.m()];
    for j in 0..inst.n() {
        let h = inst.color(j);
        sum[h] += inst.dist(j, sol.center_of(j)).powi(p as i32);
        count[h] += 1;
    }
    sum.iter()
        .zip(&count)
        .filter(|(_, &c)| c > 0)
        .map(|(s, &c)| s / c as f64)
        .fold(0.0, f64::max)
}

/// Smallest `alpha >= 1` such that no candidate center `y` has `ceil(n/k)`
/// points that would each be more than `alpha` times closer to `y` than to
/// their assigned center.
pub fn min_alpha_proportional(inst: &Instance, sol: &Solution, k: usize) -> f64 {
    let n = inst.n();
    let q = quota(n, k);
    let mut worst: f64 = 1.0;
    let mut ratios = Vec::with_capacity(n);
    for y in 0..n {
        ratios.clear();
        ratios.extend((0..n).map(|i| ratio(inst.dist(i, sol.center_of(i)), inst.dist(i, y))));
        // the q-th largest ratio
        let (_, nth, _) = ratios.select_nth_unstable_by(n - q, f64::total_cmp);
        worst = worst.max(*nth);
    }
    worst
}
