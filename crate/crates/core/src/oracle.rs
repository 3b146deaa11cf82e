//! Exact optimization and exhaustive enumeration for small instances.
//!
//! Group proportions and center quotas only depend on how many points of
//! each color every cluster receives, so for a fixed center set and radius
//! the search runs over per-color count matrices. A matrix is realizable when
//! each color's points can be routed to the centers within the radius with
//! exactly those counts, which is a small bipartite matching.

use crate::bounds::{DsBounds, GfBounds};
use crate::instance::Instance;
use crate::metrics::{cluster_violation, VIOLATION_TOL};
use crate::solution::Solution;
use thiserror::Error;

pub const MAX_N: usize = 12;
pub const MAX_K: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search (n={n}, k={k}; limits {MAX_N}, {MAX_K})")]
    TooLarge { n: usize, k: usize },
    #[error("k must be at least 1")]
    BadK,
    #[error("no solution satisfies the constraints")]
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub cost: f64,
    /// An optimal solution with every center active.
    pub solution: Solution,
}

struct Search<'a> {
    inst: &'a Instance,
    gf: Option<(&'a GfBounds, f64)>,
    ds: Option<&'a DsBounds>,
    by_color: Vec<Vec<usize>>,
}

/// Minimum k-center cost over all solutions with at most `k` centers that
/// meet the group proportions with additive violation at most `rho_allow`
/// (when `gfb` is given) and the quotas on active centers (when `dsb` is
/// given).
pub fn brute_force_opt(
    inst: &Instance,
    k: usize,
    gfb: Option<&GfBounds>,
    dsb: Option<&DsBounds>,
    rho_allow: f64,
) -> Result<OracleResult, OracleError> {
    let n = inst.n();
    if k == 0 {
        return Err(OracleError::BadK);
    }
    if n > MAX_N || k > MAX_K {
        return Err(OracleError::TooLarge { n, k });
    }
    let search = Search {
        inst,
        gf: gfb.map(|g| (g, rho_allow)),
        ds: dsb,
        by_color: (0..inst.m()).map(|h| inst.points_of_color(h)).collect(),
    };
    let mut radii: Vec<f64> = (0..n)
        .flat_map(|i| inst.row(i).iter().copied())
        .collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();

    let size = k.min(n);
    let top = radii.len() - 1;
    let Some(mut best) = search.at_radius(radii[top], size) else {
        return Err(OracleError::Infeasible);
    };
    let (mut lo, mut hi) = (0, top);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match search.at_radius(radii[mid], size) {
            Some(sol) => {
                best = sol;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let sol = best.without_inactive();
    Ok(OracleResult {
        cost: crate::metrics::cost(inst, &sol),
        solution: sol,
    })
}

impl Search<'_> {
    fn at_radius(&self, radius: f64, size: usize) -> Option<Solution> {
        let n = self.inst.n();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            if let Some(sol) = self.with_centers(&subset, radius) {
                return Some(sol);
            }
            if !next_combination(&mut subset, n) {
                return None;
            }
        }
    }

    fn with_centers(&self, centers: &[usize], radius: f64) -> Option<Solution> {
        let inst = self.inst;
        let s = centers.len();
        let reach: Vec<Vec<bool>> = (0..inst.n())
            .map(|j| centers.iter().map(|&c| inst.dist(c, j) <= radius).collect())
            .collect();
        if reach.iter().any(|r| !r.contains(&true)) {
            return None;
        }
        if self.gf.is_none() && self.ds.is_none() {
            return Some(nearest_within(inst, centers));
        }
        let mut counts = vec![vec![0usize; inst.m()]; s];
        let mut routes = vec![Vec::new(); inst.m()];
        if self.fill_color(0, centers, &reach, &mut counts, &mut routes) {
            let mut assign = vec![0; inst.n()];
            for (h, route) in routes.iter().enumerate() {
                for (&j, &slot) in self.by_color[h].iter().zip(route) {
                    assign[j] = centers[slot];
                }
            }
            return Solution::new(centers.to_vec(), assign, inst.n()).ok();
        }
        None
    }

    /// Chooses the counts of color `h` per center, recursing over colors.
    fn fill_color(
        &self,
        h: usize,
        centers: &[usize],
        reach: &[Vec<bool>],
        counts: &mut [Vec<usize>],
        routes: &mut [Vec<usize>],
    ) -> bool {
        if h == self.inst.m() {
            return self.admissible(centers, counts);
        }
        let points = &self.by_color[h];
        let s = centers.len();
        let mut cap = vec![0usize; s];
        for (i, c) in cap.iter_mut().enumerate() {
            *c = points.iter().filter(|&&j| reach[j][i]).count();
        }
        let mut part = vec![0usize; s];
        let mut found = false;
        compositions(points.len(), &cap, &mut part, 0, &mut |part| {
            let Some(route) = route_color(points, reach, part) else {
                return false;
            };
            for (i, &c) in part.iter().enumerate() {
                counts[i][h] = c;
            }
            if self.fill_color(h + 1, centers, reach, counts, routes) {
                routes[h] = route;
                found = true;
                return true;
            }
            false
        });
        found
    }

    fn admissible(&self, centers: &[usize], counts: &[Vec<usize>]) -> bool {
        if let Some((gfb, rho)) = self.gf {
            for c in counts {
                let total: usize = c.iter().sum();
                let mass: Vec<f64> = c.iter().map(|&v| v as f64).collect();
                if cluster_violation(&mass, total as f64, gfb) > rho + VIOLATION_TOL {
                    return false;
                }
            }
        }
        if let Some(dsb) = self.ds {
            let mut k_h = vec![0usize; self.inst.m()];
            for (&c, cl) in centers.iter().zip(counts) {
                if cl.iter().any(|&v| v > 0) {
                    k_h[self.inst.color(c)] += 1;
                }
            }
            if (0..self.inst.m()).any(|h| k_h[h] < dsb.lo(h) || k_h[h] > dsb.hi(h)) {
                return false;
            }
        }
        true
    }
}

fn nearest_within(inst: &Instance, centers: &[usize]) -> Solution {
    Solution::nearest(inst, centers.to_vec()).expect("centers are valid")
}

/// Advances `subset` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for t in i + 1..k {
                subset[t] = subset[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `visit` on every way to write `total` as `part[0] + .. + part[s-1]`
/// with `part[i] <= cap[i]`, stopping once `visit` returns true.
fn compositions(
    total: usize,
    cap: &[usize],
    part: &mut [usize],
    i: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if i + 1 == part.len() {
        if total > cap[i] {
            return false;
        }
        part[i] = total;
        return visit(part);
    }
    for v in 0..=total.min(cap[i]) {
        part[i] = v;
        if compositions(total - v, cap, part, i + 1, visit) {
            return true;
        }
    }
    false
}

/// Sends each of `points` to a reachable slot so that slot `i` gets exactly
/// `want[i]` points. Returns the slot of every point.
fn route_color(points: &[usize], reach: &[Vec<bool>], want: &[usize]) -> Option<Vec<usize>> {
    fn place(
        p: usize,
        points: &[usize],
        reach: &[Vec<bool>],
        want: &[usize],
        load: &mut [usize],
        slot_of: &mut [usize],
        seen: &mut [bool],
    ) -> bool {
        for i in 0..want.len() {
            if !reach[points[p]][i] || seen[i] {
                continue;
            }
            seen[i] = true;
            if load[i] < want[i] {
                load[i] += 1;
                slot_of[p] = i;
                return true;
            }
            for q in 0..points.len() {
                if slot_of[q] == i && place(q, points, reach, want, load, slot_of, seen) {
                    load[i] -= 1;
                    slot_of[p] = i;
                    load[i] += 1;
                    return true;
                }
            }
        }
        false
    }
    let mut load = vec![0; want.len()];
    let mut slot_of = vec![usize::MAX; points.len()];
    for p in 0..points.len() {
        let mut seen = vec![false; want.len()];
        if !place(p, points, reach, want, &mut load, &mut slot_of, &mut seen) {
            return None;
        }
    }
    Some(slot_of)
}

/// Classes of interchangeable points: same color, distance zero and
/// identical distance rows. Each class is ascending; classes are ordered by
/// their first point.
pub fn identical_groups(inst: &Instance) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in 0..inst.n() {
        let home = groups.iter_mut().find(|g| {
            let r = g[0];
            inst.color(r) == inst.color(j) && inst.dist(r, j) == 0.0 && inst.row(r) == inst.row(j)
        });
        match home {
            Some(g) => g.push(j),
            None => groups.push(vec![j]),
        }
    }
    groups
}

/// Visits at least one solution from every class of solutions with between
/// one and `k` centers, all active, where two solutions are in the same class
/// when a permutation of interchangeable points maps one onto the other.
///
/// Every function of distances and colors (cost, violations, the audits) is
/// constant on a class, so this is an exhaustive check for such properties.
/// Returns the number of solutions visited.
pub fn enumerate_solutions(
    inst: &Instance,
    k: usize,
    visit: &mut dyn FnMut(&Solution),
) -> Result<usize, OracleError> {
    if k == 0 {
        return Err(OracleError::BadK);
    }
    if inst.n() > MAX_N || k > MAX_K {
        return Err(OracleError::TooLarge { n: inst.n(), k });
    }
    let groups = identical_groups(inst);
    let mut per_group = vec![0usize; groups.len()];
    let mut visited = 0;
    center_counts(&groups, k, 0, &mut per_group, &mut |per_group| {
        let centers: Vec<usize> = groups
            .iter()
            .zip(per_group)
            .flat_map(|(g, &c)| g[..c].iter().copied())
            .collect();
        let mut assign = vec![usize::MAX; inst.n()];
        assign_groups(&groups, per_group, &centers, 0, &mut assign, &mut |assign| {
            let sol = Solution::new(centers.clone(), assign.to_vec(), inst.n()).expect("valid by construction");
            if sol.inactive_centers().is_empty() {
                visited += 1;
                visit(&sol);
            }
        });
    });
    Ok(visited)
}

fn center_counts(
    groups: &[Vec<usize>],
    budget: usize,
    g: usize,
    per_group: &mut [usize],
    visit: &mut dyn FnMut(&[usize]),
) {
    if g == groups.len() {
        if per_group.iter().any(|&c| c > 0) {
            visit(per_group);
        }
        return;
    }
    for c in 0..=budget.min(groups[g].len()) {
        per_group[g] = c;
        center_counts(groups, budget - c, g + 1, per_group, visit);
    }
    per_group[g] = 0;
}

/// Within group `g`, its center points are assigned independently and its
/// other points by composition over the centers in listing order.
fn assign_groups(
    groups: &[Vec<usize>],
    per_group: &[usize],
    centers: &[usize],
    g: usize,
    assign: &mut [usize],
    visit: &mut dyn FnMut(&[usize]),
) {
    if g == groups.len() {
        visit(assign);
        return;
    }
    let group = &groups[g];
    let (own, rest) = group.split_at(per_group[g]);
    let s = centers.len();
    let mut choice = vec![0usize; own.len()];
    loop {
        for (&p, &c) in own.iter().zip(&choice) {
            assign[p] = centers[c];
        }
        let cap = vec![rest.len(); s];
        let mut part = vec![0usize; s];
        compositions(rest.len(), &cap, &mut part, 0, &mut |part| {
            let mut it = rest.iter();
            for (slot, &cnt) in part.iter().enumerate() {
                for &p in it.by_ref().take(cnt) {
                    assign[p] = centers[slot];
                }
            }
            assign_groups(groups, per_group, centers, g + 1, assign, visit);
            false
        });
        // odometer over the center points' choices
        let mut t = 0;
        while t < choice.len() {
            choice[t] += 1;
            if choice[t] < s {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
        if t == choice.len() {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_l_community, ColorPattern};

    #[test]
    fn combinations_are_lexicographic() {
        let mut s = vec![0, 1];
        let mut all = vec![s.clone()];
        while next_combination(&mut s, 4) {
            all.push(s.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[5], vec![2, 3]);
    }

    #[test]
    fn routing_respects_reach() {
        let reach = vec![vec![true, false], vec![true, true], vec![false, true]];
        assert!(route_color(&[0, 1, 2], &reach, &[1, 2]).is_some());
        assert!(route_color(&[0, 1, 2], &reach, &[0, 3]).is_none());
        let r = route_color(&[0, 1, 2], &reach, &[2, 1]).unwrap();
        assert_eq!(r, vec![0, 0, 1]);
    }

    #[test]
    fn unconstrained_communities_cost_zero() {
        let inst = gen_l_community(2, 4, 1.0, ColorPattern::Alternating).unwrap();
        assert_eq!(brute_force_opt(&inst, 2, None, None, 0.0).unwrap().cost, 0.0);
    }

    #[test]
    fn limits() {
        let inst = gen_l_community(2, 7, 1.0, ColorPattern::Alternating).unwrap();
        assert!(matches!(
            brute_force_opt(&inst, 2, None, None, 0.0),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_covers_small_case() {
        // 2 communities of 2 identical points: classes are few
        let inst = gen_l_community(2, 2, 1.0, ColorPattern::Alternating).unwrap();
        let mut costs = Vec::new();
        let count = enumerate_solutions(&inst, 2, &mut |s| costs.push(crate::metrics::cost(&inst, s))).unwrap();
        assert!(count > 0);
        assert!(costs.contains(&0.0) && costs.contains(&1.0));
    }
}
