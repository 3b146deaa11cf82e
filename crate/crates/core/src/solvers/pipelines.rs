use super::{assignment_gf, SolverError};
use crate::bounds::{DsBounds, GfBounds};
use crate::divide::divide;
use crate::instance::Instance;
use crate::metrics::cost;
use crate::solution::Solution;

/// Result of a post-processing pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PostProcessed {
    pub solution: Solution,
    /// Cost of the solution that was divided: the input for the GF route,
    /// the fair re-assignment for the DS route.
    pub base_cost: f64,
    /// Centers dropped because their cluster was empty.
    pub dropped: Vec<usize>,
    /// Points promoted to centers to fill quotas.
    pub added: Vec<usize>,
}

/// One cluster under post-processing: its original center, members and the
/// sub-centers chosen so far.
struct Part {
    center: usize,
    members: Vec<usize>,
    sub: Vec<usize>,
}

/// Promotes points until every color reaches its lower bound.
///
/// The lowest deficit color goes first. Its new center comes from the largest
/// cluster (then lowest center index) holding a point of that color that is
/// not yet a center, provided the cluster can still give every sub-center a
/// point; within the cluster the lowest such point is taken.
fn fill_quotas(
    inst: &Instance,
    parts: &mut [Part],
    taken: &mut [usize],
    dsb: &DsBounds,
) -> Result<Vec<usize>, SolverError> {
    let mut is_center = vec![false; inst.n()];
    for p in parts.iter() {
        for &s in &p.sub {
            is_center[s] = true;
        }
    }
    let mut added = Vec::new();
    while let Some(h) = (0..inst.m()).find(|&h| taken[h] < dsb.lo(h)) {
        let mut pick: Option<(usize, usize)> = None;
        for (t, p) in parts.iter().enumerate() {
            if p.sub.len() >= p.members.len() {
                continue;
            }
            let Some(&j) = p
                .members
                .iter()
                .find(|&&j| inst.color(j) == h && !is_center[j])
            else {
                continue;
            };
            let better = match pick {
                None => true,
                Some((bt, _)) => {
                    let b = &parts[bt];
                    p.members.len() > b.members.len()
                        || (p.members.len() == b.members.len() && p.center < b.center)
                }
            };
            if better {
                pick = Some((t, j));
            }
        }
        let (t, j) = pick.ok_or(SolverError::QuotaUnreachable { color: h })?;
        parts[t].sub.push(j);
        is_center[j] = true;
        taken[h] += 1;
        added.push(j);
    }
    Ok(added)
}

fn assemble(inst: &Instance, parts: &[Part], k: usize) -> Result<Solution, SolverError> {
    let used: usize = parts.iter().map(|p| p.sub.len()).sum();
    if used > k {
        return Err(SolverError::BudgetExceeded { used, k });
    }
    let mut assign = vec![usize::MAX; inst.n()];
    let mut centers = Vec::with_capacity(used);
    for p in parts {
        for (j, c) in divide(inst, &p.members, p.center, &p.sub)? {
            assign[j] = c;
        }
        centers.extend_from_slice(&p.sub);
    }
    Ok(Solution::new(centers, assign, inst.n())?)
}

fn parts_of(sol: &Solution) -> Vec<Part> {
    sol.centers()
        .iter()
        .zip(sol.clusters())
        .filter(|(_, members)| !members.is_empty())
        .map(|(&center, members)| Part {
            center,
            members,
            sub: Vec::new(),
        })
        .collect()
}

/// Turns a quota-respecting solution into one that also meets the group
/// proportions up to an additive violation of 3.
///
/// The centers are re-assigned fairly, empty clusters are dropped, quotas
/// broken by the drop are refilled from the remaining clusters, and each
/// cluster is split among its centers.
pub fn ds_to_gfds(
    inst: &Instance,
    ds_sol: &Solution,
    gfb: &GfBounds,
    dsb: &DsBounds,
) -> Result<PostProcessed, SolverError> {
    dsb.check_instance(inst)?;
    let fair = assignment_gf(inst, ds_sol.centers(), gfb)?.solution;
    let dropped = fair.inactive_centers();
    let mut parts = parts_of(&fair);
    let mut taken = vec![0; inst.m()];
    for p in &mut parts {
        p.sub.push(p.center);
        taken[inst.color(p.center)] += 1;
    }
    let added = fill_quotas(inst, &mut parts, &mut taken, dsb)?;
    Ok(PostProcessed {
        solution: assemble(inst, &parts, dsb.k())?,
        base_cost: cost(inst, &fair),
        dropped,
        added,
    })
}

/// Matches clusters to lower-bound slots (`lo(h)` slots for color `h`) so
/// that as many slots as possible are filled by a cluster containing that
/// color. Clusters are tried in order and colors ascending, with augmenting
/// paths to move earlier clusters when that frees a slot.
fn cover_lower_bounds(present: &[Vec<bool>], dsb: &DsBounds) -> Vec<Option<usize>> {
    fn augment(
        t: usize,
        present: &[Vec<bool>],
        dsb: &DsBounds,
        color_of: &mut [Option<usize>],
        used: &mut [usize],
        seen: &mut [bool],
    ) -> bool {
        // a free slot first, so earlier clusters keep their choice
        if let Some(h) = (0..used.len()).find(|&h| present[t][h] && !seen[h] && used[h] < dsb.lo(h)) {
            seen[h] = true;
            used[h] += 1;
            color_of[t] = Some(h);
            return true;
        }
        for h in 0..used.len() {
            if !present[t][h] || seen[h] {
                continue;
            }
            seen[h] = true;
            for u in 0..color_of.len() {
                // u moves to another color and hands h over to t
                if color_of[u] == Some(h) && augment(u, present, dsb, color_of, used, seen) {
                    color_of[t] = Some(h);
                    return true;
                }
            }
        }
        false
    }

    let mut color_of = vec![None; present.len()];
    let mut used = vec![0; dsb.num_colors()];
    for t in 0..present.len() {
        let mut seen = vec![false; used.len()];
        augment(t, present, dsb, &mut color_of, &mut used, &mut seen);
    }
    color_of
}

/// Turns a group-fair solution into one that also meets the center quotas,
/// with an additive proportion violation of at most 2 more than the input's
/// share per sub-center.
///
/// Each nonempty cluster first elects one of its own points as center. Its
/// color comes from a maximum matching of clusters to lower-bound slots;
/// unmatched clusters take the lowest present color with room under its
/// upper bound. The old center is kept when it has the chosen color.
/// Remaining deficits are filled as in [`ds_to_gfds`].
pub fn gf_to_gfds(
    inst: &Instance,
    gf_sol: &Solution,
    gfb: &GfBounds,
    dsb: &DsBounds,
) -> Result<PostProcessed, SolverError> {
    gfb.check_instance(inst)?;
    dsb.check_instance(inst)?;
    let dropped = gf_sol.inactive_centers();
    let mut parts = parts_of(gf_sol);
    if parts.len() > dsb.k() {
        return Err(SolverError::BudgetExceeded {
            used: parts.len(),
            k: dsb.k(),
        });
    }
    let present: Vec<Vec<bool>> = parts
        .iter()
        .map(|p| {
            let mut seen = vec![false; inst.m()];
            for &j in &p.members {
                seen[inst.color(j)] = true;
            }
            seen
        })
        .collect();
    let mut color_of = cover_lower_bounds(&present, dsb);
    let mut taken = vec![0; inst.m()];
    for h in color_of.iter().flatten() {
        taken[*h] += 1;
    }
    for (t, p) in parts.iter_mut().enumerate() {
        let h = match color_of[t] {
            Some(h) => h,
            None => {
                let h = (0..inst.m())
                    .find(|&h| present[t][h] && taken[h] < dsb.hi(h))
                    .ok_or(SolverError::MissingColorInCluster { center: p.center })?;
                taken[h] += 1;
                color_of[t] = Some(h);
                h
            }
        };
        let own = inst.color(p.center) == h && p.members.binary_search(&p.center).is_ok();
        let elected = if own {
            p.center
        } else {
            *p.members.iter().find(|&&j| inst.color(j) == h).expect("color is present")
        };
        p.sub.push(elected);
    }
    let added = fill_quotas(inst, &mut parts, &mut taken, dsb)?;
    Ok(PostProcessed {
        solution: assemble(inst, &parts, dsb.k())?,
        base_cost: cost(inst, gf_sol),
        dropped,
        added,
    })
}
