use super::SolverError;
use crate::bounds::DsBounds;
use crate::instance::Instance;
use crate::solution::Solution;

/// Farthest-point-first restricted to colors that keep the quotas reachable.
///
/// A color is pickable when it is below its upper bound and taking it leaves
/// enough free slots for every remaining lower-bound deficit. Up to `k`
/// centers are chosen (fewer if upper bounds run out), then every point goes
/// to its nearest center, so all centers are active.
pub fn alg_ds(inst: &Instance, dsb: &DsBounds) -> Result<Solution, SolverError> {
    dsb.check_instance(inst)?;
    let n = inst.n();
    let k = dsb.k().min(n);
    if k == 0 {
        return Err(SolverError::BadK { k: 0, n });
    }
    let m = inst.m();
    let mut taken = vec![0usize; m];
    let mut chosen = vec![false; n];
    let mut centers = Vec::with_capacity(k);
    let mut gap = vec![f64::INFINITY; n];

    let pickable = |h: usize, taken: &[usize], slots_left: usize| -> bool {
        if taken[h] >= dsb.hi(h) {
            return false;
        }
        let deficit: usize = (0..m)
            .map(|g| {
                let have = taken[g] + usize::from(g == h);
                dsb.lo(g).saturating_sub(have)
            })
            .sum();
        deficit < slots_left
    };

    while centers.len() < k {
        let slots_left = k - centers.len();
        let ok: Vec<bool> = (0..m).map(|h| pickable(h, &taken, slots_left)).collect();
        let mut best = usize::MAX;
        for j in 0..n {
            if !chosen[j] && ok[inst.color(j)] && (best == usize::MAX || gap[j] > gap[best]) {
                best = j;
            }
        }
        if best == usize::MAX {
            break;
        }
        chosen[best] = true;
        taken[inst.color(best)] += 1;
        centers.push(best);
        for (g, &d) in gap.iter_mut().zip(inst.row(best)) {
            *g = g.min(d);
        }
    }
    if let Some(h) = (0..m).find(|&h| taken[h] < dsb.lo(h)) {
        return Err(SolverError::InfeasibleQuota(format!(
            "color {h} got {} of {} centers",
            taken[h],
            dsb.lo(h)
        )));
    }
    Ok(Solution::nearest(inst, centers)?)
}
