use super::SolverError;
use crate::instance::Instance;
use crate::solution::Solution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Farthest-point-first k-center with nearest-center assignment.
///
/// The first center is point 0, or a point drawn from `seed` when given.
/// Later picks take the point farthest from the chosen set, ties going to the
/// lowest index.
pub fn gonzalez(inst: &Instance, k: usize, seed: Option<u64>) -> Result<Solution, SolverError> {
    let n = inst.n();
    if k == 0 || k > n {
        return Err(SolverError::BadK { k, n });
    }
    let first = match seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s).gen_range(0..n),
        None => 0,
    };
    let mut centers = vec![first];
    let mut chosen = vec![false; n];
    chosen[first] = true;
    let mut gap: Vec<f64> = inst.row(first).to_vec();
    while centers.len() < k {
        let mut best = usize::MAX;
        for j in 0..n {
            if !chosen[j] && (best == usize::MAX || gap[j] > gap[best]) {
                best = j;
            }
        }
        chosen[best] = true;
        centers.push(best);
        for (g, &d) in gap.iter_mut().zip(inst.row(best)) {
            *g = g.min(d);
        }
    }
    Ok(Solution::nearest(inst, centers)?)
}
