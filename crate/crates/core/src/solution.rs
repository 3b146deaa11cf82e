//! Integral and fractional assignments of points to centers.

use crate::bounds::GfBounds;
use crate::instance::Instance;
use crate::metrics::cluster_violation;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Entries below this value are treated as absent.
pub const SUPPORT_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolutionError {
    #[error("assignment covers {found} points, instance has {expected}")]
    Length { expected: usize, found: usize },
    #[error("solution has no centers")]
    NoCenters,
    #[error("center {0} is out of range")]
    CenterOutOfRange(usize),
    #[error("center {0} is listed twice")]
    DuplicateCenter(usize),
    #[error("point {point} is assigned to {center}, which is not a center")]
    NotACenter { point: usize, center: usize },
    #[error("entry x[{slot}][{point}] = {value} is outside [0, 1]")]
    EntryRange { slot: usize, point: usize, value: f64 },
    #[error("row of point {point} sums to {sum}, expected 1")]
    RowSum { point: usize, sum: f64 },
}

/// A center set together with an explicit point-to-center map.
///
/// `assign[j]` is the point index of the center serving `j`; it always belongs
/// to `centers`. Centers whose cluster is empty are allowed and reported as
/// inactive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    centers: Vec<usize>,
    assign: Vec<usize>,
}

impl Solution {
    pub fn new(centers: Vec<usize>, assign: Vec<usize>, n: usize) -> Result<Self, SolutionError> {
        if assign.len() != n {
            return Err(SolutionError::Length {
                expected: n,
                found: assign.len(),
            });
        }
        let mut is_center = vec![false; n];
        for &c in &centers {
            if c >= n {
                return Err(SolutionError::CenterOutOfRange(c));
            }
            if is_center[c] {
                return Err(SolutionError::DuplicateCenter(c));
            }
            is_center[c] = true;
        }
        for (point, &center) in assign.iter().enumerate() {
            if center >= n || !is_center[center] {
                return Err(SolutionError::NotACenter { point, center });
            }
        }
        Ok(Self { centers, assign })
    }

    /// Every point goes to its nearest center; a center always serves itself.
    /// Ties go to the center listed first.
    pub fn nearest(inst: &Instance, centers: Vec<usize>) -> Result<Self, SolutionError> {
        let n = inst.n();
        if centers.is_empty() {
            return Err(SolutionError::NoCenters);
        }
        let mut assign = vec![usize::MAX; n];
        for &c in &centers {
            if c >= n {
                return Err(SolutionError::CenterOutOfRange(c));
            }
            assign[c] = c;
        }
        for (j, slot) in assign.iter_mut().enumerate() {
            if *slot != usize::MAX {
                continue;
            }
            let mut best = centers[0];
            for &c in &centers[1..] {
                if inst.dist(j, c) < inst.dist(j, best) {
                    best = c;
                }
            }
            *slot = best;
        }
        Self::new(centers, assign, n)
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn center_of(&self, j: usize) -> usize {
        self.assign[j]
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    /// Position of every center in `centers()`, indexed by point.
    fn slots(&self) -> Vec<usize> {
        let mut slot = vec![usize::MAX; self.assign.len()];
        for (s, &c) in self.centers.iter().enumerate() {
            slot[c] = s;
        }
        slot
    }

    /// Members of each cluster, parallel to `centers()`, each ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let slot = self.slots();
        let mut out = vec![Vec::new(); self.centers.len()];
        for (j, &c) in self.assign.iter().enumerate() {
            out[slot[c]].push(j);
        }
        out
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let slot = self.slots();
        let mut sizes = vec![0; self.centers.len()];
        for &c in &self.assign {
            sizes[slot[c]] += 1;
        }
        sizes
    }

    /// Centers with a nonempty cluster, in listing order.
    pub fn active_centers(&self) -> Vec<usize> {
        self.centers
            .iter()
            .zip(self.cluster_sizes())
            .filter(|(_, s)| *s > 0)
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn inactive_centers(&self) -> Vec<usize> {
        self.centers
            .iter()
            .zip(self.cluster_sizes())
            .filter(|(_, s)| *s == 0)
            .map(|(&c, _)| c)
            .collect()
    }

    /// The same assignment with empty clusters dropped.
    pub fn without_inactive(&self) -> Self {
        Self {
            centers: self.active_centers(),
            assign: self.assign.clone(),
        }
    }
}

/// Fractional assignment `x[i][j]` of points `j` to the centers of a fixed
/// center list, stored per point as `(slot, value)` pairs sorted by slot.
///
/// Each point's row sums to one; absent entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalAssignment {
    centers: Vec<usize>,
    rows: Vec<Vec<(usize, f64)>>,
}

impl FractionalAssignment {
    /// Strict constructor: entries must lie in `[-1e-12, 1 + 1e-12]` (then
    /// clamped) and every row must sum to 1 within 1e-9.
    pub fn new(centers: Vec<usize>, rows: Vec<Vec<(usize, f64)>>) -> Result<Self, SolutionError> {
        let mut clean = Vec::with_capacity(rows.len());
        for (point, row) in rows.into_iter().enumerate() {
            let mut out: Vec<(usize, f64)> = Vec::with_capacity(row.len());
            for (slot, value) in row {
                if slot >= centers.len() {
                    return Err(SolutionError::CenterOutOfRange(slot));
                }
                if !(-1e-12..=1.0 + 1e-12).contains(&value) {
                    return Err(SolutionError::EntryRange { slot, point, value });
                }
                let v = value.clamp(0.0, 1.0);
                if v > 0.0 {
                    out.push((slot, v));
                }
            }
            out.sort_by_key(|e| e.0);
            if out.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(SolutionError::DuplicateCenter(centers[out[0].0]));
            }
            let sum: f64 = out.iter().map(|e| e.1).sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(SolutionError::RowSum { point, sum });
            }
            clean.push(out);
        }
        Ok(Self {
            centers,
            rows: clean,
        })
    }

    /// Cleans raw solver output: clamps to `[0,1]`, drops entries below
    /// [`SUPPORT_EPS`] and rescales every row to sum to one.
    pub fn from_raw(
        centers: Vec<usize>,
        rows: Vec<Vec<(usize, f64)>>,
    ) -> Result<Self, SolutionError> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(point, row)| {
                let kept: Vec<(usize, f64)> = row
                    .into_iter()
                    .map(|(s, v)| (s, v.clamp(0.0, 1.0)))
                    .filter(|e| e.1 >= SUPPORT_EPS)
                    .collect();
                let sum: f64 = kept.iter().map(|e| e.1).sum();
                if sum <= 0.0 {
                    return Err(SolutionError::RowSum { point, sum });
                }
                Ok(kept.into_iter().map(|(s, v)| (s, v / sum)).collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(centers, rows)
    }

    /// The 0/1 assignment matrix of an integral solution.
    pub fn from_solution(sol: &Solution) -> Self {
        let slot = sol.slots();
        let rows = sol.assign.iter().map(|&c| vec![(slot[c], 1.0)]).collect();
        Self {
            centers: sol.centers.clone(),
            rows,
        }
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Nonzero entries of point `j`.
    pub fn row(&self, j: usize) -> &[(usize, f64)] {
        &self.rows[j]
    }

    pub fn value(&self, slot: usize, j: usize) -> f64 {
        self.rows[j]
            .iter()
            .find(|e| e.0 == slot)
            .map_or(0.0, |e| e.1)
    }

    /// Total mass per center slot and mass per `(slot, color)`.
    pub fn masses(&self, inst: &Instance) -> (Vec<f64>, Vec<Vec<f64>>) {
        let mut total = vec![0.0; self.centers.len()];
        let mut by_color = vec![vec![0.0; inst.m()]; self.centers.len()];
        for (j, row) in self.rows.iter().enumerate() {
            let h = inst.color(j);
            for &(s, v) in row {
                total[s] += v;
                by_color[s][h] += v;
            }
        }
        (total, by_color)
    }

    /// Fractional additive GF violation.
    pub fn gf_violation(&self, inst: &Instance, gfb: &GfBounds) -> f64 {
        let (total, by_color) = self.masses(inst);
        total
            .iter()
            .zip(&by_color)
            .map(|(&t, c)| cluster_violation(c, t, gfb))
            .fold(0.0, f64::max)
    }

    /// Largest `d(center, j)` over the support.
    pub fn support_radius(&self, inst: &Instance) -> f64 {
        let mut r: f64 = 0.0;
        for (j, row) in self.rows.iter().enumerate() {
            for &(s, _) in row {
                r = r.max(inst.dist(self.centers[s], j));
            }
        }
        r
    }
}
