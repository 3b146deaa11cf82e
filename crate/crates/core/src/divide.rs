//! Splitting one cluster among several of its own points.

use crate::instance::Instance;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DivideError {
    #[error("empty cluster")]
    EmptyCluster,
    #[error("no sub-centers given")]
    EmptySubset,
    #[error("sub-center {0} is neither in the cluster nor its center")]
    NotInCluster(usize),
    #[error("sub-center {0} is listed twice")]
    Duplicate(usize),
    #[error("{centers} sub-centers for a cluster of {points} points")]
    TooManyCenters { centers: usize, points: usize },
}

/// Per-color shares of a division among `q` centers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionPlan {
    /// `counts[c][h]`: points of color `h` given to the `c`-th center.
    pub counts: Vec<Vec<usize>>,
    /// Center at which the walk for each color started.
    pub starts: Vec<usize>,
}

impl DivisionPlan {
    /// Walks colors in ascending order; each color starts at the shared
    /// pointer, which advances only when a center receives the ceiling share.
    pub fn new(color_counts: &[usize], q: usize) -> Self {
        assert!(q > 0, "division needs at least one center");
        let mut counts = vec![vec![0; color_counts.len()]; q];
        let mut first_index = 0;
        let mut starts = Vec::with_capacity(color_counts.len());
        for (h, &total) in color_counts.iter().enumerate() {
            starts.push(first_index);
            let floor = total / q;
            let mut extra = total - q * floor;
            let mut c = first_index;
            for _ in 0..q {
                counts[c][h] = if extra > 0 {
                    extra -= 1;
                    first_index = (first_index + 1) % q;
                    floor + 1
                } else {
                    floor
                };
                c = (c + 1) % q;
            }
        }
        Self { counts, starts }
    }

    pub fn totals(&self) -> Vec<usize> {
        self.counts.iter().map(|c| c.iter().sum()).collect()
    }
}

/// Assigns every point of `cluster` to one of `subcenters`.
///
/// Returns `(point, sub-center)` pairs in ascending point order. Within a
/// color, points are handed out in ascending index following the
/// [`DivisionPlan`] for the cluster's color counts. `subcenters` may include
/// `center` even when the center lies outside `cluster`.
pub fn divide(
    inst: &Instance,
    cluster: &[usize],
    center: usize,
    subcenters: &[usize],
) -> Result<Vec<(usize, usize)>, DivideError> {
    if cluster.is_empty() {
        return Err(DivideError::EmptyCluster);
    }
    if subcenters.is_empty() {
        return Err(DivideError::EmptySubset);
    }
    let mut points = cluster.to_vec();
    points.sort_unstable();
    points.dedup();
    if subcenters.len() > points.len() {
        return Err(DivideError::TooManyCenters {
            centers: subcenters.len(),
            points: points.len(),
        });
    }
    for (t, &s) in subcenters.iter().enumerate() {
        if subcenters[..t].contains(&s) {
            return Err(DivideError::Duplicate(s));
        }
        if s != center && points.binary_search(&s).is_err() {
            return Err(DivideError::NotInCluster(s));
        }
    }
    if subcenters.len() == 1 {
        return Ok(points.into_iter().map(|j| (j, subcenters[0])).collect());
    }

    let mut by_color = vec![Vec::new(); inst.m()];
    for &j in &points {
        by_color[inst.color(j)].push(j);
    }
    let color_counts: Vec<usize> = by_color.iter().map(Vec::len).collect();
    let plan = DivisionPlan::new(&color_counts, subcenters.len());

    let mut out = Vec::with_capacity(points.len());
    let q = subcenters.len();
    for (h, members) in by_color.iter().enumerate() {
        let mut next = members.iter();
        for step in 0..q {
            let c = (plan.starts[h] + step) % q;
            for &j in next.by_ref().take(plan.counts[c][h]) {
                out.push((j, subcenters[c]));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
