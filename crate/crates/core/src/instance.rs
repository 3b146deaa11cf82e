//! Point sets with a (pseudo)metric and one color per point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance used for symmetry and triangle-inequality checks.
pub const METRIC_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("instance has no points")]
    Empty,
    #[error("expected {expected} entries, found {found} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("distance d({i},{j}) = {value} is negative or not finite")]
    BadDistance { i: usize, j: usize, value: f64 },
    #[error("distance matrix is not symmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },
    #[error("distance d({i},{i}) is not zero")]
    NonZeroDiagonal { i: usize },
    #[error("point {point} has color {color} but only {m} colors exist")]
    ColorOutOfRange { point: usize, color: usize, m: usize },
    #[error("color {color} has no points")]
    MissingColor { color: usize },
    #[error("triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    Triangle { i: usize, j: usize, k: usize },
    #[error("feature vector {point} has dimension {found}, expected {expected}")]
    FeatureDimension {
        point: usize,
        expected: usize,
        found: usize,
    },
}

/// A clustering instance: `n` points, an `n x n` distance matrix and a color
/// index in `0..m` for every point.
///
/// Distinct points may coincide (distance 0). Every color in `0..m` owns at
/// least one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    m: usize,
    dist: Vec<f64>,
    colors: Vec<usize>,
    features: Option<Vec<Vec<f64>>>,
}

/// On-disk explicit-matrix representation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    pub m: usize,
    pub colors: Vec<usize>,
    pub dist: Vec<Vec<f64>>,
}

impl Instance {
    /// Builds an instance from an explicit distance matrix.
    pub fn from_matrix(
        dist: Vec<Vec<f64>>,
        colors: Vec<usize>,
        m: usize,
    ) -> Result<Self, InstanceError> {
        let n = colors.len();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        if dist.len() != n {
            return Err(InstanceError::DimensionMismatch {
                what: "distance rows",
                expected: n,
                found: dist.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &dist {
            if row.len() != n {
                return Err(InstanceError::DimensionMismatch {
                    what: "distance columns",
                    expected: n,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        for i in 0..n {
            for j in 0..n {
                let v = flat[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(InstanceError::BadDistance { i, j, value: v });
                }
            }
            if flat[i * n + i] != 0.0 {
                return Err(InstanceError::NonZeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (flat[i * n + j] - flat[j * n + i]).abs() > METRIC_TOL {
                    return Err(InstanceError::Asymmetric { i, j });
                }
                // store an exactly symmetric matrix
                flat[j * n + i] = flat[i * n + j];
            }
        }
        Self::assemble(n, m, flat, colors, None)
    }

    /// Builds an instance from feature vectors using Euclidean distances.
    pub fn from_features(
        features: Vec<Vec<f64>>,
        colors: Vec<usize>,
        m: usize,
    ) -> Result<Self, InstanceError> {
        let n = colors.len();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        if features.len() != n {
            return Err(InstanceError::DimensionMismatch {
                what: "feature vectors",
                expected: n,
                found: features.len(),
            });
        }
        let dim = features[0].len();
        for (point, f) in features.iter().enumerate() {
            if f.len() != dim {
                return Err(InstanceError::FeatureDimension {
                    point,
                    expected: dim,
                    found: f.len(),
                });
            }
        }
        let mut flat = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = features[i]
                    .iter()
                    .zip(&features[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                if !d.is_finite() {
                    return Err(InstanceError::BadDistance { i, j, value: d });
                }
                flat[i * n + j] = d;
                flat[j * n + i] = d;
            }
        }
        Self::assemble(n, m, flat, colors, Some(features))
    }

    fn assemble(
        n: usize,
        m: usize,
        dist: Vec<f64>,
        colors: Vec<usize>,
        features: Option<Vec<Vec<f64>>>,
    ) -> Result<Self, InstanceError> {
        let mut seen = vec![false; m];
        for (point, &color) in colors.iter().enumerate() {
            if color >= m {
                return Err(InstanceError::ColorOutOfRange { point, color, m });
            }
            seen[color] = true;
        }
        if let Some(color) = seen.iter().position(|s| !s) {
            return Err(InstanceError::MissingColor { color });
        }
        Ok(Self {
            n,
            m,
            dist,
            colors,
            features,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of colors.
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Row `i` of the distance matrix.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn color(&self, j: usize) -> usize {
        self.colors[j]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn features(&self) -> Option<&[Vec<f64>]> {
        self.features.as_deref()
    }

    /// Number of points of each color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.m];
        for &c in &self.colors {
            counts[c] += 1;
        }
        counts
    }

    /// Global proportion `n_h / n` of each color.
    pub fn proportions(&self) -> Vec<f64> {
        self.color_counts()
            .into_iter()
            .map(|c| c as f64 / self.n as f64)
            .collect()
    }

    /// Points of color `h`, ascending.
    pub fn points_of_color(&self, h: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.colors[j] == h).collect()
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Checks the triangle inequality over all triples (O(n^3)).
    pub fn check_triangle(&self, tol: f64) -> Result<(), InstanceError> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let dij = self.dist(i, j);
                for k in 0..n {
                    if self.dist(i, k) > dij + self.dist(j, k) + tol {
                        return Err(InstanceError::Triangle { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_matrix_file(&self) -> MatrixFile {
        MatrixFile {
            n: self.n,
            m: self.m,
            colors: self.colors.clone(),
            dist: (0..self.n).map(|i| self.row(i).to_vec()).collect(),
        }
    }

    pub fn from_matrix_file(file: MatrixFile) -> Result<Self, InstanceError> {
        if file.colors.len() != file.n {
            return Err(InstanceError::DimensionMismatch {
                what: "colors",
                expected: file.n,
                found: file.colors.len(),
            });
        }
        Self::from_matrix(file.dist, file.colors, file.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_is_symmetric_with_zero_diagonal() {
        let inst = Instance::from_features(
            vec![vec![0.0, 0.0], vec![3.0, 4.0], vec![1.0, 1.0]],
            vec![0, 1, 0],
            2,
        )
        .unwrap();
        assert_eq!(inst.dist(0, 1), 5.0);
        assert_eq!(inst.dist(1, 0), 5.0);
        assert_eq!(inst.dist(2, 2), 0.0);
        assert!(inst.check_triangle(METRIC_TOL).is_ok());
        assert_eq!(inst.color_counts(), vec![2, 1]);
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let err = Instance::from_matrix(
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
            vec![0, 1],
            2,
        )
        .unwrap_err();
        assert_eq!(err, InstanceError::Asymmetric { i: 0, j: 1 });
    }

    #[test]
    fn rejects_missing_color_and_bad_diagonal() {
        let err = Instance::from_matrix(vec![vec![0.0]], vec![0], 2).unwrap_err();
        assert_eq!(err, InstanceError::MissingColor { color: 1 });
        let err =
            Instance::from_matrix(vec![vec![1.0, 1.0], vec![1.0, 0.0]], vec![0, 1], 2)
                .unwrap_err();
        assert_eq!(err, InstanceError::NonZeroDiagonal { i: 0 });
    }

    #[test]
    fn coinciding_points_are_allowed() {
        let inst = Instance::from_matrix(
            vec![
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0],
            ],
            vec![0, 1, 0],
            2,
        )
        .unwrap();
        assert!(inst.check_triangle(METRIC_TOL).is_ok());
    }

    #[test]
    fn detects_triangle_violation() {
        let inst = Instance::from_matrix(
            vec![
                vec![0.0, 1.0, 5.0],
                vec![1.0, 0.0, 1.0],
                vec![5.0, 1.0, 0.0],
            ],
            vec![0, 1, 0],
            2,
        )
        .unwrap();
        assert!(matches!(
            inst.check_triangle(METRIC_TOL),
            Err(InstanceError::Triangle { .. })
        ));
    }
}
