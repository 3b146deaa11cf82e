//! Proportion bounds for clusters and count bounds for selected centers.

use crate::instance::Instance;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("bounds cover {found} colors, instance has {expected}")]
    ColorCount { expected: usize, found: usize },
    #[error("color {color}: need 0 < beta <= alpha <= 1, got beta={beta}, alpha={alpha}")]
    Proportion { color: usize, beta: f64, alpha: f64 },
    #[error("color {color}: lower center bound {lo} exceeds upper bound {hi}")]
    CountOrder { color: usize, lo: usize, hi: usize },
    #[error("lower center bounds sum to {sum}, more than the budget k={k}")]
    Budget { sum: usize, k: usize },
    #[error("color {color} needs {needed} centers but has only {available} points")]
    Supply {
        color: usize,
        needed: usize,
        available: usize,
    },
    #[error("parameter {name}={value} outside [0, 1]")]
    Parameter { name: &'static str, value: f64 },
}

/// Per-color lower/upper proportions `beta_h <= |C_i^h| / |C_i| <= alpha_h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GfBounds {
    beta: Vec<f64>,
    alpha: Vec<f64>,
}

impl GfBounds {
    pub fn new(beta: Vec<f64>, alpha: Vec<f64>) -> Result<Self, BoundsError> {
        if beta.len() != alpha.len() {
            return Err(BoundsError::ColorCount {
                expected: beta.len(),
                found: alpha.len(),
            });
        }
        for (color, (&b, &a)) in beta.iter().zip(&alpha).enumerate() {
            let ok = b.is_finite() && a.is_finite() && b > 0.0 && b <= a && a <= 1.0;
            if !ok {
                return Err(BoundsError::Proportion {
                    color,
                    beta: b,
                    alpha: a,
                });
            }
        }
        Ok(Self { beta, alpha })
    }

    /// The same `(beta, alpha)` pair for all `m` colors.
    pub fn uniform(m: usize, beta: f64, alpha: f64) -> Result<Self, BoundsError> {
        Self::new(vec![beta; m], vec![alpha; m])
    }

    /// `beta_h = (1 - delta) r_h`, `alpha_h = (1 + delta) r_h` where `r_h` is the
    /// global proportion of color `h`. `alpha_h` is capped at 1, which leaves
    /// the constraint unchanged since a cluster never holds more than itself.
    pub fn from_delta(inst: &Instance, delta: f64) -> Result<Self, BoundsError> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(BoundsError::Parameter {
                name: "delta",
                value: delta,
            });
        }
        let r = inst.proportions();
        let beta = r.iter().map(|r| (1.0 - delta) * r).collect();
        let alpha = r.iter().map(|r| ((1.0 + delta) * r).min(1.0)).collect();
        Self::new(beta, alpha)
    }

    pub fn num_colors(&self) -> usize {
        self.beta.len()
    }

    #[inline]
    pub fn beta(&self, h: usize) -> f64 {
        self.beta[h]
    }

    #[inline]
    pub fn alpha(&self, h: usize) -> f64 {
        self.alpha[h]
    }

    pub fn check_instance(&self, inst: &Instance) -> Result<(), BoundsError> {
        if self.num_colors() != inst.m() {
            return Err(BoundsError::ColorCount {
                expected: inst.m(),
                found: self.num_colors(),
            });
        }
        Ok(())
    }
}

/// Per-color bounds on the number of (active) centers, with a total budget `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DsBounds {
    k_lo: Vec<usize>,
    k_hi: Vec<usize>,
    k: usize,
}

impl DsBounds {
    pub fn new(k_lo: Vec<usize>, k_hi: Vec<usize>, k: usize) -> Result<Self, BoundsError> {
        if k_lo.len() != k_hi.len() {
            return Err(BoundsError::ColorCount {
                expected: k_lo.len(),
                found: k_hi.len(),
            });
        }
        for (color, (&lo, &hi)) in k_lo.iter().zip(&k_hi).enumerate() {
            if lo > hi {
                return Err(BoundsError::CountOrder { color, lo, hi });
            }
        }
        let sum: usize = k_lo.iter().sum();
        if sum > k {
            return Err(BoundsError::Budget { sum, k });
        }
        Ok(Self { k_lo, k_hi, k })
    }

    /// No per-color requirement: `k_lo = 0`, `k_hi = k`.
    pub fn unconstrained(m: usize, k: usize) -> Self {
        Self {
            k_lo: vec![0; m],
            k_hi: vec![k; m],
            k,
        }
    }

    /// `k_lo_h = ceil(theta r_h k)` and `k_hi_h = k`.
    pub fn from_theta(inst: &Instance, k: usize, theta: f64) -> Result<Self, BoundsError> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(BoundsError::Parameter {
                name: "theta",
                value: theta,
            });
        }
        let n = inst.n() as f64;
        let k_lo = inst
            .color_counts()
            .into_iter()
            .map(|nh| ceil_snapped(theta * nh as f64 * k as f64 / n))
            .collect();
        let dsb = Self::new(k_lo, vec![k; inst.m()], k)?;
        dsb.check_instance(inst)?;
        Ok(dsb)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_colors(&self) -> usize {
        self.k_lo.len()
    }

    #[inline]
    pub fn lo(&self, h: usize) -> usize {
        self.k_lo[h]
    }

    #[inline]
    pub fn hi(&self, h: usize) -> usize {
        self.k_hi[h]
    }

    pub fn lower(&self) -> &[usize] {
        &self.k_lo
    }

    pub fn upper(&self) -> &[usize] {
        &self.k_hi
    }

    /// Every color must have enough points to meet its lower bound.
    pub fn check_instance(&self, inst: &Instance) -> Result<(), BoundsError> {
        if self.num_colors() != inst.m() {
            return Err(BoundsError::ColorCount {
                expected: inst.m(),
                found: self.num_colors(),
            });
        }
        for (color, available) in inst.color_counts().into_iter().enumerate() {
            if available < self.k_lo[color] {
                return Err(BoundsError::Supply {
                    color,
                    needed: self.k_lo[color],
                    available,
                });
            }
        }
        Ok(())
    }
}

/// Ceiling that treats values within 1e-9 of an integer as that integer.
pub(crate) fn ceil_snapped(v: f64) -> usize {
    let r = v.round();
    let c = if (v - r).abs() <= 1e-9 { r } else { v.ceil() };
    c.max(0.0) as usize
}
