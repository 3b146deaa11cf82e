//! Adversarial and random instance families.

use crate::instance::{Instance, InstanceError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("pattern {pattern:?} needs {needs}, got l={l}, size={size}")]
    PatternArity {
        pattern: ColorPattern,
        needs: &'static str,
        l: usize,
        size: usize,
    },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// How colors are laid out over the communities of [`gen_l_community`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColorPattern {
    /// Community `c` is entirely blue (0) when `c` is even, red (1) when odd.
    Alternating,
    /// Like `Alternating`, except the last community is half red, half blue.
    OddMixedLast,
    /// `l - 1` blue communities and a last one split between red (1) and
    /// green (2).
    DsVariant,
}

/// `l` communities of `size` coinciding points each, pairwise at distance `r`.
/// Community `c` holds indices `c*size .. (c+1)*size`.
pub fn gen_l_community(
    l: usize,
    size: usize,
    r: f64,
    pattern: ColorPattern,
) -> Result<Instance, GeneratorError> {
    if l < 2 || size == 0 || !(r > 0.0 && r.is_finite()) {
        return Err(GeneratorError::Parameter(format!(
            "need l >= 2, size >= 1, R > 0; got l={l}, size={size}, R={r}"
        )));
    }
    let mixed_last = matches!(pattern, ColorPattern::OddMixedLast | ColorPattern::DsVariant);
    if mixed_last && size % 2 != 0 {
        return Err(GeneratorError::PatternArity {
            pattern,
            needs: "an even community size",
            l,
            size,
        });
    }
    let n = l * size;
    let mut colors = Vec::with_capacity(n);
    for c in 0..l {
        for t in 0..size {
            let last = c == l - 1;
            let h = match pattern {
                ColorPattern::Alternating => c % 2,
                ColorPattern::OddMixedLast if last => usize::from(t < size / 2),
                ColorPattern::OddMixedLast => c % 2,
                ColorPattern::DsVariant if last => 1 + usize::from(t >= size / 2),
                ColorPattern::DsVariant => 0,
            };
            colors.push(h);
        }
    }
    let m = if pattern == ColorPattern::DsVariant { 3 } else { 2 };
    let dist = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i / size == j / size { 0.0 } else { r })
                .collect()
        })
        .collect();
    Ok(Instance::from_matrix(dist, colors, m)?)
}

/// Two-color star gadget: blue points over `k/2` (floor) locations and red
/// points over `k/2` (ceiling) locations, `group_size` points per color.
///
/// Within a color, location 0 is a hub at distance `R / (4 alpha_ap)` from
/// every other location of that color; any two points of different colors are
/// `R` apart. Points are listed blue first, location by location.
pub fn gen_proportional_gadget(
    k: usize,
    group_size: usize,
    r_big: f64,
    alpha_ap: f64,
) -> Result<Instance, GeneratorError> {
    if k < 5 {
        return Err(GeneratorError::Parameter(format!("need k >= 5, got {k}")));
    }
    if !(r_big > 0.0 && r_big.is_finite()) || !(alpha_ap >= 1.0 && alpha_ap.is_finite()) {
        return Err(GeneratorError::Parameter(format!(
            "need R > 0 and alpha >= 1, got R={r_big}, alpha={alpha_ap}"
        )));
    }
    let locs = [k / 2, k.div_ceil(2)];
    if group_size < locs[1] {
        return Err(GeneratorError::Parameter(format!(
            "group size {group_size} leaves a location empty"
        )));
    }
    let r = r_big / (4.0 * alpha_ap);
    // (color, location) of every point, spreading points evenly
    let mut tag = Vec::with_capacity(2 * group_size);
    for (h, &nl) in locs.iter().enumerate() {
        for loc in 0..nl {
            let count = group_size / nl + usize::from(loc < group_size % nl);
            tag.extend(std::iter::repeat_n((h, loc), count));
        }
    }
    let n = tag.len();
    let dist = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (hi, li) = tag[i];
                    let (hj, lj) = tag[j];
                    if hi != hj {
                        r_big
                    } else if li == lj {
                        0.0
                    } else if li == 0 || lj == 0 {
                        r
                    } else {
                        2.0 * r
                    }
                })
                .collect()
        })
        .collect();
    let colors = tag.iter().map(|t| t.0).collect();
    let inst = Instance::from_matrix(dist, colors, 2)?;
    inst.check_triangle(crate::instance::METRIC_TOL)?;
    Ok(inst)
}

/// Uniform points in `[0,1]^dim` with color counts matching `proportions`
/// by largest remainder; colors are shuffled over the points.
pub fn gen_random(
    n: usize,
    m: usize,
    dim: usize,
    proportions: &[f64],
    seed: u64,
) -> Result<Instance, GeneratorError> {
    if proportions.len() != m || m == 0 || dim == 0 {
        return Err(GeneratorError::Parameter(format!(
            "need m = {} proportions and dim >= 1",
            proportions.len()
        )));
    }
    if proportions.iter().any(|p| !(*p >= 0.0 && p.is_finite())) {
        return Err(GeneratorError::Parameter("negative proportion".into()));
    }
    let total: f64 = proportions.iter().sum();
    if total <= 0.0 {
        return Err(GeneratorError::Parameter("proportions sum to zero".into()));
    }
    let counts = largest_remainder(n, &proportions.iter().map(|p| p / total).collect::<Vec<_>>());
    if counts.contains(&0) {
        return Err(GeneratorError::Parameter(format!(
            "n={n} leaves some color without points"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<usize> = counts
        .iter()
        .enumerate()
        .flat_map(|(h, &c)| std::iter::repeat_n(h, c))
        .collect();
    // Fisher-Yates with the seeded stream
    for i in (1..n).rev() {
        colors.swap(i, rng.gen_range(0..=i));
    }
    let feats = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect();
    Ok(Instance::from_features(feats, colors, m)?)
}

fn largest_remainder(n: usize, shares: &[f64]) -> Vec<usize> {
    let exact: Vec<f64> = shares.iter().map(|s| s * n as f64).collect();
    let mut counts: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut order: Vec<usize> = (0..shares.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let short = n - counts.iter().sum::<usize>();
    for &h in order.iter().take(short) {
        counts[h] += 1;
    }
    counts
}
