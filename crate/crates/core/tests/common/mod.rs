#![allow(dead_code)]

use fairkc::instance::Instance;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random points in the unit square; every color in `0..m` appears.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    assert!(n >= m);
    let mut colors: Vec<usize> = (0..n).map(|j| if j < m { j } else { rng.gen_range(0..m) }).collect();
    colors.shuffle(rng);
    let feats = (0..n)
        .map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()])
        .collect();
    Instance::from_features(feats, colors, m).unwrap()
}

/// Colors drawn close to the given weights by largest remainder, shuffled.
pub fn weighted_instance(rng: &mut ChaCha8Rng, n: usize, weights: &[f64]) -> Instance {
    let m = weights.len();
    let total: f64 = weights.iter().sum();
    let mut counts: Vec<usize> = weights.iter().map(|w| ((w / total) * n as f64).floor() as usize).collect();
    let mut h = 0;
    while counts.iter().sum::<usize>() < n {
        counts[h % m] += 1;
        h += 1;
    }
    for h in 0..m {
        if counts[h] == 0 {
            let donor = (0..m).max_by_key(|&g| counts[g]).unwrap();
            counts[donor] -= 1;
            counts[h] += 1;
        }
    }
    let mut colors: Vec<usize> = counts
        .iter()
        .enumerate()
        .flat_map(|(h, &c)| std::iter::repeat_n(h, c))
        .collect();
    colors.shuffle(rng);
    let feats = (0..n)
        .map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()])
        .collect();
    Instance::from_features(feats, colors, m).unwrap()
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn floor_ceil(v: f64) -> (f64, f64) {
    let r = v.round();
    if (v - r).abs() <= 1e-7 {
        (r, r)
    } else {
        (v.floor(), v.ceil())
    }
}
