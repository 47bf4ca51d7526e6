#![allow(dead_code)]

use capacity_core::{ChannelMatrix, ProbVector};
use rand::Rng;

pub fn random_weights(rng: &mut impl Rng, n: usize, floor: f64) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(floor..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

pub fn random_prob(rng: &mut impl Rng, n: usize) -> ProbVector {
    ProbVector::new(random_weights(rng, n, 0.0)).unwrap()
}

/// Interior point with every entry at least `floor / n`-ish.
pub fn random_interior(rng: &mut impl Rng, n: usize, floor: f64) -> ProbVector {
    ProbVector::new(random_weights(rng, n, floor)).unwrap()
}

pub fn random_channel(rng: &mut impl Rng, n: usize, m: usize, floor: f64) -> ChannelMatrix {
    ChannelMatrix::new((0..n).map(|_| random_weights(rng, m, floor)).collect()).unwrap()
}

/// Random channel with a heavy diagonal, which tends to have a feasible
/// interior optimum.
pub fn dominant_channel(rng: &mut impl Rng, n: usize) -> ChannelMatrix {
    let rows = (0..n)
        .map(|i| {
            let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            w[i] += rng.gen_range(0.5..3.0) * n as f64;
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        })
        .collect();
    ChannelMatrix::new(rows).unwrap()
}

pub fn permute<T: Clone>(v: &[T], perm: &[usize]) -> Vec<T> {
    perm.iter().map(|&i| v[i].clone()).collect()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
