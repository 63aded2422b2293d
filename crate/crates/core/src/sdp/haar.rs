//! Haar-random pure states on the which-path space.
//!
//! The stream is ChaCha20 seeded from a 64-bit integer; each amplitude is a
//! standard complex Gaussian from one Box-Muller pair. Drawing n states is a
//! prefix of drawing m > n states with the same seed.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::basis::TwoQubit;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarStateSample {
    pub seed: u64,
    pub states: Vec<TwoQubit>,
}

impl HaarStateSample {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The first `n` states, identical to sampling `n` with the same seed.
    pub fn prefix(&self, n: usize) -> Self {
        Self { seed: self.seed, states: self.states[..n.min(self.states.len())].to_vec() }
    }

    /// A sample with no states, for programs without positivity cones.
    pub fn empty(seed: u64) -> Self {
        Self { seed, states: Vec::new() }
    }
}

fn box_muller(rng: &mut ChaCha20Rng) -> Complex64 {
    // u1 in (0, 1] keeps the logarithm finite.
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    Complex64::new(r * c, r * s)
}

pub fn sample_haar_states(seed: u64, n: usize) -> Result<HaarStateSample> {
    if n == 0 {
        return Err(Error::InvalidInput("number of sampled states must be at least 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut states = Vec::with_capacity(n);
    while states.len() < n {
        let v: TwoQubit = std::array::from_fn(|_| box_muller(&mut rng));
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            states.push(v.map(|z| z / norm));
        }
    }
    Ok(HaarStateSample { seed, states })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_norm_and_distinct() {
        let s = sample_haar_states(7, 3).unwrap();
        assert_eq!(s.len(), 3);
        for v in &s.states {
            let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
        assert_ne!(s.states[0], s.states[1]);
        assert_ne!(s.states[1], s.states[2]);
    }

    #[test]
    fn deterministic_and_nested() {
        let a = sample_haar_states(DEFAULT_SEED, 50).unwrap();
        assert_eq!(a, sample_haar_states(DEFAULT_SEED, 50).unwrap());
        assert_eq!(a.prefix(10), sample_haar_states(DEFAULT_SEED, 10).unwrap());
        assert_ne!(a, sample_haar_states(DEFAULT_SEED + 1, 50).unwrap());
        assert!(sample_haar_states(1, 0).is_err());
    }

    #[test]
    fn first_moment() {
        let s = sample_haar_states(DEFAULT_SEED, 100_000).unwrap();
        let mean = s.states.iter().map(|v| v[0].norm_sqr()).sum::<f64>() / s.len() as f64;
        assert!((mean - 0.25).abs() < 0.01, "{mean}");
    }
}
