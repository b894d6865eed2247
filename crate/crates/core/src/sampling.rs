//! Reproducible rational sample points.
//!
//! Sample `i` depends only on `(seed, i)`: each index gets its own ChaCha
//! stream, so parallel evaluation order never changes the sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::Q;
use num_traits::{One, Zero};

/// Largest numerator magnitude and denominator of random coordinates.
pub const COORD_BOUND: i64 = 100;

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Q {
    let n = rng.gen_range(-COORD_BOUND..=COORD_BOUND);
    let d = rng.gen_range(1..=COORD_BOUND);
    Q::new(n.into(), d.into())
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// Structured points first, then random ones.
#[derive(Clone, Debug)]
pub struct Sampler {
    seed: u64,
    dim: usize,
    structured: Vec<Vec<Q>>,
}

impl Sampler {
    pub fn random_only(seed: u64, dim: usize) -> Self {
        Sampler { seed, dim, structured: Vec::new() }
    }

    /// Standard basis vectors, `e ± e_i`, and the all-ones vector.
    pub fn around(seed: u64, e: &[Q]) -> Self {
        let n = e.len();
        let mut pts = Vec::with_capacity(3 * n + 1);
        for i in 0..n {
            pts.push(unit(n, i));
        }
        for i in 0..n {
            for s in [Q::one(), -Q::one()] {
                let mut v = e.to_vec();
                v[i] += s;
                pts.push(v);
            }
        }
        pts.push(vec![Q::one(); n]);
        Sampler { seed, dim: n, structured: pts }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn point(&self, index: usize) -> Vec<Q> {
        match self.structured.get(index) {
            Some(p) => p.clone(),
            None => random_vector(&mut rng_for(self.seed, index as u64), self.dim),
        }
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}
