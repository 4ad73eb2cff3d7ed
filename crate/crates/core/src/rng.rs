//! Counter-based random streams.
//!
//! Every draw is addressed by `(seed, domain, index)`: the ChaCha key is built
//! from the seed and the domain tag, and the index selects the stream. Results
//! therefore do not depend on evaluation order, which keeps parallel sampling
//! reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::scalar::Scalar;
use crate::vector::Vector;

/// Separates the streams of unrelated consumers that share a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Tensor = 1,
    Direction = 2,
    EigenspaceProbe = 3,
    Rotation = 4,
    Corpus = 5,
}

pub fn stream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(domain as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

pub fn uniform_symmetric<S: Scalar>(rng: &mut impl Rng, half_width: S) -> S {
    let u: f64 = rng.random();
    half_width * S::lit(2.0 * u - 1.0)
}

pub fn standard_normal<S: Scalar>(rng: &mut impl Rng) -> S {
    S::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Normalized Gaussian draw; redraws in the (measure-zero) zero case.
pub fn unit_vector<S: Scalar>(rng: &mut impl Rng, n: usize) -> Vector<S> {
    loop {
        let v = Vector::new((0..n).map(|_| standard_normal(rng)).collect());
        if let Ok(unit) = v.normalized() {
            return unit;
        }
    }
}
