use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coordinates in the fixed orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S>(Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Vector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![S::zero(); n])
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = S::one();
        v
    }

    pub fn from_f64(coords: &[f64]) -> Self {
        Vector(coords.iter().map(|&c| S::lit(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<S> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> S {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a * b).sum()
    }

    pub fn norm(&self) -> S {
        self.dot(self).sqrt()
    }

    pub fn norm_inf(&self) -> S {
        crate::scalar::max_abs(&self.0)
    }

    /// Unit vector in the direction of `self`.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if !norm.is_finite() || norm <= S::zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(S::one() / norm))
    }

    pub fn scaled(&self, factor: S) -> Self {
        Vector(self.0.iter().map(|&c| c * factor).collect())
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: S, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + factor * b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(-S::one(), other)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.as_f64()).collect()
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::VectorLength {
                expected: n,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for Vector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

/// Modified Gram-Schmidt on `vectors` in place. Vectors that collapse to zero
/// are left as they are.
pub(crate) fn orthonormalize<S: Scalar>(vectors: &mut [Vector<S>]) {
    for i in 0..vectors.len() {
        for j in 0..i {
            let (done, rest) = vectors.split_at_mut(i);
            let proj = rest[0].dot(&done[j]);
            rest[0] = rest[0].add_scaled(-proj, &done[j]);
        }
        if let Ok(unit) = vectors[i].normalized() {
            vectors[i] = unit;
        }
    }
}
