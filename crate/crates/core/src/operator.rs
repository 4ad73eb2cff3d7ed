use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar};
use crate::vector::Vector;

/// Dense symmetric `m × m` matrix, stored row-major.
///
/// Construction symmetrizes the input, so `M = Mᵀ` holds bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricOperator<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> SymmetricOperator<S> {
    /// Symmetrizes a row-major `m × m` array as `(M + Mᵀ)/2`.
    pub fn new(dim: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self::from_fn(dim, |i, j| data[i * dim + j]))
    }

    /// Like [`SymmetricOperator::new`] but refuses inputs whose asymmetry
    /// exceeds the scalar's tolerance, relative to `max(1, ‖M‖∞)`.
    pub fn new_checked(dim: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteMatrix);
        }
        let scale = S::one().max(max_abs(&data));
        let mut asym = S::zero();
        for i in 0..dim {
            for j in (i + 1)..dim {
                asym = asym.max((data[i * dim + j] - data[j * dim + i]).abs());
            }
        }
        if asym > S::lit(S::ASYMMETRY_TOL) * scale {
            return Err(Error::NonSymmetric(asym.as_f64()));
        }
        Self::new(dim, data)
    }

    /// Builds from `f(i, j)`, averaging `f(i, j)` and `f(j, i)`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let half = S::lit(0.5);
        let mut data = vec![S::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = f(i, i);
            for j in (i + 1)..dim {
                let v = (f(i, j) + f(j, i)) * half;
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        SymmetricOperator { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(values: &[S]) -> Self {
        Self::from_fn(
            values.len(),
            |i, j| if i == j { values[i] } else { S::zero() },
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    /// Largest entry magnitude.
    pub fn norm_inf(&self) -> S {
        max_abs(&self.data)
    }

    pub fn trace(&self) -> S {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        Vector::new(
            (0..self.dim)
                .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
                .collect(),
        )
    }

    /// `⟨u, M v⟩`
    pub fn form(&self, u: &Vector<S>, v: &Vector<S>) -> S {
        u.dot(&self.apply(v))
    }

    /// Matrix of the form restricted to `span(basis)`: `Bᵀ M B`.
    pub fn congruence(&self, basis: &[Vector<S>]) -> Self {
        let images: Vec<Vector<S>> = basis.iter().map(|b| self.apply(b)).collect();
        Self::from_fn(basis.len(), |i, j| basis[i].dot(&images[j]))
    }

    /// `‖self − other‖∞` over entries.
    pub fn max_diff(&self, other: &Self) -> S {
        self.data
            .iter()
            .zip(&other.data)
            .fold(S::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn to_rows_f64(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).as_f64()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_symmetrizes() {
        let m = SymmetricOperator::new(2, vec![1.0, 2.0, 4.0, 5.0]).unwrap();
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
    }

    #[test]
    fn checked_construction_rejects_asymmetry() {
        let err = SymmetricOperator::new_checked(2, vec![1.0, 2.0, 4.0, 5.0]).unwrap_err();
        assert!(matches!(err, Error::NonSymmetric(_)));
        assert!(matches!(
            SymmetricOperator::new(3, vec![0.0; 4]),
            Err(Error::ShapeMismatch {
                expected: 9,
                found: 4
            })
        ));
    }
}
