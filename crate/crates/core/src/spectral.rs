//! Spectral decomposition of small symmetric matrices.
//!
//! The eigensolver is the cyclic Jacobi rotation method: exact symmetry is
//! preserved, accuracy is close to machine precision for the tiny sizes used
//! here (`m ≤ 8`), and the output is a deterministic function of the input bits.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::operator::SymmetricOperator;
use crate::scalar::Scalar;
use crate::vector::{orthonormalize, Vector};

pub const MAX_SWEEPS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<S> {
    /// Ascending.
    pub eigenvalues: Vec<S>,
    /// Orthonormal, paired with `eigenvalues`.
    pub eigenvectors: Vec<Vector<S>>,
    /// Contiguous index ranges of numerically equal eigenvalues.
    pub groups: Vec<Range<usize>>,
}

impl<S: Scalar> SpectralDecomposition<S> {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `max − min` of the spectrum.
    pub fn diameter(&self) -> S {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(&lo), Some(&hi)) => hi - lo,
            _ => S::zero(),
        }
    }

    /// `Q Λ Qᵀ`
    pub fn reconstruct(&self) -> SymmetricOperator<S> {
        let m = self.len();
        SymmetricOperator::from_fn(m, |i, j| {
            (0..m)
                .map(|k| self.eigenvalues[k] * self.eigenvectors[k][i] * self.eigenvectors[k][j])
                .sum()
        })
    }

    /// Mean eigenvalue of a group.
    pub fn group_value(&self, group: &Range<usize>) -> S {
        let count = S::lit(group.len() as f64);
        self.eigenvalues[group.clone()].iter().copied().sum::<S>() / count
    }
}

/// Grouping tolerance used when none is given: `GROUP_TOL · (1 + diameter)`.
pub fn default_group_tol<S: Scalar>(sorted: &[S]) -> S {
    let diameter = match (sorted.first(), sorted.last()) {
        (Some(&lo), Some(&hi)) => hi - lo,
        _ => S::zero(),
    };
    S::lit(S::GROUP_TOL) * (S::one() + diameter)
}

/// Greedy left-to-right chaining: a value joins the current group iff it lies
/// within `tol` of the group's current maximum.
pub fn group_eigenvalues<S: Scalar>(sorted: &[S], tol: S) -> Vec<Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
            if i > start {
                groups.push(start..i);
            }
            start = i;
        }
    }
    groups
}

/// Full eigendecomposition with the default grouping tolerance.
pub fn eigh<S: Scalar>(m: &SymmetricOperator<S>) -> Result<SpectralDecomposition<S>> {
    eigh_with_tol(m, None)
}

/// Full eigendecomposition; `group_tol` overrides [`default_group_tol`].
pub fn eigh_with_tol<S: Scalar>(
    m: &SymmetricOperator<S>,
    group_tol: Option<S>,
) -> Result<SpectralDecomposition<S>> {
    let n = m.dim();
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteMatrix);
    }
    let mut a = m.as_slice().to_vec();
    let mut v = vec![S::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = S::one();
    }
    let threshold = S::lit(S::ROTATION_THRESHOLD) * m.norm_inf();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= threshold {
                    continue;
                }
                rotated = true;
                let (c, s) = rotation(a[p * n + p], a[q * n + q], apq);
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = S::zero();
                a[q * n + p] = S::zero();
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        let off = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .fold(S::zero(), |acc, (p, q)| acc.max(a[p * n + q].abs()));
        if off > threshold {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i]
            .partial_cmp(&a[j * n + j])
            .expect("finite eigenvalues")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<S> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut eigenvectors: Vec<Vector<S>> = order
        .iter()
        .map(|&col| Vector::new((0..n).map(|row| v[row * n + col]).collect()))
        .collect();

    let tol = group_tol.unwrap_or_else(|| default_group_tol(&eigenvalues));
    let groups = group_eigenvalues(&eigenvalues, tol);
    for g in &groups {
        if g.len() > 1 {
            orthonormalize(&mut eigenvectors[g.clone()]);
        }
    }
    for vec in &mut eigenvectors {
        fix_sign(vec);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        groups,
    })
}

/// `(c, s)` of the rotation annihilating the off-diagonal entry of
/// `[[app, apq], [apq, aqq]]`.
fn rotation<S: Scalar>(app: S, aqq: S, apq: S) -> (S, S) {
    let two = S::lit(2.0);
    let tau = (aqq - app) / (two * apq);
    let t = if tau >= S::zero() {
        S::one() / (tau + (S::one() + tau * tau).sqrt())
    } else {
        -S::one() / (-tau + (S::one() + tau * tau).sqrt())
    };
    let c = S::one() / (S::one() + t * t).sqrt();
    (c, t * c)
}

/// Makes the largest-magnitude coordinate positive (lowest index on ties).
fn fix_sign<S: Scalar>(v: &mut Vector<S>) {
    let mut best = 0;
    for i in 1..v.dim() {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    if v.dim() > 0 && v[best] < S::zero() {
        *v = v.scaled(-S::one());
    }
}

/// Orthonormal basis of `x^⊥`: the columns `H e_j`, `j ≠ p`, of the Householder
/// reflection `H` that sends `x/‖x‖` to `±e_p`, where `p` is the first index of
/// maximal `|x_p|`.
pub fn perp_basis<S: Scalar>(x: &Vector<S>) -> Result<Vec<Vector<S>>> {
    let x = x.normalized()?;
    let n = x.dim();
    let mut p = 0;
    for i in 1..n {
        if x[i].abs() > x[p].abs() {
            p = i;
        }
    }
    let sign = if x[p] >= S::zero() {
        S::one()
    } else {
        -S::one()
    };
    // v = x + sign(x_p) e_p avoids cancellation.
    let mut v = x.clone();
    v[p] = v[p] + sign;
    let vv = v.dot(&v);
    let two = S::lit(2.0);
    Ok((0..n)
        .filter(|&j| j != p)
        .map(|j| {
            let mut col = v.scaled(-two * v[j] / vv);
            col[j] = col[j] + S::one();
            col
        })
        .collect())
}

/// Matrix of `M` on `x^⊥`, together with the basis it is expressed in.
pub fn restrict_with_basis<S: Scalar>(
    m: &SymmetricOperator<S>,
    x: &Vector<S>,
) -> Result<(SymmetricOperator<S>, Vec<Vector<S>>)> {
    x.check_dim(m.dim())?;
    let unit = x.normalized()?;
    let kernel = m.apply(&unit).norm();
    if kernel > S::lit(S::KERNEL_TOL) * S::one().max(m.norm_inf()) {
        return Err(Error::KernelViolation(kernel.as_f64()));
    }
    let basis = perp_basis(&unit)?;
    Ok((m.congruence(&basis), basis))
}

/// Matrix of `M` on `x^⊥` in the basis of [`perp_basis`].
pub fn restrict_to_perp<S: Scalar>(
    m: &SymmetricOperator<S>,
    x: &Vector<S>,
) -> Result<SymmetricOperator<S>> {
    restrict_with_basis(m, x).map(|(op, _)| op)
}
