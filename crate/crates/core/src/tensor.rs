//! Algebraic curvature tensors and the operators derived from them.
//!
//! A [`CurvatureTensor`] stores all `n⁴` components `A(e_i, e_j, e_k, e_l)` in a
//! fixed orthonormal basis. Antisymmetry in each pair and pair interchange are
//! exact: every constructor evaluates one representative per symmetry orbit and
//! writes the signed images. The first Bianchi identity is validated.

use std::collections::BTreeMap;

use crate::error::{Error, Indices, Result};
use crate::operator::SymmetricOperator;
use crate::report::{CheckReport, Witness};
use crate::scalar::{max_abs, Scalar};
use crate::vector::Vector;

pub const MIN_DIMENSION: usize = 2;
pub const MAX_DIMENSION: usize = 8;

/// A seed component for [`CurvatureTensor::canonicalize`], 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry<S> {
    pub indices: [usize; 4],
    pub value: S,
}

impl<S> Entry<S> {
    pub fn new(i: usize, j: usize, k: usize, l: usize, value: S) -> Self {
        Entry {
            indices: [i, j, k, l],
            value,
        }
    }
}

/// The eight index permutations generated by `(ij)`, `(kl)` and pair swap,
/// with the sign each contributes.
fn orbit([i, j, k, l]: [usize; 4]) -> [([usize; 4], bool); 8] {
    [
        ([i, j, k, l], false),
        ([j, i, k, l], true),
        ([i, j, l, k], true),
        ([j, i, l, k], false),
        ([k, l, i, j], false),
        ([l, k, i, j], true),
        ([k, l, j, i], true),
        ([l, k, j, i], false),
    ]
}

/// Orbit representative `(a,b,c,d)` with `a<b`, `c<d`, `(a,b) ≤ (c,d)`, and the
/// sign relating it to `idx`. `None` when antisymmetry forces the component to 0.
fn representative(idx: [usize; 4]) -> Option<([usize; 4], bool)> {
    if idx[0] == idx[1] || idx[2] == idx[3] {
        return None;
    }
    orbit(idx)
        .into_iter()
        .filter(|(t, _)| t[0] < t[1] && t[2] < t[3] && (t[0], t[1]) <= (t[2], t[3]))
        .min_by_key(|(t, _)| *t)
}

fn one_based(idx: [usize; 4]) -> Indices {
    idx.map(|i| i + 1)
}

fn check_dimension(n: usize) -> Result<()> {
    if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&n) {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> CurvatureTensor<S> {
    #[inline]
    fn offset(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * n + j) * n + k) * n + l
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_dimension(n)?;
        Ok(CurvatureTensor {
            dim: n,
            data: vec![S::zero(); n.pow(4)],
        })
    }

    /// Evaluates `f` once per orbit representative and fills the signed images.
    /// The result has exact pair symmetries; Bianchi is the caller's concern.
    pub(crate) fn from_representatives(n: usize, mut f: impl FnMut([usize; 4]) -> S) -> Self {
        let mut data = vec![S::zero(); n.pow(4)];
        for a in 0..n {
            for b in (a + 1)..n {
                for c in a..n {
                    for d in (c + 1)..n {
                        if (a, b) > (c, d) {
                            continue;
                        }
                        let v = f([a, b, c, d]);
                        for ([i, j, k, l], neg) in orbit([a, b, c, d]) {
                            data[Self::offset(n, i, j, k, l)] = if neg { -v } else { v };
                        }
                    }
                }
            }
        }
        CurvatureTensor { dim: n, data }
    }

    /// Builds a tensor from seed components, filling every symmetry image.
    pub fn canonicalize(n: usize, entries: &[Entry<S>]) -> Result<Self> {
        check_dimension(n)?;
        let tol = S::lit(S::SYMMETRY_TOL);
        let mut seeds: BTreeMap<[usize; 4], S> = BTreeMap::new();
        for (index, entry) in entries.iter().enumerate() {
            let idx = entry.indices;
            if idx.iter().any(|&i| i >= n) {
                return Err(Error::IndexOutOfRange {
                    index,
                    indices: one_based(idx),
                    dimension: n,
                });
            }
            if !entry.value.is_finite() {
                return Err(Error::NonFiniteEntry { index });
            }
            let conflict = |forced: S| Error::ConflictingEntry {
                index,
                indices: one_based(idx),
                value: entry.value.as_f64(),
                forced: forced.as_f64(),
            };
            match representative(idx) {
                None => {
                    if entry.value.abs() > tol {
                        return Err(conflict(S::zero()));
                    }
                }
                Some((rep, neg)) => {
                    let value = if neg { -entry.value } else { entry.value };
                    match seeds.get(&rep) {
                        Some(&seen) if (seen - value).abs() > tol => {
                            return Err(conflict(if neg { -seen } else { seen }));
                        }
                        Some(_) => {}
                        None => {
                            seeds.insert(rep, value);
                        }
                    }
                }
            }
        }
        let tensor =
            Self::from_representatives(n, |rep| seeds.get(&rep).copied().unwrap_or_else(S::zero));
        tensor.validate_bianchi()?;
        Ok(tensor)
    }

    /// Orthogonal projection of an arbitrary `n⁴` array onto the curvature
    /// tensors: antisymmetrize both pairs, symmetrize under pair interchange,
    /// then remove the Bianchi part `S ↦ S − bS/3`.
    pub fn project(n: usize, raw: &[S]) -> Result<Self> {
        check_dimension(n)?;
        if raw.len() != n.pow(4) {
            return Err(Error::ShapeMismatch {
                expected: n.pow(4),
                found: raw.len(),
            });
        }
        let at = |a: &[S], i, j, k, l| a[Self::offset(n, i, j, k, l)];
        let quarter = S::lit(0.25);
        let half = S::lit(0.5);
        let third = S::one() / S::lit(3.0);

        let mut anti = vec![S::zero(); raw.len()];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        anti[Self::offset(n, i, j, k, l)] =
                            (at(raw, i, j, k, l) - at(raw, j, i, k, l) - at(raw, i, j, l, k)
                                + at(raw, j, i, l, k))
                                * quarter;
                    }
                }
            }
        }
        let mut paired = vec![S::zero(); raw.len()];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        paired[Self::offset(n, i, j, k, l)] =
                            (at(&anti, i, j, k, l) + at(&anti, k, l, i, j)) * half;
                    }
                }
            }
        }
        Ok(Self::from_representatives(n, |[i, j, k, l]| {
            let cyclic =
                at(&paired, i, j, k, l) + at(&paired, j, k, i, l) + at(&paired, k, i, j, l);
            at(&paired, i, j, k, l) - cyclic * third
        }))
    }

    /// Wraps a full component array after verifying every invariant.
    pub fn from_components(n: usize, data: Vec<S>) -> Result<Self> {
        check_dimension(n)?;
        if data.len() != n.pow(4) {
            return Err(Error::ShapeMismatch {
                expected: n.pow(4),
                found: data.len(),
            });
        }
        let entries: Vec<Entry<S>> = (0..data.len())
            .map(|o| {
                let (i, j, k, l) = (o / (n * n * n), (o / (n * n)) % n, (o / n) % n, o % n);
                Entry::new(i, j, k, l, data[o])
            })
            .collect();
        Self::canonicalize(n, &entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `A(e_i, e_j, e_k, e_l)`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        self.data[Self::offset(self.dim, i, j, k, l)]
    }

    pub fn components(&self) -> &[S] {
        &self.data
    }

    /// Largest component magnitude `‖A‖∞`.
    pub fn norm_inf(&self) -> S {
        max_abs(&self.data)
    }

    /// `max |A(x,y,z,w)+A(y,z,x,w)+A(z,x,y,w)|` over basis indices, with the
    /// 0-based index tuple where it is attained.
    pub fn bianchi_residual(&self) -> (S, [usize; 4]) {
        let n = self.dim;
        let mut worst = (S::zero(), [0; 4]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r =
                            (self.get(i, j, k, l) + self.get(j, k, i, l) + self.get(k, i, j, l))
                                .abs();
                        if r > worst.0 {
                            worst = (r, [i, j, k, l]);
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn validate_bianchi(&self) -> Result<()> {
        let (residual, idx) = self.bianchi_residual();
        if residual > S::lit(S::BIANCHI_TOL) * self.norm_inf() {
            return Err(Error::BianchiViolation {
                indices: one_based(idx),
                residual: residual.as_f64(),
            });
        }
        Ok(())
    }

    /// Copy with the orbit of `(i,j,k,l)` (0-based) set to `value`.
    pub fn with_component(&self, idx: [usize; 4], value: S) -> Result<Self> {
        let n = self.dim;
        if idx.iter().any(|&i| i >= n) {
            return Err(Error::IndexOutOfRange {
                index: 0,
                indices: one_based(idx),
                dimension: n,
            });
        }
        let Some((rep, neg)) = representative(idx) else {
            return Err(Error::ConflictingEntry {
                index: 0,
                indices: one_based(idx),
                value: value.as_f64(),
                forced: 0.0,
            });
        };
        let v = if neg { -value } else { value };
        let out = Self::from_representatives(n, |r| {
            if r == rep {
                v
            } else {
                self.get(r[0], r[1], r[2], r[3])
            }
        });
        out.validate_bianchi()?;
        Ok(out)
    }

    /// `a·self + b·other`. The curvature tensors form a linear space, so the
    /// result needs no re-validation.
    pub fn lin_comb(&self, a: S, other: &Self, b: S) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::WrongDimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self::from_representatives(self.dim, |[i, j, k, l]| {
            a * self.get(i, j, k, l) + b * other.get(i, j, k, l)
        }))
    }

    /// `A(x, y, z, w)` for arbitrary vectors.
    pub fn eval(&self, x: &Vector<S>, y: &Vector<S>, z: &Vector<S>, w: &Vector<S>) -> S {
        let n = self.dim;
        let mut total = S::zero();
        for i in 0..n {
            for j in 0..n {
                let xy = x[i] * y[j];
                if xy == S::zero() {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        total = total + xy * z[k] * w[l] * self.get(i, j, k, l);
                    }
                }
            }
        }
        total
    }

    /// Components in the orthonormal frame whose vectors are `frame[a]`:
    /// `A'(a,b,c,d) = A(f_a, f_b, f_c, f_d)`.
    pub fn in_frame(&self, frame: &[Vector<S>]) -> Result<Self> {
        let n = self.dim;
        if frame.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: frame.len(),
            });
        }
        for f in frame {
            f.check_dim(n)?;
        }
        // One slot at a time keeps this O(n⁵).
        let mut cur = self.data.clone();
        for slot in 0..4 {
            let mut next = vec![S::zero(); cur.len()];
            for o in 0..cur.len() {
                let mut idx = [o / (n * n * n), (o / (n * n)) % n, (o / n) % n, o % n];
                let a = idx[slot];
                let mut acc = S::zero();
                for m in 0..n {
                    idx[slot] = m;
                    acc = acc + frame[a][m] * cur[Self::offset(n, idx[0], idx[1], idx[2], idx[3])];
                }
                next[o] = acc;
            }
            cur = next;
        }
        let out = Self::from_representatives(n, |[i, j, k, l]| cur[Self::offset(n, i, j, k, l)]);
        Ok(out)
    }

    /// Matrix `B[i][j] = A(e_i, u, v, e_j)` of `z ↦ A(z, u) v`, unsymmetrized.
    pub fn pair_operator(&self, u: &Vector<S>, v: &Vector<S>) -> Vec<S> {
        let n = self.dim;
        let mut out = vec![S::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for k in 0..n {
                    for l in 0..n {
                        acc = acc + self.get(i, k, l, j) * u[k] * v[l];
                    }
                }
                out[i * n + j] = acc;
            }
        }
        out
    }

    /// Jacobi operator `𝒥(x)y = A(y, x)x` as the matrix `M[i][j] = A(e_i, x, x, e_j)`,
    /// with `x` normalized first.
    pub fn jacobi(&self, x: &Vector<S>) -> Result<SymmetricOperator<S>> {
        x.check_dim(self.dim)?;
        let x = x.normalized()?;
        let raw = self.pair_operator(&x, &x);
        SymmetricOperator::new(self.dim, raw)
    }

    /// `‖𝒥(cosθ x + sinθ y) − cos²θ 𝒥(x) − sin²θ 𝒥(y) − cosθ sinθ (A(·,x)y + A(·,y)x)‖∞`
    /// for orthonormal `x`, `y`.
    pub fn jacobi_expansion_residual(&self, x: &Vector<S>, y: &Vector<S>, theta: S) -> Result<S> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        let one = S::one();
        let dev = (x.dot(x) - one)
            .abs()
            .max((y.dot(y) - one).abs())
            .max(x.dot(y).abs());
        if dev > S::lit(S::KERNEL_TOL) {
            return Err(Error::NotOrthonormal(dev.as_f64()));
        }
        let (s, c) = theta.sin_cos();
        let r = x.scaled(c).add_scaled(s, y);
        let jr = self.jacobi(&r)?;
        let jx = self.jacobi(x)?;
        let jy = self.jacobi(y)?;
        let xy = self.pair_operator(x, y);
        let yx = self.pair_operator(y, x);
        let n = self.dim;
        let mut worst = S::zero();
        for i in 0..n {
            for j in 0..n {
                let mixed = xy[i * n + j] + yx[i * n + j];
                let d = jr.get(i, j) - c * c * jx.get(i, j) - s * s * jy.get(i, j) - c * s * mixed;
                worst = worst.max(d.abs());
            }
        }
        Ok(worst)
    }

    /// Ricci tensor `ρ[i][j] = Σ_k A(e_k, e_i, e_j, e_k)`.
    pub fn ricci(&self) -> SymmetricOperator<S> {
        let n = self.dim;
        SymmetricOperator::from_fn(n, |i, j| (0..n).map(|k| self.get(k, i, j, k)).sum())
    }

    /// Scalar curvature `τ = tr ρ`.
    pub fn scalar(&self) -> S {
        self.ricci().trace()
    }

    /// Einstein test `‖ρ − (τ/n)·Id‖∞ ≤ tol · max(1, ‖ρ‖∞)`.
    pub fn einstein_check(&self, tol: S) -> CheckReport<S> {
        let n = self.dim;
        let rho = self.ricci();
        let c = rho.trace() / S::lit(n as f64);
        let mut worst = (S::zero(), (0, 0));
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { c } else { S::zero() };
                let d = (rho.get(i, j) - target).abs();
                if d > worst.0 {
                    worst = (d, (i, j));
                }
            }
        }
        let (dev, (i, j)) = worst;
        CheckReport::from_residual(
            "einstein",
            dev,
            tol,
            S::one().max(rho.norm_inf()),
            1,
            || Witness {
                direction: Vector::basis(n, i),
                eigenvalue: c,
                residual: dev,
                entry: Some((i, j)),
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vector<f64> {
        Vector::basis(n, i)
    }

    /// Lemma-style seed list for the canonical anti-self-dual model, 1-based.
    fn canonical_seeds(l1: f64, l2: f64, l3: f64) -> Vec<Entry<f64>> {
        let seeds = [
            ([1, 2, 2, 1], l1),
            ([1, 3, 3, 1], l2),
            ([1, 4, 4, 1], l3),
            ([3, 4, 4, 3], l1),
            ([2, 4, 4, 2], l2),
            ([2, 3, 3, 2], l3),
            ([1, 3, 4, 2], (-l1 + 2.0 * l2 - l3) / 3.0),
            ([1, 4, 3, 2], (l1 + l2 - 2.0 * l3) / 3.0),
            ([1, 2, 4, 3], (-2.0 * l1 + l2 + l3) / 3.0),
        ];
        seeds
            .iter()
            .map(|(idx, v)| Entry::new(idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1, *v))
            .collect()
    }

    #[test]
    fn canonicalize_canonical_seed_list() {
        let r = CurvatureTensor::canonicalize(4, &canonical_seeds(1.0, 2.0, 3.0)).unwrap();
        assert_eq!(r.get(0, 1, 1, 0), 1.0);
        assert_eq!(r.get(0, 2, 3, 1), 0.0);
        assert_eq!(r.get(0, 3, 2, 1), -1.0);
        assert_eq!(r.get(0, 1, 3, 2), 1.0);
        // images
        assert_eq!(r.get(1, 0, 1, 0), -1.0);
        assert_eq!(r.get(3, 2, 1, 0), -1.0);
    }

    #[test]
    fn canonicalize_empty_is_zero() {
        let r = CurvatureTensor::<f64>::canonicalize(3, &[]).unwrap();
        assert_eq!(r, CurvatureTensor::zero(3).unwrap());
        r.validate_bianchi().unwrap();
    }

    #[test]
    fn canonicalize_conflict_from_antisymmetry() {
        let err = CurvatureTensor::canonicalize(
            4,
            &[Entry::new(0, 1, 1, 0, 1.0), Entry::new(1, 0, 1, 0, 1.0)],
        )
        .unwrap_err();
        match err {
            Error::ConflictingEntry {
                index,
                indices,
                forced,
                ..
            } => {
                assert_eq!(index, 1);
                assert_eq!(indices, [2, 1, 2, 1]);
                assert_eq!(forced, -1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonicalize_rejects_forced_zero_and_range() {
        assert!(matches!(
            CurvatureTensor::canonicalize(3, &[Entry::new(0, 0, 1, 2, 0.5)]),
            Err(Error::ConflictingEntry { forced, .. }) if forced == 0.0
        ));
        assert!(matches!(
            CurvatureTensor::canonicalize(3, &[Entry::new(0, 3, 1, 2, 0.5)]),
            Err(Error::IndexOutOfRange { dimension: 3, .. })
        ));
        assert!(matches!(
            CurvatureTensor::<f64>::canonicalize(9, &[]),
            Err(Error::InvalidDimension(9))
        ));
    }

    #[test]
    fn canonicalize_detects_bianchi_violation() {
        // A(1,2,3,4) alone cannot satisfy the cyclic identity.
        let err = CurvatureTensor::canonicalize(4, &[Entry::new(0, 1, 2, 3, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::BianchiViolation { .. }));
    }

    #[test]
    fn project_all_ones_is_zero() {
        let r = CurvatureTensor::project(3, &vec![1.0; 81]).unwrap();
        assert_eq!(r.norm_inf(), 0.0);
        assert!(matches!(
            CurvatureTensor::project(3, &[1.0; 80]),
            Err(Error::ShapeMismatch {
                expected: 81,
                found: 80
            })
        ));
    }

    #[test]
    fn project_fixes_valid_tensor() {
        let r = CurvatureTensor::canonicalize(4, &canonical_seeds(1.0, 2.0, 3.0)).unwrap();
        let p = CurvatureTensor::project(4, r.components()).unwrap();
        let diff = p.lin_comb(1.0, &r, -1.0).unwrap().norm_inf();
        assert!(diff <= 1e-14, "{diff}");
    }

    #[test]
    fn jacobi_of_canonical_at_e1() {
        let r = CurvatureTensor::canonicalize(4, &canonical_seeds(1.0, 2.0, 3.0)).unwrap();
        let m = r.jacobi(&e(4, 0)).unwrap();
        assert_eq!(m, SymmetricOperator::diagonal(&[0.0, 1.0, 2.0, 3.0]));
        assert_eq!(r.jacobi(&Vector::zeros(4)), Err(Error::ZeroVector));
    }

    #[test]
    fn expansion_residual_endpoints() {
        let r = CurvatureTensor::canonicalize(4, &canonical_seeds(1.0, -2.0, 0.5)).unwrap();
        assert_eq!(
            r.jacobi_expansion_residual(&e(4, 0), &e(4, 2), 0.0)
                .unwrap(),
            0.0
        );
        let half_pi = r
            .jacobi_expansion_residual(&e(4, 0), &e(4, 2), std::f64::consts::FRAC_PI_2)
            .unwrap();
        assert!(half_pi <= 1e-15, "{half_pi}");
        let bad = Vector::from_f64(&[1.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            r.jacobi_expansion_residual(&e(4, 0), &bad, 0.3),
            Err(Error::NotOrthonormal(_))
        ));
    }

    #[test]
    fn ricci_and_scalar_of_canonical() {
        let r = CurvatureTensor::canonicalize(4, &canonical_seeds(1.0, 2.0, 3.0)).unwrap();
        let rho = r.ricci();
        assert!(rho.max_diff(&SymmetricOperator::diagonal(&[6.0; 4])) <= 1e-12);
        assert!((r.scalar() - 24.0).abs() <= 1e-12);
        let z = CurvatureTensor::<f64>::zero(4).unwrap();
        assert_eq!(z.scalar(), 0.0);
    }

    #[test]
    fn einstein_fails_after_overwrite() {
        let r = CurvatureTensor::canonicalize(4, &canonical_seeds(1.0, 2.0, 3.0)).unwrap();
        let report = r.einstein_check(1e-8);
        assert!(report.passed());
        assert!(report.max_residual <= 1e-14);

        let bumped = r.with_component([0, 1, 1, 0], 1.1).unwrap();
        let report = bumped.einstein_check(1e-8);
        assert!(!report.passed());
        let w = report.witness.unwrap();
        assert!((w.residual - 0.05).abs() < 1e-12, "{}", w.residual);
        assert!(matches!(
            w.entry,
            Some((0, 0)) | Some((1, 1)) | Some((2, 2)) | Some((3, 3))
        ));
    }

    #[test]
    fn frame_change_by_identity_is_noop() {
        let r = CurvatureTensor::canonicalize(4, &canonical_seeds(1.0, 2.0, 3.0)).unwrap();
        let frame: Vec<_> = (0..4).map(|i| e(4, i)).collect();
        assert_eq!(r.in_frame(&frame).unwrap(), r);
        assert_eq!(r.eval(&e(4, 0), &e(4, 3), &e(4, 2), &e(4, 1)), -1.0);
    }
}
