//! Dimension four: Weyl tensor, Hodge star on bivectors, the `Λ±` blocks of
//! the Weyl operator, adapted bases and the eigenvalue-structure cases.
//!
//! Bivectors are coordinatized in the basis
//! `e₁∧e₂, e₁∧e₃, e₁∧e₄, e₂∧e₃, e₂∧e₄, e₃∧e₄` with the inner product
//! `⟨u∧v, s∧t⟩ = ⟨u,s⟩⟨v,t⟩ − ⟨u,t⟩⟨v,s⟩`, so that basis is orthonormal. A tensor
//! acts on bivectors by `W(u∧v, s∧t) = W(u, v, s, t)`.

use crate::error::{Error, Result};
use crate::operator::SymmetricOperator;
use crate::report::{CheckReport, Witness};
use crate::scalar::Scalar;
use crate::spectral::{eigh, restrict_with_basis};
use crate::tensor::{CurvatureTensor, Entry};
use crate::vector::Vector;

/// Index pairs of the bivector basis, 0-based.
pub const BIVECTOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Antisymmetric 4×4 matrix of a bivector.
pub type BivectorMatrix<S> = [[S; 4]; 4];

fn require_dim4<S: Scalar>(r: &CurvatureTensor<S>) -> Result<()> {
    if r.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: r.dim(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// The standard basis `e₁…e₄` is positively oriented.
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    fn factor<S: Scalar>(self) -> S {
        S::lit(self.sign() as f64)
    }
}

/// Hodge star on bivectors for the standard orientation:
/// `⋆(e₁∧e₂) = e₃∧e₄`, `⋆(e₁∧e₃) = −e₂∧e₄`, `⋆(e₁∧e₄) = e₂∧e₃`.
pub fn hodge_star<S: Scalar>() -> SymmetricOperator<S> {
    hodge_star_oriented(Orientation::Positive)
}

pub fn hodge_star_oriented<S: Scalar>(orientation: Orientation) -> SymmetricOperator<S> {
    let o = orientation.factor::<S>();
    SymmetricOperator::from_fn(6, |i, j| match (i.min(j), i.max(j)) {
        (0, 5) | (2, 3) => o,
        (1, 4) => -o,
        _ => S::zero(),
    })
}

/// Orthonormal bases of `Λ⁺` and `Λ⁻` in bivector coordinates:
/// `E₁± = (e₁₂ ± e₃₄)/√2`, `E₂± = (e₁₃ ∓ e₂₄)/√2`, `E₃± = (e₁₄ ± e₂₃)/√2`,
/// with `±` read relative to `orientation`.
pub fn lambda_bases<S: Scalar>(orientation: Orientation) -> ([[S; 6]; 3], [[S; 6]; 3]) {
    let r = S::one() / S::lit(2.0).sqrt();
    let z = S::zero();
    let build = |sign: S| {
        [
            [r, z, z, z, z, sign * r],
            [z, r, z, z, -sign * r, z],
            [z, z, r, sign * r, z, z],
        ]
    };
    let o = orientation.factor::<S>();
    (build(o), build(-o))
}

pub fn bivector_matrix<S: Scalar>(coords: &[S; 6]) -> BivectorMatrix<S> {
    let mut m = [[S::zero(); 4]; 4];
    for (c, &(k, l)) in coords.iter().zip(BIVECTOR_PAIRS.iter()) {
        m[k][l] = *c;
        m[l][k] = -*c;
    }
    m
}

/// 6×6 matrix `T[(kl),(mn)] = A(e_k, e_l, e_m, e_n)` of a tensor on bivectors.
pub fn bivector_operator<S: Scalar>(r: &CurvatureTensor<S>) -> Result<SymmetricOperator<S>> {
    require_dim4(r)?;
    Ok(SymmetricOperator::from_fn(6, |p, q| {
        let ((k, l), (m, n)) = (BIVECTOR_PAIRS[p], BIVECTOR_PAIRS[q]);
        r.get(k, l, m, n)
    }))
}

/// Weyl tensor: `R` minus its Ricci and scalar parts.
pub fn weyl<S: Scalar>(r: &CurvatureTensor<S>) -> Result<CurvatureTensor<S>> {
    require_dim4(r)?;
    let rho = r.ricci();
    let tau = rho.trace();
    let sixth = tau / S::lit(6.0);
    let half = S::lit(0.5);
    let g = |a: usize, b: usize| if a == b { S::one() } else { S::zero() };
    Ok(CurvatureTensor::from_representatives(4, |[x, y, z, w]| {
        r.get(x, y, z, w) + sixth * (g(x, w) * g(y, z) - g(x, z) * g(y, w))
            - half
                * (rho.get(x, w) * g(y, z) + rho.get(y, z) * g(x, w)
                    - rho.get(x, z) * g(y, w)
                    - rho.get(y, w) * g(x, z))
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HodgeSplit<S> {
    pub orientation: Orientation,
    pub lambda_plus: [BivectorMatrix<S>; 3],
    pub lambda_minus: [BivectorMatrix<S>; 3],
    /// `W⁺[i][j] = W(E_i⁺, E_j⁺)`
    pub weyl_plus: SymmetricOperator<S>,
    pub weyl_minus: SymmetricOperator<S>,
}

fn block<S: Scalar>(op: &SymmetricOperator<S>, basis: &[[S; 6]; 3]) -> SymmetricOperator<S> {
    let vectors: Vec<Vector<S>> = basis.iter().map(|b| Vector::new(b.to_vec())).collect();
    op.congruence(&vectors)
}

pub fn weyl_pm<S: Scalar>(
    r: &CurvatureTensor<S>,
    orientation: Orientation,
) -> Result<HodgeSplit<S>> {
    let w = bivector_operator(&weyl(r)?)?;
    let (plus, minus) = lambda_bases::<S>(orientation);
    Ok(HodgeSplit {
        orientation,
        lambda_plus: plus.map(|b| bivector_matrix(&b)),
        lambda_minus: minus.map(|b| bivector_matrix(&b)),
        weyl_plus: block(&w, &plus),
        weyl_minus: block(&w, &minus),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Duality {
    SelfDual,
    AntiSelfDual,
    /// `W = 0`.
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfDualReport<S> {
    pub verdict: Duality,
    pub plus_norm: S,
    pub minus_norm: S,
    /// `tol · max(1, ‖W‖∞)`
    pub bound: S,
}

/// Classifies the model by which Weyl blocks vanish, for the standard orientation.
pub fn self_dual_check<S: Scalar>(r: &CurvatureTensor<S>, tol: S) -> Result<SelfDualReport<S>> {
    let w = weyl(r)?;
    let split = weyl_pm(r, Orientation::Positive)?;
    let plus_norm = split.weyl_plus.norm_inf();
    let minus_norm = split.weyl_minus.norm_inf();
    let bound = tol * S::one().max(w.norm_inf());
    let verdict = match (plus_norm <= bound, minus_norm <= bound) {
        (true, true) => Duality::Both,
        (false, true) => Duality::SelfDual,
        (true, false) => Duality::AntiSelfDual,
        (false, false) => Duality::Neither,
    };
    Ok(SelfDualReport {
        verdict,
        plus_norm,
        minus_norm,
        bound,
    })
}

/// Einstein and (anti-)self-dual. The residual is the larger of the relative
/// Einstein deviation and the relative size of the smaller Weyl block, so the
/// report's scale is 1.
pub fn osserman_check_exact<S: Scalar>(r: &CurvatureTensor<S>, tol: S) -> Result<CheckReport<S>> {
    require_dim4(r)?;
    let einstein = r.einstein_check(tol);
    let split = weyl_pm(r, Orientation::Positive)?;
    let w_scale = S::one().max(weyl(r)?.norm_inf());
    let einstein_rel = einstein.max_residual / einstein.scale;
    let (smaller, smaller_norm) = {
        let (p, m) = (split.weyl_plus.norm_inf(), split.weyl_minus.norm_inf());
        if p <= m {
            (&split.weyl_plus, p)
        } else {
            (&split.weyl_minus, m)
        }
    };
    let weyl_rel = smaller_norm / w_scale;
    let residual = einstein_rel.max(weyl_rel);
    Ok(CheckReport::from_residual(
        "osserman-exact",
        residual,
        tol,
        S::one(),
        1,
        || {
            if let (false, Some(w)) = (einstein.passed(), einstein.witness.clone()) {
                return Witness {
                    residual: einstein_rel,
                    ..w
                };
            }
            block_witness(smaller, weyl_rel)
        },
    ))
}

/// Dominant eigenpair of a Weyl block, in `Λ±` coordinates.
fn block_witness<S: Scalar>(block: &SymmetricOperator<S>, residual: S) -> Witness<S> {
    let dec = eigh(block).expect("finite 3x3 block");
    let k = (0..3)
        .max_by(|&a, &b| {
            dec.eigenvalues[a]
                .abs()
                .partial_cmp(&dec.eigenvalues[b].abs())
                .expect("finite")
                .then(b.cmp(&a))
        })
        .unwrap_or(0);
    Witness {
        direction: dec.eigenvectors[k].clone(),
        eigenvalue: dec.eigenvalues[k],
        residual,
        entry: None,
    }
}

/// [`self_dual_check`] as a report: passes when `W⁺` or `W⁻` vanishes. The
/// residual is the norm of the smaller block.
pub fn self_duality_report<S: Scalar>(r: &CurvatureTensor<S>, tol: S) -> Result<CheckReport<S>> {
    let split = weyl_pm(r, Orientation::Positive)?;
    let scale = S::one().max(weyl(r)?.norm_inf());
    let (p, m) = (split.weyl_plus.norm_inf(), split.weyl_minus.norm_inf());
    let (smaller, residual) = if p <= m {
        (&split.weyl_plus, p)
    } else {
        (&split.weyl_minus, m)
    };
    Ok(CheckReport::from_residual(
        "selfdual",
        residual,
        tol,
        scale,
        1,
        || block_witness(smaller, residual),
    ))
}

/// Anti-self-dual Einstein model with Jacobi eigenvalues `λ₁, λ₂, λ₃` in
/// every direction, written on `(x,y,z,w) = (e₁,e₂,e₃,e₄)`.
pub fn canonical_osserman<S: Scalar>(l1: S, l2: S, l3: S) -> Result<CurvatureTensor<S>> {
    if !(l1.is_finite() && l2.is_finite() && l3.is_finite()) {
        return Err(Error::InvalidConfig("eigenvalues must be finite".into()));
    }
    let three = S::lit(3.0);
    let two = S::lit(2.0);
    let seeds = [
        Entry::new(0, 1, 1, 0, l1),
        Entry::new(2, 3, 3, 2, l1),
        Entry::new(0, 2, 2, 0, l2),
        Entry::new(1, 3, 3, 1, l2),
        Entry::new(0, 3, 3, 0, l3),
        Entry::new(1, 2, 2, 1, l3),
        Entry::new(0, 2, 3, 1, (-l1 + two * l2 - l3) / three),
        Entry::new(0, 3, 2, 1, (l1 + l2 - two * l3) / three),
        Entry::new(0, 1, 3, 2, (-two * l1 + l2 + l3) / three),
    ];
    CurvatureTensor::canonicalize(4, &seeds)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedBasis<S> {
    pub x: Vector<S>,
    pub y: Vector<S>,
    pub z: Vector<S>,
    pub w: Vector<S>,
    /// `𝒥(x)y=λ₁y, 𝒥(x)z=λ₂z, 𝒥(x)w=λ₃w, 𝒥(y)z=λ₄z, 𝒥(y)w=λ₅w, 𝒥(z)w=λ₆w`
    pub lambdas: [S; 6],
    /// Largest of the six eigen-residuals.
    pub max_residual: S,
}

impl<S: Scalar> AdaptedBasis<S> {
    pub fn vectors(&self) -> [&Vector<S>; 4] {
        [&self.x, &self.y, &self.z, &self.w]
    }
}

/// Completes `x` to an orthonormal eigenbasis of the mutual Jacobi operators.
///
/// `y, z, w` diagonalize `𝒥(x)` on `x^⊥`. When `z` and `w` share an eigenvalue
/// of `𝒥(x)`, they are rotated within their span to diagonalize `𝒥(y)` there.
/// Fails with `NotAdapted` when a residual exceeds `tol · max(1, ‖R‖∞)`.
pub fn adapted_basis<S: Scalar>(
    r: &CurvatureTensor<S>,
    x: &Vector<S>,
    tol: S,
) -> Result<AdaptedBasis<S>> {
    require_dim4(r)?;
    x.check_dim(4)?;
    let x = x.normalized()?;
    let jx = r.jacobi(&x)?;
    let (restricted, perp) = restrict_with_basis(&jx, &x)?;
    let dec = eigh(&restricted)?;
    let lift = |u: &Vector<S>| {
        perp.iter()
            .enumerate()
            .fold(Vector::zeros(4), |acc, (k, b)| acc.add_scaled(u[k], b))
    };
    let y = lift(&dec.eigenvectors[0]);
    let mut z = lift(&dec.eigenvectors[1]);
    let mut w = lift(&dec.eigenvectors[2]);
    let jy = r.jacobi(&y)?;

    if dec.groups.iter().any(|g| g.contains(&1) && g.contains(&2)) {
        let pair = [z.clone(), w.clone()];
        let sub = eigh(&jy.congruence(&pair))?;
        let rotate = |u: &Vector<S>| pair[0].scaled(u[0]).add_scaled(u[1], &pair[1]);
        z = rotate(&sub.eigenvectors[0]);
        w = rotate(&sub.eigenvectors[1]);
    }
    let jz = r.jacobi(&z)?;

    let [l1, l2, l3] = [dec.eigenvalues[0], dec.eigenvalues[1], dec.eigenvalues[2]];
    let l4 = jy.form(&z, &z);
    let l5 = jy.form(&w, &w);
    let l6 = jz.form(&w, &w);

    let bound = tol * S::one().max(r.norm_inf());
    let relations: [(&'static str, &SymmetricOperator<S>, &Vector<S>, S); 6] = [
        ("J(x)y = l1 y", &jx, &y, l1),
        ("J(x)z = l2 z", &jx, &z, l2),
        ("J(x)w = l3 w", &jx, &w, l3),
        ("J(y)z = l4 z", &jy, &z, l4),
        ("J(y)w = l5 w", &jy, &w, l5),
        ("J(z)w = l6 w", &jz, &w, l6),
    ];
    let mut max_residual = S::zero();
    for (relation, op, v, lambda) in relations {
        let residual = op.apply(v).add_scaled(-lambda, v).norm();
        if residual > bound {
            return Err(Error::NotAdapted {
                relation,
                residual: residual.as_f64(),
                bound: bound.as_f64(),
            });
        }
        max_residual = max_residual.max(residual);
    }
    Ok(AdaptedBasis {
        x,
        y,
        z,
        w,
        lambdas: [l1, l2, l3, l4, l5, l6],
        max_residual,
    })
}

/// Eigenvalue identification patterns of an adapted basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigStructureCase {
    /// `λ₁ = … = λ₆`
    A,
    /// `λ₁=λ₆`, `λ₂=λ₃=λ₄=λ₅`
    B,
    /// `λ₂=λ₅`, `λ₁=λ₃=λ₄=λ₆`
    C,
    /// `λ₃=λ₄`, `λ₁=λ₂=λ₅=λ₆`
    D,
    /// `λ₁=λ₆`, `λ₂=λ₅`, `λ₃=λ₄`
    E,
    None,
}

impl EigStructureCase {
    /// Groups of 1-based `λ` indices that the case identifies.
    pub fn identifications(self) -> &'static [&'static [usize]] {
        match self {
            EigStructureCase::A => &[&[1, 2, 3, 4, 5, 6]],
            EigStructureCase::B => &[&[1, 6], &[2, 3, 4, 5]],
            EigStructureCase::C => &[&[2, 5], &[1, 3, 4, 6]],
            EigStructureCase::D => &[&[3, 4], &[1, 2, 5, 6]],
            EigStructureCase::E => &[&[1, 6], &[2, 5], &[3, 4]],
            EigStructureCase::None => &[],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EigStructureCase::A => "a",
            EigStructureCase::B => "b",
            EigStructureCase::C => "c",
            EigStructureCase::D => "d",
            EigStructureCase::E => "e",
            EigStructureCase::None => "none",
        }
    }
}

/// Most specific case whose identifications hold within
/// `tol · max(1, max |λ|)`: `a`, then `b`, `c`, `d`, then `e`.
pub fn classify_structure<S: Scalar>(lambdas: &[S; 6], tol: S) -> EigStructureCase {
    let scale = lambdas.iter().fold(S::one(), |m, l| m.max(l.abs()));
    let bound = tol * scale;
    let holds = |case: EigStructureCase| {
        case.identifications().iter().all(|group| {
            group.iter().all(|&i| {
                group
                    .iter()
                    .all(|&j| (lambdas[i - 1] - lambdas[j - 1]).abs() <= bound)
            })
        })
    };
    use EigStructureCase::*;
    [A, B, C, D, E]
        .into_iter()
        .find(|&case| holds(case))
        .unwrap_or(None)
}
