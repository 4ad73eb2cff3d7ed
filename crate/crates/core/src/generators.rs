//! Model corpus: constant curvature, random projected tensors, perturbations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourdim::canonical_osserman;
use crate::rng::{self, Domain};
use crate::scalar::Scalar;
use crate::tensor::CurvatureTensor;
use crate::vector::{orthonormalize, Vector};

/// `A(x,y,z,w) = c(⟨x,w⟩⟨y,z⟩ − ⟨x,z⟩⟨y,w⟩)`, so that `𝒥(x) = c(Id − xxᵀ)`.
pub fn space_form<S: Scalar>(n: usize, c: S) -> Result<CurvatureTensor<S>> {
    CurvatureTensor::<S>::zero(n)?;
    let delta = |a: usize, b: usize| if a == b { S::one() } else { S::zero() };
    Ok(CurvatureTensor::from_representatives(n, |[i, j, k, l]| {
        c * (delta(i, l) * delta(j, k) - delta(i, k) * delta(j, l))
    }))
}

/// Projection of `n⁴` independent `uniform(−scale, scale)` draws.
pub fn random_curvature<S: Scalar>(n: usize, seed: u64, scale: S) -> Result<CurvatureTensor<S>> {
    CurvatureTensor::<S>::zero(n)?;
    let mut rng = rng::stream(seed, Domain::Tensor, 0);
    let raw: Vec<S> = (0..n.pow(4))
        .map(|_| rng::uniform_symmetric(&mut rng, scale))
        .collect();
    CurvatureTensor::project(n, &raw)
}

/// `R + ε · random_curvature(n, seed, 1)`.
pub fn perturb<S: Scalar>(r: &CurvatureTensor<S>, seed: u64, eps: S) -> Result<CurvatureTensor<S>> {
    if eps.is_nan() || eps < S::zero() {
        return Err(Error::InvalidConfig(format!("perturbation size {eps} < 0")));
    }
    if eps == S::zero() {
        return Ok(r.clone());
    }
    let noise = random_curvature(r.dim(), seed, S::one())?;
    r.lin_comb(S::one(), &noise, eps)
}

/// Orthonormal frame from Gram-Schmidt on Gaussian vectors.
pub fn random_orthonormal_frame<S: Scalar>(n: usize, seed: u64) -> Vec<Vector<S>> {
    let mut rng = rng::stream(seed, Domain::Rotation, 0);
    loop {
        let mut frame: Vec<Vector<S>> = (0..n)
            .map(|_| Vector::new((0..n).map(|_| rng::standard_normal(&mut rng)).collect()))
            .collect();
        orthonormalize(&mut frame);
        let ok = frame
            .iter()
            .all(|v| (v.norm() - S::one()).abs() < S::lit(1e-3));
        if ok {
            return frame;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GeneratorKind {
    SpaceForm,
    Canonical,
    Random,
    Perturbed,
}

/// Provenance of a generated model; stored under `"generator"` in model files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Unperturbed model of a `perturbed` spec.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<GeneratorSpec>>,
    /// Re-express the model in a random orthonormal frame drawn from this seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame_seed: Option<u64>,
}

impl GeneratorSpec {
    fn bare(kind: GeneratorKind, dimension: usize) -> Self {
        GeneratorSpec {
            kind,
            dimension,
            c: None,
            lambdas: None,
            seed: None,
            scale: None,
            eps: None,
            base: None,
            frame_seed: None,
        }
    }

    pub fn space_form(dimension: usize, c: f64) -> Self {
        GeneratorSpec {
            c: Some(c),
            ..Self::bare(GeneratorKind::SpaceForm, dimension)
        }
    }

    pub fn canonical(lambdas: [f64; 3]) -> Self {
        GeneratorSpec {
            lambdas: Some(lambdas),
            ..Self::bare(GeneratorKind::Canonical, 4)
        }
    }

    pub fn random(dimension: usize, seed: u64, scale: f64) -> Self {
        GeneratorSpec {
            seed: Some(seed),
            scale: Some(scale),
            ..Self::bare(GeneratorKind::Random, dimension)
        }
    }

    pub fn perturbed(base: GeneratorSpec, seed: u64, eps: f64) -> Self {
        GeneratorSpec {
            seed: Some(seed),
            eps: Some(eps),
            dimension: base.dimension,
            base: Some(Box::new(base)),
            ..Self::bare(GeneratorKind::Perturbed, 0)
        }
    }

    pub fn in_frame(mut self, frame_seed: u64) -> Self {
        self.frame_seed = Some(frame_seed);
        self
    }

    pub fn build<S: Scalar>(&self) -> Result<CurvatureTensor<S>> {
        let missing =
            |what: &str| Error::InvalidConfig(format!("{:?} generator needs {what}", self.kind));
        let tensor = match self.kind {
            GeneratorKind::SpaceForm => {
                space_form(self.dimension, S::lit(self.c.ok_or_else(|| missing("c"))?))?
            }
            GeneratorKind::Canonical => {
                if self.dimension != 4 {
                    return Err(Error::WrongDimension {
                        expected: 4,
                        found: self.dimension,
                    });
                }
                let [l1, l2, l3] = self.lambdas.ok_or_else(|| missing("lambdas"))?;
                canonical_osserman(S::lit(l1), S::lit(l2), S::lit(l3))?
            }
            GeneratorKind::Random => {
                let scale = self.scale.unwrap_or(1.0);
                if !scale.is_finite() || scale < 0.0 {
                    return Err(Error::InvalidConfig(format!("scale {scale} < 0")));
                }
                random_curvature(self.dimension, self.seed.unwrap_or(0), S::lit(scale))?
            }
            GeneratorKind::Perturbed => {
                let base = self.base.as_ref().ok_or_else(|| missing("base"))?;
                let eps = self.eps.unwrap_or(0.05);
                perturb(&base.build::<S>()?, self.seed.unwrap_or(0), S::lit(eps))?
            }
        };
        match self.frame_seed {
            Some(seed) => tensor.in_frame(&random_orthonormal_frame(tensor.dim(), seed)),
            None => Ok(tensor),
        }
    }
}

/// Which generator families a fuzz corpus draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusMix {
    /// Dimension 4 cycles canonical, space form, random, perturbed;
    /// dimension 3 cycles space form, random, perturbed.
    Mixed,
    SpaceForm,
    Canonical,
    Random,
    Perturbed,
}

const LAMBDA_GRID: [f64; 6] = [-2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
const CURVATURE_GRID: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];

/// Relative perturbation size for negative examples.
pub const DEFAULT_RELATIVE_EPS: f64 = 0.05;

/// Deterministic corpus of `trials` generator specs. Canonical models are
/// re-expressed in random frames; perturbations use
/// `ε = 0.05 · max(1, ‖R‖∞)`.
pub fn fuzz_corpus(
    dim: usize,
    trials: usize,
    seed: u64,
    mix: CorpusMix,
) -> Result<Vec<GeneratorSpec>> {
    use rand::Rng;
    if dim != 3 && dim != 4 {
        return Err(Error::InvalidConfig(format!(
            "fuzz corpus needs dimension 3 or 4, got {dim}"
        )));
    }
    if dim == 3 && mix == CorpusMix::Canonical {
        return Err(Error::InvalidConfig(
            "canonical models exist in dimension 4 only".into(),
        ));
    }
    let cycle: &[CorpusMix] = match (mix, dim) {
        (CorpusMix::Mixed, 4) => &[
            CorpusMix::Canonical,
            CorpusMix::SpaceForm,
            CorpusMix::Random,
            CorpusMix::Perturbed,
        ],
        (CorpusMix::Mixed, _) => &[
            CorpusMix::SpaceForm,
            CorpusMix::Random,
            CorpusMix::Perturbed,
        ],
        _ => std::slice::from_ref(&mix),
    };
    (0..trials)
        .map(|i| {
            let mut rng = rng::stream(seed, Domain::Corpus, i as u64);
            let sub_seed: u64 = rng.random();
            let pick = |rng: &mut rand_chacha::ChaCha8Rng, grid: &[f64]| {
                grid[rng.random_range(0..grid.len())]
            };
            let positive = |rng: &mut rand_chacha::ChaCha8Rng| {
                if dim == 4 && rng.random_bool(0.5) {
                    let l = [
                        pick(rng, &LAMBDA_GRID),
                        pick(rng, &LAMBDA_GRID),
                        pick(rng, &LAMBDA_GRID),
                    ];
                    GeneratorSpec::canonical(l).in_frame(sub_seed)
                } else {
                    GeneratorSpec::space_form(dim, pick(rng, &CURVATURE_GRID))
                }
            };
            Ok(match cycle[i % cycle.len()] {
                CorpusMix::Canonical => {
                    let l = [
                        pick(&mut rng, &LAMBDA_GRID),
                        pick(&mut rng, &LAMBDA_GRID),
                        pick(&mut rng, &LAMBDA_GRID),
                    ];
                    GeneratorSpec::canonical(l).in_frame(sub_seed)
                }
                CorpusMix::SpaceForm => {
                    GeneratorSpec::space_form(dim, pick(&mut rng, &CURVATURE_GRID))
                }
                CorpusMix::Random => GeneratorSpec::random(dim, sub_seed, 1.0),
                CorpusMix::Perturbed | CorpusMix::Mixed => {
                    let base = positive(&mut rng);
                    let norm = base.build::<f64>()?.norm_inf();
                    GeneratorSpec::perturbed(base, sub_seed, DEFAULT_RELATIVE_EPS * norm.max(1.0))
                }
            })
        })
        .collect()
}
