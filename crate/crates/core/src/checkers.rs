//! Sampled Osserman check, duality check, and the equivalence experiment.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourdim::osserman_check_exact;
use crate::generators::GeneratorSpec;
use crate::report::{CheckReport, Witness};
use crate::rng::{self, Domain};
use crate::scalar::Scalar;
use crate::spectral::{eigh, restrict_with_basis, SpectralDecomposition};
use crate::tensor::CurvatureTensor;
use crate::vector::Vector;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_EIGENSPACE_PROBES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub count: usize,
    pub seed: u64,
    /// Adds `e_i`, `(e_i ± e_j)/√2` and `(√3 e_i + e_j)/2`.
    pub include_structured: bool,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            count: DEFAULT_SAMPLES,
            seed: 0,
            include_structured: true,
        }
    }
}

impl SampleConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        SampleConfig {
            count,
            seed,
            include_structured: true,
        }
    }
}

/// Basis vectors, diagonals `(e_i ± e_j)/√2` and the `(√3 e_i + e_j)/2` probes.
pub fn structured_vectors<S: Scalar>(n: usize) -> Vec<Vector<S>> {
    let mut out: Vec<Vector<S>> = (0..n).map(|i| Vector::basis(n, i)).collect();
    let r = S::one() / S::lit(2.0).sqrt();
    for i in 0..n {
        for j in (i + 1)..n {
            for sign in [S::one(), -S::one()] {
                let mut v = Vector::zeros(n);
                v[i] = r;
                v[j] = sign * r;
                out.push(v);
            }
        }
    }
    let (long, short) = (S::lit(3.0).sqrt() / S::lit(2.0), S::lit(0.5));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = Vector::zeros(n);
                v[i] = long;
                v[j] = short;
                out.push(v);
            }
        }
    }
    out
}

/// `cfg.count` normalized Gaussian draws, vector `i` from stream `(seed, i)`,
/// followed by the structured set when requested.
pub fn sample_unit_vectors<S: Scalar>(n: usize, cfg: &SampleConfig) -> Result<Vec<Vector<S>>> {
    if cfg.count == 0 {
        return Err(Error::InvalidConfig(
            "sample count must be at least 1".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let mut out: Vec<Vector<S>> = (0..cfg.count as u64)
        .map(|i| rng::unit_vector(&mut rng::stream(cfg.seed, Domain::Direction, i), n))
        .collect();
    if cfg.include_structured {
        out.extend(structured_vectors(n));
    }
    Ok(out)
}

/// Decomposition of `𝒥(x)` on `x^⊥` with eigenvectors lifted back to `V`.
pub fn perp_spectrum<S: Scalar>(
    r: &CurvatureTensor<S>,
    x: &Vector<S>,
) -> Result<SpectralDecomposition<S>> {
    let jx = r.jacobi(x)?;
    let (restricted, basis) = restrict_with_basis(&jx, x)?;
    let mut dec = eigh(&restricted)?;
    dec.eigenvectors = dec
        .eigenvectors
        .iter()
        .map(|u| {
            basis
                .iter()
                .enumerate()
                .fold(Vector::zeros(r.dim()), |acc, (k, b)| {
                    acc.add_scaled(u[k], b)
                })
        })
        .collect();
    Ok(dec)
}

/// Sorted spectra of `𝒥(x)|x^⊥` for every sampled direction.
pub fn sampled_spectra<S: Scalar>(
    r: &CurvatureTensor<S>,
    directions: &[Vector<S>],
) -> Result<Vec<Vec<S>>> {
    directions
        .par_iter()
        .map(|x| perp_spectrum(r, x).map(|d| d.eigenvalues))
        .collect()
}

/// Passes iff every sampled spectrum matches the first one, position by
/// position, within `tol · max(1, spectrum diameter)`.
pub fn osserman_check_sampled<S: Scalar>(
    r: &CurvatureTensor<S>,
    cfg: &SampleConfig,
    tol: S,
) -> Result<CheckReport<S>> {
    let directions = sample_unit_vectors::<S>(r.dim(), cfg)?;
    let spectra = sampled_spectra(r, &directions)?;
    let reference = &spectra[0];
    let diameter = spectra
        .iter()
        .fold(S::zero(), |m, s| m.max(*s.last().expect("nonempty") - s[0]));
    let scale = S::one().max(diameter);
    // (residual, position) per sample
    let deviations: Vec<(S, usize)> = spectra
        .iter()
        .map(|s| {
            s.iter()
                .zip(reference)
                .enumerate()
                .fold((S::zero(), 0), |best, (k, (&a, &b))| {
                    let d = (a - b).abs();
                    if d > best.0 {
                        (d, k)
                    } else {
                        best
                    }
                })
        })
        .collect();
    let max_residual = deviations.iter().fold(S::zero(), |m, d| m.max(d.0));
    let bound = tol * scale;
    Ok(CheckReport::from_residual(
        "osserman",
        max_residual,
        tol,
        scale,
        directions.len(),
        || {
            let s = deviations
                .iter()
                .position(|d| d.0 > bound)
                .expect("failing sample exists");
            Witness {
                direction: directions[s].clone(),
                eigenvalue: spectra[s][deviations[s].1],
                residual: deviations[s].0,
                entry: None,
            }
        },
    ))
}

/// Worst `‖𝒥(y)x − λx‖` over the eigenvectors tested at one sample, with the
/// eigenvalue where it occurs.
fn duality_residual<S: Scalar>(
    r: &CurvatureTensor<S>,
    x: &Vector<S>,
    probes: usize,
    rng_seed: u64,
    sample: u64,
) -> Result<(S, S)> {
    let x = x.normalized()?;
    let dec = perp_spectrum(r, &x)?;
    let mut worst = (S::zero(), dec.eigenvalues[0]);
    let mut test = |y: &Vector<S>, lambda: S| -> Result<()> {
        let jy = r.jacobi(y)?;
        let res = jy.apply(&x).add_scaled(-lambda, &x).norm();
        if res > worst.0 {
            worst = (res, lambda);
        }
        Ok(())
    };
    for (y, &lambda) in dec.eigenvectors.iter().zip(&dec.eigenvalues) {
        test(y, lambda)?;
    }
    if probes > 0 {
        let mut rng = rng::stream(rng_seed, Domain::EigenspaceProbe, sample);
        for g in dec.groups.iter().filter(|g| g.len() > 1) {
            let lambda = dec.group_value(g);
            for _ in 0..probes {
                let coeffs: Vector<S> = rng::unit_vector(&mut rng, g.len());
                let y = dec.eigenvectors[g.clone()]
                    .iter()
                    .enumerate()
                    .fold(Vector::zeros(r.dim()), |acc, (k, v)| {
                        acc.add_scaled(coeffs[k], v)
                    });
                test(&y, lambda)?;
            }
        }
    }
    Ok(worst)
}

/// `𝒥(x)y = λy ⇒ 𝒥(y)x = λx` over every eigenvector of every sampled `x`,
/// plus `eigenspace_probes` random unit vectors inside each repeated
/// eigenspace. Passing `0` probes tests eigenvector bases only.
pub fn rakic_duality_check<S: Scalar>(
    r: &CurvatureTensor<S>,
    cfg: &SampleConfig,
    tol: S,
    eigenspace_probes: usize,
) -> Result<CheckReport<S>> {
    let directions = sample_unit_vectors::<S>(r.dim(), cfg)?;
    let residuals: Vec<(S, S)> = directions
        .par_iter()
        .enumerate()
        .map(|(s, x)| duality_residual(r, x, eigenspace_probes, cfg.seed, s as u64))
        .collect::<Result<_>>()?;
    let scale = S::one().max(r.norm_inf());
    let bound = tol * scale;
    let max_residual = residuals.iter().fold(S::zero(), |m, d| m.max(d.0));
    Ok(CheckReport::from_residual(
        "duality",
        max_residual,
        tol,
        scale,
        directions.len(),
        || {
            let s = residuals
                .iter()
                .position(|d| d.0 > bound)
                .expect("failing sample exists");
            Witness {
                direction: directions[s].clone(),
                eigenvalue: residuals[s].1,
                residual: residuals[s].0,
                entry: None,
            }
        },
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<S> {
    pub duality: CheckReport<S>,
    pub osserman: CheckReport<S>,
    /// Dimension 4 only.
    pub exact: Option<CheckReport<S>>,
    /// Duality and sampled Osserman verdicts coincide.
    pub agree: bool,
    /// All three verdicts coincide (dimension 4 only).
    pub exact_consistent: Option<bool>,
}

impl<S: Scalar> EquivalenceReport<S> {
    pub fn marginal(&self) -> bool {
        self.duality.marginal
            || self.osserman.marginal
            || self.exact.as_ref().is_some_and(|e| e.marginal)
    }

    /// Agreement of every verdict that was computed.
    pub fn consistent(&self) -> bool {
        self.agree && self.exact_consistent.unwrap_or(true)
    }
}

/// Runs both headline checks on the same samples, and the exact criterion in
/// dimension 4.
pub fn equivalence_experiment<S: Scalar>(
    r: &CurvatureTensor<S>,
    cfg: &SampleConfig,
    tol: S,
) -> Result<EquivalenceReport<S>> {
    let duality = rakic_duality_check(r, cfg, tol, DEFAULT_EIGENSPACE_PROBES)?;
    let osserman = osserman_check_sampled(r, cfg, tol)?;
    let agree = duality.passed() == osserman.passed();
    let exact = if r.dim() == 4 {
        Some(osserman_check_exact(r, tol)?)
    } else {
        None
    };
    let exact_consistent = exact
        .as_ref()
        .map(|e| agree && e.passed() == duality.passed());
    Ok(EquivalenceReport {
        duality,
        osserman,
        exact,
        agree,
        exact_consistent,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzTrial {
    pub index: usize,
    pub spec: GeneratorSpec,
    pub duality: bool,
    pub osserman: bool,
    pub exact: Option<bool>,
    pub consistent: bool,
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzSummary {
    pub trials: Vec<FuzzTrial>,
}

impl FuzzSummary {
    pub fn agreements(&self) -> usize {
        self.trials.iter().filter(|t| t.consistent).count()
    }

    /// Disagreements that are not flagged marginal; any of these falsifies
    /// the equivalence.
    pub fn hard_disagreements(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| !t.consistent && !t.marginal)
            .count()
    }

    pub fn marginal(&self) -> usize {
        self.trials.iter().filter(|t| t.marginal).count()
    }
}

/// Runs the equivalence experiment over a corpus; trials run in parallel and
/// are reported in corpus order.
pub fn run_fuzz(corpus: &[GeneratorSpec], cfg: &SampleConfig, tol: f64) -> Result<FuzzSummary> {
    let trials = corpus
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let r = spec.build::<f64>()?;
            let rep = equivalence_experiment(&r, cfg, tol)?;
            Ok(FuzzTrial {
                index,
                spec: spec.clone(),
                duality: rep.duality.passed(),
                osserman: rep.osserman.passed(),
                exact: rep.exact.as_ref().map(|e| e.passed()),
                consistent: rep.consistent(),
                marginal: rep.marginal(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzSummary { trials })
}
