//! Algebraic curvature models `(V, ⟨·,·⟩, A)`: Jacobi operators and their
//! spectra, Ricci/Einstein data, the Weyl tensor and its self-dual split in
//! dimension four, and checks for the Osserman condition and the Rakić
//! duality principle.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

#![allow(clippy::needless_range_loop)]

pub mod checkers;
pub mod error;
pub mod fourdim;
pub mod generators;
pub mod model_file;
pub mod operator;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod spectral;
pub mod tensor;
pub mod vector;

pub use checkers::{
    equivalence_experiment, osserman_check_sampled, rakic_duality_check, run_fuzz,
    sample_unit_vectors, EquivalenceReport, FuzzSummary, SampleConfig,
};
pub use error::{Error, Result};
pub use fourdim::{
    adapted_basis, canonical_osserman, classify_structure, hodge_star, osserman_check_exact,
    self_dual_check, self_duality_report, weyl, weyl_pm, AdaptedBasis, Duality, EigStructureCase,
    HodgeSplit, Orientation,
};
pub use generators::{
    perturb, random_curvature, space_form, CorpusMix, GeneratorKind, GeneratorSpec,
};
pub use operator::SymmetricOperator;
pub use report::{CheckReport, ReportRecord, Verdict, Witness};
pub use scalar::Scalar;
pub use spectral::{eigh, group_eigenvalues, restrict_to_perp, SpectralDecomposition};
pub use tensor::{CurvatureTensor, Entry};
pub use vector::Vector;

pub type Curvature = CurvatureTensor<f64>;
pub type Curvature32 = CurvatureTensor<f32>;
pub type Vec64 = Vector<f64>;
pub type Vec32 = Vector<f32>;
pub type Operator = SymmetricOperator<f64>;
pub type Operator32 = SymmetricOperator<f32>;
pub type Spectrum = SpectralDecomposition<f64>;
pub type Report = CheckReport<f64>;
pub type Split = HodgeSplit<f64>;
pub type Adapted = AdaptedBasis<f64>;
