//! `osslab`: build, inspect, check, classify and fuzz algebraic curvature models.
//!
//! Exit codes: 0 pass, 1 check failed, 2 usage error, 3 I/O or format error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use osslab::checkers::{perp_spectrum, DEFAULT_EIGENSPACE_PROBES, DEFAULT_SAMPLES};
use osslab::generators::{fuzz_corpus, DEFAULT_RELATIVE_EPS};
use osslab::model_file::{read_model, write_model};
use osslab::{
    adapted_basis, classify_structure, osserman_check_exact, osserman_check_sampled,
    rakic_duality_check, run_fuzz, sample_unit_vectors, self_duality_report, CorpusMix, Curvature,
    Error, GeneratorSpec, Report, SampleConfig, Vec64,
};

const DEFAULT_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "osslab",
    version,
    about = "Algebraic curvature models and the Osserman/duality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a model and write it as a model file.
    Make(MakeArgs),
    /// Run checks on a model file.
    Check(CheckArgs),
    /// Print sorted Jacobi eigenvalues on the orthogonal complement of directions.
    Spectrum(SpectrumArgs),
    /// Build an adapted basis at a direction and classify the eigenvalue structure.
    Classify(ClassifyArgs),
    /// Compare duality and Osserman verdicts over a generated corpus.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    SpaceForm,
    Canonical,
    Random,
    Perturbed,
}

#[derive(Args)]
struct MakeArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    dim: Option<usize>,
    /// Sectional curvature of a space form (also the base of a perturbation).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Eigenvalues λ₁,λ₂,λ₃ of a canonical model (also the base of a perturbation).
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    lambdas: Option<Vec<f64>>,
    #[arg(long, env = "OSSLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    scale: Option<f64>,
    /// Perturbation size; defaults to 0.05·max(1, ‖base‖∞).
    #[arg(long)]
    eps: Option<f64>,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Osserman,
    Duality,
    Einstein,
    Selfdual,
    All,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = What::All)]
    what: What,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, env = "OSSLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Test duality on eigenvector bases only, without probes inside repeated eigenspaces.
    #[arg(long)]
    basis_only: bool,
    /// Emit report records instead of the human summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    file: PathBuf,
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 1,
        allow_hyphen_values = true,
        conflicts_with = "samples"
    )]
    direction: Option<Vec<f64>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "OSSLAB_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ClassifyArgs {
    file: PathBuf,
    /// Base direction x; defaults to e₁.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    direction: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Corpus {
    Mixed,
    SpaceForm,
    Canonical,
    Random,
    Perturbed,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=4))]
    dim: u8,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, env = "OSSLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Directions sampled per model.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Corpus::Mixed)]
    corpus: Corpus,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Io(String),
    Check(Option<String>),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            Failure::Usage(m) | Failure::Io(m) => Some(m),
            Failure::Check(m) => m.as_deref(),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let outcome = match cli.command {
        Command::Make(a) => make(a),
        Command::Check(a) => check(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Classify(a) => classify(a),
        Command::Fuzz(a) => fuzz(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(m) = f.message() {
                eprintln!("error: {m}");
            }
            ExitCode::from(f.code())
        }
    }
}

fn load(path: &Path) -> Result<Curvature, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    read_model(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn check_tol(tol: f64) -> Outcome {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("tolerance must be positive, got {tol}")))
    }
}

fn direction(coords: &[f64], n: usize) -> Result<Vec64, Failure> {
    if coords.len() != n {
        return Err(usage(format!(
            "direction has {} coordinates, model dimension is {n}",
            coords.len()
        )));
    }
    Vec64::from_f64(coords)
        .normalized()
        .map_err(|_| usage("direction must be a non-zero finite vector"))
}

/// Fixed-point rendering with trailing zeros trimmed: `2.0000000000004 → 2`.
fn num(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn nums(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ")
}

fn make(a: MakeArgs) -> Outcome {
    let lambdas = match &a.lambdas {
        Some(l) if l.len() != 3 => return Err(usage("--lambdas takes exactly three values")),
        Some(l) => Some([l[0], l[1], l[2]]),
        None => None,
    };
    let reject = |flag: &str, present: bool| {
        if present {
            Err(usage(format!("{flag} does not apply to this kind")))
        } else {
            Ok(())
        }
    };
    let dim = a.dim.unwrap_or(4);
    let spec = match a.kind {
        Kind::SpaceForm => {
            reject("--lambdas", lambdas.is_some())?;
            reject("--scale", a.scale.is_some())?;
            reject("--eps", a.eps.is_some())?;
            let c = a.c.ok_or_else(|| usage("--kind space-form needs --c"))?;
            GeneratorSpec::space_form(dim, c)
        }
        Kind::Canonical => {
            reject("--c", a.c.is_some())?;
            reject("--scale", a.scale.is_some())?;
            reject("--eps", a.eps.is_some())?;
            if a.dim.is_some_and(|d| d != 4) {
                return Err(usage("canonical models exist in dimension 4 only"));
            }
            GeneratorSpec::canonical(
                lambdas.ok_or_else(|| usage("--kind canonical needs --lambdas"))?,
            )
        }
        Kind::Random => {
            reject("--c", a.c.is_some())?;
            reject("--lambdas", lambdas.is_some())?;
            reject("--eps", a.eps.is_some())?;
            let scale = a.scale.unwrap_or(1.0);
            if !scale.is_finite() || scale < 0.0 {
                return Err(usage(format!("--scale must be non-negative, got {scale}")));
            }
            GeneratorSpec::random(dim, a.seed, scale)
        }
        Kind::Perturbed => {
            reject("--scale", a.scale.is_some())?;
            let base = match (a.c, lambdas) {
                (Some(c), None) => GeneratorSpec::space_form(dim, c),
                (None, Some(l)) if a.dim.is_none_or(|d| d == 4) => GeneratorSpec::canonical(l),
                (None, Some(_)) => return Err(usage("canonical models exist in dimension 4 only")),
                _ => {
                    return Err(usage(
                        "--kind perturbed needs exactly one of --c or --lambdas for the base model",
                    ))
                }
            };
            let eps = match a.eps {
                Some(e) if !e.is_finite() || e < 0.0 => {
                    return Err(usage(format!("--eps must be non-negative, got {e}")))
                }
                Some(e) => e,
                None => {
                    let norm = base.build::<f64>().map_err(usage)?.norm_inf();
                    DEFAULT_RELATIVE_EPS * norm.max(1.0)
                }
            };
            GeneratorSpec::perturbed(base, a.seed, eps)
        }
    };
    let r = spec.build::<f64>().map_err(usage)?;
    let text = write_model(&r, Some(spec)) + "\n";
    match &a.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check(a: CheckArgs) -> Outcome {
    check_tol(a.tol)?;
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let r = load(&a.file)?;
    let cfg = SampleConfig::new(a.samples, a.seed);
    let probes = if a.basis_only {
        0
    } else {
        DEFAULT_EIGENSPACE_PROBES
    };
    let dim4 = r.dim() == 4;
    if a.what == What::Selfdual && !dim4 {
        return Err(usage(format!(
            "self-duality is defined in dimension 4, model has dimension {}",
            r.dim()
        )));
    }
    let wants = |w: What| a.what == w || a.what == What::All;
    let mut reports: Vec<Report> = Vec::new();
    let core = |e: Error| Failure::Usage(e.to_string());
    if wants(What::Osserman) {
        reports.push(osserman_check_sampled(&r, &cfg, a.tol).map_err(core)?);
        if dim4 {
            reports.push(osserman_check_exact(&r, a.tol).map_err(core)?);
        }
    }
    if wants(What::Duality) {
        reports.push(rakic_duality_check(&r, &cfg, a.tol, probes).map_err(core)?);
    }
    if wants(What::Einstein) {
        reports.push(r.einstein_check(a.tol));
    }
    if wants(What::Selfdual) && dim4 {
        reports.push(self_duality_report(&r, a.tol).map_err(core)?);
    }

    if a.json {
        let records: Vec<_> = reports.iter().map(|rep| rep.to_record()).collect();
        let text = if records.len() == 1 {
            serde_json::to_string_pretty(&records[0])
        } else {
            serde_json::to_string_pretty(&records)
        }
        .expect("report serializes");
        println!("{text}");
    } else {
        for rep in &reports {
            let verdict = if rep.passed() { "pass" } else { "fail" };
            let marginal = if rep.marginal { " (marginal)" } else { "" };
            println!(
                "{}: {verdict}{marginal}  max residual {:.3e}, bound {:.3e}, samples {}",
                rep.check,
                rep.max_residual,
                rep.tolerance * rep.scale,
                rep.samples
            );
            if let Some(w) = &rep.witness {
                println!("  witness direction: {}", nums(&w.direction.to_f64()));
                println!(
                    "  eigenvalue: {}  residual: {:.3e}",
                    num(w.eigenvalue),
                    w.residual
                );
                if let Some((i, j)) = w.entry {
                    println!("  entry: ({}, {})", i + 1, j + 1);
                }
            }
        }
    }
    if reports.iter().all(|rep| rep.passed()) {
        Ok(())
    } else {
        Err(Failure::Check(None))
    }
}

fn spectrum(a: SpectrumArgs) -> Outcome {
    let r = load(&a.file)?;
    let n = r.dim();
    if let Some(coords) = &a.direction {
        let x = direction(coords, n)?;
        let dec = perp_spectrum(&r, &x).map_err(usage)?;
        println!("{}", nums(&dec.eigenvalues));
        return Ok(());
    }
    let count = a.samples.unwrap_or(10);
    if count == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let cfg = SampleConfig {
        count,
        seed: a.seed,
        include_structured: false,
    };
    for x in sample_unit_vectors::<f64>(n, &cfg).map_err(usage)? {
        let dec = perp_spectrum(&r, &x).map_err(usage)?;
        println!("{} -> {}", nums(&x.to_f64()), nums(&dec.eigenvalues));
    }
    Ok(())
}

fn classify(a: ClassifyArgs) -> Outcome {
    check_tol(a.tol)?;
    let r = load(&a.file)?;
    if r.dim() != 4 {
        return Err(usage(format!(
            "classify needs a dimension-4 model, got dimension {}",
            r.dim()
        )));
    }
    let x = match &a.direction {
        Some(coords) => direction(coords, 4)?,
        None => Vec64::basis(4, 0),
    };
    let basis = match adapted_basis(&r, &x, a.tol) {
        Ok(b) => b,
        Err(e @ Error::NotAdapted { .. }) => return Err(Failure::Check(Some(e.to_string()))),
        Err(e) => return Err(usage(e)),
    };
    for (name, v) in ["x", "y", "z", "w"].iter().zip(basis.vectors()) {
        println!("{name}: {}", nums(&v.to_f64()));
    }
    println!("lambdas: {}", nums(&basis.lambdas));
    println!("max residual: {:e}", basis.max_residual);
    println!(
        "case: {}",
        classify_structure(&basis.lambdas, a.tol).label()
    );
    Ok(())
}

fn fuzz(a: FuzzArgs) -> Outcome {
    check_tol(a.tol)?;
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let mix = match a.corpus {
        Corpus::Mixed => CorpusMix::Mixed,
        Corpus::SpaceForm => CorpusMix::SpaceForm,
        Corpus::Canonical => CorpusMix::Canonical,
        Corpus::Random => CorpusMix::Random,
        Corpus::Perturbed => CorpusMix::Perturbed,
    };
    let corpus = fuzz_corpus(a.dim as usize, a.trials as usize, a.seed, mix).map_err(usage)?;
    let cfg = SampleConfig::new(a.samples, a.seed);
    let summary = run_fuzz(&corpus, &cfg, a.tol).map_err(usage)?;
    let total = summary.trials.len();
    let hard = summary.hard_disagreements();
    if a.json {
        let trials: Vec<_> = summary
            .trials
            .iter()
            .map(|t| {
                json!({
                    "index": t.index,
                    "generator": t.spec,
                    "duality": t.duality,
                    "osserman": t.osserman,
                    "exact": t.exact,
                    "consistent": t.consistent,
                    "marginal": t.marginal,
                })
            })
            .collect();
        let out = json!({
            "dimension": a.dim,
            "trials": total,
            "agreements": summary.agreements(),
            "hardDisagreements": hard,
            "marginal": summary.marginal(),
            "results": trials,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("summary serializes")
        );
    } else {
        println!("agreements: {}/{total}", summary.agreements());
        println!("marginal: {}", summary.marginal());
        for t in summary.trials.iter().filter(|t| !t.consistent) {
            println!(
                "disagreement at trial {}{}: duality {}, osserman {}, exact {:?}",
                t.index,
                if t.marginal { " (marginal)" } else { "" },
                t.duality,
                t.osserman,
                t.exact
            );
        }
    }
    if hard == 0 {
        Ok(())
    } else {
        Err(Failure::Check(Some(format!(
            "{hard} non-marginal disagreements"
        ))))
    }
}
