//! One function per subcommand. Each returns the report as JSON plus an
//! optional CSV table.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cache::{BasisCache, BasisProvider};
use super::suite::{self, Check, SuiteConfig};
use super::{Command, Outcome, RunConfig};
use crate::error::{Error, Result};
use crate::monogenics::{harmonic_dimension, monogenic_rank, monogenic_real_dimension, SpaceTag};
use crate::operators::{
    complement_ta, low_degree_constant, project_ta, project_ta_kernel, sobolev_norm, spectrum_report,
    spinorial_laplacian_spectral, tail_constant, validate_indices, verify_cauchy_integral_formula, SobolevSpec,
    ESTIMATE_SLACK,
};
use crate::random::{random_combination, random_unit_vector};
use crate::specfun::{addition_kernel, calibrate_argument_sign, SignCalibration};
use crate::sphere::{gram_identity_error, BasisFamily, CoeffsRecord, OrthonormalSystem, QuadratureRule, SpectralCoeffs};

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let bases = BasisProvider::new(cfg.cache_dir.as_ref().map(BasisCache::new));
    match command {
        Command::Basis => cmd_basis(cfg, &bases),
        Command::Spectrum => cmd_spectrum(cfg, &bases),
        Command::Verify => cmd_verify(cfg, &bases),
        Command::Sobolev { coeffs } => cmd_sobolev(cfg, coeffs),
        Command::Project { coeffs } => cmd_project(cfg, &bases, coeffs),
        Command::Kernel => cmd_kernel(cfg, &bases),
        Command::Cauchy => cmd_cauchy(cfg, &bases),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Serialize)]
pub struct DimensionRow {
    pub m: usize,
    pub space: &'static str,
    /// Number of real basis functions found.
    pub computed: usize,
    /// Combinatorial prediction for `computed`.
    pub expected: usize,
    /// Scalar harmonic count for H, Clifford-module rank for P and Q.
    pub scalar_count: usize,
    /// Laplacian residual (H, Q) or Dirac residual (P) of the elements.
    pub residual: f64,
    pub gram_error: f64,
}

#[derive(Debug, Serialize)]
struct BasisReport {
    n: usize,
    m_max: usize,
    rows: Vec<DimensionRow>,
    pass: bool,
}

pub fn cmd_basis(cfg: &RunConfig, bases: &BasisProvider) -> Result<Outcome> {
    let n = cfg.n;
    let mut rows = Vec::new();
    for m in 0..=cfg.m_max {
        for space in [SpaceTag::H, SpaceTag::P, SpaceTag::Q] {
            let b = bases.get(n, m, space)?;
            let (expected, scalar_count) = match space {
                SpaceTag::H => (harmonic_dimension(n, m), harmonic_dimension(n, m)),
                _ => (monogenic_real_dimension(n, m), monogenic_rank(n, m)),
            };
            let residual = b
                .realized()
                .iter()
                .map(|p| match space {
                    SpaceTag::P => p.dirac_apply().max_abs_coeff(),
                    _ => p.laplacian_apply().max_abs_coeff(),
                })
                .fold(0.0, f64::max);
            let quad = QuadratureRule::build(n, 2 * b.restriction_degree())?;
            rows.push(DimensionRow {
                m,
                space: space.name(),
                computed: b.len(),
                expected,
                scalar_count,
                residual,
                gram_error: gram_identity_error(&b.gram(&quad)?),
            });
        }
    }
    for r in rows.iter().filter(|r| r.computed != r.expected) {
        eprintln!(
            "dimension mismatch: {} m={}: computed {}, predicted {}",
            r.space, r.m, r.computed, r.expected
        );
    }
    let pass = rows.iter().all(|r| r.computed == r.expected);
    let table = to_csv(&rows)?;
    Ok(Outcome {
        json: to_json(&BasisReport {
            n,
            m_max: cfg.m_max,
            rows,
            pass,
        })?,
        table: Some(table),
        pass,
    })
}

#[derive(Debug, Serialize)]
struct SpectrumRow {
    m: usize,
    expected: f64,
    dimension: usize,
    positive: usize,
    negative: usize,
    max_abs_error: f64,
}

pub fn cmd_spectrum(cfg: &RunConfig, bases: &BasisProvider) -> Result<Outcome> {
    let degree = cfg.quad_degree_at_least(2 * cfg.m_max + 2)?;
    let quad = QuadratureRule::build(cfg.n, degree)?;
    let report = spectrum_report(&bases.monogenic_range(cfg.n, cfg.m_max)?, &quad, cfg.tol.unwrap_or(1e-8))?;
    let rows: Vec<SpectrumRow> = report
        .blocks
        .iter()
        .map(|b| SpectrumRow {
            m: b.m,
            expected: b.expected,
            dimension: b.dimension,
            positive: b.positive,
            negative: b.negative,
            max_abs_error: b.max_abs_error,
        })
        .collect();
    Ok(Outcome {
        json: to_json(&report)?,
        table: Some(to_csv(&rows)?),
        pass: report.pass,
    })
}

fn suite_config(cfg: &RunConfig) -> SuiteConfig {
    SuiteConfig {
        n: cfg.n,
        m_max: cfg.m_max,
        a: cfg.a,
        s: cfg.s,
        t: cfg.t,
        seed: cfg.seed,
        tol: cfg.tol,
        cif_degree: cfg.quad_degree.unwrap_or(40),
    }
}

#[derive(Debug, Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    measured: f64,
    bound: f64,
    pass: bool,
}

fn check_rows(checks: &[Check]) -> Vec<CheckRow<'_>> {
    checks
        .iter()
        .map(|c| CheckRow {
            name: c.name,
            measured: c.measured,
            bound: c.bound,
            pass: c.pass,
        })
        .collect()
}

pub fn cmd_verify(cfg: &RunConfig, bases: &BasisProvider) -> Result<Outcome> {
    let report = suite::run_suite(&suite_config(cfg), bases)?;
    Ok(Outcome {
        json: to_json(&report)?,
        table: Some(to_csv(&check_rows(&report.checks))?),
        pass: report.pass,
    })
}

fn read_coeffs(path: &Path) -> Result<SpectralCoeffs> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let record: CoeffsRecord = serde_json::from_str(&text)?;
    if record.n == 0 || record.n + 1 > crate::clifford::MAX_DIM {
        return Err(Error::UnsupportedDimension(record.n + 1));
    }
    let coeffs = SpectralCoeffs::from_record(&record);
    validate_indices(&coeffs)?;
    Ok(coeffs)
}

#[derive(Debug, Serialize)]
struct SobolevReport {
    n: usize,
    family: BasisFamily,
    s: f64,
    t: f64,
    a: usize,
    norm_s: f64,
    norm_t: f64,
    norm_0: f64,
    projected_norm_s: f64,
    tail_norm_s: f64,
    tail_norm_t: f64,
    /// `||T_a phi||_s / ((a+(n-1)/2)^s ||T_a phi||_0)`.
    low_degree_ratio: Option<f64>,
    /// `||(I-T_a) phi||_t / ((a+1+(n-1)/2)^(t-s) ||(I-T_a) phi||_s)`.
    tail_ratio: Option<f64>,
    pass: bool,
}

pub fn cmd_sobolev(cfg: &RunConfig, path: &Path) -> Result<Outcome> {
    let coeffs = read_coeffs(path)?;
    let n = coeffs.n();
    if cfg.t > cfg.s {
        return Err(Error::InvalidParameter(format!("need t <= s, got s={}, t={}", cfg.s, cfg.t)));
    }
    let spec_s = SobolevSpec::new(cfg.s, n)?;
    let spec_t = SobolevSpec::new(cfg.t, n)?;
    let spec_0 = SobolevSpec::new(0.0, n)?;
    let low = project_ta(&coeffs, cfg.a);
    let tail = complement_ta(&coeffs, cfg.a);
    let ratio = |num: f64, den: f64| (den > 0.0).then(|| num / den);
    let low_degree_ratio = ratio(
        sobolev_norm(&low, &spec_s)?,
        low_degree_constant(n, cfg.a, cfg.s) * sobolev_norm(&low, &spec_0)?,
    );
    let tail_ratio = ratio(
        sobolev_norm(&tail, &spec_t)?,
        tail_constant(n, cfg.a, cfg.s, cfg.t) * sobolev_norm(&tail, &spec_s)?,
    );
    let ok = |r: Option<f64>| r.map_or(true, |v| v <= 1.0 + ESTIMATE_SLACK);
    let pass = ok(low_degree_ratio) && ok(tail_ratio);
    let report = SobolevReport {
        n,
        family: coeffs.family(),
        s: cfg.s,
        t: cfg.t,
        a: cfg.a,
        norm_s: sobolev_norm(&coeffs, &spec_s)?,
        norm_t: sobolev_norm(&coeffs, &spec_t)?,
        norm_0: sobolev_norm(&coeffs, &spec_0)?,
        projected_norm_s: sobolev_norm(&low, &spec_s)?,
        tail_norm_s: sobolev_norm(&tail, &spec_s)?,
        tail_norm_t: sobolev_norm(&tail, &spec_t)?,
        low_degree_ratio,
        tail_ratio,
        pass,
    };
    Ok(Outcome {
        json: to_json(&report)?,
        table: None,
        pass,
    })
}

#[derive(Debug, Serialize)]
struct ProjectReport {
    n: usize,
    family: BasisFamily,
    a: usize,
    projected: CoeffsRecord,
    removed_l2: f64,
    idempotence: f64,
    /// Max distance between kernel-integral and truncated `T_a` at seeded
    /// points; absent on the circle, where the kernel is not defined.
    kernel_max_diff: Option<f64>,
    /// Spinorial Laplacian of order `d` applied to the projection
    /// (monogenic family only).
    spinorial_laplacian: Option<CoeffsRecord>,
    tol: f64,
    pass: bool,
}

pub fn cmd_project(cfg: &RunConfig, bases: &BasisProvider, path: &Path) -> Result<Outcome> {
    let coeffs = read_coeffs(path)?;
    let n = coeffs.n();
    let a = cfg.a;
    let projected = project_ta(&coeffs, a);
    let removed_l2 = complement_ta(&coeffs, a).l2_norm();
    let idempotence = project_ta(&projected, a).max_abs_diff(&projected);
    let tol = cfg.tol.unwrap_or(1e-8);

    let kernel_max_diff = match (n >= 2, coeffs.max_degree()) {
        (true, Some(top)) => {
            let system = match coeffs.family() {
                BasisFamily::Harmonic => OrthonormalSystem::harmonic(&bases.harmonic_range(n, top)?)?,
                BasisFamily::Monogenic => OrthonormalSystem::monogenic(&bases.monogenic_range(n, top)?)?,
            };
            let f = system.synthesize_polynomial(&coeffs)?;
            let tf = system.synthesize_polynomial(&projected)?;
            let degree = cfg.quad_degree_at_least(f.degree() + a)?;
            let quad = QuadratureRule::build(n, degree)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut worst = 0.0f64;
            for _ in 0..10 {
                let w = random_unit_vector(&mut rng, n + 1);
                worst = worst.max(project_ta_kernel(&f, n, a, &w, &quad)?.distance(&tf.eval_unchecked(&w)));
            }
            Some(worst)
        }
        _ => None,
    };
    let spinorial_laplacian = match coeffs.family() {
        BasisFamily::Monogenic => Some(spinorial_laplacian_spectral(&projected, cfg.d)?.to_record()),
        BasisFamily::Harmonic => None,
    };
    let pass = idempotence <= 1e-12 && kernel_max_diff.map_or(true, |d| d < tol);
    let report = ProjectReport {
        n,
        family: coeffs.family(),
        a,
        projected: projected.to_record(),
        removed_l2,
        idempotence,
        kernel_max_diff,
        spinorial_laplacian,
        tol,
        pass,
    };
    Ok(Outcome {
        json: to_json(&report)?,
        table: None,
        pass,
    })
}

#[derive(Debug, Serialize)]
struct KernelRow {
    m: usize,
    harmonic_dimension: usize,
    /// `G_m(t)` at `t = 1, 0, -1`.
    at_one: f64,
    at_zero: f64,
    at_minus_one: f64,
}

#[derive(Debug, Serialize)]
struct KernelReport {
    n: usize,
    m_max: usize,
    calibration: SignCalibration,
    addition: Check,
    reproducing: Check,
    kernel: Vec<KernelRow>,
    pass: bool,
}

pub fn cmd_kernel(cfg: &RunConfig, bases: &BasisProvider) -> Result<Outcome> {
    let n = cfg.n;
    if n < 2 {
        return Err(Error::InvalidParameter("kernels need n >= 2".into()));
    }
    let calibration = calibrate_argument_sign(n, cfg.m_max, 50, cfg.seed)?;
    let scfg = suite_config(cfg);
    let (addition, _) = suite::addition_theorem(&scfg)?;
    let reproducing = suite::reproducing_property(&scfg, bases)?;
    let kernel = (0..=cfg.m_max)
        .map(|m| {
            Ok(KernelRow {
                m,
                harmonic_dimension: harmonic_dimension(n, m),
                at_one: addition_kernel(n, m, 1.0)?,
                at_zero: addition_kernel(n, m, 0.0)?,
                at_minus_one: addition_kernel(n, m, -1.0)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = addition.pass && reproducing.pass;
    let table = to_csv(&kernel)?;
    Ok(Outcome {
        json: to_json(&KernelReport {
            n,
            m_max: cfg.m_max,
            calibration,
            addition,
            reproducing,
            kernel,
            pass,
        })?,
        table: Some(table),
        pass,
    })
}

#[derive(Debug, Serialize)]
struct ConvergencePoint {
    quad_degree: usize,
    error: f64,
}

#[derive(Debug, Serialize)]
struct CauchyReport {
    n: usize,
    checks: Vec<Check>,
    /// Integral-formula error for one fixed degree-1 monogenic and point
    /// as the quadrature degree grows.
    convergence: Vec<ConvergencePoint>,
    pass: bool,
}

pub fn cmd_cauchy(cfg: &RunConfig, bases: &BasisProvider) -> Result<Outcome> {
    let n = cfg.n;
    let scfg = suite_config(cfg);
    let checks = vec![
        suite::cauchy_theorem(&scfg, bases)?,
        suite::cauchy_calibration(&scfg)?,
        suite::cauchy_integral_formula(&scfg, bases)?,
    ];
    let f = random_combination(&mut ChaCha8Rng::seed_from_u64(cfg.seed), &bases.monogenic(n, 1)?);
    let y: Vec<f64> = [0.3, 0.1, -0.2].into_iter().chain(std::iter::repeat(0.0)).take(n + 1).collect();
    let convergence = [10, 20, 30, 40, 50]
        .into_iter()
        .map(|degree| {
            let quad = QuadratureRule::build(n, degree)?;
            Ok(ConvergencePoint {
                quad_degree: degree,
                error: verify_cauchy_integral_formula(&f, &y, &quad)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(Outcome {
        json: to_json(&CauchyReport {
            n,
            checks,
            convergence,
            pass,
        })?,
        table: None,
        pass,
    })
}
