//! The full verification suite behind `verify`, one [`Check`] per claim.
//!
//! Every check draws its random data from its own ChaCha stream of the run
//! seed, so adding or reordering checks leaves the others unchanged.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cache::BasisProvider;
use crate::clifford::Multivector;
use crate::error::Result;
use crate::monogenics::{harmonic_basis, harmonic_dimension, monogenic_basis, monogenic_real_dimension, SpaceTag};
use crate::operators::{
    conformal_dirac_polynomial, conformal_dirac_spectral, intertwining_matrix_residual, intertwining_residual, project_ta,
    project_ta_kernel, sobolev_base, sobolev_norm, spectrum_report, tail_constant, verify_cauchy_integral_formula,
    verify_cauchy_theorem, verify_embedding_estimates, SobolevSpec,
};
use crate::polynomials::MVPolynomial;
use crate::random::{random_coefficients, random_combination, random_point_in_ball, random_polynomial, random_unit_vector};
use crate::specfun::{calibrate_argument_sign, calibrate_cauchy_constant};
use crate::sphere::{gram_identity_error, BasisFamily, OrthonormalSystem, QuadratureRule, SpectralCoeffs};

/// Parameters of a suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub m_max: usize,
    pub a: usize,
    pub s: f64,
    pub t: f64,
    pub seed: u64,
    /// Overrides every non-integer bound when set.
    pub tol: Option<f64>,
    /// Quadrature degree for the Cauchy integral formula.
    pub cif_degree: usize,
}

impl SuiteConfig {
    pub fn new(n: usize, m_max: usize, seed: u64) -> Self {
        Self {
            n,
            m_max,
            a: 1,
            s: 2.0,
            t: 0.5,
            seed,
            tol: None,
            cif_degree: 40,
        }
    }

    fn bound(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// One verified claim.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub claim: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `measured <= bound`.
    pub fn at_most(name: &'static str, claim: &'static str, measured: f64, bound: f64) -> Self {
        Self {
            name,
            claim,
            measured,
            bound,
            pass: measured <= bound,
        }
    }

    /// Passes when `measured < bound`.
    pub fn below(name: &'static str, claim: &'static str, measured: f64, bound: f64) -> Self {
        Self {
            name,
            claim,
            measured,
            bound,
            pass: measured < bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<Check>,
    pub skipped: Vec<String>,
    /// Argument sign of the addition theorem that matched the basis sum.
    pub addition_sign: Option<f64>,
    pub pass: bool,
}

pub fn clifford_relations(cfg: &SuiteConfig) -> Check {
    let dim = cfg.n + 1;
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let ei = Multivector::generator(dim, i);
            let ej = Multivector::generator(dim, j);
            let mut sum = &(&ei * &ej) + &(&ej * &ei);
            if i == j {
                sum += &Multivector::scalar(dim, 2.0);
            }
            worst = worst.max(sum.frobenius_norm());
        }
    }
    Check::at_most("clifford_relations", "e_i e_j + e_j e_i = -2 delta_ij", worst, 0.0)
}

pub fn anticommutation_pointwise(cfg: &SuiteConfig) -> Result<Check> {
    let mut rng = cfg.rng(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let degree = rng.gen_range(0..=cfg.m_max.max(1));
        let f = random_polynomial(&mut rng, cfg.n + 1, degree);
        let w = random_unit_vector(&mut rng, cfg.n + 1);
        worst = worst.max(intertwining_residual(&f, &w)?);
    }
    Ok(Check::below(
        "anticommutation_pointwise",
        "Gamma(omega f) + omega Gamma f = n omega f",
        worst,
        cfg.bound(1e-9),
    ))
}

pub fn anticommutation_matrix(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let mut worst = 0.0f64;
    for m in 0..=cfg.m_max {
        let quad = QuadratureRule::build(cfg.n, 2 * m + 2)?;
        worst = worst.max(intertwining_matrix_residual(&bases.monogenic(cfg.n, m)?, &quad)?);
    }
    Ok(Check::below(
        "anticommutation_matrix",
        "M_Gamma M_omega + M_omega M_Gamma = n M_omega on each degree block",
        worst,
        cfg.bound(1e-8),
    ))
}

pub fn dirac_square(cfg: &SuiteConfig) -> Check {
    let mut rng = cfg.rng(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let degree = rng.gen_range(0..=5);
        let p = random_polynomial(&mut rng, cfg.n + 1, degree);
        let lhs = p.dirac_apply().dirac_apply();
        let rhs = p.laplacian_apply().scale(-1.0);
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Check::below("dirac_square", "D^2 = -Laplacian", worst, cfg.bound(1e-10))
}

pub fn dimension_counts(cfg: &SuiteConfig) -> Result<[Check; 2]> {
    let mut h_dev = 0usize;
    let mut p_dev = 0usize;
    for m in 0..=cfg.m_max {
        h_dev = h_dev.max(harmonic_basis(cfg.n, m)?.len().abs_diff(harmonic_dimension(cfg.n, m)));
        let p = monogenic_basis(cfg.n, m)?.len();
        p_dev = p_dev.max(p.abs_diff(monogenic_real_dimension(cfg.n, m)));
    }
    Ok([
        Check::at_most(
            "harmonic_dimension",
            "dim H_m = (2m+n-1)(m+n-2)!/((n-1)! m!)",
            h_dev as f64,
            0.0,
        ),
        Check::at_most(
            "monogenic_dimension",
            "real dim P_m = binom(m+n-1, n-1) 2^(n+1)",
            p_dev as f64,
            0.0,
        ),
    ])
}

pub fn spectrum(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let quad = QuadratureRule::build(cfg.n, 2 * cfg.m_max + 2)?;
    let tol = cfg.bound(1e-8);
    let report = spectrum_report(&bases.monogenic_range(cfg.n, cfg.m_max)?, &quad, tol)?;
    Ok(Check {
        name: "spectrum",
        claim: "eigenvalues of D_s on span(P_m, omega P_m) are +-(m + n/2)",
        measured: report.max_abs_error,
        bound: tol,
        pass: report.pass,
    })
}

pub fn dirac_routes(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let p_bases = bases.monogenic_range(cfg.n, cfg.m_max)?;
    let system = OrthonormalSystem::monogenic(&p_bases)?;
    let quad = QuadratureRule::build(cfg.n, 2 * cfg.m_max + 2)?;
    let mut rng = cfg.rng(3);
    let mut worst = 0.0f64;
    for p in &p_bases {
        let f = random_combination(&mut rng, p);
        let ds = conformal_dirac_polynomial(&f);
        let direct = system.analyze(&|x: &[f64]| ds.eval_unchecked(x), &quad)?;
        let spectral = conformal_dirac_spectral(&system.analyze(&f, &quad)?)?;
        worst = worst.max(direct.max_abs_diff(&spectral));
    }
    Ok(Check::below(
        "dirac_routes",
        "symbolic D_s = omega(Gamma - n/2) agrees with the spectral multipliers",
        worst,
        cfg.bound(1e-8),
    ))
}

pub fn orthonormality(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let mut worst = 0.0f64;
    for m in 0..=cfg.m_max {
        for space in [SpaceTag::H, SpaceTag::P, SpaceTag::Q] {
            let b = bases.get(cfg.n, m, space)?;
            let quad = QuadratureRule::build(cfg.n, 2 * b.restriction_degree())?;
            worst = worst.max(gram_identity_error(&b.gram(&quad)?));
        }
    }
    Ok(Check::below(
        "orthonormality",
        "H_m, P_m and omega P_m bases are orthonormal in L^2(S^n)",
        worst,
        cfg.bound(1e-10),
    ))
}

pub fn fourier_reconstruction(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let h = bases.harmonic_range(cfg.n, cfg.m_max)?;
    let system = OrthonormalSystem::harmonic(&h)?;
    let quad = QuadratureRule::build(cfg.n, 2 * cfg.m_max)?;
    let mut rng = cfg.rng(4);
    let dim = cfg.n + 1;
    let mut f = MVPolynomial::zero(dim);
    for b in &h {
        for y in b.realized() {
            let c = Multivector::from_coeffs(dim, random_coefficients(&mut rng, 1 << dim))?;
            f.add_scaled(&y.right_mul(&c), 1.0);
        }
    }
    let coeffs = system.analyze(&f, &quad)?;
    let worst = quad
        .nodes()
        .iter()
        .map(|x| system.synthesize(&coeffs, x).map(|v| v.distance(&f.eval_unchecked(x))))
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))?;
    Ok(Check::below(
        "fourier_reconstruction",
        "sum of Y_mk times its Fourier coefficient reproduces f",
        worst,
        cfg.bound(1e-8),
    ))
}

pub fn addition_theorem(cfg: &SuiteConfig) -> Result<(Check, f64)> {
    let cal = calibrate_argument_sign(cfg.n, cfg.m_max, 50, cfg.seed)?;
    let err = if cal.sign > 0.0 { cal.plus_error } else { cal.minus_error };
    Ok((
        Check::below(
            "addition_theorem",
            "sum_k Y_mk(omega) Y_mk(nu) = N(n,m)/|S^n| C_m(omega.nu)/C_m(1)",
            err,
            cfg.bound(1e-8),
        ),
        cal.sign,
    ))
}

fn random_scalar_harmonic(rng: &mut ChaCha8Rng, system: &OrthonormalSystem, top: usize) -> SpectralCoeffs {
    let blades = 1usize << (system.n() + 1);
    let mut c = SpectralCoeffs::new(system.n(), BasisFamily::Harmonic);
    for m in 0..=top {
        let scalars = system.block_len(m) / blades;
        for (j, v) in random_coefficients(rng, scalars).into_iter().enumerate() {
            c.set(m, j * blades, v);
        }
    }
    c
}

fn random_clifford_harmonic(rng: &mut ChaCha8Rng, system: &OrthonormalSystem, top: usize) -> SpectralCoeffs {
    let mut c = SpectralCoeffs::new(system.n(), BasisFamily::Harmonic);
    for m in 0..=top {
        for (k, v) in random_coefficients(rng, system.block_len(m)).into_iter().enumerate() {
            c.set(m, k, v);
        }
    }
    c
}

pub fn reproducing_property(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let a = cfg.a;
    let system = OrthonormalSystem::harmonic(&bases.harmonic_range(cfg.n, a)?)?;
    let quad = QuadratureRule::build(cfg.n, 2 * a)?;
    let mut rng = cfg.rng(5);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = system.synthesize_polynomial(&random_clifford_harmonic(&mut rng, &system, a))?;
        for _ in 0..20 {
            let w = random_unit_vector(&mut rng, cfg.n + 1);
            let via_kernel = project_ta_kernel(&f, cfg.n, a, &w, &quad)?;
            worst = worst.max(via_kernel.distance(&f.eval_unchecked(&w)));
        }
    }
    Ok(Check::below(
        "reproducing_property",
        "(f, G_a(omega, .)) = f(omega) for f of degree at most a",
        worst,
        cfg.bound(1e-8),
    ))
}

pub fn projection(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<[Check; 3]> {
    let a = cfg.a;
    let top = a + 2;
    let system = OrthonormalSystem::harmonic(&bases.harmonic_range(cfg.n, top)?)?;
    let quad = QuadratureRule::build(cfg.n, top + a)?;
    let mut rng = cfg.rng(6);
    let mut consistency = 0.0f64;
    let mut idempotence = 0.0f64;
    let mut growth = 0.0f64;
    for _ in 0..20 {
        let coeffs = random_scalar_harmonic(&mut rng, &system, top);
        let f = system.synthesize_polynomial(&coeffs)?;
        let truncated = project_ta(&coeffs, a);
        let tf = system.synthesize_polynomial(&truncated)?;
        for _ in 0..5 {
            let w = random_unit_vector(&mut rng, cfg.n + 1);
            consistency = consistency.max(project_ta_kernel(&f, cfg.n, a, &w, &quad)?.distance(&tf.eval_unchecked(&w)));
        }
        idempotence = idempotence.max(project_ta(&truncated, a).max_abs_diff(&truncated));
        for s in [0.0, cfg.t, cfg.s] {
            let spec = SobolevSpec::new(s, cfg.n)?;
            growth = growth.max(sobolev_norm(&truncated, &spec)? - sobolev_norm(&coeffs, &spec)?);
        }
    }
    Ok([
        Check::below(
            "projection_consistency",
            "kernel-integral T_a agrees with coefficient truncation",
            consistency,
            cfg.bound(1e-8),
        ),
        Check::below("projection_idempotent", "T_a T_a = T_a", idempotence, cfg.bound(1e-12)),
        Check::at_most(
            "projection_contractive",
            "||T_a phi||_s <= ||phi||_s",
            growth,
            0.0,
        ),
    ])
}

pub fn cauchy_theorem(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let top = cfg.m_max.min(2);
    let quad = QuadratureRule::build(cfg.n, 2 * top + 1)?;
    let p = bases.monogenic_range(cfg.n, top)?;
    let mut rng = cfg.rng(7);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let i = rng.gen_range(0..=top);
        let f = random_combination(&mut rng, &p[i]);
        let j = rng.gen_range(0..=top);
        let g = random_combination(&mut rng, &p[j]).conjugate();
        worst = worst.max(verify_cauchy_theorem(&f, &g, &quad)?);
    }
    Ok(Check::below(
        "cauchy_theorem",
        "integral over S^n of g omega f vanishes for left monogenic f, right monogenic g",
        worst,
        cfg.bound(1e-8),
    ))
}

pub fn cauchy_calibration(cfg: &SuiteConfig) -> Result<Check> {
    let dim = cfg.n + 1;
    let quad = QuadratureRule::build(cfg.n, 30)?;
    let cal = calibrate_cauchy_constant(&quad)?;
    let one = MVPolynomial::constant(Multivector::one(dim));
    let err = verify_cauchy_integral_formula(&one, &vec![0.0; dim], &quad)?;
    let measured = err.max((cal.constant - cal.frozen).abs() / cal.frozen).max(cal.non_scalar_residual);
    Ok(Check::below(
        "cauchy_calibration",
        "f = 1 is reproduced at y = 0 with constant 1/|S^n|",
        measured,
        cfg.bound(1e-10),
    ))
}

pub fn cauchy_integral_formula(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Check> {
    let top = cfg.m_max.min(2);
    let quad = QuadratureRule::build(cfg.n, cfg.cif_degree)?;
    let p = bases.monogenic_range(cfg.n, top)?;
    let mut rng = cfg.rng(8);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let i = rng.gen_range(0..=top);
        let f = random_combination(&mut rng, &p[i]);
        let y = random_point_in_ball(&mut rng, cfg.n + 1, 0.5);
        worst = worst.max(verify_cauchy_integral_formula(&f, &y, &quad)?);
    }
    Ok(Check::below(
        "cauchy_integral_formula",
        "f(y) = |S^n|^-1 integral of G(x - y) x f(x) for |y| <= 0.5",
        worst,
        cfg.bound(1e-6),
    ))
}

pub fn embedding(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let r = verify_embedding_estimates(cfg.n, cfg.a, cfg.s, cfg.t, 100, cfg.seed)?;
    let slack = 1.0 + cfg.bound(1e-9);
    let witness = cfg.bound(1e-10);
    Ok(vec![
        Check::at_most(
            "embedding_low_degree",
            "||phi||_s <= (a+(n-1)/2)^s ||phi||_0 for phi of degree <= a",
            r.low_degree.max_ratio,
            slack,
        ),
        Check::below(
            "embedding_low_degree_witness",
            "equality for phi in H_a",
            (r.low_degree.witness_ratio.unwrap_or(f64::NAN) - 1.0).abs(),
            witness,
        ),
        Check::at_most(
            "embedding_tail",
            "||phi||_t <= (a+1+(n-1)/2)^(t-s) ||phi||_s for phi orthogonal to degrees <= a",
            r.tail.max_ratio,
            slack,
        ),
        Check::below(
            "embedding_tail_witness",
            "equality for phi in H_(a+1)",
            (r.tail.witness_ratio.unwrap_or(f64::NAN) - 1.0).abs(),
            witness,
        ),
        Check::at_most(
            "embedding_sup_norm",
            "sup |phi| <= ||phi||_s (sum_m N(n,m) / (|S^n| (m+(n-1)/2)^(2s)))^(1/2)",
            r.sup_norm.max_ratio,
            slack,
        ),
    ])
}

/// `None` when `s == t`, where the constants are all 1.
pub fn compactness(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<Option<Check>> {
    if cfg.s <= cfg.t {
        return Ok(None);
    }
    let constants: Vec<f64> = (0..=6).map(|a| tail_constant(cfg.n, a, cfg.s, cfg.t)).collect();
    let worst_step = constants.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    // measured operator ratio of (I - T_a) on random phi stays under the constant
    let top = 7;
    let system = OrthonormalSystem::harmonic(&bases.harmonic_range(cfg.n, top)?)?;
    let spec_s = SobolevSpec::new(cfg.s, cfg.n)?;
    let spec_t = SobolevSpec::new(cfg.t, cfg.n)?;
    let mut rng = cfg.rng(9);
    let mut worst_ratio = 0.0f64;
    for _ in 0..20 {
        let phi = random_clifford_harmonic(&mut rng, &system, top);
        for (a, c) in constants.iter().enumerate() {
            let tail = phi.filtered(|m, _| m > a);
            let ratio = sobolev_norm(&tail, &spec_t)? / sobolev_norm(&phi, &spec_s)?;
            worst_ratio = worst_ratio.max(ratio / c);
        }
    }
    let decreasing = worst_step < 1.0 && worst_ratio <= 1.0 + cfg.bound(1e-9);
    Ok(Some(Check {
        name: "compactness",
        claim: "||I - T_a||_(s->t) <= (a+1+(n-1)/2)^(t-s) decreases to 0 over a = 0..6",
        measured: worst_step.max(worst_ratio),
        bound: 1.0,
        pass: decreasing,
    }))
}

pub fn sobolev_nesting(cfg: &SuiteConfig) -> Result<Check> {
    let mut rng = cfg.rng(10);
    let low = (0..).find(|&m| sobolev_base(cfg.n, m) >= 1.0).unwrap_or(0);
    let (hi_s, lo_s) = if cfg.s >= cfg.t { (cfg.s, cfg.t) } else { (cfg.t, cfg.s) };
    let spec_hi = SobolevSpec::new(hi_s, cfg.n)?;
    let spec_lo = SobolevSpec::new(lo_s, cfg.n)?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let mut c = SpectralCoeffs::new(cfg.n, BasisFamily::Harmonic);
        for m in low..=low + cfg.m_max {
            for (k, v) in random_coefficients(&mut rng, 3).into_iter().enumerate() {
                c.set(m, k, v);
            }
        }
        worst = worst.max(sobolev_norm(&c, &spec_lo)? / sobolev_norm(&c, &spec_hi)?);
    }
    Ok(Check::at_most(
        "sobolev_nesting",
        "||phi||_t <= ||phi||_s for t <= s on degrees with m+(n-1)/2 >= 1",
        worst,
        1.0 + cfg.bound(1e-12),
    ))
}

/// Runs every check that applies to `cfg.n`.
pub fn run_suite(cfg: &SuiteConfig, bases: &BasisProvider) -> Result<SuiteReport> {
    let mut checks = vec![
        clifford_relations(cfg),
        anticommutation_pointwise(cfg)?,
        anticommutation_matrix(cfg, bases)?,
        dirac_square(cfg),
    ];
    checks.extend(dimension_counts(cfg)?);
    checks.push(spectrum(cfg, bases)?);
    checks.push(dirac_routes(cfg, bases)?);
    checks.push(orthonormality(cfg, bases)?);
    checks.push(fourier_reconstruction(cfg, bases)?);
    let mut skipped = Vec::new();
    let mut addition_sign = None;
    if cfg.n >= 2 {
        let (check, sign) = addition_theorem(cfg)?;
        checks.push(check);
        addition_sign = Some(sign);
        checks.push(reproducing_property(cfg, bases)?);
        checks.extend(projection(cfg, bases)?);
    } else {
        skipped.extend(
            ["addition_theorem", "reproducing_property", "projection_consistency"]
                .iter()
                .map(|s| format!("{s}: Gegenbauer index (n-1)/2 must be positive")),
        );
    }
    checks.push(cauchy_theorem(cfg, bases)?);
    checks.push(cauchy_calibration(cfg)?);
    checks.push(cauchy_integral_formula(cfg, bases)?);
    checks.extend(embedding(cfg)?);
    match compactness(cfg, bases)? {
        Some(c) => checks.push(c),
        None => skipped.push("compactness: needs s > t".into()),
    }
    checks.push(sobolev_nesting(cfg)?);
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        config: cfg.clone(),
        checks,
        skipped,
        addition_sign,
        pass,
    })
}
