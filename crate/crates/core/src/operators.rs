//! The conformal Dirac operator `D_s = omega (Gamma - n/2)` on `S^n` and
//! the analysis built on it: its spectrum on `span(P_m, omega P_m)`, the
//! spinorial Laplacian, the projection `T_a`, Sobolev norms, the three
//! embedding estimates and the Cauchy theorem / integral formula checks.
//!
//! `D_s` has three independent realizations here: symbolic (through
//! `Gamma = -x D - E`), a dense matrix in an orthonormal basis, and
//! spectral multipliers on monogenic coefficients.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::monogenics::{harmonic_dimension, monogenic_real_dimension, BasisSet, SpaceTag};
use crate::polynomials::MVPolynomial;
use crate::random::random_coefficients;
use crate::specfun::{cauchy_kernel, cauchy_normalization, reproducing_kernel};
use crate::sphere::{gram_identity_error, surface_area, BasisFamily, OrthonormalSystem, QuadratureRule, SpectralCoeffs, SphereFunction};

/// Tolerance on `| |omega| - 1 |` for points handed to sphere operators.
pub const UNIT_TOL: f64 = 1e-12;

/// Interior points for the Cauchy integral formula must stay below this norm.
pub const CIF_MAX_RADIUS: f64 = 0.8;

/// Relative Dirac residual above which an input is not treated as monogenic.
pub const MONOGENIC_TOL: f64 = 1e-10;

/// Eigenvalue of `D_s` on degree `m`, up to sign: `m + n/2`.
pub fn dirac_eigenvalue(n: usize, m: usize) -> f64 {
    m as f64 + n as f64 / 2.0
}

fn check_unit(omega: &[f64]) -> Result<()> {
    let r = omega.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit(omega.to_vec()));
    }
    Ok(())
}

/// The polynomial `x (Gamma f - (n/2) f)`, whose restriction to the sphere
/// is `D_s f`.
pub fn conformal_dirac_polynomial(f: &MVPolynomial) -> MVPolynomial {
    let n = f.dim() as f64 - 1.0;
    let mut inner = f.gamma_apply();
    inner.add_scaled(f, -n / 2.0);
    inner.vector_multiply()
}

/// `D_s f` at the unit point `omega`.
pub fn conformal_dirac_symbolic(f: &MVPolynomial, omega: &[f64]) -> Result<Multivector> {
    if omega.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            actual: omega.len(),
        });
    }
    check_unit(omega)?;
    let n = f.dim() as f64 - 1.0;
    let mut inner = f.gamma_apply().eval_unchecked(omega);
    inner.add_scaled(&f.eval_unchecked(omega), -n / 2.0);
    Ok(inner.left_vector_mul(omega))
}

/// `|Gamma(x f) + x Gamma(f) - n x f|` at a point.
pub fn intertwining_residual(f: &MVPolynomial, omega: &[f64]) -> Result<f64> {
    if omega.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            actual: omega.len(),
        });
    }
    let n = f.dim() as f64 - 1.0;
    let xf = f.vector_multiply();
    let mut lhs = xf.gamma_apply().eval_unchecked(omega);
    lhs += &f.gamma_apply().eval_unchecked(omega).left_vector_mul(omega);
    lhs.add_scaled(&xf.eval_unchecked(omega), -n);
    Ok(lhs.frobenius_norm())
}

/// Orthonormal basis of `span(P_m, omega P_m)` on the sphere: the `P_m`
/// elements followed by their `omega` images.
#[derive(Debug, Clone)]
pub struct DiracBlock {
    n: usize,
    m: usize,
    elements: Vec<MVPolynomial>,
}

impl DiracBlock {
    pub fn new(p_basis: &BasisSet) -> Result<Self> {
        if p_basis.space() != SpaceTag::P {
            return Err(Error::WrongSpace {
                expected: "P",
                actual: p_basis.space().name(),
            });
        }
        if !p_basis.is_orthonormal() {
            return Err(Error::InvalidParameter("P basis must be orthonormal".into()));
        }
        let mut elements = p_basis.realized();
        elements.extend(p_basis.realized().iter().map(MVPolynomial::vector_multiply));
        Ok(Self {
            n: p_basis.n(),
            m: p_basis.m(),
            elements,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[MVPolynomial] {
        &self.elements
    }

    pub fn required_degree(&self) -> usize {
        2 * self.m + 2
    }

    fn check_quad(&self, quad: &QuadratureRule) -> Result<()> {
        if quad.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: quad.n(),
            });
        }
        quad.require_degree(self.required_degree())
    }

    /// Matrix `<b_i, L b_j>_R` of an operator given on polynomials. The
    /// operator's output only needs to agree with `L b_j` on the sphere.
    pub fn operator_matrix(&self, quad: &QuadratureRule, op: impl Fn(&MVPolynomial) -> MVPolynomial + Sync) -> Result<DMatrix<f64>> {
        self.check_quad(quad)?;
        let images: Vec<MVPolynomial> = self.elements.iter().map(op).collect();
        let s = quad.weighted_samples(&self.elements);
        let t = quad.weighted_samples(&images);
        Ok(s.transpose() * t)
    }

    /// Gram matrix of the block under `quad`.
    pub fn gram(&self, quad: &QuadratureRule) -> Result<DMatrix<f64>> {
        self.operator_matrix(quad, Clone::clone)
    }
}

/// Matrix of `D_s` on `span(P_m, omega P_m)` in the orthonormal basis
/// [`DiracBlock`] builds from `p_basis`.
pub fn assemble_dirac_matrix(p_basis: &BasisSet, quad: &QuadratureRule) -> Result<DMatrix<f64>> {
    DiracBlock::new(p_basis)?.operator_matrix(quad, conformal_dirac_polynomial)
}

/// Spectrum of one degree block.
#[derive(Debug, Clone, Serialize)]
pub struct BlockSpectrum {
    pub m: usize,
    pub dimension: usize,
    /// `m + n/2`; the expected eigenvalues are `+-expected`.
    pub expected: f64,
    pub eigenvalues: Vec<f64>,
    pub positive: usize,
    pub negative: usize,
    pub max_abs_error: f64,
    /// `max |M - M^T|` of the assembled matrix.
    pub asymmetry: f64,
    /// `max |G - I|` of the block basis under the quadrature.
    pub gram_error: f64,
}

/// Spectrum of `D_s` for degrees `0..=m_max`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub m_max: usize,
    pub quad_degree: usize,
    pub blocks: Vec<BlockSpectrum>,
    pub max_abs_error: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Eigen-analysis of one assembled block.
pub fn block_spectrum(p_basis: &BasisSet, quad: &QuadratureRule) -> Result<BlockSpectrum> {
    let block = DiracBlock::new(p_basis)?;
    let matrix = block.operator_matrix(quad, conformal_dirac_polynomial)?;
    let gram_error = gram_identity_error(&block.gram(quad)?);
    let asymmetry = (&matrix - matrix.transpose()).amax();
    let symmetric = (&matrix + matrix.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(symmetric).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let expected = dirac_eigenvalue(block.n, block.m);
    let max_abs_error = eigenvalues
        .iter()
        .map(|&v| (v.abs() - expected).abs())
        .fold(0.0, f64::max);
    Ok(BlockSpectrum {
        m: block.m,
        dimension: block.len(),
        expected,
        positive: eigenvalues.iter().filter(|&&v| v > 0.0).count(),
        negative: eigenvalues.iter().filter(|&&v| v < 0.0).count(),
        eigenvalues,
        max_abs_error,
        asymmetry,
        gram_error,
    })
}

/// Spectra for all `m <= m_max` from orthonormal `P_m` bases, one per degree.
pub fn spectrum_report(p_bases: &[BasisSet], quad: &QuadratureRule, tol: f64) -> Result<SpectrumReport> {
    let n = quad.n();
    let m_max = p_bases.len().saturating_sub(1);
    let blocks = p_bases
        .iter()
        .map(|b| block_spectrum(b, quad))
        .collect::<Result<Vec<_>>>()?;
    let max_abs_error = blocks.iter().map(|b| b.max_abs_error).fold(0.0, f64::max);
    let pass = blocks
        .iter()
        .all(|b| b.max_abs_error < tol && b.positive == b.negative && b.asymmetry < tol && b.gram_error < tol);
    Ok(SpectrumReport {
        n,
        m_max,
        quad_degree: quad.exact_degree(),
        blocks,
        max_abs_error,
        tol,
        pass,
    })
}

/// `max |M_Gamma M_omega + M_omega M_Gamma - n M_omega|` on a degree block.
pub fn intertwining_matrix_residual(p_basis: &BasisSet, quad: &QuadratureRule) -> Result<f64> {
    let block = DiracBlock::new(p_basis)?;
    let m_gamma = block.operator_matrix(quad, MVPolynomial::gamma_apply)?;
    let m_omega = block.operator_matrix(quad, MVPolynomial::vector_multiply)?;
    let lhs = &m_gamma * &m_omega + &m_omega * &m_gamma - &m_omega * block.n as f64;
    Ok(lhs.amax())
}

fn require_monogenic_family(coeffs: &SpectralCoeffs) -> Result<()> {
    if coeffs.family() != BasisFamily::Monogenic {
        return Err(Error::InvalidParameter(
            "operation needs coefficients in the monogenic family".into(),
        ));
    }
    Ok(())
}

/// Number of real basis functions in block `m` of a coefficient family.
pub fn block_size(n: usize, family: BasisFamily, m: usize) -> usize {
    match family {
        BasisFamily::Harmonic => harmonic_dimension(n, m) << (n + 1),
        BasisFamily::Monogenic => 2 * monogenic_real_dimension(n, m),
    }
}

/// Rejects entries whose `(m, k)` does not name a basis function.
pub fn validate_indices(coeffs: &SpectralCoeffs) -> Result<()> {
    for ((m, k), _) in coeffs.iter() {
        if k >= block_size(coeffs.n(), coeffs.family(), m) {
            return Err(Error::UnknownIndex { m, k });
        }
    }
    Ok(())
}

/// `D_s` as a spectral map: `D_s p = -(m + n/2) omega p` and
/// `D_s (omega p) = -(m + n/2) p` for `p` in `P_m`.
pub fn conformal_dirac_spectral(coeffs: &SpectralCoeffs) -> Result<SpectralCoeffs> {
    require_monogenic_family(coeffs)?;
    validate_indices(coeffs)?;
    let n = coeffs.n();
    let mut out = SpectralCoeffs::new(n, BasisFamily::Monogenic);
    for ((m, k), c) in coeffs.iter() {
        let half = monogenic_real_dimension(n, m);
        let partner = if k < half { k + half } else { k - half };
        out.set(m, partner, -dirac_eigenvalue(n, m) * c);
    }
    Ok(out)
}

/// Spinorial Laplacian of order `d`: multiplies both the `P_m` and the
/// `omega P_m` parts of degree `m` by `(m + n/2)^{2d}`.
pub fn spinorial_laplacian_spectral(coeffs: &SpectralCoeffs, d: u32) -> Result<SpectralCoeffs> {
    if d == 0 {
        return Err(Error::InvalidParameter("spinorial Laplacian order must be positive".into()));
    }
    require_monogenic_family(coeffs)?;
    validate_indices(coeffs)?;
    let n = coeffs.n();
    Ok(coeffs.scaled_by_degree(|m| dirac_eigenvalue(n, m).powi(2 * d as i32)))
}

/// Harmonic degree of an entry: `m` for the harmonic family and for the
/// `P_m` half of a monogenic block, `m + 1` for the `omega P_m` half.
pub fn harmonic_degree(coeffs: &SpectralCoeffs, m: usize, k: usize) -> usize {
    match coeffs.family() {
        BasisFamily::Harmonic => m,
        BasisFamily::Monogenic => {
            if k < monogenic_real_dimension(coeffs.n(), m) {
                m
            } else {
                m + 1
            }
        }
    }
}

/// Orthogonal projection `T_a` onto polynomials of degree at most `a`.
pub fn project_ta(coeffs: &SpectralCoeffs, a: usize) -> SpectralCoeffs {
    coeffs.filtered(|m, k| harmonic_degree(coeffs, m, k) <= a)
}

/// `(I - T_a)`: the part of `coeffs` above degree `a`.
pub fn complement_ta(coeffs: &SpectralCoeffs, a: usize) -> SpectralCoeffs {
    coeffs.filtered(|m, k| harmonic_degree(coeffs, m, k) > a)
}

/// `T_a f (omega) = integral of f(nu) G_a(omega, nu) dnu`.
pub fn project_ta_kernel<F>(f: &F, n: usize, a: usize, omega: &[f64], quad: &QuadratureRule) -> Result<Multivector>
where
    F: SphereFunction + ?Sized,
{
    check_unit(omega)?;
    if let Some(df) = f.polynomial_degree() {
        quad.require_degree(df + a)?;
    }
    let weights: Vec<f64> = quad
        .nodes()
        .iter()
        .map(|nu| reproducing_kernel(n, a, omega, nu))
        .collect::<Result<_>>()?;
    let mut acc = Multivector::zero(n + 1);
    for ((nu, w), g) in quad.nodes().iter().zip(quad.weights()).zip(&weights) {
        acc.add_scaled(&f.eval_at(nu), w * g);
    }
    Ok(acc)
}

/// Order of a Sobolev space on `S^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SobolevSpec {
    s: f64,
    n: usize,
}

impl SobolevSpec {
    pub fn new(s: f64, n: usize) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter(format!("Sobolev order must be nonnegative, got {s}")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("sphere dimension must be at least 1".into()));
        }
        Ok(Self { s, n })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(m + (n-1)/2)^{2s}`.
    pub fn weight(&self, m: usize) -> f64 {
        sobolev_base(self.n, m).powf(2.0 * self.s)
    }
}

/// `m + (n-1)/2`.
pub fn sobolev_base(n: usize, m: usize) -> f64 {
    m as f64 + (n as f64 - 1.0) / 2.0
}

/// `||phi||_{L^2_s} = (sum_m (m+(n-1)/2)^{2s} sum_k |c_mk|^2)^{1/2}`, with
/// `m` the harmonic degree of each entry.
pub fn sobolev_norm(coeffs: &SpectralCoeffs, spec: &SobolevSpec) -> Result<f64> {
    if coeffs.n() != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            actual: coeffs.n(),
        });
    }
    Ok(coeffs
        .iter()
        .map(|((m, k), c)| spec.weight(harmonic_degree(coeffs, m, k)) * c * c)
        .fold(0.0, |acc, v| acc + v)
        .sqrt())
}

/// Constant of the first estimate: `(a + (n-1)/2)^s`.
pub fn low_degree_constant(n: usize, a: usize, s: f64) -> f64 {
    sobolev_base(n, a).powf(s)
}

/// Constant of the second estimate: `(a + 1 + (n-1)/2)^{t-s}`, also the
/// operator norm of `I - T_a` from `L^2_s` to `L^2_t`.
pub fn tail_constant(n: usize, a: usize, s: f64, t: f64) -> f64 {
    sobolev_base(n, a + 1).powf(t - s)
}

/// Truncated sup-norm constant for functions supported in degrees
/// `a+1..=m_max`:
/// `(sum_{m=a+1}^{m_max} N(n,m) / (|S^n| (m+(n-1)/2)^{2s}))^{1/2}`.
pub fn sup_norm_constant(n: usize, a: usize, m_max: usize, s: f64) -> f64 {
    let area = surface_area(n);
    ((a + 1)..=m_max)
        .map(|m| harmonic_dimension(n, m) as f64 / (area * sobolev_base(n, m).powf(2.0 * s)))
        .sum::<f64>()
        .sqrt()
}

/// Outcome of one part of the embedding estimates.
#[derive(Debug, Clone, Serialize)]
pub struct EstimatePart {
    pub trials: usize,
    /// Largest left/right ratio over the random trials.
    pub max_ratio: f64,
    /// Ratio for the single-degree witness (`None` when not applicable).
    pub witness_ratio: Option<f64>,
    pub constant: f64,
    pub pass: bool,
}

/// All three embedding estimates for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub n: usize,
    pub a: usize,
    pub s: f64,
    pub t: f64,
    pub truncation: usize,
    pub seed: u64,
    pub low_degree: EstimatePart,
    pub tail: EstimatePart,
    pub sup_norm: EstimatePart,
    pub pass: bool,
}

/// Ratio slack allowed above 1 for the estimates.
pub const ESTIMATE_SLACK: f64 = 1e-9;

/// Tolerance on the witness ratio being exactly 1.
pub const WITNESS_TOL: f64 = 1e-10;

fn random_harmonic_coeffs(rng: &mut ChaCha8Rng, system: &OrthonormalSystem, degrees: std::ops::RangeInclusive<usize>) -> SpectralCoeffs {
    let mut c = SpectralCoeffs::new(system.n(), BasisFamily::Harmonic);
    for m in degrees {
        for (k, v) in random_coefficients(rng, system.block_len(m)).into_iter().enumerate() {
            c.set(m, k, v);
        }
    }
    c
}

/// Checks the three embedding estimates on seeded random functions.
///
/// 1. `||phi||_s <= (a+(n-1)/2)^s ||phi||_0` for `phi` of degree at most `a`.
/// 2. `||phi||_t <= (a+1+(n-1)/2)^{t-s} ||phi||_s` for `phi` orthogonal to
///    degrees `<= a`.
/// 3. `sup |phi| <= ||phi||_s * sup_norm_constant` for `phi` supported in
///    degrees `a+1..=a+6`, sup taken over a quadrature node grid.
///
/// Test functions are synthesized as polynomials and their coefficients
/// recovered by quadrature; the `L^2` norm in part 1 is integrated directly.
pub fn verify_embedding_estimates(n: usize, a: usize, s: f64, t: f64, trials: usize, seed: u64) -> Result<EmbeddingReport> {
    if !(s >= t && t >= 0.0) {
        return Err(Error::InvalidParameter(format!("need s >= t >= 0, got s={s}, t={t}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }
    let spec_s = SobolevSpec::new(s, n)?;
    let spec_t = SobolevSpec::new(t, n)?;
    let truncation = a + 6;
    let bases = (0..=truncation)
        .map(|m| crate::monogenics::orthonormal_harmonic_basis(n, m))
        .collect::<Result<Vec<_>>>()?;
    let system = OrthonormalSystem::harmonic(&bases)?;
    let quad = QuadratureRule::build(n, 2 * truncation)?;
    let sampled = SampledSystem::new(&system, &quad);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // part 1
    let c1 = low_degree_constant(n, a, s);
    let mut max1 = 0.0f64;
    for _ in 0..trials {
        let coeffs = random_harmonic_coeffs(&mut rng, &system, 0..=a);
        let values = sampled.synthesize(&coeffs)?;
        let recovered = sampled.analyze(&values);
        let l2 = sampled.l2_norm(&values);
        max1 = max1.max(sobolev_norm(&recovered, &spec_s)? / (c1 * l2));
    }
    let mut witness = SpectralCoeffs::new(n, BasisFamily::Harmonic);
    witness.set(a, 0, 1.0);
    let witness1 = {
        let values = sampled.synthesize(&witness)?;
        sobolev_norm(&sampled.analyze(&values), &spec_s)? / (c1 * sampled.l2_norm(&values))
    };
    let low_degree = EstimatePart {
        trials,
        max_ratio: max1,
        witness_ratio: Some(witness1),
        constant: c1,
        pass: max1 <= 1.0 + ESTIMATE_SLACK && (witness1 - 1.0).abs() < WITNESS_TOL,
    };

    // part 2
    let c2 = tail_constant(n, a, s, t);
    let mut max2 = 0.0f64;
    for _ in 0..trials {
        let coeffs = random_harmonic_coeffs(&mut rng, &system, (a + 1)..=truncation);
        let recovered = sampled.analyze(&sampled.synthesize(&coeffs)?);
        let lhs = sobolev_norm(&recovered, &spec_t)?;
        let rhs = c2 * sobolev_norm(&recovered, &spec_s)?;
        max2 = max2.max(lhs / rhs);
    }
    let mut witness = SpectralCoeffs::new(n, BasisFamily::Harmonic);
    witness.set(a + 1, 0, 1.0);
    let witness2 = {
        let recovered = sampled.analyze(&sampled.synthesize(&witness)?);
        sobolev_norm(&recovered, &spec_t)? / (c2 * sobolev_norm(&recovered, &spec_s)?)
    };
    let tail = EstimatePart {
        trials,
        max_ratio: max2,
        witness_ratio: Some(witness2),
        constant: c2,
        pass: max2 <= 1.0 + ESTIMATE_SLACK && (witness2 - 1.0).abs() < WITNESS_TOL,
    };

    // part 3
    let c3 = sup_norm_constant(n, a, truncation, s);
    let mut max3 = 0.0f64;
    for _ in 0..trials {
        let coeffs = random_harmonic_coeffs(&mut rng, &system, (a + 1)..=truncation);
        let values = sampled.synthesize(&coeffs)?;
        let sup = values.iter().map(Multivector::frobenius_norm).fold(0.0, f64::max);
        let bound = c3 * sobolev_norm(&coeffs, &spec_s)?;
        max3 = max3.max(sup / bound);
    }
    let sup_norm = EstimatePart {
        trials,
        max_ratio: max3,
        witness_ratio: None,
        constant: c3,
        pass: max3 <= 1.0 + ESTIMATE_SLACK,
    };
    let pass = low_degree.pass && tail.pass && sup_norm.pass;
    Ok(EmbeddingReport {
        n,
        a,
        s,
        t,
        truncation,
        seed,
        low_degree,
        tail,
        sup_norm,
        pass,
    })
}

/// An orthonormal system sampled at the nodes of a quadrature rule, for fast
/// synthesis and analysis by matrix products.
///
/// The harmonic family is scalar harmonics times blade units, so only the
/// scalar harmonics are sampled and the blades ride along as columns.
#[derive(Debug, Clone)]
pub struct SampledSystem {
    n: usize,
    family: BasisFamily,
    /// Harmonic: one column per scalar harmonic, one row per node.
    /// Monogenic: one column per element, `(node, blade)` rows.
    /// Entries carry a `sqrt(w)` factor.
    matrix: DMatrix<f64>,
    /// `(m, k)` of each column; for the harmonic family `k` is the index of
    /// the scalar part (blade 0).
    index: Vec<(usize, usize)>,
    root_weights: Vec<f64>,
}

impl SampledSystem {
    pub fn new(system: &OrthonormalSystem, quad: &QuadratureRule) -> Self {
        let blades = 1usize << (system.n() + 1);
        let step = match system.family() {
            BasisFamily::Harmonic => blades,
            BasisFamily::Monogenic => 1,
        };
        let mut functions = Vec::new();
        let mut index = Vec::new();
        for m in 0..=system.max_degree() {
            for (k, p) in system.block(m).iter().enumerate().step_by(step) {
                functions.push(p.clone());
                index.push((m, k));
            }
        }
        let root_weights: Vec<f64> = quad.weights().iter().map(|w| w.sqrt()).collect();
        let matrix = match system.family() {
            BasisFamily::Harmonic => DMatrix::from_fn(quad.len(), functions.len(), |i, j| {
                root_weights[i] * functions[j].eval_unchecked(&quad.nodes()[i]).scalar_part()
            }),
            BasisFamily::Monogenic => quad.weighted_samples(&functions),
        };
        Self {
            n: system.n(),
            family: system.family(),
            matrix,
            index,
            root_weights,
        }
    }

    fn blades(&self) -> usize {
        1 << (self.n + 1)
    }

    fn step(&self) -> usize {
        match self.family {
            BasisFamily::Harmonic => self.blades(),
            BasisFamily::Monogenic => 1,
        }
    }

    /// Values of `sum c_mk Y_mk` at every node.
    pub fn synthesize(&self, coeffs: &SpectralCoeffs) -> Result<Vec<Multivector>> {
        let step = self.step();
        let mut c = DMatrix::zeros(self.index.len(), step);
        let mut placed = 0;
        for (i, &(m, k)) in self.index.iter().enumerate() {
            for a in 0..step {
                let v = coeffs.get(m, k + a);
                if v != 0.0 {
                    c[(i, a)] = v;
                    placed += 1;
                }
            }
        }
        if placed != coeffs.len() {
            let (m, k) = coeffs
                .iter()
                .map(|(key, _)| key)
                .find(|&(m, k)| !self.index.contains(&(m, k - k % step)))
                .unwrap_or((0, 0));
            return Err(Error::UnknownIndex { m, k });
        }
        // harmonic: nodes x blades; monogenic: (node, blade) x 1
        let weighted = &self.matrix * c;
        let blades = self.blades();
        Ok(self
            .root_weights
            .iter()
            .enumerate()
            .map(|(node, r)| {
                let coeffs = (0..blades)
                    .map(|a| match self.family {
                        BasisFamily::Harmonic => weighted[(node, a)] / r,
                        BasisFamily::Monogenic => weighted[(node * blades + a, 0)] / r,
                    })
                    .collect();
                Multivector::from_coeffs(self.n + 1, coeffs).expect("finite samples")
            })
            .collect())
    }

    fn weight_values(&self, values: &[Multivector]) -> DMatrix<f64> {
        let blades = self.blades();
        match self.family {
            BasisFamily::Harmonic => DMatrix::from_fn(values.len(), blades, |node, a| {
                values[node].coeffs()[a] * self.root_weights[node]
            }),
            BasisFamily::Monogenic => DMatrix::from_fn(values.len() * blades, 1, |row, _| {
                values[row / blades].coeffs()[row % blades] * self.root_weights[row / blades]
            }),
        }
    }

    /// Coefficients `<Y_mk, f>_R` from node values of `f`.
    pub fn analyze(&self, values: &[Multivector]) -> SpectralCoeffs {
        let projected = self.matrix.tr_mul(&self.weight_values(values));
        let mut out = SpectralCoeffs::new(self.n, self.family);
        for (i, &(m, k)) in self.index.iter().enumerate() {
            for a in 0..self.step() {
                out.set(m, k + a, projected[(i, a)]);
            }
        }
        out
    }

    /// `L^2` norm integrated from node values.
    pub fn l2_norm(&self, values: &[Multivector]) -> f64 {
        self.weight_values(values).norm()
    }
}

/// `|sum_nodes w g(omega) omega f(omega)|` over the unit sphere, which
/// vanishes for left monogenic `f` and right monogenic `g`.
pub fn verify_cauchy_theorem(f: &MVPolynomial, g: &MVPolynomial, quad: &QuadratureRule) -> Result<f64> {
    let left = f.dirac_apply().max_abs_coeff();
    if left > MONOGENIC_TOL * f.max_abs_coeff().max(1.0) {
        return Err(Error::NotMonogenic {
            kind: "left",
            residual: left,
        });
    }
    let right = g.dirac_right_apply().max_abs_coeff();
    if right > MONOGENIC_TOL * g.max_abs_coeff().max(1.0) {
        return Err(Error::NotMonogenic {
            kind: "right",
            residual: right,
        });
    }
    if f.dim() != quad.ambient_dim() || g.dim() != quad.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: quad.ambient_dim(),
            actual: f.dim(),
        });
    }
    quad.require_degree(f.degree() + g.degree() + 1)?;
    let integral = quad.integrate_mv(|x| {
        let gx = g.eval_unchecked(x);
        let fx = f.eval_unchecked(x);
        &gx * &fx.left_vector_mul(x)
    });
    Ok(integral.frobenius_norm())
}

/// Frobenius distance between `f(y)` and its Cauchy integral over the unit
/// sphere, `|S^{N-1}|^{-1} integral of G(x - y) x f(x)`.
pub fn verify_cauchy_integral_formula(f: &MVPolynomial, y: &[f64], quad: &QuadratureRule) -> Result<f64> {
    if y.len() != quad.ambient_dim() || f.dim() != quad.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: quad.ambient_dim(),
            actual: y.len(),
        });
    }
    let norm = y.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm >= CIF_MAX_RADIUS {
        return Err(Error::TooCloseToBoundary {
            norm,
            limit: CIF_MAX_RADIUS,
        });
    }
    let left = f.dirac_apply().max_abs_coeff();
    if left > MONOGENIC_TOL * f.max_abs_coeff().max(1.0) {
        return Err(Error::NotMonogenic {
            kind: "left",
            residual: left,
        });
    }
    let mut integral = Multivector::zero(quad.ambient_dim());
    for (x, &w) in quad.nodes().iter().zip(quad.weights()) {
        let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        let g = cauchy_kernel(&diff)?;
        let xf = f.eval_unchecked(x).left_vector_mul(x);
        integral.add_scaled(&(&g * &xf), w);
    }
    let value = integral.scale(cauchy_normalization(quad.ambient_dim()));
    Ok(value.distance(&f.eval_unchecked(y)))
}
