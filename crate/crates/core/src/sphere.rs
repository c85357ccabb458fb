//! Integration on the unit sphere `S^n` in `R^{n+1}`: surface areas, product
//! quadrature, the `L^2(S^n)` pairings and generalized Fourier coefficients.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::monogenics::{BasisSet, SpaceTag};
use crate::polynomials::MVPolynomial;

/// Surface area of the unit sphere `S^n`, `2 pi^{(n+1)/2} / Gamma((n+1)/2)`.
pub fn surface_area(n: usize) -> f64 {
    let half = (n as f64 + 1.0) / 2.0;
    2.0 * PI.powf(half) / libm::tgamma(half)
}

/// Closed-form integral of `x^exps` over the unit sphere in `R^{exps.len()}`:
/// zero if any exponent is odd, else `2 prod Gamma((a_i+1)/2) / Gamma((|a|+N)/2)`.
pub fn monomial_moment(exps: &[u32]) -> f64 {
    if exps.iter().any(|e| e % 2 == 1) {
        return 0.0;
    }
    let dim = exps.len() as f64;
    let total: u32 = exps.iter().sum();
    // log-gamma keeps high moments finite
    let log_num: f64 = exps
        .iter()
        .map(|&e| libm::lgamma((e as f64 + 1.0) / 2.0))
        .sum();
    2.0 * (log_num - libm::lgamma((total as f64 + dim) / 2.0)).exp()
}

/// Gauss rule for the weight `(1 - t^2)^{lambda - 1/2}` on `[-1, 1]`.
///
/// Golub-Welsch: the nodes are the eigenvalues of the symmetric Jacobi
/// matrix of the orthonormal Gegenbauer recurrence and each weight is
/// `mu_0` times the squared first component of its eigenvector.
pub fn gegenbauer_gauss(points: usize, lambda: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Gegenbauer index must be positive, got {lambda}"
        )));
    }
    if points == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mu0 = PI.sqrt() * libm::tgamma(lambda + 0.5) / libm::tgamma(lambda + 1.0);
    let mut jacobi = DMatrix::<f64>::zeros(points, points);
    for k in 1..points {
        let kf = k as f64;
        let beta = kf * (kf + 2.0 * lambda - 1.0) / (4.0 * (kf + lambda) * (kf + lambda - 1.0));
        let off = beta.sqrt();
        jacobi[(k - 1, k)] = off;
        jacobi[(k, k - 1)] = off;
    }
    let eig = SymmetricEigen::try_new(jacobi, 1e-15, 0).ok_or_else(|| {
        Error::InvalidParameter("Jacobi matrix eigen-solve did not converge".into())
    })?;
    let mut pairs: Vec<(f64, f64)> = (0..points)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

/// Product quadrature on `S^n` exact for polynomials up to `exact_degree`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    n: usize,
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
    exact_degree: usize,
}

impl QuadratureRule {
    /// Hyperspherical product rule: Gauss-Gegenbauer in each polar angle and
    /// the trapezoidal rule in the azimuth.
    ///
    /// Polar angle `k` (counted from the outermost) carries the weight
    /// `sin^{n-k} theta`, i.e. Gegenbauer index `(n-k)/2` in `t = cos theta`,
    /// with `ceil((degree+2)/2)` points. The azimuth uses `degree + 2`
    /// equispaced points.
    pub fn build(n: usize, degree: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("sphere dimension must be at least 1".into()));
        }
        if n + 1 > crate::clifford::MAX_DIM {
            return Err(Error::UnsupportedDimension(n + 1));
        }
        let azimuth = degree + 2;
        let step = 2.0 * PI / azimuth as f64;
        let mut nodes: Vec<Vec<f64>> = (0..azimuth)
            .map(|j| {
                let phi = j as f64 * step;
                vec![phi.cos(), phi.sin()]
            })
            .collect();
        let mut weights = vec![step; azimuth];

        let polar_points = (degree + 2).div_ceil(2);
        for sub in 2..=n {
            let lambda = (sub as f64 - 1.0) / 2.0;
            let (ts, ws) = gegenbauer_gauss(polar_points, lambda)?;
            let mut next_nodes = Vec::with_capacity(nodes.len() * ts.len());
            let mut next_weights = Vec::with_capacity(nodes.len() * ts.len());
            for (&t, &wt) in ts.iter().zip(&ws) {
                let s = (1.0 - t * t).max(0.0).sqrt();
                for (y, &wy) in nodes.iter().zip(&weights) {
                    let mut x: Vec<f64> = y.iter().map(|c| c * s).collect();
                    x.push(t);
                    next_nodes.push(x);
                    next_weights.push(wt * wy);
                }
            }
            nodes = next_nodes;
            weights = next_weights;
        }
        Ok(Self {
            n,
            nodes,
            weights,
            exact_degree: degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn exact_degree(&self) -> usize {
        self.exact_degree
    }

    pub fn require_degree(&self, required: usize) -> Result<()> {
        if required > self.exact_degree {
            return Err(Error::QuadratureTooWeak {
                required,
                available: self.exact_degree,
            });
        }
        Ok(())
    }

    /// Integral of a real function. Node values are computed in parallel and
    /// summed in node order, so the result does not depend on thread count.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let values: Vec<f64> = self.nodes.par_iter().map(|x| f(x)).collect();
        values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }

    /// Integral of a Clifford-valued function, blade by blade.
    pub fn integrate_mv<F>(&self, f: F) -> Multivector
    where
        F: Fn(&[f64]) -> Multivector + Sync,
    {
        let values: Vec<Multivector> = self.nodes.par_iter().map(|x| f(x)).collect();
        let mut acc = Multivector::zero(self.ambient_dim());
        for (v, &w) in values.iter().zip(&self.weights) {
            acc.add_scaled(v, w);
        }
        acc
    }

    /// Values of `f` at every node, in node order.
    pub fn sample<S: SphereFunction + ?Sized>(&self, f: &S) -> Vec<Multivector> {
        self.nodes.par_iter().map(|x| f.eval_at(x)).collect()
    }

    /// Matrix whose column `j` holds `sqrt(w) * f_j` over all (node, blade)
    /// pairs, so that `S^T S` is the real Gram matrix.
    pub fn weighted_samples(&self, functions: &[MVPolynomial]) -> DMatrix<f64> {
        let blades = 1usize << self.ambient_dim();
        let rows = self.len() * blades;
        let roots: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        let columns: Vec<Vec<f64>> = functions
            .par_iter()
            .map(|p| {
                let mut col = Vec::with_capacity(rows);
                for (x, r) in self.nodes.iter().zip(&roots) {
                    let v = p.eval_unchecked(x);
                    col.extend(v.coeffs().iter().map(|c| c * r));
                }
                col
            })
            .collect();
        DMatrix::from_iterator(rows, functions.len(), columns.into_iter().flatten())
    }
}

/// Anything that can be evaluated on the sphere.
pub trait SphereFunction: Sync {
    fn eval_at(&self, x: &[f64]) -> Multivector;

    /// Polynomial degree when known, used to check quadrature strength.
    fn polynomial_degree(&self) -> Option<usize> {
        None
    }
}

impl SphereFunction for MVPolynomial {
    fn eval_at(&self, x: &[f64]) -> Multivector {
        self.eval_unchecked(x)
    }

    fn polynomial_degree(&self) -> Option<usize> {
        Some(self.degree())
    }
}

impl<F> SphereFunction for F
where
    F: Fn(&[f64]) -> Multivector + Sync,
{
    fn eval_at(&self, x: &[f64]) -> Multivector {
        self(x)
    }
}

fn check_pair_degree<F, G>(f: &F, g: &G, quad: &QuadratureRule) -> Result<()>
where
    F: SphereFunction + ?Sized,
    G: SphereFunction + ?Sized,
{
    if let (Some(df), Some(dg)) = (f.polynomial_degree(), g.polynomial_degree()) {
        quad.require_degree(df + dg)?;
    }
    Ok(())
}

/// `(f, g) = integral of conj(f) g` over the sphere.
pub fn clifford_inner_product<F, G>(f: &F, g: &G, quad: &QuadratureRule) -> Result<Multivector>
where
    F: SphereFunction + ?Sized,
    G: SphereFunction + ?Sized,
{
    check_pair_degree(f, g, quad)?;
    Ok(quad.integrate_mv(|x| &f.eval_at(x).conjugate() * &g.eval_at(x)))
}

/// Blade-componentwise pairing `integral of sum_A f_A g_A`.
pub fn real_inner_product<F, G>(f: &F, g: &G, quad: &QuadratureRule) -> Result<f64>
where
    F: SphereFunction + ?Sized,
    G: SphereFunction + ?Sized,
{
    check_pair_degree(f, g, quad)?;
    Ok(quad.integrate(|x| f.eval_at(x).component_dot(&g.eval_at(x))))
}

/// Which orthonormal system a coefficient set refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisFamily {
    /// Block `m` holds the scalar harmonics of degree `m` times each blade
    /// unit; index `k = j * 2^N + A`.
    Harmonic,
    /// Block `m` holds an orthonormal basis of `P_m` followed by its image
    /// under left multiplication by `omega`.
    Monogenic,
}

/// Generalized Fourier coefficients indexed by `(degree, index)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    n: usize,
    family: BasisFamily,
    entries: BTreeMap<(usize, usize), f64>,
}

impl SpectralCoeffs {
    pub fn new(n: usize, family: BasisFamily) -> Self {
        Self {
            n,
            family,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn get(&self, m: usize, k: usize) -> f64 {
        self.entries.get(&(m, k)).copied().unwrap_or(0.0)
    }

    /// Sets an entry; exact zeros are removed from the support.
    pub fn set(&mut self, m: usize, k: usize, value: f64) {
        if value == 0.0 {
            self.entries.remove(&(m, k));
        } else {
            self.entries.insert((m, k), value);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.entries.iter().map(|(&key, &v)| (key, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices whose coefficient exceeds `tol` in magnitude.
    pub fn support(&self, tol: f64) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|(_, v)| v.abs() > tol)
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.keys().map(|&(m, _)| m).max()
    }

    /// `sum |c_mk|^2` restricted to degree `m`.
    pub fn degree_energy(&self, m: usize) -> f64 {
        self.entries
            .range((m, 0)..=(m, usize::MAX))
            .map(|(_, v)| v * v)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut ms: Vec<usize> = self.entries.keys().map(|&(m, _)| m).collect();
        ms.dedup();
        ms
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.values().map(|v| v * v).fold(0.0, |acc, v| acc + v).sqrt()
    }

    /// Keeps only the entries selected by `keep`.
    pub fn filtered(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            n: self.n,
            family: self.family,
            entries: self
                .entries
                .iter()
                .filter(|(&(m, k), _)| keep(m, k))
                .map(|(&key, &v)| (key, v))
                .collect(),
        }
    }

    /// Applies a per-degree multiplier.
    pub fn scaled_by_degree(&self, factor: impl Fn(usize) -> f64) -> Self {
        let mut out = Self::new(self.n, self.family);
        for (&(m, k), &v) in &self.entries {
            out.set(m, k, v * factor(m));
        }
        out
    }

    /// `self - other`, entrywise.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, k), &v) in &other.entries {
            out.set(m, k, out.get(m, k) - v);
        }
        out
    }

    /// Largest entrywise difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).entries.values().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Clifford coefficient of the scalar harmonic `(m, j)` in the harmonic
    /// family: `F_mj = sum_A c_{m, j 2^N + A} e_A`, so that
    /// `f = sum_{m,j} Y_mj F_mj`.
    pub fn clifford_coefficient(&self, m: usize, j: usize) -> Result<Multivector> {
        if self.family != BasisFamily::Harmonic {
            return Err(Error::InvalidParameter(
                "Clifford-valued coefficients are defined for the harmonic family".into(),
            ));
        }
        let dim = self.n + 1;
        let blades = 1usize << dim;
        let coeffs = (0..blades).map(|a| self.get(m, j * blades + a)).collect();
        Multivector::from_coeffs(dim, coeffs)
    }

    pub fn to_record(&self) -> CoeffsRecord {
        CoeffsRecord {
            n: self.n,
            family: self.family,
            entries: self
                .entries
                .iter()
                .map(|(&(m, k), &value)| CoeffEntry { m, k, value })
                .collect(),
        }
    }

    pub fn from_record(record: &CoeffsRecord) -> Self {
        let mut out = Self::new(record.n, record.family);
        for e in &record.entries {
            out.set(e.m, e.k, out.get(e.m, e.k) + e.value);
        }
        out
    }
}

/// File form of one coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub m: usize,
    pub k: usize,
    pub value: f64,
}

/// File form of a coefficient set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffsRecord {
    pub n: usize,
    pub family: BasisFamily,
    pub entries: Vec<CoeffEntry>,
}

/// A real-orthonormal system of Clifford-valued polynomials on `S^n`,
/// grouped into degree blocks.
#[derive(Debug, Clone)]
pub struct OrthonormalSystem {
    n: usize,
    family: BasisFamily,
    blocks: Vec<Vec<MVPolynomial>>,
}

impl OrthonormalSystem {
    /// Harmonic family from orthonormal scalar `H_m` bases for `m = 0..=M`.
    pub fn harmonic(bases: &[BasisSet]) -> Result<Self> {
        let n = bases
            .first()
            .map(|b| b.n())
            .ok_or_else(|| Error::InvalidParameter("no bases supplied".into()))?;
        let dim = n + 1;
        let mut blocks = Vec::with_capacity(bases.len());
        for (m, basis) in bases.iter().enumerate() {
            if basis.space() != SpaceTag::H {
                return Err(Error::WrongSpace {
                    expected: "H",
                    actual: basis.space().name(),
                });
            }
            if basis.m() != m || basis.n() != n || !basis.is_orthonormal() {
                return Err(Error::InvalidParameter(format!(
                    "harmonic block {m} must be an orthonormal H basis of degree {m} on S^{n}"
                )));
            }
            let mut block = Vec::with_capacity(basis.len() << dim);
            for h in basis.realized() {
                for a in 0..1usize << dim {
                    block.push(h.right_mul(&Multivector::blade(dim, a, 1.0)));
                }
            }
            blocks.push(block);
        }
        Ok(Self {
            n,
            family: BasisFamily::Harmonic,
            blocks,
        })
    }

    /// Monogenic family from orthonormal `P_m` bases for `m = 0..=M`.
    pub fn monogenic(p_bases: &[BasisSet]) -> Result<Self> {
        let n = p_bases
            .first()
            .map(|b| b.n())
            .ok_or_else(|| Error::InvalidParameter("no bases supplied".into()))?;
        let mut blocks = Vec::with_capacity(p_bases.len());
        for (m, basis) in p_bases.iter().enumerate() {
            if basis.space() != SpaceTag::P {
                return Err(Error::WrongSpace {
                    expected: "P",
                    actual: basis.space().name(),
                });
            }
            if basis.m() != m || basis.n() != n || !basis.is_orthonormal() {
                return Err(Error::InvalidParameter(format!(
                    "monogenic block {m} must be an orthonormal P basis of degree {m} on S^{n}"
                )));
            }
            let mut block = basis.realized();
            block.extend(basis.realized().iter().map(MVPolynomial::vector_multiply));
            blocks.push(block);
        }
        Ok(Self {
            n,
            family: BasisFamily::Monogenic,
            blocks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn max_degree(&self) -> usize {
        self.blocks.len().saturating_sub(1)
    }

    pub fn block(&self, m: usize) -> &[MVPolynomial] {
        &self.blocks[m]
    }

    pub fn block_len(&self, m: usize) -> usize {
        self.blocks.get(m).map_or(0, Vec::len)
    }

    /// Highest polynomial degree of any element.
    pub fn element_degree(&self) -> usize {
        match self.family {
            BasisFamily::Harmonic => self.max_degree(),
            BasisFamily::Monogenic => self.max_degree() + 1,
        }
    }

    /// Checks that every `(m, k)` of `coeffs` names an element of this system.
    pub fn validate(&self, coeffs: &SpectralCoeffs) -> Result<()> {
        if coeffs.family() != self.family || coeffs.n() != self.n {
            return Err(Error::InvalidParameter(format!(
                "coefficients for {:?} on S^{} do not match a {:?} system on S^{}",
                coeffs.family(),
                coeffs.n(),
                self.family,
                self.n
            )));
        }
        for ((m, k), _) in coeffs.iter() {
            if k >= self.block_len(m) {
                return Err(Error::UnknownIndex { m, k });
            }
        }
        Ok(())
    }

    /// Generalized Fourier coefficients `c_mk = <Y_mk, f>_R`.
    pub fn analyze<F>(&self, f: &F, quad: &QuadratureRule) -> Result<SpectralCoeffs>
    where
        F: SphereFunction + ?Sized,
    {
        if let Some(df) = f.polynomial_degree() {
            quad.require_degree(df + self.element_degree())?;
        }
        let values = quad.sample(f);
        let mut out = SpectralCoeffs::new(self.n, self.family);
        for (m, block) in self.blocks.iter().enumerate() {
            let coeffs: Vec<f64> = block
                .par_iter()
                .map(|y| {
                    quad.nodes()
                        .iter()
                        .zip(quad.weights())
                        .zip(&values)
                        .map(|((x, w), fv)| w * y.eval_unchecked(x).component_dot(fv))
                        .sum()
                })
                .collect();
            for (k, c) in coeffs.into_iter().enumerate() {
                out.set(m, k, c);
            }
        }
        Ok(out)
    }

    /// `sum_{m,k} c_mk Y_mk(x)`.
    pub fn synthesize(&self, coeffs: &SpectralCoeffs, x: &[f64]) -> Result<Multivector> {
        self.validate(coeffs)?;
        let mut out = Multivector::zero(self.n + 1);
        for ((m, k), c) in coeffs.iter() {
            out.add_scaled(&self.blocks[m][k].eval_unchecked(x), c);
        }
        Ok(out)
    }

    /// The polynomial `sum_{m,k} c_mk Y_mk`.
    pub fn synthesize_polynomial(&self, coeffs: &SpectralCoeffs) -> Result<MVPolynomial> {
        self.validate(coeffs)?;
        let mut out = MVPolynomial::zero(self.n + 1);
        for ((m, k), c) in coeffs.iter() {
            out.add_scaled(&self.blocks[m][k], c);
        }
        Ok(out)
    }
}

/// Fourier coefficients of `f` against orthonormal `H_m` bases, `m = 0..=M`.
pub fn fourier_coefficients<F>(f: &F, bases: &[BasisSet], quad: &QuadratureRule) -> Result<SpectralCoeffs>
where
    F: SphereFunction + ?Sized,
{
    OrthonormalSystem::harmonic(bases)?.analyze(f, quad)
}

/// Squared `L^2(S^n)` norm of `f`.
pub fn l2_norm_squared<F>(f: &F, quad: &QuadratureRule) -> f64
where
    F: SphereFunction + ?Sized,
{
    quad.integrate(|x| f.eval_at(x).norm_squared())
}

/// Exactness certificate: largest deviation between the rule and the closed
/// form over all monomials of degree up to the rule's declared degree.
pub fn moment_certificate(quad: &QuadratureRule) -> f64 {
    let dim = quad.ambient_dim();
    let mut worst = 0.0f64;
    for degree in 0..=quad.exact_degree() {
        for exps in crate::polynomials::monomials(dim, degree) {
            let numeric = quad.integrate(|x| {
                exps.iter()
                    .zip(x)
                    .map(|(&e, &xi)| xi.powi(e as i32))
                    .product()
            });
            worst = worst.max((numeric - monomial_moment(&exps)).abs());
        }
    }
    worst
}

/// Residual `||G - I||_max` of a Gram matrix.
pub fn gram_identity_error(gram: &DMatrix<f64>) -> f64 {
    let n = gram.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - target).abs());
        }
    }
    worst
}

/// Least-squares residual of `target` against the span of `columns`.
pub(crate) fn span_residual(columns: &DMatrix<f64>, target: &DVector<f64>) -> f64 {
    let svd = columns.clone().svd(true, true);
    match svd.solve(target, 1e-12) {
        Ok(coef) => (columns * coef - target).norm(),
        Err(_) => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_areas() {
        assert!((surface_area(1) - 2.0 * PI).abs() < 1e-13);
        assert!((surface_area(2) - 4.0 * PI).abs() < 1e-13);
        assert!((surface_area(3) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((surface_area(2) - 12.566370614).abs() < 1e-9);
        assert!((surface_area(3) - 19.739208802).abs() < 1e-9);
    }

    #[test]
    fn gegenbauer_rule_half_is_gauss_legendre() {
        let (t, w) = gegenbauer_gauss(3, 0.5).unwrap();
        let a = (0.6f64).sqrt();
        assert!((t[0] + a).abs() < 1e-14 && t[1].abs() < 1e-14 && (t[2] - a).abs() < 1e-14);
        assert!((w[0] - 5.0 / 9.0).abs() < 1e-14 && (w[1] - 8.0 / 9.0).abs() < 1e-14);
        assert!(gegenbauer_gauss(3, 0.0).is_err());
    }

    #[test]
    fn gegenbauer_rule_integrates_weighted_moments() {
        // weight (1-t^2)^{1/2}, lambda = 1: int t^2 w = pi/8
        let (t, w) = gegenbauer_gauss(4, 1.0).unwrap();
        let total: f64 = w.iter().sum();
        assert!((total - PI / 2.0).abs() < 1e-14);
        let second: f64 = t.iter().zip(&w).map(|(t, w)| t * t * w).sum();
        assert!((second - PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn quadrature_basic_integrals_on_s2() {
        let q = QuadratureRule::build(2, 4).unwrap();
        assert!((q.integrate(|_| 1.0) - 4.0 * PI).abs() < 1e-12);
        assert!((q.integrate(|x| x[0] * x[0]) - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!(q.integrate(|x| x[0]).abs() < 1e-14);
        for x in q.nodes() {
            let r: f64 = x.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!((r - 1.0).abs() < 1e-12);
        }
        assert!(q.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn quadrature_moment_on_s3() {
        let q = QuadratureRule::build(3, 4).unwrap();
        let numeric = q.integrate(|x| x[0] * x[0] * x[1] * x[1]);
        // 2 Gamma(3/2)^2 Gamma(1/2)^2 / Gamma(4) = pi^2 / 12
        assert!((monomial_moment(&[2, 2, 0, 0]) - PI * PI / 12.0).abs() < 1e-14);
        assert!((numeric - PI * PI / 12.0).abs() < 1e-12);
    }

    #[test]
    fn moment_certificates() {
        for n in [1, 2, 3] {
            for degree in [0, 3, 6, 9] {
                let q = QuadratureRule::build(n, degree).unwrap();
                assert!((q.weights().iter().sum::<f64>() - surface_area(n)).abs() < 1e-10);
                assert!(moment_certificate(&q) < 1e-10, "n={n} degree={degree}");
            }
        }
    }

    #[test]
    fn rejects_zero_sphere() {
        assert!(QuadratureRule::build(0, 3).is_err());
    }

    #[test]
    fn conjugation_flips_vector_part_in_clifford_pairing() {
        let q = QuadratureRule::build(2, 6).unwrap();
        let h = MVPolynomial::variable(3, 0).mul_variable(1);
        let f = h.left_mul(&Multivector::generator(3, 0));
        let ip = clifford_inner_product(&f, &h, &q).unwrap();
        let norm2 = real_inner_product(&h, &h, &q).unwrap();
        let expected = Multivector::generator(3, 0).scale(-norm2);
        assert!(ip.distance(&expected) < 1e-12);
        assert!(norm2 > 0.0);
    }

    #[test]
    fn pairing_checks_quadrature_strength() {
        let q = QuadratureRule::build(2, 3).unwrap();
        let h = MVPolynomial::variable(3, 0).mul_variable(1);
        assert!(matches!(
            real_inner_product(&h, &h, &q),
            Err(Error::QuadratureTooWeak { required: 4, available: 3 })
        ));
    }

    #[test]
    fn coefficient_records_roundtrip() {
        let mut c = SpectralCoeffs::new(2, BasisFamily::Harmonic);
        c.set(1, 3, 0.25);
        c.set(0, 0, -1.0);
        let json = serde_json::to_string(&c.to_record()).unwrap();
        let back = SpectralCoeffs::from_record(&serde_json::from_str(&json).unwrap());
        assert_eq!(back, c);
        assert_eq!(c.degrees(), vec![0, 1]);
        assert!((c.degree_energy(1) - 0.0625).abs() < 1e-15);
    }
}
