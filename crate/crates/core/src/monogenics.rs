//! Finite bases of spherical harmonics `H_m`, inner spherical monogenics
//! `P_m` and their sphere images `Q_m = omega P_m`.
//!
//! Bases come from explicit nullspaces of the Laplacian (scalar harmonics)
//! and the Dirac operator (Clifford-valued monogenics) on homogeneous
//! polynomials, then get orthonormalized under the real `L^2(S^n)` pairing.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::clifford::{blade_product_sign, Multivector, MAX_DIM};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, NULLSPACE_REL_TOL};
use crate::polynomials::{monomials, Exponents, MVPolynomial};
use crate::sphere::QuadratureRule;

/// Dependence threshold for modified Gram-Schmidt, relative to the leading
/// pivot.
pub const DEPENDENCE_REL_TOL: f64 = 1e-8;

/// Binomial coefficient as an exact integer.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of scalar spherical harmonics of degree `m` on `S^n`:
/// 1 at `m = 0`, otherwise `(2m+n-1)(m+n-2)! / ((n-1)! m!)`.
pub fn harmonic_dimension(n: usize, m: usize) -> usize {
    if m == 0 {
        return 1;
    }
    // (m+n-2)!/((n-1)! (m-1)!) * (2m+n-1)/m
    let numerator = (2 * m + n - 1) * binomial(m + n - 2, n - 1);
    numerator / m
}

/// Rank of the homogeneous degree-`m` left monogenics on `R^{n+1}` as a
/// right Clifford module: `binom(m+n-1, n-1)`.
pub fn monogenic_rank(n: usize, m: usize) -> usize {
    binomial(m + n - 1, n - 1)
}

/// Real dimension of Clifford-valued homogeneous monogenics of degree `m`.
pub fn monogenic_real_dimension(n: usize, m: usize) -> usize {
    monogenic_rank(n, m) << (n + 1)
}

/// The space a basis spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SpaceTag {
    H,
    P,
    Q,
}

impl SpaceTag {
    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::H => "H",
            SpaceTag::P => "P",
            SpaceTag::Q => "Q",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "H" => Some(SpaceTag::H),
            "P" => Some(SpaceTag::P),
            "Q" => Some(SpaceTag::Q),
            _ => None,
        }
    }
}

/// A basis of one of `H_m`, `P_m` or `Q_m` on `S^n`.
///
/// `Q` elements are stored as their `P` pre-images with
/// `omega_multiplied = true`; every evaluation goes through left
/// multiplication by the vector variable.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    n: usize,
    m: usize,
    space: SpaceTag,
    elements: Vec<MVPolynomial>,
    omega_multiplied: bool,
    orthonormal: bool,
    quadrature_degree: Option<usize>,
}

impl BasisSet {
    /// Assembles a basis from raw parts, as read back from storage.
    pub fn from_parts(
        n: usize,
        m: usize,
        space: SpaceTag,
        elements: Vec<MVPolynomial>,
        omega_multiplied: bool,
        orthonormal: bool,
        quadrature_degree: Option<usize>,
    ) -> Result<Self> {
        if let Some(bad) = elements.iter().find(|p| p.dim() != n + 1) {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                actual: bad.dim(),
            });
        }
        if omega_multiplied != (space == SpaceTag::Q) {
            return Err(Error::InvalidParameter(
                "only Q bases carry omega-multiplied elements".into(),
            ));
        }
        Ok(Self {
            n,
            m,
            space,
            elements,
            omega_multiplied,
            orthonormal,
            quadrature_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn is_omega_multiplied(&self) -> bool {
        self.omega_multiplied
    }

    pub fn quadrature_degree(&self) -> Option<usize> {
        self.quadrature_degree
    }

    /// Stored elements (pre-images for `Q`).
    pub fn stored(&self) -> &[MVPolynomial] {
        &self.elements
    }

    /// Homogeneity degree of the underlying functions: `m` for `H`, `P`
    /// and `-n-m` for `Q`.
    pub fn homogeneity_degree(&self) -> i64 {
        match self.space {
            SpaceTag::Q => -(self.n as i64) - self.m as i64,
            _ => self.m as i64,
        }
    }

    /// Degree of the polynomials whose restrictions realize the elements.
    pub fn restriction_degree(&self) -> usize {
        if self.omega_multiplied {
            self.m + 1
        } else {
            self.m
        }
    }

    /// The polynomial realizing element `i` on the sphere.
    pub fn element(&self, i: usize) -> MVPolynomial {
        if self.omega_multiplied {
            self.elements[i].vector_multiply()
        } else {
            self.elements[i].clone()
        }
    }

    pub fn realized(&self) -> Vec<MVPolynomial> {
        (0..self.len()).map(|i| self.element(i)).collect()
    }

    pub fn eval(&self, i: usize, x: &[f64]) -> Multivector {
        let v = self.elements[i].eval_unchecked(x);
        if self.omega_multiplied {
            v.left_vector_mul(x)
        } else {
            v
        }
    }

    /// Real Gram matrix of the realized elements under `quad`.
    pub fn gram(&self, quad: &QuadratureRule) -> Result<DMatrix<f64>> {
        quad.require_degree(2 * self.restriction_degree())?;
        let s = quad.weighted_samples(&self.realized());
        Ok(s.transpose() * &s)
    }
}

fn check_degree_args(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParameter("sphere dimension must be at least 1".into()));
    }
    let dim = n + 1;
    if dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    Ok(dim)
}

fn index_of(monos: &[Exponents]) -> HashMap<&Exponents, usize> {
    monos.iter().enumerate().map(|(i, e)| (e, i)).collect()
}

/// Matrix of the Laplacian from scalar degree-`m` to degree-`(m-2)`
/// polynomials over the monomial bases.
pub fn laplacian_matrix(dim: usize, m: usize) -> DMatrix<f64> {
    let cols = monomials(dim, m);
    if m < 2 {
        return DMatrix::zeros(0, cols.len());
    }
    let rows = monomials(dim, m - 2);
    let row_index = index_of(&rows);
    let mut a = DMatrix::zeros(rows.len(), cols.len());
    for (c, exps) in cols.iter().enumerate() {
        for i in 0..dim {
            let e = exps[i];
            if e >= 2 {
                let mut lowered = exps.clone();
                lowered[i] -= 2;
                a[(row_index[&lowered], c)] += (e * (e - 1)) as f64;
            }
        }
    }
    a
}

/// Matrix of the left Dirac operator from Clifford-valued degree-`m` to
/// degree-`(m-1)` polynomials. Unknown `(monomial a, blade A)` sits at
/// column `a * 2^N + A`.
pub fn dirac_matrix(dim: usize, m: usize) -> DMatrix<f64> {
    let blades = 1usize << dim;
    let cols = monomials(dim, m);
    if m == 0 {
        return DMatrix::zeros(0, cols.len() * blades);
    }
    let rows = monomials(dim, m - 1);
    let row_index = index_of(&rows);
    let mut a = DMatrix::zeros(rows.len() * blades, cols.len() * blades);
    for (c, exps) in cols.iter().enumerate() {
        for i in 0..dim {
            let e = exps[i];
            if e == 0 {
                continue;
            }
            let mut lowered = exps.clone();
            lowered[i] -= 1;
            let r = row_index[&lowered];
            let gen = 1usize << i;
            for blade in 0..blades {
                let sign = blade_product_sign(gen, blade);
                a[(r * blades + (gen ^ blade), c * blades + blade)] += sign * e as f64;
            }
        }
    }
    a
}

/// Basis of scalar harmonic homogeneous degree-`m` polynomials on
/// `R^{n+1}`, each carried by the identity multivector.
pub fn harmonic_basis(n: usize, m: usize) -> Result<BasisSet> {
    let dim = check_degree_args(n)?;
    let monos = monomials(dim, m);
    let one = Multivector::one(dim);
    let elements = nullspace(&laplacian_matrix(dim, m), NULLSPACE_REL_TOL)
        .into_iter()
        .map(|v| {
            let mut p = MVPolynomial::zero(dim);
            for (exps, &c) in monos.iter().zip(v.iter()) {
                p.add_term(exps.clone(), &one, c);
            }
            p
        })
        .collect();
    BasisSet::from_parts(n, m, SpaceTag::H, elements, false, false, None)
}

/// Real-linear basis of Clifford-valued left monogenic homogeneous
/// degree-`m` polynomials on `R^{n+1}`.
pub fn monogenic_basis(n: usize, m: usize) -> Result<BasisSet> {
    let dim = check_degree_args(n)?;
    let blades = 1usize << dim;
    let monos = monomials(dim, m);
    let elements = nullspace(&dirac_matrix(dim, m), NULLSPACE_REL_TOL)
        .into_iter()
        .map(|v| coefficient_vector_to_polynomial(dim, &monos, &v))
        .collect();
    debug_assert_eq!(monos.len() * blades, dirac_matrix(dim, m).ncols());
    BasisSet::from_parts(n, m, SpaceTag::P, elements, false, false, None)
}

fn coefficient_vector_to_polynomial(dim: usize, monos: &[Exponents], v: &DVector<f64>) -> MVPolynomial {
    let blades = 1usize << dim;
    let mut p = MVPolynomial::zero(dim);
    for (j, exps) in monos.iter().enumerate() {
        let coeffs = v.as_slice()[j * blades..(j + 1) * blades].to_vec();
        if coeffs.iter().any(|&c| c != 0.0) {
            let mv = Multivector::from_coeffs(dim, coeffs).expect("finite nullspace vector");
            p.add_term(exps.clone(), &mv, 1.0);
        }
    }
    p
}

/// Flattens a homogeneous degree-`m` polynomial into the `(monomial, blade)`
/// coordinates used by [`dirac_matrix`].
pub fn polynomial_to_coefficient_vector(p: &MVPolynomial, m: usize) -> DVector<f64> {
    let dim = p.dim();
    let blades = 1usize << dim;
    let monos = monomials(dim, m);
    let mut v = DVector::zeros(monos.len() * blades);
    for (j, exps) in monos.iter().enumerate() {
        if let Some(mv) = p.coefficient(exps) {
            for (a, &c) in mv.coeffs().iter().enumerate() {
                v[j * blades + a] = c;
            }
        }
    }
    v
}

/// The `Q` basis `{omega p}` on the sphere from a `P` basis.
pub fn q_basis_on_sphere(p_basis: &BasisSet) -> Result<BasisSet> {
    if p_basis.space != SpaceTag::P {
        return Err(Error::WrongSpace {
            expected: "P",
            actual: p_basis.space.name(),
        });
    }
    // left multiplication by a unit vector is a pointwise isometry, so
    // orthonormality carries over
    BasisSet::from_parts(
        p_basis.n,
        p_basis.m,
        SpaceTag::Q,
        p_basis.elements.clone(),
        true,
        p_basis.orthonormal,
        p_basis.quadrature_degree,
    )
}

/// Modified Gram-Schmidt (two passes) under the real pairing
/// `<f, g> = integral of sum_A f_A g_A`.
///
/// The combination found on the realized functions is applied to the
/// stored elements, so `Q` bases stay in pre-image form.
pub fn orthonormalize(basis: &BasisSet, quad: &QuadratureRule) -> Result<BasisSet> {
    if quad.n() != basis.n {
        return Err(Error::DimensionMismatch {
            expected: basis.n,
            actual: quad.n(),
        });
    }
    quad.require_degree(2 * basis.restriction_degree())?;
    let count = basis.len();
    let samples = quad.weighted_samples(&basis.realized());
    let mut vecs: Vec<DVector<f64>> = (0..count).map(|j| samples.column(j).into_owned()).collect();
    // combos[i] expresses the working vector i in terms of the inputs
    let mut combos: Vec<DVector<f64>> = (0..count)
        .map(|i| {
            let mut c = DVector::zeros(count);
            c[i] = 1.0;
            c
        })
        .collect();
    let mut leading = 0.0f64;
    for i in 0..count {
        leading = leading.max(vecs[i].norm());
        for _pass in 0..2 {
            for j in 0..i {
                let proj = vecs[j].dot(&vecs[i]);
                let (done, rest) = vecs.split_at_mut(i);
                rest[0].axpy(-proj, &done[j], 1.0);
                let (done_c, rest_c) = combos.split_at_mut(i);
                rest_c[0].axpy(-proj, &done_c[j], 1.0);
            }
        }
        let pivot = vecs[i].norm();
        if pivot < DEPENDENCE_REL_TOL * leading || pivot == 0.0 {
            return Err(Error::DependentElement {
                index: i,
                pivot,
                leading,
            });
        }
        vecs[i] /= pivot;
        combos[i] /= pivot;
    }
    let dim = basis.ambient_dim();
    let elements = combos
        .iter()
        .map(|c| {
            let mut p = MVPolynomial::zero(dim);
            for (k, &w) in c.iter().enumerate() {
                if w != 0.0 {
                    p.add_scaled(&basis.elements[k], w);
                }
            }
            p
        })
        .collect();
    BasisSet::from_parts(
        basis.n,
        basis.m,
        basis.space,
        elements,
        basis.omega_multiplied,
        true,
        Some(quad.exact_degree()),
    )
}

/// Orthonormal scalar `H_m` basis using a quadrature of degree `2m`.
pub fn orthonormal_harmonic_basis(n: usize, m: usize) -> Result<BasisSet> {
    let quad = QuadratureRule::build(n, 2 * m)?;
    orthonormalize(&harmonic_basis(n, m)?, &quad)
}

/// Orthonormal `P_m` basis using a quadrature of degree `2m`.
pub fn orthonormal_monogenic_basis(n: usize, m: usize) -> Result<BasisSet> {
    let quad = QuadratureRule::build(n, 2 * m)?;
    orthonormalize(&monogenic_basis(n, m)?, &quad)
}

/// Largest Dirac residual coefficient over a basis.
pub fn max_dirac_residual(basis: &BasisSet) -> f64 {
    basis
        .realized()
        .iter()
        .map(|p| p.dirac_apply().max_abs_coeff())
        .fold(0.0, f64::max)
}

/// Largest Laplacian residual coefficient over a basis.
pub fn max_laplacian_residual(basis: &BasisSet) -> f64 {
    basis
        .realized()
        .iter()
        .map(|p| p.laplacian_apply().max_abs_coeff())
        .fold(0.0, f64::max)
}

/// Least-squares distance from a homogeneous degree-`m` polynomial to the
/// real span of a `P` or `H` basis, in coefficient space.
pub fn span_residual(basis: &BasisSet, p: &MVPolynomial) -> f64 {
    let m = basis.m;
    let columns: Vec<DVector<f64>> = basis
        .realized()
        .iter()
        .map(|e| polynomial_to_coefficient_vector(e, m))
        .collect();
    let target = polynomial_to_coefficient_vector(p, m);
    if columns.is_empty() {
        return target.norm();
    }
    let a = DMatrix::from_columns(&columns);
    crate::sphere::span_residual(&a, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{gram_identity_error, surface_area};

    /// Independent dimension oracle: monomial count minus the rank of the
    /// operator, computed by nalgebra's SVD rather than elimination.
    fn svd_nullity(a: &DMatrix<f64>) -> usize {
        if a.nrows() == 0 {
            return a.ncols();
        }
        let sv = a.clone().svd(false, false).singular_values;
        let max = sv.iter().fold(0.0f64, |m, v| m.max(*v));
        a.ncols() - sv.iter().filter(|&&s| s > 1e-10 * max).count()
    }

    fn p1() -> MVPolynomial {
        let mut p = MVPolynomial::variable(3, 0);
        p.add_scaled(
            &MVPolynomial::variable(3, 1).right_mul(&Multivector::blade(3, 0b011, 1.0)),
            -1.0,
        );
        p
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(6, 0), 1);
    }

    #[test]
    fn harmonic_counts() {
        assert_eq!(harmonic_basis(2, 0).unwrap().len(), 1);
        assert_eq!(harmonic_basis(2, 1).unwrap().len(), 3);
        assert_eq!(harmonic_basis(2, 3).unwrap().len(), 7);
        assert_eq!(harmonic_basis(3, 2).unwrap().len(), 9);
        assert_eq!(harmonic_dimension(3, 2), 9);
        for n in 1..=4 {
            for m in 0..=5 {
                let oracle = svd_nullity(&laplacian_matrix(n + 1, m));
                assert_eq!(harmonic_dimension(n, m), oracle, "n={n} m={m}");
                assert_eq!(harmonic_basis(n, m).unwrap().len(), oracle);
            }
        }
    }

    #[test]
    fn monogenic_counts() {
        assert_eq!(monogenic_basis(2, 0).unwrap().len(), 8);
        assert_eq!(monogenic_basis(2, 1).unwrap().len(), 16);
        for n in 2..=3 {
            for m in 0..=3 {
                let oracle = svd_nullity(&dirac_matrix(n + 1, m));
                assert_eq!(monogenic_real_dimension(n, m), oracle, "n={n} m={m}");
                assert_eq!(monogenic_basis(n, m).unwrap().len(), oracle);
            }
        }
    }

    #[test]
    fn canonical_monogenic_lies_in_span() {
        let basis = monogenic_basis(2, 1).unwrap();
        assert!(span_residual(&basis, &p1()) < 1e-10);
        // x1 alone is not monogenic
        assert!(span_residual(&basis, &MVPolynomial::variable(3, 0)) > 0.1);
    }

    #[test]
    fn basis_elements_satisfy_their_equations() {
        for m in 0..=3 {
            assert!(max_laplacian_residual(&harmonic_basis(3, m).unwrap()) < 1e-9);
            assert!(max_dirac_residual(&monogenic_basis(2, m).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn orthonormalized_constant_on_s2() {
        let b = orthonormal_harmonic_basis(2, 0).unwrap();
        let c = b.element(0).coefficient(&[0, 0, 0]).unwrap().scalar_part();
        assert!((c.abs() - 1.0 / (4.0 * std::f64::consts::PI).sqrt()).abs() < 1e-14);
        assert!((c * c * surface_area(2) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn gram_is_identity_after_orthonormalization() {
        for (n, m) in [(2, 3), (3, 2)] {
            let quad = QuadratureRule::build(n, 2 * m).unwrap();
            let h = orthonormalize(&harmonic_basis(n, m).unwrap(), &quad).unwrap();
            assert!(gram_identity_error(&h.gram(&quad).unwrap()) < 1e-10);
            let p = orthonormalize(&monogenic_basis(n, m).unwrap(), &quad).unwrap();
            assert!(gram_identity_error(&p.gram(&quad).unwrap()) < 1e-10);
            assert!(max_dirac_residual(&p) < 1e-9);
        }
    }

    #[test]
    fn orthonormal_input_is_unchanged() {
        let quad = QuadratureRule::build(2, 4).unwrap();
        let once = orthonormalize(&harmonic_basis(2, 2).unwrap(), &quad).unwrap();
        let twice = orthonormalize(&once, &quad).unwrap();
        for (a, b) in once.stored().iter().zip(twice.stored()) {
            assert!(a.max_abs_diff(b) < 1e-10);
        }
    }

    #[test]
    fn dependent_input_is_reported() {
        let basis = harmonic_basis(2, 1).unwrap();
        let mut elements = basis.stored().to_vec();
        elements.push(elements[0].scale(2.0));
        let dup = BasisSet::from_parts(2, 1, SpaceTag::H, elements, false, false, None).unwrap();
        let quad = QuadratureRule::build(2, 2).unwrap();
        match orthonormalize(&dup, &quad) {
            Err(Error::DependentElement { index, .. }) => assert_eq!(index, 3),
            other => panic!("expected dependence error, got {other:?}"),
        }
    }

    #[test]
    fn orthonormalize_requires_enough_exactness() {
        let quad = QuadratureRule::build(2, 3).unwrap();
        assert!(matches!(
            orthonormalize(&harmonic_basis(2, 2).unwrap(), &quad),
            Err(Error::QuadratureTooWeak { .. })
        ));
    }

    #[test]
    fn q_basis_properties() {
        let p = orthonormal_monogenic_basis(2, 1).unwrap();
        let q = q_basis_on_sphere(&p).unwrap();
        assert_eq!(q.space(), SpaceTag::Q);
        assert_eq!(q.homogeneity_degree(), -3);
        assert!(q_basis_on_sphere(&q).is_err());

        let quad = QuadratureRule::build(2, 6).unwrap();
        for x in quad.nodes() {
            for i in 0..p.len() {
                let pv = p.eval(i, x);
                let qv = q.eval(i, x);
                assert!((pv.frobenius_norm() - qv.frobenius_norm()).abs() < 1e-12);
                // omega (omega p) = -p on the sphere
                assert!(qv.left_vector_mul(x).distance(&(-&pv)) < 1e-12);
            }
        }
        assert!(gram_identity_error(&q.gram(&quad).unwrap()) < 1e-10);

        let constant = q_basis_on_sphere(&monogenic_basis(2, 0).unwrap()).unwrap();
        let one_index = (0..constant.len())
            .find(|&i| constant.stored()[i] == MVPolynomial::constant(Multivector::one(3)))
            .expect("identity among constant monogenics");
        let omega = MVPolynomial::constant(Multivector::one(3)).vector_multiply();
        assert_eq!(constant.element(one_index), omega);
    }

    #[test]
    fn fischer_splitting_of_harmonics() {
        // H_m restricted to the sphere = P_m (+) omega P_{m-1}
        for n in 2..=3 {
            for m in 0..=4 {
                let h_real = harmonic_dimension(n, m) << (n + 1);
                let q_prev = if m == 0 { 0 } else { monogenic_real_dimension(n, m - 1) };
                assert_eq!(h_real, monogenic_real_dimension(n, m) + q_prev);
            }
        }
        // omega P_{m-1} elements are harmonic of degree m
        let q = q_basis_on_sphere(&monogenic_basis(2, 2).unwrap()).unwrap();
        assert!(max_laplacian_residual(&q) < 1e-9);
        assert!(q.realized().iter().all(|p| p.homogeneous_degree() == Some(3)));
    }
}
