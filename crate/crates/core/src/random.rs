//! Seeded random test data: unit vectors and random members of bases.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::clifford::Multivector;
use crate::monogenics::BasisSet;
use crate::polynomials::MVPolynomial;

/// Uniform point on the unit sphere in `R^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r > 1e-8 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

/// Uniform point strictly inside the ball of the given radius.
pub fn random_point_in_ball<R: Rng + ?Sized>(rng: &mut R, dim: usize, radius: f64) -> Vec<f64> {
    let r = radius * rng.gen::<f64>().powf(1.0 / dim as f64);
    random_unit_vector(rng, dim).into_iter().map(|c| c * r).collect()
}

/// Standard normal coefficients.
pub fn random_coefficients<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.sample(StandardNormal)).collect()
}

/// Random real combination of the realized elements of `basis`.
pub fn random_combination<R: Rng + ?Sized>(rng: &mut R, basis: &BasisSet) -> MVPolynomial {
    let mut p = MVPolynomial::zero(basis.ambient_dim());
    for (e, c) in basis.realized().iter().zip(random_coefficients(rng, basis.len())) {
        p.add_scaled(e, c);
    }
    p
}

/// Homogeneous polynomial of the given degree with normal coefficients on
/// every monomial and blade.
pub fn random_homogeneous<R: Rng + ?Sized>(rng: &mut R, dim: usize, degree: usize) -> MVPolynomial {
    let mut p = MVPolynomial::zero(dim);
    for exps in crate::polynomials::monomials(dim, degree) {
        let mv = Multivector::from_coeffs(dim, random_coefficients(rng, 1 << dim)).expect("blade count");
        p.add_term(exps, &mv, 1.0);
    }
    p
}

/// Sum of random homogeneous parts of every degree up to `max_degree`.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_degree: usize) -> MVPolynomial {
    let mut p = MVPolynomial::zero(dim);
    for d in 0..=max_degree {
        p.add_scaled(&random_homogeneous(rng, dim, d), 1.0);
    }
    p
}
