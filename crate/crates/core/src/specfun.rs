//! Special functions: Pochhammer symbols, Gegenbauer and symmetric Jacobi
//! polynomials, the zonal kernels of the harmonic addition theorem and the
//! Clifford Cauchy kernel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::monogenics::{harmonic_dimension, orthonormal_harmonic_basis};
use crate::random::random_unit_vector;
use crate::sphere::{surface_area, QuadratureRule};

/// Sign applied to `<omega, nu>` inside the Gegenbauer factor of the
/// addition theorem. Settled by [`calibrate_argument_sign`]; odd degrees
/// only match the orthonormal basis sum with the plus sign.
pub const ADDITION_ARGUMENT_SIGN: f64 = 1.0;

/// Below this norm the Cauchy kernel is not evaluated.
pub const CAUCHY_SINGULARITY_RADIUS: f64 = 1e-12;

/// Rising factorial `(a)_l = a (a+1) ... (a+l-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, l: usize) -> f64 {
    (0..l).fold(1.0, |acc, i| acc * (a + i as f64))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Gegenbauer index must be positive, got {lambda}"
        )));
    }
    Ok(())
}

fn check_interval(t: f64) -> Result<()> {
    if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&t) {
        return Err(Error::InvalidParameter(format!("argument {t} outside [-1, 1]")));
    }
    Ok(())
}

/// Gegenbauer polynomial `C_m^lambda(t)` by the three-term recurrence
/// `m C_m = 2 t (m + lambda - 1) C_{m-1} - (m + 2 lambda - 2) C_{m-2}`.
pub fn gegenbauer(m: usize, lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_interval(t)?;
    Ok(gegenbauer_unchecked(m, lambda, t))
}

pub(crate) fn gegenbauer_unchecked(m: usize, lambda: f64, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * t;
    for k in 2..=m {
        let kf = k as f64;
        let next = (2.0 * t * (kf + lambda - 1.0) * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_m^lambda(1) = (2 lambda)_m / m!`.
pub fn gegenbauer_at_one(m: usize, lambda: f64) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (2.0 * lambda + i as f64) / (i as f64 + 1.0))
}

/// Symmetric Jacobi polynomial `P_m^{(alpha, alpha)}(t)` by its own
/// three-term recurrence.
pub fn jacobi_symmetric(m: usize, alpha: f64, t: f64) -> Result<f64> {
    if alpha <= -1.0 {
        return Err(Error::InvalidParameter(format!(
            "Jacobi parameter must exceed -1, got {alpha}"
        )));
    }
    check_interval(t)?;
    if m == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = (alpha + 1.0) * t;
    for k in 2..=m {
        let kf = k as f64;
        let s = 2.0 * kf + 2.0 * alpha;
        let lhs = 2.0 * kf * (kf + 2.0 * alpha) * (s - 2.0);
        let a = (s - 1.0) * s * (s - 2.0);
        let b = 2.0 * (kf + alpha - 1.0).powi(2) * s;
        let next = (a * t * cur - b * prev) / lhs;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Zonal kernel of the addition theorem on `S^n`:
/// `N(n,m) / |S^n| * C_m^lambda(t) / C_m^lambda(1)` with `lambda = (n-1)/2`.
pub fn addition_kernel(n: usize, m: usize, t: f64) -> Result<f64> {
    let lambda = (n as f64 - 1.0) / 2.0;
    check_lambda(lambda)?;
    check_interval(t)?;
    Ok(addition_kernel_unchecked(n, m, t.clamp(-1.0, 1.0)))
}

fn addition_kernel_unchecked(n: usize, m: usize, t: f64) -> f64 {
    let lambda = (n as f64 - 1.0) / 2.0;
    let ratio = gegenbauer_unchecked(m, lambda, ADDITION_ARGUMENT_SIGN * t) / gegenbauer_at_one(m, lambda);
    harmonic_dimension(n, m) as f64 / surface_area(n) * ratio
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reproducing kernel of polynomials of degree at most `a` on `S^n`.
pub fn reproducing_kernel(n: usize, a: usize, omega: &[f64], nu: &[f64]) -> Result<f64> {
    if omega.len() != n + 1 || nu.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            actual: if omega.len() != n + 1 { omega.len() } else { nu.len() },
        });
    }
    check_lambda((n as f64 - 1.0) / 2.0)?;
    let t = dot(omega, nu).clamp(-1.0, 1.0);
    Ok((0..=a).map(|m| addition_kernel_unchecked(n, m, t)).sum())
}

/// Cauchy kernel `G(x) = -x / |x|^N` in ambient dimension `N = x.len()`.
pub fn cauchy_kernel(x: &[f64]) -> Result<Multivector> {
    let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    if r <= CAUCHY_SINGULARITY_RADIUS {
        return Err(Error::NearSingularity(r));
    }
    Ok(Multivector::vector(x).scale(-1.0 / r.powi(x.len() as i32)))
}

/// Factor in front of the Cauchy integral over the unit sphere in `R^N`:
/// `1 / |S^{N-1}|`.
pub fn cauchy_normalization(ambient_dim: usize) -> f64 {
    1.0 / surface_area(ambient_dim - 1)
}

/// Outcome of fitting the Cauchy normalization against `f = 1`, `y = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct CauchyCalibration {
    /// `1 / scalar part of the integral of G(x) x`.
    pub constant: f64,
    /// Frozen value from [`cauchy_normalization`].
    pub frozen: f64,
    /// Frobenius norm of the non-scalar part of the integral.
    pub non_scalar_residual: f64,
}

pub fn calibrate_cauchy_constant(quad: &QuadratureRule) -> Result<CauchyCalibration> {
    let dim = quad.ambient_dim();
    // eta(x) = x on the unit sphere, multiplied from the right of G
    let mut integral = Multivector::zero(dim);
    for (x, &w) in quad.nodes().iter().zip(quad.weights()) {
        let g = cauchy_kernel(x)?;
        integral.add_scaled(&(&g * &Multivector::vector(x)), w);
    }
    let scalar = integral.scalar_part();
    let mut rest = integral.clone();
    rest.coeffs_mut()[0] = 0.0;
    Ok(CauchyCalibration {
        constant: 1.0 / scalar,
        frozen: cauchy_normalization(dim),
        non_scalar_residual: rest.frobenius_norm(),
    })
}

/// Result of checking both argument signs against the orthonormal basis sum.
#[derive(Debug, Clone, Serialize)]
pub struct SignCalibration {
    pub n: usize,
    pub m_max: usize,
    pub pairs: usize,
    /// Max deviation with `C_m(+<omega, nu>)`.
    pub plus_error: f64,
    /// Max deviation with `C_m(-<omega, nu>)`.
    pub minus_error: f64,
    /// The sign that reproduces the basis sum.
    pub sign: f64,
}

/// `sum_k Y_mk(omega) Y_mk(nu)` for an orthonormal scalar harmonic basis.
pub fn harmonic_basis_sum(basis: &crate::monogenics::BasisSet, omega: &[f64], nu: &[f64]) -> f64 {
    (0..basis.len())
        .map(|k| basis.eval(k, omega).scalar_part() * basis.eval(k, nu).scalar_part())
        .sum()
}

/// Compares the basis-sum side of the addition theorem against the
/// Gegenbauer side with either argument sign at random point pairs.
pub fn calibrate_argument_sign(n: usize, m_max: usize, pairs: usize, seed: u64) -> Result<SignCalibration> {
    let lambda = (n as f64 - 1.0) / 2.0;
    check_lambda(lambda)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(Vec<f64>, Vec<f64>)> = (0..pairs)
        .map(|_| (random_unit_vector(&mut rng, n + 1), random_unit_vector(&mut rng, n + 1)))
        .collect();
    let mut plus_error = 0.0f64;
    let mut minus_error = 0.0f64;
    for m in 0..=m_max {
        let basis = orthonormal_harmonic_basis(n, m)?;
        let scale = harmonic_dimension(n, m) as f64 / surface_area(n) / gegenbauer_at_one(m, lambda);
        for (omega, nu) in &points {
            let lhs = harmonic_basis_sum(&basis, omega, nu);
            let t = dot(omega, nu).clamp(-1.0, 1.0);
            plus_error = plus_error.max((lhs - scale * gegenbauer_unchecked(m, lambda, t)).abs());
            minus_error = minus_error.max((lhs - scale * gegenbauer_unchecked(m, lambda, -t)).abs());
        }
    }
    Ok(SignCalibration {
        n,
        m_max,
        pairs,
        plus_error,
        minus_error,
        sign: if plus_error <= minus_error { 1.0 } else { -1.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Explicit low-degree Gegenbauer polynomials.
    fn closed_form(m: usize, l: f64, t: f64) -> f64 {
        match m {
            0 => 1.0,
            1 => 2.0 * l * t,
            2 => -l + 2.0 * l * (1.0 + l) * t * t,
            3 => -2.0 * l * (1.0 + l) * t + 4.0 / 3.0 * l * (1.0 + l) * (2.0 + l) * t.powi(3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(7.3, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        assert!((pochhammer(0.5, 3) - 1.875).abs() < 1e-15);
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, 1.3, 0.2).unwrap(), 1.0);
        assert!((gegenbauer(1, 0.5, 0.37).unwrap() - 0.37).abs() < 1e-15);
        assert!((gegenbauer(2, 0.5, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(gegenbauer(2, 0.0, 0.5).is_err());
        assert!(gegenbauer(2, -1.0, 0.5).is_err());
        assert!(gegenbauer(2, 0.5, 1.5).is_err());
    }

    #[test]
    fn recurrence_matches_closed_forms() {
        for &l in &[0.5, 1.0, 1.5, 2.7] {
            for m in 0..=3 {
                for i in 0..=20 {
                    let t = -1.0 + 0.1 * i as f64;
                    let rec = gegenbauer(m, l, t).unwrap();
                    assert!((rec - closed_form(m, l, t)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn bounded_by_value_at_one() {
        for &l in &[0.5, 1.0, 1.5] {
            for m in 0..=10 {
                let top = gegenbauer(m, l, 1.0).unwrap();
                assert!((top - gegenbauer_at_one(m, l)).abs() < 1e-10 * top.max(1.0));
                assert!(top > 0.0);
                for i in 0..=1000 {
                    let t = -1.0 + 0.002 * i as f64;
                    assert!(gegenbauer(m, l, t).unwrap().abs() <= top * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn gegenbauer_is_proportional_to_symmetric_jacobi() {
        for &l in &[0.5, 1.0, 1.5] {
            for m in 1..=6 {
                let ratios: Vec<f64> = (0..20)
                    .map(|i| -0.95 + 0.1 * i as f64)
                    .filter(|t: &f64| jacobi_symmetric(m, l - 0.5, *t).unwrap().abs() > 1e-3)
                    .map(|t| gegenbauer(m, l, t).unwrap() / jacobi_symmetric(m, l - 0.5, t).unwrap())
                    .collect();
                let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
                let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / ratios.len() as f64;
                assert!(var < 1e-10, "lambda={l} m={m} var={var}");
                // standard constant (2 lambda)_m / (lambda + 1/2)_m
                let standard = pochhammer(2.0 * l, m) / pochhammer(l + 0.5, m);
                assert!((mean - standard).abs() < 1e-10 * standard);
            }
        }
    }

    #[test]
    fn legendre_jacobi_values() {
        // P_2^{(0,0)}(t) = (3t^2 - 1)/2
        assert!((jacobi_symmetric(2, 0.0, 0.4).unwrap() - (3.0 * 0.16 - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn addition_kernel_examples() {
        for &t in &[-1.0, -0.3, 0.0, 0.8] {
            assert!((addition_kernel(2, 0, t).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
            assert!((addition_kernel(2, 1, t).unwrap() - 3.0 * t / (4.0 * PI)).abs() < 1e-15);
        }
        assert!((addition_kernel(3, 2, 1.0).unwrap() - 9.0 / (2.0 * PI * PI)).abs() < 1e-14);
        assert!(addition_kernel(1, 2, 0.3).is_err());
    }

    #[test]
    fn reproducing_kernel_basics() {
        let w = [0.0, 0.0, 1.0];
        let v = [0.6, 0.0, 0.8];
        let g0 = reproducing_kernel(2, 0, &w, &v).unwrap();
        assert!((g0 - 1.0 / (4.0 * PI)).abs() < 1e-15);
        let gwv = reproducing_kernel(2, 4, &w, &v).unwrap();
        let gvw = reproducing_kernel(2, 4, &v, &w).unwrap();
        assert_eq!(gwv, gvw);
        assert!(reproducing_kernel(2, 1, &w, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn argument_sign_is_plus() {
        let cal = calibrate_argument_sign(2, 5, 50, 2024).unwrap();
        assert_eq!(cal.sign, ADDITION_ARGUMENT_SIGN);
        assert!(cal.plus_error < 1e-8, "{cal:?}");
        assert!(cal.minus_error > 1e-2);
    }

    #[test]
    fn cauchy_kernel_examples() {
        assert_eq!(cauchy_kernel(&[1.0, 0.0, 0.0]).unwrap(), -&Multivector::generator(3, 0));
        let x = [0.3, -0.4, 1.1];
        let x2: Vec<f64> = x.iter().map(|c| 2.0 * c).collect();
        let g = cauchy_kernel(&x).unwrap().frobenius_norm();
        let g2 = cauchy_kernel(&x2).unwrap().frobenius_norm();
        assert!((g2 - 0.25 * g).abs() < 1e-15);
        assert!(matches!(cauchy_kernel(&[0.0, 1e-13, 0.0]), Err(Error::NearSingularity(_))));
    }

    #[test]
    fn cauchy_kernel_is_monogenic_by_finite_differences() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = 1e-4;
        for dim in [3, 4] {
            for _ in 0..20 {
                let r = rng.gen_range(0.5..2.0);
                let x: Vec<f64> = random_unit_vector(&mut rng, dim).iter().map(|c| c * r).collect();
                let mut dg = Multivector::zero(dim);
                for i in 0..dim {
                    let shifted = |s: f64| {
                        let mut y = x.clone();
                        y[i] += s * h;
                        cauchy_kernel(&y).unwrap()
                    };
                    let mut d = shifted(-2.0);
                    d.add_scaled(&shifted(-1.0), -8.0);
                    d.add_scaled(&shifted(1.0), 8.0);
                    d.add_scaled(&shifted(2.0), -1.0);
                    let d = d.scale(1.0 / (12.0 * h));
                    dg += &(&Multivector::generator(dim, i) * &d);
                }
                assert!(dg.frobenius_norm() < 1e-6, "residual {}", dg.frobenius_norm());
            }
        }
    }

    #[test]
    fn cauchy_constant_calibration() {
        for n in [2, 3] {
            let quad = QuadratureRule::build(n, 10).unwrap();
            let cal = calibrate_cauchy_constant(&quad).unwrap();
            assert!((cal.constant - cal.frozen).abs() < 1e-12 * cal.frozen);
            assert!(cal.non_scalar_residual < 1e-12);
        }
    }
}
