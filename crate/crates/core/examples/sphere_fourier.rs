// Product quadrature on S^n, L^2 pairings and Fourier coefficients in the
// orthonormal harmonic system.
//
// cargo run --example sphere_fourier

use dirac_sphere::monogenics::orthonormal_harmonic_basis;
use dirac_sphere::sphere::{moment_certificate, real_inner_product, surface_area, OrthonormalSystem};
use dirac_sphere::{MVPolynomial, Multivector, QuadratureRule, Result};

pub fn run_example() -> Result<()> {
    for n in 1..=4 {
        let quad = QuadratureRule::build(n, 10)?;
        println!(
            "S^{n}: {} nodes, area {:.12}, weight sum {:.12}, worst moment error {:.1e}",
            quad.len(),
            surface_area(n),
            quad.weights().iter().sum::<f64>(),
            moment_certificate(&quad)
        );
    }

    let n = 2;
    let quad = QuadratureRule::build(n, 8)?;
    let x1 = MVPolynomial::variable(3, 0);
    println!("<x1, x1> = {:.12} (4 pi / 3 = {:.12})", real_inner_product(&x1, &x1, &quad)?, 4.0 * std::f64::consts::PI / 3.0);

    let bases = (0..=3).map(|m| orthonormal_harmonic_basis(n, m)).collect::<Result<Vec<_>>>()?;
    let system = OrthonormalSystem::harmonic(&bases)?;
    // f = x1 x2 e3 + x3^2, degree 2 with a Clifford value
    let mut f = x1.mul_variable(1).right_mul(&Multivector::blade(3, 0b100, 1.0));
    f.add_scaled(&MVPolynomial::variable(3, 2).mul_variable(2), 1.0);
    let coeffs = system.analyze(&f, &quad)?;
    for m in coeffs.degrees() {
        println!("degree {m} energy {:.6}", coeffs.degree_energy(m));
    }
    let x = [0.6, 0.0, 0.8];
    let back = system.synthesize(&coeffs, &x)?;
    println!("f(x) = {}, reconstruction error {:.1e}", f.eval(&x)?, back.distance(&f.eval(&x)?));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
