// Dirac, Gamma, Euler and Laplace operators on Clifford-valued polynomials.
//
// cargo run --example polynomial_operators

use dirac_sphere::operators::intertwining_residual;
use dirac_sphere::random::{random_polynomial, random_unit_vector};
use dirac_sphere::{MVPolynomial, Multivector, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let dim = 3;
    // p = x1 - x2 e1e2 is the standard degree-1 monogenic
    let mut p = MVPolynomial::variable(dim, 0);
    p.add_scaled(&MVPolynomial::variable(dim, 1).right_mul(&Multivector::blade(dim, 0b011, 1.0)), -1.0);
    println!("p          = {p}");
    println!("D p        = {}", p.dirac_apply());
    println!("Gamma p    = {}", p.gamma_apply());
    println!("E p        = {}", p.euler_apply());
    println!("x p        = {}", p.vector_multiply());
    println!("Gamma(x p) = {}", p.vector_multiply().gamma_apply());

    let x1 = MVPolynomial::variable(dim, 0);
    println!("Gamma x1   = {}", x1.gamma_apply());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_square = 0.0f64;
    let mut worst_intertwining = 0.0f64;
    for _ in 0..20 {
        let f = random_polynomial(&mut rng, dim, 4);
        let lhs = f.dirac_apply().dirac_apply();
        worst_square = worst_square.max(lhs.max_abs_diff(&f.laplacian_apply().scale(-1.0)));
        let w = random_unit_vector(&mut rng, dim);
        worst_intertwining = worst_intertwining.max(intertwining_residual(&f, &w)?);
    }
    println!("max |D^2 f + Laplacian f|                 = {worst_square:.2e}");
    println!("max |Gamma(x f) + x Gamma f - n x f|      = {worst_intertwining:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
