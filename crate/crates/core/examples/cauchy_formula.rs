// Cauchy's theorem on the unit sphere and the Cauchy integral formula in
// the unit ball.
//
// cargo run --example cauchy_formula

use dirac_sphere::monogenics::orthonormal_monogenic_basis;
use dirac_sphere::operators::{verify_cauchy_integral_formula, verify_cauchy_theorem};
use dirac_sphere::random::random_combination;
use dirac_sphere::specfun::{calibrate_cauchy_constant, cauchy_kernel};
use dirac_sphere::{QuadratureRule, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    println!("G(1, 1, 0) = {}", cauchy_kernel(&[1.0, 1.0, 0.0])?);

    let cal = calibrate_cauchy_constant(&QuadratureRule::build(2, 30)?)?;
    println!("calibrated constant {:.15}, 1/(4 pi) = {:.15}", cal.constant, cal.frozen);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_combination(&mut rng, &orthonormal_monogenic_basis(2, 2)?);
    let g = random_combination(&mut rng, &orthonormal_monogenic_basis(2, 1)?).conjugate();
    let quad = QuadratureRule::build(2, 6)?;
    println!("|integral of g omega f| = {:.1e}", verify_cauchy_theorem(&f, &g, &quad)?);

    let y = [0.3, 0.1, -0.2];
    for degree in [10, 20, 30, 40, 50] {
        let err = verify_cauchy_integral_formula(&f, &y, &QuadratureRule::build(2, degree)?)?;
        println!("quadrature degree {degree:2}: |f(y) - Cauchy integral| = {err:.2e}");
    }
    match verify_cauchy_integral_formula(&f, &[0.85, 0.0, 0.0], &quad) {
        Err(e) => println!("near the boundary: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
