// Gegenbauer polynomials, the addition theorem with its argument sign
// calibrated against an orthonormal basis, and the reproducing kernel.
//
// cargo run --example addition_theorem

use dirac_sphere::monogenics::orthonormal_harmonic_basis;
use dirac_sphere::operators::project_ta_kernel;
use dirac_sphere::random::random_unit_vector;
use dirac_sphere::specfun::{addition_kernel, calibrate_argument_sign, gegenbauer, reproducing_kernel};
use dirac_sphere::sphere::OrthonormalSystem;
use dirac_sphere::{BasisFamily, QuadratureRule, Result, SpectralCoeffs};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    for m in 0..=3 {
        println!("C_{m}^(1/2)(0.3) = {:.12}", gegenbauer(m, 0.5, 0.3)?);
    }

    let cal = calibrate_argument_sign(2, 5, 50, 42)?;
    println!(
        "addition theorem, n=2, m<=5: error with +t {:.1e}, with -t {:.1e}, chosen sign {:+}",
        cal.plus_error, cal.minus_error, cal.sign
    );
    println!("G_0 on S^2 = {:.12} (1/(4 pi))", addition_kernel(2, 0, 0.7)?);

    let n = 2;
    let a = 3;
    let w = [0.0, 0.0, 1.0];
    println!("G_a(omega, omega) = {:.6}", reproducing_kernel(n, a, &w, &w)?);

    // reproduce a random harmonic polynomial of degree <= a
    let bases = (0..=a).map(|m| orthonormal_harmonic_basis(n, m)).collect::<Result<Vec<_>>>()?;
    let system = OrthonormalSystem::harmonic(&bases)?;
    let mut c = SpectralCoeffs::new(n, BasisFamily::Harmonic);
    c.set(1, 0, 1.0);
    c.set(2, 8, -0.5);
    c.set(3, 17, 2.0);
    let f = system.synthesize_polynomial(&c)?;
    let quad = QuadratureRule::build(n, 2 * a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let w = random_unit_vector(&mut rng, n + 1);
        let via_kernel = project_ta_kernel(&f, n, a, &w, &quad)?;
        println!("|(f, G_a(w,.)) - f(w)| = {:.1e}", via_kernel.distance(&f.eval(&w)?));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
