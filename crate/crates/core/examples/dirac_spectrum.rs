// The conformal Dirac operator three ways: symbolically, as an assembled
// matrix with eigenvalues +-(m + n/2), and as spectral multipliers.
//
// cargo run --example dirac_spectrum

use dirac_sphere::monogenics::orthonormal_monogenic_basis;
use dirac_sphere::operators::{
    block_spectrum, conformal_dirac_spectral, conformal_dirac_symbolic, spinorial_laplacian_spectral,
};
use dirac_sphere::{BasisFamily, QuadratureRule, Result, SpectralCoeffs};

pub fn run_example() -> Result<()> {
    for (n, m_max) in [(2, 4), (3, 3)] {
        for m in 0..=m_max {
            let p = orthonormal_monogenic_basis(n, m)?;
            let quad = QuadratureRule::build(n, 2 * m + 2)?;
            let s = block_spectrum(&p, &quad)?;
            println!(
                "n={n} m={m}: size {:3}, eigenvalues +-{} ({} / {}), max error {:.1e}",
                s.dimension, s.expected, s.positive, s.negative, s.max_abs_error
            );
        }
    }

    let p = orthonormal_monogenic_basis(2, 1)?;
    let f = &p.realized()[0];
    let w = [0.6, 0.0, 0.8];
    println!("D_s f(w) = {}", conformal_dirac_symbolic(f, &w)?);
    println!("-2 w f(w) = {}", f.eval(&w)?.left_vector_mul(&w).scale(-2.0));

    // spectral side: D_s swaps the P and omega P halves of each block
    let mut c = SpectralCoeffs::new(2, BasisFamily::Monogenic);
    c.set(1, 0, 1.0);
    let ds = conformal_dirac_spectral(&c)?;
    println!("D_s of the first P_1 element: {:?}", ds.iter().collect::<Vec<_>>());
    let lap = spinorial_laplacian_spectral(&c, 2)?;
    println!("spinorial Laplacian of order 2: {:?}", lap.iter().collect::<Vec<_>>());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
