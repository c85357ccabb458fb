// Harmonic and monogenic bases from nullspaces, their dimensions, and the
// splitting of harmonics into P_m and omega P_(m-1) on the sphere.
//
// cargo run --example monogenic_bases

use dirac_sphere::monogenics::{
    harmonic_basis, harmonic_dimension, monogenic_basis, monogenic_rank, monogenic_real_dimension, orthonormal_monogenic_basis,
    q_basis_on_sphere,
};
use dirac_sphere::{QuadratureRule, Result};

pub fn run_example() -> Result<()> {
    for n in [2, 3] {
        println!("S^{n}:");
        println!("  m  dim H_m  formula  dim P_m  formula  rank");
        for m in 0..=4 {
            let h = harmonic_basis(n, m)?;
            let p = monogenic_basis(n, m)?;
            println!(
                "  {m}  {:7}  {:7}  {:7}  {:7}  {:4}",
                h.len(),
                harmonic_dimension(n, m),
                p.len(),
                monogenic_real_dimension(n, m),
                monogenic_rank(n, m)
            );
        }
    }

    // Clifford-valued harmonics of degree m split as P_m + omega P_(m-1)
    let n = 2;
    let blades = 1 << (n + 1);
    for m in 1..=3 {
        let h_real = harmonic_dimension(n, m) * blades;
        let split = monogenic_real_dimension(n, m) + monogenic_real_dimension(n, m - 1);
        println!("n={n} m={m}: real dim of Clifford H_m = {h_real}, P_m + omega P_(m-1) = {split}");
    }

    let p = orthonormal_monogenic_basis(2, 2)?;
    let q = q_basis_on_sphere(&p)?;
    let quad = QuadratureRule::build(2, 2 * q.restriction_degree())?;
    let gram = q.gram(&quad)?;
    let dev = (gram - nalgebra::DMatrix::identity(q.len(), q.len())).amax();
    println!("omega P_2 on S^2: {} elements, max |G - I| = {dev:.1e}", q.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
