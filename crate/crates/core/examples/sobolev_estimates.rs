// Sobolev norms, the projection T_a, and the three embedding estimates.
//
// cargo run --example sobolev_estimates

use dirac_sphere::operators::{
    complement_ta, low_degree_constant, project_ta, sobolev_norm, sup_norm_constant, tail_constant,
    verify_embedding_estimates, SobolevSpec,
};
use dirac_sphere::{BasisFamily, Result, SpectralCoeffs};

pub fn run_example() -> Result<()> {
    let n = 2;
    let mut phi = SpectralCoeffs::new(n, BasisFamily::Harmonic);
    phi.set(0, 0, 1.0);
    phi.set(1, 1, 1.0);
    phi.set(3, 2, 0.5);
    for s in [0.0, 1.0, 2.0] {
        println!("||phi||_{s} = {:.6}", sobolev_norm(&phi, &SobolevSpec::new(s, n)?)?);
    }
    let a = 1;
    let spec = SobolevSpec::new(1.0, n)?;
    println!(
        "||T_1 phi||_1 = {:.6}, ||(I - T_1) phi||_1 = {:.6}",
        sobolev_norm(&project_ta(&phi, a), &spec)?,
        sobolev_norm(&complement_ta(&phi, a), &spec)?
    );

    println!("constants for a=1, s=2, t=0.5:");
    println!("  low degree {:.6}", low_degree_constant(n, 1, 2.0));
    println!("  tail       {:.6}", tail_constant(n, 1, 2.0, 0.5));
    println!("  sup norm   {:.6}", sup_norm_constant(n, 1, 7, 2.0));
    let decay: Vec<String> = (0..=6).map(|a| format!("{:.4}", tail_constant(n, a, 2.0, 0.5))).collect();
    println!("||I - T_a|| bound for a = 0..6: {}", decay.join(" "));

    let r = verify_embedding_estimates(2, 0, 2.0, 0.0, 50, 42)?;
    println!(
        "random trials: low-degree ratio {:.4}, tail ratio {:.4}, sup ratio {:.4}, all within bounds: {}",
        r.low_degree.max_ratio, r.tail.max_ratio, r.sup_norm.max_ratio, r.pass
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
