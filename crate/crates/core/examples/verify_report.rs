// Running the verification suite from code and printing one line per check.
//
// cargo run --example verify_report

use dirac_sphere::cli::cache::BasisProvider;
use dirac_sphere::cli::suite::{run_suite, SuiteConfig};
use dirac_sphere::Result;

pub fn run_example() -> Result<()> {
    let cfg = SuiteConfig::new(2, 2, 42);
    let report = run_suite(&cfg, &BasisProvider::default())?;
    for c in &report.checks {
        println!("{} {:28} {:.2e} (bound {:.1e})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.measured, c.bound);
    }
    println!("overall: {}", if report.pass { "PASS" } else { "FAIL" });
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
