// Persisting orthonormal bases as checksummed JSON and reading them back.
//
// cargo run --example basis_cache

use dirac_sphere::cli::cache::{BasisCache, BasisProvider};
use dirac_sphere::{Result, SpaceTag};

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("dirac-sphere-example-{}", std::process::id()));
    let cold = BasisProvider::new(Some(BasisCache::new(&dir)));
    for m in 0..=2 {
        for space in [SpaceTag::H, SpaceTag::P, SpaceTag::Q] {
            let b = cold.get(2, m, space)?;
            println!("built {} m={m}: {} elements", space.name(), b.len());
        }
    }
    let warm = BasisProvider::new(Some(BasisCache::new(&dir)));
    let q = warm.get(2, 2, SpaceTag::Q)?;
    println!("read back Q_2 with {} elements, {} disk hit(s)", q.len(), warm.disk_hits());
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
