// Multivector arithmetic in Cl_3 (negative-definite signature).
//
// cargo run --example clifford_algebra

use dirac_sphere::clifford::blade_label;
use dirac_sphere::{Multivector, Result};

pub fn run_example() -> Result<()> {
    let dim = 3;
    let e1 = Multivector::generator(dim, 0);
    let e2 = Multivector::generator(dim, 1);

    println!("e1 e1       = {}", &e1 * &e1);
    println!("e1 e2       = {}", &e1 * &e2);
    println!("e2 e1       = {}", &e2 * &e1);

    // a vector squares to minus its length squared
    let x = Multivector::vector(&[1.0, 2.0, 2.0]);
    let xx = &x * &x;
    println!("x x         = {xx}");
    assert_eq!(xx.scalar_part(), -9.0);

    let a = &Multivector::scalar(dim, 1.5) + &(&e1 * &e2).scale(2.0);
    let b = &e2 - &Multivector::blade(dim, 0b111, 0.5);
    let ab = a.geometric_product(&b)?;
    println!("a           = {a}");
    println!("b           = {b}");
    println!("a b         = {ab}");

    // conjugation reverses products
    let lhs = ab.conjugate();
    let rhs = &b.conjugate() * &a.conjugate();
    println!("|conj(ab) - conj(b) conj(a)| = {:.1e}", lhs.distance(&rhs));

    for grade in 0..=dim {
        println!("grade {grade} part of a b: {}", ab.grade_project(grade)?);
    }
    println!("blade 0b101 is {}", blade_label(0b101));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
