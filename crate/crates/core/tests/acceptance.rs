// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs without the libtest harness so the lines always print.

use std::process::Command;
use std::time::Instant;

use dirac_sphere::clifford::Multivector;
use dirac_sphere::monogenics::{
    binomial, harmonic_basis, harmonic_dimension, monogenic_basis, orthonormal_harmonic_basis, orthonormal_monogenic_basis,
};
use dirac_sphere::operators::{
    block_spectrum, project_ta, project_ta_kernel, verify_cauchy_integral_formula, verify_cauchy_theorem,
    verify_embedding_estimates,
};
use dirac_sphere::polynomials::monomials;
use dirac_sphere::random::{random_coefficients, random_combination, random_point_in_ball, random_polynomial, random_unit_vector};
use dirac_sphere::specfun::calibrate_argument_sign;
use dirac_sphere::sphere::{surface_area, OrthonormalSystem};
use dirac_sphere::{BasisFamily, MVPolynomial, QuadratureRule, SpectralCoeffs};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// Gamma as minus the sum of bivector-weighted angular derivatives:
// -sum_{i<j} e_i e_j (x_i d_j - x_j d_i).
fn gamma_oracle(p: &MVPolynomial) -> MVPolynomial {
    let dim = p.dim();
    let mut out = MVPolynomial::zero(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut l = p.partial(j).mul_variable(i);
            l.add_scaled(&p.partial(i).mul_variable(j), -1.0);
            let eij = &Multivector::generator(dim, i) * &Multivector::generator(dim, j);
            out.add_scaled(&l.left_mul(&eij), -1.0);
        }
    }
    out
}

fn laplacian_oracle(p: &MVPolynomial) -> MVPolynomial {
    let mut out = MVPolynomial::zero(p.dim());
    for i in 0..p.dim() {
        out.add_scaled(&p.partial(i).partial(i), 1.0);
    }
    out
}

// Real matrix of a linear polynomial operator on Clifford-valued
// homogeneous polynomials of degree m, built by applying it to each
// (monomial, blade) unit.
fn operator_matrix(dim: usize, m: usize, out_degree: Option<usize>, op: impl Fn(&MVPolynomial) -> MVPolynomial) -> DMatrix<f64> {
    let blades = 1usize << dim;
    let cols = monomials(dim, m);
    let rows = out_degree.map(|d| monomials(dim, d)).unwrap_or_default();
    let mut a = DMatrix::zeros(rows.len() * blades, cols.len() * blades);
    for (c, exps) in cols.iter().enumerate() {
        for blade in 0..blades {
            let image = op(&MVPolynomial::monomial(exps.clone(), Multivector::blade(dim, blade, 1.0)));
            for (exps_out, mv) in image.terms() {
                let r = rows.iter().position(|e| e == exps_out).expect("homogeneous image");
                for (b, v) in mv.coeffs().iter().enumerate() {
                    a[(r * blades + b, c * blades + blade)] = *v;
                }
            }
        }
    }
    a
}

fn svd_nullity(a: &DMatrix<f64>) -> usize {
    if a.nrows() == 0 {
        return a.ncols();
    }
    let sv = a.clone().svd(false, false).singular_values;
    let top = sv.max();
    let rank = sv.iter().filter(|&&s| s > 1e-10 * top).count();
    a.ncols() - rank
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    let mut balanced = true;
    for (n, m_max) in [(2usize, 4usize), (3, 3)] {
        for m in 0..=m_max {
            let p = orthonormal_monogenic_basis(n, m).unwrap();
            let quad = QuadratureRule::build(n, 2 * m + 2).unwrap();
            let s = block_spectrum(&p, &quad).unwrap();
            // expected from the closed form, not from the library
            let expected = m as f64 + n as f64 / 2.0;
            worst = worst.max(s.eigenvalues.iter().map(|v| (v.abs() - expected).abs()).fold(0.0, f64::max));
            balanced &= s.positive == s.negative && s.positive == p.len();
        }
    }
    outcome(
        worst < 1e-8 && balanced,
        format!("max |lambda| - (m+n/2) = {worst:.2e}, multiplicities balanced: {balanced}"),
    )
}

fn criterion_2() -> Outcome {
    let mut worst_lib = 0.0f64;
    let mut worst_oracle = 0.0f64;
    let mut gamma_agreement = 0.0f64;
    for n in [2usize, 3] {
        let dim = n + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + n as u64);
        for _ in 0..100 {
            let degree = rng.gen_range(0..=4);
            let f = random_polynomial(&mut rng, dim, degree);
            let w = random_unit_vector(&mut rng, dim);
            let xf = f.vector_multiply();
            let lib = {
                let mut v = xf.gamma_apply().eval(&w).unwrap();
                v += &f.gamma_apply().eval(&w).unwrap().left_vector_mul(&w);
                v.add_scaled(&xf.eval(&w).unwrap(), -(n as f64));
                v.frobenius_norm()
            };
            let oracle = {
                let mut v = gamma_oracle(&xf).eval(&w).unwrap();
                v += &gamma_oracle(&f).eval(&w).unwrap().left_vector_mul(&w);
                v.add_scaled(&xf.eval(&w).unwrap(), -(n as f64));
                v.frobenius_norm()
            };
            worst_lib = worst_lib.max(lib);
            worst_oracle = worst_oracle.max(oracle);
            gamma_agreement = gamma_agreement.max(f.gamma_apply().max_abs_diff(&gamma_oracle(&f)));
        }
    }
    outcome(
        worst_lib < 1e-9 && worst_oracle < 1e-9 && gamma_agreement < 1e-9,
        format!(
            "residual {worst_lib:.2e} (library Gamma), {worst_oracle:.2e} (bivector oracle); Gamma vs oracle {gamma_agreement:.2e}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    let mut lap_agreement = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for i in 0..100 {
        let dim = if i % 2 == 0 { 3 } else { 4 };
        let degree = rng.gen_range(0..=5);
        let p = random_polynomial(&mut rng, dim, degree);
        let dd = p.dirac_apply().dirac_apply();
        worst = worst.max(dd.max_abs_diff(&laplacian_oracle(&p).scale(-1.0)));
        lap_agreement = lap_agreement.max(p.laplacian_apply().max_abs_diff(&laplacian_oracle(&p)));
    }
    outcome(
        worst < 1e-10 && lap_agreement < 1e-10,
        format!("max |D^2 p + Laplacian p| = {worst:.2e}, library Laplacian vs oracle {lap_agreement:.2e}"),
    )
}

fn criterion_4() -> Outcome {
    let mut mismatches = Vec::new();
    for n in [2usize, 3] {
        let dim = n + 1;
        let blades = 1usize << dim;
        for m in 0..=4 {
            let scalar_h = if m == 0 {
                1
            } else {
                (2 * m + n - 1) * binomial(m + n - 2, n - 1) / m
            };
            let mono = binomial(m + n - 1, n - 1) * blades;
            let lap = operator_matrix(dim, m, m.checked_sub(2), |p| p.laplacian_apply());
            let dir = operator_matrix(dim, m, m.checked_sub(1), |p| p.dirac_apply());
            let h_null = svd_nullity(&lap);
            let d_null = svd_nullity(&dir);
            let lib_h = harmonic_basis(n, m).unwrap().len();
            let lib_d = monogenic_basis(n, m).unwrap().len();
            if h_null != scalar_h * blades || lib_h != scalar_h || harmonic_dimension(n, m) != scalar_h {
                mismatches.push(format!("H n={n} m={m}: svd {h_null}, library {lib_h}, formula {scalar_h}"));
            }
            if d_null != mono || lib_d != mono {
                mismatches.push(format!("P n={n} m={m}: svd {d_null}, library {lib_d}, formula {mono}"));
            }
        }
    }
    let pass = mismatches.is_empty();
    outcome(
        pass,
        if pass {
            "all nullities match for n in {2,3}, m <= 4".to_string()
        } else {
            mismatches.join("; ")
        },
    )
}

fn criterion_5() -> Outcome {
    let cal = calibrate_argument_sign(2, 5, 50, SEED).unwrap();
    let err = if cal.sign > 0.0 { cal.plus_error } else { cal.minus_error };
    outcome(
        err < 1e-8,
        format!(
            "error {err:.2e} with calibrated argument sign {:+} (other sign: {:.2e})",
            cal.sign,
            if cal.sign > 0.0 { cal.minus_error } else { cal.plus_error }
        ),
    )
}

fn harmonic_system(n: usize, top: usize) -> OrthonormalSystem {
    let bases: Vec<_> = (0..=top).map(|m| orthonormal_harmonic_basis(n, m).unwrap()).collect();
    OrthonormalSystem::harmonic(&bases).unwrap()
}

fn criterion_6() -> Outcome {
    let (n, a) = (2, 3);
    let system = harmonic_system(n, a);
    let quad = QuadratureRule::build(n, 2 * a).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let mut c = SpectralCoeffs::new(n, BasisFamily::Harmonic);
        for m in 0..=a {
            for (k, v) in random_coefficients(&mut rng, system.block_len(m)).into_iter().enumerate() {
                c.set(m, k, v);
            }
        }
        let f = system.synthesize_polynomial(&c).unwrap();
        for _ in 0..20 {
            let w = random_unit_vector(&mut rng, n + 1);
            let v = project_ta_kernel(&f, n, a, &w, &quad).unwrap();
            worst = worst.max(v.distance(&f.eval(&w).unwrap()));
        }
    }
    outcome(worst < 1e-8, format!("max |(f, G_3(w,.)) - f(w)| = {worst:.2e} over 20 x 20"))
}

fn criterion_7() -> Outcome {
    let n = 2;
    let p: Vec<_> = (0..=2).map(|m| orthonormal_monogenic_basis(n, m).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let ct_quad = QuadratureRule::build(n, 5).unwrap();
    let mut ct = 0.0f64;
    for df in 0..=2 {
        for dg in 0..=2 {
            for _ in 0..3 {
                let f = random_combination(&mut rng, &p[df]);
                let g = random_combination(&mut rng, &p[dg]).conjugate();
                ct = ct.max(verify_cauchy_theorem(&f, &g, &ct_quad).unwrap());
            }
        }
    }
    let one = MVPolynomial::constant(Multivector::one(n + 1));
    let calibration = verify_cauchy_integral_formula(&one, &[0.0; 3], &QuadratureRule::build(n, 30).unwrap()).unwrap();
    // the normalization used by the formula must be the inverse area
    let area_check = (1.0 / surface_area(n) - dirac_sphere::specfun::cauchy_normalization(n + 1)).abs();
    let quad = QuadratureRule::build(n, 40).unwrap();
    let mut cif = 0.0f64;
    for d in 0..=2 {
        for _ in 0..5 {
            let f = random_combination(&mut rng, &p[d]);
            let y = random_point_in_ball(&mut rng, n + 1, 0.5);
            cif = cif.max(verify_cauchy_integral_formula(&f, &y, &quad).unwrap());
        }
    }
    outcome(
        ct < 1e-8 && calibration < 1e-10 && area_check < 1e-15 && cif < 1e-6,
        format!("Cauchy theorem {ct:.2e}; calibration (f=1, y=0) {calibration:.2e}; integral formula {cif:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (n, a, s, t) in [(2usize, 2usize, 2.0, 0.5), (3, 1, 1.5, 0.0)] {
        let r = verify_embedding_estimates(n, a, s, t, 100, SEED).unwrap();
        let w1 = (r.low_degree.witness_ratio.unwrap() - 1.0).abs();
        let w2 = (r.tail.witness_ratio.unwrap() - 1.0).abs();
        pass &= r.low_degree.max_ratio <= 1.0 + 1e-9 && r.tail.max_ratio <= 1.0 + 1e-9 && w1 < 1e-10 && w2 < 1e-10;
        lines.push(format!(
            "n={n} a={a}: part1 {:.6} (witness off by {w1:.1e}), part2 {:.6} (witness off by {w2:.1e})",
            r.low_degree.max_ratio, r.tail.max_ratio
        ));
    }
    let r3 = verify_embedding_estimates(2, 0, 2.0, 0.0, 50, SEED).unwrap();
    pass &= r3.sup_norm.max_ratio <= 1.0 + 1e-9;
    lines.push(format!("part3 n=2 s=2 a=0: sup/bound {:.4}", r3.sup_norm.max_ratio));
    outcome(pass, lines.join("; "))
}

fn criterion_9() -> Outcome {
    let (n, a, top) = (2, 3, 5);
    let system = harmonic_system(n, top);
    let quad = QuadratureRule::build(n, top + a).unwrap();
    let blades = 1usize << (n + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut consistency = 0.0f64;
    let mut idempotence = 0.0f64;
    for _ in 0..20 {
        // scalar functions: only the scalar blade of each harmonic
        let mut c = SpectralCoeffs::new(n, BasisFamily::Harmonic);
        for m in 0..=top {
            for (j, v) in random_coefficients(&mut rng, harmonic_dimension(n, m)).into_iter().enumerate() {
                c.set(m, j * blades, v);
            }
        }
        let f = system.synthesize_polynomial(&c).unwrap();
        let truncated = project_ta(&c, a);
        let tf = system.synthesize_polynomial(&truncated).unwrap();
        for _ in 0..5 {
            let w = random_unit_vector(&mut rng, n + 1);
            consistency = consistency.max(project_ta_kernel(&f, n, a, &w, &quad).unwrap().distance(&tf.eval(&w).unwrap()));
        }
        idempotence = idempotence.max(project_ta(&truncated, a).max_abs_diff(&truncated));
    }
    outcome(
        consistency < 1e-8 && idempotence < 1e-12,
        format!("kernel vs truncation {consistency:.2e}; idempotence {idempotence:.2e}"),
    )
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_dirac-sphere"))
            .args(["verify", "--threads", "1", "--n", "2", "--m-max", "3", "--seed", "42"])
            .env_remove("DIRAC_SPHERE_CACHE")
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    let identical = first.stdout == second.stdout;
    let ok = first.status.success() && second.status.success();
    outcome(
        identical && ok && !first.stdout.is_empty(),
        format!(
            "{} bytes, identical: {identical}, exit codes {:?} / {:?}",
            first.stdout.len(),
            first.status.code(),
            second.status.code()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("spectral resolution", criterion_1),
        ("anticommutation identity", criterion_2),
        ("D^2 = -Laplacian", criterion_3),
        ("dimension oracles", criterion_4),
        ("addition theorem", criterion_5),
        ("reproducing property", criterion_6),
        ("Cauchy theorem and integral formula", criterion_7),
        ("Sobolev estimates", criterion_8),
        ("projection consistency", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "{} criterion {:2} {name}: {} [{:.1}s]",
            if result.pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
