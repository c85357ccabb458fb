//! Real Clifford algebra `Cl_N` with negative-definite signature.
//!
//! Generators satisfy `e_i e_i = -1` and `e_i e_j = -e_j e_i` for `i != j`, so
//! every vector squares to minus its squared Euclidean length. A multivector
//! stores all `2^N` blade coefficients densely; blade index `A` is a bitmask
//! where bit `i` marks the presence of generator `e_{i+1}`. Bits are read in
//! increasing generator order, so `0b011` is `e1 e2`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 8;

/// Sign of `e_A e_B`. The result blade is always `A ^ B`.
///
/// One factor of `-1` per transposition needed to sort the generators, and
/// one per generator that appears in both blades (`e_i e_i = -1`).
pub fn blade_product_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Number of generators in a blade.
pub fn blade_grade(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Human-readable blade label such as `1`, `e2` or `e1e3`.
pub fn blade_label(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut bits = mask;
    let mut i = 0;
    while bits != 0 {
        if bits & 1 == 1 {
            out.push_str(&format!("e{}", i + 1));
        }
        bits >>= 1;
        i += 1;
    }
    out
}

static SIGN_TABLES: [OnceLock<Vec<f64>>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];

/// Full `2^N x 2^N` table of blade product signs, built once per dimension.
fn sign_table(dim: usize) -> &'static [f64] {
    SIGN_TABLES[dim].get_or_init(|| {
        let size = 1usize << dim;
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                table.push(blade_product_sign(a, b));
            }
        }
        table
    })
}

/// Sign of the Clifford conjugate of a grade-`k` blade: `(-1)^{k(k+1)/2}`.
fn conjugation_sign(mask: usize) -> f64 {
    let k = blade_grade(mask);
    if (k * (k + 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Element of `Cl_N`, stored as `2^N` dense real coefficients.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "ambient dimension {dim} exceeds {MAX_DIM}");
        Self {
            dim,
            coeffs: vec![0.0; 1 << dim],
        }
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        let mut mv = Self::zero(dim);
        mv.coeffs[0] = value;
        mv
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    /// `value * e_A` for the blade with bitmask `mask`.
    pub fn blade(dim: usize, mask: usize, value: f64) -> Self {
        let mut mv = Self::zero(dim);
        assert!(mask < mv.coeffs.len(), "blade mask {mask:#b} out of range");
        mv.coeffs[mask] = value;
        mv
    }

    /// The generator `e_{index+1}` (zero-based index).
    pub fn generator(dim: usize, index: usize) -> Self {
        assert!(index < dim, "generator index {index} out of range");
        Self::blade(dim, 1 << index, 1.0)
    }

    /// The vector `sum_i x_i e_{i+1}`.
    pub fn vector(components: &[f64]) -> Self {
        let mut mv = Self::zero(components.len());
        for (i, &x) in components.iter().enumerate() {
            mv.coeffs[1 << i] = x;
        }
        mv
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if coeffs.len() != 1 << dim {
            return Err(Error::DimensionMismatch {
                expected: 1 << dim,
                actual: coeffs.len(),
            });
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite multivector coefficient {bad}"
            )));
        }
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &Self) -> Self {
        let size = self.coeffs.len();
        let table = sign_table(self.dim);
        let mut out = vec![0.0; size];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            let row = &table[a * size..(a + 1) * size];
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb != 0.0 {
                    out[a ^ b] += row[b] * ca * cb;
                }
            }
        }
        Self {
            dim: self.dim,
            coeffs: out,
        }
    }

    /// `x * self` for the vector `x = sum_i x_i e_{i+1}`.
    pub fn left_vector_mul(&self, x: &[f64]) -> Self {
        assert_eq!(x.len(), self.dim, "vector length must match ambient dimension");
        let size = self.coeffs.len();
        let table = sign_table(self.dim);
        let mut out = vec![0.0; size];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            let a = 1 << i;
            let row = &table[a * size..(a + 1) * size];
            for (b, &cb) in self.coeffs.iter().enumerate() {
                if cb != 0.0 {
                    out[a ^ b] += row[b] * xi * cb;
                }
            }
        }
        Self {
            dim: self.dim,
            coeffs: out,
        }
    }

    /// Clifford conjugation: the anti-automorphism with `conj(e_i) = -e_i`.
    pub fn conjugate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, &c)| conjugation_sign(mask) * c)
            .collect();
        Self {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn grade_project(&self, grade: usize) -> Result<Self> {
        if grade > self.dim {
            return Err(Error::GradeOutOfRange {
                grade,
                dim: self.dim,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, &c)| if blade_grade(mask) == grade { c } else { 0.0 })
            .collect();
        Ok(Self {
            dim: self.dim,
            coeffs,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Blade-componentwise dot product `sum_A a_A b_A`.
    pub fn component_dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: f64) {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += factor * b;
        }
    }

    /// Frobenius distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl TryFrom<Vec<f64>> for Multivector {
    type Error = Error;

    fn try_from(coeffs: Vec<f64>) -> Result<Self> {
        let len = coeffs.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "multivector length {len} is not a power of two"
            )));
        }
        Self::from_coeffs(len.trailing_zeros() as usize, coeffs)
    }
}

impl From<Multivector> for Vec<f64> {
    fn from(mv: Multivector) -> Self {
        mv.coeffs
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector<{}>({})", self.dim, self)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}", blade_label(mask))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Mul for &Multivector {
    type Output = Multivector;

    /// Panics on mismatched ambient dimensions; use
    /// [`Multivector::geometric_product`] for a fallible product.
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs)
            .expect("geometric product of multivectors with different dimensions")
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        self.add_scaled(rhs, 1.0);
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        self.add_scaled(rhs, -1.0);
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}
