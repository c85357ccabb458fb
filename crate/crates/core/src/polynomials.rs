//! Polynomials in `x_1..x_N` with Clifford-valued coefficients, and the
//! first-order operators that act on them: the Dirac operator `D`, the Euler
//! operator `E`, the Gamma (Dirac-Beltrami) operator and the Laplacian.
//!
//! A function on the sphere is represented as the restriction of a
//! polynomial; none of the operators here know about the sphere.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford::Multivector;
use crate::error::{Error, Result};

/// Exponent multi-index, one entry per variable.
pub type Exponents = Vec<u32>;

/// All exponent multi-indices of total degree `degree` in `dim` variables,
/// in descending lexicographic order (`x_1^degree` first).
pub fn monomials(dim: usize, degree: usize) -> Vec<Exponents> {
    fn fill(dim: usize, remaining: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == dim {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(dim, remaining - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    fill(dim, degree as u32, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Polynomial with [`Multivector`] coefficients. Terms with an all-zero
/// coefficient are never stored.
#[derive(Clone, PartialEq)]
pub struct MVPolynomial {
    dim: usize,
    terms: BTreeMap<Exponents, Multivector>,
}

impl MVPolynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: Multivector) -> Self {
        let dim = value.dim();
        Self::monomial(vec![0; dim], value)
    }

    /// `x^exps * value`.
    pub fn monomial(exps: Exponents, value: Multivector) -> Self {
        let dim = value.dim();
        assert_eq!(exps.len(), dim, "exponent length must match ambient dimension");
        let mut p = Self::zero(dim);
        p.add_term(exps, &value, 1.0);
        p
    }

    /// The real scalar variable `x_{index+1}`.
    pub fn variable(dim: usize, index: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[index] = 1;
        Self::monomial(exps, Multivector::one(dim))
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponents, Multivector)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (exps, mv) in terms {
            if exps.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: exps.len(),
                });
            }
            if mv.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: mv.dim(),
                });
            }
            p.add_term(exps, &mv, 1.0);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Multivector)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&Multivector> {
        self.terms.get(exps)
    }

    /// Adds `factor * value` to the coefficient of `x^exps`.
    pub fn add_term(&mut self, exps: Exponents, value: &Multivector, factor: f64) {
        if factor == 0.0 || value.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                let scaled = value.scale(factor);
                if !scaled.is_zero() {
                    slot.insert(scaled);
                }
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_scaled(value, factor);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: f64) {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        for (exps, mv) in &other.terms {
            self.add_term(exps.clone(), mv, factor);
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, factor);
        out
    }

    /// Total degree of every term if they all agree; `Some(0)` for zero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>() as usize);
        let first = match degrees.next() {
            Some(d) => d,
            None => return Some(0),
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// Highest total degree of any term; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> Result<Multivector> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation without the length check; panics on a short slice.
    pub fn eval_unchecked(&self, x: &[f64]) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        let max_deg = self.degree();
        let powers: Vec<Vec<f64>> = x[..self.dim]
            .iter()
            .map(|&xi| {
                let mut pw = Vec::with_capacity(max_deg + 1);
                let mut acc = 1.0;
                for _ in 0..=max_deg {
                    pw.push(acc);
                    acc *= xi;
                }
                pw
            })
            .collect();
        for (exps, mv) in &self.terms {
            let mono: f64 = exps
                .iter()
                .enumerate()
                .map(|(i, &e)| powers[i][e as usize])
                .product();
            if mono != 0.0 {
                out.add_scaled(mv, mono);
            }
        }
        out
    }

    /// Partial derivative with respect to `x_{index+1}`.
    pub fn partial(&self, index: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (exps, mv) in &self.terms {
            let e = exps[index];
            if e == 0 {
                continue;
            }
            let mut lowered = exps.clone();
            lowered[index] -= 1;
            out.add_term(lowered, mv, e as f64);
        }
        out
    }

    /// `x_{index+1} * self`.
    pub fn mul_variable(&self, index: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (exps, mv) in &self.terms {
            let mut raised = exps.clone();
            raised[index] += 1;
            out.add_term(raised, mv, 1.0);
        }
        out
    }

    /// `c * self`, with `c` multiplying every coefficient from the left.
    pub fn left_mul(&self, c: &Multivector) -> Self {
        self.map_coeffs(|mv| c * mv)
    }

    /// `self * c`, with `c` multiplying every coefficient from the right.
    pub fn right_mul(&self, c: &Multivector) -> Self {
        self.map_coeffs(|mv| mv * c)
    }

    /// Coefficientwise Clifford conjugation.
    pub fn conjugate(&self) -> Self {
        self.map_coeffs(Multivector::conjugate)
    }

    fn map_coeffs(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
        let mut out = Self::zero(self.dim);
        for (exps, mv) in &self.terms {
            out.add_term(exps.clone(), &f(mv), 1.0);
        }
        out
    }

    /// Left Dirac operator `D p = sum_i e_i (d_i p)`.
    pub fn dirac_apply(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            let e_i = Multivector::generator(self.dim, i);
            out.add_scaled(&self.partial(i).left_mul(&e_i), 1.0);
        }
        out
    }

    /// Right Dirac operator `p D = sum_i (d_i p) e_i`.
    pub fn dirac_right_apply(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            let e_i = Multivector::generator(self.dim, i);
            out.add_scaled(&self.partial(i).right_mul(&e_i), 1.0);
        }
        out
    }

    /// `sum_i d_i^2 p`, computed directly from second derivatives.
    pub fn laplacian_apply(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (exps, mv) in &self.terms {
            for i in 0..self.dim {
                let e = exps[i];
                if e < 2 {
                    continue;
                }
                let mut lowered = exps.clone();
                lowered[i] -= 2;
                out.add_term(lowered, mv, (e * (e - 1)) as f64);
            }
        }
        out
    }

    /// Euler operator `E p = sum_i x_i d_i p`; scales degree-`m` terms by `m`.
    pub fn euler_apply(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (exps, mv) in &self.terms {
            let degree: u32 = exps.iter().sum();
            out.add_term(exps.clone(), mv, degree as f64);
        }
        out
    }

    /// Left multiplication by the vector polynomial `x = sum_i x_i e_i`.
    pub fn vector_multiply(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            let e_i = Multivector::generator(self.dim, i);
            out.add_scaled(&self.left_mul(&e_i).mul_variable(i), 1.0);
        }
        out
    }

    /// Gamma operator from the polar split of the Dirac operator,
    /// `Gamma = -x D - E`.
    pub fn gamma_apply(&self) -> Self {
        let mut out = self.dirac_apply().vector_multiply().scale(-1.0);
        out.add_scaled(&self.euler_apply(), -1.0);
        out
    }

    /// Largest absolute coefficient over all terms and blades.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|mv| mv.coeffs().iter().map(|c| c.abs()))
            .fold(0.0, f64::max)
    }

    /// Largest absolute coefficient of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut diff = self.clone();
        diff.add_scaled(other, -1.0);
        diff.max_abs_coeff()
    }

    /// Drops blade coefficients with magnitude at most `tol` and any term
    /// left empty.
    pub fn prune(&self, tol: f64) -> Self {
        let mut out = Self::zero(self.dim);
        for (exps, mv) in &self.terms {
            let mut kept = mv.clone();
            for c in kept.coeffs_mut() {
                if c.abs() <= tol {
                    *c = 0.0;
                }
            }
            out.add_term(exps.clone(), &kept, 1.0);
        }
        out
    }

    pub fn to_record(&self) -> PolynomialRecord {
        PolynomialRecord {
            terms: self
                .terms
                .iter()
                .map(|(exps, mv)| TermRecord {
                    exps: exps.clone(),
                    mv: mv.coeffs().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_record(dim: usize, record: &PolynomialRecord) -> Result<Self> {
        let terms = record
            .terms
            .iter()
            .map(|t| Ok((t.exps.clone(), Multivector::from_coeffs(dim, t.mv.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(dim, terms)
    }
}

impl fmt::Debug for MVPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MVPolynomial<{}>[", self.dim)?;
        for (i, (exps, mv)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{exps:?}: ({mv})")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for MVPolynomial {
    /// Terms as `(coefficient) x1^a x2^b`, highest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exps, mv) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({mv})")?;
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " x{}", i + 1)?,
                    _ => write!(f, " x{}^{e}", i + 1)?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized form of one polynomial term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exps: Vec<u32>,
    pub mv: Vec<f64>,
}

/// Serialized form of a polynomial: its nonzero terms in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub terms: Vec<TermRecord>,
}
