//! The conformal Dirac operator on the unit sphere `S^n`, acting on
//! functions with values in the Clifford algebra `Cl_{n+1}`.
//!
//! The crate is organized bottom-up:
//!
//! - [`clifford`]: dense multivectors and the geometric product.
//! - [`polynomials`]: Clifford-valued polynomials with the Dirac, Euler,
//!   Gamma and Laplace operators.
//! - [`monogenics`]: nullspace bases of harmonics and monogenics and their
//!   orthonormalization on the sphere.
//! - [`sphere`]: quadrature, `L^2` pairings and Fourier coefficients.
//! - [`specfun`]: Gegenbauer polynomials, addition-theorem and reproducing
//!   kernels, the Cauchy kernel.
//! - [`operators`]: the conformal Dirac operator, its spectrum, the
//!   spinorial Laplacian, projections, Sobolev norms and the checks built
//!   on them.
//! - [`cli`]: command-line driver, reports and the basis cache.

pub mod cli;
pub mod clifford;
pub mod error;
pub mod linalg;
pub mod monogenics;
pub mod operators;
pub mod polynomials;
pub mod random;
pub mod specfun;
pub mod sphere;

pub use clifford::Multivector;
pub use error::{Error, Result};
pub use monogenics::{BasisSet, SpaceTag};
pub use polynomials::MVPolynomial;
pub use sphere::{BasisFamily, QuadratureRule, SpectralCoeffs};
