//! Exact-arithmetic toolkit for the symmetrizer algebra of a projective
//! hypersurface.
//!
//! Given a homogeneous polynomial `P` of degree `d >= 3` in `N >= 3`
//! variables, the crate computes the algebra `g_F` of endomorphisms `A`
//! for which `H_P * A` is a symmetric polynomial matrix (`H_P` the Hessian
//! of `P`), splits it into nilpotent and semisimple parts, enumerates the
//! rank-one nilpotent classes (whose images are the quasi-vertices of the
//! hypersurface), and analyses multiplicity and Hessian rank at rational
//! points. Everything runs over arbitrary-precision rationals; there is no
//! floating-point fallback anywhere, because the quantities of interest are
//! exact ranks and dimensions.
//!
//! The polynomial and matrix kernels ([`poly::Poly`], [`linalg::Mat`]) are
//! generic over a [`scalar::Scalar`]; the concrete aliases below pin the
//! exact rational instantiation used by the rest of the crate.

pub mod algebra;
pub mod binform;
pub mod fixture;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod singular;

/// Exact rational scalar: arbitrary-precision, always reduced.
pub type Q = num_rational::BigRational;

/// Sparse multivariate polynomial over [`Q`].
pub type MPoly = poly::Poly<Q>;

/// Dense matrix over [`Q`].
pub type QMatrix = linalg::Mat<Q>;

/// Subspace of `Q^n` with a canonical (reduced row echelon) basis.
pub type QSubspace = linalg::Subspace<Q>;

use num_bigint::BigInt;

/// Rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}
