//! Sparse multivariate polynomial arithmetic over an exact scalar.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomial
//! order, so every polynomial has one canonical form and serialization is
//! reproducible. No zero coefficient is ever stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Two operands live in polynomial rings with different variable counts.
    NvarsMismatch { left: usize, right: usize },
    /// Variable index out of range.
    IndexOutOfRange { index: usize, nvars: usize },
    /// Evaluation point has the wrong length.
    PointLengthMismatch { expected: usize, got: usize },
    /// Substitution matrix has the wrong column count.
    SubstitutionShape { cols: usize, nvars: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NvarsMismatch { left, right } => {
                write!(f, "variable-count mismatch: {left} vs {right}")
            }
            PolyError::IndexOutOfRange { index, nvars } => {
                write!(
                    f,
                    "variable index {index} out of range for {nvars} variables"
                )
            }
            PolyError::PointLengthMismatch { expected, got } => {
                write!(f, "point length {got} does not match {expected} variables")
            }
            PolyError::SubstitutionShape { cols, nvars } => {
                write!(
                    f,
                    "substitution matrix has {cols} columns, polynomial has {nvars} variables"
                )
            }
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector of fixed length, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// Constant monomial (all exponents zero).
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    /// `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given total degree in `nvars` variables,
/// in ascending graded-lex order. This fixes the coordinate system used for
/// coefficient matrices (symmetrizer system, Jacobian span, Hessian rank).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, degree, nvars);
    out.sort();
    return out;

    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, left: u32, nvars: usize) {
        if pos == nvars - 1 {
            current[pos] = left;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            fill(out, current, pos + 1, left - e, nvars);
        }
        current[pos] = 0;
    }
}

/// Sparse polynomial in `nvars` variables over `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<T: Scalar> {
    nvars: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Result<Self, PolyError> {
        if i >= nvars {
            return Err(PolyError::IndexOutOfRange { index: i, nvars });
        }
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), T::one());
        Ok(p)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length must equal nvars");
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` iff nonzero and every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        if degrees.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::constant(self.nvars, T::one());
        for _ in 0..e {
            out = out.try_mul(self).expect("same ring");
        }
        out
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] = e - 1;
            out.add_term(Monomial::new(exps), c.clone() * T::from_count(e as usize));
        }
        Ok(out)
    }

    /// Exact value at a point.
    pub fn evaluate(&self, point: &[T]) -> Result<T, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            acc = acc + v;
        }
        Ok(acc)
    }

    /// Composes with the linear map sending old variable `x_i` to
    /// `sum_r m[(r, i)] * y_r`. The rows of `m` are the images of the new
    /// basis vectors in the old coordinates, so restricting to a subspace
    /// means passing its basis vectors as rows. The result lives in
    /// `m.rows()` variables.
    pub fn substitute_linear(&self, m: &Mat<T>) -> Result<Self, PolyError> {
        if m.cols() != self.nvars {
            return Err(PolyError::SubstitutionShape {
                cols: m.cols(),
                nvars: self.nvars,
            });
        }
        let new_nvars = m.rows();
        // Linear form each old variable maps to.
        let images: Vec<Poly<T>> = (0..self.nvars)
            .map(|i| {
                let mut form = Poly::zero(new_nvars);
                for r in 0..new_nvars {
                    form.add_term(Monomial::var(new_nvars, r), m.at(r, i).clone());
                }
                form
            })
            .collect();
        let mut out = Poly::zero(new_nvars);
        for (mono, c) in &self.terms {
            let mut term = Poly::constant(new_nvars, c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    term = term.try_mul(&images[i].pow(e)).expect("same ring");
                }
            }
            out = out.try_add(&term).expect("same ring");
        }
        Ok(out)
    }

    /// Directional polar `sum_i xi_i * dP/dx_i`; iterating it measures
    /// multiplicity at `[xi]`.
    pub fn polar(&self, xi: &[T]) -> Result<Self, PolyError> {
        if xi.len() != self.nvars {
            return Err(PolyError::PointLengthMismatch {
                expected: self.nvars,
                got: xi.len(),
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (i, c) in xi.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.try_add(&self.partial_derivative(i)?.scale(c))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qr, MPoly, QMatrix};

    fn var(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let x0 = var(2, 0);
        let x1 = var(2, 1);
        let lhs = x0
            .try_add(&x1)
            .unwrap()
            .try_mul(&x0.try_sub(&x1).unwrap())
            .unwrap();
        let rhs = x0
            .try_mul(&x0)
            .unwrap()
            .try_sub(&x1.try_mul(&x1).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn add_zero_is_identity() {
        let p = var(3, 0).try_mul(&var(3, 2)).unwrap();
        assert_eq!(p.try_add(&MPoly::zero(3)).unwrap(), p);
    }

    #[test]
    fn sub_cancels_terms() {
        // (x0*x2^2 + x1^2*x2) - x0*x2^2 = x1^2*x2
        let n = 3;
        let x0 = var(n, 0);
        let x1 = var(n, 1);
        let x2 = var(n, 2);
        let a = x0
            .try_mul(&x2.pow(2))
            .unwrap()
            .try_add(&x1.pow(2).try_mul(&x2).unwrap())
            .unwrap();
        let b = x0.try_mul(&x2.pow(2)).unwrap();
        assert_eq!(a.try_sub(&b).unwrap(), x1.pow(2).try_mul(&x2).unwrap());
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let a = var(2, 0);
        let b = var(3, 0);
        assert_eq!(
            a.try_add(&b).unwrap_err(),
            PolyError::NvarsMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn power_rule() {
        // d/dx2 (x0*x2^2) = 2*x0*x2
        let p = var(3, 0).try_mul(&var(3, 2).pow(2)).unwrap();
        let d = p.partial_derivative(2).unwrap();
        let expected = var(3, 0).try_mul(&var(3, 2)).unwrap().scale(&q(2));
        assert_eq!(d, expected);

        // d/dx3 (x3^3) = 3*x3^2
        let c = var(4, 3).pow(3);
        assert_eq!(
            c.partial_derivative(3).unwrap(),
            var(4, 3).pow(2).scale(&q(3))
        );
    }

    #[test]
    fn derivative_of_absent_variable_is_zero() {
        let p = var(3, 0).try_mul(&var(3, 2).pow(2)).unwrap();
        assert!(p.partial_derivative(1).unwrap().is_zero());
        assert_eq!(
            p.partial_derivative(7).unwrap_err(),
            PolyError::IndexOutOfRange { index: 7, nvars: 3 }
        );
    }

    #[test]
    fn homogeneous_derivative_drops_degree_by_one() {
        let p = var(4, 0).try_mul(&var(4, 2).pow(2)).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(3));
        assert_eq!(
            p.partial_derivative(2).unwrap().homogeneous_degree(),
            Some(2)
        );
    }

    #[test]
    fn evaluation_examples() {
        // E6 cubic surface vanishes at its singular point.
        let n = 4;
        let p = var(n, 0)
            .try_mul(&var(n, 2).pow(2))
            .unwrap()
            .try_add(&var(n, 1).pow(2).try_mul(&var(n, 2)).unwrap())
            .unwrap()
            .try_add(&var(n, 3).pow(3))
            .unwrap();
        assert_eq!(p.evaluate(&[q(1), q(0), q(0), q(0)]).unwrap(), q(0));

        // Fermat cubic at (1,1,1,1).
        let fermat: MPoly = (0..4)
            .map(|i| var(4, i).pow(3))
            .fold(MPoly::zero(4), |acc, t| acc.try_add(&t).unwrap());
        assert_eq!(fermat.evaluate(&[q(1), q(1), q(1), q(1)]).unwrap(), q(4));
        assert_eq!(
            fermat.evaluate(&[q(1)]).unwrap_err(),
            PolyError::PointLengthMismatch {
                expected: 4,
                got: 1
            }
        );
    }

    #[test]
    fn conic_threefold_vanishes_on_quasi_vertex_candidate() {
        // x0*x3^2 + x1*x4^2 + x2*(x3+x4)^2 at (2,2,-1,0,0)
        let n = 5;
        let s = var(n, 3).try_add(&var(n, 4)).unwrap();
        let p = var(n, 0)
            .try_mul(&var(n, 3).pow(2))
            .unwrap()
            .try_add(&var(n, 1).try_mul(&var(n, 4).pow(2)).unwrap())
            .unwrap()
            .try_add(&var(n, 2).try_mul(&s.pow(2)).unwrap())
            .unwrap();
        assert_eq!(p.evaluate(&[q(2), q(2), q(-1), q(0), q(0)]).unwrap(), q(0));
    }

    #[test]
    fn substitute_swap() {
        let p = var(2, 0).pow(2);
        let m = QMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert_eq!(p.substitute_linear(&m).unwrap(), var(2, 1).pow(2));
    }

    #[test]
    fn substitute_restricts_to_hyperplane() {
        // Drop x2 from the E6 surface: x0*x2^2 + x1^2*x2 + x3^3 -> y2^3
        let n = 4;
        let p = var(n, 0)
            .try_mul(&var(n, 2).pow(2))
            .unwrap()
            .try_add(&var(n, 1).pow(2).try_mul(&var(n, 2)).unwrap())
            .unwrap()
            .try_add(&var(n, 3).pow(3))
            .unwrap();
        let m = QMatrix::from_rows(vec![
            vec![q(1), q(0), q(0), q(0)],
            vec![q(0), q(1), q(0), q(0)],
            vec![q(0), q(0), q(0), q(1)],
        ]);
        assert_eq!(p.substitute_linear(&m).unwrap(), var(3, 2).pow(3));
    }

    #[test]
    fn substitute_pencil_shear() {
        // x1 -> t*x0 + x1 on x0*L0^2 + x1*L1^2 with L0 = x2, L1 = x3,
        // for a few rational t.
        let n = 4;
        let p = var(n, 0)
            .try_mul(&var(n, 2).pow(2))
            .unwrap()
            .try_add(&var(n, 1).try_mul(&var(n, 3).pow(2)).unwrap())
            .unwrap();
        for t in [q(2), qr(-1, 3), q(5)] {
            let mut m = QMatrix::identity(n);
            m.set(0, 1, t.clone());
            let got = p.substitute_linear(&m).unwrap();
            // y0*(y2^2 + t*y3^2) + y1*y3^2
            let expected = var(n, 0)
                .try_mul(
                    &var(n, 2)
                        .pow(2)
                        .try_add(&var(n, 3).pow(2).scale(&t))
                        .unwrap(),
                )
                .unwrap()
                .try_add(&var(n, 1).try_mul(&var(n, 3).pow(2)).unwrap())
                .unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn substitution_shape_mismatch_is_an_error() {
        let p = var(3, 0);
        let m = QMatrix::identity(2);
        assert_eq!(
            p.substitute_linear(&m).unwrap_err(),
            PolyError::SubstitutionShape { cols: 2, nvars: 3 }
        );
    }

    #[test]
    fn monomial_enumeration_is_graded_lex_sorted() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        for w in ms.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(ms.contains(&Monomial::new(vec![2, 0, 0])));
    }
}
