//! The symmetrizer algebra of a homogeneous form.
//!
//! For a homogeneous `P` of degree `d >= 3` in `N >= 3` variables, an
//! endomorphism `A` is a symmetrizer when `H_P * A` is a symmetric matrix of
//! polynomials (`H_P` the Hessian). The solution space `g_F` of that linear
//! condition is computed exactly as a nullspace; when the hypersurface is not
//! a cone, `g_F` is a commutative unital matrix algebra, its nilpotent part
//! is the radical of the trace form, and the rank-one nilpotents correspond
//! one-to-one with the quasi-vertices of the hypersurface.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binform::{binform_gcd, rational_roots, BinForm};
use crate::linalg::{nilpotency_index, trace_gram, LinalgError, Subspace};
use crate::poly::{monomials_of_degree, Monomial, PolyError};
use crate::rng::DetRng;
use crate::{q, MPoly, QMatrix, QSubspace, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// Input polynomial is zero or not homogeneous.
    NotHomogeneous,
    /// Degree below the standing assumption `d >= 3`.
    DegreeTooSmall {
        degree: u32,
    },
    /// Fewer than 3 variables.
    TooFewVariables {
        nvars: usize,
    },
    /// Matrix size does not match the variable count.
    SizeMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    /// The matrix fails the symmetrizer condition.
    NotASymmetrizer,
    /// Radical data requested for a cone.
    ConeInput,
    /// A trace-radical element failed its nilpotency certificate; this
    /// signals a violated precondition (the input was a cone or degenerate).
    CertificationFailure,
    Linalg(LinalgError),
    Poly(PolyError),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotHomogeneous => write!(f, "polynomial is zero or not homogeneous"),
            AlgebraError::DegreeTooSmall { degree } => {
                write!(f, "degree {degree} is below the required minimum 3")
            }
            AlgebraError::TooFewVariables { nvars } => {
                write!(f, "{nvars} variables, need at least 3")
            }
            AlgebraError::SizeMismatch {
                expected,
                rows,
                cols,
            } => {
                write!(f, "matrix is {rows}x{cols}, expected {expected}x{expected}")
            }
            AlgebraError::NotASymmetrizer => write!(f, "matrix is not a symmetrizer"),
            AlgebraError::ConeInput => write!(f, "hypersurface is a cone: radical unavailable"),
            AlgebraError::CertificationFailure => {
                write!(f, "trace-radical element failed nilpotency certification")
            }
            AlgebraError::Linalg(e) => write!(f, "{e}"),
            AlgebraError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

impl From<LinalgError> for AlgebraError {
    fn from(e: LinalgError) -> Self {
        AlgebraError::Linalg(e)
    }
}

impl From<PolyError> for AlgebraError {
    fn from(e: PolyError) -> Self {
        AlgebraError::Poly(e)
    }
}

/// Checks the standing assumptions and returns `(N, d)`.
pub fn validate_form(p: &MPoly) -> Result<(usize, u32), AlgebraError> {
    let degree = p.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?;
    if degree < 3 {
        return Err(AlgebraError::DegreeTooSmall { degree });
    }
    if p.nvars() < 3 {
        return Err(AlgebraError::TooFewVariables { nvars: p.nvars() });
    }
    Ok((p.nvars(), degree))
}

fn check_square(p: &MPoly, a: &QMatrix) -> Result<usize, AlgebraError> {
    let n = p.nvars();
    if a.rows() != n || a.cols() != n {
        return Err(AlgebraError::SizeMismatch {
            expected: n,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(n)
}

/// Square symmetric matrix of polynomials; the Hessian of its source form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    degree: u32,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Degree of the source form (entries are homogeneous of `degree - 2`).
    pub fn source_degree(&self) -> u32 {
        self.degree
    }

    pub fn at(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.n + j]
    }

    /// Row vector `xi^t * H`: component `j` is `sum_i xi_i * H[i][j]`.
    pub fn left_mul_vector(&self, xi: &[Q]) -> Vec<MPoly> {
        assert_eq!(xi.len(), self.n);
        (0..self.n)
            .map(|j| {
                let mut acc = MPoly::zero(self.n);
                for (i, c) in xi.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.try_add(&self.at(i, j).scale(c)).expect("same ring");
                    }
                }
                acc
            })
            .collect()
    }

    /// Product `H * A`, row-major.
    pub fn right_mul_matrix(&self, a: &QMatrix) -> Vec<MPoly> {
        assert_eq!(a.rows(), self.n);
        let mut out = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..a.cols() {
                let mut acc = MPoly::zero(self.n);
                for k in 0..self.n {
                    let c = a.at(k, j);
                    if !c.is_zero() {
                        acc = acc.try_add(&self.at(i, k).scale(c)).expect("same ring");
                    }
                }
                out.push(acc);
            }
        }
        out
    }
}

/// Hessian matrix `H[i][j] = d^2 P / dx_i dx_j`, exact and symmetric.
pub fn hessian_matrix(p: &MPoly) -> Result<PolyMatrix, AlgebraError> {
    let (n, degree) = validate_form(p)?;
    let firsts: Vec<MPoly> = (0..n)
        .map(|i| p.partial_derivative(i))
        .collect::<Result<_, _>>()?;
    let mut entries = vec![MPoly::zero(n); n * n];
    for i in 0..n {
        for j in i..n {
            let second = firsts[i].partial_derivative(j)?;
            entries[i * n + j] = second.clone();
            entries[j * n + i] = second;
        }
    }
    Ok(PolyMatrix { n, degree, entries })
}

/// Coefficient matrix of a list of polynomials in fixed monomial
/// coordinates: rows are monomials, columns are the polynomials.
pub fn coeff_matrix(polys: &[MPoly], monos: &[Monomial]) -> QMatrix {
    QMatrix::from_fn(monos.len(), polys.len(), |m, j| polys[j].coeff(&monos[m]))
}

/// Rank and canonical row space of the partial derivatives of `P`, in the
/// degree-`(d-1)` monomial coordinate space. The rank equals the variable
/// count exactly when the hypersurface is not a cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianSpan {
    pub rank: usize,
    pub row_space: QSubspace,
}

pub fn jacobian_span(p: &MPoly) -> Result<JacobianSpan, AlgebraError> {
    let (n, degree) = validate_form(p)?;
    let monos = monomials_of_degree(n, degree - 1);
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let partial = p.partial_derivative(i)?;
            Ok(monos.iter().map(|m| partial.coeff(m)).collect())
        })
        .collect::<Result<_, AlgebraError>>()?;
    let row_space = Subspace::from_spanning(monos.len(), &rows);
    Ok(JacobianSpan {
        rank: row_space.dim(),
        row_space,
    })
}

/// Nilpotent part of a symmetrizer algebra.
#[derive(Debug, Clone)]
pub struct RadicalPart {
    /// Canonical basis of the nilpotent ideal; every element certified
    /// nilpotent.
    pub basis: Vec<QMatrix>,
    /// Dimension of the semisimple part modulo scalars:
    /// `dim g_F - dim g_F^+ - 1`.
    pub semisimple_dim: usize,
}

/// Basis of the symmetrizer algebra `g_F`, with its nilpotent/semisimple
/// split when the hypersurface is not a cone.
#[derive(Debug, Clone)]
pub struct SymmetrizerAlgebra {
    nvars: usize,
    degree: u32,
    basis: Vec<QMatrix>,
    span: QSubspace,
    contains_identity: bool,
    radical: Option<RadicalPart>,
}

impl SymmetrizerAlgebra {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QMatrix] {
        &self.basis
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// `None` exactly when the input was a cone.
    pub fn radical(&self) -> Option<&RadicalPart> {
        self.radical.as_ref()
    }

    pub fn radical_dim(&self) -> Option<usize> {
        self.radical.as_ref().map(|r| r.basis.len())
    }

    /// Membership in `g_F`.
    pub fn contains(&self, a: &QMatrix) -> bool {
        a.rows() == self.nvars && a.cols() == self.nvars && self.span.contains(&a.flatten())
    }

    /// Membership in the nilpotent part.
    pub fn radical_contains(&self, a: &QMatrix) -> Option<bool> {
        let rad = self.radical.as_ref()?;
        let span = matrix_span(self.nvars, &rad.basis);
        Some(span.contains(&a.flatten()))
    }

    /// Largest rank among a deterministic family of radical probes: basis
    /// elements, their powers, and seeded random combinations. When the
    /// radical dimension is at most 2 this hits the maximum because some
    /// probe is a generic element of the pencil.
    pub fn max_nilpotent_rank(&self, rng: &mut DetRng) -> Option<usize> {
        let rad = self.radical.as_ref()?;
        let mut best = 0;
        for b in &rad.basis {
            let mut p = b.clone();
            loop {
                best = best.max(p.rank());
                p = p.try_mul(b).expect("square");
                if p.is_zero() {
                    break;
                }
            }
        }
        for _ in 0..16 {
            if let Some(m) = random_combination(&rad.basis, rng) {
                best = best.max(m.rank());
            }
        }
        Some(best)
    }
}

/// Span of a family of same-size matrices, flattened row-major.
pub fn matrix_span(n: usize, mats: &[QMatrix]) -> QSubspace {
    let flats: Vec<Vec<Q>> = mats.iter().map(QMatrix::flatten).collect();
    Subspace::from_spanning(n * n, &flats)
}

/// Seeded random element of the span; `None` when the draw collapses to 0.
pub fn random_combination(basis: &[QMatrix], rng: &mut DetRng) -> Option<QMatrix> {
    let first = basis.first()?;
    let mut acc = QMatrix::zero(first.rows(), first.cols());
    for b in basis {
        acc = acc
            .try_add(&b.scale(&rng.rational(4, 2)))
            .expect("same shape");
    }
    if acc.is_zero() {
        None
    } else {
        Some(acc)
    }
}

/// Solves the linear system `H_P * A` symmetric for `A` and splits off the
/// nilpotent radical via the trace form.
///
/// Unknowns are the entries of `A` in row-major order; equations are indexed
/// by pairs `i < j` and degree-`(d-2)` monomials in graded-lex order, so the
/// canonical nullspace basis is reproducible. The radical is the nullspace
/// of the trace Gram form on the computed basis (valid because `g_F` is a
/// commutative associative unital algebra in characteristic zero when the
/// hypersurface is not a cone); every radical basis element is then
/// certified nilpotent, and a certification failure is a hard error.
pub fn solve_symmetrizer_algebra(p: &MPoly) -> Result<SymmetrizerAlgebra, AlgebraError> {
    let (n, degree) = validate_form(p)?;
    let hessian = hessian_matrix(p)?;
    let monos = monomials_of_degree(n, degree - 2);
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(n * (n - 1) / 2 * monos.len());
    for i in 0..n {
        for j in (i + 1)..n {
            for mono in &monos {
                // Coefficient of `mono` in (H A)_{ij} - (H A)_{ji}.
                let mut row = vec![q(0); n * n];
                for k in 0..n {
                    row[k * n + j] += hessian.at(i, k).coeff(mono);
                    row[k * n + i] -= hessian.at(j, k).coeff(mono);
                }
                rows.push(row);
            }
        }
    }
    let system = QMatrix::from_rows(rows);
    let span = Subspace::from_spanning(n * n, &system.nullspace());
    let basis: Vec<QMatrix> = span
        .basis()
        .iter()
        .map(|v| QMatrix::from_flat(n, n, v.clone()))
        .collect();
    let contains_identity = span.contains(&QMatrix::identity(n).flatten());

    let is_cone = jacobian_span(p)?.rank < n;
    let radical = if is_cone {
        None
    } else {
        let gram = trace_gram(&basis)?;
        let coeff_vectors = gram.nullspace();
        let mut raw = Vec::new();
        for coeffs in &coeff_vectors {
            let mut m = QMatrix::zero(n, n);
            for (c, b) in coeffs.iter().zip(&basis) {
                if !c.is_zero() {
                    m = m.try_add(&b.scale(c))?;
                }
            }
            raw.push(m.flatten());
        }
        let rad_span = Subspace::from_spanning(n * n, &raw);
        let rad_basis: Vec<QMatrix> = rad_span
            .basis()
            .iter()
            .map(|v| QMatrix::from_flat(n, n, v.clone()))
            .collect();
        for r in &rad_basis {
            if nilpotency_index(r)?.is_none() {
                return Err(AlgebraError::CertificationFailure);
            }
        }
        let semisimple_dim = basis.len() - rad_basis.len() - 1;
        Some(RadicalPart {
            basis: rad_basis,
            semisimple_dim,
        })
    };

    Ok(SymmetrizerAlgebra {
        nvars: n,
        degree,
        basis,
        span,
        contains_identity,
        radical,
    })
}

/// The defining Hessian test: is `H_P * A` a symmetric polynomial matrix?
pub fn is_symmetrizer_hessian(p: &MPoly, a: &QMatrix) -> Result<bool, AlgebraError> {
    let n = check_square(p, a)?;
    let hessian = hessian_matrix(p)?;
    let product = hessian.right_mul_matrix(a);
    for i in 0..n {
        for j in (i + 1)..n {
            if product[i * n + j] != product[j * n + i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Coefficient of the symmetric tensor `F` on the index multiset with
/// exponent vector `alpha`: the polynomial coefficient rescaled by
/// `alpha! / d!`.
fn symmetric_tensor_coeff(p: &MPoly, alpha: &Monomial, degree: u32) -> Q {
    let c = p.coeff(alpha);
    if c.is_zero() {
        return c;
    }
    let mut num = BigInt::one();
    for &e in alpha.exps() {
        num *= factorial(e);
    }
    c * Q::new(num, factorial(degree))
}

/// Independent symmetrizer test straight from the tensor definition.
///
/// Writes down the two d-linear forms `F(A v1, v2, ...)` and
/// `F(v1, A v2, ...)` on basis tuples and compares them coefficient by
/// coefficient; equality in the first two slots forces equality in all slots
/// because `F` is symmetric. No Hessian and no linear system is involved, so
/// this is a genuinely independent oracle for the solver.
pub fn is_symmetrizer_oracle(p: &MPoly, a: &QMatrix) -> Result<bool, AlgebraError> {
    let n = check_square(p, a)?;
    let degree = p.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?;
    if degree < 2 {
        return Err(AlgebraError::DegreeTooSmall { degree });
    }
    let rest = monomials_of_degree(n, degree - 2);
    for beta in &rest {
        for i in 0..n {
            for j in (i + 1)..n {
                // F(A e_i, e_j, beta) vs F(e_i, A e_j, beta)
                let mut lhs = q(0);
                let mut rhs = q(0);
                for k in 0..n {
                    let aki = a.at(k, i);
                    if !aki.is_zero() {
                        let mut exps = beta.exps().to_vec();
                        exps[k] += 1;
                        exps[j] += 1;
                        lhs +=
                            aki.clone() * symmetric_tensor_coeff(p, &Monomial::new(exps), degree);
                    }
                    let akj = a.at(k, j);
                    if !akj.is_zero() {
                        let mut exps = beta.exps().to_vec();
                        exps[i] += 1;
                        exps[k] += 1;
                        rhs +=
                            akj.clone() * symmetric_tensor_coeff(p, &Monomial::new(exps), degree);
                    }
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The polynomial of `F^g` for a symmetrizer `g` with matrix `a`:
/// `(1/d) * sum_i (A x)_i * dP/dx_i`. With `a` the identity this is `P`
/// itself (Euler), so no stray scalar enters.
pub fn apply_symmetrizer(p: &MPoly, a: &QMatrix) -> Result<MPoly, AlgebraError> {
    let n = check_square(p, a)?;
    let (_, degree) = validate_form(p)?;
    if !is_symmetrizer_hessian(p, a)? {
        return Err(AlgebraError::NotASymmetrizer);
    }
    let mut acc = MPoly::zero(n);
    for i in 0..n {
        let mut form = MPoly::zero(n);
        for j in 0..n {
            let c = a.at(i, j);
            if !c.is_zero() {
                form.add_term(Monomial::var(n, j), c.clone());
            }
        }
        if form.is_zero() {
            continue;
        }
        acc = acc.try_add(&form.try_mul(&p.partial_derivative(i)?)?)?;
    }
    Ok(acc.scale(&Q::new(BigInt::one(), BigInt::from(degree))))
}

/// Scales so the first nonzero entry (row-major) is 1; `None` for zero.
pub fn normalize_projective_matrix(m: &QMatrix) -> Option<QMatrix> {
    let lead = m.flatten().into_iter().find(|v| !v.is_zero())?;
    Some(m.scale(&(q(1) / lead)))
}

/// Scales a vector so its first nonzero coordinate is 1.
pub fn normalize_projective_vector(v: &[Q]) -> Option<Vec<Q>> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    Some(v.iter().map(|c| c.clone() / lead.clone()).collect())
}

/// Image generator of a rank-one matrix, projectively normalized.
fn rank_one_image(m: &QMatrix) -> Option<Vec<Q>> {
    for c in 0..m.cols() {
        let col = m.col_vec(c);
        if col.iter().any(|v| !v.is_zero()) {
            return normalize_projective_vector(&col);
        }
    }
    None
}

/// One projective class of rank-one nilpotent symmetrizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneClass {
    /// Representative, scaled so its first nonzero entry is 1.
    pub element: QMatrix,
    /// Projective image point (first nonzero coordinate 1); this is a
    /// quasi-vertex of the hypersurface.
    pub image: Vec<Q>,
}

/// Whether the enumeration is provably exhaustive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Complete,
    Heuristic,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Complete => "complete",
            Exactness::Heuristic => "heuristic",
        }
    }
}

/// Rank-one classes inside a two-dimensional pencil whose parameter is an
/// irrational quadratic: reported by count and minimal polynomial, never as
/// approximate points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrationalPencil {
    pub count: usize,
    /// `[c, b, a]` for `a u^2 + b u + c` in the pencil parameter.
    pub minpoly: [Q; 3],
    pub discriminant: Q,
}

/// Output of the rank-one enumeration.
#[derive(Debug, Clone)]
pub struct RankOneLocus {
    pub classes: Vec<RankOneClass>,
    pub exactness: Exactness,
    pub irrational: Vec<IrrationalPencil>,
}

#[allow(clippy::large_enum_variant)]
enum PencilOutcome {
    Finite(Vec<QMatrix>, Option<IrrationalPencil>),
    /// Every member of the pencil has rank at most 1 (degenerate; cannot
    /// happen inside the radical of a non-cone form).
    WholePencil,
}

/// Rank-one members of the pencil `s f1 + t f2`: the 2x2 minors are binary
/// quadratic forms in `(s, t)` and their common zero locus is the zero locus
/// of their gcd, solved exactly over the rationals.
fn pencil_rank_one(f1: &QMatrix, f2: &QMatrix) -> PencilOutcome {
    let n = f1.rows();
    let mut forms = Vec::new();
    for r1 in 0..n {
        for r2 in (r1 + 1)..n {
            for c1 in 0..f1.cols() {
                for c2 in (c1 + 1)..f1.cols() {
                    let a = f1.at(r1, c1).clone() * f1.at(r2, c2).clone()
                        - f1.at(r1, c2).clone() * f1.at(r2, c1).clone();
                    let b = f1.at(r1, c1).clone() * f2.at(r2, c2).clone()
                        + f2.at(r1, c1).clone() * f1.at(r2, c2).clone()
                        - f1.at(r1, c2).clone() * f2.at(r2, c1).clone()
                        - f2.at(r1, c2).clone() * f1.at(r2, c1).clone();
                    let c = f2.at(r1, c1).clone() * f2.at(r2, c2).clone()
                        - f2.at(r1, c2).clone() * f2.at(r2, c1).clone();
                    let form = BinForm::quadratic(a, b, c);
                    if !form.is_zero() {
                        forms.push(form);
                    }
                }
            }
        }
    }
    let Some(gcd) = binform_gcd(&forms) else {
        return PencilOutcome::WholePencil;
    };
    let report = rational_roots(&gcd);
    let mut members = Vec::new();
    for (s, t) in &report.rational {
        let m = f1.scale(s).try_add(&f2.scale(t)).expect("same shape");
        if m.rank() == 1 {
            members.push(m);
        }
    }
    let irrational = if report.irrational_count > 0 {
        Some(IrrationalPencil {
            count: report.irrational_count,
            minpoly: report.quadratic_minpoly.expect("quadratic factor"),
            discriminant: report.discriminant.expect("quadratic factor"),
        })
    } else {
        None
    };
    PencilOutcome::Finite(members, irrational)
}

fn push_class(classes: &mut Vec<RankOneClass>, m: &QMatrix) {
    if m.rank() != 1 {
        return;
    }
    let element = normalize_projective_matrix(m).expect("rank-one is nonzero");
    if classes.iter().any(|c| c.element == element) {
        return;
    }
    let image = rank_one_image(&element).expect("rank-one has an image");
    classes.push(RankOneClass { element, image });
}

/// Enumerates the rank-one classes of the nilpotent part, each paired with
/// its projective image.
///
/// The enumeration is provably complete for radical dimension `m <= 2`
/// (empty, a single rank test, or an exact pencil solve). For `m >= 3` it is
/// an explicitly flagged heuristic: basis elements, all pairwise pencils,
/// seeded random combinations, and — because rank-one elements are
/// annihilated by the whole radical — an exact scan of the annihilator
/// subspace `{x : f x = 0 for all radical f}` when that subspace is small.
pub fn rank_one_locus(
    alg: &SymmetrizerAlgebra,
    rng: &mut DetRng,
) -> Result<RankOneLocus, AlgebraError> {
    let rad = alg.radical().ok_or(AlgebraError::ConeInput)?;
    let basis = &rad.basis;
    let mut classes = Vec::new();
    let mut irrational = Vec::new();
    let scan_pencil = |f1: &QMatrix,
                       f2: &QMatrix,
                       classes: &mut Vec<RankOneClass>,
                       irrational: &mut Vec<IrrationalPencil>| {
        if let PencilOutcome::Finite(members, irr) = pencil_rank_one(f1, f2) {
            for m in &members {
                push_class(classes, m);
            }
            irrational.extend(irr);
        }
    };
    let exactness = match basis.len() {
        0 => Exactness::Complete,
        1 => {
            push_class(&mut classes, &basis[0]);
            Exactness::Complete
        }
        2 => match pencil_rank_one(&basis[0], &basis[1]) {
            PencilOutcome::Finite(members, irr) => {
                for m in &members {
                    push_class(&mut classes, m);
                }
                irrational.extend(irr);
                Exactness::Complete
            }
            PencilOutcome::WholePencil => {
                // Degenerate pencil; scan the basis instead. Cannot occur for
                // a non-cone form, where rank-one classes have distinct
                // images.
                push_class(&mut classes, &basis[0]);
                push_class(&mut classes, &basis[1]);
                Exactness::Heuristic
            }
        },
        _ => {
            for b in basis {
                push_class(&mut classes, b);
            }
            for i in 0..basis.len() {
                for j in (i + 1)..basis.len() {
                    scan_pencil(&basis[i], &basis[j], &mut classes, &mut irrational);
                }
            }
            let annihilator = radical_annihilator(basis);
            match annihilator.len() {
                0 => {}
                1 => push_class(&mut classes, &annihilator[0]),
                2 => scan_pencil(
                    &annihilator[0],
                    &annihilator[1],
                    &mut classes,
                    &mut irrational,
                ),
                _ => {
                    for w in &annihilator {
                        push_class(&mut classes, w);
                    }
                    for i in 0..annihilator.len() {
                        for j in (i + 1)..annihilator.len() {
                            scan_pencil(
                                &annihilator[i],
                                &annihilator[j],
                                &mut classes,
                                &mut irrational,
                            );
                        }
                    }
                    for _ in 0..64 {
                        if let Some(m) = random_combination(&annihilator, rng) {
                            push_class(&mut classes, &m);
                        }
                    }
                }
            }
            for _ in 0..64 {
                if let Some(m) = random_combination(basis, rng) {
                    push_class(&mut classes, &m);
                }
            }
            Exactness::Heuristic
        }
    };
    classes.sort_by(|a, b| {
        a.element
            .flatten()
            .partial_cmp(&b.element.flatten())
            .unwrap()
    });
    Ok(RankOneLocus {
        classes,
        exactness,
        irrational,
    })
}

/// Basis of `{x in span(radical) : f x = 0 for every radical basis f}`.
/// Rank-one radical elements always live here, and every member of the
/// subspace squares to zero.
pub fn radical_annihilator(basis: &[QMatrix]) -> Vec<QMatrix> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let n = first.rows();
    let m = basis.len();
    // Unknowns: coefficients c with x = sum c_i basis_i; equations: entries
    // of f_j * x for every j.
    let mut rows = Vec::new();
    for f in basis {
        let products: Vec<QMatrix> = basis
            .iter()
            .map(|b| f.try_mul(b).expect("square"))
            .collect();
        for r in 0..n {
            for c in 0..n {
                let row: Vec<Q> = products.iter().map(|p| p.at(r, c).clone()).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return basis.to_vec();
    }
    let system = QMatrix::from_rows(rows);
    let coeff_space = Subspace::from_spanning(m, &system.nullspace());
    coeff_space
        .basis()
        .iter()
        .map(|coeffs| {
            let mut acc = QMatrix::zero(n, n);
            for (c, b) in coeffs.iter().zip(basis) {
                if !c.is_zero() {
                    acc = acc.try_add(&b.scale(c)).expect("same shape");
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, PolySource};

    fn poly(vars: &[&str], expr: &str) -> MPoly {
        parse_polynomial(&PolySource {
            variables: vars.iter().map(|s| s.to_string()).collect(),
            expression: expr.to_string(),
            declared_degree: None,
        })
        .unwrap()
    }

    fn e6_surface() -> MPoly {
        poly(&["x0", "x1", "x2", "x3"], "x0*x2^2 + x1^2*x2 + x3^3")
    }

    fn sharp_d3_n3() -> MPoly {
        poly(&["x0", "x1", "x2", "x3"], "x0*x2^2 + 2*x1^2*x2 + x3^3")
    }

    fn fermat_cubic() -> MPoly {
        poly(&["x0", "x1", "x2", "x3"], "x0^3 + x1^3 + x2^3 + x3^3")
    }

    fn threefold_k_gt_1() -> MPoly {
        poly(
            &["x0", "x1", "x2", "x3", "x4"],
            "x0*x2^2 + x1^2*x2 + x2*x3^2 + x4^3",
        )
    }

    fn conic_threefold() -> MPoly {
        poly(
            &["x0", "x1", "x2", "x3", "x4"],
            "x0*x3^2 + x1*x4^2 + x2*(x3 + x4)^2",
        )
    }

    /// Jordan 3-block on the first coordinates of an n x n matrix.
    fn shift3(n: usize) -> QMatrix {
        let mut m = QMatrix::zero(n, n);
        m.set(0, 1, q(1));
        m.set(1, 2, q(1));
        m
    }

    #[test]
    fn hessian_of_e6_surface() {
        let h = hessian_matrix(&e6_surface()).unwrap();
        let x2 = MPoly::var(4, 2).unwrap();
        let x3 = MPoly::var(4, 3).unwrap();
        assert!(h.at(0, 0).is_zero());
        assert!(h.at(0, 1).is_zero());
        assert_eq!(h.at(0, 2), &x2.scale(&q(2)));
        assert!(h.at(0, 3).is_zero());
        assert_eq!(h.at(3, 3), &x3.scale(&q(6)));
    }

    #[test]
    fn hessian_of_fermat_is_diagonal() {
        let h = hessian_matrix(&fermat_cubic()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    assert_eq!(h.at(i, j), &MPoly::var(4, i).unwrap().scale(&q(6)));
                } else {
                    assert!(h.at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn hessian_of_conic_threefold_entries() {
        let h = hessian_matrix(&conic_threefold()).unwrap();
        let x3 = MPoly::var(5, 3).unwrap();
        let x4 = MPoly::var(5, 4).unwrap();
        assert_eq!(h.at(0, 3), &x3.scale(&q(2)));
        assert_eq!(h.at(2, 3), &x3.try_add(&x4).unwrap().scale(&q(2)));
    }

    #[test]
    fn hessian_rejects_bad_input() {
        let inhomogeneous = poly(&["x0", "x1", "x2"], "x0^3 + x1");
        assert_eq!(
            hessian_matrix(&inhomogeneous).unwrap_err(),
            AlgebraError::NotHomogeneous
        );
        let quadric = poly(&["x0", "x1", "x2"], "x0^2 + x1*x2");
        assert_eq!(
            hessian_matrix(&quadric).unwrap_err(),
            AlgebraError::DegreeTooSmall { degree: 2 }
        );
    }

    #[test]
    fn jacobian_rank_detects_cones() {
        assert_eq!(jacobian_span(&sharp_d3_n3()).unwrap().rank, 4);
        let cone = poly(&["x0", "x1", "x2", "x3"], "x0^3 + x1^3");
        assert_eq!(jacobian_span(&cone).unwrap().rank, 2);
        assert_eq!(jacobian_span(&conic_threefold()).unwrap().rank, 5);
    }

    #[test]
    fn fermat_algebra_is_the_diagonal() {
        let alg = solve_symmetrizer_algebra(&fermat_cubic()).unwrap();
        assert_eq!(alg.dimension(), 4);
        assert!(alg.contains_identity());
        for b in alg.basis() {
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert!(b.at(i, j).is_zero(), "off-diagonal entry in Fermat basis");
                    }
                }
            }
        }
        let rad = alg.radical().unwrap();
        assert_eq!(rad.basis.len(), 0);
        assert_eq!(rad.semisimple_dim, 3);
    }

    #[test]
    fn sharp_example_dimensions() {
        let alg = solve_symmetrizer_algebra(&sharp_d3_n3()).unwrap();
        assert_eq!(alg.dimension(), 4);
        let rad = alg.radical().unwrap();
        assert_eq!(rad.basis.len(), 2);
        assert_eq!(rad.semisimple_dim, 1);
    }

    #[test]
    fn e6_algebra_matches_displayed_family() {
        // For the normalization x0*x2^2 + x1^2*x2 + x3^3 the algebra is
        // spanned by the upper-triangular Toeplitz block in (x0, x1, x2)
        // plus the x3 diagonal: parameters (u, s, t, z3).
        let alg = solve_symmetrizer_algebra(&e6_surface()).unwrap();
        assert_eq!(alg.dimension(), 4);
        let mut u = QMatrix::zero(4, 4);
        for i in 0..3 {
            u.set(i, i, q(1));
        }
        let j = shift3(4);
        let j2 = j.try_mul(&j).unwrap();
        let mut z = QMatrix::zero(4, 4);
        z.set(3, 3, q(1));
        for m in [&u, &j, &j2, &z] {
            assert!(alg.contains(m));
        }
        let family = matrix_span(4, &[u, j.clone(), j2, z]);
        for b in alg.basis() {
            assert!(family.contains(&b.flatten()));
        }
        // The Jordan block generates the radical.
        assert_eq!(alg.radical_contains(&j), Some(true));
    }

    #[test]
    fn threefold_radical_contains_displayed_generators() {
        let alg = solve_symmetrizer_algebra(&threefold_k_gt_1()).unwrap();
        let rad = alg.radical().unwrap();
        assert_eq!(rad.basis.len(), 3);
        let h = shift3(5);
        let h2 = h.try_mul(&h).unwrap();
        let mut g = QMatrix::zero(5, 5);
        g.set(0, 3, q(1));
        g.set(3, 2, q(1));
        for m in [&h, &h2, &g] {
            assert_eq!(alg.radical_contains(m), Some(true));
        }
    }

    #[test]
    fn cone_has_no_radical() {
        let cone = poly(&["x0", "x1", "x2", "x3"], "x1^3 + x2^3 + x3^3");
        let alg = solve_symmetrizer_algebra(&cone).unwrap();
        assert!(alg.radical().is_none());
        assert!(alg.dimension() >= 1);
        let mut rng = DetRng::new(1);
        assert!(matches!(
            rank_one_locus(&alg, &mut rng).unwrap_err(),
            AlgebraError::ConeInput
        ));
    }

    #[test]
    fn oracle_examples() {
        let p = sharp_d3_n3();
        assert!(is_symmetrizer_oracle(&p, &QMatrix::identity(4)).unwrap());
        // Displayed generator of the radical, transported to the fixture
        // normalization: e1 -> 2 e0, e2 -> e1.
        let mut f = QMatrix::zero(4, 4);
        f.set(0, 1, q(2));
        f.set(1, 2, q(1));
        assert!(is_symmetrizer_oracle(&p, &f).unwrap());
        // For the normalized polynomial the plain Jordan block works.
        assert!(is_symmetrizer_oracle(&e6_surface(), &shift3(4)).unwrap());

        let mut e01 = QMatrix::zero(4, 4);
        e01.set(0, 1, q(1));
        assert!(!is_symmetrizer_oracle(&fermat_cubic(), &e01).unwrap());
    }

    #[test]
    fn oracle_rejects_size_mismatch() {
        assert!(matches!(
            is_symmetrizer_oracle(&fermat_cubic(), &QMatrix::identity(3)).unwrap_err(),
            AlgebraError::SizeMismatch {
                expected: 4,
                rows: 3,
                cols: 3
            }
        ));
    }

    #[test]
    fn oracle_agrees_with_hessian_route_on_solver_basis() {
        for p in [
            sharp_d3_n3(),
            threefold_k_gt_1(),
            fermat_cubic(),
            conic_threefold(),
        ] {
            let alg = solve_symmetrizer_algebra(&p).unwrap();
            for b in alg.basis() {
                assert!(is_symmetrizer_oracle(&p, b).unwrap());
                assert!(is_symmetrizer_hessian(&p, b).unwrap());
            }
        }
    }

    #[test]
    fn apply_identity_returns_p_exactly() {
        let p = sharp_d3_n3();
        assert_eq!(apply_symmetrizer(&p, &QMatrix::identity(4)).unwrap(), p);
        assert_eq!(
            apply_symmetrizer(&p, &QMatrix::identity(4).scale(&q(3))).unwrap(),
            p.scale(&q(3))
        );
    }

    #[test]
    fn apply_rejects_non_symmetrizers() {
        let mut e01 = QMatrix::zero(4, 4);
        e01.set(0, 1, q(1));
        assert!(matches!(
            apply_symmetrizer(&fermat_cubic(), &e01).unwrap_err(),
            AlgebraError::NotASymmetrizer
        ));
    }

    #[test]
    fn unipotent_action_preserves_jacobian_row_space() {
        let p = e6_surface();
        let alg = solve_symmetrizer_algebra(&p).unwrap();
        let f = &alg.radical().unwrap().basis[0];
        let unipotent = QMatrix::identity(4).try_add(f).unwrap();
        assert_eq!(unipotent.rank(), 4);
        let moved = apply_symmetrizer(&p, &unipotent).unwrap();
        assert_ne!(moved, p);
        let before = jacobian_span(&p).unwrap().row_space;
        let after = jacobian_span(&moved).unwrap().row_space;
        assert_eq!(before, after);
    }

    #[test]
    fn rank_one_locus_of_sharp_example() {
        let p = sharp_d3_n3();
        let alg = solve_symmetrizer_algebra(&p).unwrap();
        let mut rng = DetRng::new(1);
        let locus = rank_one_locus(&alg, &mut rng).unwrap();
        assert_eq!(locus.exactness, Exactness::Complete);
        assert_eq!(locus.classes.len(), 1);
        assert_eq!(locus.classes[0].image, vec![q(1), q(0), q(0), q(0)]);
        assert!(locus.irrational.is_empty());
    }

    #[test]
    fn rank_one_locus_of_fermat_is_empty() {
        let alg = solve_symmetrizer_algebra(&fermat_cubic()).unwrap();
        let mut rng = DetRng::new(1);
        let locus = rank_one_locus(&alg, &mut rng).unwrap();
        assert_eq!(locus.exactness, Exactness::Complete);
        assert!(locus.classes.is_empty());
    }

    #[test]
    fn rank_one_locus_of_threefold_finds_h_squared() {
        let alg = solve_symmetrizer_algebra(&threefold_k_gt_1()).unwrap();
        let mut rng = DetRng::new(1);
        let locus = rank_one_locus(&alg, &mut rng).unwrap();
        assert_eq!(locus.exactness, Exactness::Heuristic);
        let e0: Vec<Q> = vec![q(1), q(0), q(0), q(0), q(0)];
        assert!(locus.classes.iter().any(|c| c.image == e0));
        // h^2 is the only rank-one class here.
        assert_eq!(locus.classes.len(), 1);
    }

    #[test]
    fn rank_one_pencil_with_two_rational_classes() {
        // The singular line of x0*x2^2 + x1*x3^2 + x4^3 carries exactly two
        // quasi-vertices, at the coordinate points.
        let p = poly(&["x0", "x1", "x2", "x3", "x4"], "x0*x2^2 + x1*x3^2 + x4^3");
        let alg = solve_symmetrizer_algebra(&p).unwrap();
        assert_eq!(alg.radical_dim(), Some(2));
        let mut rng = DetRng::new(1);
        let locus = rank_one_locus(&alg, &mut rng).unwrap();
        assert_eq!(locus.exactness, Exactness::Complete);
        let images: Vec<Vec<Q>> = locus.classes.iter().map(|c| c.image.clone()).collect();
        assert_eq!(images.len(), 2);
        assert!(images.contains(&vec![q(1), q(0), q(0), q(0), q(0)]));
        assert!(images.contains(&vec![q(0), q(1), q(0), q(0), q(0)]));
        assert!(locus.irrational.is_empty());
    }

    #[test]
    fn rank_one_pencil_with_irrational_parameter_is_reported_by_count() {
        // Coupling the two squares makes the rank-one condition on the
        // pencil an irreducible quadratic: the two classes are conjugate
        // and reported by count and discriminant, never as points.
        let p = poly(
            &["x0", "x1", "x2", "x3", "x4"],
            "x0*x2^2 - 2*x0*x3^2 + x1*x2*x3 + x4^3",
        );
        let alg = solve_symmetrizer_algebra(&p).unwrap();
        assert_eq!(alg.radical_dim(), Some(2));
        let mut rng = DetRng::new(1);
        let locus = rank_one_locus(&alg, &mut rng).unwrap();
        assert_eq!(locus.exactness, Exactness::Complete);
        assert!(locus.classes.is_empty());
        assert_eq!(locus.irrational.len(), 1);
        assert_eq!(locus.irrational[0].count, 2);
        assert_eq!(locus.irrational[0].discriminant, q(-32));
    }

    #[test]
    fn max_nilpotent_rank_of_sharp_example_is_two() {
        let alg = solve_symmetrizer_algebra(&sharp_d3_n3()).unwrap();
        let mut rng = DetRng::new(1);
        assert_eq!(alg.max_nilpotent_rank(&mut rng), Some(2));
    }

    #[test]
    fn basis_elements_commute_and_products_stay_inside() {
        for p in [sharp_d3_n3(), threefold_k_gt_1(), conic_threefold()] {
            let alg = solve_symmetrizer_algebra(&p).unwrap();
            let basis = alg.basis();
            for a in basis {
                for b in basis {
                    let ab = a.try_mul(b).unwrap();
                    let ba = b.try_mul(a).unwrap();
                    assert_eq!(ab, ba);
                    assert!(alg.contains(&ab));
                }
            }
        }
    }
}
