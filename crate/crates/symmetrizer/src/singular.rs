//! Point-level and line-level singularity analysis: multiplicity, Hessian
//! rank, quasi-vertex tests, the rank-one symmetrizer construction, and the
//! hyperplane-of-lines geometry at a quasi-vertex.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{
    coeff_matrix, hessian_matrix, is_symmetrizer_oracle, normalize_projective_vector,
    validate_form, AlgebraError,
};
use crate::binform::{binform_gcd, rational_roots, BinForm};
use crate::linalg::{rref_nullspace, Subspace};
use crate::poly::{monomials_of_degree, Monomial, PolyError};
use crate::{q, MPoly, QMatrix, QSubspace, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularError {
    ZeroVector,
    /// Point not on the hypersurface where membership is required.
    NotOnHypersurface,
    /// Hessian rank exceeds the bound required by the construction.
    RankTooHigh {
        rank: usize,
    },
    NotAQuasiVertex,
    SamePoint,
    EmptySpan,
    /// A precondition stated for the operation does not hold.
    Precondition(String),
    /// Every point of the line satisfies the degeneracy being counted;
    /// only reachable for cones.
    DegenerateLine,
    Algebra(AlgebraError),
    Poly(PolyError),
}

impl fmt::Display for SingularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularError::ZeroVector => write!(f, "projective point needs a nonzero vector"),
            SingularError::NotOnHypersurface => write!(f, "point does not lie on the hypersurface"),
            SingularError::RankTooHigh { rank } => {
                write!(f, "Hessian rank {rank} exceeds 1 at the point")
            }
            SingularError::NotAQuasiVertex => write!(f, "point is not a quasi-vertex"),
            SingularError::SamePoint => write!(f, "the two points coincide"),
            SingularError::EmptySpan => write!(f, "empty span"),
            SingularError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            SingularError::DegenerateLine => write!(f, "every point of the line is degenerate"),
            SingularError::Algebra(e) => write!(f, "{e}"),
            SingularError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SingularError {}

impl From<AlgebraError> for SingularError {
    fn from(e: AlgebraError) -> Self {
        SingularError::Algebra(e)
    }
}

impl From<PolyError> for SingularError {
    fn from(e: PolyError) -> Self {
        SingularError::Poly(e)
    }
}

/// Rational projective point, canonicalized so the first nonzero coordinate
/// is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Q>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Q>) -> Result<Self, SingularError> {
        let canonical = normalize_projective_vector(&coords).ok_or(SingularError::ZeroVector)?;
        Ok(ProjPoint { coords: canonical })
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Parses `(a:b:...:c)` with rational components.
    pub fn parse(text: &str) -> Result<Self, String> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| format!("point '{text}' must be wrapped in parentheses"))?;
        let coords: Vec<Q> = inner
            .split(':')
            .map(|part| {
                part.trim()
                    .parse::<Q>()
                    .map_err(|e| format!("bad coordinate '{}': {e}", part.trim()))
            })
            .collect::<Result<_, _>>()?;
        ProjPoint::new(coords).map_err(|_| format!("point '{text}' is the zero vector"))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Everything the analyses below compute for one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointAnalysis {
    pub point: ProjPoint,
    pub on_hypersurface: bool,
    /// Order of vanishing at the point, in `0..=d`; `d` means cone vertex.
    pub multiplicity: u32,
    /// Dimension of the image of `u -> xi^t H_P u` in degree-`(d-2)` forms.
    /// At most `n` at points of multiplicity >= d-1; can reach `n + 1`
    /// elsewhere.
    pub hessian_rank: usize,
    /// `n - hessian_rank`, clamped at zero (the corank is only meaningful
    /// at points of multiplicity >= d-1, where the rank stays within `n`).
    pub corank: usize,
    pub is_quasi_vertex: bool,
    pub is_cone_vertex: bool,
}

fn check_point(p: &MPoly, x: &ProjPoint) -> Result<(), SingularError> {
    if x.dim() != p.nvars() {
        return Err(SingularError::Poly(PolyError::PointLengthMismatch {
            expected: p.nvars(),
            got: x.dim(),
        }));
    }
    Ok(())
}

/// Multiplicity of the hypersurface at `x`: the least `k` such that some
/// order-`k` partial of `P` is nonzero at `x`, computed by iterating the
/// polar `P -> sum_i xi_i dP/dx_i` (the `k`-fold polar vanishes identically
/// exactly when the multiplicity is at least `d - k + 1`).
pub fn multiplicity_at(p: &MPoly, x: &ProjPoint) -> Result<u32, SingularError> {
    let (_, degree) = validate_form(p)?;
    check_point(p, x)?;
    let mut current = p.clone();
    for k in 1..=degree {
        current = current.polar(x.coords())?;
        if current.is_zero() {
            return Ok(degree - k + 1);
        }
    }
    // The d-fold polar is the constant d! * P(x); nonzero means x is off the
    // hypersurface.
    Ok(0)
}

/// Coefficient matrix of the polynomial row vector `xi^t * H_P`: rows are
/// degree-`(d-2)` monomials, columns the `N` components.
fn hessian_pairing_matrix(p: &MPoly, xi: &[Q]) -> Result<QMatrix, SingularError> {
    let (n, degree) = validate_form(p)?;
    let hessian = hessian_matrix(p)?;
    let row = hessian.left_mul_vector(xi);
    let monos = monomials_of_degree(n, degree - 2);
    Ok(coeff_matrix(&row, &monos))
}

/// `R_F(x)`: the rank of the Hessian pairing at `x`.
pub fn hessian_rank_at(p: &MPoly, x: &ProjPoint) -> Result<usize, SingularError> {
    check_point(p, x)?;
    Ok(hessian_pairing_matrix(p, x.coords())?.rank())
}

/// `ker h_F(xi)`, with canonical basis.
pub fn hessian_kernel_at(p: &MPoly, x: &ProjPoint) -> Result<QSubspace, SingularError> {
    check_point(p, x)?;
    let (_, kernel) = rref_nullspace(&hessian_pairing_matrix(p, x.coords())?);
    Ok(kernel)
}

/// Full per-point record.
pub fn analyze_point(p: &MPoly, x: &ProjPoint) -> Result<PointAnalysis, SingularError> {
    let (n, degree) = validate_form(p)?;
    check_point(p, x)?;
    let multiplicity = multiplicity_at(p, x)?;
    let on_hypersurface = multiplicity >= 1;
    let hessian_rank = hessian_rank_at(p, x)?;
    let corank = (n - 1).saturating_sub(hessian_rank);
    let is_cone_vertex = hessian_rank == 0;
    debug_assert_eq!(is_cone_vertex, multiplicity == degree);
    let is_quasi_vertex = on_hypersurface && hessian_rank == 1;
    Ok(PointAnalysis {
        point: x.clone(),
        on_hypersurface,
        multiplicity,
        hessian_rank,
        corank,
        is_quasi_vertex,
        is_cone_vertex,
    })
}

/// Does every point of the projective span have multiplicity at least `m`?
///
/// Checked symbolically: substitute the generic combination of the span
/// basis into every order-`(m-1)` partial and test identical vanishing in
/// the parameters. Never decided by sampling.
pub fn subspace_multiplicity_at_least(
    p: &MPoly,
    span: &[Vec<Q>],
    m: u32,
) -> Result<bool, SingularError> {
    if span.is_empty() || span.iter().all(|v| v.iter().all(Zero::is_zero)) {
        return Err(SingularError::EmptySpan);
    }
    if m == 0 {
        return Ok(true);
    }
    let n = p.nvars();
    let rows = QMatrix::from_rows(span.to_vec());
    for alpha in monomials_of_degree(n, m - 1) {
        let mut partial = p.clone();
        for (i, &e) in alpha.exps().iter().enumerate() {
            for _ in 0..e {
                partial = partial.partial_derivative(i)?;
            }
        }
        if !partial.substitute_linear(&rows)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the rank-one nilpotent symmetrizer with image `x`, following the
/// kernel-extension construction: pick a basis of `V` whose first `N - 1`
/// vectors lie in `ker h_F(xi)` and start with `xi` itself, send the last
/// basis vector to `xi` and the rest to zero.
///
/// Requires `x` on the hypersurface with Hessian rank at most 1. At a cone
/// vertex (rank 0) the construction still returns a rank-one map with image
/// `x`. The result is certified to be a square-zero symmetrizer through the
/// tensor oracle.
pub fn construct_rank_one_symmetrizer(p: &MPoly, x: &ProjPoint) -> Result<QMatrix, SingularError> {
    let n = p.nvars();
    let analysis = analyze_point(p, x)?;
    if !analysis.on_hypersurface {
        return Err(SingularError::NotOnHypersurface);
    }
    if analysis.hessian_rank > 1 {
        return Err(SingularError::RankTooHigh {
            rank: analysis.hessian_rank,
        });
    }
    let kernel = hessian_kernel_at(p, x)?;
    debug_assert!(
        kernel.contains(x.coords()),
        "xi lies in its own Hessian kernel"
    );

    // Ordered basis: xi first, kernel vectors next, one outside vector last.
    let mut basis: Vec<Vec<Q>> = vec![x.coords().to_vec()];
    let mut span = Subspace::from_spanning(n, &basis);
    for v in kernel.basis() {
        if span.dim() == kernel.dim() {
            break;
        }
        if !span.contains(v) {
            basis.push(v.clone());
            span = Subspace::from_spanning(n, &basis);
        }
    }
    if basis.len() < n {
        for i in 0..n {
            let mut e = vec![q(0); n];
            e[i] = q(1);
            if !span.contains(&e) {
                basis.push(e);
                break;
            }
        }
    }
    debug_assert_eq!(basis.len(), n);

    // Functional phi with phi(basis_i) = 0 for i < n-1 and phi(last) = 1:
    // solve B^t phi = e_{n-1} with B the basis-as-columns matrix.
    let b_t = QMatrix::from_rows(basis);
    let mut rhs = vec![q(0); n];
    rhs[n - 1] = q(1);
    let phi = b_t
        .solve(&rhs)
        .ok_or_else(|| SingularError::Precondition("basis extension failed".into()))?;
    let g = QMatrix::from_fn(n, n, |r, c| x.coords()[r].clone() * phi[c].clone());

    if !is_symmetrizer_oracle(p, &g)? {
        return Err(SingularError::Precondition(
            "constructed map failed the symmetrizer certificate".into(),
        ));
    }
    debug_assert!(g.try_mul(&g).unwrap().is_zero());
    debug_assert_eq!(g.rank(), 1);
    Ok(g)
}

/// The linear form cutting the hyperplane `P(ker h_F(xi))` at a quasi-vertex;
/// its rational surface points span lines through the quasi-vertex that lie
/// entirely in the hypersurface.
pub fn hyperplane_of_lines(p: &MPoly, x: &ProjPoint) -> Result<MPoly, SingularError> {
    let analysis = analyze_point(p, x)?;
    if !analysis.is_quasi_vertex {
        return Err(SingularError::NotAQuasiVertex);
    }
    let pairing = hessian_pairing_matrix(p, x.coords())?;
    let rref = pairing.rref();
    debug_assert_eq!(rref.rank, 1);
    let coeffs = rref.matrix.row(0);
    let n = p.nvars();
    let mut form = MPoly::zero(n);
    for (j, c) in coeffs.iter().enumerate() {
        form.add_term(Monomial::var(n, j), c.clone());
    }
    Ok(form)
}

/// Is the whole line through `x` and `y` contained in the hypersurface?
/// Decided by restricting `P` to the line and testing the zero polynomial.
pub fn line_in_hypersurface(
    p: &MPoly,
    x: &ProjPoint,
    y: &ProjPoint,
) -> Result<bool, SingularError> {
    if x == y {
        return Err(SingularError::SamePoint);
    }
    let rows = QMatrix::from_rows(vec![x.coords().to_vec(), y.coords().to_vec()]);
    Ok(p.substitute_linear(&rows)?.is_zero())
}

/// For a surface (`N = 4`) and `f` with `f^2 != 0 = f^3`, `rank f^2 = 1`:
/// checks that the hyperplane section at `x = P(im f^2)` is `d` times the
/// line `L = P(im f)` — the restriction of `P` to `ker h_F(xi)` must be a
/// scalar times the `d`-th power of the linear form cutting `L`.
pub fn verify_power_image_line(p: &MPoly, f: &QMatrix) -> Result<bool, SingularError> {
    let (n, degree) = validate_form(p)?;
    if n != 4 {
        return Err(SingularError::Precondition(format!(
            "need a surface in P^3, got N = {n}"
        )));
    }
    if f.rows() != n || f.cols() != n {
        return Err(SingularError::Algebra(AlgebraError::SizeMismatch {
            expected: n,
            rows: f.rows(),
            cols: f.cols(),
        }));
    }
    if !is_symmetrizer_oracle(p, f)? {
        return Err(SingularError::Precondition("f is not a symmetrizer".into()));
    }
    let f2 = f.try_mul(f).expect("square");
    let f3 = f2.try_mul(f).expect("square");
    if f2.is_zero() || !f3.is_zero() {
        return Err(SingularError::Precondition(
            "need f^2 != 0 and f^3 = 0".into(),
        ));
    }
    if f2.rank() != 1 {
        return Err(SingularError::Precondition("rank f^2 must be 1".into()));
    }

    let image_col = (0..n)
        .map(|c| f2.col_vec(c))
        .find(|col| col.iter().any(|v| !v.is_zero()))
        .expect("rank one");
    let x = ProjPoint::new(image_col).expect("nonzero column");
    let kernel = hessian_kernel_at(p, &x)?;
    if kernel.dim() != n - 1 {
        return Err(SingularError::Precondition(
            "image of f^2 is not a quasi-vertex".into(),
        ));
    }

    // Restrict P to the kernel hyperplane.
    let k_rows = QMatrix::from_rows(kernel.basis().to_vec());
    let restricted = p.substitute_linear(&k_rows)?;

    // Express im f in kernel coordinates and cut it by one linear form.
    let cols_to_solve = k_rows.transpose();
    let mut image_coords = Vec::new();
    for c in 0..n {
        let col = f.col_vec(c);
        if col.iter().all(Zero::is_zero) {
            continue;
        }
        let coords = cols_to_solve
            .solve(&col)
            .ok_or_else(|| SingularError::Precondition("im f not inside the kernel".into()))?;
        image_coords.push(coords);
    }
    let image_in_kernel = Subspace::from_spanning(n - 1, &image_coords);
    if image_in_kernel.dim() != 2 {
        return Err(SingularError::Precondition("im f must be a line".into()));
    }
    let coeff_rows = QMatrix::from_rows(image_in_kernel.basis().to_vec());
    let (_, annihilator) = rref_nullspace(&coeff_rows);
    debug_assert_eq!(annihilator.dim(), 1);
    let mu_coeffs = &annihilator.basis()[0];
    let mut mu = MPoly::zero(n - 1);
    for (j, c) in mu_coeffs.iter().enumerate() {
        mu.add_term(Monomial::var(n - 1, j), c.clone());
    }
    let mu_power = mu.pow(degree);

    // restricted == lambda * mu^degree for some nonzero rational lambda?
    if restricted.is_zero() || mu_power.is_zero() {
        return Ok(false);
    }
    let (first_mono, first_coeff) = mu_power.terms().next().expect("nonzero");
    let lambda = restricted.coeff(first_mono) / first_coeff.clone();
    if lambda.is_zero() {
        return Ok(false);
    }
    Ok(restricted == mu_power.scale(&lambda))
}

/// Number of rational-parameter quasi-vertices on the line through `x` and
/// `y`.
///
/// The Hessian-rank-at-most-1 condition along the parametrized line makes
/// every 2x2 minor of the pairing matrix a binary quadratic form; their gcd
/// is solved exactly, each rational root is verified by a full point
/// analysis, and the count is therefore exact whenever the gcd is nonzero
/// (which holds for every non-cone input).
pub fn quasi_vertices_on_line(
    p: &MPoly,
    x: &ProjPoint,
    y: &ProjPoint,
) -> Result<usize, SingularError> {
    if x == y {
        return Err(SingularError::SamePoint);
    }
    let c_xi = hessian_pairing_matrix(p, x.coords())?;
    let c_eta = hessian_pairing_matrix(p, y.coords())?;
    let (rows, cols) = (c_xi.rows(), c_xi.cols());
    let mut forms = Vec::new();
    for r1 in 0..rows {
        for r2 in (r1 + 1)..rows {
            for c1 in 0..cols {
                for c2 in (c1 + 1)..cols {
                    let a = c_xi.at(r1, c1).clone() * c_xi.at(r2, c2).clone()
                        - c_xi.at(r1, c2).clone() * c_xi.at(r2, c1).clone();
                    let b = c_xi.at(r1, c1).clone() * c_eta.at(r2, c2).clone()
                        + c_eta.at(r1, c1).clone() * c_xi.at(r2, c2).clone()
                        - c_xi.at(r1, c2).clone() * c_eta.at(r2, c1).clone()
                        - c_eta.at(r1, c2).clone() * c_xi.at(r2, c1).clone();
                    let c = c_eta.at(r1, c1).clone() * c_eta.at(r2, c2).clone()
                        - c_eta.at(r1, c2).clone() * c_eta.at(r2, c1).clone();
                    let form = BinForm::quadratic(a, b, c);
                    if !form.is_zero() {
                        forms.push(form);
                    }
                }
            }
        }
    }
    let candidates: Vec<(Q, Q)> = match binform_gcd(&forms) {
        Some(gcd) => rational_roots(&gcd).rational,
        None => {
            // Rank <= 1 along the whole line: quasi-vertices sit among the
            // surface points of the line.
            let rows_m = QMatrix::from_rows(vec![x.coords().to_vec(), y.coords().to_vec()]);
            let restricted = p.substitute_linear(&rows_m)?;
            if restricted.is_zero() {
                return Err(SingularError::DegenerateLine);
            }
            let degree = restricted.degree().unwrap_or(0);
            let coeffs: Vec<Q> = (0..=degree)
                .map(|i| restricted.coeff(&Monomial::new(vec![i, degree - i])))
                .collect();
            rational_roots(&BinForm::new(coeffs)).rational
        }
    };
    let mut count = 0;
    let mut seen = Vec::new();
    for (s, t) in candidates {
        let coords: Vec<Q> = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| s.clone() * a.clone() + t.clone() * b.clone())
            .collect();
        let Ok(point) = ProjPoint::new(coords) else {
            continue;
        };
        if seen.contains(&point) {
            continue;
        }
        if analyze_point(p, &point)?.is_quasi_vertex {
            count += 1;
        }
        seen.push(point);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::solve_symmetrizer_algebra;
    use crate::parse::{parse_polynomial, PolySource};

    fn poly(vars: &[&str], expr: &str) -> MPoly {
        parse_polynomial(&PolySource {
            variables: vars.iter().map(|s| s.to_string()).collect(),
            expression: expr.to_string(),
            declared_degree: None,
        })
        .unwrap()
    }

    fn pt(coords: &[i64]) -> ProjPoint {
        ProjPoint::new(coords.iter().map(|&c| q(c)).collect()).unwrap()
    }

    fn e6_surface() -> MPoly {
        poly(&["x0", "x1", "x2", "x3"], "x0*x2^2 + x1^2*x2 + x3^3")
    }

    fn fermat_cubic() -> MPoly {
        poly(&["x0", "x1", "x2", "x3"], "x0^3 + x1^3 + x2^3 + x3^3")
    }

    fn conic_threefold() -> MPoly {
        poly(
            &["x0", "x1", "x2", "x3", "x4"],
            "x0*x3^2 + x1*x4^2 + x2*(x3 + x4)^2",
        )
    }

    fn threefold_k_gt_1() -> MPoly {
        poly(
            &["x0", "x1", "x2", "x3", "x4"],
            "x0*x2^2 + x1^2*x2 + x2*x3^2 + x4^3",
        )
    }

    #[test]
    fn point_parsing_and_display() {
        let p = ProjPoint::parse("(2:2:-1:0:0)").unwrap();
        assert_eq!(p.to_string(), "(1:1:-1/2:0:0)");
        assert!(ProjPoint::parse("(0:0)").is_err());
        assert!(ProjPoint::parse("1:2").is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let e6 = e6_surface();
        assert_eq!(multiplicity_at(&e6, &pt(&[1, 0, 0, 0])).unwrap(), 2);

        let fermat = fermat_cubic();
        assert_eq!(multiplicity_at(&fermat, &pt(&[1, -1, 0, 0])).unwrap(), 1);
        assert_eq!(multiplicity_at(&fermat, &pt(&[1, 0, 0, -1])).unwrap(), 1);
        assert_eq!(multiplicity_at(&fermat, &pt(&[1, 1, 1, 1])).unwrap(), 0);

        assert_eq!(
            multiplicity_at(&threefold_k_gt_1(), &pt(&[1, 0, 0, 0, 0])).unwrap(),
            2
        );
    }

    #[test]
    fn hessian_rank_examples() {
        assert_eq!(
            hessian_rank_at(&e6_surface(), &pt(&[1, 0, 0, 0])).unwrap(),
            1
        );
        assert_eq!(
            hessian_rank_at(&conic_threefold(), &pt(&[2, 2, -1, 0, 0])).unwrap(),
            1
        );
        // Node of the Cayley cubic: rank n = 3.
        let cayley = poly(
            &["x0", "x1", "x2", "x3"],
            "x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3",
        );
        assert_eq!(hessian_rank_at(&cayley, &pt(&[1, 0, 0, 0])).unwrap(), 3);
    }

    #[test]
    fn analyze_point_examples() {
        let a = analyze_point(&e6_surface(), &pt(&[1, 0, 0, 0])).unwrap();
        assert!(a.on_hypersurface);
        assert_eq!(a.multiplicity, 2);
        assert_eq!(a.hessian_rank, 1);
        assert_eq!(a.corank, 2);
        assert!(a.is_quasi_vertex);
        assert!(!a.is_cone_vertex);

        let cone = poly(&["x0", "x1", "x2", "x3"], "x1^3 + x2^3 + x3^3");
        let v = analyze_point(&cone, &pt(&[1, 0, 0, 0])).unwrap();
        assert_eq!(v.multiplicity, 3);
        assert_eq!(v.hessian_rank, 0);
        assert!(v.is_cone_vertex);
        assert!(!v.is_quasi_vertex);

        let smooth = analyze_point(&fermat_cubic(), &pt(&[1, -1, 0, 0])).unwrap();
        assert_eq!(smooth.multiplicity, 1);
        assert!(!smooth.is_quasi_vertex);
        // xi^t H = (6 x0, -6 x1, 0, 0) spans two independent forms.
        assert_eq!(smooth.hessian_rank, 2);
    }

    #[test]
    fn conic_points_are_quasi_vertices() {
        let p = conic_threefold();
        for (a, b, c) in [(2i64, 2, -1), (-1, 2, 2), (6, 3, -2)] {
            assert_eq!(a * b + b * c + c * a, 0);
            let x = pt(&[a, b, c, 0, 0]);
            let analysis = analyze_point(&p, &x).unwrap();
            assert!(analysis.is_quasi_vertex, "({a}:{b}:{c}:0:0)");
            assert_eq!(analysis.multiplicity, 2);
        }
    }

    #[test]
    fn subspace_multiplicity_examples() {
        // The sharp example: span{e0} has multiplicity d - 1 = 2.
        let sharp = poly(&["x0", "x1", "x2", "x3"], "x0*x2^2 + 2*x1^2*x2 + x3^3");
        let e0 = vec![vec![q(1), q(0), q(0), q(0)]];
        assert!(subspace_multiplicity_at_least(&sharp, &e0, 2).unwrap());
        assert!(!subspace_multiplicity_at_least(&sharp, &e0, 3).unwrap());

        // A line inside the singular plane of the conic threefold.
        let conic = conic_threefold();
        let line = vec![
            vec![q(1), q(0), q(0), q(0), q(0)],
            vec![q(0), q(1), q(0), q(0), q(0)],
        ];
        assert!(subspace_multiplicity_at_least(&conic, &line, 2).unwrap());

        // Fermat is smooth: no line has multiplicity 2.
        let fermat = fermat_cubic();
        let line = vec![vec![q(1), q(-1), q(0), q(0)], vec![q(0), q(0), q(1), q(-1)]];
        assert!(!subspace_multiplicity_at_least(&fermat, &line, 2).unwrap());
        assert!(matches!(
            subspace_multiplicity_at_least(&fermat, &[], 2).unwrap_err(),
            SingularError::EmptySpan
        ));
    }

    #[test]
    fn constructed_rank_one_is_a_certified_symmetrizer() {
        let e6 = e6_surface();
        let x = pt(&[1, 0, 0, 0]);
        let g = construct_rank_one_symmetrizer(&e6, &x).unwrap();
        assert_eq!(g.rank(), 1);
        assert!(g.try_mul(&g).unwrap().is_zero());
        let alg = solve_symmetrizer_algebra(&e6).unwrap();
        assert!(alg.contains(&g));
        assert_eq!(alg.radical_contains(&g), Some(true));

        // Conic threefold at a non-coordinate quasi-vertex.
        let conic = conic_threefold();
        let y = pt(&[2, 2, -1, 0, 0]);
        let g = construct_rank_one_symmetrizer(&conic, &y).unwrap();
        assert_eq!(g.rank(), 1);
        let image = (0..5)
            .map(|c| g.col_vec(c))
            .find(|c| c.iter().any(|v| !v.is_zero()));
        let image_pt = ProjPoint::new(image.unwrap()).unwrap();
        assert_eq!(image_pt, y);
    }

    #[test]
    fn construction_at_cone_vertex_still_has_rank_one() {
        let cone = poly(&["x0", "x1", "x2", "x3"], "x1^3 + x2^3 + x3^3");
        let g = construct_rank_one_symmetrizer(&cone, &pt(&[1, 0, 0, 0])).unwrap();
        assert_eq!(g.rank(), 1);
        assert!(g.try_mul(&g).unwrap().is_zero());
    }

    #[test]
    fn construction_rejects_bad_points() {
        let fermat = fermat_cubic();
        // Smooth point: Hessian rank above 1.
        assert!(matches!(
            construct_rank_one_symmetrizer(&fermat, &pt(&[1, -1, 0, 0])).unwrap_err(),
            SingularError::RankTooHigh { rank: 2 }
        ));
        // Off-surface point.
        let e6 = e6_surface();
        assert!(matches!(
            construct_rank_one_symmetrizer(&e6, &pt(&[1, 1, 1, 1])).unwrap_err(),
            SingularError::RankTooHigh { .. } | SingularError::NotOnHypersurface
        ));
    }

    #[test]
    fn hyperplane_of_lines_is_x2_for_e6() {
        let e6 = e6_surface();
        let form = hyperplane_of_lines(&e6, &pt(&[1, 0, 0, 0])).unwrap();
        assert_eq!(form, MPoly::var(4, 2).unwrap());

        let sharp = poly(&["x0", "x1", "x2", "x3"], "x0*x2^2 + 2*x1^2*x2 + x3^3");
        let form = hyperplane_of_lines(&sharp, &pt(&[1, 0, 0, 0])).unwrap();
        assert_eq!(form, MPoly::var(4, 2).unwrap());

        assert!(matches!(
            hyperplane_of_lines(&fermat_cubic(), &pt(&[1, -1, 0, 0])).unwrap_err(),
            SingularError::NotAQuasiVertex
        ));
    }

    #[test]
    fn hyperplane_points_span_lines_inside_the_surface() {
        let e6 = e6_surface();
        let x = pt(&[1, 0, 0, 0]);
        // eta on the hyperplane x2 = 0 with P(eta) = 0.
        for eta in [pt(&[0, 1, 0, 0]), pt(&[1, 1, 0, 0]), pt(&[5, -3, 0, 0])] {
            assert!(line_in_hypersurface(&e6, &x, &eta).unwrap());
        }
        // A surface point off the hyperplane does not.
        let off = pt(&[1, 1, -1, 0]);
        assert_eq!(multiplicity_at(&e6, &off).unwrap(), 1);
        assert!(!line_in_hypersurface(&e6, &x, &off).unwrap());
    }

    #[test]
    fn square_line_on_e6_and_sharp_examples() {
        for expr in [
            "x0*x2^2 + x1^2*x2 + x3^3",
            "x0*x2^2 + 2*x1^2*x2 + x3^3",
            "x0*x2^3 + 3*x1^2*x2^2 + x3^4",
        ] {
            let p = poly(&["x0", "x1", "x2", "x3"], expr);
            let alg = solve_symmetrizer_algebra(&p).unwrap();
            let f = alg
                .radical()
                .unwrap()
                .basis
                .iter()
                .find(|f| !f.try_mul(f).unwrap().is_zero())
                .expect("an f with f^2 != 0")
                .clone();
            assert!(verify_power_image_line(&p, &f).unwrap(), "{expr}");
        }
    }

    #[test]
    fn quasi_vertices_on_conic_secant_line() {
        let conic = conic_threefold();
        // The line through (1:0:0:0:0) and (0:1:0:0:0) meets the conic
        // ab + bc + ca = 0 exactly at the two coordinate points.
        let count =
            quasi_vertices_on_line(&conic, &pt(&[1, 0, 0, 0, 0]), &pt(&[0, 1, 0, 0, 0])).unwrap();
        assert_eq!(count, 2);

        // A secant whose conic intersections are irrational: through
        // (1:1:1) and (1:-1:0) the parameter satisfies 3 - t^2 = 0, so no
        // rational quasi-vertex is counted.
        let count =
            quasi_vertices_on_line(&conic, &pt(&[1, 1, 1, 0, 0]), &pt(&[1, -1, 0, 0, 0])).unwrap();
        assert_eq!(count, 0);

        // A generic line in the ambient space of the Fermat cubic carries
        // none.
        let fermat = fermat_cubic();
        let count =
            quasi_vertices_on_line(&fermat, &pt(&[1, 0, 0, 0]), &pt(&[0, 1, 0, 0])).unwrap();
        assert_eq!(count, 0);

        assert!(matches!(
            quasi_vertices_on_line(&fermat, &pt(&[1, 0, 0, 0]), &pt(&[2, 0, 0, 0])).unwrap_err(),
            SingularError::SamePoint
        ));
    }
}
