//! Analysis reports, the theorem-check battery, pencil experiments, and
//! corpus aggregation.
//!
//! Reports are plain data with a stable JSON shape: fields are declared in
//! alphabetical order, rationals are serialized as `p/q` strings, and every
//! probe draws from a seeded deterministic stream, so identical inputs and
//! seed produce byte-identical output. Checks report `pass`, `fail`, or
//! `skipped` with a reason; a conditional check whose hypothesis a fixture
//! does not assert is skipped, never failed.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{
    self, apply_symmetrizer, is_symmetrizer_oracle, jacobian_span, radical_annihilator,
    random_combination, rank_one_locus, solve_symmetrizer_algebra, AlgebraError, Exactness,
    JacobianSpan, RankOneLocus, SymmetrizerAlgebra,
};
use crate::fixture::{Fixture, FixtureError, Hypothesis};
use crate::linalg::{nilpotency_index, Subspace};
use crate::rng::DetRng;
use crate::singular::{
    analyze_point, construct_rank_one_symmetrizer, hyperplane_of_lines, line_in_hypersurface,
    multiplicity_at, quasi_vertices_on_line, subspace_multiplicity_at_least, PointAnalysis,
    ProjPoint, SingularError,
};
use crate::{q, MPoly, QMatrix, Q};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug)]
pub enum ReportError {
    Fixture(FixtureError),
    Algebra(AlgebraError),
    Singular(SingularError),
    Incompatible(String),
    Io(String),
}

impl fmt::Display for ReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportError::Fixture(e) => write!(f, "{e}"),
            ReportError::Algebra(e) => write!(f, "{e}"),
            ReportError::Singular(e) => write!(f, "{e}"),
            ReportError::Incompatible(m) => write!(f, "{m}"),
            ReportError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for ReportError {}

impl From<FixtureError> for ReportError {
    fn from(e: FixtureError) -> Self {
        ReportError::Fixture(e)
    }
}

impl From<AlgebraError> for ReportError {
    fn from(e: AlgebraError) -> Self {
        ReportError::Algebra(e)
    }
}

impl From<SingularError> for ReportError {
    fn from(e: SingularError) -> Self {
        ReportError::Singular(e)
    }
}

/// Outcome of one theorem check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckOutcome {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub status: String,
}

impl CheckOutcome {
    fn pass() -> Self {
        CheckOutcome {
            reason: None,
            status: "pass".into(),
        }
    }

    fn pass_note(note: impl Into<String>) -> Self {
        CheckOutcome {
            reason: Some(note.into()),
            status: "pass".into(),
        }
    }

    fn fail(reason: impl Into<String>) -> Self {
        CheckOutcome {
            reason: Some(reason.into()),
            status: "fail".into(),
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        CheckOutcome {
            reason: Some(reason.into()),
            status: "skipped".into(),
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == "fail"
    }

    pub fn is_pass(&self) -> bool {
        self.status == "pass"
    }

    pub fn is_skipped(&self) -> bool {
        self.status == "skipped"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Dims {
    pub g_f: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_f_plus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_f_times: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub corank: usize,
    pub hessian_rank: usize,
    pub is_cone_vertex: bool,
    pub is_quasi_vertex: bool,
    pub multiplicity: u32,
    pub on_hypersurface: bool,
    pub point: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrrationalReport {
    pub count: usize,
    pub discriminant: String,
    /// Coefficients `[c, b, a]` of the parameter's minimal polynomial
    /// `a u^2 + b u + c`.
    pub minpoly: [String; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiVertexReport {
    pub exactness: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub irrational: Vec<IrrationalReport>,
    pub points: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub dims: Dims,
    pub is_cone: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_nilpotent_rank: Option<usize>,
    pub point_analyses: Vec<PointReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_vertices: Option<QuasiVertexReport>,
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sebastiani_thom: Option<bool>,
    pub seed: u64,
    pub source: String,
    pub theorem_checks: BTreeMap<String, CheckOutcome>,
}

impl AnalysisReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.theorem_checks
            .iter()
            .filter(|(_, o)| o.is_fail())
            .map(|(name, _)| name.as_str())
            .collect()
    }

    /// Exit-code contract: true iff every non-skipped check passes.
    pub fn all_non_skipped_pass(&self) -> bool {
        self.theorem_checks.values().all(|o| !o.is_fail())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text check table for the verify command.
    pub fn verify_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("fixture: {}\n", self.source));
        for (name, outcome) in &self.theorem_checks {
            match &outcome.reason {
                Some(reason) => out.push_str(&format!("{name}: {} ({reason})\n", outcome.status)),
                None => out.push_str(&format!("{name}: {}\n", outcome.status)),
            }
        }
        let passed = self.theorem_checks.values().filter(|o| o.is_pass()).count();
        let failed = self.theorem_checks.values().filter(|o| o.is_fail()).count();
        let skipped = self
            .theorem_checks
            .values()
            .filter(|o| o.is_skipped())
            .count();
        out.push_str(&format!(
            "summary: {passed} passed, {failed} failed, {skipped} skipped\n"
        ));
        out
    }
}

const CHECK_NAMES: &[&str] = &[
    "algebra_closure",
    "algebra_dim_bound",
    "basis_commutativity",
    "complement_not_nilpotent",
    "cube_zero",
    "declared_singular_lines",
    "fiber_invariance",
    "hyperplane_of_lines",
    "identity_membership",
    "nilpotent_dim_bound",
    "oracle_agreement",
    "power_multiplicity_probes",
    "quasi_vertex_correspondence",
    "quasi_vertex_line_multiplicity",
    "quasi_vertex_stabilized",
    "quasi_vertices_per_line",
    "radical_nilpotent",
    "rank_dim_inequality",
    "rank_le_one_multiplicity",
    "rank_n_forces_trivial_radical",
    "rank_one_annihilated",
    "square_line",
    "square_zero_image_multiplicity",
    "unique_multiplicity_point",
];

struct Ctx<'a> {
    fixture: &'a Fixture,
    poly: &'a MPoly,
    nvars: usize,
    degree: u32,
    alg: &'a SymmetrizerAlgebra,
    jac: &'a JacobianSpan,
    locus: &'a RankOneLocus,
    analyses: &'a [PointAnalysis],
    /// Union of candidate-scan and rank-one-image quasi-vertices.
    quasi_vertices: Vec<ProjPoint>,
}

impl<'a> Ctx<'a> {
    fn radical(&self) -> &[QMatrix] {
        &self.alg.radical().expect("non-cone").basis
    }
}

/// Analyzes a fixture: algebra dimensions, per-point records, quasi-vertex
/// enumeration, and the full theorem-check battery.
pub fn analyze_fixture(fixture: &Fixture, seed: u64) -> Result<AnalysisReport, ReportError> {
    let poly = &fixture.poly;
    let (nvars, degree) = algebra::validate_form(poly)?;
    let mut rng = DetRng::new(seed);

    let jac = jacobian_span(poly)?;
    let is_cone = jac.rank < nvars;
    let alg = solve_symmetrizer_algebra(poly)?;

    let analyses: Vec<PointAnalysis> = fixture
        .candidate_points
        .iter()
        .map(|x| analyze_point(poly, x))
        .collect::<Result<_, _>>()?;
    let point_analyses: Vec<PointReport> = analyses
        .iter()
        .map(|a| PointReport {
            corank: a.corank,
            hessian_rank: a.hessian_rank,
            is_cone_vertex: a.is_cone_vertex,
            is_quasi_vertex: a.is_quasi_vertex,
            multiplicity: a.multiplicity,
            on_hypersurface: a.on_hypersurface,
            point: a.point.to_string(),
        })
        .collect();

    if is_cone {
        let checks = CHECK_NAMES
            .iter()
            .map(|&name| (name.to_string(), CheckOutcome::skipped("cone input")))
            .collect();
        return Ok(AnalysisReport {
            dims: Dims {
                g_f: alg.dimension(),
                g_f_plus: None,
                g_f_times: None,
            },
            is_cone: true,
            max_nilpotent_rank: None,
            point_analyses,
            quasi_vertices: None,
            schema: SCHEMA_VERSION.into(),
            sebastiani_thom: None,
            seed,
            source: fixture.id.clone(),
            theorem_checks: checks,
        });
    }

    let locus = rank_one_locus(&alg, &mut rng)?;
    let max_nilpotent_rank = alg.max_nilpotent_rank(&mut rng);
    let radical_dim = alg.radical_dim().expect("non-cone");
    let semisimple_dim = alg.radical().expect("non-cone").semisimple_dim;
    debug_assert_eq!(alg.dimension(), radical_dim + semisimple_dim + 1);

    let mut quasi_vertices: Vec<ProjPoint> = Vec::new();
    for a in &analyses {
        if a.is_quasi_vertex && !quasi_vertices.contains(&a.point) {
            quasi_vertices.push(a.point.clone());
        }
    }
    for class in &locus.classes {
        let p = ProjPoint::new(class.image.clone()).expect("nonzero image");
        if !quasi_vertices.contains(&p) {
            quasi_vertices.push(p);
        }
    }
    quasi_vertices.sort();

    let ctx = Ctx {
        fixture,
        poly,
        nvars,
        degree,
        alg: &alg,
        jac: &jac,
        locus: &locus,
        analyses: &analyses,
        quasi_vertices,
    };

    let mut checks = BTreeMap::new();
    checks.insert(
        "identity_membership".into(),
        check_identity_membership(&ctx),
    );
    checks.insert(
        "basis_commutativity".into(),
        check_basis_commutativity(&ctx),
    );
    checks.insert("algebra_closure".into(), check_algebra_closure(&ctx));
    checks.insert("radical_nilpotent".into(), check_radical_nilpotent(&ctx));
    checks.insert(
        "complement_not_nilpotent".into(),
        check_complement_not_nilpotent(&ctx, &mut rng),
    );
    checks.insert(
        "oracle_agreement".into(),
        check_oracle_agreement(&ctx, &mut rng),
    );
    checks.insert("fiber_invariance".into(), check_fiber_invariance(&ctx));
    checks.insert(
        "rank_dim_inequality".into(),
        check_rank_dim_inequality(&ctx),
    );
    checks.insert(
        "quasi_vertex_correspondence".into(),
        check_correspondence(&ctx),
    );
    checks.insert("quasi_vertex_stabilized".into(), check_stabilized(&ctx));
    checks.insert(
        "rank_one_annihilated".into(),
        check_rank_one_annihilated(&ctx),
    );
    checks.insert(
        "rank_le_one_multiplicity".into(),
        check_rank_le_one_multiplicity(&ctx),
    );
    checks.insert(
        "square_zero_image_multiplicity".into(),
        check_square_zero_image_multiplicity(&ctx, &mut rng),
    );
    checks.insert(
        "power_multiplicity_probes".into(),
        check_power_multiplicity_probes(&ctx, &mut rng),
    );
    checks.insert(
        "quasi_vertex_line_multiplicity".into(),
        check_quasi_vertex_line_multiplicity(&ctx),
    );
    checks.insert(
        "quasi_vertices_per_line".into(),
        check_quasi_vertices_per_line(&ctx),
    );
    checks.insert(
        "hyperplane_of_lines".into(),
        check_hyperplane_of_lines(&ctx),
    );
    checks.insert(
        "unique_multiplicity_point".into(),
        check_unique_multiplicity_point(&ctx),
    );
    checks.insert(
        "nilpotent_dim_bound".into(),
        check_nilpotent_dim_bound(&ctx, max_nilpotent_rank),
    );
    checks.insert("algebra_dim_bound".into(), check_algebra_dim_bound(&ctx));
    checks.insert("cube_zero".into(), check_cube_zero(&ctx, &mut rng));
    checks.insert(
        "rank_n_forces_trivial_radical".into(),
        check_rank_n_forces_trivial_radical(&ctx),
    );
    checks.insert("square_line".into(), check_square_line(&ctx));
    checks.insert(
        "declared_singular_lines".into(),
        check_declared_singular_lines(&ctx),
    );
    debug_assert_eq!(checks.len(), CHECK_NAMES.len());

    let qv_report = QuasiVertexReport {
        exactness: locus.exactness.as_str().into(),
        irrational: locus
            .irrational
            .iter()
            .map(|irr| IrrationalReport {
                count: irr.count,
                discriminant: irr.discriminant.to_string(),
                minpoly: [
                    irr.minpoly[0].to_string(),
                    irr.minpoly[1].to_string(),
                    irr.minpoly[2].to_string(),
                ],
            })
            .collect(),
        points: ctx
            .quasi_vertices
            .iter()
            .map(ProjPoint::to_string)
            .collect(),
    };

    Ok(AnalysisReport {
        dims: Dims {
            g_f: alg.dimension(),
            g_f_plus: Some(radical_dim),
            g_f_times: Some(semisimple_dim),
        },
        is_cone: false,
        max_nilpotent_rank,
        point_analyses,
        quasi_vertices: Some(qv_report),
        schema: SCHEMA_VERSION.into(),
        sebastiani_thom: Some(semisimple_dim >= 1),
        seed,
        source: fixture.id.clone(),
        theorem_checks: checks,
    })
}

fn check_identity_membership(ctx: &Ctx) -> CheckOutcome {
    if ctx.alg.contains_identity() {
        CheckOutcome::pass()
    } else {
        CheckOutcome::fail("identity is not in the span of the basis")
    }
}

fn check_basis_commutativity(ctx: &Ctx) -> CheckOutcome {
    let basis = ctx.alg.basis();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let ab = a.try_mul(b).expect("square");
            let ba = b.try_mul(a).expect("square");
            if ab != ba {
                return CheckOutcome::fail("a pair of basis elements does not commute");
            }
        }
    }
    CheckOutcome::pass()
}

fn check_algebra_closure(ctx: &Ctx) -> CheckOutcome {
    let basis = ctx.alg.basis();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let ab = a.try_mul(b).expect("square");
            if !ctx.alg.contains(&ab) {
                return CheckOutcome::fail("a product of basis elements escapes the span");
            }
        }
    }
    CheckOutcome::pass()
}

fn check_radical_nilpotent(ctx: &Ctx) -> CheckOutcome {
    for f in ctx.radical() {
        match nilpotency_index(f) {
            Ok(Some(_)) => {}
            _ => return CheckOutcome::fail("a radical basis element is not nilpotent"),
        }
    }
    CheckOutcome::pass()
}

fn check_complement_not_nilpotent(ctx: &Ctx, rng: &mut DetRng) -> CheckOutcome {
    // Extend the radical basis to a basis of g_F; the added directions and
    // their random combinations must all be non-nilpotent.
    let n = ctx.nvars;
    let mut flats: Vec<Vec<Q>> = ctx.radical().iter().map(QMatrix::flatten).collect();
    let mut span = Subspace::from_spanning(n * n, &flats);
    let mut complement = Vec::new();
    for b in ctx.alg.basis() {
        let flat = b.flatten();
        if !span.contains(&flat) {
            complement.push(b.clone());
            flats.push(flat);
            span = Subspace::from_spanning(n * n, &flats);
        }
    }
    for c in &complement {
        if nilpotency_index(c).expect("square").is_some() {
            return CheckOutcome::fail("a complement basis element is nilpotent");
        }
    }
    for _ in 0..5 {
        if let Some(m) = random_combination(&complement, rng) {
            if nilpotency_index(&m).expect("square").is_some() {
                return CheckOutcome::fail("a random complement combination is nilpotent");
            }
        }
    }
    CheckOutcome::pass()
}

fn check_oracle_agreement(ctx: &Ctx, rng: &mut DetRng) -> CheckOutcome {
    for b in ctx.alg.basis() {
        match is_symmetrizer_oracle(ctx.poly, b) {
            Ok(true) => {}
            _ => return CheckOutcome::fail("a solver basis element fails the tensor oracle"),
        }
    }
    for _ in 0..5 {
        let m = QMatrix::from_fn(ctx.nvars, ctx.nvars, |_, _| rng.rational(3, 2));
        let oracle = match is_symmetrizer_oracle(ctx.poly, &m) {
            Ok(v) => v,
            Err(_) => return CheckOutcome::fail("oracle errored on a random matrix"),
        };
        if oracle != ctx.alg.contains(&m) {
            return CheckOutcome::fail("tensor oracle disagrees with span membership");
        }
    }
    CheckOutcome::pass()
}

fn check_fiber_invariance(ctx: &Ctx) -> CheckOutcome {
    let mut probes: Vec<QMatrix> = vec![QMatrix::identity(ctx.nvars).scale(&q(2))];
    for f in ctx.radical() {
        probes.push(QMatrix::identity(ctx.nvars).try_add(f).expect("same shape"));
    }
    for a in probes {
        if a.rank() != ctx.nvars {
            return CheckOutcome::fail("probe symmetrizer is not invertible");
        }
        let moved = match apply_symmetrizer(ctx.poly, &a) {
            Ok(m) => m,
            Err(e) => return CheckOutcome::fail(format!("probe is not a symmetrizer: {e}")),
        };
        let jac_moved = match jacobian_span(&moved) {
            Ok(j) => j,
            Err(e) => return CheckOutcome::fail(format!("moved form is degenerate: {e}")),
        };
        if jac_moved.row_space != ctx.jac.row_space {
            return CheckOutcome::fail(
                "Jacobian row space changed under an invertible symmetrizer",
            );
        }
    }
    CheckOutcome::pass()
}

fn check_rank_dim_inequality(ctx: &Ctx) -> CheckOutcome {
    let dim = ctx.alg.dimension();
    let rad_dim = ctx.radical().len();
    for g in ctx.radical() {
        let bound = ctx.nvars - g.rank() + rad_dim;
        if dim > bound {
            return CheckOutcome::fail(format!(
                "dim g_F = {dim} exceeds N - rank(g) + dim g_F^+ = {bound}"
            ));
        }
    }
    CheckOutcome::pass()
}

fn check_correspondence(ctx: &Ctx) -> CheckOutcome {
    // Algebra to geometry: every enumerated rank-one image is a
    // quasi-vertex, and distinct classes have distinct images.
    let mut images = Vec::new();
    for class in &ctx.locus.classes {
        let image = ProjPoint::new(class.image.clone()).expect("nonzero image");
        match analyze_point(ctx.poly, &image) {
            Ok(a) if a.is_quasi_vertex => {}
            _ => {
                return CheckOutcome::fail(format!("rank-one image {image} is not a quasi-vertex"))
            }
        }
        if images.contains(&image) {
            return CheckOutcome::fail("two rank-one classes share an image");
        }
        images.push(image);
    }
    // Geometry to algebra: every quasi-vertex among the candidates is hit
    // by a rank-one nilpotent symmetrizer. For a complete enumeration it
    // must already be listed; otherwise the kernel-extension construction
    // must produce a certified radical element with that image.
    for a in ctx.analyses.iter().filter(|a| a.is_quasi_vertex) {
        if images.contains(&a.point) {
            continue;
        }
        if ctx.locus.exactness == Exactness::Complete {
            return CheckOutcome::fail(format!(
                "complete enumeration missed quasi-vertex {}",
                a.point
            ));
        }
        let g = match construct_rank_one_symmetrizer(ctx.poly, &a.point) {
            Ok(g) => g,
            Err(e) => {
                return CheckOutcome::fail(format!(
                    "no rank-one symmetrizer with image {}: {e}",
                    a.point
                ))
            }
        };
        if ctx.alg.radical_contains(&g) != Some(true) {
            return CheckOutcome::fail(format!(
                "constructed symmetrizer at {} is outside the radical",
                a.point
            ));
        }
    }
    CheckOutcome::pass()
}

fn check_stabilized(ctx: &Ctx) -> CheckOutcome {
    for x in &ctx.quasi_vertices {
        for g in ctx.alg.basis() {
            let image = g.apply(x.coords()).expect("size");
            if image.iter().all(Zero::is_zero) {
                continue;
            }
            let moved = ProjPoint::new(image).expect("nonzero");
            if &moved != x {
                return CheckOutcome::fail(format!(
                    "basis element moves quasi-vertex {x} off its line"
                ));
            }
        }
    }
    CheckOutcome::pass()
}

fn check_rank_one_annihilated(ctx: &Ctx) -> CheckOutcome {
    for class in &ctx.locus.classes {
        for f in ctx.radical() {
            let prod = f.try_mul(&class.element).expect("square");
            if !prod.is_zero() {
                return CheckOutcome::fail("f * g != 0 for a rank-one g and radical f");
            }
        }
    }
    CheckOutcome::pass()
}

fn check_rank_le_one_multiplicity(ctx: &Ctx) -> CheckOutcome {
    for a in ctx.analyses {
        if a.on_hypersurface && a.hessian_rank <= 1 && a.multiplicity + 1 < ctx.degree {
            return CheckOutcome::fail(format!(
                "{} has Hessian rank {} but multiplicity {}",
                a.point, a.hessian_rank, a.multiplicity
            ));
        }
    }
    CheckOutcome::pass()
}

/// Deterministic family of square-zero radical elements: powers of basis
/// elements, the annihilator subspace, rank-one representatives, and seeded
/// random draws that happen to square to zero.
fn square_zero_probes(ctx: &Ctx, rng: &mut DetRng) -> Vec<QMatrix> {
    let mut probes: Vec<QMatrix> = Vec::new();
    fn push(m: QMatrix, probes: &mut Vec<QMatrix>) {
        if m.is_zero() || !m.try_mul(&m).expect("square").is_zero() {
            return;
        }
        if let Some(normalized) = algebra::normalize_projective_matrix(&m) {
            if !probes.contains(&normalized) {
                probes.push(normalized);
            }
        }
    }
    for b in ctx.radical() {
        let mut power = b.clone();
        loop {
            push(power.clone(), &mut probes);
            power = power.try_mul(b).expect("square");
            if power.is_zero() {
                break;
            }
        }
    }
    for w in radical_annihilator(ctx.radical()) {
        push(w, &mut probes);
    }
    for class in &ctx.locus.classes {
        push(class.element.clone(), &mut probes);
    }
    for _ in 0..10 {
        if let Some(m) = random_combination(ctx.radical(), rng) {
            push(m, &mut probes);
        }
    }
    probes
}

fn image_basis(m: &QMatrix) -> Vec<Vec<Q>> {
    let cols: Vec<Vec<Q>> = (0..m.cols()).map(|c| m.col_vec(c)).collect();
    let span = Subspace::from_spanning(m.rows(), &cols);
    span.basis().to_vec()
}

fn check_square_zero_image_multiplicity(ctx: &Ctx, rng: &mut DetRng) -> CheckOutcome {
    let target = ctx.degree - 1;
    let mut note = None;
    for g in square_zero_probes(ctx, rng) {
        let image = image_basis(&g);
        if image.is_empty() {
            continue;
        }
        match subspace_multiplicity_at_least(ctx.poly, &image, target) {
            Ok(true) => {}
            Ok(false) => {
                return CheckOutcome::fail(
                    "image of a square-zero radical element is not uniformly of multiplicity d-1",
                )
            }
            Err(e) => return CheckOutcome::fail(format!("{e}")),
        }
        // Exactness spot-check at rational sample points of the image.
        let mut samples: Vec<Vec<Q>> = image.clone();
        if image.len() >= 2 {
            let sum: Vec<Q> = image[0]
                .iter()
                .zip(&image[1])
                .map(|(a, b)| a.clone() + b.clone())
                .collect();
            samples.push(sum);
        }
        for s in samples {
            let Ok(point) = ProjPoint::new(s) else {
                continue;
            };
            let mult = match multiplicity_at(ctx.poly, &point) {
                Ok(m) => m,
                Err(e) => return CheckOutcome::fail(format!("{e}")),
            };
            if mult < target {
                return CheckOutcome::fail(format!(
                    "sample {point} on a square-zero image has multiplicity {mult} < {target}"
                ));
            }
            if mult > target {
                note = Some(format!(
                    "sample {point} has multiplicity {mult}, exceeding d-1 = {target}"
                ));
            }
        }
    }
    match note {
        Some(n) => CheckOutcome::pass_note(n),
        None => CheckOutcome::pass(),
    }
}

fn check_power_multiplicity_probes(ctx: &Ctx, rng: &mut DetRng) -> CheckOutcome {
    if ctx.radical().is_empty() {
        return CheckOutcome::pass_note("radical is zero; no probes to run");
    }
    let mut ran = 0;
    let mut attempts = 0;
    while ran < 100 && attempts < 2000 {
        attempts += 1;
        let Some(g) = random_combination(ctx.radical(), rng) else {
            continue;
        };
        let v: Vec<Q> = (0..ctx.nvars).map(|_| q(rng.int(3))).collect();
        let mut image = g.apply(&v).expect("size");
        if image.iter().all(Zero::is_zero) {
            continue;
        }
        let first_image = image.clone();
        // Least r with g^r v = 0; bounded by the nilpotency index.
        let mut r = 1;
        while !image.iter().all(Zero::is_zero) {
            image = g.apply(&image).expect("size");
            r += 1;
        }
        if r < 2 || r > ctx.degree as usize {
            continue;
        }
        let point = ProjPoint::new(first_image).expect("nonzero");
        let mult = match multiplicity_at(ctx.poly, &point) {
            Ok(m) => m,
            Err(e) => return CheckOutcome::fail(format!("{e}")),
        };
        let needed = ctx.degree + 1 - r as u32;
        if mult < needed {
            return CheckOutcome::fail(format!(
                "[g v] = {point} with g^{r} v = 0 has multiplicity {mult} < d - r + 1 = {needed}"
            ));
        }
        ran += 1;
    }
    if ran == 0 {
        return CheckOutcome::pass_note("no admissible (g, v, r) probes found");
    }
    CheckOutcome::pass_note(format!("{ran} probes"))
}

fn check_quasi_vertex_line_multiplicity(ctx: &Ctx) -> CheckOutcome {
    for x in &ctx.quasi_vertices {
        for a in ctx.analyses {
            if a.multiplicity < 2 || &a.point == x {
                continue;
            }
            let span = vec![x.coords().to_vec(), a.point.coords().to_vec()];
            match subspace_multiplicity_at_least(ctx.poly, &span, a.multiplicity) {
                Ok(true) => {}
                Ok(false) => {
                    return CheckOutcome::fail(format!(
                        "line through quasi-vertex {x} and {} drops below multiplicity {}",
                        a.point, a.multiplicity
                    ))
                }
                Err(e) => return CheckOutcome::fail(format!("{e}")),
            }
        }
    }
    CheckOutcome::pass()
}

fn check_quasi_vertices_per_line(ctx: &Ctx) -> CheckOutcome {
    let mut lines: Vec<(ProjPoint, ProjPoint)> = Vec::new();
    for (i, x) in ctx.quasi_vertices.iter().enumerate() {
        for y in &ctx.quasi_vertices[i + 1..] {
            lines.push((x.clone(), y.clone()));
        }
    }
    lines.extend(ctx.fixture.singular_lines.iter().cloned());
    for (x, y) in lines {
        if x == y {
            continue;
        }
        match quasi_vertices_on_line(ctx.poly, &x, &y) {
            Ok(count) if count <= 2 => {}
            Ok(count) => {
                return CheckOutcome::fail(format!(
                    "line through {x} and {y} carries {count} quasi-vertices"
                ))
            }
            Err(e) => return CheckOutcome::fail(format!("{e}")),
        }
    }
    CheckOutcome::pass()
}

fn check_hyperplane_of_lines(ctx: &Ctx) -> CheckOutcome {
    if ctx.nvars < 4 {
        return CheckOutcome::skipped("needs ambient dimension n >= 3");
    }
    for x in &ctx.quasi_vertices {
        let form = match hyperplane_of_lines(ctx.poly, x) {
            Ok(f) => f,
            Err(e) => return CheckOutcome::fail(format!("{e}")),
        };
        // Rational samples on the hyperplane section: candidate points plus
        // small combinations of the kernel basis.
        let kernel = match crate::singular::hessian_kernel_at(ctx.poly, x) {
            Ok(k) => k,
            Err(e) => return CheckOutcome::fail(format!("{e}")),
        };
        let mut raw_samples: Vec<Vec<Q>> = ctx
            .analyses
            .iter()
            .map(|a| a.point.coords().to_vec())
            .collect();
        raw_samples.extend(kernel.basis().iter().cloned());
        for (i, a) in kernel.basis().iter().enumerate() {
            for b in &kernel.basis()[i + 1..] {
                for c in [q(1), q(-1), q(2)] {
                    let combo: Vec<Q> = a
                        .iter()
                        .zip(b)
                        .map(|(u, v)| u.clone() + c.clone() * v.clone())
                        .collect();
                    raw_samples.push(combo);
                }
            }
        }
        let mut tested = 0;
        for s in raw_samples {
            if tested >= 6 {
                break;
            }
            let Ok(eta) = ProjPoint::new(s) else { continue };
            if &eta == x {
                continue;
            }
            let on_plane = form
                .evaluate(eta.coords())
                .map(|v| v.is_zero())
                .unwrap_or(false);
            let on_surface = ctx
                .poly
                .evaluate(eta.coords())
                .map(|v| v.is_zero())
                .unwrap_or(false);
            if !on_plane || !on_surface {
                continue;
            }
            match line_in_hypersurface(ctx.poly, x, &eta) {
                Ok(true) => tested += 1,
                Ok(false) => {
                    return CheckOutcome::fail(format!(
                        "hyperplane point {eta} does not span a line inside the hypersurface"
                    ))
                }
                Err(e) => return CheckOutcome::fail(format!("{e}")),
            }
        }
    }
    CheckOutcome::pass()
}

fn check_unique_multiplicity_point(ctx: &Ctx) -> CheckOutcome {
    if !ctx.fixture.asserts(Hypothesis::NoLineOfMultDMinus1) {
        return CheckOutcome::skipped("hypothesis no-line-of-mult-(d-1) not asserted");
    }
    let has_radical = !ctx.radical().is_empty();
    let has_qv = !ctx.quasi_vertices.is_empty();
    if has_radical != has_qv {
        return CheckOutcome::fail(format!(
            "g_F^+ nonzero is {has_radical} but quasi-vertex existence is {has_qv}"
        ));
    }
    if has_radical {
        if ctx.quasi_vertices.len() != 1 {
            return CheckOutcome::fail("more than one quasi-vertex under the no-line hypothesis");
        }
        let qv = &ctx.quasi_vertices[0];
        for a in ctx.analyses {
            if a.multiplicity == ctx.degree - 1 && &a.point != qv {
                return CheckOutcome::fail(format!(
                    "{} also has multiplicity d-1 alongside the quasi-vertex {qv}",
                    a.point
                ));
            }
        }
    }
    CheckOutcome::pass()
}

fn check_nilpotent_dim_bound(ctx: &Ctx, max_rank: Option<usize>) -> CheckOutcome {
    if !ctx.fixture.asserts(Hypothesis::NoLineOfMultDMinus1) {
        return CheckOutcome::skipped("hypothesis no-line-of-mult-(d-1) not asserted");
    }
    let rad_dim = ctx.radical().len();
    if rad_dim > 2 {
        return CheckOutcome::fail(format!("dim g_F^+ = {rad_dim} exceeds 2"));
    }
    if rad_dim > 0 {
        match max_rank {
            Some(r) if r == rad_dim => {}
            other => {
                return CheckOutcome::fail(format!(
                    "max nilpotent rank {other:?} differs from dim g_F^+ = {rad_dim}"
                ))
            }
        }
    }
    CheckOutcome::pass()
}

fn check_algebra_dim_bound(ctx: &Ctx) -> CheckOutcome {
    if !ctx.fixture.asserts(Hypothesis::NoLineOfMultDMinus1) {
        return CheckOutcome::skipped("hypothesis no-line-of-mult-(d-1) not asserted");
    }
    if ctx.alg.dimension() <= ctx.nvars {
        CheckOutcome::pass()
    } else {
        CheckOutcome::fail(format!(
            "dim g_F = {} exceeds N = {}",
            ctx.alg.dimension(),
            ctx.nvars
        ))
    }
}

fn check_cube_zero(ctx: &Ctx, rng: &mut DetRng) -> CheckOutcome {
    if !ctx.fixture.asserts(Hypothesis::FinitelyManyMultDMinus1) {
        return CheckOutcome::skipped("hypothesis finitely-many-mult-(d-1) not asserted");
    }
    let mut probes: Vec<QMatrix> = ctx.radical().to_vec();
    for _ in 0..10 {
        if let Some(m) = random_combination(ctx.radical(), rng) {
            probes.push(m);
        }
    }
    for f in probes {
        if !f.pow(3).expect("square").is_zero() {
            return CheckOutcome::fail("a radical element has nonzero cube");
        }
    }
    CheckOutcome::pass()
}

fn check_rank_n_forces_trivial_radical(ctx: &Ctx) -> CheckOutcome {
    let n = ctx.nvars - 1;
    let witness = ctx
        .analyses
        .iter()
        .find(|a| a.multiplicity == ctx.degree - 1 && a.hessian_rank == n);
    match witness {
        None => CheckOutcome::skipped("no candidate of multiplicity d-1 with full Hessian rank"),
        Some(a) => {
            if ctx.radical().is_empty() {
                CheckOutcome::pass()
            } else {
                CheckOutcome::fail(format!(
                    "{} has rank n yet g_F^+ has dimension {}",
                    a.point,
                    ctx.radical().len()
                ))
            }
        }
    }
}

fn check_square_line(ctx: &Ctx) -> CheckOutcome {
    if ctx.nvars != 4 {
        return CheckOutcome::skipped("needs a surface in P^3");
    }
    let f = ctx
        .radical()
        .iter()
        .find(|f| !f.try_mul(f).expect("square").is_zero());
    let Some(f) = f else {
        return CheckOutcome::skipped("no radical element with nonzero square");
    };
    match crate::singular::verify_power_image_line(ctx.poly, f) {
        Ok(true) => CheckOutcome::pass(),
        Ok(false) => {
            CheckOutcome::fail("hyperplane section at the image point is not d times a line")
        }
        Err(e) => CheckOutcome::fail(format!("{e}")),
    }
}

fn check_declared_singular_lines(ctx: &Ctx) -> CheckOutcome {
    for (x, y) in &ctx.fixture.singular_lines {
        let span = vec![x.coords().to_vec(), y.coords().to_vec()];
        match subspace_multiplicity_at_least(ctx.poly, &span, 2) {
            Ok(true) => {}
            Ok(false) => {
                return CheckOutcome::fail(format!(
                    "declared singular line {x}-{y} has a smooth point"
                ))
            }
            Err(e) => return CheckOutcome::fail(format!("{e}")),
        }
    }
    CheckOutcome::pass()
}

// ---------------------------------------------------------------------------
// Pencil experiment
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct PencilStep {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_g_f: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_g_f_plus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub t: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PencilReport {
    pub dims_along_pencil: Vec<PencilStep>,
    pub endpoints: [String; 2],
    pub samples: Vec<String>,
    pub schema: String,
    pub semicontinuity_ok: bool,
}

impl PencilReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Dimension of the nilpotent part along the pencil
/// `P_t = (1 - t) A + t B`, at `t = 0`, the given samples, and `t = 1`.
/// Cone fibers are skipped with a reason. Semicontinuity holds when the
/// special fiber `t = 0` dominates every sampled interior value.
pub fn pencil_experiment(
    fa: &Fixture,
    fb: &Fixture,
    samples: &[Q],
) -> Result<PencilReport, ReportError> {
    let (na, da) = algebra::validate_form(&fa.poly)?;
    let (nb, db) = algebra::validate_form(&fb.poly)?;
    if na != nb || da != db {
        return Err(ReportError::Incompatible(format!(
            "fixtures are incompatible: {na} vars degree {da} vs {nb} vars degree {db}"
        )));
    }
    let mut ts: Vec<Q> = vec![q(0)];
    ts.extend(samples.iter().cloned());
    ts.push(q(1));

    let mut steps = Vec::new();
    for t in &ts {
        let one_minus = q(1) - t.clone();
        let p_t = fa
            .poly
            .scale(&one_minus)
            .try_add(&fb.poly.scale(t))
            .map_err(AlgebraError::from)?;
        if p_t.homogeneous_degree() != Some(da) {
            steps.push(PencilStep {
                dim_g_f: None,
                dim_g_f_plus: None,
                skipped: Some("fiber degenerates to lower degree".into()),
                t: t.to_string(),
            });
            continue;
        }
        let jac = jacobian_span(&p_t)?;
        if jac.rank < na {
            steps.push(PencilStep {
                dim_g_f: None,
                dim_g_f_plus: None,
                skipped: Some("cone fiber".into()),
                t: t.to_string(),
            });
            continue;
        }
        let alg = solve_symmetrizer_algebra(&p_t)?;
        steps.push(PencilStep {
            dim_g_f: Some(alg.dimension()),
            dim_g_f_plus: alg.radical_dim(),
            skipped: None,
            t: t.to_string(),
        });
    }

    let special = steps.first().and_then(|s| s.dim_g_f_plus);
    let mut semicontinuity_ok = true;
    if let Some(special) = special {
        for step in &steps[1..steps.len() - 1] {
            if let Some(dim) = step.dim_g_f_plus {
                if dim > special {
                    semicontinuity_ok = false;
                }
            }
        }
    }

    Ok(PencilReport {
        dims_along_pencil: steps,
        endpoints: [fa.id.clone(), fb.id.clone()],
        samples: samples.iter().map(Q::to_string).collect(),
        schema: SCHEMA_VERSION.into(),
        semicontinuity_ok,
    })
}

// ---------------------------------------------------------------------------
// Corpus runs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CorpusRow {
    pub checks_failed: usize,
    pub checks_passed: usize,
    pub checks_skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_g_f: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_g_f_plus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_g_f_times: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exactness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_cone: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_nilpotent_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_vertices: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sebastiani_thom: Option<bool>,
    pub source: String,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub rows: Vec<CorpusRow>,
    pub schema: String,
    pub seed: u64,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "source,status,is_cone,dim_g_f,dim_g_f_plus,dim_g_f_times,max_nilpotent_rank,\
             sebastiani_thom,exactness,quasi_vertices,checks_passed,checks_failed,checks_skipped,error\n",
        );
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        for r in &self.rows {
            let qv = r
                .quasi_vertices
                .as_ref()
                .map(|pts| pts.join(";"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.source,
                r.status,
                opt(&r.is_cone),
                opt(&r.dim_g_f),
                opt(&r.dim_g_f_plus),
                opt(&r.dim_g_f_times),
                opt(&r.max_nilpotent_rank),
                opt(&r.sebastiani_thom),
                opt(&r.exactness),
                qv,
                r.checks_passed,
                r.checks_failed,
                r.checks_skipped,
                opt(&r.error),
            ));
        }
        out
    }

    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.status == "ok")
    }
}

/// Analyzes every `*.fix` file in a directory, in file-name order.
/// Unreadable or failing fixtures become error rows rather than aborting
/// the run.
pub fn run_corpus(dir: &Path, seed: u64) -> Result<CorpusReport, ReportError> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| ReportError::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "fix"))
        .collect();
    paths.sort();

    let mut rows = Vec::new();
    for path in paths {
        let source = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let row = match crate::fixture::load_fixture(&path)
            .map_err(ReportError::from)
            .and_then(|fx| analyze_fixture(&fx, seed))
        {
            Ok(report) => {
                let failed = report.failed_checks().len();
                let passed = report
                    .theorem_checks
                    .values()
                    .filter(|o| o.is_pass())
                    .count();
                let skipped = report
                    .theorem_checks
                    .values()
                    .filter(|o| o.is_skipped())
                    .count();
                CorpusRow {
                    checks_failed: failed,
                    checks_passed: passed,
                    checks_skipped: skipped,
                    dim_g_f: Some(report.dims.g_f),
                    dim_g_f_plus: report.dims.g_f_plus,
                    dim_g_f_times: report.dims.g_f_times,
                    error: None,
                    exactness: report.quasi_vertices.as_ref().map(|c| c.exactness.clone()),
                    is_cone: Some(report.is_cone),
                    max_nilpotent_rank: report.max_nilpotent_rank,
                    quasi_vertices: report.quasi_vertices.as_ref().map(|c| c.points.clone()),
                    sebastiani_thom: report.sebastiani_thom,
                    source: report.source.clone(),
                    status: if failed == 0 {
                        "ok".into()
                    } else {
                        "check-failures".into()
                    },
                }
            }
            Err(e) => CorpusRow {
                checks_failed: 0,
                checks_passed: 0,
                checks_skipped: 0,
                dim_g_f: None,
                dim_g_f_plus: None,
                dim_g_f_times: None,
                error: Some(e.to_string()),
                exactness: None,
                is_cone: None,
                max_nilpotent_rank: None,
                quasi_vertices: None,
                sebastiani_thom: None,
                source,
                status: "error".into(),
            },
        };
        rows.push(row);
    }
    Ok(CorpusReport {
        rows,
        schema: SCHEMA_VERSION.into(),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::parse_fixture;
    use crate::rng::DEFAULT_SEED;

    fn fixtures_dir() -> std::path::PathBuf {
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
    }

    fn load(name: &str) -> Fixture {
        crate::fixture::load_fixture(&fixtures_dir().join(name)).unwrap()
    }

    #[test]
    fn sharp_example_report() {
        let report = analyze_fixture(&load("e-sharp-d3-n3.fix"), DEFAULT_SEED).unwrap();
        assert!(!report.is_cone);
        assert_eq!(report.dims.g_f, 4);
        assert_eq!(report.dims.g_f_plus, Some(2));
        assert_eq!(report.dims.g_f_times, Some(1));
        assert_eq!(report.max_nilpotent_rank, Some(2));
        assert_eq!(report.sebastiani_thom, Some(true));
        let qv = report.quasi_vertices.as_ref().unwrap();
        assert_eq!(qv.exactness, "complete");
        assert_eq!(qv.points, vec!["(1:0:0:0)".to_string()]);
        assert!(
            report.all_non_skipped_pass(),
            "failures: {:?}",
            report.failed_checks()
        );
    }

    #[test]
    fn threefold_report_skips_gated_checks() {
        let report = analyze_fixture(&load("e-k-gt-1.fix"), DEFAULT_SEED).unwrap();
        assert_eq!(report.dims.g_f_plus, Some(3));
        let checks = &report.theorem_checks;
        assert!(checks["nilpotent_dim_bound"].is_skipped());
        assert!(checks["algebra_dim_bound"].is_skipped());
        assert!(checks["cube_zero"].is_skipped());
        assert!(checks["unique_multiplicity_point"].is_skipped());
        assert!(
            report.all_non_skipped_pass(),
            "failures: {:?}",
            report.failed_checks()
        );
    }

    #[test]
    fn cayley_has_trivial_nilpotent_part() {
        let report = analyze_fixture(&load("cayley-nodal.fix"), DEFAULT_SEED).unwrap();
        assert_eq!(report.dims.g_f_plus, Some(0));
        assert!(report.theorem_checks["rank_n_forces_trivial_radical"].is_pass());
        assert!(
            report.all_non_skipped_pass(),
            "failures: {:?}",
            report.failed_checks()
        );
    }

    #[test]
    fn cone_report_has_dims_only_and_skipped_checks() {
        let report = analyze_fixture(&load("cone-cubic.fix"), DEFAULT_SEED).unwrap();
        assert!(report.is_cone);
        assert!(report.dims.g_f_plus.is_none());
        assert!(report.quasi_vertices.is_none());
        assert!(report.sebastiani_thom.is_none());
        assert!(report.theorem_checks.values().all(|o| o.is_skipped()));
        assert!(report.all_non_skipped_pass());
    }

    #[test]
    fn pencil_between_identical_fixtures_is_constant() {
        let fx = load("e-sharp-d3-n3.fix");
        let report = pencil_experiment(&fx, &fx, &[crate::qr(1, 2)]).unwrap();
        assert!(report.semicontinuity_ok);
        for step in &report.dims_along_pencil {
            assert_eq!(step.dim_g_f_plus, Some(2));
        }
    }

    #[test]
    fn pencil_rejects_incompatible_fixtures() {
        let a = load("e-sharp-d3-n3.fix");
        let b = load("e-k-gt-1.fix");
        assert!(matches!(
            pencil_experiment(&a, &b, &[]).unwrap_err(),
            ReportError::Incompatible(_)
        ));
    }

    #[test]
    fn json_fields_are_alphabetical() {
        let report = analyze_fixture(&load("fermat-cubic.fix"), DEFAULT_SEED).unwrap();
        let json = report.to_json();
        let dims_pos = json.find("\"dims\"").unwrap();
        let cone_pos = json.find("\"is_cone\"").unwrap();
        let schema_pos = json.find("\"schema\"").unwrap();
        let source_pos = json.find("\"source\"").unwrap();
        let checks_pos = json.find("\"theorem_checks\"").unwrap();
        assert!(dims_pos < cone_pos && cone_pos < schema_pos);
        assert!(schema_pos < source_pos && source_pos < checks_pos);
    }

    #[test]
    fn empty_corpus_directory() {
        let dir = std::env::temp_dir().join("symmetrizer-empty-corpus");
        let _ = std::fs::create_dir_all(&dir);
        let report = run_corpus(&dir, DEFAULT_SEED).unwrap();
        assert!(report.rows.is_empty());
        assert!(report.all_ok());
    }

    #[test]
    fn unreadable_fixture_becomes_error_row() {
        let dir = std::env::temp_dir().join("symmetrizer-bad-corpus");
        let _ = std::fs::create_dir_all(&dir);
        std::fs::write(dir.join("broken.fix"), "vars: x0 x1 x2\nx0 + oops^2").unwrap();
        let report = run_corpus(&dir, DEFAULT_SEED).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].status, "error");
        assert!(!report.all_ok());
    }

    #[test]
    fn fixture_expression_roundtrip_is_canonical() {
        // render(parse(s)) is a fixed point for every shipped fixture.
        let dir = fixtures_dir();
        let mut seen = 0;
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().is_none_or(|e| e != "fix") {
                continue;
            }
            let fx = crate::fixture::load_fixture(&path).unwrap();
            let rendered = crate::parse::render_polynomial(&fx.poly, &fx.variables).unwrap();
            let reparsed = crate::parse::parse_polynomial(&crate::parse::PolySource {
                variables: fx.variables.clone(),
                expression: rendered.clone(),
                declared_degree: fx.declared_degree,
            })
            .unwrap();
            assert_eq!(reparsed, fx.poly, "{}", path.display());
            assert_eq!(
                crate::parse::render_polynomial(&reparsed, &fx.variables).unwrap(),
                rendered
            );
            seen += 1;
        }
        assert!(seen >= 10, "fixture corpus went missing");
    }

    #[test]
    fn analysis_is_deterministic_for_fixed_seed() {
        let fx = load("e-k-gt-1.fix");
        let a = analyze_fixture(&fx, 99).unwrap().to_json();
        let b = analyze_fixture(&fx, 99).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn inline_fixture_analysis() {
        let fx = parse_fixture(
            "vars: x0 x1 x2 x3\ndegree: 3\ncandidate_points: (1:0:0:0)\n\
             hypothesis: no-line-of-mult-(d-1)\nx0*x2^2 + x1^2*x2 + x3^3",
            "inline-e6",
        )
        .unwrap();
        let report = analyze_fixture(&fx, DEFAULT_SEED).unwrap();
        assert_eq!(report.dims.g_f_plus, Some(2));
        assert!(
            report.all_non_skipped_pass(),
            "failures: {:?}",
            report.failed_checks()
        );
    }
}
