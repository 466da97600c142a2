//! Projection of a link from a rational center, exact double point loci and
//! the genericity certificate.
//!
//! Every center is first moved to `(0:0:1:0)` by an orientation preserving
//! transform, after which projection is `(X:Y:Z:W) -> (X:Y:W)` and the fibers
//! are the lines parallel to the `z` axis. Double points of one component are
//! solved in `e = s + t`, `f = s t`; double points between two components in
//! the pair of parameters `(s, t)`.

mod system;

pub use system::{
    branch_determinant, double_point_system, infinity_involved, infinity_involved_pair,
    inter_component_system, pair_norm, projected_equations, symmetric_square, symmetric_sum,
    symmetrize, PLANE, PLANE_PAIRS,
};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    format_rational, rat, resultant_x, AlgebraicNumber, BiPoly, Rational, Sign, SolutionPoint,
    TriangularSystem, UPoly,
};
use crate::curve::{
    cross_minors, CurveError, Link, MoebiusReparam, ParameterForm, ProjectiveTransform,
    RationalSpaceCurve, ALL_PAIRS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("the zero vector is not a projective point")]
    ZeroCenter,
    #[error("center lies on component {component}")]
    CenterOnCurve { component: usize },
    #[error("center lies on a real line through conjugate imaginary singular points")]
    CenterOnSingularLine,
    #[error("degenerate elimination: {0}")]
    DegenerateElimination(String),
    #[error("tangential double point (e^2 - 4f = 0)")]
    TangentialPair,
    #[error("projection is not generic: {0}")]
    NonGeneric(String),
    #[error("no generic center found after {0} attempts")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A rational point of RP^3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCenter {
    coords: [Rational; 4],
}

impl ProjectionCenter {
    pub fn new(coords: [Rational; 4]) -> Result<Self, ProjectionError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(ProjectionError::ZeroCenter);
        }
        Ok(ProjectionCenter { coords })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self, ProjectionError> {
        Self::new(c.map(rat))
    }

    /// `(0:0:1:0)`, the point at infinity of the `z` axis.
    pub fn standard() -> Self {
        Self::from_ints([0, 0, 1, 0]).expect("nonzero")
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_on(&self, curve: &RationalSpaceCurve) -> bool {
        let c = &self.coords;
        if crate::curve::proportional(c, &curve.evaluate_at_infinity()) {
            return true;
        }
        let mut g = UPoly::zero();
        for (i, j) in ALL_PAIRS {
            g = g.gcd(&(&curve.coord(j).scale(&c[i]) - &curve.coord(i).scale(&c[j])));
        }
        !g.is_constant()
    }
}

impl std::fmt::Display for ProjectionCenter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(":"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocusKind {
    Crossing,
    Solitary,
    InterComponentCrossing,
}

/// A real double point of the projection.
///
/// For a single component (`components = (i, i)`) the point is `(e, f)` with
/// `f` the eliminant variable and `e = x_repr(f)`. Between components
/// `i < j` it is `(s, t)`, `t` on component `j` being the eliminant variable
/// and `s = x_repr(t)` on component `i`.
#[derive(Clone, Debug)]
pub struct DoublePointLocus {
    pub components: (usize, usize),
    pub kind: LocusKind,
    pub point: SolutionPoint,
}

impl DoublePointLocus {
    pub fn is_self(&self) -> bool {
        self.components.0 == self.components.1
    }

    /// `e` for a self locus, `s` for an inter-component one.
    pub fn first(&self) -> AlgebraicNumber {
        self.point.x_number()
    }

    /// `f` for a self locus, `t` for an inter-component one.
    pub fn second(&self) -> &AlgebraicNumber {
        &self.point.y
    }
}

/// Outcome of the exact genericity checks for one projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityCertificate {
    pub simple_roots: bool,
    pub no_triple_points: bool,
    pub no_tangential_pairs: bool,
    pub transversal_crossings: bool,
    pub no_infinity_parameters: bool,
    pub center_off_curve: bool,
    pub center_off_singular_lines: bool,
}

impl GenericityCertificate {
    fn failed() -> Self {
        GenericityCertificate {
            simple_roots: false,
            no_triple_points: false,
            no_tangential_pairs: false,
            transversal_crossings: false,
            no_infinity_parameters: false,
            center_off_curve: true,
            center_off_singular_lines: false,
        }
    }

    pub fn is_generic(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let flags = [
            (self.simple_roots, "simple-roots"),
            (self.no_triple_points, "no-triple-points"),
            (self.no_tangential_pairs, "no-tangential-pairs"),
            (self.transversal_crossings, "transversal-crossings"),
            (self.no_infinity_parameters, "no-infinity-parameters"),
            (self.center_off_curve, "center-off-curve"),
            (self.center_off_singular_lines, "center-off-singular-lines"),
        ];
        flags.iter().filter(|(ok, _)| !ok).map(|(_, n)| *n).collect()
    }
}

/// Everything known about one projection of a link.
#[derive(Clone, Debug)]
pub struct Projection {
    pub center: ProjectionCenter,
    /// Orientation preserving map sending the center to `(0:0:1:0)`.
    pub transform: ProjectiveTransform,
    /// Per component change of parameter (positive determinant) applied after
    /// the transform.
    pub charts: Vec<MoebiusReparam>,
    /// The transformed and reparametrized link; orientation flags unchanged.
    pub link: Link,
    pub self_systems: Vec<TriangularSystem>,
    pub cross_systems: Vec<((usize, usize), TriangularSystem)>,
    pub loci: Vec<DoublePointLocus>,
    pub certificate: GenericityCertificate,
}

impl Projection {
    /// Number of complex double points of the projection of component `i`.
    pub fn complex_double_points(&self, i: usize) -> usize {
        self.self_systems[i].complex_count()
    }

    pub fn is_generic(&self) -> bool {
        self.certificate.is_generic()
    }
}

/// The orientation preserving transform `T` with `T c = (0:0:1:0)`.
///
/// `attempt = 0` completes `c` with standard basis vectors; later attempts
/// use random integer columns, which moves the plane `W = 0` of the image.
pub fn normalizing_transform(center: &ProjectionCenter, attempt: u64) -> ProjectiveTransform {
    let c = center.coords().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(attempt);
    loop {
        let mut cols: Vec<[Rational; 4]> = Vec::new();
        let mut candidates: Vec<[Rational; 4]> = Vec::new();
        if attempt == 0 {
            for k in 0..4 {
                candidates.push(std::array::from_fn(|i| if i == k { Rational::one() } else { Rational::zero() }));
            }
        } else {
            for _ in 0..3 {
                candidates.push(std::array::from_fn(|_| rat(rng.gen_range(-3..=3))));
            }
        }
        for cand in candidates {
            if cols.len() == 3 {
                break;
            }
            let mut trial: Vec<Vec<Rational>> = cols.iter().map(|v| v.to_vec()).collect();
            trial.push(c.to_vec());
            trial.push(cand.to_vec());
            if rank(&trial) == trial.len() {
                cols.push(cand);
            }
        }
        if cols.len() < 3 {
            continue;
        }
        let mut all = [cols[0].clone(), cols[1].clone(), c.clone(), cols[2].clone()];
        let n = ProjectiveTransform::from_columns(all.clone()).expect("independent columns");
        if n.orientation() == Sign::Negative {
            all[0] = all[0].clone().map(|v| -v);
        }
        let n = ProjectiveTransform::from_columns(all).expect("independent columns");
        return n.inverse();
    }
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let mut r = 0;
    for c in 0..4 {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for k in c..4 {
                let v = &f * &a[r][k];
                a[i][k] -= v;
            }
        }
        r += 1;
    }
    r
}

/// `normalize_center(L, c)`: the link moved so that `c` becomes `(0:0:1:0)`,
/// together with the orientation preserving transform used.
pub fn normalize_center(
    link: &Link,
    center: &ProjectionCenter,
) -> Result<(Link, ProjectiveTransform), ProjectionError> {
    if let Some(i) = link.components().iter().position(|c| center.is_on(c)) {
        return Err(ProjectionError::CenterOnCurve { component: i });
    }
    let t = normalizing_transform(center, 0);
    Ok((link.transformed(&t), t))
}

const COMPLETIONS: u64 = 4;
const CHART_ATTEMPTS: u64 = 8;

/// A validated link ready to be projected from many centers.
#[derive(Clone, Debug)]
pub struct Projector {
    link: Link,
    singular: Vec<ParameterForm>,
}

impl Projector {
    pub fn new(link: &Link) -> Result<Self, CurveError> {
        let reports = link.validate()?;
        Ok(Projector {
            link: link.clone(),
            singular: reports.into_iter().map(|r| r.singular_parameters).collect(),
        })
    }

    pub fn link(&self) -> &Link {
        &self.link
    }

    /// Projects from `center`, retrying internally over changes of parameter
    /// and of the affine chart. The result carries the genericity certificate;
    /// loci are classified only when no tangential pair was found.
    pub fn project(&self, center: &ProjectionCenter) -> Result<Projection, ProjectionError> {
        if let Some(i) = self.link.components().iter().position(|c| center.is_on(c)) {
            return Err(ProjectionError::CenterOnCurve { component: i });
        }
        let n = self.link.len();
        let mut rng = ChaCha8Rng::seed_from_u64(0x7072_6f6a);
        let mut reason = String::from("no attempt made");
        for completion in 0..COMPLETIONS {
            let transform = normalizing_transform(center, completion);
            let normalized = self.link.transformed(&transform);
            'charts: for attempt in 0..=CHART_ATTEMPTS {
                let charts: Vec<MoebiusReparam> = (0..n)
                    .map(|_| if attempt == 0 { MoebiusReparam::identity() } else { MoebiusReparam::random(&mut rng, 4) })
                    .collect();
                let comps: Vec<RationalSpaceCurve> = normalized
                    .components()
                    .iter()
                    .zip(&charts)
                    .map(|(c, m)| c.reparametrized(m))
                    .collect();
                if comps.iter().any(infinity_involved) {
                    reason = "double point at parameter infinity".into();
                    continue;
                }
                let mut pairs = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if infinity_involved_pair(&comps[i], &comps[j]) {
                            reason = "inter-component double point at parameter infinity".into();
                            continue 'charts;
                        }
                        pairs.push((i, j));
                    }
                }
                let mut self_systems = Vec::new();
                for c in &comps {
                    match double_point_system(c) {
                        Ok(s) => self_systems.push(s),
                        Err(e) => {
                            reason = e.to_string();
                            continue 'charts;
                        }
                    }
                }
                let mut cross_systems = Vec::new();
                for &(i, j) in &pairs {
                    match inter_component_system(&comps[i], &comps[j]) {
                        Ok(s) => cross_systems.push(((i, j), s)),
                        Err(e) => {
                            reason = e.to_string();
                            continue 'charts;
                        }
                    }
                }
                // every preimage must lie in the affine chart W != 0
                let chart_ok = comps.iter().zip(&self_systems).all(|(c, s)| s.avoids(&symmetric_square(c.coord(3))))
                    && cross_systems.iter().all(|((i, j), s)| {
                        s.avoids(&system::st_product(comps[*i].coord(3), comps[*j].coord(3)))
                    });
                if !chart_ok {
                    reason = "double point on the plane at infinity of the chart".into();
                    break 'charts;
                }
                let link = Link::new(comps, self.link.orientations().map(|o| o.to_vec()))?;
                let singular: Vec<ParameterForm> =
                    self.singular.iter().zip(&charts).map(|(s, m)| s.pulled_back(m)).collect();
                return Ok(finish(center.clone(), transform, charts, link, self_systems, cross_systems, &singular));
            }
        }
        Err(ProjectionError::DegenerateElimination(reason))
    }

    /// `genericity_check(L, c)`; failures are reported as false flags.
    pub fn genericity_check(&self, center: &ProjectionCenter) -> GenericityCertificate {
        match self.project(center) {
            Ok(p) => p.certificate,
            Err(ProjectionError::CenterOnCurve { .. }) => GenericityCertificate {
                center_off_curve: false,
                ..GenericityCertificate::failed()
            },
            Err(_) => GenericityCertificate::failed(),
        }
    }

    /// Deterministic search for a generic integer center: points of
    /// `[-B, B]^4`, with `B` doubling after every round of failures.
    pub fn sample_generic_center(&self, seed: u64) -> Result<Projection, ProjectionError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bound = 2i64;
        let mut tries = 0;
        for _round in 0..CENTER_ROUNDS {
            for _ in 0..CENTERS_PER_ROUND {
                let c: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-bound..=bound));
                let Ok(center) = ProjectionCenter::from_ints(c) else { continue };
                tries += 1;
                if let Ok(p) = self.project(&center) {
                    if p.is_generic() {
                        return Ok(p);
                    }
                }
            }
            bound *= 2;
        }
        Err(ProjectionError::SamplingExhausted(tries))
    }
}

const CENTER_ROUNDS: usize = 5;
const CENTERS_PER_ROUND: usize = 8;

/// `genericity_check(L, c)` for a link that has not been validated yet.
pub fn genericity_check(link: &Link, center: &ProjectionCenter) -> Result<GenericityCertificate, CurveError> {
    Ok(Projector::new(link)?.genericity_check(center))
}

/// `sample_generic_center(L, seed)`.
pub fn sample_generic_center(link: &Link, seed: u64) -> Result<ProjectionCenter, ProjectionError> {
    Ok(Projector::new(link)?.sample_generic_center(seed)?.center)
}

fn finish(
    center: ProjectionCenter,
    transform: ProjectiveTransform,
    charts: Vec<MoebiusReparam>,
    link: Link,
    self_systems: Vec<TriangularSystem>,
    cross_systems: Vec<((usize, usize), TriangularSystem)>,
    singular: &[ParameterForm],
) -> Projection {
    let comps = link.components();
    let simple_roots = comps
        .iter()
        .zip(&self_systems)
        .all(|(c, s)| s.is_regular(&projected_equations(c)))
        && cross_systems
            .iter()
            .all(|((i, j), s)| s.is_regular(&cross_minors(&comps[*i], &comps[*j], &PLANE_PAIRS)));
    let disc = &BiPoly::x().pow(2) - &BiPoly::y().scale(&rat(4));
    let no_tangential_pairs = self_systems.iter().all(|s| s.avoids(&disc));
    let transversal_crossings = comps.iter().zip(&self_systems).all(|(c, s)| {
        let d = branch_determinant(c, c);
        s.avoids(&symmetrize(&(&d * &d.swap())))
    }) && cross_systems
        .iter()
        .all(|((i, j), s)| s.avoids(&branch_determinant(&comps[*i], &comps[*j])));
    let no_triple_points = distinct_images(comps, &self_systems, &cross_systems);

    let mut certificate = GenericityCertificate {
        simple_roots,
        no_triple_points,
        no_tangential_pairs,
        transversal_crossings,
        no_infinity_parameters: true,
        center_off_curve: true,
        center_off_singular_lines: true,
    };
    let loci = if no_tangential_pairs {
        let loci = classify(&self_systems, &cross_systems, &disc);
        certificate.center_off_singular_lines = loci
            .iter()
            .filter(|l| l.kind == LocusKind::Solitary)
            .all(|l| {
                let form = &singular[l.components.0];
                form.is_trivial() || !l.point.sign_of(&pair_norm(&form.poly)).is_zero()
            });
        loci
    } else {
        Vec::new()
    };
    Projection { center, transform, charts, link, self_systems, cross_systems, loci, certificate }
}

/// Classifies the real solutions: `sign(e^2 - 4f)` separates crossings from
/// solitary points; inter-component solutions are always crossings.
fn classify(
    self_systems: &[TriangularSystem],
    cross_systems: &[((usize, usize), TriangularSystem)],
    disc: &BiPoly,
) -> Vec<DoublePointLocus> {
    let mut out = Vec::new();
    for (i, sys) in self_systems.iter().enumerate() {
        for point in sys.real_points() {
            let kind = match point.sign_of(disc) {
                Sign::Positive => LocusKind::Crossing,
                Sign::Negative => LocusKind::Solitary,
                Sign::Zero => unreachable!("tangential pairs are excluded before classification"),
            };
            out.push(DoublePointLocus { components: (i, i), kind, point });
        }
    }
    for ((i, j), sys) in cross_systems {
        for point in sys.real_points() {
            out.push(DoublePointLocus { components: (*i, *j), kind: LocusKind::InterComponentCrossing, point });
        }
    }
    out.sort_by_key(|l| l.components);
    out
}

/// `classify_double_points`: the classified real loci of a projection, or
/// `TangentialPair` when some locus has `e^2 - 4f = 0`.
pub fn classify_double_points(p: &Projection) -> Result<&[DoublePointLocus], ProjectionError> {
    if !p.certificate.no_tangential_pairs {
        return Err(ProjectionError::TangentialPair);
    }
    Ok(&p.loci)
}

/// True when all double points, real and complex, have pairwise distinct
/// images. Images are compared through `x + lambda y` in the affine chart;
/// a few values of `lambda` are tried before reporting a coincidence.
fn distinct_images(
    comps: &[RationalSpaceCurve],
    self_systems: &[TriangularSystem],
    cross_systems: &[((usize, usize), TriangularSystem)],
) -> bool {
    // per part: (eliminant, image x, image y) as residues modulo the eliminant
    let mut images: Vec<(UPoly, UPoly, UPoly)> = Vec::new();
    let half = Rational::new(1.into(), 2.into());
    for (c, sys) in comps.iter().zip(self_systems) {
        let (x, y, w) = (c.coord(0), c.coord(1), c.coord(3));
        let nx = symmetric_sum(x, w).scale(&half);
        let ny = symmetric_sum(y, w).scale(&half);
        let dn = symmetric_square(w);
        for part in &sys.parts {
            let m = &part.eliminant;
            let Some(inv) = dn.substitute_x_mod(&part.x_repr, m).inverse_mod(m) else {
                return false;
            };
            let ix = (&nx.substitute_x_mod(&part.x_repr, m) * &inv).rem(m);
            let iy = (&ny.substitute_x_mod(&part.x_repr, m) * &inv).rem(m);
            images.push((m.clone(), ix, iy));
        }
    }
    for ((i, _), sys) in cross_systems {
        let c = &comps[*i];
        for part in &sys.parts {
            let m = &part.eliminant;
            let at = |p: &UPoly| BiPoly::from_x_poly(p).substitute_x_mod(&part.x_repr, m);
            let Some(inv) = at(c.coord(3)).inverse_mod(m) else {
                return false;
            };
            let ix = (&at(c.coord(0)) * &inv).rem(m);
            let iy = (&at(c.coord(1)) * &inv).rem(m);
            images.push((m.clone(), ix, iy));
        }
    }
    if images.is_empty() {
        return true;
    }
    for lambda in [0i64, 1, 3, 7, 19] {
        let mut q = UPoly::one();
        for (m, ix, iy) in &images {
            let h = (ix + &iy.scale(&rat(lambda))).rem(m);
            // Res_f(m(f), z - h(f)) = prod over roots of (z - h(root)), up to sign
            let z = &BiPoly::from_y_poly(&UPoly::x()) - &BiPoly::from_x_poly(&h);
            q = &q * &resultant_x(&BiPoly::from_x_poly(m), &z);
        }
        if q.is_squarefree() {
            return true;
        }
    }
    false
}
