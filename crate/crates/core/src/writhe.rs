//! Local writhe signs, diagrams and the encomplexed writhe.
//!
//! All signs are computed on the normalized projection, where the center is
//! `(0:0:1:0)`, the fibers are parallel to the `z` axis and every double point
//! lies in the affine chart `W != 0` with its standard orientation.

use std::cmp::Ordering;

use thiserror::Error;

use crate::algebra::{rat, ratio, BiPoly, Complex, PointRing, Quad, Rational, Sign, UPoly};
use crate::curve::{CurveError, Link, ProjectiveTransform, RationalSpaceCurve};
use crate::projection::{
    DoublePointLocus, LocusKind, Projection, ProjectionCenter, ProjectionError, Projector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WritheError {
    #[error("local writhe determinant vanished; the genericity certificate is stale")]
    ZeroDeterminant,
    #[error("the link carries no orientation flags")]
    MissingOrientation,
    #[error("locus of kind {0:?} passed to the wrong sign routine")]
    WrongLocusKind(LocusKind),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

impl From<CurveError> for WritheError {
    fn from(e: CurveError) -> Self {
        WritheError::Projection(ProjectionError::Curve(e))
    }
}

/// Local writhe of a real crossing.
///
/// `link` is the normalized link of the projection. With `swap` the two
/// preimages are taken in the opposite order; the result does not change.
pub fn crossing_sign(link: &Link, locus: &DoublePointLocus, swap: bool) -> Result<i8, WritheError> {
    let (i, j) = locus.components;
    let (ring, s, t) = crossing_preimages(locus)?;
    let (mut a, mut b) = ((link.component(i), s), (link.component(j), t));
    if swap {
        std::mem::swap(&mut a, &mut b);
    }
    let (pa, pb) = (values(&ring, a.0, &a.1), values(&ring, b.0, &b.1));
    let v = velocity(&ring, &pa);
    let w = velocity(&ring, &pb);
    // homogeneous chord: (b - a) W(s) W(t)
    let l: Vec<Quad> = (0..3)
        .map(|k| ring.sub(&ring.mul(&pb.0[k], &pa.0[3]), &ring.mul(&pa.0[k], &pb.0[3])))
        .collect();
    let det = det3(&ring, [&v, &l, &w]);
    let ww = ring.mul(&pa.0[3], &pb.0[3]);
    let sign = ring.sign_at(&locus.point.y, &det).mul(ring.sign_at(&locus.point.y, &ww));
    if sign.is_zero() {
        return Err(WritheError::ZeroDeterminant);
    }
    Ok(sign.to_i32() as i8 * link.orientation(i) * link.orientation(j))
}

/// Exact comparison of the affine heights of the two preimages of a crossing:
/// positive when the second preimage (`t`, or `(e + w)/2`) lies above.
pub fn crossing_height_order(link: &Link, locus: &DoublePointLocus) -> Result<Sign, WritheError> {
    let (i, j) = locus.components;
    let (ring, s, t) = crossing_preimages(locus)?;
    let pa = values(&ring, link.component(i), &s);
    let pb = values(&ring, link.component(j), &t);
    let lz = ring.sub(&ring.mul(&pb.0[2], &pa.0[3]), &ring.mul(&pa.0[2], &pb.0[3]));
    let ww = ring.mul(&pa.0[3], &pb.0[3]);
    Ok(ring.sign_at(&locus.point.y, &lz).mul(ring.sign_at(&locus.point.y, &ww)))
}

/// The residue ring at a crossing and its two real preimage parameters.
fn crossing_preimages(locus: &DoublePointLocus) -> Result<(PointRing, Quad, Quad), WritheError> {
    match locus.kind {
        LocusKind::Crossing => {
            let ring = locus.point.ring(&(&BiPoly::x().pow(2) - &BiPoly::y().scale(&rat(4))));
            let e = locus.point.x_in(&ring);
            let w = ring.omega();
            let half = ratio(1, 2);
            let s = ring.scale(&ring.sub(&e, &w), &half);
            let t = ring.scale(&ring.add(&e, &w), &half);
            Ok((ring, s, t))
        }
        LocusKind::InterComponentCrossing => {
            let ring = locus.point.ring(&BiPoly::constant(rat(1)));
            let (s, t) = (locus.point.x_in(&ring), locus.point.y_in(&ring));
            Ok((ring, s, t))
        }
        LocusKind::Solitary => Err(WritheError::WrongLocusKind(locus.kind)),
    }
}

/// Coordinates and their derivatives at a point of the ring.
struct Jet([Quad; 4], [Quad; 4]);

fn values(ring: &PointRing, c: &RationalSpaceCurve, t: &Quad) -> Jet {
    let d = c.derivatives();
    Jet(
        std::array::from_fn(|k| ring.eval(c.coord(k), t)),
        std::array::from_fn(|k| ring.eval(&d[k], t)),
    )
}

/// `W P' - W' P` for `x, y, z`: the affine velocity times `W^2`.
fn velocity(ring: &PointRing, p: &Jet) -> Vec<Quad> {
    (0..3)
        .map(|k| ring.sub(&ring.mul(&p.0[3], &p.1[k]), &ring.mul(&p.1[3], &p.0[k])))
        .collect()
}

fn det3(ring: &PointRing, r: [&Vec<Quad>; 3]) -> Quad {
    let m = |j: usize, k: usize| ring.sub(&ring.mul(&r[1][j], &r[2][k]), &ring.mul(&r[1][k], &r[2][j]));
    let t0 = ring.mul(&r[0][0], &m(1, 2));
    let t1 = ring.mul(&r[0][1], &m(0, 2));
    let t2 = ring.mul(&r[0][2], &m(0, 1));
    ring.add(&ring.sub(&t0, &t1), &t2)
}

/// Local writhe of a solitary double point of component `curve`.
///
/// The preimage with `Im z > 0` is used, which orients the real fiber along
/// `+z`. With `conjugate` the other preimage is used instead, together with
/// the opposite fiber orientation; the result does not change.
pub fn solitary_sign(curve: &RationalSpaceCurve, locus: &DoublePointLocus, conjugate: bool) -> Result<i8, WritheError> {
    if locus.kind != LocusKind::Solitary {
        return Err(WritheError::WrongLocusKind(locus.kind));
    }
    let x = &BiPoly::x();
    let ring = locus.point.ring(&(&BiPoly::y().scale(&rat(4)) - &x.pow(2)));
    let y0 = &locus.point.y;
    let half = ratio(1, 2);
    let re = ring.scale(&locus.point.x_in(&ring), &half);
    let im = ring.scale(&ring.omega(), &half);
    let t0 = ring.complex(re.clone(), im.clone());
    let kappa = fiber_side(&ring, curve, &t0);
    let sk = ring.sign_at(y0, &kappa);
    // the preimage with Im z > 0, or its conjugate when asked to
    let use_t0 = (sk == Sign::Positive) != conjugate;
    let ta = if use_t0 { t0 } else { ring.complex(re, ring.neg(&im)) };
    let side = ring.sign_at(y0, &fiber_side(&ring, curve, &ta));

    let d = curve.derivatives();
    let at = |p: &UPoly| ring.ceval(p, &ta);
    let (w, dw) = (at(curve.coord(3)), at(&d[3]));
    let u: Vec<Complex> = (0..2)
        .map(|k| ring.csub(&ring.cmul(&at(&d[k]), &w), &ring.cmul(&at(curve.coord(k)), &dw)))
        .collect();
    let det = plane_determinant(&ring, &u[0], &u[1]);
    let sigma = ring.sign_at(y0, &det);
    if sigma.is_zero() || side.is_zero() {
        return Err(WritheError::ZeroDeterminant);
    }
    Ok(sigma.mul(side).to_i32() as i8)
}

/// `Im(Z conj W)`: its sign is the sign of `Im z` at the preimage.
fn fiber_side(ring: &PointRing, curve: &RationalSpaceCurve, t: &Complex) -> Quad {
    let z = ring.ceval(curve.coord(2), t);
    let w = ring.ceval(curve.coord(3), t);
    ring.sub(&ring.mul(&z.im, &w.re), &ring.mul(&z.re, &w.im))
}

/// The determinant with rows `u`, `i u`, `(1,0,0,0)`, `(0,0,1,0)` in the real
/// coordinates `(Re u1, Im u1, Re u2, Im u2)`; it expands to `ad - bc`.
fn plane_determinant(ring: &PointRing, u1: &Complex, u2: &Complex) -> Quad {
    let (a, b, c, d) = (&u1.re, &u1.im, &u2.re, &u2.im);
    ring.sub(&ring.mul(a, d), &ring.mul(b, c))
}

/// A double point with its local writhe.
#[derive(Clone, Debug)]
pub struct SignedLocus {
    pub locus: DoublePointLocus,
    pub sign: i8,
}

/// A signed generic diagram of a link.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub center: ProjectionCenter,
    pub transform: ProjectiveTransform,
    pub orientations: Option<Vec<i8>>,
    pub components: usize,
    pub loci: Vec<SignedLocus>,
    pub projection: Projection,
}

impl Diagram {
    pub fn is_oriented(&self) -> bool {
        self.orientations.is_some()
    }

    pub fn count(&self, kind: LocusKind) -> usize {
        self.loci.iter().filter(|l| l.locus.kind == kind).count()
    }

    pub fn signs(&self, kind: LocusKind) -> Vec<i8> {
        self.loci.iter().filter(|l| l.locus.kind == kind).map(|l| l.sign).collect()
    }
}

/// Signs every locus of a generic projection.
pub fn diagram_from_projection(projection: Projection) -> Result<Diagram, WritheError> {
    if !projection.is_generic() {
        if !projection.certificate.center_off_singular_lines {
            return Err(ProjectionError::CenterOnSingularLine.into());
        }
        return Err(ProjectionError::NonGeneric(projection.certificate.failures().join(", ")).into());
    }
    let link = &projection.link;
    let mut loci = projection
        .loci
        .iter()
        .map(|l| {
            let sign = match l.kind {
                LocusKind::Solitary => solitary_sign(link.component(l.components.0), l, false)?,
                _ => crossing_sign(link, l, false)?,
            };
            Ok(SignedLocus { locus: l.clone(), sign })
        })
        .collect::<Result<Vec<_>, WritheError>>()?;
    loci.sort_by(|a, b| {
        a.locus
            .components
            .cmp(&b.locus.components)
            .then_with(|| a.locus.point.y.cmp_exact(&b.locus.point.y))
            .then_with(|| a.locus.first().cmp_exact(&b.locus.first()))
            .then(Ordering::Equal)
    });
    Ok(Diagram {
        center: projection.center.clone(),
        transform: projection.transform.clone(),
        orientations: link.orientations().map(|o| o.to_vec()),
        components: link.len(),
        loci,
        projection,
    })
}

/// `build_diagram(L, c)`.
pub fn build_diagram(link: &Link, center: &ProjectionCenter) -> Result<Diagram, WritheError> {
    let projector = Projector::new(link)?;
    diagram_from_projection(projector.project(center)?)
}

/// Sum over solitary points and crossings of a single component.
pub fn writhe_unoriented(diagram: &Diagram) -> i64 {
    diagram
        .loci
        .iter()
        .filter(|l| l.locus.is_self())
        .map(|l| i64::from(l.sign))
        .sum()
}

/// Sum over all loci, inter-component crossings included.
pub fn writhe_oriented(diagram: &Diagram) -> Result<i64, WritheError> {
    if !diagram.is_oriented() {
        return Err(WritheError::MissingOrientation);
    }
    Ok(diagram.loci.iter().map(|l| i64::from(l.sign)).sum())
}

/// Half sums of inter-component crossing signs; symmetric, zero diagonal.
pub fn linking_matrix(diagram: &Diagram) -> Result<Vec<Vec<Rational>>, WritheError> {
    if !diagram.is_oriented() {
        return Err(WritheError::MissingOrientation);
    }
    let n = diagram.components;
    let mut twice = vec![vec![0i64; n]; n];
    for l in diagram.loci.iter().filter(|l| !l.locus.is_self()) {
        let (i, j) = l.locus.components;
        twice[i][j] += i64::from(l.sign);
        twice[j][i] += i64::from(l.sign);
    }
    Ok(twice
        .into_iter()
        .map(|row| row.into_iter().map(|v| ratio(v, 2)).collect())
        .collect())
}

/// Everything computed from one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WritheReport {
    pub unoriented: i64,
    pub oriented: Option<i64>,
    pub linking: Option<Vec<Vec<Rational>>>,
    pub crossings: Vec<i8>,
    pub solitary: Vec<i8>,
    pub inter_component: Vec<((usize, usize), i8)>,
}

impl WritheReport {
    pub fn from_diagram(diagram: &Diagram) -> Self {
        let oriented = writhe_oriented(diagram).ok();
        let linking = linking_matrix(diagram).ok();
        WritheReport {
            unoriented: writhe_unoriented(diagram),
            oriented,
            linking,
            crossings: diagram.signs(LocusKind::Crossing),
            solitary: diagram.signs(LocusKind::Solitary),
            inter_component: diagram
                .loci
                .iter()
                .filter(|l| l.locus.kind == LocusKind::InterComponentCrossing)
                .map(|l| (l.locus.components, l.sign))
                .collect(),
        }
    }

    /// `"Cw = -1; 1 crossing (-1); 0 solitary"`.
    pub fn summary(&self) -> String {
        if self.crossings.is_empty() && self.solitary.is_empty() && self.inter_component.is_empty() {
            return format!("Cw = {}; empty diagram", self.unoriented);
        }
        let list = |v: &[i8]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
        let part = |n: usize, one: &str, many: &str, v: &[i8]| match n {
            0 => format!("0 {many}"),
            1 => format!("1 {one} ({})", list(v)),
            _ => format!("{n} {many} ({})", list(v)),
        };
        let mut s = format!(
            "Cw = {}; {}; {}",
            self.unoriented,
            part(self.crossings.len(), "crossing", "crossings", &self.crossings),
            part(self.solitary.len(), "solitary", "solitary", &self.solitary),
        );
        if !self.inter_component.is_empty() {
            let v: Vec<i8> = self.inter_component.iter().map(|(_, s)| *s).collect();
            s.push_str(&format!("; {}", part(v.len(), "inter-component crossing", "inter-component crossings", &v)));
        }
        s
    }
}

/// Diagram and report for `link` seen from `center`.
pub fn compute_writhe(link: &Link, center: &ProjectionCenter) -> Result<(Diagram, WritheReport), WritheError> {
    let d = build_diagram(link, center)?;
    let r = WritheReport::from_diagram(&d);
    Ok((d, r))
}
