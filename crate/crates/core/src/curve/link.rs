use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    cross_minors, proportional, CurveError, MoebiusReparam, ProjectiveTransform, RationalSpaceCurve,
    ValidationReport, ALL_PAIRS,
};
use crate::algebra::{solve_triangular, Sign, UPoly};

/// A real rational link: nonempty list of components, optionally oriented.
///
/// Orientation flags are relative to the parameter direction: `+1` keeps it,
/// `-1` reverses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    components: Vec<RationalSpaceCurve>,
    orientations: Option<Vec<i8>>,
}

impl Link {
    pub fn new(components: Vec<RationalSpaceCurve>, orientations: Option<Vec<i8>>) -> Result<Self, CurveError> {
        if components.is_empty() {
            return Err(CurveError::InvalidLink("no components".into()));
        }
        if let Some(o) = &orientations {
            if o.len() != components.len() {
                return Err(CurveError::InvalidLink(format!(
                    "{} orientation flags for {} components",
                    o.len(),
                    components.len()
                )));
            }
            if o.iter().any(|&v| v != 1 && v != -1) {
                return Err(CurveError::InvalidLink("orientation flags must be 1 or -1".into()));
            }
        }
        Ok(Link { components, orientations })
    }

    pub fn single(curve: RationalSpaceCurve) -> Self {
        Link { components: vec![curve], orientations: None }
    }

    pub fn components(&self) -> &[RationalSpaceCurve] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RationalSpaceCurve {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn orientations(&self) -> Option<&[i8]> {
        self.orientations.as_deref()
    }

    pub fn is_oriented(&self) -> bool {
        self.orientations.is_some()
    }

    /// Flag of component `i`; `+1` when the link carries no orientations.
    pub fn orientation(&self, i: usize) -> i8 {
        self.orientations.as_ref().map_or(1, |o| o[i])
    }

    pub fn with_orientations(&self, orientations: Option<Vec<i8>>) -> Result<Self, CurveError> {
        Link::new(self.components.clone(), orientations)
    }

    /// Reverses the orientation flag of component `i` (orienting the link
    /// along the parameters first if needed).
    pub fn flip(&self, i: usize) -> Self {
        let mut o = self.orientations.clone().unwrap_or_else(|| vec![1; self.len()]);
        o[i] = -o[i];
        Link { components: self.components.clone(), orientations: Some(o) }
    }

    pub fn flip_all(&self) -> Self {
        let o = (0..self.len()).map(|i| -self.orientation(i)).collect();
        Link { components: self.components.clone(), orientations: Some(o) }
    }

    pub fn transformed(&self, t: &ProjectiveTransform) -> Self {
        Link {
            components: self.components.iter().map(|c| c.transformed(t)).collect(),
            orientations: self.orientations.clone(),
        }
    }

    pub fn map_components<F: Fn(&RationalSpaceCurve) -> RationalSpaceCurve>(&self, f: F) -> Self {
        Link {
            components: self.components.iter().map(f).collect(),
            orientations: self.orientations.clone(),
        }
    }

    /// Validates every component and certifies that distinct components have
    /// no common point, real or complex.
    pub fn validate(&self) -> Result<Vec<ValidationReport>, CurveError> {
        let reports = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| c.validate().map_err(|error| CurveError::Validation { component: i, error }))
            .collect::<Result<Vec<_>, _>>()?;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !disjoint(&self.components[i], &self.components[j])? {
                    return Err(CurveError::ComponentsIntersect(i, j));
                }
            }
        }
        Ok(reports)
    }
}

/// `apply_transform(L, T)`: the image link and the orientation class of `T`.
pub fn apply_transform(link: &Link, t: &ProjectiveTransform) -> (Link, Sign) {
    (link.transformed(t), t.orientation())
}

/// True when `P(infinity)` lies on `Q`, over the complex numbers.
fn point_on(p: &[crate::algebra::Rational; 4], q: &RationalSpaceCurve) -> bool {
    let mut g = UPoly::zero();
    for (i, j) in ALL_PAIRS {
        let m = &q.coord(j).scale(&p[i]) - &q.coord(i).scale(&p[j]);
        g = g.gcd(&m);
    }
    !g.is_constant()
}

fn disjoint(p: &RationalSpaceCurve, q: &RationalSpaceCurve) -> Result<bool, CurveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6469_736a);
    for attempt in 0..8 {
        let (p, q) = if attempt == 0 {
            (p.clone(), q.clone())
        } else {
            (
                p.reparametrized(&MoebiusReparam::random(&mut rng, 4)),
                q.reparametrized(&MoebiusReparam::random(&mut rng, 4)),
            )
        };
        let (pi, qi) = (p.evaluate_at_infinity(), q.evaluate_at_infinity());
        if proportional(&pi, &qi) || point_on(&pi, &q) || point_on(&qi, &p) {
            return Ok(false);
        }
        match solve_triangular(&cross_minors(&p, &q, &ALL_PAIRS)) {
            Ok(sys) => return Ok(sys.is_empty()),
            Err(_) => continue,
        }
    }
    Err(CurveError::InvalidLink("could not certify that components are disjoint".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_xy() -> RationalSpaceCurve {
        RationalSpaceCurve::from_ints(&[1, 0, -1], &[0, 2], &[0], &[1, 0, 1]).unwrap()
    }

    fn circle_xz() -> RationalSpaceCurve {
        // unit circle in the xz-plane centered at (1, 0, 0)
        RationalSpaceCurve::from_ints(&[2], &[0], &[0, 2], &[1, 0, 1]).unwrap()
    }

    #[test]
    fn hopf_conics_are_disjoint() {
        let l = Link::new(vec![circle_xy(), circle_xz()], Some(vec![1, -1])).unwrap();
        assert_eq!(l.validate().unwrap().len(), 2);
    }

    #[test]
    fn meeting_components_rejected() {
        // the circle and the x-axis share (1, 0, 0) and (-1, 0, 0)
        let axis = RationalSpaceCurve::from_ints(&[0, 1], &[0], &[0], &[1]).unwrap();
        let l = Link::new(vec![circle_xy(), axis], None).unwrap();
        assert_eq!(l.validate(), Err(CurveError::ComponentsIntersect(0, 1)));
    }

    #[test]
    fn orientation_flags_checked() {
        assert!(Link::new(vec![circle_xy()], Some(vec![2])).is_err());
        assert!(Link::new(vec![circle_xy()], Some(vec![1, 1])).is_err());
        assert!(Link::new(vec![], None).is_err());
        let l = Link::single(circle_xy()).flip(0);
        assert_eq!(l.orientations(), Some(&[-1i8][..]));
        assert_eq!(l.flip_all().orientation(0), 1);
    }

    #[test]
    fn transform_round_trip() {
        let l = Link::single(RationalSpaceCurve::model(&crate::algebra::rat(-1)));
        let t = ProjectiveTransform::from_ints([[1, 2, 0, 0], [0, 1, 0, 3], [1, 0, 1, 0], [0, 0, 2, 1]]).unwrap();
        let (image, orient) = apply_transform(&l, &t);
        assert_eq!(orient, t.orientation());
        assert_eq!(image.transformed(&t.inverse()), l);
        let (mirror, o) = apply_transform(&l, &ProjectiveTransform::diagonal([1, 1, -1, 1]).unwrap());
        assert_eq!(o, Sign::Negative);
        assert_eq!(mirror.component(0).coord(2), &-l.component(0).coord(2));
    }
}
