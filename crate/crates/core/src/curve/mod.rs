//! Real rational space curves and links in RP^3.
//!
//! A component is a quadruple `(X, Y, Z, W)` of polynomials in an affine
//! parameter `t`, read as binary forms of the common degree `d` (the largest
//! coordinate degree). The parameter direction orients the component.

mod link;
mod transform;
mod validate;

pub use link::{apply_transform, Link};
pub use transform::{determinant, inverse, MoebiusReparam, ProjectiveTransform};
pub use validate::{ParameterForm, ValidationError, ValidationReport};

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{rat, AlgebraicNumber, BiPoly, Rational, UPoly};

pub type ComplexRational = Complex<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("all four coordinates are identically zero")]
    ZeroQuadruple,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),
    #[error("invalid link: {0}")]
    InvalidLink(String),
    #[error("components {0} and {1} meet")]
    ComponentsIntersect(usize, usize),
    #[error("component {component}: {error}")]
    Validation {
        component: usize,
        error: ValidationError,
    },
}

/// One link component: `t -> (X(t) : Y(t) : Z(t) : W(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSpaceCurve {
    coords: [UPoly; 4],
    degree: usize,
}

impl RationalSpaceCurve {
    pub fn new(x: UPoly, y: UPoly, z: UPoly, w: UPoly) -> Result<Self, CurveError> {
        Self::from_coords([x, y, z, w])
    }

    pub fn from_coords(coords: [UPoly; 4]) -> Result<Self, CurveError> {
        if coords.iter().all(UPoly::is_zero) {
            return Err(CurveError::ZeroQuadruple);
        }
        let degree = coords.iter().map(UPoly::deg).max().unwrap_or(0);
        Ok(RationalSpaceCurve { coords, degree })
    }

    pub fn from_ints(x: &[i64], y: &[i64], z: &[i64], w: &[i64]) -> Result<Self, CurveError> {
        Self::new(UPoly::from_ints(x), UPoly::from_ints(y), UPoly::from_ints(z), UPoly::from_ints(w))
    }

    /// The model twisted cubic `x = -t^2 - tau, y = -t^3 - tau t, z = -t`.
    pub fn model(tau: &Rational) -> Self {
        let x = UPoly::from_coeffs(vec![-tau.clone(), rat(0), rat(-1)]);
        let y = UPoly::from_coeffs(vec![rat(0), -tau.clone(), rat(0), rat(-1)]);
        Self::new(x, y, UPoly::from_ints(&[0, -1]), UPoly::one()).expect("nonzero")
    }

    pub fn coords(&self) -> &[UPoly; 4] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &UPoly {
        &self.coords[i]
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn derivatives(&self) -> [UPoly; 4] {
        std::array::from_fn(|i| self.coords[i].derivative())
    }

    pub fn evaluate(&self, t: &Rational) -> [Rational; 4] {
        std::array::from_fn(|i| self.coords[i].eval(t))
    }

    /// The point at `t = infinity`, i.e. the coefficients of `t^d`.
    pub fn evaluate_at_infinity(&self) -> [Rational; 4] {
        std::array::from_fn(|i| self.coords[i].coeff(self.degree))
    }

    pub fn evaluate_complex(&self, t: &ComplexRational) -> [ComplexRational; 4] {
        std::array::from_fn(|i| eval_complex(&self.coords[i], t))
    }

    pub fn evaluate_algebraic(&self, t: &AlgebraicNumber) -> [AlgebraicNumber; 4] {
        std::array::from_fn(|i| t.image_under(&self.coords[i]))
    }

    /// Homogeneous tangent `P'(t)`.
    pub fn tangent(&self, t: &Rational) -> [Rational; 4] {
        std::array::from_fn(|i| self.coords[i].derivative().eval(t))
    }

    /// Derivative of `t -> (X/W, Y/W, Z/W)`; `None` where `W(t) = 0`.
    pub fn affine_tangent(&self, t: &Rational) -> Option<[Rational; 3]> {
        let p = self.evaluate(t);
        let dp = self.tangent(t);
        if p[3].is_zero() {
            return None;
        }
        let w2 = &p[3] * &p[3];
        Some(std::array::from_fn(|i| (&dp[i] * &p[3] - &p[i] * &dp[3]) / &w2))
    }

    pub fn affine_tangent_complex(&self, t: &ComplexRational) -> Option<[ComplexRational; 3]> {
        let p = self.evaluate_complex(t);
        let dp: [ComplexRational; 4] = std::array::from_fn(|i| eval_complex(&self.coords[i].derivative(), t));
        if p[3].is_zero() {
            return None;
        }
        let w2 = &p[3] * &p[3];
        Some(std::array::from_fn(|i| (&dp[i] * &p[3] - &p[i] * &dp[3]) / &w2))
    }

    /// The curve `T * P(t)`.
    pub fn transformed(&self, t: &ProjectiveTransform) -> Self {
        Self::from_coords(t.apply_polys(&self.coords)).expect("invertible image is nonzero")
    }

    /// The curve `P(M(t))`, homogenized with the degree of `self`.
    pub fn reparametrized(&self, m: &MoebiusReparam) -> Self {
        let coords = std::array::from_fn(|i| m.pull_back(&self.coords[i], self.degree));
        RationalSpaceCurve { coords, degree: self.degree }
    }

    /// The same curve traversed in the opposite direction, `t -> -t`.
    pub fn reversed_direction(&self) -> Self {
        self.reparametrized(&MoebiusReparam::from_ints(-1, 0, 0, 1).expect("invertible"))
    }

    /// `(A(s) C(t) - A(t) C(s)) / (s - t)` for coordinates `i`, `j`, written in
    /// `e = s + t` (the `x` variable) and `f = s t` (the `y` variable).
    pub fn divided_minor(&self, i: usize, j: usize) -> BiPoly {
        divided_minor(&self.coords[i], &self.coords[j])
    }

    /// The 2x2 minors of `[P(s); P(t)]` divided by `s - t`, for the given
    /// coordinate pairs, in `(e, f)`.
    pub fn double_point_equations(&self, pairs: &[(usize, usize)]) -> Vec<BiPoly> {
        pairs.iter().map(|&(i, j)| self.divided_minor(i, j)).collect()
    }

    /// Minors `P_i P_j' - P_j P_i'`; a common root is a cusp.
    pub fn tangent_minors(&self) -> Vec<UPoly> {
        let d = self.derivatives();
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                out.push(&(&self.coords[i] * &d[j]) - &(&self.coords[j] * &d[i]));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<ValidationReport, ValidationError> {
        validate::validate(self)
    }

    /// Random integer curve of exact degree `degree` that passes validation.
    /// Deterministic in `seed`.
    pub fn sample_random(degree: usize, seed: u64, bound: i64) -> Result<Self, CurveError> {
        assert!(degree >= 1, "degree must be positive");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLE_ATTEMPTS {
            let coords: [UPoly; 4] = std::array::from_fn(|_| {
                UPoly::from_coeffs((0..=degree).map(|_| rat(rng.gen_range(-bound..=bound))).collect())
            });
            let Ok(curve) = Self::from_coords(coords) else { continue };
            if curve.degree != degree {
                continue;
            }
            if curve.validate().is_ok() {
                return Ok(curve);
            }
        }
        Err(CurveError::SamplingExhausted(SAMPLE_ATTEMPTS))
    }
}

const SAMPLE_ATTEMPTS: usize = 200;

pub fn eval_complex(p: &UPoly, t: &ComplexRational) -> ComplexRational {
    let mut acc = ComplexRational::new(Rational::zero(), Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = &acc * t + ComplexRational::new(c.clone(), Rational::zero());
    }
    acc
}

/// Symmetric divided difference of a 2x2 minor in `e = s + t`, `f = s t`.
///
/// `(s^i t^j - s^j t^i) / (s - t) = f^j h_{i-j-1}` for `i > j`, where the
/// complete symmetric polynomials obey `h_k = e h_{k-1} - f h_{k-2}`.
pub fn divided_minor(a: &UPoly, c: &UPoly) -> BiPoly {
    let n = a.deg().max(c.deg());
    let mut h: Vec<BiPoly> = vec![BiPoly::constant(rat(1))];
    let e = BiPoly::x();
    let f = BiPoly::y();
    for k in 1..n {
        let prev2 = if k >= 2 { h[k - 2].clone() } else { BiPoly::zero() };
        h.push(&(&e * &h[k - 1]) - &(&f * &prev2));
    }
    let mut out = BiPoly::zero();
    for i in 0..=n {
        for j in 0..i {
            let coef = &a.coeff(i) * &c.coeff(j) - &a.coeff(j) * &c.coeff(i);
            if coef.is_zero() {
                continue;
            }
            let fj = BiPoly::from_y_poly(&UPoly::monomial(coef, j));
            out = &out + &(&fj * &h[i - j - 1]);
        }
    }
    out
}

/// Minors `A_i(s) C_j(t) - C_i(s) A_j(t)` between two components, with `s`
/// the `x` variable and `t` the `y` variable.
pub fn cross_minors(p: &RationalSpaceCurve, q: &RationalSpaceCurve, pairs: &[(usize, usize)]) -> Vec<BiPoly> {
    pairs
        .iter()
        .map(|&(a, c)| {
            let l = &BiPoly::from_x_poly(p.coord(a)) * &BiPoly::from_y_poly(q.coord(c));
            let r = &BiPoly::from_x_poly(p.coord(c)) * &BiPoly::from_y_poly(q.coord(a));
            &l - &r
        })
        .collect()
}

/// All six coordinate pairs.
pub const ALL_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// True when two homogeneous points are proportional.
pub fn proportional<T: PartialEq + Zero + Clone>(p: &[T], q: &[T]) -> bool
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if &p[i] * &q[j] != &p[j] * &q[i] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn c(re: i64, im: i64) -> ComplexRational {
        ComplexRational::new(rat(re), rat(im))
    }

    #[test]
    fn model_points_and_tangents() {
        let m = RationalSpaceCurve::model(&rat(-1));
        assert_eq!(m.evaluate(&rat(-1)), [rat(0), rat(0), rat(1), rat(1)]);
        assert_eq!(m.affine_tangent(&rat(-1)), Some([rat(2), rat(-2), rat(-1)]));

        let p = RationalSpaceCurve::model(&rat(1));
        assert_eq!(p.evaluate_complex(&c(0, -1)), [c(0, 0), c(0, 0), c(0, 1), c(1, 0)]);
        assert_eq!(p.affine_tangent_complex(&c(0, -1)), Some([c(0, 2), c(2, 0), c(-1, 0)]));
    }

    #[test]
    fn line_tangent_and_constant_term() {
        let l = RationalSpaceCurve::from_ints(&[0, 1], &[0], &[0], &[1]).unwrap();
        assert_eq!(l.degree(), 1);
        for t in [-2, 0, 7] {
            assert_eq!(l.affine_tangent(&rat(t)), Some([rat(1), rat(0), rat(0)]));
        }
        let m = RationalSpaceCurve::model(&rat(-1));
        assert_eq!(m.evaluate(&rat(0)), [rat(1), rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn zero_quadruple_rejected() {
        assert_eq!(
            RationalSpaceCurve::from_ints(&[0], &[0], &[0], &[0]),
            Err(CurveError::ZeroQuadruple)
        );
    }

    #[test]
    fn reparametrize_shift_and_inversion() {
        let m = RationalSpaceCurve::model(&rat(-1));
        let shift = MoebiusReparam::from_ints(1, 1, 0, 1).unwrap();
        let s = m.reparametrized(&shift);
        for t in 0..3 {
            assert_eq!(s.evaluate(&rat(t)), m.evaluate(&rat(t + 1)));
        }
        let inv = m.reparametrized(&MoebiusReparam::inversion());
        for i in 0..4 {
            assert_eq!(inv.coord(i), &m.coord(i).reversed(3));
        }
        assert_eq!(m.reparametrized(&MoebiusReparam::identity()), m);
    }

    #[test]
    fn divided_minor_matches_direct_quotient() {
        let a = UPoly::from_ints(&[3, -1, 4, 1, -5]);
        let c = UPoly::from_ints(&[2, 7, 0, -1]);
        let b = divided_minor(&a, &c);
        for (s, t) in [(ratio(1, 2), rat(3)), (rat(-2), rat(5)), (rat(4), ratio(-1, 3))] {
            let direct = (a.eval(&s) * c.eval(&t) - a.eval(&t) * c.eval(&s)) / (&s - &t);
            assert_eq!(b.eval(&(&s + &t), &(&s * &t)), direct);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = RationalSpaceCurve::sample_random(3, 42, 5).unwrap();
        let b = RationalSpaceCurve::sample_random(3, 42, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 3);
        let line = RationalSpaceCurve::sample_random(1, 9, 5).unwrap();
        assert_eq!(line.degree(), 1);
    }
}
