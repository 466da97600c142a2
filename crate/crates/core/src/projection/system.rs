use num_traits::Zero;

use super::ProjectionError;
use crate::algebra::{rat, solve_triangular, AlgebraError, BiPoly, TriangularSystem, UPoly};
use crate::curve::{cross_minors, divided_minor, RationalSpaceCurve};

/// Coordinates kept by the canonical projection `(X:Y:Z:W) -> (X:Y:W)`.
pub const PLANE: [usize; 3] = [0, 1, 3];

/// Pairs of kept coordinates.
pub const PLANE_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 3), (1, 3)];

/// Rewrites a symmetric polynomial `F(s, t)` (with `s` as `x`, `t` as `y`)
/// in `e = s + t` (as `x`) and `f = s t` (as `y`).
pub fn symmetrize(p: &BiPoly) -> BiPoly {
    let n = p.deg_x().max(p.deg_y());
    let e = BiPoly::x();
    let f = BiPoly::y();
    // power sums p_k = s^k + t^k = e p_{k-1} - f p_{k-2}
    let mut power: Vec<BiPoly> = vec![BiPoly::constant(rat(2)), e.clone()];
    for k in 2..=n {
        power.push(&(&e * &power[k - 1]) - &(&f * &power[k - 2]));
    }
    let mut out = BiPoly::zero();
    for i in 0..=n {
        let ci = p.coeff_x(i);
        for j in 0..=i {
            let c = ci.coeff(j);
            if c.is_zero() {
                continue;
            }
            debug_assert_eq!(c, p.coeff_x(j).coeff(i), "polynomial is not symmetric");
            let fj = BiPoly::from_y_poly(&UPoly::monomial(c, j));
            let term = if i == j { fj } else { &fj * &power[i - j] };
            out = &out + &term;
        }
    }
    out
}

/// `A(s) C(t)` as a polynomial with `s` as `x` and `t` as `y`.
pub fn st_product(a: &UPoly, c: &UPoly) -> BiPoly {
    &BiPoly::from_x_poly(a) * &BiPoly::from_y_poly(c)
}

/// `A(s) C(t) + A(t) C(s)` in `(e, f)`.
pub fn symmetric_sum(a: &UPoly, c: &UPoly) -> BiPoly {
    symmetrize(&(&st_product(a, c) + &st_product(c, a)))
}

/// `A(s) A(t)` in `(e, f)`.
pub fn symmetric_square(a: &UPoly) -> BiPoly {
    symmetrize(&st_product(a, a))
}

/// Reduces `S(t)` modulo `t^2 - e t + f`, giving `alpha t + beta`, and returns
/// the norm `S(s) S(t) = alpha^2 f + alpha beta e + beta^2` in `(e, f)`.
pub fn pair_norm(s: &UPoly) -> BiPoly {
    let e = BiPoly::x();
    let f = BiPoly::y();
    // t^k = alpha_k t + beta_k
    let (mut alpha, mut beta) = (BiPoly::zero(), BiPoly::constant(rat(1)));
    let (mut ra, mut rb) = (BiPoly::zero(), BiPoly::zero());
    for c in s.coeffs() {
        let k = BiPoly::constant(c.clone());
        ra = &ra + &(&alpha * &k);
        rb = &rb + &(&beta * &k);
        // t^(k+1) = alpha t^2 + beta t = (alpha e + beta) t - alpha f
        let na = &(&alpha * &e) + &beta;
        let nb = -&(&alpha * &f);
        alpha = na;
        beta = nb;
    }
    &(&(&(&ra * &ra) * &f) + &(&(&ra * &rb) * &e)) + &(&rb * &rb)
}

/// `det[p(s), p'(s), p'(t)]` for the projected curve `p = (X, Y, W)` of `a`
/// at `s` and `b` at `t`: zero exactly when the two branches through a
/// double point fail to cross transversally.
pub fn branch_determinant(a: &RationalSpaceCurve, b: &RationalSpaceCurve) -> BiPoly {
    let col = |c: &RationalSpaceCurve, deriv: bool, in_s: bool| -> Vec<BiPoly> {
        PLANE
            .iter()
            .map(|&k| {
                let p = if deriv { c.coord(k).derivative() } else { c.coord(k).clone() };
                if in_s {
                    BiPoly::from_x_poly(&p)
                } else {
                    BiPoly::from_y_poly(&p)
                }
            })
            .collect()
    };
    let m = [col(a, false, true), col(a, true, true), col(b, true, false)];
    det3(&m)
}

fn det3(c: &[Vec<BiPoly>; 3]) -> BiPoly {
    // columns c[0], c[1], c[2]
    let minor = |j: usize, k: usize| -> BiPoly {
        &(&c[1][j] * &c[2][k]) - &(&c[1][k] * &c[2][j])
    };
    let t0 = &c[0][0] * &minor(1, 2);
    let t1 = &c[0][1] * &minor(0, 2);
    let t2 = &c[0][2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// The three divided minors of the projected curve, in `(e, f)`.
pub fn projected_equations(curve: &RationalSpaceCurve) -> Vec<BiPoly> {
    PLANE_PAIRS
        .iter()
        .map(|&(i, j)| divided_minor(curve.coord(i), curve.coord(j)))
        .collect()
}

/// Projected double points of one component: the solutions `(e, f)` of the
/// divided minors of `[p(s); p(t)]`, with `e` eliminated.
pub fn double_point_system(curve: &RationalSpaceCurve) -> Result<TriangularSystem, ProjectionError> {
    solve_triangular(&projected_equations(curve)).map_err(degenerate)
}

/// Projected coincidences `p(s) ~ q(t)` between two components, `s` eliminated.
pub fn inter_component_system(
    p: &RationalSpaceCurve,
    q: &RationalSpaceCurve,
) -> Result<TriangularSystem, ProjectionError> {
    solve_triangular(&cross_minors(p, q, &PLANE_PAIRS)).map_err(degenerate)
}

fn degenerate(e: AlgebraError) -> ProjectionError {
    ProjectionError::DegenerateElimination(e.to_string())
}

/// True when `p(infinity)` is a projected image of some other parameter of
/// `curve`, or when the projection has a cusp at infinity.
pub fn infinity_involved(curve: &RationalSpaceCurve) -> bool {
    let inf = curve.evaluate_at_infinity();
    if PLANE.iter().all(|&k| inf[k].is_zero()) {
        // P(infinity) is the center itself
        return true;
    }
    let mut g = UPoly::zero();
    for (i, j) in PLANE_PAIRS {
        g = g.gcd(&(&curve.coord(j).scale(&inf[i]) - &curve.coord(i).scale(&inf[j])));
    }
    if !g.is_constant() {
        return true;
    }
    // cusp of the projection at infinity: p~(0) and p~'(0) dependent
    let d = curve.degree();
    let rev: Vec<UPoly> = PLANE.iter().map(|&k| curve.coord(k).reversed(d)).collect();
    let p0: Vec<_> = rev.iter().map(|p| p.coeff(0)).collect();
    let p1: Vec<_> = rev.iter().map(|p| p.coeff(1)).collect();
    crate::curve::proportional(&p0, &p1)
}

/// True when the projected images of `p` and `q` meet with a parameter at
/// infinity on either side.
pub fn infinity_involved_pair(p: &RationalSpaceCurve, q: &RationalSpaceCurve) -> bool {
    let on = |pt: &[crate::algebra::Rational; 4], c: &RationalSpaceCurve| {
        let mut g = UPoly::zero();
        for (i, j) in PLANE_PAIRS {
            g = g.gcd(&(&c.coord(j).scale(&pt[i]) - &c.coord(i).scale(&pt[j])));
        }
        !g.is_constant()
    };
    let (pi, qi) = (p.evaluate_at_infinity(), q.evaluate_at_infinity());
    let pp: Vec<_> = PLANE.iter().map(|&k| pi[k].clone()).collect();
    let qp: Vec<_> = PLANE.iter().map(|&k| qi[k].clone()).collect();
    crate::curve::proportional(&pp, &qp) || on(&pi, q) || on(&qi, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, AlgebraicNumber, Rational};

    fn ev(p: &BiPoly, s: &Rational, t: &Rational) -> Rational {
        p.eval(&(s + t), &(s * t))
    }

    #[test]
    fn symmetric_helpers_match_direct_evaluation() {
        let a = UPoly::from_ints(&[1, -2, 0, 3]);
        let c = UPoly::from_ints(&[0, 5, 1]);
        let sum = symmetric_sum(&a, &c);
        let sq = symmetric_square(&a);
        for (s, t) in [(rat(2), rat(-1)), (ratio(1, 3), rat(4))] {
            assert_eq!(ev(&sum, &s, &t), a.eval(&s) * c.eval(&t) + a.eval(&t) * c.eval(&s));
            assert_eq!(ev(&sq, &s, &t), a.eval(&s) * a.eval(&t));
        }
    }

    #[test]
    fn pair_norm_is_product_of_values() {
        let p = UPoly::from_ints(&[3, 0, -1, 2, 1]);
        let n = pair_norm(&p);
        for (s, t) in [(rat(1), rat(2)), (rat(-3), ratio(1, 2)), (rat(0), rat(5))] {
            assert_eq!(ev(&n, &s, &t), p.eval(&s) * p.eval(&t));
        }
    }

    #[test]
    fn model_double_points() {
        let minus = double_point_system(&RationalSpaceCurve::model(&rat(-1))).unwrap();
        assert_eq!(minus.complex_count(), 1);
        let pts = minus.real_points();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].y.equals(&AlgebraicNumber::from_rational(rat(-1))));
        assert!(pts[0].x_number().equals(&AlgebraicNumber::from_rational(rat(0))));

        let plus = double_point_system(&RationalSpaceCurve::model(&rat(1))).unwrap();
        let pts = plus.real_points();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].y.equals(&AlgebraicNumber::from_rational(rat(1))));
        assert!(pts[0].x_number().equals(&AlgebraicNumber::from_rational(rat(0))));
    }

    #[test]
    fn conic_has_no_double_points() {
        let c = RationalSpaceCurve::from_ints(&[1, 0, -1], &[0, 2], &[0, 0, 1], &[1, 0, 1]).unwrap();
        assert!(double_point_system(&c).unwrap().is_empty());
    }

    #[test]
    fn model_infinity_is_clean() {
        assert!(!infinity_involved(&RationalSpaceCurve::model(&rat(-1))));
    }
}
