use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Rational, UPoly};

/// Polynomial in two variables `x`, `y`, stored as a polynomial in `x` whose
/// coefficients are polynomials in `y`. `x` is always the variable that gets
/// eliminated.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    cx: Vec<UPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { cx: Vec::new() }
    }

    pub fn from_x_coeffs(mut cx: Vec<UPoly>) -> Self {
        while cx.last().is_some_and(|c| c.is_zero()) {
            cx.pop();
        }
        BiPoly { cx }
    }

    /// Embeds a univariate polynomial as a polynomial in `x`.
    pub fn from_x_poly(p: &UPoly) -> Self {
        Self::from_x_coeffs(p.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect())
    }

    /// Embeds a univariate polynomial as a polynomial in `y`.
    pub fn from_y_poly(p: &UPoly) -> Self {
        Self::from_x_coeffs(vec![p.clone()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_y_poly(&UPoly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_x_poly(&UPoly::x())
    }

    pub fn y() -> Self {
        Self::from_y_poly(&UPoly::x())
    }

    /// Sum of `c * x^i * y^j` over `(i, j, c)`.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut out = Self::zero();
        for &(i, j, c) in terms {
            let mono = UPoly::monomial(super::rat(c), j);
            let mut cx = vec![UPoly::zero(); i + 1];
            cx[i] = mono;
            out = &out + &Self::from_x_coeffs(cx);
        }
        out
    }

    pub fn x_coeffs(&self) -> &[UPoly] {
        &self.cx
    }

    pub fn coeff_x(&self, i: usize) -> UPoly {
        self.cx.get(i).cloned().unwrap_or_else(UPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cx.is_empty()
    }

    pub fn deg_x(&self) -> usize {
        self.cx.len().saturating_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.cx.iter().map(UPoly::deg).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.cx
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| i + c.deg())
            .max()
            .unwrap_or(0)
    }

    /// Leading coefficient in `x`.
    pub fn lc_x(&self) -> UPoly {
        self.cx.last().cloned().unwrap_or_else(UPoly::zero)
    }

    /// The polynomial as a univariate in `y`, if it does not involve `x`.
    pub fn as_y_poly(&self) -> Option<UPoly> {
        (self.cx.len() <= 1).then(|| self.coeff_x(0))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_x_coeffs(self.cx.iter().map(|c| c.scale(k)).collect())
    }

    pub fn mul_y_poly(&self, p: &UPoly) -> Self {
        Self::from_x_coeffs(self.cx.iter().map(|c| c * p).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(super::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_x_coeffs(
            self.cx
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&super::rat(i as i64)))
                .collect(),
        )
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_x_coeffs(self.cx.iter().map(UPoly::derivative).collect())
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        let dy = self.deg_y();
        let mut out = vec![vec![Rational::zero(); self.cx.len()]; dy + 1];
        for (i, c) in self.cx.iter().enumerate() {
            for (j, v) in c.coeffs().iter().enumerate() {
                out[j][i] = v.clone();
            }
        }
        Self::from_x_coeffs(out.into_iter().map(UPoly::from_coeffs).collect())
    }

    /// Substitutes a value for `x`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x: &Rational) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.cx.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    /// Substitutes a value for `y`, leaving a polynomial in `x`.
    pub fn eval_y(&self, y: &Rational) -> UPoly {
        UPoly::from_coeffs(self.cx.iter().map(|c| c.eval(y)).collect())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.eval_y(y).eval(x)
    }

    /// Substitutes `x := g(y)`.
    pub fn substitute_x(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.cx.iter().rev() {
            acc = &(&acc * g) + c;
        }
        acc
    }

    /// `substitute_x(g)` reduced modulo `m`, reducing at every Horner step.
    pub fn substitute_x_mod(&self, g: &UPoly, m: &UPoly) -> UPoly {
        let g = g.rem(m);
        let mut acc = UPoly::zero();
        for c in self.cx.iter().rev() {
            acc = (&(&acc * &g) + c).rem(m);
        }
        acc
    }

    pub fn fmt_with(&self, xv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.cx.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cy = c.fmt_with(yv);
            let xm = match i {
                0 => String::new(),
                1 => xv.to_string(),
                _ => format!("{xv}^{i}"),
            };
            parts.push(if xm.is_empty() {
                format!("({cy})")
            } else {
                format!("({cy})*{xm}")
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.fmt_with("x", "y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.cx.len().max(o.cx.len());
        BiPoly::from_x_coeffs((0..n).map(|i| &self.coeff_x(i) + &o.coeff_x(i)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.cx.len().max(o.cx.len());
        BiPoly::from_x_coeffs((0..n).map(|i| &self.coeff_x(i) - &o.coeff_x(i)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![UPoly::zero(); self.cx.len() + o.cx.len() - 1];
        for (i, a) in self.cx.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.cx.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::from_x_coeffs(v)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_x_coeffs(self.cx.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn swap_roundtrip_and_eval() {
        // 3 x^2 y - y^3 + 2x
        let p = BiPoly::from_terms(&[(2, 1, 3), (0, 3, -1), (1, 0, 2)]);
        assert_eq!(p.swap().swap(), p);
        assert_eq!(p.eval(&rat(2), &rat(-1)), rat(-12 + 1 + 4));
        assert_eq!(p.swap().eval(&rat(-1), &rat(2)), rat(-7));
        assert_eq!(p.total_degree(), 3);
    }

    #[test]
    fn substitution() {
        // x^2 - y with x := y + 1 gives y^2 + y + 1
        let p = BiPoly::from_terms(&[(2, 0, 1), (0, 1, -1)]);
        assert_eq!(p.substitute_x(&UPoly::from_ints(&[1, 1])), UPoly::from_ints(&[1, 1, 1]));
    }
}
