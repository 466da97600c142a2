use super::{AlgebraicNumber, Rational, Sign, UPoly};

/// `a + b*w` where `w` is a formal square root of the ring's discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub a: UPoly,
    pub b: UPoly,
}

/// `re + i*im` with both parts in a [`PointRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: Quad,
    pub im: Quad,
}

/// Arithmetic in `Q[y]/(m(y))` adjoined with `w`, `w^2 = disc(y)`.
///
/// With `m` square-free and `y0` one of its real roots, every element names a
/// number in `Q(y0, sqrt(disc(y0)))`, and [`sign_at`](Self::sign_at) decides
/// its sign exactly. This is how coordinates of double-point preimages are
/// handled without ever leaving exact arithmetic.
#[derive(Clone, Debug)]
pub struct PointRing {
    modulus: UPoly,
    disc: UPoly,
}

impl PointRing {
    pub fn new(modulus: &UPoly, disc: &UPoly) -> Self {
        let disc = disc.rem(modulus);
        PointRing { modulus: modulus.clone(), disc }
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn disc(&self) -> &UPoly {
        &self.disc
    }

    pub fn reduce(&self, p: &UPoly) -> UPoly {
        p.rem(&self.modulus)
    }

    pub fn base(&self, a: &UPoly) -> Quad {
        Quad { a: self.reduce(a), b: UPoly::zero() }
    }

    pub fn scalar(&self, c: Rational) -> Quad {
        self.base(&UPoly::constant(c))
    }

    pub fn omega(&self) -> Quad {
        Quad { a: UPoly::zero(), b: UPoly::one() }
    }

    pub fn add(&self, x: &Quad, y: &Quad) -> Quad {
        Quad { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    pub fn sub(&self, x: &Quad, y: &Quad) -> Quad {
        Quad { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    pub fn neg(&self, x: &Quad) -> Quad {
        Quad { a: -&x.a, b: -&x.b }
    }

    pub fn scale(&self, x: &Quad, k: &Rational) -> Quad {
        Quad { a: x.a.scale(k), b: x.b.scale(k) }
    }

    pub fn mul(&self, x: &Quad, y: &Quad) -> Quad {
        let bb = self.reduce(&(&x.b * &y.b));
        let a = self.reduce(&(&(&x.a * &y.a) + &(&bb * &self.disc)));
        let b = self.reduce(&(&(&x.a * &y.b) + &(&x.b * &y.a)));
        Quad { a, b }
    }

    /// `p(t)` for a univariate polynomial `p` with rational coefficients.
    pub fn eval(&self, p: &UPoly, t: &Quad) -> Quad {
        let mut acc = self.scalar(Rational::from_integer(0.into()));
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, t), &self.scalar(c.clone()));
        }
        acc
    }

    pub fn complex(&self, re: Quad, im: Quad) -> Complex {
        Complex { re, im }
    }

    pub fn cadd(&self, x: &Complex, y: &Complex) -> Complex {
        Complex { re: self.add(&x.re, &y.re), im: self.add(&x.im, &y.im) }
    }

    pub fn csub(&self, x: &Complex, y: &Complex) -> Complex {
        Complex { re: self.sub(&x.re, &y.re), im: self.sub(&x.im, &y.im) }
    }

    pub fn cmul(&self, x: &Complex, y: &Complex) -> Complex {
        let re = self.sub(&self.mul(&x.re, &y.re), &self.mul(&x.im, &y.im));
        let im = self.add(&self.mul(&x.re, &y.im), &self.mul(&x.im, &y.re));
        Complex { re, im }
    }

    pub fn conj(&self, x: &Complex) -> Complex {
        Complex { re: x.re.clone(), im: self.neg(&x.im) }
    }

    /// Multiplication by `i`.
    pub fn times_i(&self, x: &Complex) -> Complex {
        Complex { re: self.neg(&x.im), im: x.re.clone() }
    }

    pub fn ceval(&self, p: &UPoly, t: &Complex) -> Complex {
        let zero = self.scalar(Rational::from_integer(0.into()));
        let mut acc = Complex { re: zero.clone(), im: zero.clone() };
        for c in p.coeffs().iter().rev() {
            acc = self.cmul(&acc, t);
            acc.re = self.add(&acc.re, &self.scalar(c.clone()));
        }
        acc
    }

    /// Exact sign of `q` at the root `y0` of the modulus isolated by `y0`,
    /// taking `w = +sqrt(disc(y0))`. Requires `disc(y0) > 0` whenever `q`
    /// has a nonzero `w` part.
    pub fn sign_at(&self, y0: &AlgebraicNumber, q: &Quad) -> Sign {
        let sa = y0.sign_of(&q.a);
        let sb = y0.sign_of(&q.b);
        if sb.is_zero() {
            return sa;
        }
        debug_assert_eq!(y0.sign_of(&self.disc), Sign::Positive);
        if sa.is_zero() || sa == sb {
            return sb;
        }
        // a and b*w have opposite signs: compare a^2 with b^2 * disc.
        let diff = self.reduce(&(&(&q.a * &q.a) - &(&(&q.b * &q.b) * &self.disc)));
        sa.mul(y0.sign_of(&diff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, AlgebraicNumber};

    #[test]
    fn sqrt_arithmetic_over_rational_point() {
        // modulus y - 3 (so y0 = 3), disc = y - 1 => w = sqrt 2
        let m = UPoly::from_ints(&[-3, 1]);
        let ring = PointRing::new(&m, &UPoly::from_ints(&[-1, 1]));
        let y0 = AlgebraicNumber::from_rational(rat(3));
        let w = ring.omega();
        assert_eq!(ring.mul(&w, &w), ring.scalar(rat(2)));
        // 1.5 - sqrt 2 > 0, 1.4 - sqrt 2 < 0
        let q1 = ring.sub(&ring.scalar(crate::algebra::ratio(3, 2)), &w);
        let q2 = ring.sub(&ring.scalar(crate::algebra::ratio(7, 5)), &w);
        assert_eq!(ring.sign_at(&y0, &q1), Sign::Positive);
        assert_eq!(ring.sign_at(&y0, &q2), Sign::Negative);
        assert_eq!(ring.sign_at(&y0, &ring.neg(&q2)), Sign::Positive);
    }

    #[test]
    fn complex_square_of_i() {
        let m = UPoly::from_ints(&[0, 1]);
        let ring = PointRing::new(&m, &UPoly::from_ints(&[1]));
        let zero = ring.scalar(rat(0));
        let one = ring.scalar(rat(1));
        let i = ring.complex(zero.clone(), one.clone());
        let sq = ring.cmul(&i, &i);
        assert_eq!(sq.re, ring.scalar(rat(-1)));
        assert_eq!(sq.im, zero);
        // p(t) = t^2 + 1 vanishes at i
        let v = ring.ceval(&UPoly::from_ints(&[1, 0, 1]), &i);
        assert_eq!(v.re, ring.scalar(rat(0)));
    }
}
