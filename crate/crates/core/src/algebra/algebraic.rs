use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{
    format_rational, isolate_real_roots, rat, rational_to_f64, resultant_x, AlgebraError, BiPoly,
    Interval, Rational, SturmSequence, UPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i32(v: i32) -> Sign {
        match v.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn negate(self) -> Sign {
        Sign::from_i32(-self.to_i32())
    }

    pub fn mul(self, o: Sign) -> Sign {
        Sign::from_i32(self.to_i32() * o.to_i32())
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

/// A real algebraic number: a square-free rational polynomial together with an
/// interval isolating exactly one of its real roots.
///
/// Either `lo == hi` (the root is that rational) or `lo < hi`, neither endpoint
/// is a root and the defining polynomial changes sign across the interval.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    defining: UPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        AlgebraicNumber {
            defining: UPoly::from_coeffs(vec![-q.clone(), Rational::one()]).primitive(),
            lo: q.clone(),
            hi: q,
        }
    }

    /// Builds and certifies an isolating representation.
    pub fn new(defining: UPoly, lo: Rational, hi: Rational) -> Result<Self, AlgebraError> {
        if defining.is_constant() {
            return Err(AlgebraError::InvalidInput("constant defining polynomial".into()));
        }
        if !defining.is_squarefree() {
            return Err(AlgebraError::InvalidInput("defining polynomial not square-free".into()));
        }
        if lo > hi {
            return Err(AlgebraError::InvalidInput("empty interval".into()));
        }
        if lo == hi {
            if !defining.eval(&lo).is_zero() {
                return Err(AlgebraError::InvalidInput("point is not a root".into()));
            }
        } else {
            let slo = defining.sign_at(&lo);
            let shi = defining.sign_at(&hi);
            if slo.is_zero() || shi.is_zero() || slo == shi {
                return Err(AlgebraError::InvalidInput("interval does not isolate a root".into()));
            }
            if SturmSequence::new(&defining).count_in(&lo, &hi) != 1 {
                return Err(AlgebraError::InvalidInput("interval holds several roots".into()));
            }
        }
        Ok(AlgebraicNumber { defining: defining.primitive(), lo, hi })
    }

    pub(crate) fn from_parts_unchecked(defining: UPoly, lo: Rational, hi: Rational) -> Self {
        AlgebraicNumber { defining, lo, hi }
    }

    pub fn defining(&self) -> &UPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat(2);
        let sm = self.defining.sign_at(&mid);
        if sm.is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
        } else if sm == self.defining.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refines until the interval is no wider than `eps`.
    pub fn refine_to(&mut self, eps: &Rational) {
        while &(&self.hi - &self.lo) > eps {
            self.refine();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut a = self.clone();
        let eps = Rational::new(1.into(), num_bigint::BigInt::one() << 60usize);
        let scale = a.lo.abs().max(a.hi.abs()).max(Rational::one());
        a.refine_to(&(eps * scale));
        rational_to_f64(&a.interval().midpoint())
    }

    /// Exact sign of `r` at this number.
    ///
    /// Vanishing is decided first through `gcd(r, defining)`; only then is the
    /// interval refined until the interval enclosure of `r` excludes zero,
    /// which must eventually happen.
    pub fn sign_of(&self, r: &UPoly) -> Sign {
        if r.is_zero() {
            return Sign::Zero;
        }
        if r.is_constant() {
            return super::sign_of_rational(&r.lc());
        }
        if let Some(q) = self.as_rational() {
            return r.sign_at(q);
        }
        let g = r.gcd(&self.defining);
        if !g.is_constant() {
            let a = g.sign_at(&self.lo);
            let b = g.sign_at(&self.hi);
            if a != b {
                return Sign::Zero;
            }
        }
        let mut x = self.clone();
        loop {
            if let Some(s) = r.eval_interval(&x.interval()).certain_sign() {
                return s;
            }
            x.refine();
            if let Some(q) = x.as_rational() {
                return r.sign_at(q);
            }
        }
    }

    /// Exact equality of two real algebraic numbers.
    pub fn equals(&self, other: &AlgebraicNumber) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return a == b,
            (Some(a), None) => return other.sign_of(&linear(a)).is_zero(),
            (None, Some(b)) => return self.sign_of(&linear(b)).is_zero(),
            _ => {}
        }
        if !self.interval().intersects(&other.interval()) {
            return false;
        }
        let g = self.defining.gcd(&other.defining);
        if g.is_constant() || !self.sign_of(&g).is_zero() || !other.sign_of(&g).is_zero() {
            return false;
        }
        let roots = isolate_real_roots(&g).expect("gcd of square-free polynomials");
        self.root_index_among(&roots) == other.root_index_among(&roots)
    }

    /// Index of the isolating interval in `roots` that contains this number.
    /// `self` must be a root of the polynomial the list isolates.
    fn root_index_among(&self, roots: &[AlgebraicNumber]) -> usize {
        let mut x = self.clone();
        loop {
            let hits: Vec<usize> = roots
                .iter()
                .enumerate()
                .filter(|(_, r)| r.interval().intersects(&x.interval()))
                .map(|(i, _)| i)
                .collect();
            if hits.len() == 1 {
                return hits[0];
            }
            assert!(!hits.is_empty(), "number is not among the given roots");
            x.refine();
        }
    }

    pub fn cmp_exact(&self, other: &AlgebraicNumber) -> Ordering {
        if self.equals(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            a.refine();
            b.refine();
        }
    }

    /// The algebraic number `r(self)`.
    pub fn image_under(&self, r: &UPoly) -> AlgebraicNumber {
        if r.is_constant() {
            return AlgebraicNumber::from_rational(r.coeff(0));
        }
        if let Some(q) = self.as_rational() {
            return AlgebraicNumber::from_rational(r.eval(q));
        }
        // Res_y(E(y), z - r(y)) vanishes at z = r(root) for every root of E.
        let e = BiPoly::from_x_poly(&self.defining);
        let zr = &BiPoly::from_y_poly(&UPoly::x()) - &BiPoly::from_x_poly(r);
        let res = resultant_x(&e, &zr);
        let def = res.squarefree_part();
        let roots = isolate_real_roots(&def).expect("square-free by construction");
        let mut x = self.clone();
        loop {
            let enc = r.eval_interval(&x.interval());
            let hits: Vec<&AlgebraicNumber> =
                roots.iter().filter(|c| c.interval().intersects(&enc)).collect();
            if hits.len() == 1 {
                return hits[0].clone();
            }
            assert!(!hits.is_empty(), "image enclosure misses every candidate root");
            x.refine();
        }
    }
}

fn linear(q: &Rational) -> UPoly {
    UPoly::from_coeffs(vec![-q.clone(), Rational::one()])
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => f.write_str(&format_rational(q)),
            None => write!(
                f,
                "root of {} in [{}, {}]",
                self.defining,
                format_rational(&self.lo),
                format_rational(&self.hi)
            ),
        }
    }
}
