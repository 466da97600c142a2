//! Exact algebra: rational polynomials in one and two variables, resultants,
//! Sturm-based real root isolation and certified sign determination at real
//! algebraic points.
//!
//! Everything here is exact. No floating point value ever decides a sign.

mod algebraic;
mod bipoly;
mod interval;
mod residue;
mod resultant;
mod solve;
mod sturm;
mod upoly;

pub use algebraic::{AlgebraicNumber, Sign};
pub use bipoly::BiPoly;
pub use interval::Interval;
pub use residue::{Complex, PointRing, Quad};
pub use resultant::{resultant, resultant_x, subresultant1_x};
pub use solve::{solve_triangular, SolutionPoint, TriangularPart, TriangularSystem};
pub use sturm::{isolate_real_roots, sturm_count, SturmSequence};
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational scalar used throughout the crate.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate elimination: {0}")]
    DegenerateElimination(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"p/q"` (optional leading sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Formats as `"n"` or `"p/q"`, the inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sign_of_rational(r: &Rational) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Floating point approximation, used only for rendering and diagnostics.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large numerators/denominators: shift both down first.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let nf = (n >> shift_n).to_f64().unwrap_or(0.0);
    let df = (d >> shift_d).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi(shift_n as i32 - shift_d as i32)
}


pub(crate) fn one() -> Rational {
    Rational::one()
}
