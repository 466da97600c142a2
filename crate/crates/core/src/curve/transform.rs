use num_traits::{One, Zero};
use rand::Rng;

use super::CurveError;
use crate::algebra::{rat, sign_of_rational, Rational, Sign, UPoly};

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] / &pivot;
            for c in k..n {
                let v = &factor * &a[k][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(p, k);
        let pivot = a[k][k].clone();
        for v in a[k].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let factor = a[r][k].clone();
            for c in 0..2 * n {
                let v = &factor * &a[k][c];
                a[r][c] -= v;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Invertible 4x4 rational matrix acting on homogeneous coordinates
/// `(X, Y, Z, W)` of RP^3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveTransform {
    m: [[Rational; 4]; 4],
}

impl ProjectiveTransform {
    pub fn new(m: [[Rational; 4]; 4]) -> Result<Self, CurveError> {
        let t = ProjectiveTransform { m };
        if t.determinant().is_zero() {
            return Err(CurveError::SingularMatrix);
        }
        Ok(t)
    }

    pub fn from_ints(m: [[i64; 4]; 4]) -> Result<Self, CurveError> {
        Self::new(m.map(|row| row.map(rat)))
    }

    pub fn identity() -> Self {
        Self::diagonal([1, 1, 1, 1]).expect("identity is invertible")
    }

    pub fn diagonal(d: [i64; 4]) -> Result<Self, CurveError> {
        let mut m = [[0i64; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        Self::from_ints(m)
    }

    /// Builds the transform whose columns are `cols[0..4]`.
    pub fn from_columns(cols: [[Rational; 4]; 4]) -> Result<Self, CurveError> {
        let mut m: [[Rational; 4]; 4] = Default::default();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..4 {
                m[i][j] = col[i].clone();
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &[[Rational; 4]; 4] {
        &self.m
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.m.iter().map(|r| r.to_vec()).collect()
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.rows())
    }

    /// Sign of the determinant: `Positive` for orientation preserving maps.
    pub fn orientation(&self) -> Sign {
        sign_of_rational(&self.determinant())
    }

    pub fn inverse(&self) -> Self {
        let inv = inverse(&self.rows()).expect("transform is invertible");
        let mut m: [[Rational; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = inv[i][j].clone();
            }
        }
        ProjectiveTransform { m }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut m: [[Rational; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = (0..4).fold(Rational::zero(), |acc, k| acc + &self.m[i][k] * &other.m[k][j]);
            }
        }
        ProjectiveTransform { m }
    }

    pub fn apply_point(&self, p: &[Rational; 4]) -> [Rational; 4] {
        std::array::from_fn(|i| (0..4).fold(Rational::zero(), |acc, k| acc + &self.m[i][k] * &p[k]))
    }

    pub fn apply_polys(&self, p: &[UPoly; 4]) -> [UPoly; 4] {
        std::array::from_fn(|i| {
            (0..4).fold(UPoly::zero(), |acc, k| &acc + &p[k].scale(&self.m[i][k]))
        })
    }

    /// Random integer matrix with entries in `[-bound, bound]` and a
    /// determinant of the requested sign. Rows are redrawn until the matrix is
    /// invertible; a negative request flips the sign of the first row.
    pub fn random<R: Rng>(rng: &mut R, bound: i64, orientation: Sign) -> Self {
        assert!(!orientation.is_zero(), "orientation must be nonzero");
        loop {
            let mut m = [[0i64; 4]; 4];
            for row in m.iter_mut() {
                for v in row.iter_mut() {
                    *v = rng.gen_range(-bound..=bound);
                }
            }
            let Ok(t) = Self::from_ints(m) else { continue };
            if t.orientation() == orientation {
                return t;
            }
            for v in m[0].iter_mut() {
                *v = -*v;
            }
            return Self::from_ints(m).expect("row negation keeps the matrix invertible");
        }
    }
}

/// Real Moebius change of parameter `t -> (a t + b) / (c t + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusReparam {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl MoebiusReparam {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, CurveError> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(CurveError::SingularMatrix);
        }
        Ok(MoebiusReparam { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self, CurveError> {
        Self::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1).expect("identity")
    }

    /// `t -> 1/t`.
    pub fn inversion() -> Self {
        Self::from_ints(0, 1, 1, 0).expect("inversion")
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Image of a finite parameter; `None` stands for `t = infinity`.
    pub fn apply(&self, t: &Rational) -> Option<Rational> {
        let den = &self.c * t + &self.d;
        if den.is_zero() {
            return None;
        }
        Some((&self.a * t + &self.b) / den)
    }

    pub fn inverse(&self) -> Self {
        MoebiusReparam {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// The binary form of degree `deg` with affine part `p`, pulled back along
    /// the map: `sum p_k (a t + b)^k (c t + d)^(deg - k)`.
    pub fn pull_back(&self, p: &UPoly, deg: usize) -> UPoly {
        let num = UPoly::from_coeffs(vec![self.b.clone(), self.a.clone()]);
        let den = UPoly::from_coeffs(vec![self.d.clone(), self.c.clone()]);
        let mut out = UPoly::zero();
        for k in 0..=deg {
            let ck = p.coeff(k);
            if ck.is_zero() {
                continue;
            }
            let term = &num.pow(k as u32) * &den.pow((deg - k) as u32);
            out = &out + &term.scale(&ck);
        }
        out
    }

    /// Random map with small integer entries and positive determinant, so the
    /// direction of the parameter is kept.
    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Self {
        loop {
            let v: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-bound..=bound));
            if v[0] * v[3] - v[1] * v[2] > 0 {
                return Self::from_ints(v[0], v[1], v[2], v[3]).expect("nonzero determinant");
            }
        }
    }
}
