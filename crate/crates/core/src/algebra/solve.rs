use std::cmp::Ordering;

use super::{
    isolate_real_roots, resultant_x, subresultant1_x, AlgebraError, AlgebraicNumber, BiPoly,
    PointRing, Sign, UPoly,
};

/// A block of solutions `{(x, y) : E(y) = 0, x = r(y) mod E}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularPart {
    /// Square-free eliminant in `y`.
    pub eliminant: UPoly,
    /// Back-substitution: `x` as a polynomial in `y`, reduced modulo the eliminant.
    pub x_repr: UPoly,
}

/// The complete complex solution set of a zero-dimensional system in two
/// variables, in triangular form. Different parts have coprime eliminants, so
/// no `y` value is shared between parts, and within a part each `y` carries a
/// single `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangularSystem {
    pub parts: Vec<TriangularPart>,
}

/// One real solution of a [`TriangularSystem`].
#[derive(Clone, Debug)]
pub struct SolutionPoint {
    pub y: AlgebraicNumber,
    pub x_repr: UPoly,
    modulus: UPoly,
}

impl SolutionPoint {
    /// Point with rational coordinates.
    pub fn rational(x: super::Rational, y: super::Rational) -> Self {
        let modulus = UPoly::from_coeffs(vec![-y.clone(), super::one()]);
        SolutionPoint {
            y: AlgebraicNumber::from_rational(y),
            x_repr: UPoly::constant(x),
            modulus,
        }
    }

    /// Point whose `y` is algebraic and whose `x` is the polynomial `x_repr(y)`.
    pub fn new(y: AlgebraicNumber, x_repr: &UPoly) -> Self {
        let modulus = y.defining().clone();
        SolutionPoint { x_repr: x_repr.rem(&modulus), y, modulus }
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    /// `p(x, y)` as an element of `Q[y]/(modulus)`.
    pub fn reduce(&self, p: &BiPoly) -> UPoly {
        p.substitute_x_mod(&self.x_repr, &self.modulus)
    }

    /// Exact sign of `p` at the point.
    pub fn sign_of(&self, p: &BiPoly) -> Sign {
        self.y.sign_of(&self.reduce(p))
    }

    pub fn x_number(&self) -> AlgebraicNumber {
        self.y.image_under(&self.x_repr)
    }

    /// Residue ring at this point with `w^2 = disc(x, y)`.
    pub fn ring(&self, disc: &BiPoly) -> PointRing {
        PointRing::new(&self.modulus, &self.reduce(disc))
    }

    /// The `x` coordinate as an element of [`ring`](Self::ring).
    pub fn x_in(&self, ring: &PointRing) -> super::Quad {
        ring.base(&self.x_repr)
    }

    pub fn y_in(&self, ring: &PointRing) -> super::Quad {
        ring.base(&UPoly::x())
    }
}

impl TriangularSystem {
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of complex solutions (each counted once).
    pub fn complex_count(&self) -> usize {
        self.parts.iter().map(|p| p.eliminant.deg()).sum()
    }

    /// Product of the part eliminants.
    pub fn eliminant(&self) -> UPoly {
        self.parts
            .iter()
            .fold(UPoly::one(), |acc, p| &acc * &p.eliminant)
    }

    /// Real solutions sorted by `y`.
    pub fn real_points(&self) -> Vec<SolutionPoint> {
        let mut out = Vec::new();
        for part in &self.parts {
            let roots = isolate_real_roots(&part.eliminant).expect("eliminant is square-free");
            for y in roots {
                out.push(SolutionPoint {
                    y,
                    x_repr: part.x_repr.clone(),
                    modulus: part.eliminant.clone(),
                });
            }
        }
        out.sort_by(|a, b| a.y.cmp_exact(&b.y));
        out
    }

    /// Factor of the eliminant collecting solutions where `p` vanishes.
    pub fn vanishing_factor(&self, p: &BiPoly) -> UPoly {
        self.parts.iter().fold(UPoly::one(), |acc, part| {
            let r = p.substitute_x_mod(&part.x_repr, &part.eliminant);
            &acc * &part.eliminant.gcd(&r)
        })
    }

    /// True when `p` vanishes at no solution, real or complex.
    pub fn avoids(&self, p: &BiPoly) -> bool {
        self.vanishing_factor(p).is_constant()
    }

    /// True when every solution is a regular point of the system: some pair of
    /// equations has a nonvanishing Jacobian there.
    pub fn is_regular(&self, polys: &[BiPoly]) -> bool {
        let mut jacobians = Vec::new();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let a = &(&polys[i].derivative_x() * &polys[j].derivative_y())
                    - &(&polys[i].derivative_y() * &polys[j].derivative_x());
                if !a.is_zero() {
                    jacobians.push(a);
                }
            }
        }
        self.parts.iter().all(|part| {
            let mut g = part.eliminant.clone();
            for jac in &jacobians {
                if g.is_constant() {
                    break;
                }
                g = g.gcd(&jac.substitute_x_mod(&part.x_repr, &part.eliminant));
            }
            g.is_constant()
        })
    }
}

/// Solves `F_1 = ... = F_k = 0` for a zero-dimensional system in `(x, y)`.
///
/// The eliminant is the square-free gcd of pairwise resultants in `x`. Its
/// roots are split among pairs `(F_i, F_j)` whose leading coefficients and
/// first subresultant coefficient do not vanish there; for those the common
/// root in `x` is unique and given by the first subresultant. Every candidate
/// is then verified against all equations exactly, which removes the
/// extraneous roots resultants can introduce.
///
/// Fails with `DegenerateElimination` when the system has a common curve
/// component or when some `y` value cannot be separated (for instance two
/// solutions sharing the same `y`); callers change coordinates and retry.
pub fn solve_triangular(polys: &[BiPoly]) -> Result<TriangularSystem, AlgebraError> {
    let polys: Vec<&BiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if polys.is_empty() {
        return Err(AlgebraError::DegenerateElimination("no nonzero equations".into()));
    }
    let mut uni: Option<UPoly> = None;
    let mut xpolys = Vec::new();
    for p in &polys {
        match p.as_y_poly() {
            Some(u) => {
                uni = Some(match uni {
                    None => u.primitive(),
                    Some(g) => g.gcd(&u),
                })
            }
            None => xpolys.push(*p),
        }
    }
    if uni.as_ref().is_some_and(UPoly::is_constant) {
        return Ok(TriangularSystem::default());
    }
    if xpolys.len() < 2 {
        return Err(AlgebraError::DegenerateElimination(
            "fewer than two equations involve the eliminated variable".into(),
        ));
    }
    let pairs: Vec<(usize, usize)> = (0..xpolys.len())
        .flat_map(|i| (i + 1..xpolys.len()).map(move |j| (i, j)))
        .collect();

    let mut g = uni;
    let mut used = 0;
    for &(i, j) in &pairs {
        if used >= 3 {
            break;
        }
        let r = resultant_x(xpolys[i], xpolys[j]);
        if r.is_zero() {
            continue;
        }
        used += 1;
        g = Some(match g {
            None => r.primitive(),
            Some(acc) => acc.gcd(&r),
        });
        if g.as_ref().is_some_and(UPoly::is_constant) {
            return Ok(TriangularSystem::default());
        }
    }
    let g = match g {
        Some(g) if used > 0 => g,
        _ => {
            return Err(AlgebraError::DegenerateElimination(
                "equations share a common factor".into(),
            ))
        }
    };
    let mut remaining = g.squarefree_part();
    let mut parts = Vec::new();
    for &(i, j) in &pairs {
        if remaining.is_constant() {
            break;
        }
        let (a, b) = subresultant1_x(xpolys[i], xpolys[j]);
        if a.is_zero() {
            continue;
        }
        let guard = &(&xpolys[i].lc_x() * &xpolys[j].lc_x()) * &a;
        let bad = remaining.gcd(&guard);
        let handled = remaining.exact_div(&bad).expect("gcd divides").primitive();
        remaining = bad;
        if handled.is_constant() {
            continue;
        }
        let inv = a.inverse_mod(&handled).expect("coprime by construction");
        let x_repr = (&(-&b) * &inv).rem(&handled);
        let mut genuine = handled;
        for p in &polys {
            if genuine.is_constant() {
                break;
            }
            genuine = genuine.gcd(&p.substitute_x_mod(&x_repr, &genuine));
        }
        if !genuine.is_constant() {
            let x_repr = x_repr.rem(&genuine);
            parts.push(TriangularPart { eliminant: genuine, x_repr });
        }
    }
    if !remaining.is_constant() {
        return Err(AlgebraError::DegenerateElimination(format!(
            "could not separate solutions over roots of {remaining}"
        )));
    }
    parts.sort_by(|a, b| match a.eliminant.deg().cmp(&b.eliminant.deg()) {
        Ordering::Equal => format!("{}", a.eliminant).cmp(&format!("{}", b.eliminant)),
        o => o,
    });
    Ok(TriangularSystem { parts })
}
