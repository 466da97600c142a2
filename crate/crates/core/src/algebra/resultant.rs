use num_traits::Zero;

use super::{AlgebraError, BiPoly, Rational, UPoly};

/// Fraction-free (Bareiss) determinant over `Q[y]`.
fn bareiss_det(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut negate = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rows `x^i * p` for `i = count-1 .. 0`, columns indexed by descending power
/// starting at `width - 1`.
fn shifted_rows(p: &BiPoly, count: usize, width: usize) -> Vec<Vec<UPoly>> {
    let m = p.deg_x();
    (0..count)
        .rev()
        .map(|shift| {
            (0..width)
                .map(|c| {
                    let power = width - 1 - c;
                    if power >= shift && power - shift <= m {
                        p.coeff_x(power - shift)
                    } else {
                        UPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Resultant of `p` and `q` with respect to `x`, using their actual `x`-degrees
/// as formal degrees. Returns zero when either input is zero.
pub fn resultant_x(p: &BiPoly, q: &BiPoly) -> UPoly {
    if p.is_zero() || q.is_zero() {
        return UPoly::zero();
    }
    let (m, n) = (p.deg_x(), q.deg_x());
    if m == 0 {
        return p.coeff_x(0).pow(n as u32);
    }
    if n == 0 {
        return q.coeff_x(0).pow(m as u32);
    }
    let mut rows = shifted_rows(p, n, m + n);
    rows.extend(shifted_rows(q, m, m + n));
    bareiss_det(rows)
}

/// First subresultant `S_1 = a x + b` of `p`, `q` with respect to `x`, returned
/// as `(a, b)`. When one input is linear in `x` it is returned as is.
///
/// Both inputs must have positive `x`-degree.
pub fn subresultant1_x(p: &BiPoly, q: &BiPoly) -> (UPoly, UPoly) {
    let (m, n) = (p.deg_x(), q.deg_x());
    assert!(m >= 1 && n >= 1, "subresultant needs positive degrees");
    if n == 1 {
        return (q.coeff_x(1), q.coeff_x(0));
    }
    if m == 1 {
        return (p.coeff_x(1), p.coeff_x(0));
    }
    let width = m + n - 1;
    let mut rows = shifted_rows(p, n - 1, width);
    rows.extend(shifted_rows(q, m - 1, width));
    let lead = width - 2;
    let pick = |last_col: usize| -> Vec<Vec<UPoly>> {
        rows.iter()
            .map(|r| {
                let mut v: Vec<UPoly> = r[..lead].to_vec();
                v.push(r[last_col].clone());
                v
            })
            .collect()
    };
    // column `width - 2` holds x^1, column `width - 1` holds x^0
    (bareiss_det(pick(width - 2)), bareiss_det(pick(width - 1)))
}

/// Resultant of two univariate polynomials.
pub fn resultant(p: &UPoly, q: &UPoly) -> Result<Rational, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::InvalidInput("resultant of the zero polynomial".into()));
    }
    let r = resultant_x(&BiPoly::from_x_poly(p), &BiPoly::from_x_poly(q));
    Ok(if r.is_zero() { Rational::zero() } else { r.coeff(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    /// Sylvester determinant by cofactor expansion over rationals; independent
    /// of the Bareiss path.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Rational::zero();
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn hand_computed_sylvester() {
        // t^2 + 1 and t^2 - 2: the 4x4 Sylvester determinant is 9.
        let m = vec![
            vec![rat(1), rat(0), rat(1), rat(0)],
            vec![rat(0), rat(1), rat(0), rat(1)],
            vec![rat(1), rat(0), rat(-2), rat(0)],
            vec![rat(0), rat(1), rat(0), rat(-2)],
        ];
        assert_eq!(cofactor_det(&m), rat(9));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-2, 0, 1])).unwrap(), rat(9));
    }

    #[test]
    fn linear_case() {
        // Res_x(x - y, x - 2) = y - 2
        let a = BiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]);
        let b = BiPoly::from_terms(&[(1, 0, 1), (0, 0, -2)]);
        assert_eq!(resultant_x(&a, &b), p(&[2, -1]).scale(&rat(-1)));
    }

    #[test]
    fn self_resultant_vanishes() {
        let f = p(&[3, -1, 0, 2]);
        assert_eq!(resultant(&f, &f).unwrap(), rat(0));
        assert!(resultant(&UPoly::zero(), &f).is_err());
    }

    #[test]
    fn subresultant_recovers_common_root() {
        // p = (x - 3)(x + y), q = (x - 3)(x - y) share x = 3 for y != 0
        let xm3 = BiPoly::from_terms(&[(1, 0, 1), (0, 0, -3)]);
        let pp = &xm3 * &BiPoly::from_terms(&[(1, 0, 1), (0, 1, 1)]);
        let qq = &xm3 * &BiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]);
        let (a, b) = subresultant1_x(&pp, &qq);
        let y = rat(5);
        let x = -b.eval(&y) / a.eval(&y);
        assert_eq!(x, rat(3));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let f = p(&[2, -3, 0, 1, 4]);
        let g = p(&[-1, 5, 2]);
        let rows: Vec<Vec<Rational>> = {
            let bf = BiPoly::from_x_poly(&f);
            let bg = BiPoly::from_x_poly(&g);
            let mut r = shifted_rows(&bf, 2, 6);
            r.extend(shifted_rows(&bg, 4, 6));
            r.into_iter().map(|row| row.into_iter().map(|c| c.coeff(0)).collect()).collect()
        };
        assert_eq!(resultant(&f, &g).unwrap(), cofactor_det(&rows));
    }
}
