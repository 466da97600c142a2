use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{MoebiusReparam, RationalSpaceCurve, ALL_PAIRS};
use crate::algebra::{resultant_x, solve_triangular, BiPoly, TriangularSystem, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("constant parametrization")]
    ConstantParametrization,
    #[error("coordinates share the factor {witness}")]
    ReducibleParametrization { witness: String },
    #[error("cusp at {witness}")]
    CuspDetected { witness: String },
    #[error("real singular point: {witness}")]
    RealSingularityDetected { witness: String },
    #[error("degenerate parametrization: {reason}")]
    DegenerateParametrization { reason: String },
}

/// A binary form in the curve parameter, kept with its formal degree so that
/// roots at `t = infinity` survive changes of parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterForm {
    pub poly: UPoly,
    pub degree: usize,
}

impl ParameterForm {
    pub fn trivial() -> Self {
        ParameterForm { poly: UPoly::one(), degree: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 0
    }

    pub fn vanishes_at_infinity(&self) -> bool {
        self.poly.deg() < self.degree
    }

    /// The form in the parameter `t'` where `t = M(t')`.
    pub fn pulled_back(&self, m: &MoebiusReparam) -> Self {
        ParameterForm { poly: m.pull_back(&self.poly, self.degree).primitive(), degree: self.degree }
    }
}

/// Outcome of a successful validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub degree: usize,
    pub reduced: bool,
    pub immersion: bool,
    pub no_real_singularities: bool,
    /// Number of unordered parameter pairs `{s, t}` with `P(s) = P(t)`, all
    /// of them imaginary.
    pub imaginary_singular_pairs: usize,
    /// Vanishes exactly at the parameters of those pairs.
    pub singular_parameters: ParameterForm,
}

const CHART_ATTEMPTS: u64 = 8;

pub(super) fn validate(curve: &RationalSpaceCurve) -> Result<ValidationReport, ValidationError> {
    if curve.degree() == 0 {
        return Err(ValidationError::ConstantParametrization);
    }
    let g = curve
        .coords()
        .iter()
        .fold(UPoly::zero(), |acc, p| acc.gcd(p));
    if !g.is_constant() {
        return Err(ValidationError::ReducibleParametrization { witness: g.fmt_with("t") });
    }
    check_immersion(curve)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x7661_6c69);
    for attempt in 0..=CHART_ATTEMPTS {
        let m = if attempt == 0 { MoebiusReparam::identity() } else { MoebiusReparam::random(&mut rng, 4) };
        let chart = curve.reparametrized(&m);
        if infinity_meets_curve(&chart) {
            continue;
        }
        let Ok(sys) = solve_triangular(&chart.double_point_equations(&ALL_PAIRS)) else {
            continue;
        };
        if let Some(p) = sys.real_points().first() {
            let e = p.x_number().to_f64();
            let f = p.y.to_f64();
            return Err(ValidationError::RealSingularityDetected {
                witness: format!("parameters with s + t = {e:.6}, s t = {f:.6}"),
            });
        }
        let form = ParameterForm { poly: singular_parameters(&sys), degree: 2 * sys.complex_count() };
        return Ok(ValidationReport {
            degree: curve.degree(),
            reduced: true,
            immersion: true,
            no_real_singularities: true,
            imaginary_singular_pairs: sys.complex_count(),
            singular_parameters: form.pulled_back(&m.inverse()),
        });
    }
    Err(ValidationError::DegenerateParametrization {
        reason: "double point system stays degenerate under every change of parameter".into(),
    })
}

fn check_immersion(curve: &RationalSpaceCurve) -> Result<(), ValidationError> {
    let g = curve
        .tangent_minors()
        .iter()
        .fold(UPoly::zero(), |acc, p| acc.gcd(p));
    if g.is_zero() {
        return Err(ValidationError::CuspDetected { witness: "every parameter".into() });
    }
    if !g.is_constant() {
        return Err(ValidationError::CuspDetected { witness: format!("roots of {}", g.fmt_with("t")) });
    }
    let rev = curve.reparametrized(&MoebiusReparam::inversion());
    if rev.tangent_minors().iter().all(|p| p.coeff(0) == num_traits::Zero::zero()) {
        return Err(ValidationError::CuspDetected { witness: "t = infinity".into() });
    }
    Ok(())
}

/// True when `P(infinity) = P(t)` for some finite `t`, real or complex.
pub(crate) fn infinity_meets_curve(curve: &RationalSpaceCurve) -> bool {
    let inf = curve.evaluate_at_infinity();
    let mut g = UPoly::zero();
    for (i, j) in ALL_PAIRS {
        let m = &curve.coord(j).scale(&inf[i]) - &curve.coord(i).scale(&inf[j]);
        g = g.gcd(&m);
    }
    !g.is_constant()
}

/// `prod Res_f(E(f), t^2 - r(f) t + f)` over the parts of an `(e, f)` system:
/// a polynomial in `t` vanishing exactly at the preimage parameters.
pub(crate) fn singular_parameters(sys: &TriangularSystem) -> UPoly {
    let mut out = UPoly::one();
    for part in &sys.parts {
        let e = BiPoly::from_x_poly(&part.eliminant);
        let t2 = BiPoly::from_y_poly(&UPoly::from_ints(&[0, 0, 1]));
        let rt = &BiPoly::from_x_poly(&part.x_repr) * &BiPoly::from_y_poly(&UPoly::x());
        let q = &(&t2 - &rt) + &BiPoly::x();
        out = &out * &resultant_x(&e, &q);
    }
    out.primitive()
}
