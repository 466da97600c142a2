//! Randomized checks of the invariance properties on concrete links.
//!
//! Every run is a pure function of its inputs and seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{format_rational, Rational, Sign};
use crate::curve::{CurveError, Link, ProjectiveTransform, RationalSpaceCurve};
use crate::io::Family;
use crate::projection::{ProjectionCenter, ProjectionError, Projector};
use crate::writhe::{diagram_from_projection, writhe_unoriented, WritheError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("no generic center found after {0} attempts")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Writhe(WritheError),
}

impl From<WritheError> for HarnessError {
    fn from(e: WritheError) -> Self {
        match e {
            WritheError::Projection(ProjectionError::SamplingExhausted(n)) => HarnessError::SamplingExhausted(n),
            WritheError::Projection(ProjectionError::Curve(c)) => HarnessError::Curve(c),
            other => HarnessError::Writhe(other),
        }
    }
}

impl From<ProjectionError> for HarnessError {
    fn from(e: ProjectionError) -> Self {
        WritheError::from(e).into()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    /// The center or transform used, or the sampled curve.
    pub label: String,
    /// Orientation class of the transform, for isotopy trials.
    pub orientation: Option<i8>,
    pub writhe: i64,
    pub expected: Option<i64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRun {
    pub property: String,
    pub subject: String,
    pub trials: usize,
    pub seed: u64,
    pub records: Vec<TrialRecord>,
    /// Distinct writhe values seen, ascending.
    pub attained: Vec<i64>,
    pub verdict: bool,
}

impl VerificationRun {
    fn new(property: &str, subject: String, trials: usize, seed: u64, records: Vec<TrialRecord>) -> Self {
        let mut attained: Vec<i64> = records.iter().map(|r| r.writhe).collect();
        attained.sort_unstable();
        attained.dedup();
        let verdict = records.iter().all(|r| r.ok);
        VerificationRun { property: property.into(), subject, trials, seed, records, attained, verdict }
    }

    /// Plain text report, one line per trial.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {} ({} trials, seed {})\n",
            self.property,
            if self.verdict { "pass" } else { "FAIL" },
            self.trials,
            self.seed
        );
        for r in &self.records {
            let expected = r.expected.map(|e| format!(" expected {e}")).unwrap_or_default();
            out.push_str(&format!("  {} Cw = {}{}{}\n", r.label, r.writhe, expected, if r.ok { "" } else { "  <-- mismatch" }));
        }
        let values: Vec<String> = self.attained.iter().map(i64::to_string).collect();
        out.push_str(&format!("  attained: {{{}}}\n", values.join(", ")));
        out
    }
}

/// Derives the seed of trial `k` from a run seed.
fn trial_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k)
}

/// Encomplexed writhe from a sampled generic center, with the center used.
pub fn sampled_writhe(projector: &Projector, seed: u64) -> Result<(i64, ProjectionCenter), HarnessError> {
    let p = projector.sample_generic_center(seed)?;
    let d = diagram_from_projection(p)?;
    Ok((writhe_unoriented(&d), d.center))
}

fn subject(link: &Link) -> String {
    let degrees: Vec<String> = link.components().iter().map(|c| c.degree().to_string()).collect();
    format!("link with {} component(s) of degree {}", link.len(), degrees.join(", "))
}

/// `verify_center_independence(L, n, seed)`.
pub fn verify_center_independence(link: &Link, n: usize, seed: u64) -> Result<VerificationRun, HarnessError> {
    let projector = Projector::new(link)?;
    let mut records: Vec<TrialRecord> = Vec::with_capacity(n);
    for k in 0..n {
        let (w, center) = sampled_writhe(&projector, trial_seed(seed, k as u64))?;
        let expected = records.first().map(|r| r.writhe);
        records.push(TrialRecord {
            label: format!("center {center}"),
            orientation: None,
            writhe: w,
            expected,
            ok: expected.is_none_or(|e| e == w),
        });
    }
    Ok(VerificationRun::new("center independence", subject(link), n, seed, records))
}

/// `verify_isotopy_invariance(L, n, seed)`: `n` transforms of each
/// orientation class; the writhe is preserved by the first kind and negated
/// by the second.
pub fn verify_isotopy_invariance(link: &Link, n: usize, seed: u64) -> Result<VerificationRun, HarnessError> {
    let (base, _) = sampled_writhe(&Projector::new(link)?, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(2 * n);
    for (orientation, expected) in [(Sign::Positive, base), (Sign::Negative, -base)] {
        for k in 0..n {
            let t = ProjectiveTransform::random(&mut rng, 5, orientation);
            let image = link.transformed(&t);
            let (w, _) = sampled_writhe(&Projector::new(&image)?, trial_seed(seed, k as u64))?;
            records.push(TrialRecord {
                label: format!("transform {}", format_matrix(&t)),
                orientation: Some(orientation.to_i32() as i8),
                writhe: w,
                expected: Some(expected),
                ok: w == expected,
            });
        }
    }
    Ok(VerificationRun::new("rigid isotopy invariance", subject(link), 2 * n, seed, records))
}

fn format_matrix(t: &ProjectiveTransform) -> String {
    let rows: Vec<String> = t
        .matrix()
        .iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// `(d - 1)(d - 2) / 2`.
pub fn writhe_bound(degree: usize) -> i64 {
    let d = degree as i64;
    (d - 1) * (d - 2) / 2
}

/// `verify_parity_bounds(d, samples, seed)`: sampled curves of degree `d`
/// must have `|Cw| <= (d-1)(d-2)/2` and `Cw` of the same parity.
pub fn verify_parity_bounds(degree: usize, samples: usize, seed: u64) -> Result<VerificationRun, HarnessError> {
    let bound = writhe_bound(degree);
    let mut records = Vec::with_capacity(samples);
    for k in 0..samples {
        let s = trial_seed(seed, k as u64);
        let curve = RationalSpaceCurve::sample_random(degree, s, 5)?;
        let (w, _) = sampled_writhe(&Projector::new(&Link::single(curve))?, s)?;
        records.push(TrialRecord {
            label: format!("curve {k}"),
            orientation: None,
            writhe: w,
            expected: None,
            ok: w.abs() <= bound && (w - bound).rem_euclid(2) == 0,
        });
    }
    Ok(VerificationRun::new("parity and bound", format!("random curves of degree {degree}"), samples, seed, records))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MemberOutcome {
    Writhe(i64),
    /// Validation failed: the member is not a nonsingular link.
    Singular(String),
    /// The member is valid but no generic projection was found.
    Unresolved(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub tau: String,
    #[serde(skip)]
    pub value: Rational,
    pub outcome: MemberOutcome,
    /// Whether the projection from `(0:0:1:0)` is generic.
    pub standard_projection_generic: bool,
}

impl FamilyMember {
    pub fn writhe(&self) -> Option<i64> {
        match self.outcome {
            MemberOutcome::Writhe(w) => Some(w),
            _ => None,
        }
    }
}

/// Change of the invariant between consecutive resolved members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Jump {
    pub from: String,
    pub to: String,
    pub delta: i64,
    /// A singular member lies strictly between the two.
    pub across_singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyScan {
    pub parameter: String,
    pub members: Vec<FamilyMember>,
}

impl FamilyScan {
    pub fn values(&self) -> Vec<Option<i64>> {
        self.members.iter().map(FamilyMember::writhe).collect()
    }

    pub fn jumps(&self) -> Vec<Jump> {
        let mut out = Vec::new();
        let mut last: Option<(usize, i64)> = None;
        for (k, m) in self.members.iter().enumerate() {
            let Some(w) = m.writhe() else { continue };
            if let Some((p, v)) = last {
                let across_singular = self.members[p + 1..k]
                    .iter()
                    .any(|m| matches!(m.outcome, MemberOutcome::Singular(_)));
                out.push(Jump { from: self.members[p].tau.clone(), to: m.tau.clone(), delta: w - v, across_singular });
            }
            last = Some((k, w));
        }
        out
    }

    /// Jumps without a singular member in between are zero; the others are
    /// `0` or `+-2`.
    pub fn consistent(&self) -> bool {
        self.jumps()
            .iter()
            .all(|j| if j.across_singular { [0, 2, -2].contains(&j.delta) } else { j.delta == 0 })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            let v = match &m.outcome {
                MemberOutcome::Writhe(w) => format!("Cw = {w}"),
                MemberOutcome::Singular(e) => format!("singular ({e})"),
                MemberOutcome::Unresolved(e) => format!("unresolved ({e})"),
            };
            let note = if m.standard_projection_generic { "" } else { "  [standard projection not generic]" };
            out.push_str(&format!("{} = {}: {}{}\n", self.parameter, m.tau, v, note));
        }
        out
    }
}

/// `scan_family(family, grid)`; the grid defaults to the family's own.
pub fn scan_family(family: &Family, grid: Option<&[Rational]>, seed: u64) -> FamilyScan {
    let grid = grid.unwrap_or(&family.grid);
    let members = grid
        .iter()
        .map(|tau| {
            let (outcome, standard_projection_generic) = match family.member(tau).and_then(|l| Projector::new(&l)) {
                Err(e) => (MemberOutcome::Singular(e.to_string()), false),
                Ok(p) => {
                    let standard = p.genericity_check(&ProjectionCenter::standard()).is_generic();
                    let outcome = match sampled_writhe(&p, seed) {
                        Ok((w, _)) => MemberOutcome::Writhe(w),
                        Err(e) => MemberOutcome::Unresolved(e.to_string()),
                    };
                    (outcome, standard)
                }
            };
            FamilyMember { tau: format_rational(tau), value: tau.clone(), outcome, standard_projection_generic }
        })
        .collect();
    FamilyScan { parameter: family.parameter.clone(), members }
}
