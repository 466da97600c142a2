use num_traits::Zero;

use super::{rat, AlgebraError, AlgebraicNumber, Rational, Sign, UPoly};

/// Sturm sequence `p, p', -rem(p, p'), ...`, every term scaled by a positive
/// constant only.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<UPoly>,
}

impl SturmSequence {
    pub fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.positive_primitive()];
        if p.is_constant() {
            return SturmSequence { seq };
        }
        seq.push(p.derivative().positive_primitive());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push((-r).positive_primitive());
        }
        SturmSequence { seq }
    }

    fn variations<I: Iterator<Item = Sign>>(signs: I) -> usize {
        let mut last = Sign::Zero;
        let mut v = 0;
        for s in signs {
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|q| q.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|q| q.sign_at_infinity(positive)))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &UPoly, a: &Rational, b: &Rational) -> usize {
    SturmSequence::new(p).count_in(a, b)
}

/// Isolates every real root of a square-free polynomial.
///
/// Intervals are returned in ascending order and are pairwise disjoint as
/// closed intervals. Exact rational roots come back as degenerate intervals.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<AlgebraicNumber>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::InvalidInput("zero polynomial".into()));
    }
    if !p.is_squarefree() {
        return Err(AlgebraError::InvalidInput(format!(
            "polynomial {p} is not square-free"
        )));
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let p = p.primitive();
    let sturm = SturmSequence::new(&p);
    let bound = p.root_bound();
    let mut out = Vec::new();
    if p.eval(&-bound.clone()).is_zero() {
        out.push(AlgebraicNumber::from_parts_unchecked(p.clone(), -bound.clone(), -bound.clone()));
    }
    let mut stack = vec![(-bound.clone(), bound)];
    // Each stack entry is a half-open interval (a, b] holding at least one root.
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count_in(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(settle(&p, &sturm, a, b));
            continue;
        }
        let m = (&a + &b) / rat(2);
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    // neighbours may share an endpoint that is not a root
    for k in 1..out.len() {
        while out[k].lo() <= out[k - 1].hi() {
            out[k].refine();
        }
    }
    Ok(out)
}

/// Turns a half-open `(a, b]` with exactly one root into a valid isolating
/// interval: exact if the root is rational and met, otherwise endpoints that
/// are not roots.
fn settle(p: &UPoly, sturm: &SturmSequence, a: Rational, b: Rational) -> AlgebraicNumber {
    if p.eval(&b).is_zero() {
        return AlgebraicNumber::from_parts_unchecked(p.clone(), b.clone(), b);
    }
    let mut lo = a;
    if p.eval(&lo).is_zero() {
        // The root at `lo` belongs to the neighbouring interval; pull away from it.
        let mut step = (&b - &lo) / rat(2);
        loop {
            let cand = &lo + &step;
            if !p.eval(&cand).is_zero() && sturm.count_in(&cand, &b) == 1 {
                lo = cand;
                break;
            }
            step /= rat(2);
        }
    }
    AlgebraicNumber::from_parts_unchecked(p.clone(), lo, b)
}
