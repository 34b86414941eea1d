use num_traits::{Signed, Zero};

use super::poly::ExactPoly;
use super::BigRational;
use crate::error::{Error, Result};

/// A Sturm chain of the square-free part of a polynomial. Sign-change
/// differences of the chain count distinct real roots exactly.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<ExactPoly>,
    /// Square-free part the chain was built from.
    sf: ExactPoly,
}

/// A real root located exactly: either a rational point or an open
/// interval containing exactly one root of the (square-free) polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum IsolatedRoot {
    Exact(BigRational),
    /// `(lo, hi)` with the root strictly inside and neither endpoint a root.
    Interval(BigRational, BigRational),
}

impl IsolatedRoot {
    pub fn lo(&self) -> BigRational {
        match self {
            IsolatedRoot::Exact(r) => r.clone(),
            IsolatedRoot::Interval(a, _) => a.clone(),
        }
    }

    pub fn hi(&self) -> BigRational {
        match self {
            IsolatedRoot::Exact(r) => r.clone(),
            IsolatedRoot::Interval(_, b) => b.clone(),
        }
    }

    /// Midpoint, handy for sorting and as a numeric seed.
    pub fn approx(&self) -> BigRational {
        match self {
            IsolatedRoot::Exact(r) => r.clone(),
            IsolatedRoot::Interval(a, b) => (a + b) / BigRational::from_integer(2.into()),
        }
    }
}

impl SturmChain {
    /// Build the chain for `p ≠ 0`. The input is replaced by its
    /// square-free part first, so multiple roots are counted once.
    pub fn new(p: &ExactPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = p.squarefree_part()?;
        let mut seq = vec![sf.primitive_positive()];
        if !sf.is_constant() {
            let d = sf.derivative().primitive_positive();
            seq.push(d);
            loop {
                let k = seq.len();
                let r = seq[k - 2].rem(&seq[k - 1]).expect("nonzero divisor");
                if r.is_zero() {
                    break;
                }
                // Negate, then strip the positive content; signs survive.
                seq.push((-&r).primitive_positive());
                if seq.last().unwrap().is_constant() {
                    break;
                }
            }
        }
        Ok(SturmChain { seq, sf })
    }

    pub fn squarefree(&self) -> &ExactPoly {
        &self.sf
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    fn sign_changes_at(&self, x: &BigRational) -> usize {
        let mut changes = 0;
        let mut last: Option<bool> = None;
        for q in &self.seq {
            let v = q.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if let Some(prev) = last {
                if prev != pos {
                    changes += 1;
                }
            }
            last = Some(pos);
        }
        changes
    }

    /// Distinct real roots in the half-open interval `(a, b]`, `a <= b`.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(a <= b);
        self.sign_changes_at(a) - self.sign_changes_at(b)
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        let bound = self.sf.root_bound();
        self.count_half_open(&(-bound.clone()), &bound)
    }

    /// Distinct real roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        if a > b {
            return 0;
        }
        let at_a = usize::from(self.sf.eval(a).is_zero());
        if a == b {
            return at_a;
        }
        self.count_half_open(a, b) + at_a
    }

    /// Isolate every real root of the square-free part into disjoint
    /// locations, sorted in increasing order.
    pub fn isolate_real_roots(&self) -> Vec<IsolatedRoot> {
        let bound = self.sf.root_bound();
        let mut out = Vec::new();
        let lo = -bound.clone();
        let total = self.count_half_open(&lo, &bound);
        if total > 0 {
            self.isolate_rec(&lo, &bound, total, &mut out);
        }
        out
    }

    fn isolate_rec(
        &self,
        a: &BigRational,
        b: &BigRational,
        count: usize,
        out: &mut Vec<IsolatedRoot>,
    ) {
        if count == 0 {
            return;
        }
        if count == 1 {
            // (a, b] holds exactly one root; pin down whether it is b.
            if self.sf.eval(b).is_zero() {
                out.push(IsolatedRoot::Exact(b.clone()));
            } else {
                out.push(IsolatedRoot::Interval(a.clone(), b.clone()));
            }
            return;
        }
        let mid = (a + b) / BigRational::from_integer(2.into());
        let left = self.count_half_open(a, &mid);
        self.isolate_rec(a, &mid, left, out);
        self.isolate_rec(&mid, b, count - left, out);
    }

    /// Shrink an isolating interval by bisection until `stop` accepts it
    /// (or the root is hit exactly). `stop` receives the current open
    /// interval `(lo, hi)` around the root.
    pub fn refine_until(
        &self,
        loc: &IsolatedRoot,
        mut stop: impl FnMut(&BigRational, &BigRational) -> bool,
    ) -> IsolatedRoot {
        let (mut a, mut b) = match loc {
            IsolatedRoot::Exact(_) => return loc.clone(),
            IsolatedRoot::Interval(a, b) => (a.clone(), b.clone()),
        };
        while !stop(&a, &b) {
            let mid = (&a + &b) / BigRational::from_integer(2.into());
            if self.sf.eval(&mid).is_zero() {
                return IsolatedRoot::Exact(mid);
            }
            if self.count_half_open(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        IsolatedRoot::Interval(a, b)
    }

    /// Shrink an isolating interval until its width is at most `width`.
    pub fn refine_to_width(&self, loc: &IsolatedRoot, width: &BigRational) -> IsolatedRoot {
        self.refine_until(loc, |a, b| &(b - a) <= width)
    }
}

/// Distinct real roots of `p`, whole line or a closed interval.
///
/// This is the exact oracle used to arbitrate every numeric real/non-real
/// classification in the crate.
pub fn distinct_real_roots(
    p: &ExactPoly,
    interval: Option<(&BigRational, &BigRational)>,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(0);
    }
    let chain = SturmChain::new(p)?;
    Ok(match interval {
        None => chain.count_all(),
        Some((a, b)) => chain.count_closed(a, b),
    })
}

/// Convenience wrapper: a one-call exact count plus isolating intervals.
pub fn isolate_real_roots(p: &ExactPoly) -> Result<Vec<IsolatedRoot>> {
    Ok(SturmChain::new(p)?.isolate_real_roots())
}
