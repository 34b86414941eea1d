use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{BigRational, ExactPoly, ExactRatFun, IsolatedRoot, SturmChain};
use crate::rootlab::exclude_zeros_of;

/// The zero census of a real polynomial `g`:
///
/// * `k` — real simple zeros with `g' > 0`,
/// * `l` — real simple zeros with `g' < 0`,
/// * `m` — real multiple zeros of odd multiplicity,
/// * `n` — all multiple zeros (real or not, distinct count),
/// * `p` — non-real simple zeros (distinct count, conjugates separately).
///
/// Two inequalities are forced: `l + m + 1 >= k` and
/// `d >= k + l + p + m + 2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroCensus {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl ZeroCensus {
    pub fn inequality_l_holds(&self) -> bool {
        self.l + self.m + 1 >= self.k
    }

    pub fn inequality_d_holds(&self, d: usize) -> bool {
        d >= self.k + self.l + self.p + self.m + 2 * self.n
    }
}

/// Sign of `g'` on the open isolating interval of a simple real zero,
/// refined exactly: the interval is shrunk until `g'` has no root in it,
/// then one exact evaluation decides.
fn derivative_sign(
    chain_factor: &SturmChain,
    dchain: &SturmChain,
    dg: &ExactPoly,
    loc: &IsolatedRoot,
) -> i8 {
    let value_sign = |v: &BigRational| -> i8 {
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    match loc {
        IsolatedRoot::Exact(r) => value_sign(&dg.eval(r)),
        IsolatedRoot::Interval(_, _) => {
            let refined = chain_factor.refine_until(loc, |a, b| {
                dchain.count_half_open(a, b) == 0
            });
            match refined {
                IsolatedRoot::Exact(r) => value_sign(&dg.eval(&r)),
                IsolatedRoot::Interval(_, b) => {
                    // No root of g' in (a, b], so g' keeps one sign there
                    // and g'(b) is nonzero.
                    value_sign(&dg.eval(&b))
                }
            }
        }
    }
}

/// Exact zero census of a nonconstant real polynomial, via square-free
/// structure and Sturm isolation only (no numerics). Panics if either
/// census inequality fails — they are theorems, so a violation is an
/// implementation bug.
pub fn zero_census(g: &ExactRatFun) -> Result<ZeroCensus> {
    if !g.is_polynomial() {
        return Err(Error::precondition("zero census requires polynomial g"));
    }
    let poly = g.num().clone();
    if poly.is_constant() {
        return Err(Error::precondition("zero census requires nonconstant g"));
    }
    let dg = poly.derivative();
    let dchain = SturmChain::new(&dg)?;

    let mut census = ZeroCensus {
        k: 0,
        l: 0,
        m: 0,
        n: 0,
        p: 0,
    };
    for factor in poly.squarefree_decompose()? {
        let chain = SturmChain::new(&factor.factor)?;
        let real_locs = chain.isolate_real_roots();
        let total_distinct = factor.factor.deg_or_zero();
        if factor.multiplicity == 1 {
            census.p += total_distinct - real_locs.len();
            for loc in &real_locs {
                match derivative_sign(&chain, &dchain, &dg, loc) {
                    1 => census.k += 1,
                    -1 => census.l += 1,
                    _ => unreachable!("simple zero has g' != 0"),
                }
            }
        } else {
            census.n += total_distinct;
            if factor.multiplicity % 2 == 1 {
                census.m += real_locs.len();
            }
        }
    }

    let d = poly.deg_or_zero();
    assert!(census.inequality_l_holds(), "census inequality (L) violated");
    assert!(
        census.inequality_d_holds(d),
        "census inequality (d) violated"
    );
    Ok(census)
}

/// Check the Rolle interlacing property: strictly between each adjacent
/// pair of real zeros of `g + shift` there is a real pole of `g` or a
/// real zero of `g'` that is not a zero of `g + shift`. Vacuously true
/// with fewer than two real zeros. All locations are exact.
pub fn rolle_interlace_check(g: &ExactRatFun, shift: &BigRational) -> Result<bool> {
    let h = g.add_scalar(shift);
    let hn = h.num();
    if hn.is_zero() {
        return Err(Error::precondition("g + shift must not vanish identically"));
    }
    if hn.is_constant() {
        return Ok(true);
    }
    let hchain = SturmChain::new(hn)?;
    let zeros = hchain.isolate_real_roots();
    if zeros.len() < 2 {
        return Ok(true);
    }

    // Candidate points: real poles of g, and real zeros of g' that are
    // not zeros of h.
    let dg = g.derivative();
    let dg_num_filtered = if dg.num().is_zero() {
        ExactPoly::one()
    } else {
        exclude_zeros_of(dg.num(), hn)?
    };
    let witness = &dg_num_filtered * g.den();
    if witness.is_constant() {
        // No candidate points anywhere, yet multiple zeros exist.
        return Ok(false);
    }
    let wchain = SturmChain::new(&witness)?;

    // Shrink each isolating interval until it contains no witness root;
    // the zeros of h are themselves never witness roots, so this stops.
    let tight: Vec<IsolatedRoot> = zeros
        .iter()
        .map(|loc| {
            hchain.refine_until(loc, |a, b| wchain.count_half_open(a, b) == 0)
        })
        .collect();

    for pair in tight.windows(2) {
        let upper_of_left = pair[0].hi();
        let lower_of_right = pair[1].lo();
        if wchain.count_half_open(&upper_of_left, &lower_of_right) == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
