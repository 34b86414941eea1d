//! Executable checkers for the quantitative non-real zero bounds.
//!
//! Each checker builds the relevant differential polynomial exactly,
//! removes zeros of `f` where the statement counts only "zeros which are
//! not zeros of f", classifies the remaining roots, and compares the
//! observed counts against the required bound. "Distinct" ignores
//! multiplicity throughout, matching the statements.

mod census;
pub mod fuzz;

pub use census::{rolle_interlace_check, zero_census, ZeroCensus};

use serde::Serialize;

use crate::diffpoly::{hayman_expr, product_expr};
use crate::error::{Error, Result};
use crate::exactalg::{BigRational, ExactRatFun};
use crate::rootlab::{exclude_zeros_of, find_roots, RootSet};

/// Which bound statement a report checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Polynomial `f`, `m >= 2`: `f' + f^m` has at least `d(m-1)-1`
    /// distinct non-real zeros that are not zeros of `f`, and at most
    /// `d+1` real zeros.
    Cor1,
    /// Rational `f`, `m >= 5`: at least `(m-4)d` non-real (`(m-3)d` for
    /// odd `m`), at most `4d` (resp. `3d`) real.
    ThmRat,
    /// Rational `g`, `n >= 3`, `c != 0`: `g^n g' = c` has at least
    /// `d(n-2)` distinct non-real solutions.
    CorCrat,
    /// Polynomial `g`, `n >= 2`, `c != 0`: at least `d(n-1)-1` non-real
    /// (`d(n-1)` for odd `n`), at most `2d` real solutions.
    Thm4Pol,
    /// Rational `f`, `m >= 6` (or polynomial `f`, `m >= 3`), `c != 0`,
    /// `f' != -c`: `f' + f^m + c` has at least one non-real zero that is
    /// not a zero of `f`.
    Thm9Rat,
}

impl TheoremId {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cor1" => Some(TheoremId::Cor1),
            "thm_rat" | "thmrat" => Some(TheoremId::ThmRat),
            "cor_crat" | "corcrat" => Some(TheoremId::CorCrat),
            "thm4pol" | "thm_4pol" => Some(TheoremId::Thm4Pol),
            "thm9_rat" | "thm9rat" => Some(TheoremId::Thm9Rat),
            _ => None,
        }
    }
}

/// One checked bound instance.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    /// Degree of `f` (or `g`).
    pub d: usize,
    pub m_or_n: u32,
    #[serde(serialize_with = "crate::theorems::ser_rational")]
    pub c: BigRational,
    pub required_nonreal_min: usize,
    pub required_real_max: Option<usize>,
    pub observed_nonreal: usize,
    pub observed_real: usize,
    pub pass: bool,
    /// Roots of the (exclusion-filtered) expression numerator.
    #[serde(skip)]
    pub roots: RootSet,
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    c: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactalg::text::format_rational(c))
}

fn require(cond: bool, hypothesis: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::precondition(hypothesis))
    }
}

/// Run one bound check. `m_or_n` is `m` for the Hayman-style statements
/// and `n` for the `g^n g' = c` statements; `c` is ignored where the
/// statement has none.
pub fn check_bound(
    theorem_id: TheoremId,
    fun: &ExactRatFun,
    m_or_n: u32,
    c: &BigRational,
    precision_bits: u32,
) -> Result<BoundReport> {
    use num_traits::Zero;
    let d = fun.degree();
    require(!fun.is_constant(), "f must be non-constant")?;
    let m = m_or_n as usize;

    let (expr, exclude_f, required_nonreal_min, required_real_max) = match theorem_id {
        TheoremId::Cor1 => {
            require(fun.is_polynomial(), "COR1 requires polynomial f")?;
            require(m_or_n >= 2, "COR1 requires m >= 2")?;
            let expr = hayman_expr(fun, m_or_n, &BigRational::zero())?;
            (expr, true, d * (m - 1) - 1, Some(d + 1))
        }
        TheoremId::ThmRat => {
            require(m_or_n >= 5, "THM_RAT requires m >= 5")?;
            let expr = hayman_expr(fun, m_or_n, &BigRational::zero())?;
            if m % 2 == 1 {
                (expr, true, (m - 3) * d, Some(3 * d))
            } else {
                (expr, true, (m - 4) * d, Some(4 * d))
            }
        }
        TheoremId::CorCrat => {
            require(m_or_n >= 3, "COR_CRAT requires n >= 3")?;
            require(!c.is_zero(), "COR_CRAT requires c != 0")?;
            let expr = product_expr(fun, m_or_n, c)?;
            (expr, false, d * (m - 2), None)
        }
        TheoremId::Thm4Pol => {
            require(fun.is_polynomial(), "THM4POL requires polynomial g")?;
            require(m_or_n >= 2, "THM4POL requires n >= 2")?;
            require(!c.is_zero(), "THM4POL requires c != 0")?;
            let expr = product_expr(fun, m_or_n, c)?;
            let needed = if m % 2 == 1 { d * (m - 1) } else { d * (m - 1) - 1 };
            (expr, false, needed, Some(2 * d))
        }
        TheoremId::Thm9Rat => {
            require(!c.is_zero(), "THM9 requires c != 0")?;
            require(
                m_or_n >= 6 || (fun.is_polynomial() && m_or_n >= 3),
                "THM9 requires m >= 6 (m >= 3 for polynomial f)",
            )?;
            let fp_plus_c = fun.derivative().add_scalar(c);
            require(!fp_plus_c.is_zero(), "THM9 requires f' not identically -c")?;
            let expr = hayman_expr(fun, m_or_n, c)?;
            (expr, true, 1, None)
        }
    };

    if expr.is_zero() {
        return Err(Error::ExpressionVanishes);
    }

    // Real zeros are counted on the full expression; the non-real count
    // applies the "not zeros of f" filter where the statement does.
    let full_num = expr.num().clone();
    let counted_num = if exclude_f {
        exclude_zeros_of(&full_num, fun.num())?
    } else {
        full_num.clone()
    };

    let (observed_real, observed_nonreal, roots) = if counted_num.is_constant() {
        (0, 0, RootSet::empty())
    } else {
        let roots = find_roots(&counted_num, precision_bits)?;
        let (real, nonreal) = roots.classify_and_count();
        (real, nonreal, roots)
    };
    let observed_real = if exclude_f && !full_num.is_constant() {
        crate::exactalg::sturm_distinct_real_roots(&full_num, None)?
    } else {
        observed_real
    };

    let pass = observed_nonreal >= required_nonreal_min
        && required_real_max.map_or(true, |mx| observed_real <= mx);

    Ok(BoundReport {
        theorem_id,
        d,
        m_or_n,
        c: c.clone(),
        required_nonreal_min,
        required_real_max,
        observed_nonreal,
        observed_real,
        pass,
        roots,
    })
}
