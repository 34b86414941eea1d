//! Seeded random instance generators and campaign runners for the bound
//! checkers. A fixed seed fully determines every generated instance;
//! degenerate draws (constant functions, `f' ≡ -c`, identically
//! vanishing expressions) are rejected and redrawn.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_bound, zero_census, BoundReport, TheoremId};
use crate::error::Result;
use crate::exactalg::{rat, BigRational, ExactPoly, ExactRatFun};

pub struct InstanceRng(ChaCha8Rng);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Random integer polynomial, degree uniform in `1..=max_deg`,
    /// coefficients in `[-height, height]`, leading coefficient nonzero.
    pub fn poly(&mut self, max_deg: usize, height: i64) -> ExactPoly {
        let deg = self.0.gen_range(1..=max_deg);
        let mut coeffs: Vec<i64> = (0..=deg)
            .map(|_| self.0.gen_range(-height..=height))
            .collect();
        while coeffs[deg] == 0 {
            coeffs[deg] = self.0.gen_range(-height..=height);
        }
        ExactPoly::from_i64(&coeffs)
    }

    /// Random non-constant rational function with numerator and
    /// denominator degrees at most `max_deg`.
    pub fn ratfun(&mut self, max_deg: usize, height: i64) -> ExactRatFun {
        loop {
            let num = self.poly(max_deg, height);
            let den_deg = self.0.gen_range(0..=max_deg);
            let den = if den_deg == 0 {
                ExactPoly::one()
            } else {
                self.poly(den_deg, height)
            };
            if den.is_zero() {
                continue;
            }
            let f = ExactRatFun::new(num, den).expect("nonzero denominator");
            if !f.is_constant() {
                return f;
            }
        }
    }

    pub fn pick<'a, T>(&mut self, choices: &'a [T]) -> &'a T {
        &choices[self.0.gen_range(0..choices.len())]
    }
}

/// Outcome of one fuzz campaign.
#[derive(Clone, Debug, Serialize)]
pub struct Campaign {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub violations: usize,
    /// Reports for violating instances only (all-pass campaigns stay small).
    pub failing: Vec<BoundReport>,
}

impl Campaign {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Theorem 3 bounds on random polynomial instances (polynomials are
/// rational functions, so the rational statement applies), `m` drawn
/// from `ms`. The odd-`m` strengthening is applied inside `check_bound`.
pub fn fuzz_thm_rat(seed: u64, trials: usize, ms: &[u32], precision: u32) -> Result<Campaign> {
    let mut rng = InstanceRng::new(seed);
    let mut failing = Vec::new();
    for _ in 0..trials {
        let f = ExactRatFun::from_poly(rng.poly(4, 20));
        let m = *rng.pick(ms);
        let report = check_bound(TheoremId::ThmRat, &f, m, &rat(0), precision)?;
        if !report.pass {
            failing.push(report);
        }
    }
    Ok(Campaign {
        suite: "thm_rat".into(),
        trials,
        seed,
        violations: failing.len(),
        failing,
    })
}

/// Theorem 7 bounds (including "at most 2d real") on random polynomials.
pub fn fuzz_thm4pol(seed: u64, trials: usize, precision: u32) -> Result<Campaign> {
    let mut rng = InstanceRng::new(seed);
    let ns = [2u32, 3, 4];
    let cs = [rat(1), rat(-2)];
    let mut failing = Vec::new();
    for _ in 0..trials {
        let g = ExactRatFun::from_poly(rng.poly(5, 20));
        let n = *rng.pick(&ns);
        let c = rng.pick(&cs).clone();
        let report = check_bound(TheoremId::Thm4Pol, &g, n, &c, precision)?;
        if !report.pass {
            failing.push(report);
        }
    }
    Ok(Campaign {
        suite: "thm4pol".into(),
        trials,
        seed,
        violations: failing.len(),
        failing,
    })
}

/// Theorem 9 (rational case, `m >= 6`): at least one non-real zero of
/// `f' + f^m + c` that is not a zero of `f`.
pub fn fuzz_thm9(seed: u64, trials: usize, precision: u32) -> Result<Campaign> {
    let mut rng = InstanceRng::new(seed);
    let ms = [6u32, 7];
    let cs = [rat(1), rat(-1)];
    let mut failing = Vec::new();
    let mut done = 0usize;
    while done < trials {
        let f = rng.ratfun(3, 10);
        let c = rng.pick(&cs).clone();
        let m = *rng.pick(&ms);
        if f.derivative().add_scalar(&c).is_zero() {
            continue;
        }
        let report = check_bound(TheoremId::Thm9Rat, &f, m, &c, precision)?;
        if !report.pass {
            failing.push(report);
        }
        done += 1;
    }
    Ok(Campaign {
        suite: "thm9_rat".into(),
        trials,
        seed,
        violations: failing.len(),
        failing,
    })
}

/// Census inequalities `(L)` and `(d)` on random polynomials, plus — for
/// even `n` with `c = 1` — the sharper petal-census bound
/// `ν >= (n-1)d - 1 + M + N + P` on the non-real solution count of
/// `g^n g' = 1`.
pub fn fuzz_census(seed: u64, trials: usize, precision: u32) -> Result<Campaign> {
    let mut rng = InstanceRng::new(seed);
    let mut violations = 0usize;
    let mut failing = Vec::new();
    for trial in 0..trials {
        let g = ExactRatFun::from_poly(rng.poly(4, 12));
        // zero_census asserts (L) and (d) internally.
        let census = zero_census(&g)?;
        if trial % 2 == 0 {
            let n = 2u32;
            let report = check_bound(TheoremId::Thm4Pol, &g, n, &rat(1), precision)?;
            let d = g.degree();
            let sharper = (n as usize - 1) * d - 1 + census.m + census.n + census.p;
            if report.observed_nonreal < sharper {
                violations += 1;
                failing.push(report);
            }
        }
    }
    Ok(Campaign {
        suite: "census".into(),
        trials,
        seed,
        violations,
        failing,
    })
}

/// The paper's own negative controls: instances outside the hypotheses
/// where the counted bound genuinely fails, demonstrating sharpness.
#[derive(Clone, Debug, Serialize)]
pub struct NegativeControl {
    pub name: String,
    pub observed_nonreal: usize,
    /// The bound value that would have been demanded had the statement
    /// applied; the control confirms it is NOT met.
    pub inapplicable_bound: usize,
    pub confirmed: bool,
}

pub fn negative_controls(precision: u32) -> Result<Vec<NegativeControl>> {
    use crate::diffpoly::{hayman_expr, product_expr};
    use crate::rootlab::find_roots;
    let mut out = Vec::new();

    // Degree-2 rational g with n = 2: all solutions of g^2 g' = 1 real,
    // so Theorem 7's polynomial-only bound d(n-1)-1 = 1 fails for
    // rational g.
    let g = crate::exactalg::text::parse_ratfun("3,8,2 ; 3,5")?;
    let expr = product_expr(&g, 2, &rat(1))?;
    let roots = find_roots(expr.num(), precision)?;
    let nonreal = roots.nonreal_distinct();
    out.push(NegativeControl {
        name: "example5_degree2_n2".into(),
        observed_nonreal: nonreal,
        inapplicable_bound: 1,
        confirmed: nonreal == 0,
    });

    // Polynomial f with m = 2, c = -12: f' + f^2 - 12 = 256 z^3 (z-1)
    // has only real zeros; Theorem 9 needs m >= 3 for polynomials.
    let f = crate::exactalg::text::parse_ratfun("2,8,-16")?;
    let expr = hayman_expr(&f, 2, &rat(-12))?;
    let roots = find_roots(expr.num(), precision)?;
    let nonreal = roots.nonreal_distinct();
    out.push(NegativeControl {
        name: "example6_polynomial_m2".into(),
        observed_nonreal: nonreal,
        inapplicable_bound: 1,
        confirmed: nonreal == 0,
    });

    Ok(out)
}

/// Reject clearly degenerate rational draws for Theorem 9 fuzzing:
/// kept for external callers that build their own loops.
pub fn thm9_admissible(f: &ExactRatFun, c: &BigRational) -> bool {
    !f.is_constant() && !f.derivative().add_scalar(c).is_zero() && !c.is_zero()
}
