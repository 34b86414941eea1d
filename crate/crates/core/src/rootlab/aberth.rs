//! Simultaneous root iteration and Newton polishing.
//!
//! A square-free factor is solved in three stages: Aberth–Ehrlich in
//! `f64` from deterministic perturbed-circle guesses, Newton polishing
//! of each root at the full dyadic scale, and a validation pass
//! (pairwise separation and residuals). When `f64` iteration cannot
//! separate the roots, the same Aberth sweep is re-run entirely in
//! multiprecision before giving up.

use num_complex::Complex64;

use super::mpfloat::{rat_to_f64, MpComplex, MpReal};
use crate::exactalg::{BigRational, ExactPoly};
use crate::error::{Error, Result};

/// Exact coefficients pre-rounded to the working scale, so repeated
/// Horner evaluations do not redo rational-to-dyadic conversions.
pub struct MpPoly {
    coeffs: Vec<MpReal>,
    scale: u32,
}

impl MpPoly {
    pub fn new(p: &ExactPoly, scale: u32) -> Self {
        MpPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| MpReal::from_rational(c, scale))
                .collect(),
            scale,
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&MpReal::from_i64(k as i64, self.scale)))
            .collect();
        MpPoly {
            coeffs,
            scale: self.scale,
        }
    }

    pub fn eval(&self, z: &MpComplex) -> MpComplex {
        let mut acc = MpComplex::zero(self.scale);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            acc.re = acc.re.add(c);
        }
        acc
    }
}

/// Deterministic pseudo-jitter in `[-0.5, 0.5)` from an index.
fn jitter(k: usize) -> f64 {
    let h = (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(31);
    (h >> 11) as f64 / (1u64 << 53) as f64 - 0.5
}

/// Fujiwara-style bound on root modulus for monic-normalized `f64`
/// coefficients.
fn fujiwara_bound(coeffs: &[f64]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut bound: f64 = 0.0;
    for (i, c) in coeffs[..n].iter().enumerate() {
        let k = n - i;
        bound = bound.max((c / lead).abs().powf(1.0 / k as f64));
    }
    2.0 * bound
}

fn eval_f64(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Aberth–Ehrlich in `f64`. Returns approximations for all `deg` roots.
fn aberth_f64(coeffs: &[f64], max_iter: usize) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let radius = fujiwara_bound(coeffs).clamp(1e-3, 1e8);
    let centroid = -coeffs[deg - 1] / (deg as f64 * coeffs[deg]);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64 + 0.25 + 0.1 * jitter(k)) / deg as f64
                + 0.41;
            Complex64::new(centroid, 0.0)
                + Complex64::from_polar(radius * (1.0 + 0.05 * jitter(k + deg)), theta)
        })
        .collect();

    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let z = roots[i];
            let pv = eval_f64(coeffs, z);
            let dv = eval_f64(&deriv, z);
            if !pv.is_finite() || !dv.is_finite() {
                roots[i] = Complex64::from_polar(radius * (1.0 + 0.2 * jitter(i + 3)), 1.7 + i as f64);
                max_step = f64::INFINITY;
                continue;
            }
            let w = if dv.norm_sqr() == 0.0 {
                Complex64::new(1e-12, 1e-12)
            } else {
                pv / dv
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &other) in roots.iter().enumerate() {
                if j != i {
                    let diff = z - other;
                    if diff.norm_sqr() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let correction = if denom.norm_sqr() == 0.0 { w } else { w / denom };
            if correction.is_finite() {
                roots[i] = z - correction;
                max_step = max_step.max(correction.norm() / (1.0 + z.norm()));
            } else {
                roots[i] = z - w;
                max_step = f64::INFINITY;
            }
        }
        if max_step < 1e-14 {
            break;
        }
    }
    roots
}

/// Aberth–Ehrlich entirely in multiprecision, seeded from approximate
/// roots. Slow path, used when the `f64` sweep fails validation.
fn aberth_mp(p: &MpPoly, seeds: &[MpComplex], max_iter: usize, scale: u32) -> Vec<MpComplex> {
    let deriv = p.derivative();
    let mut roots = seeds.to_vec();
    let deg = roots.len();
    let stop = MpReal::two_pow(-(scale as i64 * 3 / 4), scale);
    for _ in 0..max_iter {
        let mut worst = MpReal::zero(scale);
        for i in 0..deg {
            let z = roots[i].clone();
            let pv = p.eval(&z);
            let dv = deriv.eval(&z);
            let Some(w) = pv.div(&dv) else { continue };
            let mut rep = MpComplex::zero(scale);
            for (j, other) in roots.iter().enumerate() {
                if j != i {
                    let diff = z.sub(other);
                    if let Some(inv) = MpComplex::from_f64(1.0, 0.0, scale).div(&diff) {
                        rep = rep.add(&inv);
                    }
                }
            }
            let denom = MpComplex::from_f64(1.0, 0.0, scale).sub(&w.mul(&rep));
            let correction = w.div(&denom).unwrap_or(w);
            roots[i] = z.sub(&correction);
            let step = correction.abs();
            if step.cmp_val(&worst) == std::cmp::Ordering::Greater {
                worst = step;
            }
        }
        if worst.cmp_val(&stop) != std::cmp::Ordering::Greater {
            break;
        }
    }
    roots
}

/// Newton-polish one approximate root at full scale. Returns the refined
/// point; quadratic convergence makes ~6 iterations plenty for good
/// seeds, but up to `40` are allowed before giving up on improvement.
fn newton_polish(p: &MpPoly, dp: &MpPoly, seed: MpComplex, scale: u32) -> MpComplex {
    let stop = MpReal::two_pow(-(scale as i64) + 24, scale);
    let mut z = seed;
    for _ in 0..40 {
        let pv = p.eval(&z);
        let dv = dp.eval(&z);
        let Some(step) = pv.div(&dv) else { break };
        z = z.sub(&step);
        if step.abs().cmp_val(&stop) != std::cmp::Ordering::Greater {
            break;
        }
    }
    z
}

/// Scale of the coefficient magnitudes, used for relative residual
/// bounds: `max|c_i| · max(1, |z|)^deg`.
pub fn residual_scale(p: &ExactPoly, z_abs: f64) -> f64 {
    let maxc = p
        .coeffs()
        .iter()
        .map(|c| rat_to_f64(c).abs())
        .fold(0.0_f64, f64::max);
    maxc * z_abs.max(1.0).powi(p.deg_or_zero() as i32)
}

/// Find all roots of a square-free polynomial at the given dyadic scale.
/// `precision_bits` controls the accepted residual: after polishing,
/// `|p(root)| <= 2^(-precision_bits/2) · residual_scale` must hold.
pub fn roots_of_squarefree(
    p: &ExactPoly,
    precision_bits: u32,
    scale: u32,
) -> Result<Vec<MpComplex>> {
    let deg = p.deg_or_zero();
    debug_assert!(deg >= 1);

    // Degree 1 and 2 have closed forms that are exact (up to one dyadic
    // rounding), so skip iteration entirely.
    if deg == 1 {
        let root = -(p.coeff(0) / p.coeff(1));
        return Ok(vec![MpComplex::from_real_rational(&root, scale)]);
    }
    if deg == 2 {
        let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
        let disc = &b * &b - BigRational::from_integer(4.into()) * &a * &c;
        let two_a = BigRational::from_integer(2.into()) * &a;
        let mid = MpReal::from_rational(&(-&b / &two_a), scale);
        let zero = MpReal::zero(scale);
        let disc_mp = MpReal::from_rational(&(&disc / (&two_a * &two_a)), scale);
        if !disc_mp.is_negative() {
            let s = disc_mp.sqrt().expect("non-negative discriminant");
            return Ok(vec![
                MpComplex::new(mid.sub(&s), zero.clone()),
                MpComplex::new(mid.add(&s), zero),
            ]);
        } else {
            let s = disc_mp.neg().sqrt().expect("positive after negation");
            return Ok(vec![
                MpComplex::new(mid.clone(), s.neg()),
                MpComplex::new(mid, s),
            ]);
        }
    }

    // Normalize coefficients for the f64 stage.
    let maxc = p
        .coeffs()
        .iter()
        .map(|c| rat_to_f64(c).abs())
        .fold(0.0_f64, f64::max);
    let coeffs_f64: Vec<f64> = p.coeffs().iter().map(|c| rat_to_f64(c) / maxc).collect();

    let approx = aberth_f64(&coeffs_f64, 300);
    let mp = MpPoly::new(p, scale);
    let dmp = mp.derivative();
    let mut polished: Vec<MpComplex> = approx
        .iter()
        .map(|z| newton_polish(&mp, &dmp, MpComplex::from_f64(z.re, z.im, scale), scale))
        .collect();

    if !validate(p, &mp, &polished, precision_bits, scale) {
        // Multiprecision fallback: full Aberth sweep at scale, then polish.
        let seeds: Vec<MpComplex> = approx
            .iter()
            .map(|z| MpComplex::from_f64(z.re, z.im, scale))
            .collect();
        let swept = aberth_mp(&mp, &seeds, 400, scale);
        polished = swept
            .into_iter()
            .map(|z| newton_polish(&mp, &dmp, z, scale))
            .collect();
        if !validate(p, &mp, &polished, precision_bits, scale) {
            let worst = worst_residual(p, &mp, &polished);
            return Err(Error::NonConvergence {
                worst_residual: worst,
            });
        }
    }
    Ok(polished)
}

fn worst_residual(p: &ExactPoly, mp: &MpPoly, roots: &[MpComplex]) -> f64 {
    roots
        .iter()
        .map(|z| {
            let r = mp.eval(z).abs().to_f64();
            r / residual_scale(p, z.abs().to_f64())
        })
        .fold(0.0_f64, f64::max)
}

/// Residual and pairwise-separation validation.
fn validate(
    p: &ExactPoly,
    mp: &MpPoly,
    roots: &[MpComplex],
    precision_bits: u32,
    scale: u32,
) -> bool {
    let tol = 2f64.powi(-(precision_bits as i32) / 2);
    for z in roots {
        let resid = mp.eval(z).abs().to_f64();
        if !(resid <= tol * residual_scale(p, z.abs().to_f64())) {
            return false;
        }
    }
    // Distinct roots of a square-free factor must stay separated well
    // above the polishing error.
    let sep = MpReal::two_pow(-(scale as i64) / 2, scale);
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let d = roots[i].sub(&roots[j]).abs();
            if d.cmp_val(&sep) != std::cmp::Ordering::Greater {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots_of_unity() {
        let p = ExactPoly::from_i64(&[-1, 0, 0, 1]);
        let roots = roots_of_squarefree(&p, 128, 256).unwrap();
        assert_eq!(roots.len(), 3);
        for z in &roots {
            let (re, im) = z.to_f64_pair();
            let norm = (re * re + im * im).sqrt();
            assert!((norm - 1.0).abs() < 1e-30);
        }
    }

    #[test]
    fn close_roots_stay_separated() {
        // (z - 1)(z - 1.0001)(z + 2) scaled to integer coefficients:
        // (z-1)(10000 z - 10001)(z+2)
        let p = &(&ExactPoly::from_i64(&[-1, 1]) * &ExactPoly::from_i64(&[-10001, 10000]))
            * &ExactPoly::from_i64(&[2, 1]);
        let roots = roots_of_squarefree(&p, 128, 256).unwrap();
        assert_eq!(roots.len(), 3);
        let mut reals: Vec<f64> = roots.iter().map(|z| z.to_f64_pair().0).collect();
        reals.sort_by(f64::total_cmp);
        assert!((reals[0] + 2.0).abs() < 1e-25);
        assert!((reals[1] - 1.0).abs() < 1e-25);
        assert!((reals[2] - 1.0001).abs() < 1e-25);
    }

    #[test]
    fn quadratic_conjugate_pair_is_exactly_symmetric() {
        let p = ExactPoly::from_i64(&[1, 1, 1]); // roots (-1 ± i√3)/2
        let roots = roots_of_squarefree(&p, 128, 256).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].re, roots[1].re);
        assert_eq!(roots[0].im, roots[1].im.neg());
    }
}
