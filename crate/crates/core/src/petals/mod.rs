//! Parabolic-dynamics engine.
//!
//! Builds the auxiliary maps `F(z) = z − 1/f(z/(m-1))^{m-1}` and
//! `G(z) = z − g^{n+1}/(n+1)`, locates their multiple fixed points
//! (finite ones from the displacement numerator, infinity through the
//! conjugation `w ↦ 1/map(1/w)`), predicts the Leau petal access angles
//! from the `(ν+1)`-th derivative, and verifies by iteration that
//! critical orbits converge into petals along the predicted directions.

mod orbit;
pub mod fuzz;

pub use orbit::{orbit_to_petal, orbit_to_petal_f64, petal_report, OrbitCaps, OrbitEntry, OrbitOutcome, PetalReport, PointReport};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BigRational, ExactRatFun};
use crate::rootlab::{self, MpComplex, RootSet};

/// Fixed-point location: a finite multiprecision point or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Finite(MpComplex),
    Infinity,
}

impl Location {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Location::Infinity)
    }

    pub fn to_f64_pair(&self) -> Option<(f64, f64)> {
        match self {
            Location::Finite(z) => Some(z.to_f64_pair()),
            Location::Infinity => None,
        }
    }
}

/// A multiple fixed point with its petal count and predicted access
/// angles, sorted ascending in `[0, 2π)`. `ν = μ − 1` petals, equally
/// spaced by `2π/ν`; for a real map at a real point the angle set is
/// symmetric under negation mod 2π.
#[derive(Clone, Debug)]
pub struct ParabolicPoint {
    pub location: Location,
    pub multiplicity: u32,
    pub petal_count: u32,
    pub predicted_angles: Vec<f64>,
}

/// `F(z) = z − 1/f(z/(m-1))^{m-1}`: critical points of `F` correspond to
/// solutions of `f'(w) + f(w)^m = 0` with `w = z/(m-1)`.
pub fn build_f_map(f: &ExactRatFun, m: u32) -> Result<ExactRatFun> {
    if m < 2 {
        return Err(Error::precondition("build_F requires m >= 2"));
    }
    if f.is_zero() {
        return Err(Error::precondition("build_F requires f not identically 0"));
    }
    let alpha = BigRational::new(1.into(), (m as i64 - 1).into());
    let fw = f.compose_linear(&alpha, &BigRational::zero())?;
    let inv_pow = fw.pow(m - 1).recip()?;
    Ok(&ExactRatFun::var() - &inv_pow)
}

/// `G(z) = z − g^{n+1}/(n+1)`: `G' = 1 − g^n g'`.
pub fn build_g_map(g: &ExactRatFun, n: u32) -> Result<ExactRatFun> {
    if n < 1 {
        return Err(Error::precondition("build_G requires n >= 1"));
    }
    let coeff = ExactRatFun::constant(BigRational::new(1.into(), (n as i64 + 1).into()));
    Ok(&ExactRatFun::var() - &(&coeff * &g.pow(n + 1)))
}

/// The conjugated map `w ↦ 1/map(1/w)` used to inspect infinity.
pub fn conjugate_at_infinity(map: &ExactRatFun) -> Result<ExactRatFun> {
    let at_recip = map.substitute_reciprocal();
    at_recip.recip()
}

/// All multiple fixed points of the map: multiple roots of the
/// displacement numerator, plus infinity when the conjugated map has a
/// multiple fixed point at 0. Predicted angles are filled in.
pub fn parabolic_points(map: &ExactRatFun, precision_bits: u32) -> Result<Vec<ParabolicPoint>> {
    if map.degree() < 2 {
        return Err(Error::precondition("map must be non-linear"));
    }
    let displacement = map - &ExactRatFun::var();
    if displacement.is_zero() {
        return Err(Error::DegenerateMap);
    }
    let mut out = Vec::new();

    for factor in displacement.num().squarefree_decompose()? {
        if factor.multiplicity < 2 {
            continue;
        }
        for root in rootlab::find_roots(&factor.factor, precision_bits)?.entries {
            let mu = factor.multiplicity;
            let angles = angles_at_finite(map, &root.value, mu)?;
            out.push(ParabolicPoint {
                location: Location::Finite(root.value),
                multiplicity: mu,
                petal_count: mu - 1,
                predicted_angles: angles,
            });
        }
    }

    if let Some(mu) = multiplicity_at_infinity(map)? {
        if mu >= 2 {
            let angles = angles_at_infinity(map, mu)?;
            out.push(ParabolicPoint {
                location: Location::Infinity,
                multiplicity: mu,
                petal_count: mu - 1,
                predicted_angles: angles,
            });
        }
    }
    Ok(out)
}

/// Multiplicity of the fixed point of `1/map(1/w)` at `w = 0`, or `None`
/// when 0 is not fixed (including the pole case).
pub fn multiplicity_at_infinity(map: &ExactRatFun) -> Result<Option<u32>> {
    let conj = match conjugate_at_infinity(map) {
        Ok(c) => c,
        // map(1/w) identically zero cannot happen for nonzero map.
        Err(e) => return Err(e),
    };
    let disp = &conj - &ExactRatFun::var();
    if disp.is_zero() {
        return Err(Error::DegenerateMap);
    }
    let zero = BigRational::zero();
    if disp.den().eval(&zero).is_zero() {
        return Ok(None); // pole at 0
    }
    let mut order = 0u32;
    for c in disp.num().coeffs() {
        if c.is_zero() {
            order += 1;
        } else {
            break;
        }
    }
    if disp.num().is_zero() {
        return Err(Error::DegenerateMap);
    }
    Ok(if order >= 1 { Some(order) } else { None })
}

/// Lemma-formula angles at a finite parabolic point:
/// `θ_j = (−arg map^{(ν+1)}(ζ) − π + 2πj)/ν`, sorted into `[0, 2π)`.
fn angles_at_finite(map: &ExactRatFun, zeta: &MpComplex, mu: u32) -> Result<Vec<f64>> {
    let nu = mu - 1;
    let deriv = nth_derivative(map, mu);
    let value = rootlab::eval_ratfun(&deriv, zeta).ok_or(Error::VanishingDerivative)?;
    if value.is_zero() {
        return Err(Error::VanishingDerivative);
    }
    Ok(spread_angles(value.arg(), nu))
}

/// Angles at infinity: computed for the conjugated map at 0, then
/// negated, since `arg z = −arg w` under `w = 1/z`.
fn angles_at_infinity(map: &ExactRatFun, mu: u32) -> Result<Vec<f64>> {
    let nu = mu - 1;
    let conj = conjugate_at_infinity(map)?;
    let deriv = nth_derivative(&conj, mu);
    let zero = BigRational::zero();
    let value = deriv
        .eval(&zero)
        .ok_or(Error::VanishingDerivative)?;
    if value.is_zero() {
        return Err(Error::VanishingDerivative);
    }
    let arg = if value.is_positive() { 0.0 } else { std::f64::consts::PI };
    let mut angles: Vec<f64> = spread_angles(arg, nu)
        .into_iter()
        .map(|a| {
            let neg = std::f64::consts::TAU - a;
            if neg >= std::f64::consts::TAU {
                neg - std::f64::consts::TAU
            } else {
                neg
            }
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

fn spread_angles(arg_deriv: f64, nu: u32) -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    let mut angles: Vec<f64> = (1..=nu)
        .map(|j| {
            let theta = (-arg_deriv - std::f64::consts::PI + tau * j as f64) / nu as f64;
            theta.rem_euclid(tau)
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    angles
}

fn nth_derivative(map: &ExactRatFun, n: u32) -> ExactRatFun {
    let mut d = map.clone();
    for _ in 0..n {
        d = d.derivative();
    }
    d
}

/// Critical points of the map: roots of the numerator of `map'`.
pub fn critical_points(map: &ExactRatFun, precision_bits: u32) -> Result<RootSet> {
    if map.is_constant() {
        return Err(Error::DegenerateMap);
    }
    let dm = map.derivative();
    if dm.is_zero() {
        return Err(Error::DegenerateMap);
    }
    if dm.num().is_constant() {
        return Ok(RootSet::empty());
    }
    rootlab::find_roots(dm.num(), precision_bits)
}

/// Count of petal directions lying on the real axis (`θ_j ≡ 0 mod π`):
/// by the equal-spacing arithmetic this is at most 2, and at most 1 when
/// `ν` is odd, for any parabolic point.
pub fn real_direction_count(angles: &[f64]) -> usize {
    angles
        .iter()
        .filter(|&&a| a.sin().abs() < 1e-9)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_ratfun;
    use crate::exactalg::rat;

    #[test]
    fn build_f_examples() {
        // f = z, m = 2: F = z - 1/z
        let f = ExactRatFun::var();
        let map = build_f_map(&f, 2).unwrap();
        assert_eq!(map, parse_ratfun("-1,0,1 ; 0,1").unwrap());

        // f = z, m = 3: F = z - 4/z^2
        let map = build_f_map(&f, 3).unwrap();
        assert_eq!(map, parse_ratfun("-4,0,0,1 ; 0,0,1").unwrap());

        // f = 1/z, m = 2: F = z - z = 0, degenerate but constructible
        let f = parse_ratfun("1 ; 0,1").unwrap();
        let map = build_f_map(&f, 2).unwrap();
        assert!(map.is_zero());
        assert!(map.derivative().is_zero());
        assert!(matches!(critical_points(&map, 64), Err(Error::DegenerateMap)));
    }

    #[test]
    fn build_g_examples() {
        let g = ExactRatFun::var();
        let map = build_g_map(&g, 2).unwrap();
        assert_eq!(map, parse_ratfun("0,1,0,-1/3").unwrap());

        let map_neg = build_g_map(&(-&g), 2).unwrap();
        assert_eq!(map_neg, parse_ratfun("0,1,0,1/3").unwrap());

        let g2 = parse_ratfun("0,0,1").unwrap();
        let map = build_g_map(&g2, 2).unwrap();
        assert_eq!(map, parse_ratfun("0,1,0,0,0,0,-1/3").unwrap());
    }

    #[test]
    fn parabolic_point_of_cubic_map() {
        // z - z^3/3: single parabolic point at 0 with mu = 3
        let map = parse_ratfun("0,1,0,-1/3").unwrap();
        let pts = parabolic_points(&map, 128).unwrap();
        assert_eq!(pts.len(), 1);
        let pt = &pts[0];
        assert!(matches!(&pt.location, Location::Finite(z) if z.is_zero()));
        assert_eq!(pt.multiplicity, 3);
        assert_eq!(pt.petal_count, 2);
        // G'''(0) = -2: angles {0, π}
        assert!((pt.predicted_angles[0] - 0.0).abs() < 1e-12);
        assert!((pt.predicted_angles[1] - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn flipped_cubic_angles() {
        // z + z^3/3: G'''(0) = 2, angles {π/2, 3π/2}
        let map = parse_ratfun("0,1,0,1/3").unwrap();
        let pts = parabolic_points(&map, 128).unwrap();
        assert_eq!(pts.len(), 1);
        let a = &pts[0].predicted_angles;
        assert!((a[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((a[1] - 3.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn infinity_multiplicity_of_f_map() {
        // F for f = z (d = 1), m = 2: multiple fixed point at ∞ with
        // mu = d(m-1) + 2 = 3
        let f = ExactRatFun::var();
        let map = build_f_map(&f, 2).unwrap();
        assert_eq!(multiplicity_at_infinity(&map).unwrap(), Some(3));
        let pts = parabolic_points(&map, 128).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].location.is_infinite());
        assert_eq!(pts[0].multiplicity, 3);
    }

    #[test]
    fn zeros_of_g_become_fixed_points_of_multiplicity_s_times_n_plus_1() {
        // g = z(z-1), n = 2: fixed points at 0 and 1, each mu = 3
        let g = parse_ratfun("0,-1,1 ; 1").unwrap();
        let map = build_g_map(&g, 2).unwrap();
        let pts = parabolic_points(&map, 128).unwrap();
        let mut mus: Vec<u32> = pts.iter().map(|p| p.multiplicity).collect();
        mus.sort_unstable();
        // finite points 0, 1 with mu 3 each; ∞ of a polynomial map of
        // degree >= 2 is superattracting, hence excluded
        assert_eq!(mus, vec![3, 3]);
        assert!(pts.iter().all(|p| !p.location.is_infinite()));
    }

    #[test]
    fn critical_points_of_cubic_maps() {
        let map = parse_ratfun("0,1,0,-1/3").unwrap();
        let cps = critical_points(&map, 128).unwrap();
        assert_eq!(cps.classify_and_count(), (2, 0)); // ±1

        let map = parse_ratfun("0,1,0,1/3").unwrap();
        let cps = critical_points(&map, 128).unwrap();
        assert_eq!(cps.classify_and_count(), (0, 2)); // ±i

        // F for f = z, m = 3: F' = 1 + 8/z^3, critical points z^3 = -8
        let f = ExactRatFun::var();
        let map = build_f_map(&f, 3).unwrap();
        let cps = critical_points(&map, 128).unwrap();
        assert_eq!(cps.classify_and_count(), (1, 2));
    }

    #[test]
    fn real_direction_law() {
        let map = parse_ratfun("0,1,0,-1/3").unwrap();
        let pts = parabolic_points(&map, 128).unwrap();
        assert_eq!(real_direction_count(&pts[0].predicted_angles), 2);

        let map = parse_ratfun("0,1,0,1/3").unwrap();
        let pts = parabolic_points(&map, 128).unwrap();
        assert_eq!(real_direction_count(&pts[0].predicted_angles), 0);
    }

    #[test]
    fn angle_set_of_real_map_is_negation_symmetric() {
        let f = parse_ratfun("1,2 ; 0,1").unwrap();
        let map = build_f_map(&f, 3).unwrap();
        for pt in parabolic_points(&map, 128).unwrap() {
            if !matches!(&pt.location, Location::Finite(z) if z.is_real()) {
                continue;
            }
            let tau = std::f64::consts::TAU;
            for &a in &pt.predicted_angles {
                let neg = (tau - a) % tau;
                assert!(
                    pt.predicted_angles
                        .iter()
                        .any(|&b| (b - neg).abs() < 1e-9 || (b - neg).abs() > tau - 1e-9),
                    "angle {a} lacks mirror in {:?}",
                    pt.predicted_angles
                );
            }
        }
    }
}
