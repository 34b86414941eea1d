//! Critical-orbit iteration and petal capture.
//!
//! Orbits are iterated in `f64`: the capture radius and the angle
//! tolerance sit ten orders of magnitude above double-precision noise,
//! while parabolic convergence (`|z_k − ζ| ~ k^{-1/ν}`) makes iteration
//! counts, not arithmetic precision, the binding budget. Root finding
//! and angle prediction stay multiprecision.

use num_complex::Complex64;
use serde::Serialize;

use super::{real_direction_count, Location, ParabolicPoint};
use crate::exactalg::ExactRatFun;
use crate::rootlab::mpfloat::rat_to_f64;
use crate::rootlab::MpComplex;

/// Iteration caps and tolerances.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitCaps {
    pub max_iter: u64,
    pub capture_radius: f64,
    pub angle_tol: f64,
    pub escape_radius: f64,
    /// Length of the tail window used for the running angle mean.
    pub tail_window: usize,
}

impl Default for OrbitCaps {
    fn default() -> Self {
        OrbitCaps {
            max_iter: 1_000_000,
            capture_radius: 0.05,
            angle_tol: 0.05,
            escape_radius: 1e8,
            tail_window: 1000,
        }
    }
}

/// Where one orbit ended up.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum OrbitOutcome {
    /// Captured by `points[point]` along predicted angle index `angle`.
    Petal { point: usize, angle: usize },
    Escaped,
    Undetermined { reason: String },
}

/// One orbit record of a petal assignment.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    /// Starting point (usually a critical point).
    pub start: (f64, f64),
    pub outcome: OrbitOutcome,
    pub measured_angle: Option<f64>,
    pub iterations_used: u64,
}

/// `f64` Horner evaluation of an exact rational map.
pub(crate) struct MapEvaluator {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl MapEvaluator {
    pub fn new(map: &ExactRatFun) -> Self {
        MapEvaluator {
            num: map.num().coeffs().iter().map(rat_to_f64).collect(),
            den: map.den().coeffs().iter().map(rat_to_f64).collect(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let horner = |c: &[f64]| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &k in c.iter().rev() {
                acc = acc * z + k;
            }
            acc
        };
        horner(&self.num) / horner(&self.den)
    }
}

struct AngleTracker {
    window: usize,
    samples: Vec<f64>, // ring buffer of (cos, sin) folded in
    cos_sum: f64,
    sin_sum: f64,
    head: usize,
    filled: bool,
    prev_mean: Option<f64>,
}

impl AngleTracker {
    fn new(window: usize) -> Self {
        AngleTracker {
            window,
            samples: Vec::with_capacity(2 * window),
            cos_sum: 0.0,
            sin_sum: 0.0,
            head: 0,
            filled: false,
            prev_mean: None,
        }
    }

    fn reset(&mut self) {
        self.samples.clear();
        self.cos_sum = 0.0;
        self.sin_sum = 0.0;
        self.head = 0;
        self.filled = false;
        self.prev_mean = None;
    }

    /// Push one angle; returns the stabilized circular mean once the
    /// running window mean moves by at most `tol` between full windows.
    fn push(&mut self, angle: f64, tol: f64) -> Option<f64> {
        let (s, c) = angle.sin_cos();
        if self.samples.len() < 2 * self.window {
            self.samples.push(c);
            self.samples.push(s);
        } else {
            let i = 2 * self.head;
            self.cos_sum -= self.samples[i];
            self.sin_sum -= self.samples[i + 1];
            self.samples[i] = c;
            self.samples[i + 1] = s;
        }
        self.cos_sum += c;
        self.sin_sum += s;
        self.head += 1;
        if self.head == self.window {
            self.head = 0;
            self.filled = true;
            let mean = self.sin_sum.atan2(self.cos_sum).rem_euclid(std::f64::consts::TAU);
            if let Some(prev) = self.prev_mean {
                if circular_distance(mean, prev) <= tol {
                    return Some(mean);
                }
            }
            self.prev_mean = Some(mean);
        }
        None
    }
}

pub(crate) fn circular_distance(a: f64, b: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let d = (a - b).rem_euclid(tau);
    d.min(tau - d)
}

enum TargetShape {
    Finite(Complex64),
    Infinity,
}

/// Iterate the map from `start` until the orbit is captured by one of
/// the parabolic targets and its access angle stabilizes, escapes, or
/// exhausts the (once-doubled) iteration budget.
pub fn orbit_to_petal(
    map: &ExactRatFun,
    start: &MpComplex,
    targets: &[ParabolicPoint],
    caps: &OrbitCaps,
) -> OrbitEntry {
    let (re, im) = start.to_f64_pair();
    orbit_to_petal_f64(map, (re, im), targets, caps)
}

/// Same as [`orbit_to_petal`] from a plain `f64` starting point; the
/// per-pixel entry point for basin rasters.
pub fn orbit_to_petal_f64(
    map: &ExactRatFun,
    start: (f64, f64),
    targets: &[ParabolicPoint],
    caps: &OrbitCaps,
) -> OrbitEntry {
    let eval = MapEvaluator::new(map);
    let shapes: Vec<TargetShape> = targets
        .iter()
        .map(|p| match &p.location {
            Location::Finite(z) => {
                let (re, im) = z.to_f64_pair();
                TargetShape::Finite(Complex64::new(re, im))
            }
            Location::Infinity => TargetShape::Infinity,
        })
        .collect();
    let has_infinity_target = shapes
        .iter()
        .any(|s| matches!(s, TargetShape::Infinity));

    let (sre, sim) = start;
    let mut z = Complex64::new(sre, sim);
    let mut tracker = AngleTracker::new(caps.tail_window);
    let mut captured: Option<usize> = None;
    // Escalation path: the budget doubles once before giving up.
    let budget = caps.max_iter.saturating_mul(2);

    let entry = |outcome: OrbitOutcome, measured: Option<f64>, iters: u64| OrbitEntry {
        start: (sre, sim),
        outcome,
        measured_angle: measured,
        iterations_used: iters,
    };

    for k in 0..budget {
        z = eval.eval(z);
        if !z.is_finite() {
            return entry(
                OrbitOutcome::Undetermined {
                    reason: "pole hit".into(),
                },
                None,
                k + 1,
            );
        }
        if !has_infinity_target && z.norm() > caps.escape_radius {
            return entry(OrbitOutcome::Escaped, None, k + 1);
        }

        // Distance to the captured target (chordal-style at infinity).
        let dist_to = |idx: usize| -> f64 {
            match &shapes[idx] {
                TargetShape::Finite(c) => (z - c).norm(),
                TargetShape::Infinity => 1.0 / z.norm().max(1e-300),
            }
        };

        if let Some(t) = captured {
            if dist_to(t) > 1.5 * caps.capture_radius {
                captured = None;
                tracker.reset();
            }
        }
        if captured.is_none() {
            captured = (0..shapes.len())
                .map(|i| (i, dist_to(i)))
                .filter(|&(_, d)| d < caps.capture_radius)
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(i, _)| i);
        }

        if let Some(t) = captured {
            let angle = match &shapes[t] {
                TargetShape::Finite(c) => (z - c).arg(),
                TargetShape::Infinity => z.arg(),
            }
            .rem_euclid(std::f64::consts::TAU);
            if let Some(mean) = tracker.push(angle, caps.angle_tol / 2.0) {
                // Assign the nearest predicted angle.
                let angles = &targets[t].predicted_angles;
                let (best_idx, best_dist) = angles
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| (i, circular_distance(mean, a)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("nu >= 1 angles");
                if best_dist <= caps.angle_tol {
                    return entry(
                        OrbitOutcome::Petal {
                            point: t,
                            angle: best_idx,
                        },
                        Some(mean),
                        k + 1,
                    );
                }
                return entry(
                    OrbitOutcome::Undetermined {
                        reason: format!(
                            "angle mismatch: measured {mean:.4}, nearest predicted {:.4}",
                            angles[best_idx]
                        ),
                    },
                    Some(mean),
                    k + 1,
                );
            }
        }
    }
    entry(
        OrbitOutcome::Undetermined {
            reason: "iteration budget exhausted".into(),
        },
        None,
        budget,
    )
}

/// Per-parabolic-point summary of a petal assignment.
#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub location: Option<(f64, f64)>,
    pub multiplicity: u32,
    pub petal_count: u32,
    /// Petal directions on the real axis: must be <= 2, and <= 1 for odd ν.
    pub real_direction_petals: usize,
    pub real_direction_law_ok: bool,
    /// Petals receiving at least one orbit.
    pub petals_populated: usize,
    /// Angle indices of petals no orbit reached (diagnostic).
    pub unpopulated: Vec<usize>,
}

/// Whole-map petal summary.
#[derive(Clone, Debug, Serialize)]
pub struct PetalReport {
    pub points: Vec<PointReport>,
    pub escaped: usize,
    pub undetermined: usize,
}

/// Summarize orbit entries against the parabolic points.
pub fn petal_report(points: &[ParabolicPoint], entries: &[OrbitEntry]) -> PetalReport {
    let mut hits: Vec<Vec<usize>> = points
        .iter()
        .map(|p| vec![0; p.petal_count as usize])
        .collect();
    let mut escaped = 0usize;
    let mut undetermined = 0usize;
    for e in entries {
        match &e.outcome {
            OrbitOutcome::Petal { point, angle } => hits[*point][*angle] += 1,
            OrbitOutcome::Escaped => escaped += 1,
            OrbitOutcome::Undetermined { .. } => undetermined += 1,
        }
    }
    let points_out = points
        .iter()
        .zip(&hits)
        .map(|(p, h)| {
            let real_dirs = real_direction_count(&p.predicted_angles);
            let law_ok = real_dirs <= 2 && (p.petal_count % 2 == 0 || real_dirs <= 1);
            PointReport {
                location: p.location.to_f64_pair(),
                multiplicity: p.multiplicity,
                petal_count: p.petal_count,
                real_direction_petals: real_dirs,
                real_direction_law_ok: law_ok,
                petals_populated: h.iter().filter(|&&c| c > 0).count(),
                unpopulated: h
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &c)| (c == 0).then_some(i))
                    .collect(),
            }
        })
        .collect();
    PetalReport {
        points: points_out,
        escaped,
        undetermined,
    }
}
