//! Acceptance suite. Each criterion prints exactly one PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them)
//! and enforces its runtime budget.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use petalab_core::diffpoly::{hayman_expr, product_expr, proportional, tan_reduce, TanFun, TanMode};
use petalab_core::exactalg::text::{parse_poly, parse_ratfun};
use petalab_core::exactalg::{
    rat, rational_root_literal, sturm_distinct_real_roots, BigRational, ExactPoly, ExactRatFun,
};
use petalab_core::petals::{
    build_f_map, multiplicity_at_infinity, orbit_to_petal, parabolic_points, OrbitCaps,
    OrbitOutcome,
};
use petalab_core::rootlab::find_roots;
use petalab_core::theorems::fuzz;

fn criterion(id: u32, name: &str, budget_s: f64, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed().as_secs_f64();
    match &result {
        Ok(()) if elapsed <= budget_s => {
            println!("acceptance {id} ({name}): PASS [{elapsed:.2}s <= {budget_s}s]");
        }
        Ok(()) => {
            println!("acceptance {id} ({name}): FAIL [runtime {elapsed:.2}s > {budget_s}s]");
            panic!("criterion {id} exceeded its runtime budget");
        }
        Err(msg) => {
            println!("acceptance {id} ({name}): FAIL [{msg}]");
            panic!("criterion {id} failed: {msg}");
        }
    }
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

#[test]
fn acceptance_1_exact_example_identities() {
    criterion(1, "exact example identities", 1.0, || {
        let f = parse_ratfun("2,8,-16").map_err(|e| e.to_string())?;
        let e = hayman_expr(&f, 2, &rat(-12)).map_err(|e| e.to_string())?;
        ensure(
            e.is_polynomial() && e.num() == &parse_poly("0,0,0,-256,256").unwrap(),
            "hayman(-16z^2+8z+2, 2, -12) != 256z^4 - 256z^3",
        )?;

        let f = parse_ratfun("1 ; 0,1").unwrap();
        let e = hayman_expr(&f, 4, &rat(0)).map_err(|e| e.to_string())?;
        ensure(
            e == parse_ratfun("1,0,-1 ; 0,0,0,0,1").unwrap(),
            "hayman(1/z, 4, 0) != (1 - z^2)/z^4",
        )?;

        let f = TanFun::new(parse_ratfun("0,-1").unwrap(), rat(1)).unwrap();
        let red = tan_reduce(&f, &TanMode::Hayman { m: 6, c: rat(1) }).map_err(|e| e.to_string())?;
        let expected = parse_poly("0,0,-1,0,0,0,1").unwrap(); // t^2(t-1)(t+1)(t^2+1)
        ensure(
            proportional(red.poly(), &expected),
            "tan_reduce(-tan z, m=6, c=1) != t^2 (t-1)(t+1)(t^2+1) up to constant",
        )
    });
}

#[test]
fn acceptance_2_example4_quartic() {
    criterion(2, "example 4 quartic", 1.0, || {
        let f = TanFun::new(parse_ratfun("12,1").unwrap(), -rat(12).pow(4)).unwrap();
        let red = tan_reduce(&f, &TanMode::Hayman { m: 4, c: rat(0) }).map_err(|e| e.to_string())?;
        ensure(red.poly().eval(&rat(1)) == rat(-12911), "w(1) != -12911")?;
        let real = sturm_distinct_real_roots(red.poly(), None).map_err(|e| e.to_string())?;
        ensure(real == 4, "Sturm distinct real-root count != 4")
    });
}

#[test]
fn acceptance_3_example6_quintic() {
    criterion(3, "example 6 quintic from (aeqn) constants", 1.0, || {
        let aeqn = ExactPoly::from_i64(&[1, 0, -10, 0, 5]);
        let a = rational_root_literal(
            &aeqn,
            &BigRational::new(3.into(), 10.into()),
            &BigRational::new(7.into(), 20.into()),
            128,
        )
        .map_err(|e| e.to_string())?;
        let b = rat(5) * &a - rat(10) * &a * &a * &a;
        let c = -(&a * &a * &a * &a * &a) - &b;
        let outer = ExactPoly::from_coeffs(vec![a.clone(), rat(1)]);
        let fam = TanFun::new(ExactRatFun::from_poly(outer), b).unwrap();
        let red = tan_reduce(&fam, &TanMode::Hayman { m: 5, c }).map_err(|e| e.to_string())?;

        let quad = ExactPoly::from_coeffs(vec![rat(10) * &a * &a - rat(1), rat(5) * &a, rat(1)]);
        let target = &(&parse_poly("0,1").unwrap() * &parse_poly("1,0,1").unwrap()) * &quad;
        let tol = rat(10).pow(-30);
        for k in 0..=5 {
            let dev = red.poly().coeff(k) - target.coeff(k);
            let dev = if dev < rat(0) { -dev } else { dev };
            ensure(
                dev <= tol,
                &format!("coefficient {k} deviates by more than 1e-30"),
            )?;
        }
        let disc = rat(25) * &a * &a - rat(4) * (rat(10) * &a * &a - rat(1));
        ensure(disc > rat(0), "25a^2 - 4(10a^2 - 1) must be positive")
    });
}

#[test]
fn acceptance_4_example5_degree2() {
    criterion(4, "example 5 degree-2 rational", 1.0, || {
        let g = parse_ratfun("3,8,2 ; 3,5").unwrap();
        let expr = product_expr(&g, 2, &rat(1)).map_err(|e| e.to_string())?;
        let num = expr.num();
        let mult_at_zero = num
            .squarefree_decompose()
            .map_err(|e| e.to_string())?
            .iter()
            .find(|f| f.factor.eval(&rat(0)) == rat(0))
            .map(|f| f.multiplicity)
            .unwrap_or(0);
        ensure(mult_at_zero == 3, "multiplicity at 0 != 3")?;

        let set = find_roots(num, 128).map_err(|e| e.to_string())?;
        let (real, nonreal) = set.classify_and_count();
        let sturm = sturm_distinct_real_roots(num, None).map_err(|e| e.to_string())?;
        ensure(nonreal == 0, "expected zero non-real roots")?;
        ensure(
            real == sturm && real == num.squarefree_part().unwrap().deg_or_zero(),
            "Sturm count must account for all distinct roots",
        )
    });
}

#[test]
fn acceptance_5_bound_fuzz() {
    criterion(5, "bound fuzz (200+200+100 instances)", 60.0, || {
        let c1 = fuzz::fuzz_thm_rat(7, 200, &[5, 7], 128).map_err(|e| e.to_string())?;
        ensure(
            c1.passed(),
            &format!("thm_rat violations: {}", c1.violations),
        )?;
        let c2 = fuzz::fuzz_thm4pol(7, 200, 128).map_err(|e| e.to_string())?;
        ensure(
            c2.passed(),
            &format!("thm4pol violations: {}", c2.violations),
        )?;
        let c3 = fuzz::fuzz_thm9(7, 100, 128).map_err(|e| e.to_string())?;
        ensure(
            c3.passed(),
            &format!("thm9_rat violations: {}", c3.violations),
        )
    });
}

#[test]
fn acceptance_6_oracle_equivalence() {
    criterion(6, "oracle equivalence on 500 seeded polynomials", 30.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(500_500);
        for trial in 0..500 {
            let deg = rng.gen_range(1..=8usize);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-100..=100)).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = 1;
            }
            let p = ExactPoly::from_i64(&coeffs);
            let set = find_roots(&p, 128).map_err(|e| e.to_string())?;
            let sturm = sturm_distinct_real_roots(&p, None).map_err(|e| e.to_string())?;
            if set.real_distinct() != sturm {
                return Err(format!(
                    "trial {trial}: numeric {} vs Sturm {sturm} for {coeffs:?}",
                    set.real_distinct()
                ));
            }
            if !set.check_structure() {
                return Err(format!("trial {trial}: structural invariant broken"));
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_7_petal_mechanics() {
    criterion(7, "petal mechanics", 120.0, || {
        let caps = OrbitCaps::default();

        // G = z - z^3/3: angles {0, π}, orbits from ±1 into distinct petals.
        let map = parse_ratfun("0,1,0,-1/3").unwrap();
        let points = parabolic_points(&map, 128).map_err(|e| e.to_string())?;
        ensure(points.len() == 1, "expected a single parabolic point")?;
        let angles = &points[0].predicted_angles;
        ensure(
            angles.len() == 2
                && angles[0].abs() < 1e-9
                && (angles[1] - std::f64::consts::PI).abs() < 1e-9,
            "predicted angles != {0, π}",
        )?;
        let mut seen = Vec::new();
        for start in [1.0, -1.0] {
            let e = orbit_to_petal(
                &map,
                &petalab_core::MpComplex::from_f64(start, 0.0, 256),
                &points,
                &caps,
            );
            match e.outcome {
                OrbitOutcome::Petal { point: 0, angle } => {
                    let measured = e.measured_angle.unwrap();
                    let target = points[0].predicted_angles[angle];
                    let tau = std::f64::consts::TAU;
                    let d = (measured - target).rem_euclid(tau);
                    ensure(
                        d.min(tau - d) <= 0.05,
                        &format!("measured angle {measured} too far from {target}"),
                    )?;
                    seen.push(angle);
                }
                other => return Err(format!("orbit from {start} gave {other:?}")),
            }
        }
        ensure(seen[0] != seen[1], "orbits from ±1 must land in distinct petals")?;

        // G = z + z^3/3: angles {π/2, 3π/2}, orbits from ±i.
        let map = parse_ratfun("0,1,0,1/3").unwrap();
        let points = parabolic_points(&map, 128).map_err(|e| e.to_string())?;
        let angles = &points[0].predicted_angles;
        ensure(
            angles.len() == 2
                && (angles[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-9
                && (angles[1] - 3.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-9,
            "predicted angles != {π/2, 3π/2}",
        )?;
        let mut seen = Vec::new();
        for start in [1.0, -1.0] {
            let e = orbit_to_petal(
                &map,
                &petalab_core::MpComplex::from_f64(0.0, start, 256),
                &points,
                &caps,
            );
            match e.outcome {
                OrbitOutcome::Petal { point: 0, angle } => seen.push(angle),
                other => return Err(format!("orbit from {start}i gave {other:?}")),
            }
        }
        ensure(seen[0] != seen[1], "orbits from ±i must land in distinct petals")?;

        // Conjugated F multiplicity law at ∞: d(m-1)+2.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..=3usize {
            for m in [2u32, 3, 5] {
                let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-6..=6)).collect();
                if coeffs[d] == 0 {
                    coeffs[d] = 2;
                }
                let f = ExactRatFun::from_poly(ExactPoly::from_i64(&coeffs));
                let map = build_f_map(&f, m).map_err(|e| e.to_string())?;
                let mu = multiplicity_at_infinity(&map).map_err(|e| e.to_string())?;
                ensure(
                    mu == Some(d as u32 * (m - 1) + 2),
                    &format!("infinity multiplicity for d={d}, m={m}: got {mu:?}"),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_8_real_direction_law() {
    criterion(8, "real-direction petal law over fuzz set", 60.0, || {
        let report =
            petalab_core::petals::fuzz::fuzz_angle_law(7, 120, 96).map_err(|e| e.to_string())?;
        ensure(
            report.real_direction_violations == 0,
            &format!("{} real-direction violations", report.real_direction_violations),
        )?;
        ensure(
            report.multiplicity_violations == 0 && report.symmetry_violations == 0,
            "multiplicity or symmetry law violated",
        )?;
        ensure(report.points_checked > 50, "fuzz set too small")
    });
}

#[test]
fn acceptance_9_negative_controls() {
    criterion(9, "negative controls behave as predicted", 30.0, || {
        let controls = fuzz::negative_controls(128).map_err(|e| e.to_string())?;
        ensure(controls.len() == 2, "expected two controls")?;
        for ctl in &controls {
            ensure(
                ctl.confirmed && ctl.observed_nonreal == 0,
                &format!("control {} not confirmed", ctl.name),
            )?;
        }
        Ok(())
    });
}
