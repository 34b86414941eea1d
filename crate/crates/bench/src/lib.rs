//! Shared fixtures for the criterion suites.

use petalab_core::exactalg::ExactPoly;

/// Deterministic integer polynomial with pseudo-random coefficients.
pub fn fixture_poly(deg: usize, salt: u64) -> ExactPoly {
    let coeffs: Vec<i64> = (0..=deg)
        .map(|k| {
            let h = (salt ^ k as u64)
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .rotate_left(17);
            ((h % 199) as i64) - 99
        })
        .map(|c| if c == 0 { 1 } else { c })
        .collect();
    ExactPoly::from_i64(&coeffs)
}
