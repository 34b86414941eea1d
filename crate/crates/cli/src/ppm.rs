//! Basin raster rendering: one pixel per grid point, colored by
//! (parabolic point, petal) pair, black for escaped or undetermined
//! orbits. Output is binary PPM (P6, 8-bit channels). Pixels are
//! computed in parallel rows and assembled in row order, so the bytes
//! are deterministic for a fixed configuration.

use petalab_core::exactalg::ExactRatFun;
use petalab_core::petals::{orbit_to_petal_f64, OrbitCaps, OrbitOutcome, ParabolicPoint};
use rayon::prelude::*;
use serde_json::{json, Value};

const PALETTE: [[u8; 3]; 12] = [
    [230, 80, 60],
    [60, 140, 230],
    [90, 190, 90],
    [235, 200, 60],
    [170, 90, 220],
    [70, 210, 200],
    [240, 130, 40],
    [150, 220, 60],
    [220, 90, 160],
    [110, 110, 240],
    [100, 170, 120],
    [200, 160, 110],
];

#[derive(Clone, Debug)]
pub struct GridSpec {
    pub center: (f64, f64),
    pub width: f64,
    pub height: f64,
    pub res_x: u32,
    pub res_y: u32,
}

pub struct BasinRaster {
    pub ppm: Vec<u8>,
    pub stats: Value,
}

fn color_of(points: &[ParabolicPoint], point: usize, angle: usize) -> [u8; 3] {
    let mut index = 0usize;
    for p in &points[..point] {
        index += p.petal_count as usize;
    }
    PALETTE[(index + angle) % PALETTE.len()]
}

pub fn render(
    map: &ExactRatFun,
    points: &[ParabolicPoint],
    caps: &OrbitCaps,
    grid: &GridSpec,
) -> BasinRaster {
    let (cx, cy) = grid.center;
    let px = |i: u32| cx + ((i as f64 + 0.5) / grid.res_x as f64 - 0.5) * grid.width;
    let py = |j: u32| cy + (0.5 - (j as f64 + 0.5) / grid.res_y as f64) * grid.height;

    let rows: Vec<(Vec<u8>, RowStats)> = (0..grid.res_y)
        .into_par_iter()
        .map(|j| {
            let y = py(j);
            let mut row = Vec::with_capacity(grid.res_x as usize * 3);
            let mut stats = RowStats::default();
            for i in 0..grid.res_x {
                let entry = orbit_to_petal_f64(map, (px(i), y), points, caps);
                let rgb = match entry.outcome {
                    OrbitOutcome::Petal { point, angle } => {
                        stats.petal += 1;
                        if y == 0.0 {
                            stats.petal_on_real_axis += 1;
                        }
                        color_of(points, point, angle)
                    }
                    OrbitOutcome::Escaped => {
                        stats.escaped += 1;
                        [0, 0, 0]
                    }
                    OrbitOutcome::Undetermined { .. } => {
                        stats.undetermined += 1;
                        [0, 0, 0]
                    }
                };
                row.extend_from_slice(&rgb);
            }
            (row, stats)
        })
        .collect();

    let mut ppm = format!("P6\n{} {}\n255\n", grid.res_x, grid.res_y).into_bytes();
    let mut total = RowStats::default();
    for (row, stats) in rows {
        ppm.extend_from_slice(&row);
        total.absorb(&stats);
    }
    BasinRaster {
        ppm,
        stats: json!({
            "pixels": grid.res_x as u64 * grid.res_y as u64,
            "petal_pixels": total.petal,
            "escaped_pixels": total.escaped,
            "undetermined_pixels": total.undetermined,
            "petal_pixels_on_real_axis": total.petal_on_real_axis,
        }),
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct RowStats {
    petal: u64,
    escaped: u64,
    undetermined: u64,
    petal_on_real_axis: u64,
}

impl RowStats {
    fn absorb(&mut self, other: &RowStats) {
        self.petal += other.petal;
        self.escaped += other.escaped;
        self.undetermined += other.undetermined;
        self.petal_on_real_axis += other.petal_on_real_axis;
    }
}
