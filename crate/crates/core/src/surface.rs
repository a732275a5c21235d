//! Single-particle entropy surfaces over two-parameter families.
//!
//! Rows are `(param1, param2, S₁, S₂, S₃)` with entropies in nats. For a pure
//! three-qubit state `S(ρ_i)` equals the entropy of the complementary pair.
//!
//! * `Pod`: `param1 = α`, `param2 = β` on `[0, π/4]²`, evaluated on three
//!   sheets of the normal form in this order: `t = 1`, then `s = 1`, then
//!   `z = 1`. The sheets are concatenated.
//! * `Slices`: `param1 = |p|² ∈ [1/2, 1]`, `param2 = φ ∈ [0, π/2]` with
//!   `q = n cos φ`, `r = n sin φ`, `n = √(1 − p²)`. The `r`-term flips
//!   particles (1, 2), then (1, 3), then (2, 3); the three blocks are
//!   concatenated. The closure includes `r = 0` (GHZ) and `p = 1`.
//! * `Beechnut`: `param1 = p²`, `param2 = q²` on the triangle
//!   `p² + q² ≤ 1`, with `r² = 1 − p² − q²`.

use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{entropy, reduce, Subsystem};
use crate::linalg::{C64, ZERO};
use crate::normalform::{reconstruct, LpsParams};
use crate::state::{index, PureState3};

pub const CSV_HEADER: &str = "param1,param2,S1,S2,S3";
pub const DEFAULT_GRID: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceFamily {
    Pod,
    Slices,
    Beechnut,
}

impl FromStr for SurfaceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pod" => Ok(SurfaceFamily::Pod),
            "slices" => Ok(SurfaceFamily::Slices),
            "beechnut" => Ok(SurfaceFamily::Beechnut),
            other => Err(Error::BadParams(format!(
                "unknown surface family {other:?}; expected pod, slices or beechnut"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfaceRow {
    pub param1: f64,
    pub param2: f64,
    pub entropies: [f64; 3],
}

fn lin(lo: f64, hi: f64, k: usize, n: usize) -> f64 {
    if k + 1 == n {
        hi
    } else {
        lo + (hi - lo) * k as f64 / (n - 1) as f64
    }
}

type Point = (f64, f64, PureState3);

fn pod_points(grid: usize) -> Result<Vec<Point>> {
    let quarter = std::f64::consts::FRAC_PI_4;
    let sheets = [
        (1.0, 0.0, ZERO),
        (0.0, 1.0, ZERO),
        (0.0, 0.0, C64::new(1.0, 0.0)),
    ];
    let mut out = Vec::with_capacity(3 * grid * grid);
    for (t, s, z) in sheets {
        for i in 0..grid {
            let alpha = lin(0.0, quarter, i, grid);
            for j in 0..grid {
                let beta = lin(0.0, quarter, j, grid);
                let state = reconstruct(&LpsParams {
                    alpha,
                    beta,
                    t,
                    s,
                    z,
                })?;
                out.push((alpha, beta, state));
            }
        }
    }
    Ok(out)
}

fn slice_points(grid: usize) -> Result<Vec<Point>> {
    let flips = [index(1, 1, 0), index(1, 0, 1), index(0, 1, 1)];
    let mut out = Vec::with_capacity(3 * grid * grid);
    for flip in flips {
        for i in 0..grid {
            let p2 = lin(0.5, 1.0, i, grid);
            let n = (1.0 - p2).max(0.0).sqrt();
            for j in 0..grid {
                let phi = lin(0.0, std::f64::consts::FRAC_PI_2, j, grid);
                let mut amps = [ZERO; 8];
                amps[index(0, 0, 0)] = p2.sqrt().into();
                amps[index(1, 1, 1)] = (n * phi.cos()).into();
                amps[flip] = (n * phi.sin()).into();
                out.push((p2, phi, PureState3::new(amps).normalize()?));
            }
        }
    }
    Ok(out)
}

fn beechnut_points(grid: usize) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(grid * (grid + 1) / 2);
    for i in 0..grid {
        for j in 0..grid - i {
            let p2 = i as f64 / (grid - 1) as f64;
            let q2 = j as f64 / (grid - 1) as f64;
            let r2 = (1.0 - p2 - q2).max(0.0);
            let mut amps = [ZERO; 8];
            amps[index(0, 1, 1)] = p2.sqrt().into();
            amps[index(1, 0, 1)] = q2.sqrt().into();
            amps[index(1, 1, 0)] = r2.sqrt().into();
            out.push((p2, q2, PureState3::new(amps).normalize()?));
        }
    }
    Ok(out)
}

/// Single-particle entropies, clamped to be nonnegative.
pub fn entropies(s: &PureState3) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = entropy(&reduce(s, Subsystem::Single(k + 1)))?.max(0.0);
    }
    Ok(out)
}

/// All rows of a surface in grid order.
pub fn surface_rows(family: SurfaceFamily, grid: usize) -> Result<Vec<SurfaceRow>> {
    if grid < 2 {
        return Err(Error::BadParams(format!(
            "grid must be at least 2, got {grid}"
        )));
    }
    let points = match family {
        SurfaceFamily::Pod => pod_points(grid)?,
        SurfaceFamily::Slices => slice_points(grid)?,
        SurfaceFamily::Beechnut => beechnut_points(grid)?,
    };
    points
        .par_iter()
        .map(|(a, b, s)| {
            Ok(SurfaceRow {
                param1: *a,
                param2: *b,
                entropies: entropies(s)?,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SurfaceRow], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        let [s1, s2, s3] = r.entropies;
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.param1, r.param2, s1, s2, s3
        )?;
    }
    w.flush()
}
