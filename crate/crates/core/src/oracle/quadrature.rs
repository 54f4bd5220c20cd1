//! Adaptive cubature of the uniform-rectangle surface kernel
//! `∬ dA / (2π·k·|r − r0|)`.
//!
//! The rectangle is cut at the evaluation point so the kernel singularity
//! only ever sits on a cell corner. Corner cells are split into two
//! triangles and integrated in Duffy coordinates, where the `1/r` factor is
//! absorbed by the Jacobian; all other cells use tensor Gauss–Kronrod 7/15.
//! Cells are refined globally, worst error first, until the summed error
//! estimate meets the relative tolerance.

// Rule constants are tabulated to more digits than f64 holds.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;
use crate::thermal::HeatSource;

/// Kronrod 15-point abscissae on [0, 1], descending; the last is the center.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss 7-point weights for abscissae XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// 15 Kronrod nodes on [−1, 1] with Kronrod and Gauss weights (Gauss weight 0
/// for Kronrod-only nodes).
fn rule() -> [(f64, f64, f64); 15] {
    let mut out = [(0.0, 0.0, 0.0); 15];
    for k in 0..7 {
        let wg = if k % 2 == 1 { WG[k / 2] } else { 0.0 };
        out[k] = (-XGK[k], WGK[k], wg);
        out[14 - k] = (XGK[k], WGK[k], wg);
    }
    out[7] = (0.0, WGK[7], WG[3]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-4, max_subdivisions: 20_000 }
    }
}

impl QuadratureSpec {
    pub fn with_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate<S> {
    /// Temperature rise (K).
    pub value: S,
    /// Summed absolute error estimate (K).
    pub error_bound: S,
    pub subdivisions: usize,
}

/// Integration cell in coordinates centered on the evaluation point.
#[derive(Debug, Clone, Copy)]
enum Cell {
    Rect {
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
    },
    /// Triangle (origin, q1, q2) with the singular point at the origin.
    Fan {
        q1: (f64, f64),
        q2: (f64, f64),
    },
}

impl Cell {
    fn estimate(&self, rule: &[(f64, f64, f64); 15]) -> (f64, f64) {
        match *self {
            Cell::Rect { x0, x1, y0, y1 } => {
                let (cx, hx) = ((x0 + x1) * 0.5, (x1 - x0) * 0.5);
                let (cy, hy) = ((y0 + y1) * 0.5, (y1 - y0) * 0.5);
                let (mut k, mut g) = (0.0, 0.0);
                for &(u, wku, wgu) in rule {
                    let x = cx + hx * u;
                    for &(v, wkv, wgv) in rule {
                        let y = cy + hy * v;
                        let f = 1.0 / x.hypot(y);
                        k += wku * wkv * f;
                        g += wgu * wgv * f;
                    }
                }
                let jac = hx * hy;
                (k * jac, ((k - g) * jac).abs())
            }
            Cell::Fan { q1, q2 } => {
                let e = (q2.0 - q1.0, q2.1 - q1.1);
                let det = (q1.0 * e.1 - q1.1 * e.0).abs();
                let (mut k, mut g) = (0.0, 0.0);
                for &(s, wk, wg) in rule {
                    let v = 0.5 * (s + 1.0);
                    let f = 1.0 / (q1.0 + v * e.0).hypot(q1.1 + v * e.1);
                    k += wk * f;
                    g += wg * f;
                }
                let jac = 0.5 * det;
                (k * jac, ((k - g) * jac).abs())
            }
        }
    }

    fn split(&self) -> [Cell; 2] {
        match *self {
            Cell::Rect { x0, x1, y0, y1 } => {
                if x1 - x0 >= y1 - y0 {
                    let m = 0.5 * (x0 + x1);
                    [Cell::Rect { x0, x1: m, y0, y1 }, Cell::Rect { x0: m, x1, y0, y1 }]
                } else {
                    let m = 0.5 * (y0 + y1);
                    [Cell::Rect { x0, x1, y0, y1: m }, Cell::Rect { x0, x1, y0: m, y1 }]
                }
            }
            Cell::Fan { q1, q2 } => {
                let m = (0.5 * (q1.0 + q2.0), 0.5 * (q1.1 + q2.1));
                [Cell::Fan { q1, q2: m }, Cell::Fan { q1: m, q2 }]
            }
        }
    }
}

struct Scored {
    cell: Cell,
    value: f64,
    error: f64,
}

impl PartialEq for Scored {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Scored {}
impl PartialOrd for Scored {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Scored {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Cells covering `[x0,x1]×[y0,y1]` with the origin only at cell corners.
fn initial_cells(x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<Cell> {
    let cuts = |a: f64, b: f64| {
        if a < 0.0 && 0.0 < b {
            vec![a, 0.0, b]
        } else {
            vec![a, b]
        }
    };
    let xs = cuts(x0, x1);
    let ys = cuts(y0, y1);
    let mut cells = Vec::new();
    for xw in xs.windows(2) {
        for yw in ys.windows(2) {
            let (a, b, c, d) = (xw[0], xw[1], yw[0], yw[1]);
            let corners = [(a, c), (b, c), (b, d), (a, d)];
            match corners.iter().position(|&(x, y)| x == 0.0 && y == 0.0) {
                Some(k) => {
                    let c1 = corners[(k + 1) % 4];
                    let c2 = corners[(k + 2) % 4];
                    let c3 = corners[(k + 3) % 4];
                    cells.push(Cell::Fan { q1: c1, q2: c2 });
                    cells.push(Cell::Fan { q1: c2, q2: c3 });
                }
                None => cells.push(Cell::Rect { x0: a, x1: b, y0: c, y1: d }),
            }
        }
    }
    cells
}

/// Rise at `(x, y)` relative to the source center by direct cubature.
pub fn quadrature_rise<S: Scalar>(
    src: &HeatSource<S>,
    x: S,
    y: S,
    k_si: S,
    spec: QuadratureSpec,
) -> Result<QuadratureEstimate<S>> {
    if !(spec.rel_tol > 0.0 && spec.rel_tol < 1.0) {
        return Err(domain(format!("quadrature tolerance must lie in (0, 1), got {}", spec.rel_tol)));
    }
    let f = |v: S| v.to_f64().unwrap_or(f64::NAN);
    let (w, l, px, py) = (f(src.w), f(src.l), f(x), f(y));
    if !(w > 0.0 && l > 0.0 && px.is_finite() && py.is_finite()) {
        return Err(domain("invalid source or evaluation point"));
    }
    let rule = rule();
    let mut heap = BinaryHeap::new();
    let (mut total, mut error) = (0.0, 0.0);
    for cell in initial_cells(-0.5 * w - px, 0.5 * w - px, -0.5 * l - py, 0.5 * l - py) {
        let (value, err) = cell.estimate(&rule);
        total += value;
        error += err;
        heap.push(Scored { cell, value, error: err });
    }
    let mut subdivisions = 0;
    while error > spec.rel_tol * total.abs() {
        if subdivisions >= spec.max_subdivisions {
            let scale = f(src.p) / (w * l * 2.0 * std::f64::consts::PI * f(k_si));
            return Err(Error::QuadratureBudget {
                subdivisions,
                estimate: total * scale,
                error_bound: error * scale.abs(),
            });
        }
        let worst = heap.pop().expect("heap holds every cell");
        total -= worst.value;
        error -= worst.error;
        for cell in worst.cell.split() {
            let (value, err) = cell.estimate(&rule);
            total += value;
            error += err;
            heap.push(Scored { cell, value, error: err });
        }
        subdivisions += 1;
    }
    // Recompute sums from the cells to shed accumulated update round-off.
    let (total, error) = heap.iter().fold((0.0, 0.0), |(t, e), s| (t + s.value, e + s.error));
    let scale = S::lit(1.0 / (w * l * 2.0 * std::f64::consts::PI)) * src.p / k_si;
    Ok(QuadratureEstimate { value: scale * S::lit(total), error_bound: (scale * S::lit(error)).abs(), subdivisions })
}
