//! Model-versus-oracle sweeps behind `ptherm verify`.

use rayon::prelude::*;

use crate::device::{thermal_voltage, DeviceParams};
use crate::error::Result;
use crate::gates;
use crate::leakage::{all_vectors, format_inputs, gate_static_power, pair_vds, Side, Technology};
use crate::oracle::{
    boundary_flux_probe, exact_network_current, exact_pair_drop, quadrature_rise, Edge, QuadratureSpec,
};
use crate::thermal::{center_rise, min_rise, HeatSource, ThermalScene, DEFAULT_IMAGE_ORDER};

/// One compared quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub label: String,
    pub model: f64,
    pub reference: f64,
    pub tol: f64,
}

impl Case {
    pub fn rel_err(&self) -> f64 {
        ((self.model - self.reference) / self.reference).abs()
    }

    pub fn passed(&self) -> bool {
        self.rel_err() <= self.tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub cases: Vec<Case>,
    /// Extra pass conditions that are not relative-error comparisons.
    pub checks: Vec<(String, bool)>,
    /// Informational lines.
    pub notes: Vec<String>,
}

impl Table {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(Case::passed) && self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub const PAIR_RATIOS: [f64; 5] = [1.0 / 16.0, 0.25, 1.0, 4.0, 16.0];
pub const PAIR_SIGMAS: [f64; 2] = [0.0, 0.08];
pub const PAIR_TOL: f64 = 0.20;
pub const PAIR_ASYMPTOTIC_TOL: f64 = 0.01;
pub const STACK_TOL: f64 = 0.25;
pub const PROFILE_CORE_TOL: f64 = 0.01;
pub const PROFILE_MID_TOL: f64 = 0.30;
pub const FLUX_TOL: f64 = 0.05;

/// Drop-model argument `f` for a pair.
pub fn pair_f(ratio: f64, p: &DeviceParams<f64>, v_dd: f64, t: f64) -> Result<f64> {
    let vt = thermal_voltage(t)?;
    Ok(ratio.ln() + p.sigma * v_dd / (p.n * vt))
}

/// Width ratio giving a requested `f`.
pub fn ratio_for_f(f: f64, p: &DeviceParams<f64>, v_dd: f64, t: f64) -> Result<f64> {
    let vt = thermal_voltage(t)?;
    Ok((f - p.sigma * v_dd / (p.n * vt)).exp())
}

pub fn pair_table(tech: &Technology<f64>, t: f64) -> Result<Table> {
    let mut cases = Vec::new();
    for &sigma in &PAIR_SIGMAS {
        let p = DeviceParams { sigma, ..tech.nmos };
        for &ratio in &PAIR_RATIOS {
            let f = pair_f(ratio, &p, tech.v_dd, t)?;
            cases.push(Case {
                label: format!("ratio={ratio} sigma={sigma} f={f:.3}"),
                model: pair_vds(ratio, 1.0, &p, tech.v_dd, t)?,
                reference: exact_pair_drop(ratio, 1.0, &p, tech.v_dd, t, 0.0)?,
                tol: PAIR_TOL,
            });
        }
        for f in [-14.0, -10.0, 10.0, 14.0] {
            let ratio = ratio_for_f(f, &p, tech.v_dd, t)?;
            cases.push(Case {
                label: format!("asymptote f={f} sigma={sigma}"),
                model: pair_vds(ratio, 1.0, &p, tech.v_dd, t)?,
                reference: exact_pair_drop(ratio, 1.0, &p, tech.v_dd, t, 0.0)?,
                tol: PAIR_ASYMPTOTIC_TOL,
            });
        }
    }
    Ok(Table { title: "pair drop: model vs exact root (V)".into(), cases, checks: Vec::new(), notes: Vec::new() })
}

/// NAND-style stacks of equal widths over every input vector, plus the
/// stack-effect ordering of the all-OFF chains.
pub fn stack_table(tech: &Technology<f64>, t: f64, max_n: usize, width: f64) -> Result<Table> {
    let mut cases = Vec::new();
    let mut chain_model = Vec::new();
    let mut chain_exact = Vec::new();
    for n in 1..=max_n {
        let g = if n == 1 { gates::inverter(width, width)? } else { gates::nand(n, width, width)? };
        for v in all_vectors(n) {
            let leak = gate_static_power(&g, &v, tech, t)?;
            let (branches, p) = match leak.side {
                Side::PullDown => (g.pull_down(), &tech.nmos),
                Side::PullUp => (g.pull_up(), &tech.pmos),
            };
            let exact = exact_network_current(branches, &v, p, tech.v_dd, t)?.expect("side was classified as OFF");
            if v.iter().all(|&b| !b) {
                chain_model.push(leak.i_off);
                chain_exact.push(exact);
            }
            cases.push(Case {
                label: format!("N={n} inputs={} {}", format_inputs(&v), leak.side),
                model: leak.i_off,
                reference: exact,
                tol: STACK_TOL,
            });
        }
    }
    // An all-zero vector leaves the whole pull-down chain OFF; for N = 1 that is
    // the single-device case.
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    Ok(Table {
        title: "stack OFF current: model vs exact (A)".into(),
        cases,
        checks: vec![
            ("model stack ordering strictly decreasing".into(), decreasing(&chain_model)),
            ("exact stack ordering strictly decreasing".into(), decreasing(&chain_exact)),
        ],
        notes: Vec::new(),
    })
}

/// Scan positions along one axis through the center, out to `reach`.
pub fn scan_positions(reach: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| reach * k as f64 / n as f64).collect()
}

/// Tolerance applied at distance `d` from the center of a source whose
/// longer side is `len`.
pub fn profile_tol(d: f64, len: f64) -> f64 {
    if d == 0.0 || d > 10.0 * len {
        PROFILE_CORE_TOL
    } else {
        PROFILE_MID_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    /// Perpendicular to the source's longer side.
    Transverse,
    /// Along the longer side.
    Longitudinal,
}

/// Combined closed form against quadrature along a center scan line.
pub fn profile_scan(src: &HeatSource<f64>, k_si: f64, reach: f64, n: usize, axis: ScanAxis) -> Result<Vec<Case>> {
    let spec = QuadratureSpec::with_tol(1e-7);
    let len = src.long_side();
    let along_x = (src.w >= src.l) == (axis == ScanAxis::Longitudinal);
    scan_positions(reach, n)
        .par_iter()
        .map(|&d| {
            let (x, y) = if along_x { (d, 0.0) } else { (0.0, d) };
            Ok(Case {
                label: format!("d={:.3}um", d * 1e6),
                model: min_rise(src, x, y, k_si),
                reference: quadrature_rise(src, x, y, k_si, spec)?.value,
                tol: profile_tol(d, len),
            })
        })
        .collect()
}

pub fn profile_table(src: &HeatSource<f64>, k_si: f64, reach: f64, n: usize) -> Result<Table> {
    let cases = profile_scan(src, k_si, reach, n, ScanAxis::Transverse)?;
    let along = profile_scan(src, k_si, reach, n, ScanAxis::Longitudinal)?;
    let worst = along.iter().max_by(|a, b| a.rel_err().total_cmp(&b.rel_err())).expect("non-empty scan");
    Ok(Table {
        title: "profile: combined closed form vs quadrature, transverse scan (K)".into(),
        cases,
        checks: Vec::new(),
        notes: vec![format!(
            "longitudinal scan (not gated): worst rel_err {:.3e} at {}, {} of {} points over tolerance",
            worst.rel_err(),
            worst.label,
            along.iter().filter(|c| !c.passed()).count(),
            along.len()
        )],
    })
}

pub fn center_table(k_si: f64) -> Result<Table> {
    let spec = QuadratureSpec::with_tol(1e-6);
    let cases = [1.0, 10.0, 100.0]
        .iter()
        .map(|&aspect| {
            let src = HeatSource::new(0.0, 0.0, aspect * 1e-6, 1e-6, 1e-3)?;
            Ok(Case {
                label: format!("aspect={aspect}:1"),
                model: center_rise(&src, k_si),
                reference: quadrature_rise(&src, 0.0, 0.0, k_si, spec)?.value,
                tol: 0.01,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        title: "center rise: closed form vs quadrature (K)".into(),
        cases,
        checks: Vec::new(),
        notes: Vec::new(),
    })
}

/// Largest edge-midpoint normalized flux over the four die edges.
pub fn midpoint_flux(scene: &ThermalScene<f64>) -> Result<f64> {
    Edge::ALL.iter().try_fold(0.0f64, |m, &e| Ok(m.max(boundary_flux_probe(scene, e, 1)?.normalized)))
}

pub fn flux_table(scene: &ThermalScene<f64>) -> Result<Table> {
    let orders: Vec<usize> = (0..=DEFAULT_IMAGE_ORDER.max(scene.image_order)).collect();
    let flux = orders.iter().map(|&k| midpoint_flux(&scene.clone().with_image_order(k))).collect::<Result<Vec<_>>>()?;
    let checked = scene.image_order.max(DEFAULT_IMAGE_ORDER);
    Ok(Table {
        title: "boundary flux vs image order".into(),
        cases: Vec::new(),
        checks: vec![
            (format!("order {checked} flux <= {FLUX_TOL}"), flux[checked] <= FLUX_TOL),
            (format!("order {checked} flux < order 0 flux"), flux[checked] < flux[0]),
        ],
        notes: orders
            .iter()
            .zip(&flux)
            .map(|(k, f)| format!("order {k}: normalized edge-midpoint flux {f:.4e}"))
            .collect(),
    })
}

/// Three-block 1 mm × 1 mm reference die used when no project is given.
pub fn reference_scene() -> ThermalScene<f64> {
    let b = |x: f64, y: f64, w: f64, l: f64, p: f64| HeatSource::new(x, y, w, l, p).expect("valid block");
    ThermalScene::new(1e-3, 1e-3, 0.5e-3, 300.0).with_sources(vec![
        b(0.3e-3, 0.7e-3, 200e-6, 150e-6, 1.0),
        b(0.7e-3, 0.65e-3, 150e-6, 150e-6, 0.6),
        b(0.5e-3, 0.25e-3, 300e-6, 100e-6, 0.8),
    ])
}

/// Source with the single-transistor geometry used by the profile scan.
pub fn profile_source() -> HeatSource<f64> {
    HeatSource::new(0.0, 0.0, 1e-6, 0.1e-6, 10e-3).expect("valid source")
}

pub fn render(tables: &[Table]) -> String {
    let mut out = String::new();
    for t in tables {
        out.push_str(&format!("== {}\n", t.title));
        if !t.cases.is_empty() {
            out.push_str(&format!(
                "{:<40} {:>14} {:>14} {:>10} {:>6}  result\n",
                "case", "model", "reference", "rel_err", "tol"
            ));
        }
        for c in &t.cases {
            out.push_str(&format!(
                "{:<40} {:>14.6e} {:>14.6e} {:>10.3e} {:>6}  {}\n",
                c.label,
                c.model,
                c.reference,
                c.rel_err(),
                c.tol,
                if c.passed() { "pass" } else { "FAIL" }
            ));
        }
        for n in &t.notes {
            out.push_str(&format!("{n}\n"));
        }
        for (label, ok) in &t.checks {
            out.push_str(&format!("{label:<40} {}\n", if *ok { "pass" } else { "FAIL" }));
        }
        out.push_str(&format!("-> {}\n\n", if t.passed() { "PASS" } else { "FAIL" }));
    }
    out
}
