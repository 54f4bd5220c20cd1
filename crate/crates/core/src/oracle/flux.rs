use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::thermal::{ThermalField, ThermalScene};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    /// x = 0
    Left,
    /// x = die_w
    Right,
    /// y = 0
    Bottom,
    /// y = die_h
    Top,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::Left, Edge::Right, Edge::Bottom, Edge::Top];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxProbeOptions {
    /// Finite-difference step as a fraction of the smaller die side.
    pub rel_step: f64,
    /// Interior samples per axis for the peak-gradient normalization.
    pub interior_samples: usize,
}

impl Default for FluxProbeOptions {
    fn default() -> Self {
        Self { rel_step: 1e-4, interior_samples: 64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxProbe<S> {
    /// Largest `|∂T/∂n|` over the probed edge points (K/m).
    pub max_normal_gradient: S,
    /// Largest interior `|∇T|` over the sampling lattice (K/m).
    pub peak_interior_gradient: S,
    /// `max_normal_gradient / peak_interior_gradient`, zero for a flat field.
    pub normalized: S,
    /// Step actually used (m).
    pub step: S,
    /// Whether the requested step had to be enlarged to stay resolvable.
    pub step_enlarged: bool,
}

fn resolve_step<S: Scalar>(scene: &ThermalScene<S>, rel_step: f64) -> (S, bool) {
    let scale = scene.die_w.max(scene.die_h);
    let requested = S::lit(rel_step) * scene.die_w.min(scene.die_h);
    // Central differences lose all digits once the step nears coordinate ulp.
    let floor = S::epsilon().sqrt() * scale;
    if requested.is_finite() && requested >= floor {
        (requested, false)
    } else {
        (floor, true)
    }
}

/// Largest central-difference gradient magnitude over an `m × m` lattice of
/// cell-centered interior points.
pub fn peak_interior_gradient<S: Scalar>(field: &ThermalField<S>, scene: &ThermalScene<S>, m: usize, h: S) -> S {
    let (sx, sy) = (scene.die_w / S::from_usize_lossy(m), scene.die_h / S::from_usize_lossy(m));
    let mut peak = S::zero();
    for j in 0..m {
        let y = (S::from_usize_lossy(j) + S::half()) * sy;
        for i in 0..m {
            let x = (S::from_usize_lossy(i) + S::half()) * sx;
            let gx = (field.rise_unchecked(x + h, y) - field.rise_unchecked(x - h, y)) / (S::two() * h);
            let gy = (field.rise_unchecked(x, y + h) - field.rise_unchecked(x, y - h)) / (S::two() * h);
            peak = peak.max(gx.hypot(gy));
        }
    }
    peak
}

pub fn boundary_flux_probe<S: Scalar>(scene: &ThermalScene<S>, edge: Edge, n_points: usize) -> Result<FluxProbe<S>> {
    boundary_flux_probe_with(scene, edge, n_points, FluxProbeOptions::default())
}

/// Normal temperature derivative across an edge, by central differences
/// straddling the edge at `n_points` evenly spaced positions (a single point
/// is the edge midpoint).
pub fn boundary_flux_probe_with<S: Scalar>(
    scene: &ThermalScene<S>,
    edge: Edge,
    n_points: usize,
    opts: FluxProbeOptions,
) -> Result<FluxProbe<S>> {
    if n_points == 0 {
        return Err(domain("flux probe needs at least one point"));
    }
    if opts.interior_samples == 0 {
        return Err(domain("flux probe needs interior samples for normalization"));
    }
    let field = scene.field()?;
    let (h, step_enlarged) = resolve_step(scene, opts.rel_step);

    let mut max_normal = S::zero();
    for k in 0..n_points {
        let s = (S::from_usize_lossy(k) + S::half()) / S::from_usize_lossy(n_points);
        let ((x, y), (nx, ny)) = match edge {
            Edge::Left => ((S::zero(), s * scene.die_h), (S::one(), S::zero())),
            Edge::Right => ((scene.die_w, s * scene.die_h), (S::one(), S::zero())),
            Edge::Bottom => ((s * scene.die_w, S::zero()), (S::zero(), S::one())),
            Edge::Top => ((s * scene.die_w, scene.die_h), (S::zero(), S::one())),
        };
        let plus = field.rise_unchecked(x + nx * h, y + ny * h);
        let minus = field.rise_unchecked(x - nx * h, y - ny * h);
        max_normal = max_normal.max(((plus - minus) / (S::two() * h)).abs());
    }
    let peak = peak_interior_gradient(&field, scene, opts.interior_samples, h);
    let normalized = if peak > S::zero() { max_normal / peak } else { S::zero() };
    Ok(FluxProbe { max_normal_gradient: max_normal, peak_interior_gradient: peak, normalized, step: h, step_enlarged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::HeatSource;

    fn centered(order: usize, p: f64) -> ThermalScene<f64> {
        ThermalScene::new(1e-3, 1e-3, 0.5e-3, 300.0)
            .with_sources(vec![HeatSource::new(0.5e-3, 0.5e-3, 1e-4, 1e-4, p).unwrap()])
            .with_image_order(order)
    }

    #[test]
    fn opposite_edges_agree_for_centered_source() {
        for order in 0..=2 {
            let s = centered(order, 1.0);
            let l = boundary_flux_probe(&s, Edge::Left, 1).unwrap();
            let r = boundary_flux_probe(&s, Edge::Right, 1).unwrap();
            let b = boundary_flux_probe(&s, Edge::Bottom, 1).unwrap();
            let t = boundary_flux_probe(&s, Edge::Top, 1).unwrap();
            assert!((l.max_normal_gradient - r.max_normal_gradient).abs() <= 1e-6 * l.max_normal_gradient.max(1e-9));
            assert!((b.max_normal_gradient - t.max_normal_gradient).abs() <= 1e-6 * b.max_normal_gradient.max(1e-9));
        }
    }

    #[test]
    fn images_reduce_flux() {
        let f0 = boundary_flux_probe(&centered(0, 1.0), Edge::Left, 5).unwrap();
        let f2 = boundary_flux_probe(&centered(2, 1.0), Edge::Left, 5).unwrap();
        assert!(f2.normalized < f0.normalized);
    }

    #[test]
    fn zero_power_has_zero_flux() {
        let f = boundary_flux_probe(&centered(1, 0.0), Edge::Top, 3).unwrap();
        assert_eq!(f.max_normal_gradient, 0.0);
        assert_eq!(f.normalized, 0.0);
    }

    #[test]
    fn tiny_step_is_enlarged() {
        let opts = FluxProbeOptions { rel_step: 1e-15, interior_samples: 4 };
        let f = boundary_flux_probe_with(&centered(1, 1.0), Edge::Left, 1, opts).unwrap();
        assert!(f.step_enlarged);
        assert!(f.step > 1e-15 * 1e-3);
        assert!(boundary_flux_probe(&centered(1, 1.0), Edge::Left, 0).is_err());
    }
}
