//! Closed-form steady-state surface temperature of rectangular heat sources.
//!
//! Every quantity here is a temperature rise above the sink unless a method
//! says otherwise. A uniform rectangle of power `P` is approximated by the
//! lower of its exact center rise and the rise of an equivalent finite line
//! source laid along its longer side. Scenes superpose many rectangles and
//! enforce the die boundary conditions with images: lateral mirror copies
//! (power `+P`) for the adiabatic side walls, and one buried copy per
//! surface source at depth `2·t_sub` (power `−P`) for the isothermal bottom.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Bulk silicon near 300 K, W/(m·K).
pub const DEFAULT_K_SI: f64 = 148.0;
pub const DEFAULT_IMAGE_ORDER: usize = 2;
pub const MAX_IMAGE_ORDER: usize = 4;

/// Uniform rectangular heat source on the die surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatSource<S> {
    /// Center position (m).
    pub x: S,
    pub y: S,
    /// Extent along x (m).
    pub w: S,
    /// Extent along y (m).
    pub l: S,
    /// Power (W); negative for sinks.
    pub p: S,
}

impl<S: Scalar> HeatSource<S> {
    pub fn new(x: S, y: S, w: S, l: S, p: S) -> Result<Self> {
        let s = Self { x, y, w, l, p };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.w.is_finite() && self.w > S::zero() && self.l.is_finite() && self.l > S::zero()) {
            return Err(domain(format!("source sides must be positive, got {} x {}", self.w, self.l)));
        }
        if !(self.x.is_finite() && self.y.is_finite() && self.p.is_finite()) {
            return Err(domain("source position and power must be finite"));
        }
        Ok(())
    }

    pub fn with_power(mut self, p: S) -> Self {
        self.p = p;
        self
    }

    pub fn area(&self) -> S {
        self.w * self.l
    }

    /// Length of the longer side.
    pub fn long_side(&self) -> S {
        self.w.max(self.l)
    }
}

/// Rise `P/(2π·k·r)` of a point source on an adiabatic surface.
pub fn point_source_rise<S: Scalar>(p: S, r: S, k_si: S) -> Result<S> {
    if !(r > S::zero()) {
        return Err(Error::Singularity(format!("point source evaluated at r = {r}")));
    }
    Ok(p / (S::two() * S::PI() * k_si * r))
}

/// Exact rise at the center of a uniform rectangle.
pub fn center_rise<S: Scalar>(src: &HeatSource<S>, k_si: S) -> S {
    let (w, l) = (src.w, src.l);
    let c = w.hypot(l);
    // ln[(l+c)/(c−l)] = 2·ln[(l+c)/w] avoids the cancellation in c−l.
    let sum = w * ((l + c) / w).ln() + l * ((w + c) / l).ln();
    src.p / (S::PI() * k_si * w * l) * sum
}

/// Rise of the equivalent finite line source at `(x, y)` relative to the
/// source center.
///
/// The line runs along the longer side. With `a` the transverse distance and
/// `b± = len/2 ± u` the distances to the line ends along it, the rise is
/// `P/(2π·k·len)·[asinh(b+/a) + asinh(b−/a)]`, evaluated so that points on the
/// line's axis beyond its ends stay finite.
pub fn line_rise<S: Scalar>(src: &HeatSource<S>, x: S, y: S, k_si: S) -> Result<S> {
    let (along, trans, len) = if src.w >= src.l { (x, y, src.w) } else { (y, x, src.l) };
    let h = len * S::half();
    let a = trans.abs();
    let (b1, b2) = (h - along, h + along);
    let log_sum = if b1 >= S::zero() && b2 >= S::zero() {
        if a == S::zero() {
            return Err(Error::Singularity(format!("line source evaluated on its own segment at ({x}, {y})")));
        }
        (a.hypot(b1) + b1).ln() + (a.hypot(b2) + b2).ln() - S::two() * a.ln()
    } else if b1 < S::zero() {
        ((a.hypot(b2) + b2) / (a.hypot(b1) - b1)).ln()
    } else {
        ((a.hypot(b1) + b1) / (a.hypot(b2) - b2)).ln()
    };
    Ok(src.p / (S::two() * S::PI() * k_si * len) * log_sum)
}

/// `P·min(center, line)` of the unit-power shapes; on-segment points get the
/// center value.
pub fn min_rise<S: Scalar>(src: &HeatSource<S>, x: S, y: S, k_si: S) -> S {
    let unit = src.with_power(S::one());
    let center = center_rise(&unit, k_si);
    let shape = match line_rise(&unit, x, y, k_si) {
        Ok(line) => center.min(line),
        Err(_) => center,
    };
    src.p * shape
}

/// Self-heating thermal resistance `ΔT/P` (K/W) at the source center.
pub fn thermal_resistance<S: Scalar>(src: &HeatSource<S>, k_si: S) -> S {
    center_rise(&src.with_power(S::one()), k_si)
}

/// A surface source or one of its images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageSource<S> {
    pub source: HeatSource<S>,
    /// Depth below the surface (m); zero for surface sources.
    pub depth: S,
}

impl<S: Scalar> ImageSource<S> {
    pub fn rise_at(&self, x: S, y: S, k_si: S) -> S {
        let (dx, dy) = (x - self.source.x, y - self.source.y);
        if self.depth > S::zero() {
            let r = dx.hypot(dy).hypot(self.depth);
            self.source.p / (S::two() * S::PI() * k_si * r)
        } else {
            min_rise(&self.source, dx, dy, k_si)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermalScene<S> {
    /// Die extent along x and y (m); the die spans `[0, die_w] × [0, die_h]`.
    pub die_w: S,
    pub die_h: S,
    /// Substrate thickness (m).
    pub t_sub: S,
    /// Thermal conductivity, W/(m·K).
    pub k_si: S,
    /// Sink temperature (K).
    pub t_sink: S,
    pub image_order: usize,
    pub sources: Vec<HeatSource<S>>,
}

impl<S: Scalar> ThermalScene<S> {
    /// Empty scene with default conductivity and image order.
    pub fn new(die_w: S, die_h: S, t_sub: S, t_sink: S) -> Self {
        Self {
            die_w,
            die_h,
            t_sub,
            k_si: S::lit(DEFAULT_K_SI),
            t_sink,
            image_order: DEFAULT_IMAGE_ORDER,
            sources: Vec::new(),
        }
    }

    pub fn with_sources(mut self, sources: Vec<HeatSource<S>>) -> Self {
        self.sources = sources;
        self
    }

    pub fn with_image_order(mut self, order: usize) -> Self {
        self.image_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: S| v.is_finite() && v > S::zero();
        if !(pos(self.die_w) && pos(self.die_h)) {
            return Err(domain("die dimensions must be positive"));
        }
        if !pos(self.t_sub) {
            return Err(domain("substrate thickness must be positive"));
        }
        if !pos(self.k_si) {
            return Err(domain("thermal conductivity must be positive"));
        }
        if !pos(self.t_sink) {
            return Err(domain("sink temperature must be positive"));
        }
        for (i, s) in self.sources.iter().enumerate() {
            s.validate()?;
            if !self.contains_footprint(s) {
                return Err(domain(format!("source {i} extends beyond the die")));
            }
        }
        Ok(())
    }

    pub fn contains_footprint(&self, s: &HeatSource<S>) -> bool {
        let (hw, hl) = (s.w * S::half(), s.l * S::half());
        s.x - hw >= S::zero() && s.x + hw <= self.die_w && s.y - hl >= S::zero() && s.y + hl <= self.die_h
    }

    pub fn contains(&self, x: S, y: S) -> bool {
        x >= S::zero() && x <= self.die_w && y >= S::zero() && y <= self.die_h
    }

    /// Expands images once so the field can be evaluated repeatedly.
    pub fn field(&self) -> Result<ThermalField<S>> {
        Ok(ThermalField {
            images: expand_images(self)?,
            k_si: self.k_si,
            t_sink: self.t_sink,
            die_w: self.die_w,
            die_h: self.die_h,
        })
    }
}

/// Coordinate of a source mirrored into lateral tile `i` of a die of size `d`.
fn tile_coord<S: Scalar>(c: S, i: i64, d: S) -> S {
    let fi = S::from_i64(i).expect("tile index fits scalar");
    if i.rem_euclid(2) == 0 {
        fi * d + c
    } else {
        (fi + S::one()) * d - c
    }
}

/// Original sources, their lateral mirror images up to `image_order`
/// reflections per axis, and a `−P` buried copy of every one of those.
pub fn expand_images<S: Scalar>(scene: &ThermalScene<S>) -> Result<Vec<ImageSource<S>>> {
    scene.validate()?;
    if scene.image_order > MAX_IMAGE_ORDER {
        return Err(Error::Resource(format!("image order {} exceeds the cap of {MAX_IMAGE_ORDER}", scene.image_order)));
    }
    let k = scene.image_order as i64;
    let tiles = (2 * k + 1) as usize;
    let mut surface = Vec::with_capacity(scene.sources.len() * tiles * tiles);
    // Originals first, then images in tile order.
    surface.extend(scene.sources.iter().copied());
    for i in -k..=k {
        for j in -k..=k {
            if i == 0 && j == 0 {
                continue;
            }
            for s in &scene.sources {
                surface.push(HeatSource {
                    x: tile_coord(s.x, i, scene.die_w),
                    y: tile_coord(s.y, j, scene.die_h),
                    ..*s
                });
            }
        }
    }
    let depth = S::two() * scene.t_sub;
    let mut out: Vec<ImageSource<S>> = surface.iter().map(|&source| ImageSource { source, depth: S::zero() }).collect();
    out.extend(surface.iter().map(|s| ImageSource { source: s.with_power(-s.p), depth }));
    Ok(out)
}

/// Field of an expanded scene.
#[derive(Debug, Clone)]
pub struct ThermalField<S> {
    images: Vec<ImageSource<S>>,
    k_si: S,
    t_sink: S,
    die_w: S,
    die_h: S,
}

impl<S: Scalar> ThermalField<S> {
    pub fn images(&self) -> &[ImageSource<S>] {
        &self.images
    }

    pub fn t_sink(&self) -> S {
        self.t_sink
    }

    /// Rise anywhere in the plane, including off-die points.
    pub fn rise_unchecked(&self, x: S, y: S) -> S {
        self.images.iter().fold(S::zero(), |acc, im| acc + im.rise_at(x, y, self.k_si))
    }

    pub fn rise_at(&self, x: S, y: S) -> Result<S> {
        if !(x >= S::zero() && x <= self.die_w && y >= S::zero() && y <= self.die_h) {
            return Err(domain(format!("point ({x}, {y}) lies outside the die")));
        }
        Ok(self.rise_unchecked(x, y))
    }

    /// Absolute temperature (K).
    pub fn temperature_at(&self, x: S, y: S) -> Result<S> {
        Ok(self.t_sink + self.rise_at(x, y)?)
    }

    pub fn sample(&self, nx: usize, ny: usize, mode: GridMode) -> Result<ThermalGrid<S>> {
        if nx < 2 || ny < 2 {
            return Err(domain(format!("grid needs at least 2x2 samples, got {nx}x{ny}")));
        }
        let dx = self.die_w / S::from_usize_lossy(nx - 1);
        let dy = self.die_h / S::from_usize_lossy(ny - 1);
        let offset = match mode {
            GridMode::Rise => S::zero(),
            GridMode::Absolute => self.t_sink,
        };
        let values: Vec<S> = (0..nx * ny)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx % nx, idx / nx);
                // Clamp the last sample onto the far edge exactly.
                let x = if i == nx - 1 { self.die_w } else { S::from_usize_lossy(i) * dx };
                let y = if j == ny - 1 { self.die_h } else { S::from_usize_lossy(j) * dy };
                offset + self.rise_unchecked(x, y)
            })
            .collect();
        Ok(ThermalGrid { nx, ny, dx, dy, mode, values })
    }
}

/// Absolute temperature (K) at a die point.
pub fn temperature_at<S: Scalar>(scene: &ThermalScene<S>, x: S, y: S) -> Result<S> {
    scene.field()?.temperature_at(x, y)
}

/// Temperature rise (K) at a die point.
pub fn rise_at<S: Scalar>(scene: &ThermalScene<S>, x: S, y: S) -> Result<S> {
    scene.field()?.rise_at(x, y)
}

pub fn sample_grid<S: Scalar>(scene: &ThermalScene<S>, nx: usize, ny: usize, mode: GridMode) -> Result<ThermalGrid<S>> {
    scene.field()?.sample(nx, ny, mode)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    Rise,
    Absolute,
}

impl GridMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GridMode::Rise => "rise",
            GridMode::Absolute => "absolute",
        }
    }
}

impl std::str::FromStr for GridMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rise" => Ok(GridMode::Rise),
            "absolute" => Ok(GridMode::Absolute),
            other => Err(domain(format!("unknown grid mode `{other}`"))),
        }
    }
}

/// Uniformly sampled temperature map, row-major with one row per y index.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalGrid<S> {
    pub nx: usize,
    pub ny: usize,
    /// Sample spacing (m).
    pub dx: S,
    pub dy: S,
    pub mode: GridMode,
    pub values: Vec<S>,
}

impl<S: Scalar> ThermalGrid<S> {
    pub fn get(&self, i: usize, j: usize) -> S {
        self.values[j * self.nx + i]
    }

    pub fn max(&self) -> S {
        self.values.iter().copied().fold(S::neg_infinity(), S::max)
    }

    pub fn min(&self) -> S {
        self.values.iter().copied().fold(S::infinity(), S::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const K: f64 = DEFAULT_K_SI;

    fn fig5_source() -> HeatSource<f64> {
        HeatSource::new(0.0, 0.0, 1e-6, 0.1e-6, 10e-3).unwrap()
    }

    #[test]
    fn point_source_values() {
        assert_eq!(point_source_rise(0.0, 1e-5, K).unwrap(), 0.0);
        let a = point_source_rise(1e-3, 1e-5, K).unwrap();
        assert_relative_eq!(a, 1e-3 / (2.0 * std::f64::consts::PI * K * 1e-5), max_relative = 1e-15);
        assert_relative_eq!(a, 0.10754, max_relative = 1e-4);
        assert_relative_eq!(point_source_rise(1e-3, 2e-5, K).unwrap(), a / 2.0, max_relative = 1e-15);
        assert!(matches!(point_source_rise(1e-3, 0.0, K), Err(Error::Singularity(_))));
    }

    #[test]
    fn center_rise_square_and_scaling() {
        let sq = HeatSource::new(0.0, 0.0, 50e-6, 50e-6, 0.2).unwrap();
        let expected = 0.2 * (3.0 + 2.0 * 2f64.sqrt()).ln() / (std::f64::consts::PI * K * 50e-6);
        assert_relative_eq!(center_rise(&sq, K), expected, max_relative = 1e-14);

        let a = HeatSource::new(0.0, 0.0, 3e-6, 1e-6, 1e-3).unwrap();
        let b = HeatSource::new(0.0, 0.0, 6e-6, 2e-6, 1e-3).unwrap();
        assert_relative_eq!(center_rise(&b, K), center_rise(&a, K) / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn center_rise_matches_printed_form() {
        // Direct transcription of the textbook log expression.
        for (w, l) in [(1e-6, 0.1e-6), (2e-6, 3e-6), (1e-4, 1e-6)] {
            let src = HeatSource::new(0.0, 0.0, w, l, 1e-3).unwrap();
            let c = f64::hypot(w, l);
            let printed = 1e-3 / (2.0 * std::f64::consts::PI * K * w * l)
                * (((l + c) / (c - l)).ln() * w + ((w + c) / (c - w)).ln() * l);
            assert_relative_eq!(center_rise(&src, K), printed, max_relative = 1e-9);
        }
    }

    #[test]
    fn center_rise_fig5_pin() {
        let t0 = center_rise(&fig5_source(), K);
        assert!((t0 - 85.96).abs() < 0.05, "T0 = {t0}");
        let r = thermal_resistance(&fig5_source(), K);
        assert!((r * 1e-3 - 8.596).abs() < 0.005, "Rth = {r}");
    }

    #[test]
    fn thermal_resistance_is_power_independent() {
        let a = HeatSource::new(0.0, 0.0, 1e-6, 0.1e-6, 1e-3).unwrap();
        assert_eq!(thermal_resistance(&a, K), thermal_resistance(&a.with_power(10e-3), K));
        let sq = HeatSource::new(0.0, 0.0, 2e-6, 2e-6, 1e-3).unwrap();
        assert_relative_eq!(
            thermal_resistance(&sq, K),
            (3.0 + 2.0 * 2f64.sqrt()).ln() / (std::f64::consts::PI * K * 2e-6),
            max_relative = 1e-14
        );
    }

    #[test]
    fn line_rise_matches_printed_formula_off_axis() {
        // Printed form with the line oriented along y, valid away from the axis.
        let src = HeatSource::new(0.0, 0.0, 0.1e-6, 1e-6, 10e-3).unwrap();
        let w: f64 = 1e-6;
        for (x, y) in [(0.3e-6, 0.1e-6), (2e-6, -1e-6), (0.05e-6, 0.4e-6)] {
            let num = (4.0 * x * x + w * w - 4.0 * y * w + 4.0 * y * y).sqrt() + w - 2.0 * y;
            let den = (4.0 * x * x + w * w + 4.0 * y * w + 4.0 * y * y).sqrt() - w - 2.0 * y;
            let printed = 10e-3 / (2.0 * std::f64::consts::PI * K * w) * (num / den).ln();
            assert_relative_eq!(line_rise(&src, x, y, K).unwrap(), printed, max_relative = 1e-9);
        }
    }

    #[test]
    fn line_rise_symmetry_and_singularity() {
        let src = fig5_source();
        for (x, y) in [(0.3e-6, 0.2e-6), (2e-6, 0.04e-6), (0.1e-6, 5e-6), (0.7e-6, 0.0)] {
            let v = line_rise(&src, x, y, K).unwrap();
            assert_eq!(v, line_rise(&src, -x, y, K).unwrap());
            assert_eq!(v, line_rise(&src, x, -y, K).unwrap());
        }
        assert!(matches!(line_rise(&src, 0.2e-6, 0.0, K), Err(Error::Singularity(_))));
        assert!(line_rise(&src, 0.8e-6, 0.0, K).unwrap().is_finite());
        assert_eq!(line_rise(&src.with_power(0.0), 1e-6, 1e-6, K).unwrap(), 0.0);
    }

    #[test]
    fn line_rise_far_field() {
        let src = fig5_source();
        let r = 50e-6;
        for angle in [0.0f64, 0.4, 1.1, std::f64::consts::FRAC_PI_2] {
            let (x, y) = (r * angle.cos(), r * angle.sin());
            let line = line_rise(&src, x, y, K).unwrap();
            let point = point_source_rise(src.p, r, K).unwrap();
            assert!((line / point - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn min_rise_caps_near_field() {
        let src = fig5_source();
        let t0 = center_rise(&src, K);
        assert_eq!(min_rise(&src, 0.0, 0.0, K), t0);
        assert_eq!(min_rise(&src, 1e-9, 1e-9, K), t0);
        let far = min_rise(&src, 0.0, 20e-6, K);
        assert_eq!(far, line_rise(&src, 0.0, 20e-6, K).unwrap());
        for k in 0..200 {
            let y = k as f64 * 0.05e-6;
            assert!(min_rise(&src, 0.1e-6, y, K) <= t0);
        }
    }

    fn scene() -> ThermalScene<f64> {
        ThermalScene::new(1e-3, 1e-3, 0.5e-3, 300.0).with_sources(vec![
            HeatSource::new(0.3e-3, 0.7e-3, 200e-6, 150e-6, 1.0).unwrap(),
            HeatSource::new(0.7e-3, 0.65e-3, 150e-6, 150e-6, 0.6).unwrap(),
            HeatSource::new(0.5e-3, 0.25e-3, 300e-6, 100e-6, 0.8).unwrap(),
        ])
    }

    #[test]
    fn image_counts() {
        let single = ThermalScene::<f64>::new(1e-3, 1e-3, 0.5e-3, 300.0)
            .with_sources(vec![HeatSource::new(0.5e-3, 0.5e-3, 1e-4, 1e-4, 1.0).unwrap()]);
        let im = expand_images(&single.clone().with_image_order(1)).unwrap();
        let surface: Vec<_> = im.iter().filter(|i| i.depth == 0.0).collect();
        assert_eq!(surface.len(), 9);
        let mut centers: Vec<(i64, i64)> =
            surface.iter().map(|i| ((i.source.x * 1e4).round() as i64, (i.source.y * 1e4).round() as i64)).collect();
        centers.sort();
        let mut expected = vec![];
        for x in [-5, 5, 15] {
            for y in [-5, 5, 15] {
                expected.push((x, y));
            }
        }
        assert_eq!(centers, expected);
        assert!(im.iter().filter(|i| i.depth > 0.0).all(|i| i.source.p == -1.0));

        let im0 = expand_images(&single.clone().with_image_order(0)).unwrap();
        assert_eq!(im0.len(), 2);
        assert!(expand_images(&single.with_image_order(MAX_IMAGE_ORDER + 1)).is_err());
    }

    #[test]
    fn mirrored_coordinates() {
        assert_eq!(tile_coord(0.2, 1, 1.0), 1.8);
        assert_eq!(tile_coord(0.2, -1, 1.0), -0.2);
        assert_eq!(tile_coord(0.2, 2, 1.0), 2.2);
        assert_eq!(tile_coord(0.2, -2, 1.0), -1.8);
    }

    #[test]
    fn zero_power_scene_is_uniform() {
        let mut s = scene();
        for src in &mut s.sources {
            src.p = 0.0;
        }
        let g = sample_grid(&s, 9, 7, GridMode::Absolute).unwrap();
        assert!(g.values.iter().all(|&v| v == 300.0));
    }

    #[test]
    fn single_source_reduces_to_min_rise() {
        let src = HeatSource::new(0.5e-3, 0.5e-3, 1e-4, 5e-5, 1.0).unwrap();
        let s = ThermalScene::new(1e-3, 1e-3, 1e12, 300.0).with_sources(vec![src]).with_image_order(0);
        let (x, y) = (0.62e-3, 0.41e-3);
        let direct = min_rise(&src, x - src.x, y - src.y, K);
        assert_relative_eq!(rise_at(&s, x, y).unwrap(), direct, max_relative = 1e-9);
    }

    #[test]
    fn off_die_and_invalid_scene() {
        let s = scene();
        assert!(temperature_at(&s, -1e-6, 0.5e-3).is_err());
        assert!(temperature_at(&s, 0.5e-3, 1.1e-3).is_err());
        let mut bad = scene();
        bad.sources[0].x = 0.05e-3;
        assert!(bad.validate().is_err());
        assert!(sample_grid(&s, 1, 5, GridMode::Rise).is_err());
    }

    #[test]
    fn fig6_map_structure() {
        let s = scene();
        let g = sample_grid(&s, 51, 51, GridMode::Absolute).unwrap();
        assert!(g.values.iter().all(|v| v.is_finite() && *v > 300.0));
        let peak = g.max();
        let k = g.values.iter().position(|&v| v == peak).unwrap();
        let (px, py) = ((k % g.nx) as f64 * g.dx, (k / g.nx) as f64 * g.dy);
        let f = s.field().unwrap();
        // Peak lies on (or within a grid step of) some footprint.
        assert!(s.sources.iter().any(|b| (px - b.x).abs() <= b.w / 2.0 + g.dx && (py - b.y).abs() <= b.l / 2.0 + g.dy));
        // The near field is flat-topped, so compare against points one
        // footprint beyond each block instead of right next to its center.
        for b in &s.sources {
            let c = f.temperature_at(b.x, b.y).unwrap();
            for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                let h = if dx != 0.0 { b.w } else { b.l };
                assert!(f.temperature_at(b.x + dx * h, b.y + dy * h).unwrap() < c);
            }
        }
    }

    #[test]
    fn single_precision_center_rise() {
        let src = HeatSource::new(0.0f32, 0.0, 1e-6, 0.1e-6, 10e-3).unwrap();
        let t0 = center_rise(&src, 148.0f32);
        assert!((t0 - 85.96).abs() < 0.05);
    }
}
