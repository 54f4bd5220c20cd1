use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::cosim::{block_scene, solve, CosimReport, CosimStatus};
use crate::error::Error;
use crate::leakage::{all_vectors, format_inputs, gate_static_power};
use crate::thermal::GridMode;

use super::grid_io::{fmt_f64, write_grid};
use super::project::{load_project, Project, ProjectError};
use super::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Project(#[from] ProjectError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Project(_) | CliError::Usage(_) => EXIT_VALIDATION,
            // Geometry and configuration problems caught by the model layers.
            CliError::Model(Error::Domain(_) | Error::Config(_) | Error::Topology { .. }) => EXIT_VALIDATION,
            CliError::Model(_) | CliError::Write { .. } => EXIT_NUMERICAL,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Writes `text` to `path`, or to `stdout` when no path is given.
fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> CliResult<()> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    };
    res.map_err(|source| CliError::Write {
        path: path.map_or_else(|| "stdout".into(), |p| p.display().to_string()),
        source,
    })
}

#[derive(Debug, Clone, Default)]
pub struct LeakageOptions {
    pub temp: Option<f64>,
    pub all_vectors: bool,
    pub out: Option<PathBuf>,
}

/// Rows in library order: the vectors blocks actually use, or every vector
/// for gates no block references (or for all gates with `all_vectors`).
fn leakage_rows(project: &Project, all: bool) -> Vec<(usize, Vec<bool>)> {
    let mut rows = Vec::new();
    for (gi, g) in project.gates.iter().enumerate() {
        let used: BTreeSet<String> = project
            .blocks
            .iter()
            .flat_map(|b| &b.gates)
            .filter(|inst| inst.gate.name() == g.name())
            .map(|inst| format_inputs(&inst.inputs))
            .collect();
        for v in all_vectors(g.num_inputs()) {
            if all || used.is_empty() || used.contains(&format_inputs(&v)) {
                rows.push((gi, v));
            }
        }
    }
    rows
}

pub fn leakage_report(project: &Project, opts: &LeakageOptions, stderr: &mut dyn Write) -> CliResult<String> {
    let t = opts.temp.unwrap_or(project.t_ref());
    if !(t.is_finite() && t > 0.0) {
        return Err(CliError::Usage(format!("--temp must be positive, got {t}")));
    }
    let mut out = String::new();
    let _ = writeln!(out, "# temperature_k={}", fmt_f64(t));
    out.push_str("gate,inputs,side,w_eff_um,i_off_a,p_static_w\n");
    for (gi, v) in leakage_rows(project, opts.all_vectors) {
        let g = &project.gates[gi];
        let bits = format_inputs(&v);
        match gate_static_power(g, &v, &project.technology, t) {
            Ok(l) => {
                let _ = writeln!(
                    out,
                    "{},{bits},{},{},{},{}",
                    g.name(),
                    l.side,
                    fmt_f64(l.w_eff * 1e6),
                    fmt_f64(l.i_off),
                    fmt_f64(l.p_static)
                );
            }
            Err(e @ Error::Topology { .. }) => {
                let _ = writeln!(stderr, "warning: {e}");
                let _ = writeln!(out, "{},{bits},topology_error,,,", g.name());
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

pub fn cmd_leakage(
    project: &Path,
    opts: &LeakageOptions,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<i32> {
    let p = load_project(project)?;
    let text = leakage_report(&p, opts, stderr)?;
    emit(&text, opts.out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone)]
pub struct GridOptions {
    pub nx: usize,
    pub ny: usize,
    pub mode: GridMode,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self { nx: 101, ny: 101, mode: GridMode::Absolute }
    }
}

/// Thermal map of the blocks' dynamic power.
pub fn thermal_grid_text(project: &Project, grid: &GridOptions) -> CliResult<String> {
    let g = project.dynamic_scene().field()?.sample(grid.nx, grid.ny, grid.mode)?;
    Ok(write_grid(&g))
}

pub fn cmd_thermal(project: &Path, grid: &GridOptions, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<i32> {
    let p = load_project(project)?;
    emit(&thermal_grid_text(&p, grid)?, out, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Default)]
pub struct CosimOptions {
    pub trace: bool,
    pub max_iter: Option<usize>,
    pub out: Option<PathBuf>,
    pub grid_out: Option<PathBuf>,
    pub grid: GridOptions,
}

#[derive(Serialize)]
struct BlockSummary<'a> {
    id: &'a str,
    temperature_k: f64,
    rise_k: f64,
    dynamic_mw: f64,
    static_mw: Option<f64>,
}

#[derive(Serialize)]
struct TraceEntry {
    iteration: usize,
    temperatures_k: Vec<f64>,
    static_mw: Vec<Option<f64>>,
    total_power_mw: Option<f64>,
    residual_k: Option<f64>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    status: &'static str,
    iterations: usize,
    residual_k: Option<f64>,
    tol_k: f64,
    t_sink_k: f64,
    total_power_mw: Option<f64>,
    blocks: Vec<BlockSummary<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceEntry>>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

pub fn cosim_report_json(project: &Project, report: &CosimReport<f64>, trace: bool) -> String {
    let last = report.last();
    let t_sink = project.scene.t_sink;
    let json = ReportJson {
        status: report.status.as_str(),
        iterations: report.iterations(),
        residual_k: last.residual.and_then(finite),
        tol_k: project.cosim.tol,
        t_sink_k: t_sink,
        total_power_mw: finite(last.total_power * 1e3),
        blocks: project
            .blocks
            .iter()
            .zip(&last.temperatures)
            .zip(&last.static_power)
            .map(|((b, &t), &s)| BlockSummary {
                id: &b.id,
                temperature_k: t,
                rise_k: t - t_sink,
                dynamic_mw: b.dynamic_power * 1e3,
                static_mw: finite(s * 1e3),
            })
            .collect(),
        trace: trace.then(|| {
            report
                .records
                .iter()
                .map(|r| TraceEntry {
                    iteration: r.iteration,
                    temperatures_k: r.temperatures.clone(),
                    static_mw: r.static_power.iter().map(|&s| finite(s * 1e3)).collect(),
                    total_power_mw: finite(r.total_power * 1e3),
                    residual_k: r.residual.and_then(finite),
                })
                .collect()
        }),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
    s.push('\n');
    s
}

pub fn cmd_cosim(
    project: &Path,
    opts: &CosimOptions,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<i32> {
    let mut p = load_project(project)?;
    if let Some(m) = opts.max_iter {
        p.cosim.max_iter = m;
    }
    let report = solve(&p.scene, &p.blocks, &p.technology, &p.cosim)?;
    emit(&cosim_report_json(&p, &report, opts.trace), opts.out.as_deref(), stdout)?;
    if let Some(path) = &opts.grid_out {
        if report.status == CosimStatus::ThermalRunaway {
            let _ = writeln!(stderr, "warning: thermal runaway, final grid not written");
        } else {
            let last = report.last();
            let powers: Vec<f64> = p.blocks.iter().zip(&last.static_power).map(|(b, &s)| b.dynamic_power + s).collect();
            let g = block_scene(&p.scene, &p.blocks, &powers).field()?.sample(
                opts.grid.nx,
                opts.grid.ny,
                opts.grid.mode,
            )?;
            emit(&write_grid(&g), Some(path), stdout)?;
        }
    }
    Ok(match report.status {
        CosimStatus::Converged => EXIT_OK,
        CosimStatus::MaxIterReached | CosimStatus::ThermalRunaway => {
            let _ = writeln!(stderr, "cosim stopped: {}", report.status.as_str());
            EXIT_NOT_CONVERGED
        }
    })
}

/// All verification tables; the default technology and reference die are
/// used when no project is given.
pub fn verify_tables(project: Option<&Project>) -> CliResult<Vec<verify::Table>> {
    let default_tech = Default::default();
    let (tech, k_si, t) = match project {
        Some(p) => (&p.technology, p.scene.k_si, p.t_ref()),
        None => (&default_tech, crate::thermal::DEFAULT_K_SI, 300.0),
    };
    let scene = match project {
        Some(p) if !p.blocks.is_empty() && p.blocks.iter().any(|b| b.dynamic_power > 0.0) => p.dynamic_scene(),
        _ => verify::reference_scene(),
    };
    Ok(vec![
        verify::pair_table(tech, t)?,
        verify::stack_table(tech, t, 4, 0.24e-6)?,
        verify::center_table(k_si)?,
        verify::profile_table(&verify::profile_source(), k_si, 20e-6, 80)?,
        verify::flux_table(&scene)?,
    ])
}

pub fn cmd_verify(project: Option<&Path>, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<i32> {
    let p = project.map(load_project).transpose()?;
    let tables = verify_tables(p.as_ref())?;
    emit(&verify::render(&tables), out, stdout)?;
    Ok(if tables.iter().all(verify::Table::passed) { EXIT_OK } else { EXIT_NUMERICAL })
}
