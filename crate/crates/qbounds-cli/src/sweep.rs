//! Parameter sweeps: evaluate the requested bounds over an evenly spaced
//! grid and serialize the results as a deterministic CSV.

use crate::{CliError, fmt};
use qbounds::bounds::{Bound, full_report};
use qbounds::{Basis64, StateSpec64};
use std::path::Path;

/// Column derived from the report but absent from the bound registry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extra {
    /// Coherence form of the ordering-maximized weighted overlap bound
    /// without its correlation correction: max over orderings of the
    /// weighted chained overlap, minus S(A|B).
    CohZhang,
}

impl Extra {
    fn name(self) -> &'static str {
        match self {
            Extra::CohZhang => "coh_zhang",
        }
    }
}

pub struct SweepConfig {
    pub template: StateSpec64,
    pub param: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub bases: Vec<Basis64>,
    pub bounds: Vec<Bound>,
    pub extras: Vec<Extra>,
}

/// Sweep results: value-column names and one `(param, values)` pair per
/// grid point, in grid order.
pub struct SweepData {
    pub columns: Vec<String>,
    pub rows: Vec<(f64, Vec<f64>)>,
}

pub fn run(config: &SweepConfig) -> Result<SweepData, CliError> {
    if config.steps < 2 {
        return Err(CliError::Args(format!(
            "a sweep needs at least 2 steps, got {}",
            config.steps
        )));
    }
    if !(config.from <= config.to) {
        return Err(CliError::Args(format!(
            "sweep range must satisfy from <= to, got {} and {}",
            config.from, config.to
        )));
    }

    let mut columns = vec!["lhs_entropy".to_string(), "lhs_coherence".to_string()];
    columns.extend(config.bounds.iter().map(|b| b.name().to_string()));
    columns.extend(config.extras.iter().map(|e| e.name().to_string()));

    let span = config.to - config.from;
    let last = (config.steps - 1) as f64;
    let mut rows = Vec::with_capacity(config.steps);
    for k in 0..config.steps {
        let value = config.from + span * (k as f64) / last;
        let spec = config.template.with_param(&config.param, value)?;
        let rho = spec.build()?;
        let report = full_report(&rho, &config.bases, &config.bounds)?;
        let mut cells = vec![report.lhs_entropy, report.lhs_coherence];
        cells.extend(report.bounds.iter().map(|&(_, v)| v));
        for extra in &config.extras {
            cells.push(match extra {
                Extra::CohZhang => report.quantities.zhang_ell_max - report.quantities.s_cond,
            });
        }
        rows.push((value, cells));
    }
    Ok(SweepData { columns, rows })
}

pub fn to_csv(data: &SweepData) -> String {
    let mut out = String::from("param");
    for name in &data.columns {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (param, cells) in &data.rows {
        out.push_str(&fmt::sig12(*param));
        for cell in cells {
            out.push(',');
            out.push_str(&fmt::sig12(*cell));
        }
        out.push('\n');
    }
    out
}

/// Writes the CSV and, when asked, an SVG plot next to it.
pub fn write_outputs(data: &SweepData, csv_path: &Path, svg: bool) -> Result<(), CliError> {
    std::fs::write(csv_path, to_csv(data))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", csv_path.display())))?;
    if svg {
        let svg_path = csv_path.with_extension("svg");
        let title = csv_path.file_stem().map(|s| s.to_string_lossy().into_owned());
        let rendered = crate::svg::render(title.as_deref().unwrap_or("sweep"), data);
        std::fs::write(&svg_path, rendered)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", svg_path.display())))?;
    }
    Ok(())
}
