use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cse::{CseSolution, Regime};
use crate::error::{Error, Result};
use crate::verify::VerificationReport;

pub const SOLUTION_FORMAT: &str = "signal-eq solution v1";

/// Full-precision decimal text of a float: 17 significant digits.
pub fn decimal(v: f64) -> String {
    format!("{v:.16e}")
}

/// Headline numbers as decimal strings for scripts that do not parse floats
/// faithfully.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSummary {
    pub regime: Regime,
    pub z_ell: Option<String>,
    pub s_ell: Option<String>,
    pub x_ell: Option<String>,
    pub z_h: Option<String>,
    pub s_h: Option<String>,
    pub x_h: Option<String>,
    pub tau_top: Option<String>,
    pub pooled_reaction: Option<String>,
    pub arc_nodes: usize,
}

impl SolutionSummary {
    pub fn of(sol: &CseSolution<f64>) -> Self {
        let th = sol.thresholds;
        let jump = th.and_then(|t| t.jump);
        SolutionSummary {
            regime: sol.regime,
            z_ell: th.map(|t| decimal(t.z_ell)),
            s_ell: th.map(|t| decimal(t.s_ell)),
            x_ell: th.map(|t| decimal(t.x_ell)),
            z_h: jump.map(|j| decimal(j.z_h)),
            s_h: jump.map(|j| decimal(j.s_h)),
            x_h: jump.map(|j| decimal(j.x_h)),
            tau_top: sol.tau_top.map(decimal),
            pooled_reaction: sol.pooled.map(|p| decimal(p.reaction)),
            arc_nodes: sol.arc.len(),
        }
    }
}

/// Contents of `solution.json`. Floats in `solution` use the shortest
/// representation that parses back to the same value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub format: String,
    pub summary: SolutionSummary,
    pub solution: CseSolution<f64>,
}

impl SolutionFile {
    pub fn new(solution: CseSolution<f64>) -> Self {
        SolutionFile {
            format: SOLUTION_FORMAT.into(),
            summary: SolutionSummary::of(&solution),
            solution,
        }
    }
}

pub fn to_json(sol: &CseSolution<f64>) -> Result<String> {
    serde_json::to_string_pretty(&SolutionFile::new(sol.clone())).map_err(|e| Error::Io(e.to_string()))
}

pub fn from_json(text: &str) -> Result<CseSolution<f64>> {
    let file: SolutionFile =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed solution file: {e}")))?;
    if file.format != SOLUTION_FORMAT {
        return Err(Error::Config(format!("unsupported solution format {:?}", file.format)));
    }
    Ok(file.solution)
}

pub fn read_solution(path: &Path) -> Result<CseSolution<f64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text)
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let io = |e: csv::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(())
}

/// Segment label of sender type `z` in the strategy plot.
fn segment(sol: &CseSolution<f64>, z: f64) -> &'static str {
    match (sol.thresholds, sol.pooled) {
        (None, _) => "out",
        (Some(th), _) if z < th.z_ell => "out",
        (_, Some(p)) if z >= p.types.lo => "pooled",
        _ => "separating",
    }
}

/// Writes `solution.json` and the CSV tables into `dir`; returns the paths.
pub fn write_solution_files(sol: &CseSolution<f64>, dir: &Path, table_points: usize) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let json = dir.join("solution.json");
    fs::write(&json, to_json(sol)?)?;
    written.push(json);

    let arc = &sol.arc;
    let pooled = sol.pooled;
    let path = dir.join("mu.csv");
    let mut rows: Vec<Vec<String>> = (0..arc.len())
        .map(|i| vec![decimal(arc.actions[i]), decimal(arc.beliefs[i]), decimal(arc.beliefs[i])])
        .collect();
    if let Some(p) = pooled {
        rows.push(vec![decimal(p.action), decimal(p.types.lo), decimal(p.types.hi)]);
    }
    write_csv(&path, &["action", "belief_lo", "belief_hi"], rows)?;
    written.push(path);

    let path = dir.join("tau.csv");
    let mut rows: Vec<Vec<String>> = (0..arc.len())
        .filter(|&i| sol.on_path(arc.actions[i]))
        .map(|i| vec![decimal(arc.actions[i]), decimal(arc.reactions[i])])
        .collect();
    if let Some(p) = pooled {
        rows.push(vec![decimal(p.action), decimal(p.reaction)]);
    }
    write_csv(&path, &["action", "reaction"], rows)?;
    written.push(path);

    let path = dir.join("matching.csv");
    let mut rows: Vec<Vec<String>> = (0..arc.len())
        .filter(|&i| sol.on_path(arc.actions[i]))
        .map(|i| vec![decimal(arc.actions[i]), decimal(arc.partners[i]), decimal(arc.partners[i])])
        .collect();
    if let Some(p) = pooled {
        rows.push(vec![decimal(p.action), decimal(p.receivers.lo), decimal(p.receivers.hi)]);
    }
    write_csv(&path, &["action", "receiver_lo", "receiver_hi"], rows)?;
    written.push(path);

    let table = sol.sigma_table(table_points);
    let path = dir.join("sigma.csv");
    write_csv(&path, &["type", "action"], table.iter().map(|&(z, s)| vec![decimal(z), decimal(s)]))?;
    written.push(path);

    let path = dir.join("figure1.csv");
    let mut points: Vec<(f64, f64, &str)> = table.iter().map(|&(z, s)| (z, s, segment(sol, z))).collect();
    // both sides of each discontinuity
    if let Some(th) = sol.thresholds {
        if th.z_ell > sol.sender_types.lo {
            points.push((th.z_ell, 0.0, "out"));
            points.push((th.z_ell, sol.sigma(th.z_ell), segment(sol, th.z_ell)));
        }
        if let (Some(j), Some(top), Regime::StrictlyWellBehaved) = (th.jump, sol.arc_top(), sol.regime) {
            points.push((j.z_h, top, "separating"));
            points.push((j.z_h, j.s_h, "pooled"));
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    points.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    write_csv(
        &path,
        &["type", "action", "segment"],
        points.iter().map(|&(z, s, seg)| vec![decimal(z), decimal(s), seg.to_string()]),
    )?;
    written.push(path);
    Ok(written)
}

pub fn write_report(report: &VerificationReport, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let text = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, text)?;
    Ok(())
}
