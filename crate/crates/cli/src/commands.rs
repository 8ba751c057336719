//! One function per subcommand.

use std::path::{Path, PathBuf};

use gamov::diagnostics::run_all;
use gamov::evolution::{characteristic_apply, cut_case_apply, truncated_apply, CutState, EvolutionState, TruncationContext};
use gamov::gamov::{compare_boundary_values, expand, transition_decomposition, POLE_SEARCH};
use gamov::resonance::{hardy_minus_defect, locate_inverse_poles, locate_poles, survival_test, Region};
use gamov::smatrix::ScatteringModel;
use gamov::{Vector, C64};

use crate::config::{Command, Evolution, ExperimentConfig, Format};
use crate::failure::Failure;
use crate::table::{self, complex_cells, matrix_cells, matrix_headers, num, vector_cells, vector_headers, Table};

/// Files written by a command and whether its tolerances held.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
    pub tolerance_failures: Vec<String>,
}

impl Outcome {
    pub fn into_result(self) -> Result<Self, Failure> {
        if self.tolerance_failures.is_empty() {
            Ok(self)
        } else {
            Err(Failure::Tolerance(self.tolerance_failures.join("; ")))
        }
    }
}

fn emit(out: &mut Outcome, dir: &Path, cfg: &ExperimentConfig, cmd: Command, table: &Table) -> Result<(), Failure> {
    let path = match cfg.format {
        Format::Csv => table::write_csv(dir, cmd.name(), cmd.name(), table)?,
        Format::Json => table::write_json(dir, cmd.name(), &table.to_json())?,
    };
    out.files.push(path);
    Ok(())
}

fn lower_region(cfg: &ExperimentConfig) -> Result<Region, Failure> {
    let region = cfg.region.unwrap_or(POLE_SEARCH);
    if region.im_max >= 0.0 {
        return Err(Failure::Config("pole search region must lie in the lower half plane".into()));
    }
    Ok(region)
}

fn model_name(model: &ScatteringModel) -> &'static str {
    model.kind().name()
}

pub fn poles(cfg: &ExperimentConfig, dir: &Path) -> Result<Outcome, Failure> {
    let model = cfg.build_model()?;
    let region = lower_region(cfg)?;
    let dim = model.dim_k();
    let mut header: Vec<String> = ["model", "re_zeta", "im_zeta", "order"].map(String::from).to_vec();
    header.extend(matrix_headers("residue", dim, dim));
    header.extend(["kernel_dim", "classification"].map(String::from));
    let mut table = Table::new(header);
    let poles = locate_poles(&model, &region)?;
    for &zeta in &poles {
        let record = survival_test(&model, zeta)?;
        let mut row = vec![model_name(&model).to_string()];
        row.extend(complex_cells(zeta));
        row.push(record.s_order.to_string());
        row.extend(matrix_cells(&record.residue_s));
        row.push(record.survival_kernel.len().to_string());
        row.push(record.classification.name().to_string());
        table.push(row);
    }
    let mut out = Outcome { summary: vec![format!("{} poles in the region", poles.len())], ..Default::default() };
    emit(&mut out, dir, cfg, Command::Poles, &table)?;
    Ok(out)
}

fn first_outside(kernel: &[Vector], dim: usize) -> Option<Vector> {
    (0..dim).find_map(|j| {
        let mut v = Vector::from_fn(dim, |i, _| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
        for b in kernel {
            let p = b.dotc(&v);
            v -= b * p;
        }
        let n = v.norm();
        (n > 1e-8).then(|| v / C64::new(n, 0.0))
    })
}

pub fn survival(cfg: &ExperimentConfig, dir: &Path) -> Result<Outcome, Failure> {
    let model = cfg.build_model()?;
    let candidates: Vec<C64> = if cfg.zetas.is_empty() {
        let region = lower_region(cfg)?;
        let mut z = locate_poles(&model, &region)?;
        z.extend(locate_inverse_poles(&model, &region)?);
        z.dedup_by(|a, b| (*a - *b).norm() < 1e-8 * (1.0 + a.norm()));
        z
    } else {
        cfg.zetas.iter().map(|p| C64::new(p[0], p[1])).collect()
    };
    if let Some(z) = candidates.iter().find(|z| z.im >= 0.0) {
        return Err(Failure::Config(format!("survival points must lie in the lower half plane, got {z}")));
    }
    let header = [
        "model",
        "re_zeta",
        "im_zeta",
        "classification",
        "inverse_order",
        "s_order",
        "local_kernel_dim",
        "kernel_dim",
        "cut_singularities",
        "kernel_hardy_defect",
        "probe_hardy_defect",
    ];
    let mut table = Table::new(header.map(String::from).to_vec());
    let mut out = Outcome::default();
    let tol = cfg.tolerances.hardy_defect;
    for &zeta in &candidates {
        let r = survival_test(&model, zeta)?;
        let mut kernel_defect: f64 = 0.0;
        for k in &r.survival_kernel {
            kernel_defect = kernel_defect.max(hardy_minus_defect(&model, zeta, k, cfg.nodes)?);
        }
        if kernel_defect >= tol {
            out.tolerance_failures.push(format!("kernel vector at {zeta} has H²₋ defect {kernel_defect:.3e}"));
        }
        let probe = match first_outside(&r.survival_kernel, model.dim_k()) {
            Some(k) => {
                let d = hardy_minus_defect(&model, zeta, &k, cfg.nodes)?;
                if d < tol {
                    out.tolerance_failures.push(format!("non-kernel vector at {zeta} passes the H²₋ test ({d:.3e})"));
                }
                num(d)
            }
            None => "nan".into(),
        };
        let mut row = vec![model_name(&model).to_string()];
        row.extend(complex_cells(zeta));
        row.extend([
            r.classification.name().to_string(),
            r.order.to_string(),
            r.s_order.to_string(),
            r.local_kernel.len().to_string(),
            r.survival_kernel.len().to_string(),
            r.cut_zeros.len().to_string(),
            if r.survival_kernel.is_empty() { "nan".into() } else { num(kernel_defect) },
            probe,
        ]);
        table.push(row);
        out.summary.extend(r.warnings.iter().map(|w| format!("warning at {zeta}: {w}")));
    }
    out.summary.push(format!("{} points tested", candidates.len()));
    emit(&mut out, dir, cfg, Command::Survival, &table)?;
    Ok(out)
}

pub fn evolve(cfg: &ExperimentConfig, dir: &Path) -> Result<Outcome, Failure> {
    let f = cfg.vector("f")?;
    if cfg.times.is_empty() {
        return Err(Failure::Config("evolve needs a nonempty `times` list".into()));
    }
    let mut table = Table::new(["t", "norm", "overlap_re", "overlap_im"].map(String::from).to_vec());
    match cfg.evolution {
        Evolution::Characteristic => {
            let initial = EvolutionState::rational(f.clone())?;
            for &t in &cfg.times {
                let state = characteristic_apply(&initial, t)?;
                push_evolved(&mut table, t, state.norm(), initial.inner(&state));
            }
        }
        Evolution::Truncated => {
            let model = cfg.build_model()?;
            let ctx = TruncationContext::new(model)?;
            let initial = EvolutionState::rational(f.clone())?;
            for &t in &cfg.times {
                let state = truncated_apply(&ctx, f, t)?;
                push_evolved(&mut table, t, state.norm(), initial.inner(&state));
            }
        }
        Evolution::Cut => {
            let initial = CutState::new(f.clone())?;
            for &t in &cfg.times {
                let state = cut_case_apply(&initial, t)?;
                push_evolved(&mut table, t, state.bracket_norm(), initial.preimage.inner(&state.preimage));
            }
        }
    }
    let mut out = Outcome { summary: vec![format!("{} times evolved", cfg.times.len())], ..Default::default() };
    emit(&mut out, dir, cfg, Command::Evolve, &table)?;
    Ok(out)
}

fn push_evolved(table: &mut Table, t: f64, norm: f64, overlap: C64) {
    table.push(vec![num(t), num(norm), num(overlap.re), num(overlap.im)]);
}

pub fn expand_cmd(cfg: &ExperimentConfig, dir: &Path) -> Result<Outcome, Failure> {
    let model = cfg.build_model()?;
    let g = cfg.vector("g")?;
    let e = expand(&model, g)?;
    let mut header: Vec<String> = ["j", "re_zeta", "im_zeta"].map(String::from).to_vec();
    header.extend(vector_headers("coefficient", model.dim_k()));
    header.push("residual_defect".into());
    let mut table = Table::new(header);
    for (j, (zeta, coeff)) in e.terms.iter().enumerate() {
        let mut row = vec![j.to_string()];
        row.extend(complex_cells(*zeta));
        row.extend(vector_cells(coeff));
        row.push(num(e.residual_defect));
        table.push(row);
    }
    let mut out = Outcome {
        summary: vec![format!("{} terms, residual defect {:.3e}", e.pole_count, e.residual_defect)],
        ..Default::default()
    };
    if e.residual_defect >= cfg.tolerances.residual_defect {
        out.tolerance_failures.push(format!(
            "residual defect {:.3e} exceeds {:.1e}",
            e.residual_defect, cfg.tolerances.residual_defect
        ));
    }
    emit(&mut out, dir, cfg, Command::Expand, &table)?;
    if cfg.compare_upper_boundary {
        let header = ["re_z", "im_z", "defect_lower", "defect_upper", "difference"];
        let mut cmp = Table::new(header.map(String::from).to_vec());
        let mut largest: f64 = 0.0;
        for c in compare_boundary_values(&model, g)? {
            largest = largest.max(c.difference);
            let mut row = complex_cells(c.z).to_vec();
            row.extend([num(c.defect_lower), num(c.defect_upper), num(c.difference)]);
            cmp.push(row);
        }
        out.summary.push(format!("largest S₊/S₋ difference at the probes {largest:.3e}"));
        let path = match cfg.format {
            Format::Csv => table::write_csv(dir, "expand_boundary", "expand", &cmp)?,
            Format::Json => table::write_json(dir, "expand_boundary", &cmp.to_json())?,
        };
        out.files.push(path);
    }
    Ok(out)
}

pub fn transition(cfg: &ExperimentConfig, dir: &Path) -> Result<Outcome, Failure> {
    let model = cfg.build_model()?;
    let t = transition_decomposition(&model, cfg.vector("f")?, cfg.vector("g")?)?;
    let mut out = Outcome { summary: vec![format!("closure defect {:.3e}", t.closure_defect)], ..Default::default() };
    if t.closure_defect >= cfg.tolerances.closure_defect {
        out.tolerance_failures.push(format!(
            "closure defect {:.3e} exceeds {:.1e}",
            t.closure_defect, cfg.tolerances.closure_defect
        ));
    }
    let path = match cfg.format {
        Format::Json => {
            let value = serde_json::to_value(t).map_err(|e| Failure::Numerical(e.to_string()))?;
            table::write_json(dir, "transition", &value)?
        }
        Format::Csv => {
            let header = ["direct_re", "direct_im", "residual_sum_re", "residual_sum_im", "background_re", "background_im", "closure_defect"];
            let mut table = Table::new(header.map(String::from).to_vec());
            let mut row = complex_cells(t.direct).to_vec();
            row.extend(complex_cells(t.residual_sum));
            row.extend(complex_cells(t.background));
            row.push(num(t.closure_defect));
            table.push(row);
            table::write_csv(dir, "transition", "transition", &table)?
        }
    };
    out.files.push(path);
    Ok(out)
}

pub fn diagnose(cfg: &ExperimentConfig, dir: &Path) -> Result<Outcome, Failure> {
    let model = cfg.build_model()?;
    let report = run_all(&model);
    let header = ["suite", "name", "value", "tolerance", "passed", "note"];
    let mut table = Table::new(header.map(String::from).to_vec());
    for c in &report.checks {
        table.push(vec![
            c.suite.to_string(),
            csv_text(&c.name),
            num(c.value),
            num(c.tolerance),
            c.passed.to_string(),
            csv_text(c.note.as_deref().unwrap_or("")),
        ]);
    }
    let mut out = Outcome {
        summary: vec![format!("{} checks, {} failed", report.checks.len(), report.failures().count())],
        ..Default::default()
    };
    out.tolerance_failures.extend(report.failures().map(|c| format!("{}/{}: {:.3e}", c.suite, c.name, c.value)));
    emit(&mut out, dir, cfg, Command::Diagnose, &table)?;
    Ok(out)
}

/// Quotes a free-text cell.
fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
