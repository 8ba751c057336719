//! Built-in reference runs with expected values.

use std::fmt::Write as _;
use std::path::Path;

use gamov::gamov::expand;
use gamov::hardy::RationalVector;
use gamov::resonance::{cut_singularities, locate_poles, Region};
use gamov::smatrix::{friedrichs_line_roots, ScatteringModel, Side};
use gamov::C64;

use crate::commands::Outcome;
use crate::config::Target;
use crate::failure::Failure;
use crate::table::write_text;

struct Line {
    check: String,
    observed: String,
    expected: String,
    error: f64,
    tolerance: f64,
}

impl Line {
    fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

#[derive(Default)]
struct Report {
    title: String,
    lines: Vec<Line>,
    notes: Vec<String>,
}

impl Report {
    fn new(title: &str) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    fn complex(&mut self, check: &str, observed: Option<C64>, expected: C64, tolerance: f64) {
        let (obs, error) = match observed {
            Some(z) => (fmt_c(z), (z - expected).norm()),
            None => ("missing".into(), f64::INFINITY),
        };
        self.lines.push(Line { check: check.into(), observed: obs, expected: fmt_c(expected), error, tolerance });
    }

    fn count(&mut self, check: &str, observed: usize, expected: usize) {
        self.lines.push(Line {
            check: check.into(),
            observed: observed.to_string(),
            expected: expected.to_string(),
            error: observed.abs_diff(expected) as f64,
            tolerance: 0.0,
        });
    }

    fn below(&mut self, check: &str, observed: f64, bound: f64) {
        self.lines.push(Line {
            check: check.into(),
            observed: format!("{observed:.6e}"),
            expected: format!("< {bound:.1e}"),
            error: if observed < bound { 0.0 } else { observed },
            tolerance: 0.0,
        });
    }

    fn above(&mut self, check: &str, observed: f64, bound: f64) {
        self.lines.push(Line {
            check: check.into(),
            observed: format!("{observed:.6e}"),
            expected: format!("> {bound:.1e}"),
            error: if observed > bound { 0.0 } else { bound - observed },
            tolerance: 0.0,
        });
    }

    fn passed(&self) -> bool {
        self.lines.iter().all(Line::passed)
    }

    fn render(&self, name: &str) -> String {
        let mut s = String::new();
        writeln!(s, "reproduce {name}: {}", self.title).unwrap();
        writeln!(s, "status: {}", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        writeln!(s).unwrap();
        writeln!(s, "{:<40} {:<34} {:<34} {:>10} {:>9}  result", "check", "observed", "expected", "error", "tol").unwrap();
        for l in &self.lines {
            writeln!(
                s,
                "{:<40} {:<34} {:<34} {:>10.3e} {:>9.1e}  {}",
                l.check,
                l.observed,
                l.expected,
                l.error,
                l.tolerance,
                if l.passed() { "pass" } else { "FAIL" }
            )
            .unwrap();
        }
        if !self.notes.is_empty() {
            writeln!(s, "\nnotes:").unwrap();
            for n in &self.notes {
                writeln!(s, "- {n}").unwrap();
            }
        }
        s
    }
}

fn fmt_c(z: C64) -> String {
    format!("{:+.12} {:+.12}i", z.re, z.im)
}

fn nearest(found: &[C64], target: C64) -> Option<C64> {
    found.iter().copied().min_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()))
}

fn box3() -> Region {
    Region { re_min: -3.0, re_max: 3.0, im_min: -3.0, im_max: -0.01 }
}

fn one_dim() -> Result<Report, Failure> {
    let model = ScatteringModel::one_dim_perturbation();
    let mut r = Report::new("poles of the one-dimensional perturbation (z² − z + 1 − i)/(z² − z + 1 + i)");
    let lower = locate_poles(&model, &box3())?;
    let upper = locate_poles(&model, &box3().conjugate())?;
    r.count("lower half-plane poles in [-3,3]x[-3,0)", lower.len(), 1);
    r.complex("lower pole", nearest(&lower, C64::new(1.0, -1.0)), C64::new(1.0, -1.0), 1e-10);
    r.count("upper half-plane poles in [-3,3]x(0,3]", upper.len(), 1);
    r.complex("upper pole", nearest(&upper, C64::i()), C64::i(), 1e-10);
    r.notes.push(ScatteringModel::one_dim_pole_note());
    Ok(r)
}

fn friedrichs_line() -> Result<Report, Failure> {
    let model = ScatteringModel::friedrichs_line();
    let mut r = Report::new("poles of the Friedrichs model on the whole line");
    let [zp, zm] = friedrichs_line_roots();
    let lower = locate_poles(&model, &box3())?;
    let upper = locate_poles(&model, &box3().conjugate())?;
    r.count("lower half-plane poles in [-3,3]x[-3,0)", lower.len(), 2);
    r.complex("ζ+ = (1 − i)/2 + √(1 + i/2)", nearest(&lower, zp), zp, 1e-10);
    r.complex("ζ- = (1 − i)/2 − √(1 + i/2)", nearest(&lower, zm), zm, 1e-10);
    r.count("upper half-plane poles in [-3,3]x(0,3]", upper.len(), 1);
    r.complex("upper pole", nearest(&upper, C64::i()), C64::i(), 1e-10);
    r.complex("S(0)", Some(model.eval(C64::new(0.0, 0.0))?[(0, 0)]), C64::i(), 1e-12);
    Ok(r)
}

fn halfline() -> Result<Report, Failure> {
    let model = ScatteringModel::friedrichs_halfline_log()?;
    let mut r = Report::new("the half-line Friedrichs model with logarithmic coupling has an actual cut");
    for l in [-0.5, -1.0, -2.0] {
        let (_, jump) = model.has_actual_cut(&[l])?;
        r.above(&format!("|S(λ + i0) − S(λ − i0)| at λ = {l}"), jump, 1e-3);
    }
    let zeros = cut_singularities(&model)?;
    r.count("zeros of S₋ on the negative axis", zeros.len(), 1);
    if let Some(&lb) = zeros.first() {
        let value = model.axis_value(lb, Side::Lower)?[(0, 0)].norm();
        r.below(&format!("|S₋(λ)| at λ = {lb:.12}"), value, 1e-9);
    }
    for l in [1.0, 4.0] {
        let u = model.axis_value(l, Side::Lower)?[(0, 0)].norm();
        r.below(&format!("||S(λ)| − 1| at λ = {l}"), (u - 1.0).abs(), 1e-10);
    }
    r.notes.push("the continuation across (−∞, 0] differs from above and below; pole lists are not a complete description".into());
    Ok(r)
}

fn blaschke() -> Result<Report, Failure> {
    let zeta = C64::new(0.0, -1.0);
    let model = ScatteringModel::blaschke(&[zeta])?;
    let mut r = Report::new("Gamov expansion for the Blaschke factor S(z) = (z − i)/(z + i) with g = 1/(λ − i)");
    let g = RationalVector::scalar(C64::i(), 1, C64::new(1.0, 0.0))?;
    let e = expand(&model, &g)?;
    r.count("number of Gamov terms", e.pole_count, 1);
    r.complex("pole", e.terms.first().map(|t| t.0), zeta, 1e-12);
    r.complex("coefficient", e.terms.first().map(|t| t.1[0]), C64::new(1.0, 0.0), 1e-10);
    r.below("residual defect", e.residual_defect, 1e-10);
    for z in [C64::new(0.0, 1.0), C64::new(2.0, 0.5)] {
        r.complex(&format!("series at z = {}", fmt_c(z)), Some(e.eval(z)[0]), 1.0 / (z - zeta), 1e-12);
    }
    Ok(r)
}

pub fn run(target: Target, dir: &Path) -> Result<Outcome, Failure> {
    let report = match target {
        Target::Sec3_2 => one_dim()?,
        Target::Sec4_2 => friedrichs_line()?,
        Target::Sec4_3 => halfline()?,
        Target::Thm4Blaschke => blaschke()?,
    };
    let name = target.name();
    let path = write_text(dir, &format!("reproduce_{name}.txt"), &report.render(name))?;
    let mut out = Outcome { files: vec![path], ..Default::default() };
    out.summary.push(format!("{name}: {}", if report.passed() { "PASS" } else { "FAIL" }));
    out.tolerance_failures.extend(
        report.lines.iter().filter(|l| !l.passed()).map(|l| format!("{name}: {} observed {}", l.check, l.observed)),
    );
    Ok(out)
}
