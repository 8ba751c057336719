//! Poles of `S` and `S⁻¹`, Laurent data of `S⁻¹` and the survival test for
//! Gamov vectors under truncation.
//!
//! `f_{ζ,k}(z) = k/(z − ζ)` survives the truncation when `S*f_{ζ,k}`, which
//! continues to `S(z)⁻¹k/(z − ζ)`, is holomorphic in the lower half plane.
//! With the Laurent expansion `S(z)⁻¹ = Σ_{n ≥ −m} (z − ζ)ⁿ A_n` this asks
//! `A_n k = 0` for `n = −m, …, 0` at `ζ` and `A_n k = 0` for `n < 0` at
//! every other pole of `S⁻¹` in the lower half plane.
//!
//! ```
//! use gamov::resonance::{locate_poles, Region};
//! use gamov::smatrix::{friedrichs_line_roots, ScatteringModel};
//!
//! let model = ScatteringModel::friedrichs_line();
//! let poles = locate_poles(&model, &Region::new(-3.0, 3.0, -3.0, -0.01).unwrap()).unwrap();
//! let [zp, zm] = friedrichs_line_roots();
//! assert_eq!(poles.len(), 2);
//! assert!(poles.iter().any(|p| (p - zp).norm() < 1e-10));
//! assert!(poles.iter().any(|p| (p - zm).norm() < 1e-10));
//! ```

mod contour;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::GridFunction;
use crate::smatrix::{ScatteringModel, Side};
use crate::{c, mat_norm, Mat, Vector, C64};
use contour::{circle_coefficients, circle_path, rectangle_path, winding};

/// Closed rectangle `[re_min, re_max] × [im_min, im_max]` inside one open
/// half plane, at least `1e-3` away from the real axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

const AXIS_MARGIN: f64 = 1e-3;

impl Region {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let r = Region { re_min, re_max, im_min, im_max };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if !finite || self.re_min >= self.re_max || self.im_min >= self.im_max {
            return Err(Error::InvalidModel(format!("degenerate region {self:?}")));
        }
        if self.im_max > -AXIS_MARGIN && self.im_min < AXIS_MARGIN {
            return Err(Error::InvalidModel(format!("region {self:?} must stay {AXIS_MARGIN} away from the real axis")));
        }
        Ok(())
    }

    pub fn contains(&self, z: C64) -> bool {
        (self.re_min..=self.re_max).contains(&z.re) && (self.im_min..=self.im_max).contains(&z.im)
    }

    /// Mirror image under `z ↦ z̄`.
    pub fn conjugate(&self) -> Self {
        Region { re_min: self.re_min, re_max: self.re_max, im_min: -self.im_max, im_max: -self.im_min }
    }

    fn shrunk(&self, fraction: f64) -> Self {
        let dx = fraction * (self.re_max - self.re_min);
        let dy = fraction * (self.im_max - self.im_min);
        Region { re_min: self.re_min + dx, re_max: self.re_max - dx, im_min: self.im_min + dy, im_max: self.im_max - dy }
    }

    fn seeds(&self, n: usize) -> impl Iterator<Item = C64> + '_ {
        (0..n * n).map(move |j| {
            let (a, b) = ((j % n) as f64 + 0.5, (j / n) as f64 + 0.5);
            c(
                self.re_min + a / n as f64 * (self.re_max - self.re_min),
                self.im_min + b / n as f64 * (self.im_max - self.im_min),
            )
        })
    }
}

/// How `ζ` relates to the poles of `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleClass {
    /// `ζ` is a pole of `S` and `ζ̄` is not.
    PoleOfS,
    /// `ζ̄` is a pole of `S`, that is `ζ` is a pole of `S⁻¹`.
    PoleOfSInverseConjugate,
    Both,
    /// Neither; no Gamov vector at `ζ` can survive.
    Regular,
}

impl PoleClass {
    pub fn name(self) -> &'static str {
        match self {
            PoleClass::PoleOfS => "pole_of_S",
            PoleClass::PoleOfSInverseConjugate => "pole_of_S_inverse_conjugate",
            PoleClass::Both => "both",
            PoleClass::Regular => "regular",
        }
    }
}

/// Laurent and survival data at a point of the lower half plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleRecord {
    pub zeta: C64,
    /// Order of `ζ` as a pole of `S⁻¹`; `0` when `S⁻¹` is holomorphic there.
    pub order: usize,
    /// `A_n` for `n = −order, …, 0`.
    pub laurent: BTreeMap<i64, Mat>,
    /// Residue of `S` at `ζ`; the `(z − ζ)⁻¹` coefficient when the pole of
    /// `S` is not simple.
    pub residue_s: Mat,
    /// Order of `ζ` as a pole of `S`.
    pub s_order: usize,
    /// Orthonormal basis of `{k : A_n k = 0, n = −order, …, 0}`.
    pub local_kernel: Vec<Vector>,
    /// Orthonormal basis of the `k` for which `S(z)⁻¹k/(z − ζ)` is
    /// holomorphic in the whole lower half plane.
    pub survival_kernel: Vec<Vector>,
    pub classification: PoleClass,
    /// Points `λ < 0` where `S(λ − i0)` is singular; there `S(z)⁻¹` blows up
    /// as `z` approaches the cut from below.
    pub cut_zeros: Vec<f64>,
    /// Singular values that fell close to the null-space threshold.
    pub warnings: Vec<String>,
}

/// Full Laurent data from a circle quadrature.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentData {
    pub radius: f64,
    pub order: usize,
    pub coefficients: BTreeMap<i64, Mat>,
    /// Largest `‖S⁻¹‖` on the contour.
    pub sup: f64,
}

const NULL_THRESHOLD: f64 = 1e-10;
const ORDER_THRESHOLD: f64 = 1e-10;
const MAX_ORDER: i64 = 8;

/// Poles of `S` the model knows about in closed form.
fn known_poles(model: &ScatteringModel) -> Vec<C64> {
    let mut out: Vec<C64> = model.declared_poles().to_vec();
    if let Some(r) = model.rational_structure() {
        out.extend(r.poles());
    }
    out.extend(model.extra_pole_candidates());
    out
}

fn distance_to_cut(model: &ScatteringModel, z: C64) -> f64 {
    if !model.has_cut() {
        f64::INFINITY
    } else if z.re >= 0.0 {
        z.norm().min(z.im.abs())
    } else {
        z.im.abs()
    }
}

fn contour_radius(model: &ScatteringModel, zeta: C64, singularities: &[C64]) -> f64 {
    let nearest = singularities
        .iter()
        .map(|s| (s - zeta).norm())
        .filter(|&d| d > 1e-8 * (1.0 + zeta.norm()))
        .fold(f64::INFINITY, f64::min);
    (0.5 * nearest).min(0.1 * (1.0 + zeta.norm())).min(0.999 * distance_to_cut(model, zeta))
}

fn inverse_singularities(model: &ScatteringModel) -> Vec<C64> {
    let mut out: Vec<C64> = known_poles(model).iter().map(|p| p.conj()).collect();
    out.extend(model.pole_function_singularities());
    out
}

fn evaluate_near_pole(model: &ScatteringModel, z: C64, inverse: bool) -> Result<Mat> {
    if inverse {
        model.eval_inverse(z)
    } else {
        model.eval(z)
    }
}

/// `A_n` of `S(z)⁻¹ = Σ (z − ζ)ⁿ A_n` for `n = n_min, …, n_max`, with the
/// order of the pole read from the data. Coefficients are cross-checked on
/// a circle of half the radius to detect singularities inside the contour.
pub fn laurent_expansion(model: &ScatteringModel, zeta: C64, n_min: i64, n_max: i64) -> Result<LaurentData> {
    expansion(model, zeta, n_min, n_max, true)
}

fn expansion(model: &ScatteringModel, zeta: C64, n_min: i64, n_max: i64, inverse: bool) -> Result<LaurentData> {
    if n_min > n_max {
        return Err(Error::InvalidModel(format!("empty Laurent range {n_min}..={n_max}")));
    }
    let singular = if inverse { inverse_singularities(model) } else { known_poles(model) };
    let r = contour_radius(model, zeta, &singular);
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::ContourContamination(zeta));
    }
    let low = n_min.min(-MAX_ORDER);
    let ns: Vec<i64> = (low..=n_max.max(0)).collect();
    let f = |z: C64| evaluate_near_pole(model, z, inverse);
    let (outer, sup) = circle_coefficients(&f, zeta, r, &ns)?;
    let (inner, inner_sup) = circle_coefficients(&f, zeta, 0.5 * r, &ns)?;
    for ((a, b), &n) in outer.iter().zip(&inner).zip(&ns) {
        if n > 0 {
            continue;
        }
        let scale = sup * r.powi(n as i32) + inner_sup * (0.5 * r).powi(n as i32);
        if mat_norm(&(a - b)) > 1e-7 * scale.max(1e-300) {
            return Err(Error::ContourContamination(zeta));
        }
    }
    let order = ns
        .iter()
        .zip(&outer)
        .filter(|(&n, a)| n < 0 && mat_norm(a) > ORDER_THRESHOLD * sup * r.powi(n as i32))
        .map(|(&n, _)| (-n) as usize)
        .max()
        .unwrap_or(0);
    let coefficients = ns.iter().zip(outer).filter(|(&n, _)| n >= n_min && n <= n_max).map(|(&n, a)| (n, a)).collect();
    Ok(LaurentData { radius: r, order, coefficients, sup })
}

/// `A_n` for `n = n_min, …, 0`.
pub fn laurent_coefficients(model: &ScatteringModel, zeta: C64, n_min: i64) -> Result<BTreeMap<i64, Mat>> {
    if n_min > 0 {
        return Err(Error::InvalidModel(format!("n_min must be ≤ 0, got {n_min}")));
    }
    Ok(laurent_expansion(model, zeta, n_min, 0)?.coefficients)
}

/// Residue of `S` at a simple pole `ζ`; zero at regular points.
#[allow(non_snake_case)]
pub fn residue_of_S(model: &ScatteringModel, zeta: C64) -> Result<Mat> {
    let data = expansion(model, zeta, -MAX_ORDER, -1, false)?;
    if data.order > 1 {
        let principal_part = (1..=data.order as i64).map(|j| data.coefficients[&-j].clone()).collect();
        return Err(Error::HigherOrderPole { zeta, order: data.order, principal_part });
    }
    Ok(data.coefficients[&-1].clone())
}

fn pole_function_winding(model: &ScatteringModel, region: &Region) -> Result<i64> {
    let f = |z: C64| model.pole_function(z);
    let path = rectangle_path(region.re_min, region.re_max, region.im_min, region.im_max, 32);
    let mut count = winding(&f, &path)?;
    for s in model.pole_function_singularities() {
        if region.contains(s) {
            let rho = 1e-4 * (1.0 + s.norm());
            count -= winding(&f, &circle_path(s, rho, 32))?;
        }
    }
    Ok(count)
}

fn newton(model: &ScatteringModel, seed: C64) -> Option<C64> {
    let mut z = seed;
    for _ in 0..200 {
        let h = 1e-6 * (1.0 + z.norm());
        let fz = model.pole_function(z).ok()?;
        let df = (model.pole_function(z + h).ok()? - model.pole_function(z - h).ok()?) / (2.0 * h);
        if !df.is_finite() || df == c(0.0, 0.0) {
            return None;
        }
        let dz = fz / df;
        z -= dz;
        if !z.is_finite() || z.im.abs() < 0.5 * AXIS_MARGIN {
            return None;
        }
        if dz.norm() < 1e-12 * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

fn multiplicity(model: &ScatteringModel, z: C64, others: &[C64]) -> Result<i64> {
    let gap = others.iter().map(|o| (o - z).norm()).filter(|&d| d > 0.0).fold(f64::INFINITY, f64::min);
    let rho = (1e-2 * (1.0 + z.norm())).min(0.4 * gap).min(0.5 * z.im.abs());
    let f = |w: C64| model.pole_function(w);
    winding(&f, &circle_path(z, rho, 32))
}

/// `‖S‖` grows towards `z` like an inverse power.
fn grows_at(model: &ScatteringModel, z: C64) -> bool {
    let probe = |rho: f64| -> Option<f64> {
        let w = c(0.6, 0.8);
        Some((0..4).map(|j| model.eval(z + w * c(0.0, j as f64 * 1.5).exp() * rho)).collect::<Result<Vec<_>>>().ok()?.iter().map(mat_norm).fold(0.0, f64::max))
    };
    let scale = 1e-3 * (1.0 + z.norm());
    match (probe(scale), probe(1e-2 * scale)) {
        (Some(far), Some(near)) => near > 10.0 * far,
        _ => false,
    }
}

fn dedup(points: &mut Vec<C64>) {
    let mut out: Vec<C64> = Vec::new();
    for &p in points.iter() {
        if !out.iter().any(|q| (p - q).norm() < 1e-8 * (1.0 + p.norm())) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    *points = out;
}

fn refine_in(model: &ScatteringModel, region: &Region, expected: i64) -> Result<Vec<C64>> {
    let slack = |z: C64| region.contains(z);
    let mut found: Vec<C64> = Vec::new();
    for n in [8, 16, 32] {
        let hints = model.declared_poles().iter().copied().chain(known_poles(model)).filter(|&p| slack(p));
        let seeds: Vec<C64> = hints.chain(region.seeds(n)).collect();
        found.extend(seeds.into_iter().filter_map(|s| newton(model, s)).filter(|&z| slack(z)));
        dedup(&mut found);
        let total: i64 = found.iter().map(|&z| multiplicity(model, z, &found)).sum::<Result<i64>>()?;
        if total == expected {
            return Ok(found);
        }
        if total > expected {
            return Err(Error::CountMismatch { counted: expected, found: total as usize });
        }
    }
    Err(Error::CountMismatch { counted: expected, found: found.len() })
}

/// Poles of `S` in `region`.
///
/// The argument principle applied to the model's pole function counts the
/// candidates, Newton's method from seed grids and declared poles finds them,
/// and each candidate is kept only when `‖S‖` blows up there. Singularities
/// of the coupling are checked directly.
pub fn locate_poles(model: &ScatteringModel, region: &Region) -> Result<Vec<C64>> {
    region.validate()?;
    let mut last = Error::ContourThroughPole(c(region.re_min, region.im_min));
    for attempt in 0..4 {
        let r = if attempt == 0 { *region } else { region.shrunk(1e-7 * attempt as f64) };
        let expected = match pole_function_winding(model, &r) {
            Ok(n) => n,
            Err(e @ Error::ContourThroughPole(_)) => {
                last = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        let zeros = refine_in(model, &r, expected)?;
        let mut poles: Vec<C64> = zeros.into_iter().filter(|&z| grows_at(model, z)).collect();
        poles.extend(model.extra_pole_candidates().into_iter().filter(|&z| r.contains(z) && grows_at(model, z)));
        dedup(&mut poles);
        return Ok(poles);
    }
    Err(last)
}

/// Poles of `S⁻¹` in `region`, the conjugates of the poles of `S` in the
/// mirrored region.
pub fn locate_inverse_poles(model: &ScatteringModel, region: &Region) -> Result<Vec<C64>> {
    let mut poles: Vec<C64> = locate_poles(model, &region.conjugate())?.into_iter().map(|p| p.conj()).collect();
    dedup(&mut poles);
    Ok(poles)
}

struct Kernel {
    basis: Vec<Vector>,
    warnings: Vec<String>,
}

fn null_space(rows: &[&Mat], dim: usize, scale: f64, label: &str) -> Kernel {
    if rows.is_empty() {
        return Kernel { basis: (0..dim).map(|j| Vector::from_fn(dim, |i, _| c(if i == j { 1.0 } else { 0.0 }, 0.0))).collect(), warnings: Vec::new() };
    }
    let total: usize = rows.iter().map(|m| m.nrows()).sum();
    let mut stacked = Mat::zeros(total.max(dim), dim);
    let mut at = 0;
    for m in rows {
        stacked.view_mut((at, 0), (m.nrows(), dim)).copy_from(*m);
        at += m.nrows();
    }
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sv = &svd.singular_values;
    let top = sv.max().max(scale);
    let mut basis = Vec::new();
    let mut warnings = Vec::new();
    for j in 0..dim {
        let s = if j < sv.len() { sv[j] } else { 0.0 };
        if s <= NULL_THRESHOLD * top {
            basis.push(v_t.row(j).adjoint());
        } else if s <= 1e3 * NULL_THRESHOLD * top {
            warnings.push(format!("{label}: singular value {s:.3e} close to the null-space threshold"));
        }
    }
    Kernel { basis, warnings }
}

/// Laurent data of `S⁻¹` at `ζ ∈ ℂ₋` and the Gamov vectors `f_{ζ,k}` that
/// survive the truncation.
pub fn survival_test(model: &ScatteringModel, zeta: C64) -> Result<PoleRecord> {
    if zeta.im >= 0.0 {
        return Err(Error::InvalidModel(format!("survival needs Im ζ < 0, got {zeta}")));
    }
    let dim = model.dim_k();
    let data = laurent_expansion(model, zeta, -MAX_ORDER, 0)?;
    let order = data.order;
    let laurent_sup = data.sup;
    let laurent: BTreeMap<i64, Mat> = data.coefficients.into_iter().filter(|(n, _)| *n >= -(order as i64)).collect();
    let (residue_s, s_order) = match residue_of_S(model, zeta) {
        Ok(r) => {
            let simple = mat_norm(&r) > ORDER_THRESHOLD * (1.0 + mat_norm(&r)) && grows_at(model, zeta);
            (r, usize::from(simple))
        }
        Err(Error::HigherOrderPole { order, principal_part, .. }) => (principal_part[0].clone(), order),
        Err(e) => return Err(e),
    };

    let local_rows: Vec<&Mat> = laurent.values().collect();
    let local = null_space(&local_rows, dim, laurent_sup, "local");

    let mut others: Vec<LaurentData> = Vec::new();
    for w in inverse_singularities(model) {
        if w.im < 0.0 && (w - zeta).norm() > 1e-8 * (1.0 + zeta.norm()) {
            let d = laurent_expansion(model, w, -MAX_ORDER, -1)?;
            if d.order > 0 {
                others.push(d);
            }
        }
    }
    let mut global_rows = local_rows.clone();
    for d in &others {
        global_rows.extend(d.coefficients.iter().filter(|(n, _)| **n >= -(d.order as i64)).map(|(_, a)| a));
    }
    let scale = others.iter().map(|d| d.sup).fold(laurent_sup, f64::max);
    let cut_zeros = cut_singularities(model)?;
    let mut cokernels: Vec<Mat> = Vec::new();
    for &l in &cut_zeros {
        let s_minus = model.boundary_value(l, Side::Lower)?;
        let svd = s_minus.svd(true, false);
        let u = svd.u.expect("requested");
        let top = svd.singular_values.max().max(1.0);
        for j in 0..svd.singular_values.len() {
            if svd.singular_values[j] <= CUT_THRESHOLD * top {
                cokernels.push(Mat::from_fn(1, dim, |_, i| u[(i, j)].conj() * scale.max(1.0)));
            }
        }
    }
    global_rows.extend(cokernels.iter());
    let global = null_space(&global_rows, dim, scale, "global");

    let classification = match (s_order > 0, order > 0) {
        (true, true) => PoleClass::Both,
        (true, false) => PoleClass::PoleOfS,
        (false, true) => PoleClass::PoleOfSInverseConjugate,
        (false, false) => PoleClass::Regular,
    };
    let mut warnings = local.warnings;
    warnings.extend(global.warnings);
    Ok(PoleRecord {
        zeta,
        order,
        laurent,
        residue_s,
        s_order,
        local_kernel: local.basis,
        survival_kernel: global.basis,
        classification,
        cut_zeros,
        warnings,
    })
}

const CUT_THRESHOLD: f64 = 1e-8;

fn smallest_sv(model: &ScatteringModel, log_abs: f64) -> Result<f64> {
    Ok(model.boundary_value(-(10f64.powf(log_abs)), Side::Lower)?.svd(false, false).singular_values.min())
}

/// Points `λ < 0` where `S(λ − i0)` is singular, found by scanning the
/// smallest singular value over `|λ| ∈ [1e-8, 1e8]` on a logarithmic grid
/// and refining each local minimum by golden-section search. Empty for
/// models without a cut.
pub fn cut_singularities(model: &ScatteringModel) -> Result<Vec<f64>> {
    if !model.has_cut() {
        return Ok(Vec::new());
    }
    let steps = 800;
    let xs: Vec<f64> = (0..=steps).map(|j| -8.0 + 16.0 * j as f64 / steps as f64).collect();
    let vals = xs.iter().map(|&x| smallest_sv(model, x)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for j in 1..steps {
        if !(vals[j] <= vals[j - 1] && vals[j] <= vals[j + 1]) {
            continue;
        }
        let (mut a, mut b) = (xs[j - 1], xs[j + 1]);
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - ratio * (b - a);
        let mut x2 = a + ratio * (b - a);
        let mut f1 = smallest_sv(model, x1)?;
        let mut f2 = smallest_sv(model, x2)?;
        while b - a > 1e-14 {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - ratio * (b - a);
                f1 = smallest_sv(model, x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + ratio * (b - a);
                f2 = smallest_sv(model, x2)?;
            }
        }
        let x = 0.5 * (a + b);
        if smallest_sv(model, x)? < 1e-6 {
            out.push(-(10f64.powf(x)));
        }
    }
    Ok(out)
}

/// `‖Q₊(S*f_{ζ,k})‖/‖f_{ζ,k}‖` by grid quadrature; small values mean
/// `S*f_{ζ,k} ∈ H²₋`. On a cut the boundary value from below of
/// `S(z)⁻¹ = S(z̄)*` is `S(λ + i0)*`.
pub fn hardy_minus_defect(model: &ScatteringModel, zeta: C64, k: &Vector, nodes: usize) -> Result<f64> {
    let g = GridFunction::try_sample(nodes, model.dim_k(), |l| {
        Ok(model.axis_value(l, Side::Upper)?.adjoint() * k / (c(l, 0.0) - zeta))
    })?;
    let f_norm = k.norm() * (std::f64::consts::PI / -zeta.im).sqrt();
    Ok(g.project_plus().norm() / f_norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_validation() {
        assert!(Region::new(-1.0, 1.0, -1.0, 0.0).is_err());
        assert!(Region::new(1.0, -1.0, -1.0, -0.5).is_err());
        assert!(Region::new(-1.0, 1.0, 0.5, 1.0).is_ok());
    }

    #[test]
    fn blaschke_laurent_data() {
        let m = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
        let d = laurent_expansion(&m, c(0.0, -1.0), -2, 1).unwrap();
        assert_eq!(d.order, 0);
        assert!(d.coefficients[&0].norm() < 1e-12);
        assert!((d.coefficients[&1][(0, 0)] - c(0.0, 0.5)).norm() < 1e-10);
        let res = residue_of_S(&m, c(0.0, -1.0)).unwrap();
        assert!((res[(0, 0)] - c(0.0, -2.0)).norm() < 1e-10);
    }

    #[test]
    fn double_pole_is_reported() {
        let m = ScatteringModel::blaschke(&[c(0.0, -1.0), c(0.0, -1.0)]).unwrap();
        match residue_of_S(&m, c(0.0, -1.0)) {
            Err(Error::HigherOrderPole { order, principal_part, .. }) => {
                assert_eq!(order, 2);
                // (z − i)²/(z + i)² = 1 − 4i/(z + i) − 4/(z + i)²
                assert!((principal_part[0][(0, 0)] - c(0.0, -4.0)).norm() < 1e-9);
                assert!((principal_part[1][(0, 0)] + 4.0).norm() < 1e-9);
            }
            other => panic!("expected a double pole, got {other:?}"),
        }
    }
}
