//! Truncation to `H²₊ ∩ (SH²₊)^⊥ = H²₊ ∩ SH²₋` by alternating projections,
//! `s-lim (Q₊ S Q₋ S*)ⁿ`.
//!
//! Rational scalar models act exactly on rational vectors. Other models act on
//! grid samples: `S` on the positive axis, `S₋` on the negative axis, and
//! the pointwise adjoint of these samples as `S*`. On models without a cut
//! this is the unitary `S`; with a cut `S Q₋ S*` stays a positive
//! contraction whenever `‖S₋‖ ≤ 1`.

use super::{characteristic_apply, EvolutionState, Payload};
use crate::error::{Error, Result};
use crate::hardy::{GridFunction, RationalVector, DEFAULT_NODES};
use crate::smatrix::rational::ScalarRational;
use crate::smatrix::{ScatteringModel, Side};
use crate::{Mat, Vector};

/// A vector carried exactly or on the grid.
#[derive(Clone, Debug, PartialEq)]
pub enum Projected {
    Rational(RationalVector),
    Grid(GridFunction),
}

impl Projected {
    pub fn norm(&self) -> f64 {
        match self {
            Projected::Rational(f) => f.norm(),
            Projected::Grid(g) => g.norm(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (Projected::Rational(a), Projected::Rational(b)) => Projected::Rational(a.sub(b)),
            (Projected::Grid(a), Projected::Grid(b)) => Projected::Grid(a.sub(b)),
            _ => panic!("mixed representations"),
        }
    }

    pub fn into_state(self, time_elapsed: f64) -> EvolutionState {
        let payload = match self {
            Projected::Rational(f) => Payload::Rational(f),
            Projected::Grid(g) => Payload::Grid(g),
        };
        EvolutionState { payload, time_elapsed }
    }

    fn from_state(state: &EvolutionState) -> Self {
        match &state.payload {
            Payload::Rational(f) => Projected::Rational(f.clone()),
            Payload::Grid(g) => Projected::Grid(g.clone()),
        }
    }
}

#[derive(Clone, Debug)]
enum Action {
    Rational { s: ScalarRational, s_star: ScalarRational },
    Grid { s: Vec<Mat>, s_adj: Vec<Mat>, n: usize },
}

impl Action {
    fn new(model: &ScatteringModel, n: usize) -> Result<Self> {
        if let Some(s) = model.rational_structure() {
            let s_star = s.conjugate();
            return Ok(Action::Rational { s, s_star });
        }
        let nodes = GridFunction::sample(n, 1, |_| Vector::zeros(1)).nodes().to_vec();
        let mut s = Vec::with_capacity(n);
        let mut s_adj = Vec::with_capacity(n);
        for &l in &nodes {
            let m = model.axis_value(l, Side::Lower)?;
            s_adj.push(m.adjoint());
            s.push(m);
        }
        Ok(Action::Grid { s, s_adj, n })
    }

    fn lift(&self, f: &RationalVector) -> Projected {
        match self {
            Action::Rational { .. } => Projected::Rational(f.clone()),
            Action::Grid { n, .. } => Projected::Grid(GridFunction::from_rational(f, *n)),
        }
    }

    fn apply_grid(g: &GridFunction, mats: &[Mat]) -> GridFunction {
        let j = std::cell::Cell::new(0);
        g.map(|_, v| {
            let out = &mats[j.get()] * v;
            j.set(j.get() + 1);
            out
        })
    }

    /// `S Q₋ S*`.
    fn outgoing(&self, x: &Projected) -> Projected {
        match (self, x) {
            (Action::Rational { s, s_star }, Projected::Rational(f)) => {
                Projected::Rational(f.multiply(s_star).project_minus().multiply(s))
            }
            (Action::Grid { s, s_adj, .. }, Projected::Grid(g)) => {
                Projected::Grid(Self::apply_grid(&Self::apply_grid(g, s_adj).project_minus(), s))
            }
            _ => panic!("representation does not match the model action"),
        }
    }

    fn s_times(&self, x: &Projected) -> Projected {
        match (self, x) {
            (Action::Rational { s, .. }, Projected::Rational(f)) => Projected::Rational(f.multiply(s)),
            (Action::Grid { s, .. }, Projected::Grid(g)) => Projected::Grid(Self::apply_grid(g, s)),
            _ => panic!("representation does not match the model action"),
        }
    }
}

fn q_plus(x: &Projected) -> Projected {
    match x {
        Projected::Rational(f) => Projected::Rational(f.project_plus()),
        Projected::Grid(g) => Projected::Grid(g.project_plus()),
    }
}

fn inner(a: &Projected, b: &Projected) -> crate::C64 {
    match (a, b) {
        (Projected::Rational(x), Projected::Rational(y)) => x.inner(y),
        (Projected::Grid(x), Projected::Grid(y)) => x.inner(y),
        _ => panic!("mixed representations"),
    }
}

/// Cayley basis vector `u^n/(√π(λ + i))` times `k` as a rational vector;
/// `n ≥ 0` lies in `H²₊`, `n < 0` in `H²₋`.
pub(crate) fn cayley_rational(n: i64, k: &Vector) -> RationalVector {
    use crate::hardy::Term;
    use crate::smatrix::rational::binomial;
    use crate::c;
    let norm = std::f64::consts::PI.sqrt().recip();
    let (pole, shift, j) = if n >= 0 { (c(0.0, -1.0), c(0.0, -2.0), n as usize) } else { (c(0.0, 1.0), c(0.0, 2.0), (-n - 1) as usize) };
    let terms = (0..=j)
        .map(|s| Term { zeta: pole, order: j + 1 - s, k: k * (shift.powu((j - s) as u32) * binomial(j, s) * norm) })
        .collect();
    RationalVector::from_terms(k.len(), terms).expect("nonreal poles")
}

fn probe_direction(dim: usize) -> Vector {
    Vector::from_element(dim, crate::c((dim as f64).sqrt().recip(), 0.0))
}

/// Data for the truncated evolution of one model.
#[derive(Clone, Debug)]
pub struct TruncationContext {
    pub model: ScatteringModel,
    pub projector_iterations: usize,
    pub commuting: bool,
    pub commuting_defect: f64,
    action: Action,
}

/// Outcome of the alternating projection.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationResult {
    pub value: Projected,
    pub iterations: usize,
    pub converged: bool,
    /// `max_j |⟨result, S e_j⟩|` over the first eight Cayley basis vectors
    /// `e_j` of `H²₊`.
    pub orthogonality_defect: f64,
}

impl TruncationContext {
    pub fn new(model: ScatteringModel) -> Result<Self> {
        let action = Action::new(&model, DEFAULT_NODES)?;
        let mut ctx = TruncationContext { model, projector_iterations: 200, commuting: false, commuting_defect: 0.0, action };
        let defect = ctx.commuting_defect_probe();
        ctx.commuting = defect < 1e-8;
        ctx.commuting_defect = defect;
        Ok(ctx)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.action, Action::Rational { .. })
    }

    fn commuting_defect_probe(&self) -> f64 {
        let k = probe_direction(self.model.dim_k());
        let mut worst: f64 = 0.0;
        for n in [0, 1, 2, 3, -1, -2, -3, -4] {
            let f = self.action.lift(&cayley_rational(n, &k));
            let a = q_plus(&self.action.outgoing(&f));
            let b = self.action.outgoing(&q_plus(&f));
            worst = worst.max(a.sub(&b).norm());
        }
        worst
    }

    fn project(&self, start: Projected) -> TruncationResult {
        let scale = start.norm().max(1e-300);
        let mut x = start;
        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.projector_iterations {
            let next = q_plus(&self.action.outgoing(&x));
            iterations += 1;
            let step = next.sub(&x).norm();
            x = next;
            if step < 1e-8 * scale {
                converged = true;
                break;
            }
        }
        let k = probe_direction(self.model.dim_k());
        let mut defect: f64 = 0.0;
        for j in 0..8 {
            let probe = self.action.s_times(&self.action.lift(&cayley_rational(j, &k)));
            defect = defect.max(inner(&x, &probe).norm());
        }
        TruncationResult { value: x, iterations, converged, orthogonality_defect: defect }
    }
}

/// Whether `Q₊` commutes with `S Q₋ S*`, judged on eight probe vectors; the
/// second value is the largest observed `‖Q₊SQ₋S*f − SQ₋S*Q₊f‖`.
pub fn test_commuting(model: &ScatteringModel) -> Result<(bool, f64)> {
    let ctx = TruncationContext::new(model.clone())?;
    Ok((ctx.commuting, ctx.commuting_defect))
}

/// Projection of `f ∈ H²₊` onto `H²₊ ∩ (SH²₊)^⊥`.
pub fn truncated_project(ctx: &TruncationContext, f: &RationalVector) -> Result<TruncationResult> {
    if !f.in_hardy_plus() {
        return Err(Error::NotHardyPlus);
    }
    Ok(ctx.project(ctx.action.lift(f)))
}

/// Project, evolve by `T₊(t)`, project again.
pub fn truncated_apply(ctx: &TruncationContext, f: &RationalVector, t: f64) -> Result<EvolutionState> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let first = truncated_project(ctx, f)?;
    let evolved = characteristic_apply(&first.value.into_state(0.0), t)?;
    Ok(ctx.project(Projected::from_state(&evolved)).value.into_state(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn cayley_vectors_are_orthonormal() {
        let k = Vector::from_element(1, c(1.0, 0.0));
        let basis: Vec<_> = (-3..4).map(|n| cayley_rational(n, &k)).collect();
        for (a, fa) in basis.iter().enumerate() {
            for (b, fb) in basis.iter().enumerate() {
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((fa.inner(fb) - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_commutes() {
        let (ok, defect) = test_commuting(&ScatteringModel::identity()).unwrap();
        assert!(ok && defect == 0.0);
    }

    #[test]
    fn blaschke_survivor_is_fixed() {
        let ctx = TruncationContext::new(ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap()).unwrap();
        assert!(ctx.commuting);
        let f = RationalVector::scalar(c(0.0, -1.0), 1, c(1.0, 0.0)).unwrap();
        let r = truncated_project(&ctx, &f).unwrap();
        assert!(r.converged);
        match r.value {
            Projected::Rational(p) => assert!(p.sub(&f).norm() < 1e-12),
            Projected::Grid(_) => panic!("rational model"),
        }
    }
}
