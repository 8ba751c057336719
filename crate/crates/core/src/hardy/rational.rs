//! Finite sums `Σ k/(λ − ζ)^m` with nonreal `ζ`, closed under products with
//! rational scattering matrices, with exact `L²` pairings from residues.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::Domain;
use crate::smatrix::descriptor::{from_complex, to_complex, ComplexJson};
use crate::smatrix::rational::{binomial, neg_binomial, ScalarRational};
use crate::{c, Vector, C64};

/// One term `k/(λ − ζ)^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub zeta: C64,
    pub order: usize,
    pub k: Vector,
}

/// An exact element `Σ_j k_j/(λ − ζ_j)^{m_j}` of `L²(ℝ, 𝒦)`.
///
/// Poles in the lower half plane make the vector an element of `H²₊`, poles
/// in the upper half plane an element of `H²₋`.
///
/// ```
/// use gamov::hardy::RationalVector;
/// use num_complex::Complex64;
///
/// let f = RationalVector::scalar(Complex64::new(0.0, -1.0), 1, Complex64::new(1.0, 0.0)).unwrap();
/// assert!((f.norm_squared() - std::f64::consts::PI).abs() < 1e-14);
/// assert!(f.in_hardy_plus());
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct RationalVector {
    dim_k: usize,
    terms: Vec<Term>,
}

fn same_point(a: C64, b: C64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm())
}

/// `1/((λ − a)^m (λ − b)^n)` as `Σ coeff/(λ − p)^k`, for `a ≠ b`.
pub(crate) fn split_pair(a: C64, m: usize, b: C64, n: usize) -> Vec<(C64, usize, C64)> {
    let mut out = Vec::with_capacity(m + n);
    for j in 0..m {
        out.push((a, m - j, neg_binomial(n, j) * (a - b).powi(-((n + j) as i32))));
    }
    for j in 0..n {
        out.push((b, n - j, neg_binomial(m, j) * (b - a).powi(-((m + j) as i32))));
    }
    out
}

/// `∫_ℝ dλ/((λ − a)^m (λ − b)^n)` for nonreal `a, b` and `m + n ≥ 2`.
pub(crate) fn line_integral(a: C64, m: usize, b: C64, n: usize) -> C64 {
    if (a.im > 0.0) == (b.im > 0.0) {
        return c(0.0, 0.0);
    }
    let two_pi_i = c(0.0, 2.0 * PI);
    let p = (m + n - 1) as i32;
    if b.im > 0.0 {
        let sign = if (n - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        two_pi_i * sign * binomial(m + n - 2, n - 1) * (b - a).powi(-p)
    } else {
        let sign = if (m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        two_pi_i * sign * binomial(m + n - 2, m - 1) * (a - b).powi(-p)
    }
}

/// `∫ Σ coeff/(λ − p)^k dλ` over a half line; the simple-pole coefficients
/// must sum to zero.
fn halfline_sum(parts: &[(C64, usize, C64)], domain: Domain) -> C64 {
    let mut total = c(0.0, 0.0);
    for &(p, k, coeff) in parts {
        let minus_p = -p;
        if k == 1 {
            match domain {
                Domain::Positive => total -= coeff * minus_p.ln(),
                Domain::Negative => {
                    let sign = if p.im < 0.0 { 1.0 } else { -1.0 };
                    total += coeff * (minus_p.ln() - c(0.0, PI * sign));
                }
                Domain::Line => unreachable!("full line handled by residues"),
            }
        } else {
            let v = minus_p.powi(1 - k as i32) / (k as f64 - 1.0);
            match domain {
                Domain::Positive => total += coeff * v,
                Domain::Negative => total -= coeff * v,
                Domain::Line => unreachable!("full line handled by residues"),
            }
        }
    }
    total
}

/// `∫_domain dλ/((λ − a)^m (λ − b)^n)` in closed form.
pub(crate) fn domain_integral(a: C64, m: usize, b: C64, n: usize, domain: Domain) -> C64 {
    match domain {
        Domain::Line => line_integral(a, m, b, n),
        _ => {
            if same_point(a, b) {
                halfline_sum(&[(a, m + n, c(1.0, 0.0))], domain)
            } else {
                halfline_sum(&split_pair(a, m, b, n), domain)
            }
        }
    }
}

impl RationalVector {
    pub fn zero(dim_k: usize) -> Self {
        RationalVector { dim_k, terms: Vec::new() }
    }

    pub fn from_terms(dim_k: usize, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            if t.zeta.im == 0.0 || !t.zeta.is_finite() {
                return Err(Error::RealPole(t.zeta));
            }
            if t.order == 0 {
                return Err(Error::InvalidModel("term order must be positive".into()));
            }
            if t.k.len() != dim_k {
                return Err(Error::DimensionMismatch { expected: dim_k, got: t.k.len() });
            }
        }
        let mut v = RationalVector { dim_k, terms };
        v.normalize();
        Ok(v)
    }

    /// The Gamov vector `k/(λ − ζ)`.
    pub fn simple(zeta: C64, k: Vector) -> Result<Self> {
        let dim = k.len();
        Self::from_terms(dim, vec![Term { zeta, order: 1, k }])
    }

    /// `coeff/(λ − ζ)^order` on a one-dimensional multiplicity space.
    pub fn scalar(zeta: C64, order: usize, coeff: C64) -> Result<Self> {
        Self::from_terms(1, vec![Term { zeta, order, k: Vector::from_element(1, coeff) }])
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merges terms with the same pole and order and drops vanishing ones.
    fn normalize(&mut self) {
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.iter_mut().find(|m| m.order == t.order && same_point(m.zeta, t.zeta)) {
                Some(m) => m.k += t.k,
                None => merged.push(t),
            }
        }
        let scale = merged.iter().map(|t| t.k.norm()).fold(0.0, f64::max);
        merged.retain(|t| t.k.norm() > 1e-14 * scale && t.k.norm() > 0.0);
        merged.sort_by(|a, b| {
            (a.zeta.re, a.zeta.im, a.order).partial_cmp(&(b.zeta.re, b.zeta.im, b.order)).unwrap()
        });
        self.terms = merged;
    }

    pub fn eval(&self, z: C64) -> Vector {
        let mut out = Vector::zeros(self.dim_k);
        for t in &self.terms {
            out += &t.k * (z - t.zeta).powi(-(t.order as i32));
        }
        out
    }

    pub fn in_hardy_plus(&self) -> bool {
        self.terms.iter().all(|t| t.zeta.im < 0.0)
    }

    pub fn in_hardy_minus(&self) -> bool {
        self.terms.iter().all(|t| t.zeta.im > 0.0)
    }

    fn filtered(&self, keep: impl Fn(&Term) -> bool) -> Self {
        RationalVector { dim_k: self.dim_k, terms: self.terms.iter().filter(|t| keep(t)).cloned().collect() }
    }

    /// `Q₊f`: the terms with poles in the lower half plane.
    pub fn project_plus(&self) -> Self {
        self.filtered(|t| t.zeta.im < 0.0)
    }

    /// `Q₋f`: the terms with poles in the upper half plane.
    pub fn project_minus(&self) -> Self {
        self.filtered(|t| t.zeta.im > 0.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim_k, other.dim_k, "dimension mismatch");
        let mut v = RationalVector { dim_k: self.dim_k, terms: self.terms.iter().chain(&other.terms).cloned().collect() };
        v.normalize();
        v
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    pub fn scale(&self, a: C64) -> Self {
        let mut v = RationalVector {
            dim_k: self.dim_k,
            terms: self.terms.iter().map(|t| Term { k: &t.k * a, ..t.clone() }).collect(),
        };
        v.normalize();
        v
    }

    /// `∫_domain ⟨f(λ), g(λ)⟩ dλ`, antilinear in `self`.
    pub fn inner_on(&self, other: &Self, domain: Domain) -> C64 {
        let mut total = c(0.0, 0.0);
        for s in &self.terms {
            for t in &other.terms {
                let kk = s.k.dotc(&t.k);
                if kk == c(0.0, 0.0) {
                    continue;
                }
                total += kk * domain_integral(s.zeta.conj(), s.order, t.zeta, t.order, domain);
            }
        }
        total
    }

    /// `⟨f, g⟩` on `L²(ℝ, 𝒦)`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.inner_on(other, Domain::Line)
    }

    pub fn norm_squared(&self) -> f64 {
        self.inner(self).re.max(0.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// `‖χ f‖²` for the indicator of a half line.
    pub fn halfline_norm_squared(&self, domain: Domain) -> f64 {
        self.inner_on(self, domain).re.max(0.0)
    }

    /// The product `s(λ)f(λ)` with a scalar rational function bounded at
    /// infinity.
    pub fn multiply(&self, s: &ScalarRational) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            if s.constant != c(0.0, 0.0) {
                terms.push(Term { k: &t.k * s.constant, ..t.clone() });
            }
            for part in &s.parts {
                for (q0, &r) in part.coeffs.iter().enumerate() {
                    let q = q0 + 1;
                    if r == c(0.0, 0.0) {
                        continue;
                    }
                    if same_point(part.pole, t.zeta) {
                        terms.push(Term { zeta: t.zeta, order: q + t.order, k: &t.k * r });
                    } else {
                        for (p, order, coeff) in split_pair(part.pole, q, t.zeta, t.order) {
                            terms.push(Term { zeta: p, order, k: &t.k * (r * coeff) });
                        }
                    }
                }
            }
        }
        let mut v = RationalVector { dim_k: self.dim_k, terms };
        v.normalize();
        v
    }

    /// The largest pole order among the terms.
    pub fn max_order(&self) -> usize {
        self.terms.iter().map(|t| t.order).max().unwrap_or(0)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    zeta: ComplexJson,
    order: usize,
    k: Vec<ComplexJson>,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    #[serde(rename = "dim_K", default, skip_serializing_if = "Option::is_none")]
    dim_k: Option<usize>,
    terms: Vec<TermJson>,
}

impl Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorJson {
            dim_k: Some(self.dim_k),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson { zeta: from_complex(t.zeta), order: t.order, k: t.k.iter().map(|&x| from_complex(x)).collect() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = VectorJson::deserialize(deserializer)?;
        let dim = json.dim_k.or_else(|| json.terms.first().map(|t| t.k.len())).unwrap_or(1);
        let terms = json
            .terms
            .into_iter()
            .map(|t| Term { zeta: to_complex(t.zeta), order: t.order, k: Vector::from_iterator(t.k.len(), t.k.into_iter().map(to_complex)) })
            .collect();
        RationalVector::from_terms(dim, terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> C64 {
        c(0.0, 1.0)
    }

    #[test]
    fn lorentzian_norms() {
        let f = RationalVector::scalar(-i(), 1, c(1.0, 0.0)).unwrap();
        assert!((f.norm_squared() - PI).abs() < 1e-14);
        assert!((f.halfline_norm_squared(Domain::Positive) - PI / 2.0).abs() < 1e-14);
        assert!((f.halfline_norm_squared(Domain::Negative) - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn projections_split_by_half_plane() {
        let f = RationalVector::scalar(-i(), 1, c(1.0, 0.0))
            .unwrap()
            .add(&RationalVector::scalar(2.0 * i(), 1, c(2.0, 0.0)).unwrap());
        let p = f.project_plus();
        assert_eq!(p, RationalVector::scalar(-i(), 1, c(1.0, 0.0)).unwrap());
        assert!(f.sub(&p).in_hardy_minus());
    }

    #[test]
    fn blaschke_product_by_partial_fractions() {
        // (λ − i)/(λ + i) · 1/(λ − i) = 1/(λ + i)
        let s = ScalarRational::from_factored(&[-i(), c(1.0, 0.0)], &[(-i(), 1)]);
        let g = RationalVector::scalar(i(), 1, c(1.0, 0.0)).unwrap();
        let sg = g.multiply(&s);
        assert_eq!(sg.terms().len(), 1);
        assert!((sg.terms()[0].zeta + i()).norm() < 1e-15);
        assert!((sg.terms()[0].k[0] - 1.0).norm() < 1e-14);
    }

    #[test]
    fn json_round_trip() {
        let f = RationalVector::scalar(c(0.5, -1.0), 2, c(1.0, -2.0)).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: RationalVector = serde_json::from_str(&text).unwrap();
        assert_eq!(f, back);
        let parsed: RationalVector =
            serde_json::from_str(r#"{"terms":[{"zeta":[0.0,-1.0],"order":1,"k":[[1.0,0.0]]}]}"#).unwrap();
        assert_eq!(parsed, RationalVector::scalar(-i(), 1, c(1.0, 0.0)).unwrap());
    }
}
