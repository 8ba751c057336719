//! Partial-fraction form `s(z) = D + Σ_p Σ_q R_{p,q}/(z − p)^q` of a scalar
//! rational function with bounded behaviour at infinity.

use crate::{c, C64};

/// Principal part at one pole: `coeffs[q-1]` multiplies `1/(z − pole)^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolePart {
    pub pole: C64,
    pub coeffs: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarRational {
    pub constant: C64,
    pub parts: Vec<PolePart>,
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `C(−n, k) = (−1)^k C(n+k−1, k)`.
pub(crate) fn neg_binomial(n: usize, k: usize) -> f64 {
    let b = if n == 0 { if k == 0 { 1.0 } else { 0.0 } } else { binomial(n + k - 1, k) };
    if k.is_multiple_of(2) {
        b
    } else {
        -b
    }
}

/// Ascending coefficients of `Π (z − r)`.
pub fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut p = vec![c(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![c(0.0, 0.0); p.len() + 1];
        for (j, &a) in p.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * r;
        }
        p = next;
    }
    p
}

pub fn poly_eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

fn series_mul(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![c(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate().take(len) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl ScalarRational {
    /// Builds `N(z)/Π(z − p)^n` from ascending numerator coefficients and
    /// distinct poles with multiplicities. The degree of `N` may not exceed the
    /// total multiplicity.
    pub fn from_factored(numerator: &[C64], poles: &[(C64, usize)]) -> Self {
        let total: usize = poles.iter().map(|p| p.1).sum();
        assert!(numerator.len() <= total + 1, "numerator degree exceeds denominator degree");
        let constant = if numerator.len() == total + 1 { numerator[total] } else { c(0.0, 0.0) };
        let mut parts = Vec::new();
        for (idx, &(p, n)) in poles.iter().enumerate() {
            // Taylor coefficients of N(p + w)
            let mut h: Vec<C64> = (0..n)
                .map(|k| {
                    numerator
                        .iter()
                        .enumerate()
                        .skip(k)
                        .map(|(j, &a)| a * binomial(j, k) * p.powu((j - k) as u32))
                        .sum()
                })
                .collect();
            for (other, &(q, m)) in poles.iter().enumerate() {
                if other == idx {
                    continue;
                }
                let d = p - q;
                let factor: Vec<C64> =
                    (0..n).map(|k| neg_binomial(m, k) * d.powi(-(m as i32) - k as i32)).collect();
                h = series_mul(&h, &factor, n);
            }
            let coeffs = (1..=n).map(|q| h[n - q]).collect();
            parts.push(PolePart { pole: p, coeffs });
        }
        ScalarRational { constant, parts }
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut s = self.constant;
        for part in &self.parts {
            let w = z - part.pole;
            let mut wp = w;
            for &r in &part.coeffs {
                s += r / wp;
                wp *= w;
            }
        }
        s
    }

    /// The function `z ↦ conj(s(z̄))`, which equals `s(λ)*` on the real axis.
    pub fn conjugate(&self) -> Self {
        ScalarRational {
            constant: self.constant.conj(),
            parts: self
                .parts
                .iter()
                .map(|p| PolePart { pole: p.pole.conj(), coeffs: p.coeffs.iter().map(|r| r.conj()).collect() })
                .collect(),
        }
    }

    pub fn poles(&self) -> impl Iterator<Item = C64> + '_ {
        self.parts.iter().map(|p| p.pole)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_fraction_split() {
        // (z² + 1)/((z − 2)(z + 3)) = 1 + 1/(z − 2) − 2/(z + 3)
        let s = ScalarRational::from_factored(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &[(c(2.0, 0.0), 1), (c(-3.0, 0.0), 1)]);
        assert!((s.constant - 1.0).norm() < 1e-15);
        assert!((s.parts[0].coeffs[0] - 1.0).norm() < 1e-14);
        assert!((s.parts[1].coeffs[0] + 2.0).norm() < 1e-14);
    }

    #[test]
    fn double_pole_split() {
        // z/(z − i)² = 1/(z − i) + i/(z − i)²
        let i = c(0.0, 1.0);
        let s = ScalarRational::from_factored(&[c(0.0, 0.0), c(1.0, 0.0)], &[(i, 2)]);
        assert!((s.parts[0].coeffs[0] - 1.0).norm() < 1e-15);
        assert!((s.parts[0].coeffs[1] - i).norm() < 1e-15);
        let z = c(0.4, -1.7);
        assert!((s.eval(z) - z / ((z - i) * (z - i))).norm() < 1e-14);
    }

    #[test]
    fn roots_expand_to_polynomial() {
        let p = poly_from_roots(&[c(1.0, 0.0), c(0.0, -1.0)]);
        let z = c(0.3, 0.2);
        assert!((poly_eval(&p, z) - (z - 1.0) * (z + c(0.0, 1.0))).norm() < 1e-15);
    }
}
