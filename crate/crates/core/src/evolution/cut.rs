//! The half-line transfer `T₊ᴾ(t) = P₊T₊(t)P₊⁻¹` on `ℳ₊ = P₊H²₊`.
//!
//! Elements of `ℳ₊` are carried as their `H²₊` preimages, which makes `P₊⁻¹`
//! trivial; the bracket norm `[P₊f] = ‖f‖` is the norm of the preimage.

use super::characteristic_rational;
use crate::error::Result;
use crate::hardy::{GridFunction, RationalVector};
use crate::quadrature::Domain;

#[derive(Clone, Debug, PartialEq)]
pub struct CutState {
    pub preimage: RationalVector,
    pub time_elapsed: f64,
}

impl CutState {
    pub fn new(preimage: RationalVector) -> Result<Self> {
        if !preimage.in_hardy_plus() {
            return Err(crate::Error::NotHardyPlus);
        }
        Ok(CutState { preimage, time_elapsed: 0.0 })
    }

    /// `[f₊] = ‖f‖`.
    pub fn bracket_norm(&self) -> f64 {
        self.preimage.norm()
    }

    /// `‖f₊‖ = ‖P₊f‖`.
    pub fn plus_norm(&self) -> f64 {
        self.preimage.halfline_norm_squared(Domain::Positive).sqrt()
    }

    /// `P₊f` sampled on an `n`-node grid.
    pub fn sampled(&self, n: usize) -> GridFunction {
        GridFunction::from_rational(&self.preimage, n).halfline_project(Domain::Positive)
    }
}

/// `T₊ᴾ(t)(P₊f) = P₊(T₊(t)f)`.
pub fn cut_case_apply(state: &CutState, t: f64) -> Result<CutState> {
    Ok(CutState { preimage: characteristic_rational(&state.preimage, t)?, time_elapsed: state.time_elapsed + t })
}
