//! Resonances of analytically continued scattering matrices.
//!
//! The crate works in the outgoing spectral representation, where every
//! object is a concrete function of the energy `λ`:
//!
//! * [`smatrix`] builds scattering-matrix models `S(z)` on the plane cut
//!   along `(-∞, 0]`, with boundary values `S(λ ± i0)` on the cut.
//! * [`hardy`] provides the Hardy projections `Q±`, the half-line
//!   projections `P±`, exact calculus on rational vectors and the
//!   generic-position diagnostics for the pair `{P₊, Q₊}`.
//! * [`evolution`] runs the characteristic semigroup `T₊(t)`, the truncated
//!   evolution and the half-line transfer of the cut case.
//! * [`resonance`] locates poles, extracts Laurent data of `S(z)⁻¹` and
//!   decides Gamov-vector survival.
//! * [`gamov`] expands `Q₊S₋g` into Gamov vectors and splits transition
//!   amplitudes into a residual sum and a background integral.
//!
//! ```
//! use gamov::smatrix::ScatteringModel;
//! use num_complex::Complex64;
//!
//! let model = ScatteringModel::friedrichs_line();
//! let s = model.eval(Complex64::new(0.0, 0.0)).unwrap();
//! assert!((s[(0, 0)] - Complex64::i()).norm() < 1e-12);
//! ```

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub mod diagnostics;
pub mod error;
pub mod evolution;
pub mod gamov;
pub mod hardy;
pub mod quadrature;
pub mod resonance;
pub mod smatrix;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = Complex64;
/// Dense complex matrix on the multiplicity space.
pub type Mat = DMatrix<Complex64>;
/// Dense complex vector in the multiplicity space.
pub type Vector = DVector<Complex64>;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

pub(crate) fn mat_norm(m: &Mat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/scattering.md")]
    struct Scattering;
    #[doc = include_str!("../../../book/src/hardy.md")]
    struct Hardy;
    #[doc = include_str!("../../../book/src/evolution.md")]
    struct Evolution;
    #[doc = include_str!("../../../book/src/resonances.md")]
    struct Resonances;
    #[doc = include_str!("../../../book/src/expansion.md")]
    struct Expansion;
}
