//! Exact cut-and-join recursion for intersection numbers of ψ, κ and Θ
//! classes on moduli spaces of stable curves.
//!
//! Everything is exact rational arithmetic. The crate is `no_std` (with
//! `alloc`); the `std` feature only adds memoization of the classical
//! number sequences behind a lock.
//!
//! Layering, bottom to top:
//!
//! * [`arith`]: [`Rational`] and the Euler/Bernoulli sequences.
//! * [`poly`]: sparse graded polynomials in odd `t`-variables and `s`-variables.
//! * [`series`]: truncated Laurent series in `z` with `s`-polynomial coefficients.
//! * [`cutjoin`]: current modes, Virasoro modes and the deformed cut-and-join
//!   operators in both residue-coefficient and dressed-current form.
//! * [`recursion`]: the level-by-level recursion, free energies, extraction of
//!   individual intersection numbers and the two verification oracles.
//! * [`volumes`]: the κ₁ specialization, volume polynomials and closed forms.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod cutjoin;
mod error;
pub mod poly;
pub mod recursion;
pub mod series;
pub mod volumes;

pub use arith::Rational;
pub use error::{Error, Result};
pub use poly::{Caps, GradedPoly, Monomial};
pub use series::ParamSeries;

/// Which family of intersection numbers is computed.
///
/// `Theta` (α = 0) inserts Norbury's Θ class and gives Brézin–Gross–Witten
/// type generating functions; `Psi` (α = 1) is the Kontsevich–Witten family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alpha {
    Theta,
    Psi,
}

impl Alpha {
    pub const ALL: [Alpha; 2] = [Alpha::Theta, Alpha::Psi];

    pub fn from_u8(a: u8) -> Result<Self> {
        match a {
            0 => Ok(Alpha::Theta),
            1 => Ok(Alpha::Psi),
            _ => Err(Error::InvalidAlpha(a)),
        }
    }

    /// The numeric value α ∈ {0, 1}.
    pub fn value(self) -> i64 {
        match self {
            Alpha::Theta => 0,
            Alpha::Psi => 1,
        }
    }

    /// 2α + 1, the degree by which one application of the operator raises
    /// the grading.
    pub fn weight(self) -> i64 {
        2 * self.value() + 1
    }
}

impl core::fmt::Display for Alpha {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.value())
    }
}
