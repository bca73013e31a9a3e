//! Exact arithmetic in the universal Novikov field Λ and the semisimple
//! base ring 𝕜_Λ = ⊕ᵢ Λ πᵢ.
//!
//! A field element is a finite sum Σ aᵢ T^{λᵢ} with Gaussian-rational
//! coefficients aᵢ and strictly increasing rational exponents λᵢ. The
//! T-adic valuation `val` picks the smallest exponent; `val(0) = +∞`.
//! Completion is modeled by an explicit [`EnergyCutoff`] carried through
//! every truncating operation, so equality of results is decidable and
//! bit-exact.

mod base;
mod novikov;
mod parse;

pub use base::BaseScalar;
pub use novikov::{Coeff, NovikovScalar, ScalarClass, Classification};
pub use parse::{base_to_string, novikov_to_string, parse_base_scalar, parse_novikov, parse_rational, rat_to_string};

use num::BigRational;

/// Truncation window carried through all series-valued operations.
///
/// Terms with energy (T-exponent plus letter valuations) `>= max_energy`
/// are discarded, as are words of tensor length `>= max_len`. So at
/// `max_len = 6` the retained words have length 0..=5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyCutoff {
    pub max_energy: BigRational,
    pub max_len: usize,
}

impl EnergyCutoff {
    pub fn new(max_energy: BigRational, max_len: usize) -> Self {
        assert!(max_energy > BigRational::from_integer(0.into()), "energy cutoff must be positive");
        assert!(max_len >= 1, "length cutoff must be at least 1");
        EnergyCutoff { max_energy, max_len }
    }

    /// Default window used by the CLI: length 6, energy 10.
    pub fn default_window() -> Self {
        EnergyCutoff::new(BigRational::from_integer(10.into()), 6)
    }

    pub fn keeps_energy(&self, e: &BigRational) -> bool {
        *e < self.max_energy
    }

    pub fn keeps_len(&self, len: usize) -> bool {
        len < self.max_len
    }
}

/// Valuation value: a rational or the +∞ sentinel for 0.
///
/// The ordering is total, with `Infinity` greater than every finite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Val {
    Finite(BigRational),
    Infinity,
}

impl Val {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Val::Finite(q) => Some(q),
            Val::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinity)
    }

    pub fn min(self, other: Val) -> Val {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// val(a) + val(b), with ∞ absorbing.
    pub fn plus(&self, other: &Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Val::*;
        match (self, other) {
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for Val {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Val::Finite(q) => write!(f, "{}", q),
            Val::Infinity => write!(f, "inf"),
        }
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub(crate) fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn val_order_is_total() {
        let vals = vec![Val::Finite(rat(-1, 2)), Val::Finite(rat_int(0)), Val::Infinity];
        for v in &vals {
            assert!(*v <= Val::Infinity);
        }
        assert_eq!(
            Val::Finite(rat_int(3)).min(Val::Infinity),
            Val::Finite(rat_int(3))
        );
        assert_eq!(Val::Infinity.plus(&Val::Finite(rat_int(1))), Val::Infinity);
    }
}
