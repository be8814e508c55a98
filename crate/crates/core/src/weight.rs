//! Extended non-negative arc weights.
//!
//! A weight is either a finite non-negative integer or `INF`, which encodes
//! "arc absent in this direction". All comparisons feeding the algorithms are
//! exact integer comparisons; there is no floating point anywhere in the
//! library.

use std::fmt;
use std::ops::Add;

/// A non-negative integer weight extended with `+INF`.
///
/// Addition saturates, so `INF + w = INF`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u64);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const INF: Weight = Weight(u64::MAX);

    #[inline]
    pub fn finite(value: u64) -> Weight {
        debug_assert!(value != u64::MAX, "finite weight overflows into INF");
        Weight(value)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    #[inline]
    pub fn is_inf(self) -> bool {
        self.0 == u64::MAX
    }

    /// Finite value, or `None` for `INF`.
    #[inline]
    pub fn value(self) -> Option<u64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    /// Raw representation (`u64::MAX` for `INF`).
    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }

    /// Weight used when the arc is severed by a cut: absent arcs cost nothing.
    #[inline]
    pub fn cut_cost(self) -> Weight {
        if self.is_inf() {
            Weight::ZERO
        } else {
            self
        }
    }

    #[inline]
    pub fn saturating_mul(self, k: u64) -> Weight {
        if self.is_inf() {
            Weight::INF
        } else {
            Weight(self.0.saturating_mul(k))
        }
    }
}

impl Add for Weight {
    type Output = Weight;

    #[inline]
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0.saturating_add(rhs.0))
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inf_absorbs_addition() {
        assert_eq!(Weight::INF + Weight::finite(5), Weight::INF);
        assert_eq!(Weight::finite(5) + Weight::INF, Weight::INF);
        assert_eq!(Weight::finite(2) + Weight::finite(3), Weight::finite(5));
    }

    #[test]
    fn ordering_puts_inf_last() {
        assert!(Weight::finite(u64::MAX - 1) < Weight::INF);
        assert!(Weight::ZERO < Weight::finite(1));
    }

    #[test]
    fn cut_cost_zeroes_absent_arcs() {
        assert_eq!(Weight::INF.cut_cost(), Weight::ZERO);
        assert_eq!(Weight::finite(7).cut_cost(), Weight::finite(7));
    }
}
