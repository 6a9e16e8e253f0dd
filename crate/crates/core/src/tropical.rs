use std::fmt;

use crate::scalar::Scalar;

/// An element of the max-plus semiring T = R ∪ {−∞}.
///
/// The variant order makes the derived `PartialOrd` place `NegInf` below
/// every finite value.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub enum Trop<S> {
    NegInf,
    Finite(S),
}

impl<S: Scalar> Trop<S> {
    pub fn zero() -> Self {
        Trop::Finite(S::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Trop::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Trop::Finite(v) => Some(v),
            Trop::NegInf => None,
        }
    }

    /// Tropical addition `max(a, b)`; −∞ is neutral.
    pub fn oplus(&self, other: &Self) -> Self {
        if other > self {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Tropical multiplication `a + b`; −∞ is absorbing.
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (Trop::Finite(a), Trop::Finite(b)) => Trop::Finite(a.clone() + b.clone()),
            _ => Trop::NegInf,
        }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Trop<T> {
        match self {
            Trop::Finite(v) => Trop::Finite(f(v)),
            Trop::NegInf => Trop::NegInf,
        }
    }
}

impl<S: Scalar> From<S> for Trop<S> {
    fn from(v: S) -> Self {
        Trop::Finite(v)
    }
}

impl<S: fmt::Display> fmt::Display for Trop<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::Finite(v) => v.fmt(f),
            Trop::NegInf => f.write_str("-inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    #[test]
    fn bottom_is_neutral_and_absorbing() {
        let a: Trop<Rational> = Trop::Finite(int(3));
        let bot = Trop::NegInf;
        assert_eq!(a.oplus(&bot), a);
        assert_eq!(bot.oplus(&a), a);
        assert_eq!(a.otimes(&bot), Trop::NegInf);
        assert_eq!(a.otimes(&Trop::Finite(int(-5))), Trop::Finite(int(-2)));
        assert!(bot < Trop::Finite(int(-1_000_000)));
    }
}
