//! Three-valued outcomes of bounded checks.

use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
    /// No counterexample among the finitely many cases inspected, but the
    /// inspected cases do not cover the whole claim.
    HoldsUpToBound,
}

impl<W> Verdict<W> {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails(_) => "FAILS",
            Verdict::HoldsUpToBound => "HOLDS-UP-TO-BOUND",
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    /// Holds, possibly only up to the bound.
    pub fn is_not_refuted(&self) -> bool {
        !self.is_fails()
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
            Verdict::HoldsUpToBound => Verdict::HoldsUpToBound,
        }
    }
}

impl<W> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
