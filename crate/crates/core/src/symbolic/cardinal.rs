use std::fmt;

use serde::{Serialize, Serializer};

use super::ordinal::Ordinal;
use crate::error::{Error, Result};

/// A finite cardinal or `ℵ_α` with `α` in Cantor normal form. The derived
/// order puts every finite cardinal below every aleph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(u64),
    Aleph(Ordinal),
}

impl Cardinal {
    pub fn aleph(index: Ordinal) -> Cardinal {
        Cardinal::Aleph(index)
    }

    pub fn aleph_nat(k: u64) -> Cardinal {
        Cardinal::Aleph(Ordinal::nat(k))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cardinal::Aleph(_))
    }

    pub fn is_uncountable(&self) -> bool {
        matches!(self, Cardinal::Aleph(i) if !i.is_zero())
    }

    /// `ℵ_{β+1}`.
    pub fn is_successor(&self) -> bool {
        matches!(self, Cardinal::Aleph(i) if i.is_successor())
    }

    /// `ℵ_λ` for a limit ordinal `λ`.
    pub fn is_limit(&self) -> bool {
        matches!(self, Cardinal::Aleph(i) if i.is_limit())
    }

    /// `κ⁺`.
    pub fn successor(&self) -> Cardinal {
        match self {
            Cardinal::Finite(k) => Cardinal::Finite(k + 1),
            Cardinal::Aleph(i) => Cardinal::Aleph(i.succ()),
        }
    }

    pub fn join(&self, other: &Cardinal) -> Cardinal {
        self.max(other).clone()
    }

    pub fn cofinality(&self) -> Result<Cardinal> {
        match self {
            Cardinal::Finite(k) => Err(Error::FiniteCardinal(*k)),
            Cardinal::Aleph(i) if i.is_zero() || i.is_successor() => Ok(self.clone()),
            Cardinal::Aleph(i) => {
                // |cf(λ)| as a cardinal; cf(λ) = ω below ε₀, so ℵ₀.
                let cf = i.cofinality();
                Ok(match cf.as_nat() {
                    Some(k) => Cardinal::Finite(k),
                    None => Cardinal::aleph_nat(0),
                })
            }
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(k) => write!(f, "{k}"),
            Cardinal::Aleph(i) => write!(f, "aleph({i})"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofinality_rules() {
        assert_eq!(
            Cardinal::aleph_nat(1).cofinality().unwrap(),
            Cardinal::aleph_nat(1)
        );
        assert_eq!(
            Cardinal::aleph_nat(0).cofinality().unwrap(),
            Cardinal::aleph_nat(0)
        );
        let aleph_w = Cardinal::aleph(Ordinal::omega());
        assert_eq!(aleph_w.cofinality().unwrap(), Cardinal::aleph_nat(0));
        let succ_of_limit = Cardinal::aleph(Ordinal::omega().succ());
        assert_eq!(succ_of_limit.cofinality().unwrap(), succ_of_limit);
        assert_eq!(
            Cardinal::Finite(3).cofinality(),
            Err(Error::FiniteCardinal(3))
        );
    }

    #[test]
    fn order_and_join() {
        let a1 = Cardinal::aleph_nat(1);
        assert!(Cardinal::Finite(u64::MAX) < Cardinal::aleph_nat(0));
        assert!(Cardinal::aleph_nat(0) < a1);
        assert_eq!(a1.join(&Cardinal::Finite(5)), a1);
        assert_eq!(
            Cardinal::Finite(5).join(&Cardinal::Finite(2)),
            Cardinal::Finite(5)
        );
        assert_eq!(a1.successor(), Cardinal::aleph_nat(2));
        assert_eq!(a1.to_string(), "aleph(1)");
    }

    #[test]
    fn kinds() {
        assert!(Cardinal::aleph_nat(1).is_successor());
        assert!(!Cardinal::aleph_nat(0).is_successor());
        assert!(!Cardinal::aleph_nat(0).is_limit());
        assert!(!Cardinal::aleph_nat(0).is_uncountable());
        assert!(Cardinal::aleph(Ordinal::omega()).is_limit());
    }
}
