//! Ordinals below ε₀ in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;

/// `ω^{e_1}·c_1 + … + ω^{e_k}·c_k` with `e_1 > … > e_k` and every `c_i ≥ 1`.
/// The empty sum is `0`. Construction only goes through operations that keep
/// this form, so equal ordinals are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(k: u64) -> Ordinal {
        if k == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), k)],
            }
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::nat(1), 1)
    }

    /// `ω^exponent · coefficient`.
    pub fn omega_pow(exponent: Ordinal, coefficient: u64) -> Ordinal {
        if coefficient == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(exponent, coefficient)],
            }
        }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| !e.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Ordinal sum `self + other`: terms of `self` below the leading
    /// exponent of `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_coef)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        let mut carry = 0;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => carry = *c,
                Ordering::Less => break,
            }
        }
        terms.push((lead.clone(), lead_coef + carry));
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::nat(1))
    }

    /// The ordinal whose successor this is.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Some(Ordinal { terms })
    }

    /// Cofinality as an ordinal: `0`, `1` for successors, and `ω` for every
    /// limit in normal form (all of them lie below ε₀).
    pub fn cofinality(&self) -> Ordinal {
        if self.is_zero() {
            Ordinal::zero()
        } else if self.is_successor() {
            Ordinal::nat(1)
        } else {
            let (e, _) = self.terms.last().unwrap();
            // cf(β + ω^e) = cf(ω^e): ω for successor e, cf(e) for limit e.
            if e.is_successor() {
                Ordinal::omega()
            } else {
                e.cofinality()
            }
        }
    }

    /// The `n`-th element of the standard fundamental sequence of a limit:
    /// for `λ = β + ω^{e+1}` it is `β + ω^e·n`, and for `λ = β + ω^e` with
    /// `e` a limit it is `β + ω^{e[n]}`. Strictly increasing in `n` with
    /// supremum `λ`.
    pub fn fundamental(&self, n: u64) -> Option<Ordinal> {
        if !self.is_limit() {
            return None;
        }
        let mut prefix = self.terms.clone();
        let (e, c) = prefix.pop().unwrap();
        if c > 1 {
            prefix.push((e.clone(), c - 1));
        }
        let base = Ordinal { terms: prefix };
        let tail = match e.pred() {
            Some(e_prev) => Ordinal::omega_pow(e_prev, n),
            None => Ordinal::omega_pow(e.fundamental(n)?, 1),
        };
        Some(base.add(&tail))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if e.as_nat() == Some(1) {
                write!(f, "w")?;
            } else if e.terms.len() == 1 && e.terms[0].1 == 1 || e.as_nat().is_some() {
                write!(f, "w^{e}")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}
