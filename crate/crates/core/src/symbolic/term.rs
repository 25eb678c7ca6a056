use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::cardinal::Cardinal;
use super::ordinal::Ordinal;
use crate::error::{Error, Result};
use crate::generators::{antichain, chain, grid_upper, lex_sum};
use crate::poset::Poset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Parts indexed by `ω`, smallest member at the bottom.
    Increasing,
    /// Parts indexed by `ω*`, smallest member at the top.
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyCount {
    Finite(u64),
    Omega,
}

/// The family `(ℵ_{λ[n]+1})_n` of successor cardinals, where `λ[n]` is the
/// fundamental sequence of the limit ordinal `λ`. Its supremum is `ℵ_λ`.
/// For `λ = ω` this is `(ℵ_{n+1})_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    limit: Ordinal,
}

impl Family {
    pub fn new(limit: Ordinal) -> Result<Family> {
        if !limit.is_limit() {
            return Err(Error::BadFamily(format!("{limit} is not a limit ordinal")));
        }
        Ok(Family { limit })
    }

    /// `(ℵ_{n+1})_{n<ω}`.
    pub fn succ_n() -> Family {
        Family {
            limit: Ordinal::omega(),
        }
    }

    pub fn limit(&self) -> &Ordinal {
        &self.limit
    }

    pub fn member(&self, n: u64) -> Cardinal {
        let index = self.limit.fundamental(n).expect("limit ordinal").succ();
        Cardinal::Aleph(index)
    }

    /// Supremum of the first `count` members.
    pub fn join(&self, count: FamilyCount) -> Option<Cardinal> {
        match count {
            FamilyCount::Finite(0) => None,
            FamilyCount::Finite(k) => Some(self.member(k - 1)),
            FamilyCount::Omega => Some(Cardinal::Aleph(self.limit.clone())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.limit == Ordinal::omega() {
            write!(f, "aleph(succ_n)")
        } else {
            write!(f, "aleph(succ({}[n]))", self.limit)
        }
    }
}

/// A symbolic poset expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PosetTerm {
    /// `[ν]²`.
    Grid(Cardinal),
    Dual(Box<PosetTerm>),
    /// Finite lexicographic sum, bottom part first.
    LexSum(Vec<PosetTerm>),
    /// `Σ_n [κ_n]²` over a family of successor cardinals.
    LexSumFamily {
        direction: Direction,
        count: FamilyCount,
        family: Family,
    },
    Chain(Cardinal),
    Antichain(u64),
}

impl PosetTerm {
    pub fn dual(self) -> PosetTerm {
        PosetTerm::Dual(Box::new(self))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PosetTerm::Grid(Cardinal::Finite(k)) if *k < 2 => Err(Error::Domain(format!(
                "grid({k}) needs an argument of at least 2"
            ))),
            PosetTerm::Grid(_) | PosetTerm::Chain(_) | PosetTerm::Antichain(_) => Ok(()),
            PosetTerm::Dual(t) => t.validate(),
            PosetTerm::LexSum(parts) if parts.is_empty() => {
                Err(Error::Domain("lexsum needs at least one part".into()))
            }
            PosetTerm::LexSum(parts) => parts.iter().try_for_each(PosetTerm::validate),
            PosetTerm::LexSumFamily { count, .. } => {
                if *count == FamilyCount::Finite(0) {
                    Err(Error::Domain("lexsumfam needs a positive count".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// True when every cardinal in the term is finite.
    pub fn is_finite(&self) -> bool {
        match self {
            PosetTerm::Grid(c) | PosetTerm::Chain(c) => !c.is_infinite(),
            PosetTerm::Antichain(_) => true,
            PosetTerm::Dual(t) => t.is_finite(),
            PosetTerm::LexSum(parts) => parts.iter().all(PosetTerm::is_finite),
            PosetTerm::LexSumFamily { .. } => false,
        }
    }
}

impl fmt::Display for PosetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetTerm::Grid(c) => write!(f, "grid({c})"),
            PosetTerm::Dual(t) => write!(f, "dual({t})"),
            PosetTerm::LexSum(parts) => {
                write!(f, "lexsum([")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "])")
            }
            PosetTerm::LexSumFamily {
                direction,
                count,
                family,
            } => {
                let dir = match direction {
                    Direction::Increasing => "inc",
                    Direction::Decreasing => "dec",
                };
                let count = match count {
                    FamilyCount::Finite(k) => k.to_string(),
                    FamilyCount::Omega => "w".to_string(),
                };
                write!(f, "lexsumfam({dir},{count},{family})")
            }
            PosetTerm::Chain(c) => write!(f, "chain({c})"),
            PosetTerm::Antichain(k) => write!(f, "antichain({k})"),
        }
    }
}

impl Serialize for PosetTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Chain covering number of a term:
/// `[ν]²` has `ν` for infinite `ν` and `⌊k/2⌋` for finite `k`; duals keep
/// the value; a lexicographic sum takes the join of its parts; a nonempty
/// chain has 1; an antichain of size `k` has `k`.
pub fn cov_symbolic(t: &PosetTerm) -> Cardinal {
    match t {
        PosetTerm::Grid(Cardinal::Finite(k)) => Cardinal::Finite(k / 2),
        PosetTerm::Grid(c) => c.clone(),
        PosetTerm::Dual(inner) => cov_symbolic(inner),
        PosetTerm::LexSum(parts) => parts
            .iter()
            .map(cov_symbolic)
            .max()
            .unwrap_or(Cardinal::Finite(0)),
        PosetTerm::LexSumFamily { count, family, .. } => {
            family.join(*count).unwrap_or(Cardinal::Finite(0))
        }
        PosetTerm::Chain(Cardinal::Finite(0)) => Cardinal::Finite(0),
        PosetTerm::Chain(_) => Cardinal::Finite(1),
        PosetTerm::Antichain(k) => Cardinal::Finite(*k),
    }
}

/// Posets `Q` such that, for posets with no infinite antichain,
/// `Cov(P) ≥ ν` exactly when `P` embeds some member of the list.
///
/// Successor `ν`: `[ν]²` and its dual. Limit `ν = ℵ_λ`: the sums of
/// `[κ_n]²` over a family with supremum `ν`, indexed by `ω` and by `ω*`,
/// and their duals. Without an explicit family, `(ℵ_{λ[n]+1})_n` is used.
pub fn obstruction_list(nu: &Cardinal, family: Option<&Family>) -> Result<Vec<PosetTerm>> {
    if !nu.is_uncountable() {
        return Err(Error::Domain(format!(
            "obstruction lists are defined for uncountable cardinals, got {nu}"
        )));
    }
    if nu.is_successor() {
        let grid = PosetTerm::Grid(nu.clone());
        return Ok(vec![grid.clone(), grid.dual()]);
    }
    let Cardinal::Aleph(index) = nu else {
        unreachable!("uncountable cardinals are alephs");
    };
    let family = match family {
        Some(f) => {
            let join = f.join(FamilyCount::Omega).unwrap();
            if &join != nu {
                return Err(Error::BadFamily(format!(
                    "family {f} has join {join}, not {nu}"
                )));
            }
            f.clone()
        }
        None => Family::new(index.clone())?,
    };
    let sum = |direction| PosetTerm::LexSumFamily {
        direction,
        count: FamilyCount::Omega,
        family: family.clone(),
    };
    Ok(vec![
        sum(Direction::Increasing),
        sum(Direction::Decreasing),
        sum(Direction::Increasing).dual(),
        sum(Direction::Decreasing).dual(),
    ])
}

/// Sizes used to turn a term into a finite poset.
#[derive(Debug, Clone, Default)]
pub struct Caps {
    /// Finite stand-in for specific infinite cardinals.
    pub caps: BTreeMap<Cardinal, usize>,
    /// Stand-in for infinite cardinals missing from `caps`.
    pub default_cap: Option<usize>,
    /// Number of parts kept from an `ω`-indexed family.
    pub family_width: usize,
}

impl Caps {
    pub fn uniform(cap: usize, family_width: usize) -> Caps {
        Caps {
            caps: BTreeMap::new(),
            default_cap: Some(cap),
            family_width,
        }
    }

    fn cap(&self, c: &Cardinal) -> Result<usize> {
        match c {
            Cardinal::Finite(k) => usize::try_from(*k)
                .map_err(|_| Error::Size(format!("cardinal {k} does not fit in memory"))),
            Cardinal::Aleph(_) => self
                .caps
                .get(c)
                .copied()
                .or(self.default_cap)
                .ok_or_else(|| Error::CapMissing(c.to_string())),
        }
    }
}

/// Finite instance of a term: finite cardinals stand for themselves,
/// infinite ones are replaced by their caps, and families are cut to
/// `family_width` parts.
pub fn realize(t: &PosetTerm, caps: &Caps) -> Result<Poset> {
    Ok(match t {
        PosetTerm::Grid(c) => grid_upper(caps.cap(c)?)?.poset,
        PosetTerm::Dual(inner) => realize(inner, caps)?.dual(),
        PosetTerm::LexSum(parts) => {
            let parts = parts
                .iter()
                .map(|p| realize(p, caps))
                .collect::<Result<Vec<_>>>()?;
            lex_sum(&parts)
        }
        PosetTerm::LexSumFamily {
            direction,
            count,
            family,
        } => {
            let k = match count {
                FamilyCount::Finite(k) => (*k).min(caps.family_width as u64),
                FamilyCount::Omega => caps.family_width as u64,
            };
            if k == 0 {
                return Err(Error::Size("family realized with zero parts".into()));
            }
            let mut parts = (0..k)
                .map(|n| Ok(grid_upper(caps.cap(&family.member(n))?)?.poset))
                .collect::<Result<Vec<_>>>()?;
            if *direction == Direction::Decreasing {
                parts.reverse();
            }
            lex_sum(&parts)
        }
        PosetTerm::Chain(c) => chain(caps.cap(c)?),
        PosetTerm::Antichain(k) => antichain(caps.cap(&Cardinal::Finite(*k))?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::width;
    use crate::symbolic::parse_term;

    fn cov_of(text: &str) -> String {
        cov_symbolic(&parse_term(text).unwrap()).to_string()
    }

    #[test]
    fn cov_rules() {
        assert_eq!(cov_of("grid(aleph(1))"), "aleph(1)");
        assert_eq!(cov_of("dual(grid(aleph(3)))"), "aleph(3)");
        assert_eq!(cov_of("grid(6)"), "3");
        assert_eq!(cov_of("lexsumfam(inc,w,aleph(succ_n))"), "aleph(w)");
        assert_eq!(cov_of("lexsumfam(dec,3,aleph(succ_n))"), "aleph(3)");
        assert_eq!(
            cov_of("lexsum([grid(aleph(1)),dual(grid(aleph(2)))])"),
            "aleph(2)"
        );
        assert_eq!(cov_of("chain(aleph(5))"), "1");
        assert_eq!(cov_of("chain(0)"), "0");
        assert_eq!(cov_of("antichain(4)"), "4");
    }

    #[test]
    fn obstruction_lists() {
        let list = obstruction_list(&Cardinal::aleph_nat(1), None).unwrap();
        let s: Vec<String> = list.iter().map(|t| t.to_string()).collect();
        assert_eq!(s, vec!["grid(aleph(1))", "dual(grid(aleph(1)))"]);

        let aleph_w = Cardinal::aleph(Ordinal::omega());
        let list = obstruction_list(&aleph_w, Some(&Family::succ_n())).unwrap();
        let s: Vec<String> = list.iter().map(|t| t.to_string()).collect();
        assert_eq!(
            s,
            vec![
                "lexsumfam(inc,w,aleph(succ_n))",
                "lexsumfam(dec,w,aleph(succ_n))",
                "dual(lexsumfam(inc,w,aleph(succ_n)))",
                "dual(lexsumfam(dec,w,aleph(succ_n)))",
            ]
        );
        assert!(list.iter().all(|t| cov_symbolic(t) == aleph_w));

        assert!(matches!(
            obstruction_list(&Cardinal::aleph_nat(0), None),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            obstruction_list(&Cardinal::Finite(9), None),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn default_family_for_other_limits() {
        let w2 = Ordinal::omega().add(&Ordinal::omega());
        let nu = Cardinal::aleph(w2.clone());
        let list = obstruction_list(&nu, None).unwrap();
        assert_eq!(list.len(), 4);
        assert_eq!(list[0].to_string(), "lexsumfam(inc,w,aleph(succ(w*2[n])))");
        assert!(list.iter().all(|t| cov_symbolic(t) == nu));
        let bad = obstruction_list(&nu, Some(&Family::succ_n()));
        assert!(matches!(bad, Err(Error::BadFamily(_))));
    }

    #[test]
    fn family_members_increase_to_the_limit() {
        let f = Family::succ_n();
        let members: Vec<String> = (0..3).map(|n| f.member(n).to_string()).collect();
        assert_eq!(members, vec!["aleph(1)", "aleph(2)", "aleph(3)"]);
        let f = Family::new(Ordinal::omega_pow(Ordinal::nat(2), 1)).unwrap();
        assert!(f.member(1) < f.member(2));
        assert!(f.member(50) < Cardinal::aleph(f.limit().clone()));
        assert!(Family::new(Ordinal::nat(3)).is_err());
    }

    #[test]
    fn realize_examples() {
        let caps = Caps::uniform(6, 3);
        let g = realize(&parse_term("grid(aleph(1))").unwrap(), &caps).unwrap();
        assert_eq!(g, grid_upper(6).unwrap().poset);
        assert_eq!(width(&g), 3);

        let t = parse_term("lexsum([grid(5),antichain(3)])").unwrap();
        let d = realize(&t.clone().dual(), &caps).unwrap();
        assert_eq!(d, realize(&t, &caps).unwrap().dual());

        let fam = parse_term("lexsumfam(dec,w,aleph(succ_n))").unwrap();
        let mut caps = Caps {
            family_width: 2,
            ..Caps::default()
        };
        caps.caps.insert(Cardinal::aleph_nat(1), 4);
        caps.caps.insert(Cardinal::aleph_nat(2), 6);
        let p = realize(&fam, &caps).unwrap();
        // [6]² sits below [4]² in the decreasing enumeration
        assert_eq!(
            p,
            lex_sum(&[grid_upper(6).unwrap().poset, grid_upper(4).unwrap().poset])
        );

        let missing = realize(&parse_term("grid(aleph(1))").unwrap(), &Caps::default());
        assert_eq!(missing, Err(Error::CapMissing("aleph(1)".into())));
        let tiny = realize(&parse_term("grid(aleph(1))").unwrap(), &Caps::uniform(1, 1));
        assert!(matches!(tiny, Err(Error::Size(_))));
    }

    #[test]
    fn realized_obstruction_grows_without_bound() {
        let t = &obstruction_list(&Cardinal::aleph_nat(1), None).unwrap()[0];
        let mut last = 0;
        for k in 1..=10 {
            let w = width(&realize(t, &Caps::uniform(2 * k, 1)).unwrap());
            assert_eq!(w, k);
            assert!(w >= last);
            last = w;
        }
    }
}
