//! Recursive-descent parser for the term grammar:
//!
//! ```text
//! term     := "grid(" card ")" | "dual(" term ")"
//!           | "lexsum([" term ("," term)* "])"
//!           | "lexsumfam(" dir "," count "," famspec ")"
//!           | "chain(" card ")" | "antichain(" nat ")"
//! card     := "aleph(" ord ")" | nat
//! ord      := cnfterm ("+" cnfterm)*
//! cnfterm  := "w^" exponent ["*" nat] | "w" ["*" nat] | nat
//! exponent := nat | "w" ["^" exponent] | "(" ord ")"
//! dir      := "inc" | "dec"
//! count    := nat | "w"
//! famspec  := "aleph(succ_n)" | "aleph(succ(" ord "[n]))"
//! ```
//!
//! Whitespace between tokens is ignored. `ord` sums are normalized with
//! ordinal addition, so `3+w` reads as `w`.

use super::cardinal::Cardinal;
use super::ordinal::Ordinal;
use super::term::{Direction, Family, FamilyCount, PosetTerm};
use crate::error::{Error, Result};

pub fn parse_term(text: &str) -> Result<PosetTerm> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    t.validate().map_err(|e| p.error_at(0, &e.to_string()))?;
    Ok(t)
}

pub fn parse_cardinal(text: &str) -> Result<Cardinal> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let c = p.card()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(c)
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let o = p.ord()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(o)
}

/// Parses a bare family spec such as `aleph(succ_n)`.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.family()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        self.error_at(self.pos, msg)
    }

    fn error_at(&self, pos: usize, msg: &str) -> Error {
        Error::parse_at(1, pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn peek_digit(&mut self) -> bool {
        self.skip_ws();
        self.src.get(self.pos).is_some_and(u8::is_ascii_digit)
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error_at(start, "number too large"))
    }

    fn term(&mut self) -> Result<PosetTerm> {
        if self.eat("grid(") {
            let c = self.card()?;
            self.expect(")")?;
            Ok(PosetTerm::Grid(c))
        } else if self.eat("dual(") {
            let t = self.term()?;
            self.expect(")")?;
            Ok(PosetTerm::Dual(Box::new(t)))
        } else if self.eat("lexsumfam(") {
            let direction = if self.eat("inc") {
                Direction::Increasing
            } else if self.eat("dec") {
                Direction::Decreasing
            } else {
                return Err(self.error("expected `inc` or `dec`"));
            };
            self.expect(",")?;
            let count = if self.eat("w") {
                FamilyCount::Omega
            } else {
                FamilyCount::Finite(self.nat()?)
            };
            self.expect(",")?;
            let family = self.family()?;
            self.expect(")")?;
            Ok(PosetTerm::LexSumFamily {
                direction,
                count,
                family,
            })
        } else if self.eat("lexsum([") {
            let mut parts = vec![self.term()?];
            while self.eat(",") {
                parts.push(self.term()?);
            }
            self.expect("])")?;
            Ok(PosetTerm::LexSum(parts))
        } else if self.eat("chain(") {
            let c = self.card()?;
            self.expect(")")?;
            Ok(PosetTerm::Chain(c))
        } else if self.eat("antichain(") {
            let k = self.nat()?;
            self.expect(")")?;
            Ok(PosetTerm::Antichain(k))
        } else {
            Err(self.error("expected a term"))
        }
    }

    fn card(&mut self) -> Result<Cardinal> {
        if self.eat("aleph(") {
            let o = self.ord()?;
            self.expect(")")?;
            Ok(Cardinal::Aleph(o))
        } else if self.peek_digit() {
            Ok(Cardinal::Finite(self.nat()?))
        } else {
            Err(self.error("expected `aleph(` or a natural number"))
        }
    }

    fn family(&mut self) -> Result<Family> {
        let start = self.pos;
        if self.eat("aleph(succ_n)") {
            return Ok(Family::succ_n());
        }
        self.expect("aleph(succ(")?;
        let limit = self.ord()?;
        self.expect("[n]))")?;
        Family::new(limit).map_err(|e| self.error_at(start, &e.to_string()))
    }

    fn ord(&mut self) -> Result<Ordinal> {
        let mut acc = self.cnfterm()?;
        while self.eat("+") {
            let next = self.cnfterm()?;
            acc = acc.add(&next);
        }
        Ok(acc)
    }

    fn cnfterm(&mut self) -> Result<Ordinal> {
        if self.peek_digit() {
            return Ok(Ordinal::nat(self.nat()?));
        }
        if !self.eat("w") {
            return Err(self.error("expected `w` or a natural number"));
        }
        let exponent = if self.eat("^") {
            self.exponent()?
        } else {
            Ordinal::nat(1)
        };
        let coefficient = if self.eat("*") { self.nat()? } else { 1 };
        Ok(Ordinal::omega_pow(exponent, coefficient))
    }

    fn exponent(&mut self) -> Result<Ordinal> {
        if self.peek_digit() {
            Ok(Ordinal::nat(self.nat()?))
        } else if self.eat("(") {
            let o = self.ord()?;
            self.expect(")")?;
            Ok(o)
        } else if self.eat("w") {
            let e = if self.eat("^") {
                self.exponent()?
            } else {
                Ordinal::nat(1)
            };
            Ok(Ordinal::omega_pow(e, 1))
        } else {
            Err(self.error("expected an exponent"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse_term("grid(aleph(1))").unwrap(),
            PosetTerm::Grid(Cardinal::aleph_nat(1))
        );
        let t = parse_term("lexsum([grid(aleph(1)),dual(grid(aleph(2)))])").unwrap();
        match &t {
            PosetTerm::LexSum(parts) => assert_eq!(parts.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        let t = parse_term("grid(aleph(w^2+3))").unwrap();
        let idx = Ordinal::omega_pow(Ordinal::nat(2), 1).add(&Ordinal::nat(3));
        assert_eq!(t, PosetTerm::Grid(Cardinal::Aleph(idx)));
        assert_eq!(t.to_string(), "grid(aleph(w^2+3))");
    }

    #[test]
    fn whitespace_and_normalization() {
        let t = parse_term(" lexsum( [ chain( 3 ) , antichain(2) ] ) ");
        assert!(t.is_err(), "`lexsum(` and `[` are one token");
        let t = parse_term("lexsum([ chain(3) , antichain( 2 ) ])").unwrap();
        assert_eq!(t.to_string(), "lexsum([chain(3),antichain(2)])");
        assert_eq!(parse_ordinal("3+w").unwrap(), Ordinal::omega());
        assert_eq!(parse_ordinal("w*2+w").unwrap().to_string(), "w*3");
        assert_eq!(parse_ordinal("w^w^2").unwrap().to_string(), "w^w^2");
        assert_eq!(parse_ordinal("w^(w+1)*2").unwrap().to_string(), "w^(w+1)*2");
    }

    #[test]
    fn family_specs() {
        assert_eq!(parse_family("aleph(succ_n)").unwrap(), Family::succ_n());
        assert_eq!(parse_family("aleph(succ(w[n]))").unwrap(), Family::succ_n());
        assert!(parse_family("aleph(succ(3[n]))").is_err());
        let t = parse_term("lexsumfam(dec, w, aleph(succ(w^2[n])))").unwrap();
        assert_eq!(t.to_string(), "lexsumfam(dec,w,aleph(succ(w^2[n])))");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("grid(alef(1))") {
            Err(Error::Parse {
                line: 1, column, ..
            }) => assert_eq!(column, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_term("grid(1)"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_term("lexsumfam(inc,0,aleph(succ_n))"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_term("chain(3) x"),
            Err(Error::Parse { column: 10, .. })
        ));
        assert!(matches!(
            parse_term("antichain(99999999999999999999)"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_cardinal("aleph(w)").is_ok());
        assert!(parse_cardinal("w").is_err());
    }

    fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        let leaf = (0u64..5).prop_map(Ordinal::nat);
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop::collection::vec((inner, 1u64..4), 1..4).prop_map(|terms| {
                terms.into_iter().fold(Ordinal::zero(), |acc, (e, c)| {
                    acc.add(&Ordinal::omega_pow(e, c))
                })
            })
        })
    }

    fn arb_cardinal() -> impl Strategy<Value = Cardinal> {
        prop_oneof![
            (2u64..20).prop_map(Cardinal::Finite),
            arb_ordinal().prop_map(Cardinal::Aleph),
        ]
    }

    fn arb_term() -> impl Strategy<Value = PosetTerm> {
        let leaf = prop_oneof![
            arb_cardinal().prop_map(PosetTerm::Grid),
            arb_cardinal().prop_map(PosetTerm::Chain),
            (0u64..9).prop_map(PosetTerm::Antichain),
            (any::<bool>(), prop::option::of(1u64..9)).prop_map(|(inc, k)| {
                PosetTerm::LexSumFamily {
                    direction: if inc {
                        Direction::Increasing
                    } else {
                        Direction::Decreasing
                    },
                    count: k.map_or(FamilyCount::Omega, FamilyCount::Finite),
                    family: Family::succ_n(),
                }
            }),
        ];
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(PosetTerm::dual),
                prop::collection::vec(inner, 1..4).prop_map(PosetTerm::LexSum),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse(t in arb_term()) {
            prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }

        #[test]
        fn ordinal_order_is_total_and_matches_printing(a in arb_ordinal(), b in arb_ordinal()) {
            prop_assert_eq!(parse_ordinal(&a.to_string()).unwrap(), a.clone());
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert!(a.add(&b) >= b);
        }

        #[test]
        fn join_laws(a in arb_cardinal(), b in arb_cardinal(), c in arb_cardinal()) {
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
            prop_assert_eq!(a.join(&a), a.clone());
        }

        #[test]
        fn dual_keeps_cov(t in arb_term()) {
            prop_assert_eq!(
                super::super::cov_symbolic(&t.clone().dual()),
                super::super::cov_symbolic(&t)
            );
        }
    }
}
