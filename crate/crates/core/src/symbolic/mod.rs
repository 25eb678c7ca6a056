//! Cardinal arithmetic and symbolic chain covering numbers.

mod cardinal;
mod ordinal;
mod parse;
mod term;

pub use cardinal::Cardinal;
pub use ordinal::Ordinal;
pub use parse::{parse_cardinal, parse_family, parse_ordinal, parse_term};
pub use term::{
    cov_symbolic, obstruction_list, realize, Caps, Direction, Family, FamilyCount, PosetTerm,
};
