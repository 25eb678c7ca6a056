//! Canonical posets and seeded random instances.
//!
//! Random posets use the index-ordered edge model: for every pair `i < j`
//! (rows in ascending `i`, then ascending `j`) one Bernoulli(`p`) draw decides
//! whether `i < j` is asserted, and the result is transitively closed. The
//! draws come from `Xoshiro256StarStar::seed_from_u64(seed)` through
//! `Rng::gen_bool`, so a `(n, p, seed)` triple names the same poset on every
//! platform.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::incgraph::inc_components;
use crate::poset::Poset;

/// Coordinates of an element of `[n]²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GridLabel {
    pub alpha: usize,
    pub beta: usize,
}

impl GridLabel {
    pub fn le(&self, other: &GridLabel) -> bool {
        self.alpha <= other.alpha && self.beta <= other.beta
    }
}

impl fmt::Display for GridLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// `[n]²` together with the coordinates of each element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoset {
    pub n: usize,
    pub poset: Poset,
    pub labels: Vec<GridLabel>,
}

impl GridPoset {
    pub fn index_of(&self, alpha: usize, beta: usize) -> usize {
        grid_index(self.n, alpha, beta)
    }

    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }
}

/// Position of `(alpha, beta)` in the lexicographic enumeration of `[n]²`.
pub fn grid_index(n: usize, alpha: usize, beta: usize) -> usize {
    debug_assert!(alpha < beta && beta < n);
    alpha * (2 * n - alpha - 1) / 2 + (beta - alpha - 1)
}

pub fn grid_labels(n: usize) -> Vec<GridLabel> {
    (0..n)
        .flat_map(|alpha| (alpha + 1..n).map(move |beta| GridLabel { alpha, beta }))
        .collect()
}

/// `[n]² = {(α, β) : α < β < n}` ordered coordinatewise.
pub fn grid_upper(n: usize) -> Result<GridPoset> {
    if n < 2 {
        return Err(Error::Size(format!("[n]² needs n ≥ 2, got {n}")));
    }
    let labels = grid_labels(n);
    let poset = Poset::from_fn(labels.len(), |x, y| labels[x].le(&labels[y]));
    Ok(GridPoset { n, poset, labels })
}

pub fn chain(n: usize) -> Poset {
    Poset::from_fn(n, |x, y| x < y)
}

pub fn antichain(n: usize) -> Poset {
    Poset::from_fn(n, |_, _| false)
}

/// Stacks `parts` bottom to top. Elements are renumbered part by part.
pub fn lex_sum(parts: &[Poset]) -> Poset {
    let total: usize = parts.iter().map(Poset::len).sum();
    let mut up = vec![FixedBitSet::with_capacity(total); total];
    let mut offset = 0;
    for part in parts {
        let end = offset + part.len();
        for x in 0..part.len() {
            let row = &mut up[offset + x];
            for y in part.strict_up(x).ones() {
                row.insert(offset + y);
            }
            row.insert_range(end..);
        }
        offset = end;
    }
    Poset::from_closed_rows(up)
}

pub fn random_poset(n: usize, p: f64, seed: u64) -> Result<Poset> {
    check_probability(p)?;
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    Ok(draw_poset(n, p, &mut rng))
}

/// A random poset whose incomparability graph is connected. Posets are drawn
/// from one seeded stream until a connected one appears.
pub fn random_connected_inc(n: usize, p: f64, seed: u64) -> Result<Poset> {
    check_probability(p)?;
    const MAX_ATTEMPTS: usize = 10_000;
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let candidate = draw_poset(n, p, &mut rng);
        if inc_components(&candidate).parts.len() <= 1 {
            return Ok(candidate);
        }
    }
    Err(Error::precondition(format!(
        "no poset with connected incomparability graph in {MAX_ATTEMPTS} draws (n={n}, p={p})"
    )))
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "edge probability {p} outside [0, 1]"
        )))
    }
}

fn draw_poset(n: usize, p: f64, rng: &mut Xoshiro256StarStar) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_relations(n, &pairs).expect("index-ordered pairs are acyclic")
}

/// `[n]²` with the ideals `J_α = {(a, b) : a ≤ α}` for `α < m`.
pub fn canonical_ideal_chain(n: usize, m: usize) -> Result<(GridPoset, Vec<Vec<usize>>)> {
    if m == 0 || m >= n {
        return Err(Error::Size(format!(
            "canonical ideal chain needs 1 ≤ m < n, got n={n}, m={m}"
        )));
    }
    let grid = grid_upper(n)?;
    let ideals = (0..m)
        .map(|alpha| {
            grid.labels
                .iter()
                .enumerate()
                .filter(|(_, l)| l.alpha <= alpha)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok((grid, ideals))
}
