//! Building a copy of `[m]²` from an increasing chain of ideals
//! `J_0 ⊊ J_1 ⊊ … ⊊ J_{m-1}`.
//!
//! Pairs are placed in colexicographic order (by `β`, then `α`) and
//! `(α, β)` is sent into the layer `J̌_α = J_α ∖ (J_0 ∪ … ∪ J_{α-1})`. A
//! candidate must lie strictly above the images of every placed pair below
//! `(α, β)` and must not lie below the image of any placed pair incomparable
//! to it. Finite chains can run out of candidates, so the search backtracks
//! and may fail.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{grid_index, grid_upper, GridLabel};
use crate::patterns::{validate_embedding, Embedding};
use crate::poset::Poset;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealChain {
    pub poset: Poset,
    pub ideals: Vec<FixedBitSet>,
}

impl IdealChain {
    pub fn new(poset: Poset, ideals: &[Vec<usize>]) -> Result<IdealChain> {
        let sets = ideals
            .iter()
            .map(|ideal| {
                let mut s = poset.empty_set();
                for &x in ideal {
                    poset.check_index(x)?;
                    s.insert(x);
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealChain {
            poset,
            ideals: sets,
        })
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// `J̌_α`: members of `J_α` outside every earlier ideal.
    pub fn layers(&self) -> Vec<FixedBitSet> {
        let mut earlier = self.poset.empty_set();
        self.ideals
            .iter()
            .map(|ideal| {
                let mut layer = ideal.clone();
                layer.difference_with(&earlier);
                earlier.union_with(ideal);
                layer
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainViolation {
    /// `below < member`, `member ∈ J_α`, `below ∉ J_α`.
    NotDownClosed {
        ideal: usize,
        member: usize,
        below: usize,
    },
    /// `a, b ∈ J_α` have no common upper bound in `J_α`.
    NotDirected {
        ideal: usize,
        a: usize,
        b: usize,
    },
    /// `missing ∈ J_{α-1} ∖ J_α`.
    NotNested {
        ideal: usize,
        missing: usize,
    },
    /// `J_{α-1} = J_α`.
    NotStrict {
        ideal: usize,
    },
    EmptyLayer {
        ideal: usize,
    },
    /// No chain inside `J_α` is cofinal in it.
    NoCofinalChain {
        ideal: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub violations: Vec<ChainViolation>,
    /// A chain cofinal in each ideal, when one exists.
    pub cofinal_chains: Vec<Option<Vec<usize>>>,
    /// `(longest chain in J̌_α, m - α)` per layer.
    pub supply: Vec<(usize, usize)>,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every layer `J̌_α` holds a chain of at least `m - α` elements.
    pub fn supply_ok(&self) -> bool {
        self.supply.iter().all(|&(have, need)| have >= need)
    }
}

pub fn validate_ideal_chain(c: &IdealChain) -> ChainReport {
    let p = &c.poset;
    let m = c.ideals.len();
    let mut violations = Vec::new();
    let mut cofinal_chains = Vec::with_capacity(m);

    for (alpha, ideal) in c.ideals.iter().enumerate() {
        if let Some((member, below)) = ideal
            .ones()
            .find_map(|y| p.strict_down(y).ones().find(|&x| !ideal[x]).map(|x| (y, x)))
        {
            violations.push(ChainViolation::NotDownClosed {
                ideal: alpha,
                member,
                below,
            });
        }

        // A finite set has a cofinal chain exactly when it has a greatest
        // element, and is directed exactly when it has one too.
        let top = ideal.ones().find(|&g| {
            let mut below = p.strict_down(g).clone();
            below.insert(g);
            ideal.is_subset(&below)
        });
        cofinal_chains.push(top.map(|g| vec![g]));
        if top.is_none() {
            let members: Vec<usize> = ideal.ones().collect();
            let undirected = members.iter().enumerate().find_map(|(i, &a)| {
                members[i + 1..]
                    .iter()
                    .find(|&&b| !members.iter().any(|&u| p.le(a, u) && p.le(b, u)))
                    .map(|&b| (a, b))
            });
            if let Some((a, b)) = undirected {
                violations.push(ChainViolation::NotDirected { ideal: alpha, a, b });
            }
            violations.push(ChainViolation::NoCofinalChain { ideal: alpha });
        }

        if alpha > 0 {
            let prev = &c.ideals[alpha - 1];
            if let Some(missing) = prev.ones().find(|&x| !ideal[x]) {
                violations.push(ChainViolation::NotNested {
                    ideal: alpha,
                    missing,
                });
            } else if prev == ideal {
                violations.push(ChainViolation::NotStrict { ideal: alpha });
            }
        }
    }

    let layers = c.layers();
    for (alpha, layer) in layers.iter().enumerate() {
        if layer.is_clear() {
            violations.push(ChainViolation::EmptyLayer { ideal: alpha });
        }
    }
    let supply = layers
        .iter()
        .enumerate()
        .map(|(alpha, layer)| (p.height_within(layer), m - alpha))
        .collect();

    ChainReport {
        violations,
        cofinal_chains,
        supply,
    }
}

/// Position where the search first ran out of candidates, with the
/// constraints in force there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub position: GridLabel,
    /// Images the candidate had to lie strictly above.
    pub must_exceed: Vec<usize>,
    /// Images the candidate had to avoid lying below.
    pub must_not_precede: Vec<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealEmbedOutcome {
    Found(Embedding),
    Failed(FailureWitness),
    BudgetExhausted(FailureWitness),
}

impl IdealEmbedOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            IdealEmbedOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

pub fn embed_from_ideal_chain(c: &IdealChain) -> Result<IdealEmbedOutcome> {
    embed_from_ideal_chain_with_budget(c, DEFAULT_NODE_BUDGET)
}

pub fn embed_from_ideal_chain_with_budget(
    c: &IdealChain,
    budget: u64,
) -> Result<IdealEmbedOutcome> {
    let m = c.len();
    if m < 2 {
        return Err(Error::Size(format!("[m]² needs m ≥ 2 ideals, got {m}")));
    }
    let report = validate_ideal_chain(c);
    if !report.is_valid() {
        return Err(Error::InvalidChain(format!("{:?}", report.violations)));
    }

    let grid = grid_upper(m)?;
    let mut positions: Vec<GridLabel> = grid.labels.clone();
    positions.sort_by_key(|l| (l.beta, l.alpha));

    let layers = c.layers();
    let extension = c.poset.linear_extension();
    let candidates: Vec<Vec<usize>> = layers
        .iter()
        .map(|layer| extension.iter().copied().filter(|&x| layer[x]).collect())
        .collect();

    let mut search = Recursion {
        p: &c.poset,
        positions: &positions,
        candidates: &candidates,
        image: Vec::with_capacity(positions.len()),
        nodes: 0,
        budget,
        first_dead_end: None,
    };
    let done = search.place();
    let fallback = || FailureWitness {
        position: positions[0],
        must_exceed: Vec::new(),
        must_not_precede: Vec::new(),
        nodes: 0,
    };
    match done {
        Placement::Done => {
            let mut map = vec![0; grid.poset.len()];
            for (pos, &x) in positions.iter().zip(&search.image) {
                map[grid_index(m, pos.alpha, pos.beta)] = x;
            }
            let e = Embedding {
                source: grid.poset,
                target: c.poset.clone(),
                map,
            };
            if !validate_embedding(&e) {
                return Err(Error::InternalInconsistency(
                    "constructed map is not an order embedding".into(),
                ));
            }
            Ok(IdealEmbedOutcome::Found(e))
        }
        Placement::Exhausted => {
            let mut w = search.first_dead_end.unwrap_or_else(fallback);
            w.nodes = search.nodes;
            Ok(IdealEmbedOutcome::Failed(w))
        }
        Placement::OutOfBudget => {
            let mut w = search.first_dead_end.unwrap_or_else(fallback);
            w.nodes = search.nodes;
            Ok(IdealEmbedOutcome::BudgetExhausted(w))
        }
    }
}

enum Placement {
    Done,
    Exhausted,
    OutOfBudget,
}

struct Recursion<'a> {
    p: &'a Poset,
    positions: &'a [GridLabel],
    candidates: &'a [Vec<usize>],
    image: Vec<usize>,
    nodes: u64,
    budget: u64,
    first_dead_end: Option<FailureWitness>,
}

impl Recursion<'_> {
    fn place(&mut self) -> Placement {
        let k = self.image.len();
        if k == self.positions.len() {
            return Placement::Done;
        }
        let here = self.positions[k];
        let mut must_exceed = Vec::new();
        let mut must_not_precede = Vec::new();
        for (prev, &x) in self.positions[..k].iter().zip(&self.image) {
            if prev.le(&here) {
                must_exceed.push(x);
            } else {
                // Placed pairs come earlier in colex order, so anything not
                // below `here` has a larger α and lives in a later layer.
                debug_assert!(prev.alpha > here.alpha && prev.beta < here.beta);
                must_not_precede.push(x);
            }
        }

        let mut any = false;
        for &x in &self.candidates[here.alpha] {
            if !must_exceed.iter().all(|&y| self.p.lt(y, x)) {
                continue;
            }
            if must_not_precede.iter().any(|&y| self.p.le(x, y)) {
                continue;
            }
            // x ≥ f(α', β') with α' > α cannot happen: f(α', β') is outside
            // J_α, which is downward closed and contains x.
            debug_assert!(must_not_precede.iter().all(|&y| !self.p.lt(y, x)));
            any = true;
            self.nodes += 1;
            if self.nodes > self.budget {
                self.record_dead_end(here, &must_exceed, &must_not_precede);
                return Placement::OutOfBudget;
            }
            self.image.push(x);
            match self.place() {
                Placement::Exhausted => {
                    self.image.pop();
                }
                other => return other,
            }
        }
        if !any {
            self.record_dead_end(here, &must_exceed, &must_not_precede);
        }
        Placement::Exhausted
    }

    fn record_dead_end(
        &mut self,
        position: GridLabel,
        must_exceed: &[usize],
        must_not_precede: &[usize],
    ) {
        if self.first_dead_end.is_none() {
            self.first_dead_end = Some(FailureWitness {
                position,
                must_exceed: must_exceed.to_vec(),
                must_not_precede: must_not_precede.to_vec(),
                nodes: self.nodes,
            });
        }
    }
}

/// `f(α, β) ∈ J̌_α` for every pair.
pub fn satisfies_layer_condition(c: &IdealChain, e: &Embedding) -> bool {
    let m = c.len();
    let layers = c.layers();
    m >= 2
        && e.map.len() == m * (m - 1) / 2
        && crate::generators::grid_labels(m)
            .iter()
            .zip(&e.map)
            .all(|(l, &x)| layers[l.alpha][x])
}
