//! Induced-subposet embedding search.

use serde::Serialize;

use crate::cover::width;
use crate::error::{Error, Result};
use crate::generators::grid_upper;
use crate::poset::Poset;

/// An injective map from `source` into `target` that preserves and reflects
/// the strict order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub source: Poset,
    pub target: Poset,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Found(Embedding),
    NotFound,
    /// The node budget ran out before the search finished.
    Unknown,
}

impl SearchResult {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchResult::Found(_))
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            SearchResult::Found(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Relation {
    Below,
    Above,
    Incomparable,
}

fn relation(p: &Poset, x: usize, y: usize) -> Relation {
    if p.lt(x, y) {
        Relation::Below
    } else if p.lt(y, x) {
        Relation::Above
    } else {
        Relation::Incomparable
    }
}

/// `(|↑x|, |↓x|, |Inc_x|)`. An embedding can only send `x` to an element
/// whose signature dominates it coordinatewise.
fn signatures(p: &Poset) -> Vec<[usize; 3]> {
    (0..p.len())
        .map(|x| {
            let up = p.strict_up(x).count_ones(..);
            let down = p.strict_down(x).count_ones(..);
            [up, down, p.len() - 1 - up - down]
        })
        .collect()
}

/// Checks injectivity, range and the order biconditional on every pair.
pub fn validate_embedding(e: &Embedding) -> bool {
    let (q, p, map) = (&e.source, &e.target, &e.map);
    if map.len() != q.len() || map.iter().any(|&x| x >= p.len()) {
        return false;
    }
    let mut used = p.empty_set();
    if map.iter().any(|&x| used.put(x)) {
        return false;
    }
    (0..q.len()).all(|a| (0..q.len()).all(|b| q.lt(a, b) == p.lt(map[a], map[b])))
}

/// Searches for a copy of `q` inside `p`. Exact: `NotFound` means no
/// embedding exists.
pub fn embeds(p: &Poset, q: &Poset) -> SearchResult {
    embeds_with_budget(p, q, None)
}

pub fn embeds_with_budget(p: &Poset, q: &Poset, budget: Option<u64>) -> SearchResult {
    search(p, q, q.linear_extension(), budget)
}

/// Searches for `[k]²`, or its dual, inside `p`.
pub fn embeds_grid(
    p: &Poset,
    k: usize,
    want_dual: bool,
    budget: Option<u64>,
) -> Result<SearchResult> {
    if k < 2 {
        return Err(Error::Size(format!("[k]² needs k ≥ 2, got {k}")));
    }
    let grid = grid_upper(k)?;
    // Longest chain of [k]² has 2k - 3 elements; its width is ⌊k/2⌋.
    if grid.poset.len() > p.len() || p.height() < 2 * k - 3 || width(p) < k / 2 {
        return Ok(SearchResult::NotFound);
    }
    // Column by column (ascending β, then α): a linear extension of [k]²
    // in which each element follows its lower neighbours closely.
    let mut order: Vec<usize> = (0..grid.poset.len()).collect();
    order.sort_by_key(|&i| (grid.labels[i].beta, grid.labels[i].alpha));
    let q = if want_dual {
        order.reverse();
        grid.poset.dual()
    } else {
        grid.poset
    };
    Ok(search(p, &q, order, budget))
}

fn search(p: &Poset, q: &Poset, order: Vec<usize>, budget: Option<u64>) -> SearchResult {
    if q.len() > p.len() {
        return SearchResult::NotFound;
    }
    if q.is_empty() {
        return SearchResult::Found(Embedding {
            source: q.clone(),
            target: p.clone(),
            map: Vec::new(),
        });
    }
    if q.height() > p.height() || width(q) > width(p) {
        return SearchResult::NotFound;
    }

    let q_sig = signatures(q);
    let p_sig = signatures(p);
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| {
            (0..p.len())
                .filter(|&y| (0..3).all(|c| q_sig[x][c] <= p_sig[y][c]))
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return SearchResult::NotFound;
    }
    // constraints[i]: (earlier position, relation of q[order[j]] to q[order[i]])
    let constraints: Vec<Vec<(usize, Relation)>> = (0..order.len())
        .map(|i| {
            (0..i)
                .map(|j| (j, relation(q, order[j], order[i])))
                .collect()
        })
        .collect();

    let mut state = SearchState {
        p,
        candidates: &candidates,
        constraints: &constraints,
        assigned: Vec::with_capacity(order.len()),
        used: p.empty_set(),
        nodes: 0,
        budget,
    };
    match state.extend() {
        Step::Done => {
            let mut map = vec![0; q.len()];
            for (i, &y) in state.assigned.iter().enumerate() {
                map[order[i]] = y;
            }
            let e = Embedding {
                source: q.clone(),
                target: p.clone(),
                map,
            };
            debug_assert!(validate_embedding(&e));
            SearchResult::Found(e)
        }
        Step::Exhausted => SearchResult::NotFound,
        Step::OutOfBudget => SearchResult::Unknown,
    }
}

enum Step {
    Done,
    Exhausted,
    OutOfBudget,
}

struct SearchState<'a> {
    p: &'a Poset,
    candidates: &'a [Vec<usize>],
    constraints: &'a [Vec<(usize, Relation)>],
    assigned: Vec<usize>,
    used: fixedbitset::FixedBitSet,
    nodes: u64,
    budget: Option<u64>,
}

impl SearchState<'_> {
    fn extend(&mut self) -> Step {
        let pos = self.assigned.len();
        if pos == self.candidates.len() {
            return Step::Done;
        }
        for &y in &self.candidates[pos] {
            if self.used[y] {
                continue;
            }
            let consistent = self.constraints[pos]
                .iter()
                .all(|&(j, rel)| relation(self.p, self.assigned[j], y) == rel);
            if !consistent {
                continue;
            }
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Step::OutOfBudget;
            }
            self.assigned.push(y);
            self.used.insert(y);
            match self.extend() {
                Step::Exhausted => {}
                other => return other,
            }
            self.used.set(y, false);
            self.assigned.pop();
        }
        Step::Exhausted
    }
}
