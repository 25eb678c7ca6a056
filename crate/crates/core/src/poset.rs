//! Finite strict partial orders stored as reachability-closed bit rows.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite poset on the elements `0..n`.
///
/// Both the strict up-set and the strict down-set of every element are kept
/// as bit rows, so `lt` is a single bit test and set operations on regions
/// run a word at a time. Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("lt", &self.relation_pairs())
            .finish()
    }
}

impl Poset {
    /// Builds the transitive closure of `pairs`, where `(u, v)` asserts `u < v`.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in pairs {
            for idx in [u, v] {
                if idx >= n {
                    return Err(Error::Index { index: idx, n });
                }
            }
            if u == v {
                return Err(Error::Cycle { cycle: vec![u] });
            }
            up[u].insert(v);
        }
        warshall(&mut up);
        if (0..n).any(|x| up[x][x]) {
            return Err(Error::Cycle {
                cycle: find_cycle(n, pairs),
            });
        }
        Ok(Poset::from_closed_rows(up))
    }

    /// Builds a poset from rows that are already transitively closed and
    /// irreflexive. Callers inside the crate guarantee the order axioms.
    pub(crate) fn from_closed_rows(up: Vec<FixedBitSet>) -> Poset {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            debug_assert_eq!(row.len(), n);
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        Poset { n, up, down }
    }

    /// Builds a poset from a predicate `lt(x, y)` that the caller knows to be a
    /// strict order.
    pub(crate) fn from_fn(n: usize, lt: impl Fn(usize, usize) -> bool) -> Poset {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if x != y && lt(x, y) {
                    row.insert(y);
                }
            }
        }
        Poset::from_closed_rows(up)
    }

    pub fn empty() -> Poset {
        Poset::from_closed_rows(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.up[x][y]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.up[x][y]
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.up[y][x]
    }

    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    /// Elements strictly above `x`.
    pub fn strict_up(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Elements strictly below `x`.
    pub fn strict_down(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Elements incomparable to `x` (never contains `x`).
    pub fn inc_of(&self, x: usize) -> FixedBitSet {
        let mut s = self.full_set();
        s.difference_with(&self.up[x]);
        s.difference_with(&self.down[x]);
        s.set(x, false);
        s
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n);
        s.insert_range(..);
        s
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n)
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::Index {
                index: x,
                n: self.n,
            })
        }
    }

    /// All pairs `(x, y)` with `x < y`, row by row.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| self.up[x].ones().map(move |y| (x, y)))
            .collect()
    }

    /// The cover (Hasse) relation: `x < y` with nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in self.up[x].ones() {
                if self.up[x].is_disjoint(&self.down[y]) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Opposite order on the same elements.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Restriction of the order to `members`. Duplicates are dropped and the
    /// new elements follow ascending original index; the returned map sends
    /// each new index to its original one.
    pub fn induced(&self, members: &[usize]) -> Result<(Poset, Vec<usize>)> {
        let mut set = self.empty_set();
        for &x in members {
            self.check_index(x)?;
            set.insert(x);
        }
        Ok(self.induced_set(&set))
    }

    pub fn induced_set(&self, set: &FixedBitSet) -> (Poset, Vec<usize>) {
        let map: Vec<usize> = set.ones().collect();
        let m = map.len();
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        for (i, &x) in map.iter().enumerate() {
            for (j, &y) in map.iter().enumerate() {
                if self.up[x][y] {
                    up[i].insert(j);
                }
            }
        }
        (Poset::from_closed_rows(up), map)
    }

    /// `↑A`, including `A`.
    pub fn up_closure(&self, a: &[usize]) -> FixedBitSet {
        let mut s = self.empty_set();
        for &x in a {
            s.insert(x);
            s.union_with(&self.up[x]);
        }
        s
    }

    /// `↓A`, including `A`.
    pub fn down_closure(&self, a: &[usize]) -> FixedBitSet {
        let mut s = self.empty_set();
        for &x in a {
            s.insert(x);
            s.union_with(&self.down[x]);
        }
        s
    }

    /// Elements incomparable to every member of `a`. For `a = ∅` this is
    /// the whole poset.
    pub fn inc_closure(&self, a: &[usize]) -> FixedBitSet {
        let mut s = self.full_set();
        for &x in a {
            s.intersect_with(&self.inc_of(x));
        }
        s
    }

    /// `[a, b] = {z : a ≤ z ≤ b}`; requires `a ≤ b`.
    pub fn interval(&self, a: usize, b: usize) -> Result<FixedBitSet> {
        self.check_index(a)?;
        self.check_index(b)?;
        if !self.le(a, b) {
            return Err(Error::precondition(format!(
                "interval [{a}, {b}] requires {a} ≤ {b}"
            )));
        }
        let mut s = self.up[a].clone();
        s.insert(a);
        let mut below = self.down[b].clone();
        below.insert(b);
        s.intersect_with(&below);
        Ok(s)
    }

    pub fn region(&self, query: &RegionQuery) -> Result<Region> {
        let check_all = |xs: &[usize]| xs.iter().try_for_each(|&x| self.check_index(x));
        let (kind, members) = match query {
            RegionQuery::Up(a) => {
                check_all(a)?;
                (RegionKind::Up, self.up_closure(a))
            }
            RegionQuery::Down(a) => {
                check_all(a)?;
                (RegionKind::Down, self.down_closure(a))
            }
            RegionQuery::Interval(a, b) => (RegionKind::Interval, self.interval(*a, *b)?),
            RegionQuery::Inc(a) => {
                check_all(a)?;
                (RegionKind::Inc, self.inc_closure(a))
            }
        };
        Ok(Region { kind, members })
    }

    pub fn is_down_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.down[x].is_subset(set))
    }

    pub fn is_up_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.up[x].is_subset(set))
    }

    pub fn is_antichain(&self, xs: &[usize]) -> bool {
        xs.iter().enumerate().all(|(i, &x)| {
            xs[i + 1..]
                .iter()
                .all(|&y| x != y && self.incomparable(x, y))
        })
    }

    pub fn is_chain(&self, xs: &[usize]) -> bool {
        xs.iter()
            .enumerate()
            .all(|(i, &x)| xs[i + 1..].iter().all(|&y| x != y && self.comparable(x, y)))
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.up[x].is_clear()).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.down[x].is_clear()).collect()
    }

    /// The element above every other element, if any.
    pub fn greatest(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.down[x].count_ones(..) + 1 == self.n)
    }

    /// A deterministic linear extension: ascending size of the strict
    /// down-set, then ascending index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        order
    }

    /// Number of elements in a longest chain inside `set`.
    pub fn height_within(&self, set: &FixedBitSet) -> usize {
        let mut best = vec![0usize; self.n];
        let mut height = 0;
        for x in self.linear_extension() {
            if !set[x] {
                continue;
            }
            let below = self.down[x]
                .ones()
                .filter(|&y| set[y])
                .map(|y| best[y])
                .max()
                .unwrap_or(0);
            best[x] = below + 1;
            height = height.max(best[x]);
        }
        height
    }

    pub fn height(&self) -> usize {
        self.height_within(&self.full_set())
    }

    /// Exhaustive check of irreflexivity, antisymmetry and transitivity.
    pub fn satisfies_order_axioms(&self) -> bool {
        for x in 0..self.n {
            if self.up[x][x] {
                return false;
            }
            for y in self.up[x].ones() {
                if self.up[y][x] || !self.up[y].is_subset(&self.up[x]) {
                    return false;
                }
                if !self.down[y][x] {
                    return false;
                }
            }
        }
        true
    }

    /// Every proper initial segment is strictly bounded above.
    ///
    /// Only the maximal proper initial segments need checking: those are
    /// `P ∖ {m}` for maximal `m`, and a bound for a larger segment is also a
    /// bound for every segment inside it.
    pub fn is_pure(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyPoset);
        }
        Ok(self
            .maximal_elements()
            .into_iter()
            .all(|m| self.down[m].count_ones(..) + 1 == self.n))
    }

    /// Purity by enumerating every initial segment. Exponential; limited to
    /// `n ≤ 20`.
    pub fn is_pure_exhaustive(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyPoset);
        }
        if self.n > 20 {
            return Err(Error::Size(format!(
                "exhaustive purity check supports at most 20 elements, got {}",
                self.n
            )));
        }
        let order = self.linear_extension();
        let mut current = self.empty_set();
        Ok(self.all_downsets_bounded(&order, 0, &mut current))
    }

    fn all_downsets_bounded(&self, order: &[usize], pos: usize, current: &mut FixedBitSet) -> bool {
        if pos == order.len() {
            if current.count_ones(..) == self.n {
                return true;
            }
            return (0..self.n).any(|x| !current[x] && current.is_subset(&self.down[x]));
        }
        let x = order[pos];
        if !self.all_downsets_bounded(order, pos + 1, current) {
            return false;
        }
        if self.down[x].is_subset(current) {
            current.insert(x);
            let ok = self.all_downsets_bounded(order, pos + 1, current);
            current.set(x, false);
            return ok;
        }
        true
    }
}

/// Bit-parallel Warshall closure over rows.
fn warshall(rows: &mut [FixedBitSet]) {
    let n = rows.len();
    for k in 0..n {
        let pivot = rows[k].clone();
        for row in rows.iter_mut() {
            if row[k] {
                row.union_with(&pivot);
            }
        }
    }
}

/// Finds a directed cycle among the asserted pairs; assumes one exists.
fn find_cycle(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        adj[u].push(v);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        stack.push((root, 0));
        state[root] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&v) = adj[u].get(*next) {
                *next += 1;
                match state[v] {
                    0 => {
                        state[v] = 1;
                        stack.push((v, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(w, _)| w == v).unwrap();
                        return stack[start..].iter().map(|&(w, _)| w).collect();
                    }
                    _ => {}
                }
            } else {
                state[u] = 2;
                stack.pop();
            }
        }
    }
    Vec::new()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionKind {
    Up,
    Down,
    Interval,
    Inc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionQuery {
    Up(Vec<usize>),
    Down(Vec<usize>),
    Interval(usize, usize),
    Inc(Vec<usize>),
}

/// A named subset of a poset: `↑A`, `↓A`, `[a, b]` or `Inc_A(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub kind: RegionKind,
    pub members: FixedBitSet,
}

impl Region {
    pub fn to_vec(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }
}
