//! The incomparability graph: components, the lexicographic-sum
//! decomposition along them, and shortest incomparability paths.

use std::cmp::Ordering;
use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// `P` as a lexicographic sum of the posets induced on the connected
/// components of `Inc(P)`. Parts are listed bottom to top; every element of
/// an earlier part is below every element of a later part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexDecomposition {
    /// Original indices of each part, ascending.
    pub parts: Vec<Vec<usize>>,
    /// `part_posets[i]` is induced on `parts[i]`, with local index `k`
    /// standing for `parts[i][k]`.
    pub part_posets: Vec<Poset>,
}

impl LexDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks the partition, per-part connectivity and uniform comparability
    /// between parts against the poset the decomposition came from.
    pub fn verify(&self, p: &Poset) -> std::result::Result<(), String> {
        let mut seen = p.empty_set();
        for part in &self.parts {
            for &x in part {
                if x >= p.len() || seen.put(x) {
                    return Err(format!("element {x} is missing or repeated"));
                }
            }
        }
        if seen.count_ones(..) != p.len() {
            return Err("parts do not cover the poset".into());
        }
        for (i, part) in self.parts.iter().enumerate() {
            if !inc_connected(p, part) {
                return Err(format!("part {i} is not Inc-connected"));
            }
            for later in &self.parts[i + 1..] {
                for &x in part {
                    if let Some(&y) = later.iter().find(|&&y| !p.lt(x, y)) {
                        return Err(format!("part {i}: {x} is not below {y}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn inc_connected(p: &Poset, part: &[usize]) -> bool {
    let Some(&start) = part.first() else {
        return false;
    };
    let mut inside = p.empty_set();
    part.iter().for_each(|&x| inside.insert(x));
    let mut seen = p.empty_set();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let mut next = p.inc_of(x);
        next.intersect_with(&inside);
        next.difference_with(&seen);
        for y in next.ones() {
            seen.insert(y);
            queue.push_back(y);
        }
    }
    seen.count_ones(..) == part.len()
}

/// Connected components of `Inc(P)` in the order of the chain they form.
/// The decomposition is verified before it is returned.
pub fn inc_components(p: &Poset) -> LexDecomposition {
    inc_components_with(p, true)
}

pub fn inc_components_with(p: &Poset, verify: bool) -> LexDecomposition {
    let mut unvisited = p.full_set();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    while let Some(start) = unvisited.ones().next() {
        unvisited.set(start, false);
        let mut part = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let mut next = p.inc_of(x);
            next.intersect_with(&unvisited);
            unvisited.difference_with(&next);
            for y in next.ones() {
                part.push(y);
                queue.push_back(y);
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    // Elements of distinct components are comparable, so one representative
    // pair fixes the order of two parts.
    parts.sort_by(|a, b| {
        if p.lt(a[0], b[0]) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    });
    let part_posets = parts
        .iter()
        .map(|part| p.induced(part).expect("component indices are in range").0)
        .collect();
    let d = LexDecomposition { parts, part_posets };
    if verify {
        if let Err(msg) = d.verify(p) {
            panic!("incomparability components do not form a lexicographic sum: {msg}");
        }
    }
    d
}

/// Rebuilds the poset a decomposition describes: the order inside each part
/// comes from its part poset, and earlier parts lie below later ones.
pub fn recompose(d: &LexDecomposition) -> Result<Poset> {
    if d.parts.len() != d.part_posets.len() {
        return Err(Error::MalformedDecomposition(format!(
            "{} parts but {} part posets",
            d.parts.len(),
            d.part_posets.len()
        )));
    }
    let n: usize = d.parts.iter().map(Vec::len).sum();
    let mut seen = FixedBitSet::with_capacity(n);
    for (i, (part, poset)) in d.parts.iter().zip(&d.part_posets).enumerate() {
        if part.len() != poset.len() {
            return Err(Error::MalformedDecomposition(format!(
                "part {i} has {} elements but its poset has {}",
                part.len(),
                poset.len()
            )));
        }
        for &x in part {
            if x >= n || seen.put(x) {
                return Err(Error::MalformedDecomposition(format!(
                    "element {x} is out of range or appears twice"
                )));
            }
        }
    }
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    let mut above = FixedBitSet::with_capacity(n);
    for (part, poset) in d.parts.iter().zip(&d.part_posets).rev() {
        for (local, &x) in part.iter().enumerate() {
            up[x].union_with(&above);
            for y in poset.strict_up(local).ones() {
                up[x].insert(part[y]);
            }
        }
        part.iter().for_each(|&x| above.insert(x));
    }
    Ok(Poset::from_closed_rows(up))
}

/// A shortest path `x = x_0, …, x_{d} = y` in `Inc(P)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncPath {
    pub distance: usize,
    pub path: Vec<usize>,
}

/// Shortest path between `x` and `y` in `Inc(P)`, or `None` when they lie in
/// different components. Among shortest paths the lexicographically least
/// one is returned.
pub fn inc_distance_path(p: &Poset, x: usize, y: usize) -> Result<Option<IncPath>> {
    p.check_index(x)?;
    p.check_index(y)?;
    if x == y {
        return Ok(Some(IncPath {
            distance: 0,
            path: vec![x],
        }));
    }
    // distances to y, then a greedy walk from x picking the lowest index
    let mut dist = vec![usize::MAX; p.len()];
    dist[y] = 0;
    let mut unvisited = p.full_set();
    unvisited.set(y, false);
    let mut queue = VecDeque::from([y]);
    while let Some(u) = queue.pop_front() {
        if u == x {
            break;
        }
        let mut next = p.inc_of(u);
        next.intersect_with(&unvisited);
        unvisited.difference_with(&next);
        for v in next.ones() {
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    if dist[x] == usize::MAX {
        return Ok(None);
    }
    let mut path = vec![x];
    let mut cur = x;
    while cur != y {
        cur = p
            .inc_of(cur)
            .ones()
            .find(|&v| dist[v] != usize::MAX && dist[v] + 1 == dist[cur])
            .expect("BFS layers give a predecessor");
        path.push(cur);
    }
    Ok(Some(IncPath {
        distance: dist[x],
        path,
    }))
}

/// Outcome of checking both items of the path lemma for `x < y` in one
/// Inc-component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub x: usize,
    pub y: usize,
    pub distance: usize,
    pub path: Vec<usize>,
    /// `x_i < x_j` whenever `i + 2 ≤ j`.
    pub item1_ok: bool,
    /// `[x, y] ⊆ Inc_{x_1} ∪ … ∪ Inc_{x_n}` over the inner path vertices.
    pub item2_ok: bool,
    pub violations: Vec<String>,
}

impl MetricReport {
    pub fn holds(&self) -> bool {
        self.item1_ok && self.item2_ok
    }
}

pub fn check_metric_lemma(p: &Poset, x: usize, y: usize) -> Result<MetricReport> {
    p.check_index(x)?;
    p.check_index(y)?;
    if !p.lt(x, y) {
        return Err(Error::precondition(format!("{x} < {y} does not hold")));
    }
    let Some(IncPath { distance, path }) = inc_distance_path(p, x, y)? else {
        return Err(Error::precondition(format!(
            "{x} and {y} lie in different Inc-components"
        )));
    };
    let mut violations = Vec::new();

    for i in 0..path.len() {
        for j in i + 2..path.len() {
            if !p.lt(path[i], path[j]) {
                violations.push(format!(
                    "item 1: x_{i} = {} is not below x_{j} = {}",
                    path[i], path[j]
                ));
            }
        }
    }
    let item1_ok = violations.is_empty();

    let inner = &path[1..path.len() - 1];
    let mut covered = p.empty_set();
    for &z in inner {
        covered.union_with(&p.inc_of(z));
    }
    let interval = p.interval(x, y)?;
    let mut missing = interval.clone();
    missing.difference_with(&covered);
    for z in missing.ones() {
        violations.push(format!(
            "item 2: {z} lies in [{x}, {y}] but is comparable to every inner path vertex"
        ));
    }
    let item2_ok = missing.is_clear();

    Ok(MetricReport {
        x,
        y,
        distance,
        path,
        item1_ok,
        item2_ok,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::width;
    use crate::generators::{
        antichain, chain, grid_upper, lex_sum, random_connected_inc, random_poset,
    };
    use proptest::prelude::*;

    /// x0 = 0 < z = 1 < x2 = 2, and 3 incomparable to all of them.
    fn four_point() -> Poset {
        Poset::from_relations(4, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn grid4_components() {
        let g = grid_upper(4).unwrap();
        let d = inc_components(&g.poset);
        let labels: Vec<Vec<String>> = d
            .parts
            .iter()
            .map(|part| part.iter().map(|&i| g.labels[i].to_string()).collect())
            .collect();
        assert_eq!(
            labels,
            vec![
                vec!["(0,1)"],
                vec!["(0,2)"],
                vec!["(0,3)", "(1,2)"],
                vec!["(1,3)"],
                vec!["(2,3)"]
            ]
        );
        assert_eq!(recompose(&d).unwrap(), g.poset);
    }

    #[test]
    fn antichain_and_chain_components() {
        assert_eq!(inc_components(&antichain(4)).parts, vec![vec![0, 1, 2, 3]]);
        let c = inc_components(&chain(5));
        assert_eq!(c.parts, (0..5).map(|x| vec![x]).collect::<Vec<_>>());
        assert!(inc_components(&Poset::empty()).is_empty());
    }

    #[test]
    fn hand_built_two_by_two() {
        let d = LexDecomposition {
            parts: vec![vec![0, 1], vec![2, 3]],
            part_posets: vec![antichain(2), antichain(2)],
        };
        let p = recompose(&d).unwrap();
        assert_eq!(p.relation_pairs(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(p, lex_sum(&[antichain(2), antichain(2)]));
    }

    #[test]
    fn single_part_recomposes_to_itself() {
        let p = antichain(3);
        let d = LexDecomposition {
            parts: vec![vec![0, 1, 2]],
            part_posets: vec![p.clone()],
        };
        assert_eq!(recompose(&d).unwrap(), p);
    }

    #[test]
    fn malformed_decompositions() {
        let d = LexDecomposition {
            parts: vec![vec![0, 0]],
            part_posets: vec![antichain(2)],
        };
        assert!(matches!(
            recompose(&d),
            Err(Error::MalformedDecomposition(_))
        ));
        let d = LexDecomposition {
            parts: vec![vec![0, 1]],
            part_posets: vec![antichain(3)],
        };
        assert!(matches!(
            recompose(&d),
            Err(Error::MalformedDecomposition(_))
        ));
    }

    #[test]
    fn distance_examples() {
        let g = grid_upper(4).unwrap();
        let a = g.index_of(0, 3);
        let b = g.index_of(1, 2);
        assert_eq!(
            inc_distance_path(&g.poset, a, a).unwrap(),
            Some(IncPath {
                distance: 0,
                path: vec![a]
            })
        );
        assert_eq!(
            inc_distance_path(&g.poset, a, b).unwrap(),
            Some(IncPath {
                distance: 1,
                path: vec![a, b]
            })
        );
        let p = four_point();
        assert_eq!(
            inc_distance_path(&p, 0, 2).unwrap(),
            Some(IncPath {
                distance: 2,
                path: vec![0, 3, 2]
            })
        );
        assert_eq!(inc_distance_path(&chain(3), 0, 2).unwrap(), None);
    }

    #[test]
    fn metric_lemma_on_four_points() {
        let r = check_metric_lemma(&four_point(), 0, 2).unwrap();
        assert!(r.item1_ok && r.item2_ok);
        assert_eq!(r.path, vec![0, 3, 2]);
        assert!(matches!(
            check_metric_lemma(&chain(4), 0, 3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_metric_lemma(&four_point(), 2, 0),
            Err(Error::Precondition(_))
        ));
    }

    /// Breadth-first distances computed over an explicit edge list.
    fn bfs_oracle(p: &Poset, x: usize) -> Vec<Option<usize>> {
        let n = p.len();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && !p.lt(a, b) && !p.lt(b, a))
            .collect();
        let mut dist = vec![None; n];
        dist[x] = Some(0);
        let mut frontier = vec![x];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &(a, b) in &edges {
                if frontier.contains(&a) && dist[b].is_none() {
                    dist[b] = Some(d);
                    next.push(b);
                }
            }
            frontier = next;
        }
        dist
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn round_trip_and_width(seed in any::<u64>(), p in 0.02f64..0.4) {
            let poset = random_poset(25, p, seed).unwrap();
            let d = inc_components(&poset);
            prop_assert_eq!(recompose(&d).unwrap(), poset.clone());
            let best = d.part_posets.iter().map(width).max().unwrap_or(0);
            prop_assert_eq!(best, width(&poset));
        }

        #[test]
        fn distances_match_bfs(seed in any::<u64>()) {
            let poset = random_poset(14, 0.2, seed).unwrap();
            for x in 0..14 {
                let oracle = bfs_oracle(&poset, x);
                for (y, &want) in oracle.iter().enumerate() {
                    let got = inc_distance_path(&poset, x, y).unwrap().map(|r| r.distance);
                    prop_assert_eq!(got, want);
                }
            }
        }

        #[test]
        fn metric_lemma_holds(seed in any::<u64>()) {
            let poset = random_connected_inc(16, 0.08, seed).unwrap();
            for (x, y) in poset.relation_pairs() {
                let r = check_metric_lemma(&poset, x, y).unwrap();
                prop_assert!(r.holds(), "{:?}", r.violations);
            }
        }
    }
}
