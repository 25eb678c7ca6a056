//! Minimum chain covers and maximum antichains.
//!
//! A chain partition of a finite poset is a path cover of its (transitively
//! closed) comparability DAG, so the minimum number of chains is
//! `n - |M|` for a maximum matching `M` of the split bipartite graph with an
//! edge `u_left -> v_right` whenever `u < v`. A maximum antichain is read off
//! the König vertex cover of the same matching.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

const UNMATCHED: usize = usize::MAX;

/// A partition into chains together with an antichain of the same size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCover {
    /// Each chain listed bottom to top.
    pub chains: Vec<Vec<usize>>,
    pub certificate: Vec<usize>,
}

impl ChainCover {
    pub fn width(&self) -> usize {
        self.chains.len()
    }

    /// Checks the partition, chain and antichain conditions against `p`.
    pub fn is_valid_for(&self, p: &Poset) -> bool {
        let mut seen = p.empty_set();
        for chain in &self.chains {
            if chain.is_empty() || chain.windows(2).any(|w| !p.lt(w[0], w[1])) {
                return false;
            }
            for &x in chain {
                if x >= p.len() || seen.put(x) {
                    return false;
                }
            }
        }
        seen.count_ones(..) == p.len()
            && self.certificate.len() == self.chains.len()
            && self.certificate.iter().all(|&x| x < p.len())
            && p.is_antichain(&self.certificate)
    }
}

/// Maximum matching of the split graph restricted to `members`, in local
/// indices. `mate_left[i]` is the local index matched to the right copy of
/// `i`'s successor.
struct SplitMatching {
    members: Vec<usize>,
    adj: Vec<Vec<usize>>,
    mate_left: Vec<usize>,
    mate_right: Vec<usize>,
}

impl SplitMatching {
    fn new(p: &Poset, set: &FixedBitSet) -> SplitMatching {
        let members: Vec<usize> = set.ones().collect();
        let mut local = vec![UNMATCHED; p.len()];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i;
        }
        let adj: Vec<Vec<usize>> = members
            .iter()
            .map(|&x| {
                p.strict_up(x)
                    .ones()
                    .filter(|&y| set[y])
                    .map(|y| local[y])
                    .collect()
            })
            .collect();
        let k = members.len();
        let mut m = SplitMatching {
            members,
            adj,
            mate_left: vec![UNMATCHED; k],
            mate_right: vec![UNMATCHED; k],
        };
        m.hopcroft_karp();
        m
    }

    fn size(&self) -> usize {
        self.mate_left.iter().filter(|&&v| v != UNMATCHED).count()
    }

    fn hopcroft_karp(&mut self) {
        let k = self.members.len();
        let mut dist = vec![usize::MAX; k];
        loop {
            // layered BFS from free left vertices
            let mut queue = VecDeque::new();
            for (u, d) in dist.iter_mut().enumerate() {
                if self.mate_left[u] == UNMATCHED {
                    *d = 0;
                    queue.push_back(u);
                } else {
                    *d = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    let w = self.mate_right[v];
                    if w == UNMATCHED {
                        found = true;
                    } else if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if !found {
                break;
            }
            for u in 0..k {
                if self.mate_left[u] == UNMATCHED {
                    self.augment(u, &mut dist);
                }
            }
        }
    }

    fn augment(&mut self, u: usize, dist: &mut [usize]) -> bool {
        for i in 0..self.adj[u].len() {
            let v = self.adj[u][i];
            let w = self.mate_right[v];
            if w == UNMATCHED || (dist[w] == dist[u].wrapping_add(1) && self.augment(w, dist)) {
                self.mate_left[u] = v;
                self.mate_right[v] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    /// Chains in original indices, ordered by their bottom element.
    fn chains(&self) -> Vec<Vec<usize>> {
        (0..self.members.len())
            .filter(|&v| self.mate_right[v] == UNMATCHED)
            .map(|start| {
                let mut chain = vec![self.members[start]];
                let mut cur = start;
                while self.mate_left[cur] != UNMATCHED {
                    cur = self.mate_left[cur];
                    chain.push(self.members[cur]);
                }
                chain
            })
            .collect()
    }

    /// Antichain from the König cover: elements whose left copy is reachable
    /// by an alternating path from a free left vertex and whose right copy is
    /// not.
    fn antichain(&self) -> Vec<usize> {
        let k = self.members.len();
        let mut left_seen = vec![false; k];
        let mut right_seen = vec![false; k];
        let mut queue: VecDeque<usize> =
            (0..k).filter(|&u| self.mate_left[u] == UNMATCHED).collect();
        for &u in &queue {
            left_seen[u] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !right_seen[v] {
                    right_seen[v] = true;
                    let w = self.mate_right[v];
                    if w != UNMATCHED && !left_seen[w] {
                        left_seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        (0..k)
            .filter(|&i| left_seen[i] && !right_seen[i])
            .map(|i| self.members[i])
            .collect()
    }
}

pub fn min_chain_cover(p: &Poset) -> ChainCover {
    min_chain_cover_within(p, &p.full_set())
}

/// Minimum chain cover of the subposet induced on `set`, in original indices.
pub fn min_chain_cover_within(p: &Poset, set: &FixedBitSet) -> ChainCover {
    let m = SplitMatching::new(p, set);
    ChainCover {
        chains: m.chains(),
        certificate: m.antichain(),
    }
}

pub fn max_antichain(p: &Poset) -> Vec<usize> {
    SplitMatching::new(p, &p.full_set()).antichain()
}

/// `Cov` of the whole poset.
pub fn width(p: &Poset) -> usize {
    width_within(p, &p.full_set())
}

/// `Cov` of the subposet induced on `set`.
pub fn width_within(p: &Poset, set: &FixedBitSet) -> usize {
    let m = SplitMatching::new(p, set);
    m.members.len() - m.size()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilworthReport {
    pub cover_width: usize,
    pub antichain_size: usize,
    pub chains: Vec<Vec<usize>>,
    pub antichain: Vec<usize>,
}

/// Computes the chain cover and the antichain, validates both against `p`,
/// and checks that their sizes agree.
pub fn verify_dilworth(p: &Poset) -> Result<DilworthReport> {
    let cover = min_chain_cover(p);
    let antichain = max_antichain(p);
    let check = ChainCover {
        chains: cover.chains.clone(),
        certificate: antichain.clone(),
    };
    if !check.is_valid_for(p) {
        return Err(Error::InternalInconsistency(format!(
            "chain cover of width {} and antichain of size {} do not certify each other",
            cover.width(),
            antichain.len()
        )));
    }
    Ok(DilworthReport {
        cover_width: cover.width(),
        antichain_size: antichain.len(),
        chains: cover.chains,
        antichain,
    })
}

/// Largest antichain by exhaustive include/exclude search. Exponential; kept
/// as a cross-check for `n ≤ 14`.
pub fn brute_force_max_antichain(p: &Poset) -> Result<Vec<usize>> {
    if p.len() > 14 {
        return Err(Error::Size(format!(
            "exhaustive antichain search supports at most 14 elements, got {}",
            p.len()
        )));
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    extend_antichain(p, 0, &mut current, &mut best);
    Ok(best)
}

fn extend_antichain(p: &Poset, next: usize, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if next == p.len() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.iter().all(|&y| p.incomparable(y, next)) {
        current.push(next);
        extend_antichain(p, next + 1, current, best);
        current.pop();
    }
    extend_antichain(p, next + 1, current, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{antichain, chain, grid_upper, lex_sum, random_poset};
    use proptest::prelude::*;

    #[test]
    fn grid4_has_width_two() {
        let g = grid_upper(4).unwrap();
        let c = min_chain_cover(&g.poset);
        assert_eq!(c.width(), 2);
        assert!(c.is_valid_for(&g.poset));
    }

    #[test]
    fn antichain_needs_singletons() {
        let c = min_chain_cover(&antichain(5));
        assert_eq!(c.chains, (0..5).map(|x| vec![x]).collect::<Vec<_>>());
        assert_eq!(c.certificate.len(), 5);
    }

    #[test]
    fn grid6_antichain() {
        let g = grid_upper(6).unwrap();
        assert_eq!(min_chain_cover(&g.poset).width(), 3);
        let mut a = max_antichain(&g.poset);
        a.sort();
        let mut want = vec![g.index_of(0, 5), g.index_of(1, 4), g.index_of(2, 3)];
        want.sort();
        assert_eq!(a, want);
    }

    #[test]
    fn chain_and_lex_sum_antichains() {
        assert_eq!(max_antichain(&chain(7)).len(), 1);
        let s = lex_sum(&[antichain(2), antichain(3)]);
        let mut a = max_antichain(&s);
        a.sort();
        assert_eq!(a, vec![2, 3, 4]);
    }

    #[test]
    fn empty_poset() {
        let c = min_chain_cover(&Poset::empty());
        assert_eq!(c.width(), 0);
        assert!(c.certificate.is_empty());
    }

    #[test]
    fn grid_widths_small() {
        for n in 2..=12 {
            let g = grid_upper(n).unwrap().poset;
            let r = verify_dilworth(&g).unwrap();
            assert_eq!(r.cover_width, n / 2, "n = {n}");
            assert_eq!(r.antichain_size, n / 2);
        }
    }

    #[test]
    fn within_subset_matches_induced() {
        let p = random_poset(30, 0.1, 5).unwrap();
        let mut s = p.empty_set();
        for x in (0..30).step_by(3) {
            s.insert(x);
        }
        let (q, _) = p.induced_set(&s);
        assert_eq!(width_within(&p, &s), width(&q));
    }

    #[test]
    fn invalid_cover_is_detected() {
        let p = chain(3);
        let bad = ChainCover {
            chains: vec![vec![0, 1]],
            certificate: vec![0],
        };
        assert!(!bad.is_valid_for(&p));
        let bad = ChainCover {
            chains: vec![vec![0], vec![1, 2]],
            certificate: vec![0, 1],
        };
        assert!(!bad.is_valid_for(&p));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn dilworth_matches_exhaustive(n in 0usize..=12, p in 0.0f64..0.6, seed in any::<u64>()) {
            let poset = random_poset(n, p, seed).unwrap();
            let r = verify_dilworth(&poset).unwrap();
            let brute = brute_force_max_antichain(&poset).unwrap();
            prop_assert_eq!(r.cover_width, brute.len());
            prop_assert_eq!(width(&poset.dual()), r.cover_width);
        }

        #[test]
        fn induced_width_is_monotone(seed in any::<u64>(), mask in any::<u32>()) {
            let poset = random_poset(24, 0.15, seed).unwrap();
            let members: Vec<usize> = (0..24).filter(|i| mask >> i & 1 == 1).collect();
            let (q, _) = poset.induced(&members).unwrap();
            prop_assert!(width(&q) <= width(&poset));
        }
    }
}
