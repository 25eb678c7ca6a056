//! Exhaustive reference implementations used to check the library. They only
//! query the order relation (`lt`) and otherwise share no code with it.

#![allow(dead_code)]

use std::collections::VecDeque;

use chaincov::Poset;

pub type Pair = (usize, usize);

/// `below[x]` has bit `y` set when `y < x`.
pub fn below_masks(p: &Poset) -> Vec<u64> {
    let n = p.len();
    assert!(n <= 64);
    (0..n)
        .map(|x| (0..n).filter(|&y| p.lt(y, x)).fold(0u64, |m, y| m | 1 << y))
        .collect()
}

fn comparable_masks(p: &Poset) -> Vec<u64> {
    let n = p.len();
    (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x && (p.lt(x, y) || p.lt(y, x)))
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect()
}

/// Size of a largest antichain, by walking every subset (`n ≤ 20`).
pub fn subset_max_antichain(p: &Poset) -> usize {
    let n = p.len();
    assert!(n <= 20);
    let comp = comparable_masks(p);
    let mut best = 0;
    for mask in 0u64..1 << n {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = (0..n).all(|x| mask >> x & 1 == 0 || comp[x] & mask == 0);
        if ok {
            best = size;
        }
    }
    best
}

/// Largest antichain by branch and bound on the incomparability graph; fine
/// for a few dozen elements.
pub fn branch_max_antichain(p: &Poset) -> usize {
    let n = p.len();
    assert!(n <= 64);
    let comp = comparable_masks(p);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    fn go(cand: u64, size: usize, comp: &[u64], best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let x = cand.trailing_zeros() as usize;
        // take x
        go(cand & !comp[x] & !(1 << x), size + 1, comp, best);
        // skip x
        go(cand & !(1 << x), size, comp, best);
    }
    go(all, 0, &comp, &mut best);
    best
}

/// Fewest chains covering the poset, by dynamic programming over subsets
/// (`n ≤ 14`).
pub fn subset_min_chain_cover(p: &Poset) -> usize {
    let n = p.len();
    assert!(n <= 14);
    let comp = comparable_masks(p);
    let full = (1usize << n) - 1;
    let is_chain: Vec<bool> = (0..=full)
        .map(|m| (0..n).all(|x| m >> x & 1 == 0 || (m & !(1 << x)) as u64 & !comp[x] == 0))
        .collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        // chains containing the lowest element: low plus any subset of rest
        let mut sub = rest;
        loop {
            let c = sub | low;
            if is_chain[c] && best[mask & !c] != usize::MAX {
                best[mask] = best[mask].min(best[mask & !c] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

/// Checks that `chains` partition `0..n` into chains.
pub fn is_chain_partition(p: &Poset, chains: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; p.len()];
    for c in chains {
        for (i, &a) in c.iter().enumerate() {
            if a >= p.len() || seen[a] {
                return false;
            }
            seen[a] = true;
            if c[i + 1..].iter().any(|&b| !(p.lt(a, b) || p.lt(b, a))) {
                return false;
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn is_antichain(p: &Poset, xs: &[usize]) -> bool {
    xs.iter().enumerate().all(|(i, &a)| {
        xs[i + 1..]
            .iter()
            .all(|&b| a != b && !p.lt(a, b) && !p.lt(b, a))
    })
}

fn incomparable(p: &Poset, a: usize, b: usize) -> bool {
    a != b && !p.lt(a, b) && !p.lt(b, a)
}

/// Breadth-first distances in Inc(P) from `x`.
pub fn inc_distances(p: &Poset, x: usize) -> Vec<Option<usize>> {
    let n = p.len();
    let mut dist = vec![None; n];
    dist[x] = Some(0);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if dist[v].is_none() && incomparable(p, u, v) {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Some shortest Inc-path from `x` to `y`.
pub fn inc_shortest_path(p: &Poset, x: usize, y: usize) -> Option<Vec<usize>> {
    let from_y = inc_distances(p, y);
    let mut d = from_y[x]?;
    let mut path = vec![x];
    let mut cur = x;
    while d > 0 {
        cur = (0..p.len())
            .find(|&v| incomparable(p, cur, v) && from_y[v] == Some(d - 1))
            .unwrap();
        path.push(cur);
        d -= 1;
    }
    Some(path)
}

pub fn is_inc_path(p: &Poset, path: &[usize]) -> bool {
    path.windows(2).all(|w| incomparable(p, w[0], w[1]))
}

/// Item 1 of the path lemma: `x_i < x_j` whenever `i + 2 ≤ j`.
pub fn path_item1(p: &Poset, path: &[usize]) -> bool {
    (0..path.len()).all(|i| (i + 2..path.len()).all(|j| p.lt(path[i], path[j])))
}

/// Item 2: every `z` with `x ≤ z ≤ y` is incomparable to some inner vertex.
pub fn path_item2(p: &Poset, path: &[usize]) -> bool {
    let (x, y) = (path[0], path[path.len() - 1]);
    let inner = &path[1..path.len() - 1];
    (0..p.len())
        .filter(|&z| le(p, x, z) && le(p, z, y))
        .all(|z| inner.iter().any(|&w| incomparable(p, z, w)))
}

pub fn le(p: &Poset, a: usize, b: usize) -> bool {
    a == b || p.lt(a, b)
}

/// Components of Inc(P) as sorted vectors, sorted by first element.
pub fn inc_component_sets(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if incomparable(p, a, b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(x);
    }
    groups
}

/// Purity from the definition: every proper down-closed subset lies below
/// a single element outside it (`n ≤ 20`).
pub fn pure_by_downsets(p: &Poset) -> bool {
    let n = p.len();
    assert!(n <= 20);
    let below = below_masks(p);
    let full = (1u64 << n) - 1;
    for mask in 0..full {
        let closed = (0..n).all(|x| mask >> x & 1 == 0 || below[x] & !mask == 0);
        if !closed {
            continue;
        }
        let dominated = (0..n).any(|z| mask >> z & 1 == 0 && mask & !below[z] == 0);
        if !dominated {
            return false;
        }
    }
    true
}

pub fn has_greatest(p: &Poset) -> bool {
    (0..p.len()).any(|g| (0..p.len()).all(|x| le(p, x, g)))
}

/// Whether `q` is isomorphic to an induced subposet of `p`, by trying
/// injections element by element in index order and dropping a prefix as
/// soon as it disagrees with the order.
pub fn embeds_by_injections(p: &Poset, q: &Poset) -> bool {
    fn extend(p: &Poset, q: &Poset, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == q.len() {
            return true;
        }
        for x in 0..p.len() {
            if used[x] {
                continue;
            }
            let consistent =
                (0..i).all(|j| q.lt(j, i) == p.lt(map[j], x) && q.lt(i, j) == p.lt(x, map[j]));
            if consistent {
                used[x] = true;
                map.push(x);
                if extend(p, q, map, used) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }
    extend(p, q, &mut Vec::new(), &mut vec![false; p.len()])
}

/// Order-preserving and order-reflecting injection check.
pub fn is_embedding(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    let mut used = vec![false; p.len()];
    map.len() == q.len()
        && map
            .iter()
            .all(|&x| x < p.len() && !std::mem::replace(&mut used[x], true))
        && (0..q.len()).all(|a| (0..q.len()).all(|b| q.lt(a, b) == p.lt(map[a], map[b])))
}

/// `[n]²` built directly from the pairs `(a, b)`, `a < b < n`, listed by `a`
/// then `b`, ordered componentwise.
pub fn grid_by_definition(n: usize) -> (Vec<Pair>, Vec<Pair>) {
    let labels: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut rel = Vec::new();
    for (i, &(a, b)) in labels.iter().enumerate() {
        for (j, &(c, d)) in labels.iter().enumerate() {
            if i != j && a <= c && b <= d {
                rel.push((i, j));
            }
        }
    }
    (labels, rel)
}
