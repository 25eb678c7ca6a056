//! Finite-threshold reduction: shrink a poset of width at least `t` to one
//! where every incomparability set is narrow, then split along the
//! Inc-components and cut at an element with a wide up-set or down-set.
//!
//! Widths here are finite, so the "strictly below the threshold" conclusions
//! that hold for infinite cardinals are replaced by exact profiles and
//! subadditivity certificates that are checked on every run.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::cover::width_within;
use crate::error::{Error, Result};
use crate::incgraph::{inc_components, inc_distance_path};
use crate::poset::Poset;

/// Result of the antichain reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim1Result {
    /// Elements of `Q = Inc_L(P)` as original indices, ascending.
    pub members: Vec<usize>,
    /// The inclusion-maximal antichain `L`; empty when no reduction applied.
    pub antichain: Vec<usize>,
    /// `Cov(Q)`.
    pub width: usize,
    /// `Cov(Inc_x(Q))` for each member, in the order of `members`.
    pub inc_widths: Vec<usize>,
}

impl Claim1Result {
    pub fn subposet(&self, p: &Poset) -> (Poset, Vec<usize>) {
        p.induced(&self.members).expect("members are valid indices")
    }
}

fn set_of(p: &Poset, xs: &[usize]) -> FixedBitSet {
    let mut s = p.empty_set();
    xs.iter().for_each(|&x| s.insert(x));
    s
}

fn check_threshold(p: &Poset, t: usize) -> Result<usize> {
    if t == 0 {
        return Err(Error::precondition("threshold must be at least 1"));
    }
    let w = width_within(p, &p.full_set());
    if w < t {
        return Err(Error::precondition(format!(
            "Cov(P) = {w} is below the threshold {t}"
        )));
    }
    Ok(w)
}

/// Finds an induced `Q` with `Cov(Q) ≥ t` and `Cov(Inc_x(Q)) < t` for every
/// `x ∈ Q`.
///
/// If some `Inc_x(P)` has width at least `t`, an antichain `L` is grown
/// greedily (lowest index first) while `Cov(Inc_L(P)) ≥ t` holds, and
/// `Q = Inc_L(P)`. Maximality of `L` gives the second condition, because
/// `Inc_x(Q) = Inc_{L ∪ {x}}(P)`.
pub fn claim1_reduce(p: &Poset, t: usize) -> Result<Claim1Result> {
    let total = check_threshold(p, t)?;
    let wide = |s: &FixedBitSet| width_within(p, s) >= t;

    let mut antichain: Vec<usize> = Vec::new();
    let mut region = p.full_set();
    if let Some(x) = (0..p.len()).find(|&x| wide(&p.inc_of(x))) {
        antichain.push(x);
        region = p.inc_of(x);
        // Every candidate lies in Inc_L(P), so L ∪ {y} stays an antichain.
        while let Some((y, next)) = region.ones().find_map(|y| {
            let mut next = region.clone();
            next.intersect_with(&p.inc_of(y));
            wide(&next).then_some((y, next))
        }) {
            antichain.push(y);
            region = next;
        }
    }

    let members: Vec<usize> = region.ones().collect();
    let width = if antichain.is_empty() {
        total
    } else {
        width_within(p, &region)
    };
    let inc_widths: Vec<usize> = members
        .iter()
        .map(|&x| {
            let mut s = p.inc_of(x);
            s.intersect_with(&region);
            width_within(p, &s)
        })
        .collect();

    if width < t {
        return Err(Error::InternalInconsistency(format!(
            "reduced poset has width {width} below threshold {t}"
        )));
    }
    if let Some(i) = inc_widths.iter().position(|&w| w >= t) {
        return Err(Error::InternalInconsistency(format!(
            "Inc of {} in the reduced poset has width {} ≥ {t}",
            members[i], inc_widths[i]
        )));
    }
    Ok(Claim1Result {
        members,
        antichain,
        width,
        inc_widths,
    })
}

/// The two set inclusions and the width bound behind the cut at `y`,
/// for `x_0 < y` in one Inc-component of `P`, with `Q = ↑x_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim2Report {
    pub x0: usize,
    pub y: usize,
    /// Shortest Inc-path `x_0, …, x_{n+1} = y`.
    pub path: Vec<usize>,
    pub interval: Vec<usize>,
    /// `[x_0, y] ⊆ Inc_{x_1} ∪ … ∪ Inc_{x_n}`.
    pub inclusion1_ok: bool,
    /// `Q ∖ ↑y ⊆ [x_0, y] ∪ Inc_y`.
    pub inclusion2_ok: bool,
    /// `Cov(Q ∖ ↑y)`.
    pub lhs: usize,
    /// `Cov(Inc_{x_1}) + … + Cov(Inc_{x_n}) + Cov(Inc_y)`.
    pub rhs: usize,
    pub bound_ok: bool,
}

impl Claim2Report {
    pub fn holds(&self) -> bool {
        self.inclusion1_ok && self.inclusion2_ok && self.bound_ok
    }
}

pub fn cover_bound_report(p: &Poset, x0: usize, y: usize) -> Result<Claim2Report> {
    p.check_index(x0)?;
    p.check_index(y)?;
    if !p.lt(x0, y) {
        return Err(Error::precondition(format!("{x0} < {y} does not hold")));
    }
    let path = inc_distance_path(p, x0, y)?
        .ok_or_else(|| {
            Error::precondition(format!("{x0} and {y} lie in different Inc-components"))
        })?
        .path;
    let inner = &path[1..path.len() - 1];

    let interval = p.interval(x0, y)?;
    let mut union_inner = p.empty_set();
    for &z in inner {
        union_inner.union_with(&p.inc_of(z));
    }
    let inclusion1_ok = interval.is_subset(&union_inner);

    let mut rest = p.up_closure(&[x0]);
    rest.difference_with(&p.up_closure(&[y]));
    let inc_y = p.inc_of(y);
    let mut allowed = interval.clone();
    allowed.union_with(&inc_y);
    let inclusion2_ok = rest.is_subset(&allowed);

    let lhs = width_within(p, &rest);
    let rhs = inner
        .iter()
        .map(|&z| width_within(p, &p.inc_of(z)))
        .sum::<usize>()
        + width_within(p, &inc_y);

    Ok(Claim2Report {
        x0,
        y,
        path,
        interval: interval.ones().collect(),
        inclusion1_ok,
        inclusion2_ok,
        lhs,
        rhs,
        bound_ok: lhs <= rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionCase {
    /// Cut at `↑x_0`.
    Case1,
    /// Cut at `↓x_0`: the dual of the result satisfies the case-1 profile.
    Case1Dual,
    /// Every Inc-component of the reduced poset has width below `t`.
    Case2,
}

/// `Cov(↓x)`, `Cov(↑x)`, `Cov(Inc_x)` inside the chosen component, and
/// whether their sum bounds the component's width.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementProfile {
    pub element: usize,
    pub down: usize,
    pub up: usize,
    pub inc: usize,
    pub subadditive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionOutcome {
    pub threshold: usize,
    pub case: ReductionCase,
    pub claim1: Claim1Result,
    /// Widths of the Inc-components of the reduced poset, bottom to top.
    pub component_widths: Vec<usize>,
    /// Index (in component order) of the component that was cut.
    pub component: Option<usize>,
    /// Members of that component.
    pub component_members: Vec<usize>,
    pub profiles: Vec<ElementProfile>,
    /// Width of the component with `↑x` removed (`↓x` in the dual case), per
    /// member.
    pub component_profile: Vec<(usize, usize)>,
    pub x0: Option<usize>,
    /// `Q' = ↑x_0` or `↓x_0` inside the component, as original indices.
    pub members: Vec<usize>,
    /// `Cov(Q' ∖ ↑x)` (`↓x` in the dual case) for every `x ∈ Q'`.
    pub profile: Vec<(usize, usize)>,
}

impl ReductionOutcome {
    /// The final induced subposet with its map into the input.
    pub fn subposet(&self, p: &Poset) -> (Poset, Vec<usize>) {
        p.induced(&self.members).expect("members are valid indices")
    }
}

/// Runs the antichain reduction, splits the result into Inc-components and,
/// if one of them still has width at least `t`, cuts it at the element with
/// the widest qualifying up-set (or down-set, when that is strictly wider).
pub fn reduce(p: &Poset, t: usize) -> Result<ReductionOutcome> {
    let claim1 = claim1_reduce(p, t)?;
    let (q, map) = claim1.subposet(p);
    let d = inc_components(&q);
    let component_widths: Vec<usize> = d
        .parts
        .iter()
        .map(|part| width_within(&q, &set_of(&q, part)))
        .collect();

    let Some(ci) = component_widths.iter().position(|&w| w >= t) else {
        return Ok(ReductionOutcome {
            threshold: t,
            case: ReductionCase::Case2,
            claim1,
            component_widths,
            component: None,
            component_members: Vec::new(),
            profiles: Vec::new(),
            component_profile: Vec::new(),
            x0: None,
            members: Vec::new(),
            profile: Vec::new(),
        });
    };

    let (r, rmap) = q.induced(&d.parts[ci])?;
    let r_width = component_widths[ci];
    let profiles: Vec<ElementProfile> = (0..r.len())
        .map(|x| {
            let down = width_within(&r, &r.down_closure(&[x]));
            let up = width_within(&r, &r.up_closure(&[x]));
            let inc = width_within(&r, &r.inc_of(x));
            ElementProfile {
                element: map[rmap[x]],
                down,
                up,
                inc,
                subadditive: r_width <= down + up + inc,
            }
        })
        .collect();
    if let Some(bad) = profiles.iter().find(|e| !e.subadditive) {
        return Err(Error::InternalInconsistency(format!(
            "subadditivity fails at element {}",
            bad.element
        )));
    }

    // Subadditivity guarantees max(up, down) ≥ ⌈(t - inc) / 2⌉ everywhere.
    let need = |e: &ElementProfile| t.saturating_sub(e.inc).div_ceil(2);
    let best = |key: fn(&ElementProfile) -> usize| {
        (0..r.len())
            .filter(|&x| key(&profiles[x]) >= need(&profiles[x]))
            .max_by_key(|&x| (key(&profiles[x]), std::cmp::Reverse(x)))
    };
    // A minimal element has down = 1, so its up-width is at least
    // max(1, t - inc - 1), which meets ⌈(t - inc) / 2⌉.
    let best_up = best(|e| e.up).expect("minimal elements qualify upward");
    let best_down = best(|e| e.down);
    let dual = best_down.is_some_and(|x| profiles[x].down > profiles[best_up].up);
    let (case, x0) = if dual {
        (ReductionCase::Case1Dual, best_down.unwrap())
    } else {
        (ReductionCase::Case1, best_up)
    };

    // Q ∖ ↑x in the primal case, Q ∖ ↓x in the dual one.
    let cut = |x: usize| {
        if dual {
            r.down_closure(&[x])
        } else {
            r.up_closure(&[x])
        }
    };
    let width_without = |base: &FixedBitSet, x: usize| {
        let mut s = base.clone();
        s.difference_with(&cut(x));
        width_within(&r, &s)
    };
    let whole = r.full_set();
    let component_profile = (0..r.len())
        .map(|x| (map[rmap[x]], width_without(&whole, x)))
        .collect();
    let kept = cut(x0);
    let profile = kept
        .ones()
        .map(|x| (map[rmap[x]], width_without(&kept, x)))
        .collect();

    Ok(ReductionOutcome {
        threshold: t,
        case,
        claim1,
        component_widths,
        component: Some(ci),
        component_members: rmap.iter().map(|&i| map[i]).collect(),
        profiles,
        component_profile,
        x0: Some(map[rmap[x0]]),
        members: kept.ones().map(|x| map[rmap[x]]).collect(),
        profile,
    })
}
