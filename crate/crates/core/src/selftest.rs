//! Seeded invariant sweep across all modules.

use rand::Rng;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::cover::{brute_force_max_antichain, verify_dilworth, width};
use crate::format::{parse_poset, write_poset};
use crate::generators::{canonical_ideal_chain, grid_upper, random_connected_inc, random_poset};
use crate::ideal_embed::{
    embed_from_ideal_chain, satisfies_layer_condition, IdealChain, IdealEmbedOutcome,
};
use crate::incgraph::{check_metric_lemma, inc_components, recompose};
use crate::patterns::{embeds, validate_embedding, SearchResult};
use crate::poset::Poset;
use crate::reduction::{claim1_reduce, cover_bound_report, reduce};
use crate::symbolic::{cov_symbolic, parse_term, realize, Caps, Cardinal, PosetTerm};

/// Pass/fail counts for one named property.
#[derive(Debug, Clone, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Description of the first failing instance.
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub instances: usize,
    pub checks: Vec<CheckTally>,
}

impl SelftestReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().map(|c| c.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }
}

struct Tally {
    checks: Vec<CheckTally>,
}

impl Tally {
    fn record(&mut self, name: &'static str, outcome: Result<(), String>) {
        let slot = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => &mut self.checks[i],
            None => {
                self.checks.push(CheckTally {
                    name,
                    passed: 0,
                    failed: 0,
                    first_failure: None,
                });
                self.checks.last_mut().unwrap()
            }
        };
        match outcome {
            Ok(()) => slot.passed += 1,
            Err(msg) => {
                slot.failed += 1;
                slot.first_failure.get_or_insert(msg);
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every property on `instances` seeded random inputs.
pub fn run_selftest(seed: u64, instances: usize) -> SelftestReport {
    let mut tally = Tally { checks: Vec::new() };
    let densities = [0.05, 0.1, 0.3];
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);

    for i in 0..instances {
        let s = seed.wrapping_add(i as u64);
        let density = densities[i % densities.len()];
        let n = 6 + i % 13;
        let p = random_poset(n, density, s).expect("density is in range");
        let tag = format!("random_poset({n}, {density}, {s})");

        tally.record(
            "order axioms",
            ensure(p.satisfies_order_axioms(), || tag.clone()),
        );
        tally.record(
            "dilworth",
            check_dilworth(&p).map_err(|e| format!("{tag}: {e}")),
        );
        tally.record(
            "duality",
            ensure(width(&p) == width(&p.dual()), || tag.clone()),
        );
        tally.record(
            "decomposition",
            check_decomposition(&p).map_err(|e| format!("{tag}: {e}")),
        );
        tally.record(
            "purity",
            check_purity(&p).map_err(|e| format!("{tag}: {e}")),
        );
        tally.record(
            "claim1",
            check_claim1(&p).map_err(|e| format!("{tag}: {e}")),
        );
        tally.record(
            "file round trip",
            ensure(
                parse_poset(&write_poset(&p, None)).map(|d| d.poset) == Ok(p.clone()),
                || tag.clone(),
            ),
        );

        let q = random_poset(4, 0.4, s ^ 0x5eed).expect("density is in range");
        tally.record(
            "pattern search",
            check_pattern(&p, &q).map_err(|e| format!("{tag}: {e}")),
        );

        let c = random_connected_inc(12, 0.35, s).expect("parameters are valid");
        let ctag = format!("random_connected_inc(12, 0.35, {s})");
        tally.record(
            "metric lemma",
            check_metric(&c).map_err(|e| format!("{ctag}: {e}")),
        );

        let k = 2 + i % 15;
        let g = grid_upper(k).expect("k is at least 2").poset;
        tally.record(
            "grid width",
            ensure(width(&g) == k / 2, || format!("grid_upper({k})")),
        );

        let gn = 4 + i % 6;
        let gm = 2 + i % (gn - 2);
        tally.record(
            "ideal chain embedding",
            check_ideal_chain(gn, gm)
                .map_err(|e| format!("canonical_ideal_chain({gn}, {gm}): {e}")),
        );

        let term = random_finite_term(&mut rng, 2);
        tally.record(
            "symbolic",
            check_term(&term).map_err(|e| format!("{term}: {e}")),
        );
    }

    SelftestReport {
        seed,
        instances,
        checks: tally.checks,
    }
}

fn check_dilworth(p: &Poset) -> Result<(), String> {
    let r = verify_dilworth(p).map_err(|e| e.to_string())?;
    ensure(r.cover_width == r.antichain_size, || {
        format!("cover {} vs antichain {}", r.cover_width, r.antichain_size)
    })?;
    if p.len() <= 12 {
        let brute = brute_force_max_antichain(p).map_err(|e| e.to_string())?;
        ensure(brute.len() == r.antichain_size, || {
            format!(
                "exhaustive antichain {} vs {}",
                brute.len(),
                r.antichain_size
            )
        })?;
    }
    Ok(())
}

fn check_decomposition(p: &Poset) -> Result<(), String> {
    let d = inc_components(p);
    d.verify(p)?;
    let back = recompose(&d).map_err(|e| e.to_string())?;
    ensure(&back == p, || "recomposition differs".into())?;
    let max_part = d.part_posets.iter().map(width).max().unwrap_or(0);
    ensure(max_part == width(p), || {
        format!("max part width {max_part} vs {}", width(p))
    })
}

fn check_purity(p: &Poset) -> Result<(), String> {
    let pure = p.is_pure().map_err(|e| e.to_string())?;
    ensure(pure == p.greatest().is_some(), || {
        format!("is_pure = {pure}")
    })?;
    if p.len() <= 12 {
        let exhaustive = p.is_pure_exhaustive().map_err(|e| e.to_string())?;
        ensure(exhaustive == pure, || {
            format!("exhaustive purity {exhaustive} vs {pure}")
        })?;
    }
    Ok(())
}

fn check_claim1(p: &Poset) -> Result<(), String> {
    let t = width(p);
    if t == 0 {
        return Ok(());
    }
    let r = claim1_reduce(p, t).map_err(|e| e.to_string())?;
    let (q, _) = r.subposet(p);
    ensure(width(&q) >= t, || {
        format!("Cov(Q) = {} below {t}", width(&q))
    })?;
    for x in 0..q.len() {
        let inc = q.inc_of(x);
        let w = crate::cover::width_within(&q, &inc);
        ensure(w < t, || format!("Cov(Inc_{x}(Q)) = {w} not below {t}"))?;
    }
    reduce(p, t).map_err(|e| e.to_string())?;
    Ok(())
}

fn check_pattern(p: &Poset, q: &Poset) -> Result<(), String> {
    match embeds(p, q) {
        SearchResult::Found(e) => ensure(validate_embedding(&e), || "invalid embedding".into()),
        SearchResult::NotFound => Ok(()),
        SearchResult::Unknown => Err("unbounded search returned Unknown".into()),
    }
}

fn check_metric(p: &Poset) -> Result<(), String> {
    for x in 0..p.len() {
        for y in p.strict_up(x).ones() {
            let m = check_metric_lemma(p, x, y).map_err(|e| e.to_string())?;
            ensure(m.holds(), || {
                format!("path lemma fails for {x} < {y}: {:?}", m.violations)
            })?;
            let c = cover_bound_report(p, x, y).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("cut bound fails for {x} < {y}"))?;
        }
    }
    Ok(())
}

fn check_ideal_chain(n: usize, m: usize) -> Result<(), String> {
    let (grid, ideals) = canonical_ideal_chain(n, m).map_err(|e| e.to_string())?;
    let chain = IdealChain::new(grid.poset, &ideals).map_err(|e| e.to_string())?;
    match embed_from_ideal_chain(&chain).map_err(|e| e.to_string())? {
        IdealEmbedOutcome::Found(e) => ensure(
            validate_embedding(&e) && satisfies_layer_condition(&chain, &e),
            || "returned map is not a layered embedding".into(),
        ),
        other => Err(format!("no embedding: {other:?}")),
    }
}

fn random_finite_term(rng: &mut impl Rng, depth: usize) -> PosetTerm {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return match rng.gen_range(0..3) {
            0 => PosetTerm::Grid(Cardinal::Finite(rng.gen_range(2..9))),
            1 => PosetTerm::Chain(Cardinal::Finite(rng.gen_range(1..6))),
            _ => PosetTerm::Antichain(rng.gen_range(1..5)),
        };
    }
    if rng.gen_bool(0.3) {
        random_finite_term(rng, depth - 1).dual()
    } else {
        let k = rng.gen_range(1..4);
        PosetTerm::LexSum((0..k).map(|_| random_finite_term(rng, depth - 1)).collect())
    }
}

fn check_term(t: &PosetTerm) -> Result<(), String> {
    let back = parse_term(&t.to_string()).map_err(|e| e.to_string())?;
    ensure(&back == t, || "printing does not round trip".into())?;
    let p = realize(t, &Caps::default()).map_err(|e| e.to_string())?;
    let symbolic = cov_symbolic(t);
    let finite = Cardinal::Finite(width(&p) as u64);
    ensure(symbolic == finite, || {
        format!("symbolic {symbolic} vs cover {finite}")
    })
}
