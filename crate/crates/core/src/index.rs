//! Combinatorial index formulas and the full analysis pipeline.
//!
//! For affine flavors the value is `ind q̄` with `q̄ = q̂ / kC`;
//! `ind q̂ = ind q̄ + 1`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg;
use crate::meander::{build_graph, components, Component, CutPair, MeanderGraph};
use crate::roots::{Family, Flavor};
use crate::tyj::{tyj_index, TyjReport};

/// Component counts entering the formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Census {
    pub cycles: usize,
    pub segments: usize,
    /// Segments that are not σ-stable (B/C families; 0 otherwise).
    pub nonsigma_segments: usize,
}

impl Census {
    pub fn of(comps: &[Component]) -> Self {
        let mut c = Census::default();
        for comp in comps {
            if comp.is_cycle() {
                c.cycles += 1;
            } else {
                c.segments += 1;
                if comp.sigma_stable == Some(false) {
                    c.nonsigma_segments += 1;
                }
            }
        }
        c
    }

    fn half_nonsigma_segments(&self) -> i64 {
        assert!(
            self.nonsigma_segments.is_even(),
            "odd number ({}) of non-σ-stable segments",
            self.nonsigma_segments
        );
        (self.nonsigma_segments / 2) as i64
    }
}

/// 2 if some cycle has an odd number of affine arcs, else 0.
pub fn iota(comps: &[Component]) -> i64 {
    if comps.iter().any(|c| c.is_cycle() && c.affine_arcs % 2 == 1) {
        2
    } else {
        0
    }
}

/// `2·#cycles + #segments − ι` (type Ã).
pub fn index_affine_a(comps: &[Component], iota: i64) -> i64 {
    let c = Census::of(comps);
    2 * c.cycles as i64 + c.segments as i64 - iota
}

/// `1 + #cycles + ½·#non-σ-stable segments − ι` (type C̃).
pub fn index_affine_c(comps: &[Component], iota: i64) -> i64 {
    let c = Census::of(comps);
    1 + c.cycles as i64 + c.half_nonsigma_segments() - iota
}

/// `#segments + 2·#cycles − 1` (seaweeds in `sl_n`).
pub fn index_finite_a(comps: &[Component]) -> i64 {
    let c = Census::of(comps);
    c.segments as i64 + 2 * c.cycles as i64 - 1
}

/// `#cycles + ½·#non-σ-stable segments` (seaweeds in `so_{2r+1}`, `sp_{2r}`).
pub fn index_finite_bc(comps: &[Component]) -> i64 {
    let c = Census::of(comps);
    c.cycles as i64 + c.half_nonsigma_segments()
}

/// Dispatches to the formula of the flavor's family.
pub fn combinatorial_index(flavor: Flavor, comps: &[Component]) -> i64 {
    match flavor.family {
        Family::AffineA => index_affine_a(comps, iota(comps)),
        Family::AffineC => index_affine_c(comps, iota(comps)),
        Family::FiniteA => index_finite_a(comps),
        Family::FiniteB | Family::FiniteC => index_finite_bc(comps),
    }
}

/// `ind q̄` for `I = {0}`, `I′ = {d}` in `ŝl_n`: `gcd(n, 2d) − ι`, with
/// `ι = 0` iff `gcd(n, 2d)` divides `d`.
pub fn closed_form_gcd(n: usize, d: usize) -> Result<i64> {
    if n < 2 || d == 0 || 2 * d > n {
        return Err(Error::OutOfRange(format!(
            "closed form needs n >= 2 and 1 <= d <= n/2, got n={n} d={d}"
        )));
    }
    let g = n.gcd(&(2 * d));
    let iota = if d.is_multiple_of(g) { 0 } else { 2 };
    Ok(g as i64 - iota)
}

/// `ind q̄` for maximal cuts `I = {i}`, `I′ = {j}` in type C̃_r.
pub fn closed_form_cmax(r: usize, i: usize, j: usize) -> Result<i64> {
    if r == 0 || i > r || j > r {
        return Err(Error::OutOfRange(format!(
            "closed form needs r >= 1 and 0 <= i, j <= r, got r={r} i={i} j={j}"
        )));
    }
    Ok(if i == j { r as i64 + 1 } else { r as i64 - 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteConfig {
    pub trials: u32,
    pub seed: u64,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig {
            trials: 5,
            seed: liealg::DEFAULT_SEED,
        }
    }
}

/// Trial count used when the first brute-force estimate disagrees.
pub const BRUTE_RETRY_TRIALS: u32 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracles {
    pub tyj: bool,
    pub brute: Option<BruteConfig>,
}

impl Default for Oracles {
    fn default() -> Self {
        Oracles { tyj: true, brute: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub flavor: Flavor,
    pub cuts: CutPair,
    pub census: Census,
    pub iota: i64,
    pub index_combinatorial: i64,
    pub index_tyj: Option<i64>,
    pub index_brute: Option<i64>,
}

impl IndexReport {
    pub fn tyj_agrees(&self) -> Option<bool> {
        self.index_tyj.map(|v| v == self.index_combinatorial)
    }

    pub fn brute_agrees(&self) -> Option<bool> {
        self.index_brute.map(|v| v == self.index_combinatorial)
    }

    /// All oracles that ran agree with the combinatorial value.
    pub fn agrees(&self) -> bool {
        self.tyj_agrees() != Some(false) && self.brute_agrees() != Some(false)
    }

    /// Index of `q̂ = q̄ ⊕ kC` for affine flavors; the index of `q` itself
    /// for finite ones.
    pub fn index_of_qhat(&self) -> i64 {
        if self.flavor.is_affine() {
            self.index_combinatorial + 1
        } else {
            self.index_combinatorial
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: MeanderGraph,
    pub components: Vec<Component>,
    pub tyj: Option<TyjReport>,
    pub report: IndexReport,
}

/// Brute-force index with the retry policy: a disagreement with `expected`
/// at the configured trial count is rerun with [`BRUTE_RETRY_TRIALS`].
pub fn brute_with_retry(flavor: Flavor, cuts: &CutPair, cfg: BruteConfig, expected: i64) -> Result<i64> {
    let sc = liealg::realize(flavor, cuts)?;
    let first = liealg::brute_index(&sc, cfg.trials, cfg.seed) as i64;
    if first == expected || cfg.trials >= BRUTE_RETRY_TRIALS {
        return Ok(first);
    }
    Ok(liealg::brute_index(&sc, BRUTE_RETRY_TRIALS, cfg.seed) as i64)
}

/// Builds the graph, evaluates the formula and runs the requested oracles.
pub fn analyze(flavor: Flavor, cuts: &CutPair, oracles: &Oracles) -> Result<Analysis> {
    if oracles.brute.is_some() && !flavor.family.is_type_a() {
        return Err(Error::UnsupportedFlavor {
            family: flavor.family,
            what: "the brute-force oracle (type A only)",
        });
    }
    let graph = build_graph(flavor, cuts)?;
    let comps = components(&graph);
    let index_combinatorial = combinatorial_index(flavor, &comps);
    let iota = if flavor.is_affine() { iota(&comps) } else { 0 };
    let tyj = oracles.tyj.then(|| tyj_index(&graph));
    let index_brute = oracles
        .brute
        .map(|cfg| brute_with_retry(flavor, cuts, cfg, index_combinatorial))
        .transpose()?;
    let report = IndexReport {
        flavor,
        cuts: cuts.clone(),
        census: Census::of(&comps),
        iota,
        index_combinatorial,
        index_tyj: tyj.map(|t| t.index),
        index_brute,
    };
    Ok(Analysis {
        graph,
        components: comps,
        tyj,
        report,
    })
}
