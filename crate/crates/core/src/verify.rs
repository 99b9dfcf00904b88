//! Invariant suites and exhaustive sweeps over all cut pairs of a flavor.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_rational::Rational64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::index::{analyze, Analysis, BruteConfig, Census, Oracles};
use crate::meander::{build_graph, Component, CutPair, MeanderGraph, Side};
use crate::roots::{full_cascade_anchor, to_epsilon, Family, Flavor, RootVector};
use crate::tyj::{orbit_representative, rank_of, TyjReport};

/// A failed check on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub flavor: Flavor,
    pub cuts: CutPair,
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {} ({})", self.flavor, self.cuts, self.check, self.detail)
    }
}

impl std::error::Error for Failure {}

struct Ctx<'a> {
    g: &'a MeanderGraph,
}

impl Ctx<'_> {
    fn ensure(&self, ok: bool, check: &'static str, detail: impl FnOnce() -> String) -> Result<(), Failure> {
        if ok {
            Ok(())
        } else {
            Err(Failure {
                flavor: self.g.flavor,
                cuts: self.g.cuts.clone(),
                check,
                detail: detail(),
            })
        }
    }
}

/// ε-image of a vertex: `ε_v` in type A; `ε_v` or `−ε_{N+1−v}` in type C.
fn vertex_epsilon(flavor: Flavor, v: usize) -> (usize, i64) {
    let n = flavor.vertex_count();
    if flavor.family.is_type_a() || v <= flavor.rank {
        (v - 1, 1)
    } else {
        (n - v, -1)
    }
}

/// Runs every per-graph invariant.
pub fn invariant_suite(g: &MeanderGraph, comps: &[Component], tyj: &TyjReport) -> Result<(), Failure> {
    let cx = Ctx { g };
    let flavor = g.flavor;
    let n = flavor.vertex_count();

    cx.ensure(g.degree_bound_holds(), "degree-bound", || {
        "vertex with two arcs on one side or a loop".into()
    })?;

    let mut covered = vec![0_u32; n + 1];
    for c in comps {
        let shape_ok = if c.is_cycle() {
            c.arcs.len() == c.vertices.len() && c.vertices.len() >= 2
        } else {
            c.arcs.len() + 1 == c.vertices.len()
        };
        cx.ensure(shape_ok, "component-shape", || format!("{:?}", c.vertices))?;
        for &v in &c.vertices {
            covered[v] += 1;
        }
    }
    cx.ensure(covered[1..].iter().all(|&k| k == 1), "component-partition", || {
        "vertices not partitioned".into()
    })?;

    for a in &g.arcs {
        let max = if flavor.family.is_type_a() { 1 } else { 2 };
        cx.ensure(
            a.shadow.0.iter().all(|&c| (0..=max).contains(&c)),
            "shadow-multiplicity",
            || format!("arc {} shadow {:?}", a.id, a.shadow.0),
        )?;
        if flavor.is_affine() {
            cx.ensure(a.shadow.0[0] <= 1, "affine-arc", || {
                format!("arc {} crosses α₀ twice", a.id)
            })?;
        }
        if flavor.family != Family::FiniteB {
            let eps = to_epsilon(flavor, &a.shadow).expect("shadow has flavor length");
            let mut expected = vec![0_i64; flavor.epsilon_len()];
            let (i, s) = vertex_epsilon(flavor, a.from);
            expected[i] += s;
            let (j, t) = vertex_epsilon(flavor, a.to);
            expected[j] -= t;
            let delta = if flavor.is_affine() { a.shadow.0[0] } else { 0 };
            let ok = eps
                .eps
                .iter()
                .zip(&expected)
                .all(|(x, &y)| *x == Rational64::from_integer(y))
                && eps.delta == Rational64::from_integer(delta);
            cx.ensure(ok, "shadow-consistency", || {
                format!("arc {} ({}→{})", a.id, a.from, a.to)
            })?;
        }
    }

    if flavor.has_sigma() {
        for a in &g.arcs {
            let image = g.sigma_image(a);
            cx.ensure(
                image.is_some_and(|b| b.shadow == a.shadow),
                "sigma-equivariance",
                || format!("arc {} ({}→{})", a.id, a.from, a.to),
            )?;
            if flavor.is_affine() && !a.is_sigma_stable(flavor) {
                cx.ensure(!a.is_affine(flavor), "sigma-affine", || {
                    format!("non-σ-stable arc {} is affine", a.id)
                })?;
            }
        }
        for c in comps {
            let set: BTreeSet<usize> = c.vertices.iter().copied().collect();
            let image: BTreeSet<usize> = set.iter().map(|&v| n + 1 - v).collect();
            let stable = c.sigma_stable == Some(true);
            cx.ensure(stable == (set == image), "lmC-stable-flag", || {
                format!("{:?}", c.vertices)
            })?;
            cx.ensure(stable || set.is_disjoint(&image), "lmC-components", || {
                format!("{:?}", c.vertices)
            })?;
            if stable {
                let k = c.arcs.iter().filter(|&&id| g.arcs[id].is_sigma_stable(flavor)).count();
                let want = if c.is_cycle() { 2 } else { 1 };
                cx.ensure(k == want, "lmC-stable-arcs", || {
                    format!("{:?} has {k} σ-stable arcs, expected {want}", c.vertices)
                })?;
            }
        }
        let census = Census::of(comps);
        cx.ensure(
            census.nonsigma_segments.is_multiple_of(2),
            "nonsigma-segment-parity",
            || census.nonsigma_segments.to_string(),
        )?;
    }

    cx.ensure(
        tyj.rank_outer == tyj.orbits_outer && tyj.rank_inner == tyj.orbits_inner,
        "cascade-independence",
        || format!("{tyj:?}"),
    )?;

    let delta = flavor.delta();
    for c in comps {
        if c.is_cycle() {
            let mut sum = flavor.zero_root();
            for (id, sign) in c.traversal_signs(g) {
                sum = &sum + &g.arcs[id].shadow.scaled(sign);
            }
            let k = match &delta {
                Some(d) => sum.multiple_of(d).or(sum.is_zero().then_some(0)),
                None => sum.is_zero().then_some(0),
            };
            cx.ensure(k.is_some(), "cycle-relation", || {
                format!("{:?} sums to {:?}", c.vertices, sum.0)
            })?;
            let k = k.unwrap();
            cx.ensure((k % 2 != 0) == (c.affine_arcs % 2 == 1), "cycle-parity", || {
                format!("{:?}: k={k}, {} affine arcs", c.vertices, c.affine_arcs)
            })?;
        } else {
            // Independence of β modulo δ, one vector per σ-orbit.
            let reps: BTreeSet<usize> = c.arcs.iter().map(|&id| orbit_representative(g, id)).collect();
            let mut rows: Vec<&RootVector> = reps.iter().map(|&id| &g.arcs[id].shadow).collect();
            let expected = rows.len();
            let got = match &delta {
                Some(d) => {
                    rows.push(d);
                    rank_of(&rows) - 1
                }
                None => rank_of(&rows),
            };
            cx.ensure(got == expected, "segment-independence", || {
                format!("{:?}: rank {got}, expected {expected}", c.vertices)
            })?;
        }
    }

    let iota = crate::index::iota(comps);
    cx.ensure(iota == 0 || iota == 2, "iota-range", || iota.to_string())?;
    Ok(())
}

/// Outer β-set of the full-Levi graph equals `{ε_i − ε_{n+1−i}}` (type A)
/// or `{2ε_i}` (type C).
pub fn check_full_levi(flavor: Flavor) -> Result<(), Failure> {
    let g = build_graph(flavor, &CutPair::default()).expect("empty cuts are valid for finite flavors");
    let anchor: BTreeSet<RootVector> = match full_cascade_anchor(flavor) {
        Ok(v) => v.into_iter().collect(),
        Err(_) => return Ok(()),
    };
    let betas: BTreeSet<RootVector> = g.arcs_on(Side::Outer).map(|a| a.shadow.clone()).collect();
    Ctx { g: &g }.ensure(betas == anchor, "full-levi-anchor", || {
        format!("{betas:?} vs {anchor:?}")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyConfig {
    pub brute: Option<BruteConfig>,
}

/// Per-instance result of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub index: i64,
    pub brute_checked: bool,
}

/// Full check of one instance: invariants, formula vs. TYJ, optional brute force.
pub fn check_instance(flavor: Flavor, cuts: &CutPair, cfg: &VerifyConfig) -> Result<Outcome, Failure> {
    let brute = cfg.brute.filter(|_| flavor.family.is_type_a());
    let fail = |check: &'static str, detail: String| Failure {
        flavor,
        cuts: cuts.clone(),
        check,
        detail,
    };
    let Analysis {
        graph,
        components: comps,
        tyj,
        report,
    } = analyze(flavor, cuts, &Oracles { tyj: true, brute }).map_err(|e| fail("analyze", e.to_string()))?;
    let tyj = tyj.expect("tyj requested");
    invariant_suite(&graph, &comps, &tyj)?;
    if report.tyj_agrees() != Some(true) {
        return Err(fail(
            "tyj-agreement",
            format!("combinatorial {} vs tyj {}", report.index_combinatorial, tyj.index),
        ));
    }
    if report.brute_agrees() == Some(false) {
        return Err(fail(
            "brute-agreement",
            format!(
                "combinatorial {} vs brute {}",
                report.index_combinatorial,
                report.index_brute.unwrap()
            ),
        ));
    }
    Ok(Outcome {
        index: report.index_combinatorial,
        brute_checked: report.index_brute.is_some(),
    })
}

fn mask_to_set(flavor: Flavor, mask: u64) -> BTreeSet<usize> {
    flavor
        .root_indices()
        .filter(|&i| mask >> flavor.slot(i) & 1 == 1)
        .collect()
}

fn valid_masks(flavor: Flavor) -> Vec<u64> {
    let lo = if flavor.is_affine() { 1 } else { 0 };
    (lo..1_u64 << flavor.root_count()).collect()
}

/// Number of valid `(I, I′)` pairs of a flavor.
pub fn pair_count(flavor: Flavor) -> u128 {
    let k = valid_masks_len(flavor);
    k * k
}

fn valid_masks_len(flavor: Flavor) -> u128 {
    let all = 1_u128 << flavor.root_count();
    if flavor.is_affine() {
        all - 1
    } else {
        all
    }
}

/// All valid cut pairs, outer-major in increasing bitmask order.
pub fn enumerate_cut_pairs(flavor: Flavor) -> Vec<CutPair> {
    let masks = valid_masks(flavor);
    masks
        .iter()
        .flat_map(|&o| {
            masks.iter().map(move |&i| CutPair {
                outer: mask_to_set(flavor, o),
                inner: mask_to_set(flavor, i),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlavorSummary {
    pub flavor: Flavor,
    pub pairs: usize,
    pub tyj_agreements: usize,
    pub brute_checked: usize,
    pub brute_agreements: usize,
    pub failures: usize,
    /// First failing instance in enumeration order.
    pub first_failure: Option<Failure>,
}

impl FlavorSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn run_all<T: Send, R: Send>(items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Exhaustive check of every valid cut pair of `flavor`, including swap
/// symmetry, cyclic rotation invariance (type Ã) and the full-Levi anchor.
pub fn sweep_flavor(flavor: Flavor, cfg: &VerifyConfig) -> FlavorSummary {
    let masks = valid_masks(flavor);
    let k = masks.len();
    let pairs = enumerate_cut_pairs(flavor);
    let results = run_all(pairs.clone(), |cuts| check_instance(flavor, &cuts, cfg));

    let mut failures: Vec<Option<Failure>> = results.iter().map(|r| r.as_ref().err().cloned()).collect();
    let index_at = |o: usize, i: usize| results[o * k + i].as_ref().ok().map(|x| x.index);
    let pos = |mask: u64| masks.binary_search(&mask).expect("valid mask");

    for o in 0..k {
        for i in 0..k {
            let here = o * k + i;
            if failures[here].is_some() {
                continue;
            }
            let value = index_at(o, i);
            let mismatch = |check: &'static str, other: Option<i64>| {
                (other.is_some() && other != value).then(|| Failure {
                    flavor,
                    cuts: pairs[here].clone(),
                    check,
                    detail: format!("{value:?} vs {other:?}"),
                })
            };
            let mut fail = mismatch("swap-symmetry", index_at(i, o));
            if fail.is_none() && flavor.family == Family::AffineA {
                let n = flavor.rank as u32;
                let rot = |m: u64| ((m << 1) | (m >> (n - 1))) & ((1 << n) - 1);
                fail = mismatch("rotation-invariance", index_at(pos(rot(masks[o])), pos(rot(masks[i]))));
            }
            failures[here] = fail;
        }
    }

    let levi = if flavor.is_affine() {
        Ok(())
    } else {
        check_full_levi(flavor)
    };
    let mut first_failure = failures.iter().flatten().next().cloned();
    let mut failure_count = failures.iter().flatten().count();
    if let Err(f) = levi {
        failure_count += 1;
        first_failure.get_or_insert(f);
    }
    FlavorSummary {
        flavor,
        pairs: pairs.len(),
        tyj_agreements: results.iter().filter(|r| r.is_ok()).count(),
        brute_checked: results.iter().flatten().filter(|o| o.brute_checked).count(),
        brute_agreements: results.iter().flatten().filter(|o| o.brute_checked).count(),
        failures: failure_count,
        first_failure,
    }
}

/// Sweeps every rank from the family minimum up to `max_rank`.
pub fn sweep_family(family: Family, max_rank: usize, cfg: &VerifyConfig) -> Vec<FlavorSummary> {
    (family.min_rank()..=max_rank)
        .map(|rank| sweep_flavor(Flavor::new(family, rank).expect("rank above minimum"), cfg))
        .collect()
}

/// Plain-text summary with one line per flavor; byte-identical across runs.
pub fn render_summary(summaries: &[FlavorSummary]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<9} {:>4} {:>8} {:>9} {:>11} {:>8}  status",
        "family", "rank", "pairs", "tyj-agree", "brute-agree", "failures"
    )
    .unwrap();
    for s in summaries {
        let brute = if s.brute_checked > 0 {
            format!("{}/{}", s.brute_agreements, s.brute_checked)
        } else {
            "-".into()
        };
        writeln!(
            out,
            "{:<9} {:>4} {:>8} {:>9} {:>11} {:>8}  {}",
            s.flavor.family.as_str(),
            s.flavor.rank,
            s.pairs,
            s.tyj_agreements,
            brute,
            s.failures,
            if s.passed() { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
    let total: usize = summaries.iter().map(|s| s.pairs).sum();
    let failures: usize = summaries.iter().map(|s| s.failures).sum();
    writeln!(out, "total: {total} pairs, {failures} failures").unwrap();
    if let Some(f) = summaries.iter().find_map(|s| s.first_failure.as_ref()) {
        writeln!(out, "first counterexample: {f}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts() {
        assert_eq!(pair_count(Flavor::affine_a(8).unwrap()), 65_025);
        assert_eq!(pair_count(Flavor::finite_a(3).unwrap()), 16);
        assert_eq!(enumerate_cut_pairs(Flavor::affine_c(1).unwrap()).len(), 9);
        assert_eq!(enumerate_cut_pairs(Flavor::finite_b(2).unwrap()).len(), 16);
    }

    #[test]
    fn small_sweeps_pass() {
        for family in Family::ALL {
            for s in sweep_family(family, family.min_rank() + 2, &VerifyConfig::default()) {
                assert!(s.passed(), "{}", render_summary(std::slice::from_ref(&s)));
                assert_eq!(s.tyj_agreements, s.pairs);
            }
        }
    }

    #[test]
    fn full_levi_anchor_holds() {
        for n in 2..10 {
            check_full_levi(Flavor::finite_a(n).unwrap()).unwrap();
        }
        for r in 1..7 {
            check_full_levi(Flavor::finite_c(r).unwrap()).unwrap();
        }
    }

    #[test]
    fn summary_reports_failures() {
        let f = Failure {
            flavor: Flavor::affine_a(3).unwrap(),
            cuts: CutPair::new([0], [1]),
            check: "tyj-agreement",
            detail: "1 vs 2".into(),
        };
        let s = FlavorSummary {
            flavor: f.flavor,
            pairs: 49,
            tyj_agreements: 48,
            brute_checked: 0,
            brute_agreements: 0,
            failures: 1,
            first_failure: Some(f),
        };
        let text = render_summary(&[s]);
        assert!(text.contains("FAIL"));
        assert!(text.contains("first counterexample: affine-a(n=3) I={0} I'={1}: tyj-agreement"));
    }

    #[test]
    fn vertex_epsilon_signs() {
        let c = Flavor::affine_c(3).unwrap();
        assert_eq!(vertex_epsilon(c, 2), (1, 1));
        assert_eq!(vertex_epsilon(c, 5), (1, -1));
        assert_eq!(vertex_epsilon(Flavor::affine_a(4).unwrap(), 4), (3, 1));
    }
}
