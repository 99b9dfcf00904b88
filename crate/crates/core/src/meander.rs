//! Meander graphs of seaweed subalgebras.
//!
//! For each side (outer for `S`, inner for `S′`) the boundary arcs labeled by
//! removed simple roots are deleted. Every remaining path `j₁, …, j_m` of the
//! boundary contributes the nested arcs `(j_i, j_{m+1−i})`, oriented from
//! `j_i` to `j_{m+1−i}`; the shadow of such an arc is the boundary path
//! between its endpoints, and its β-vector is the sum of the shadow's labels.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{labeling, CircleLabeling, Flavor, RootVector};

/// The removed simple-root index sets `I` (outer) and `I′` (inner).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CutPair {
    pub outer: BTreeSet<usize>,
    pub inner: BTreeSet<usize>,
}

impl CutPair {
    pub fn new(outer: impl IntoIterator<Item = usize>, inner: impl IntoIterator<Item = usize>) -> Self {
        CutPair {
            outer: outer.into_iter().collect(),
            inner: inner.into_iter().collect(),
        }
    }

    /// Builds the cut pair from the retained sets `S` and `S′`.
    pub fn from_kept(
        flavor: Flavor,
        kept_outer: impl IntoIterator<Item = usize>,
        kept_inner: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let complement = |kept: BTreeSet<usize>, side: &'static str| -> Result<BTreeSet<usize>> {
            if let Some(&bad) = kept.iter().find(|i| !flavor.root_indices().contains(i)) {
                return Err(Error::CutOutOfRange {
                    side,
                    index: bad,
                    lo: flavor.first_root(),
                    hi: flavor.root_rank(),
                });
            }
            Ok(flavor.root_indices().filter(|i| !kept.contains(i)).collect())
        };
        let cuts = CutPair {
            outer: complement(kept_outer.into_iter().collect(), "outer")?,
            inner: complement(kept_inner.into_iter().collect(), "inner")?,
        };
        cuts.validate(flavor)?;
        Ok(cuts)
    }

    pub fn swapped(&self) -> CutPair {
        CutPair {
            outer: self.inner.clone(),
            inner: self.outer.clone(),
        }
    }

    pub fn get(&self, side: Side) -> &BTreeSet<usize> {
        match side {
            Side::Outer => &self.outer,
            Side::Inner => &self.inner,
        }
    }

    pub fn validate(&self, flavor: Flavor) -> Result<()> {
        for side in Side::BOTH {
            let set = self.get(side);
            if flavor.is_affine() && set.is_empty() {
                return Err(Error::EmptyAffineCut { side: side.as_str() });
            }
            if let Some(&bad) = set.iter().find(|i| !flavor.root_indices().contains(i)) {
                return Err(Error::CutOutOfRange {
                    side: side.as_str(),
                    index: bad,
                    lo: flavor.first_root(),
                    hi: flavor.root_rank(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for CutPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &BTreeSet<usize>| s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "I={{{}}} I'={{{}}}", show(&self.outer), show(&self.inner))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Outer,
    Inner,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Outer, Side::Inner];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Outer => "outer",
            Side::Inner => "inner",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    pub side: Side,
    /// Start of the shadow (first in the boundary path order).
    pub from: usize,
    pub to: usize,
    /// Label multiplicities along the shadow; equal to β(arc).
    pub shadow: RootVector,
}

impl Arc {
    pub fn beta(&self) -> &RootVector {
        &self.shadow
    }

    /// An arc is affine when its shadow passes over the α₀ boundary arc.
    pub fn is_affine(&self, flavor: Flavor) -> bool {
        flavor.is_affine() && self.shadow.0[0] >= 1
    }

    /// Whether `σ` maps the arc onto itself (`from + to = N + 1`).
    pub fn is_sigma_stable(&self, flavor: Flavor) -> bool {
        flavor.has_sigma() && self.from + self.to == flavor.vertex_count() + 1
    }

    pub fn other_end(&self, v: usize) -> usize {
        if v == self.from {
            self.to
        } else {
            debug_assert_eq!(v, self.to);
            self.from
        }
    }
}

/// Multigraph on vertices `1..=N` with outer and inner arcs.
#[derive(Debug, Clone)]
pub struct MeanderGraph {
    pub flavor: Flavor,
    pub cuts: CutPair,
    pub arcs: Vec<Arc>,
    outer_at: Vec<Option<usize>>,
    inner_at: Vec<Option<usize>>,
    degree_ok: bool,
}

impl MeanderGraph {
    pub fn vertex_count(&self) -> usize {
        self.flavor.vertex_count()
    }

    pub fn arcs_on(&self, side: Side) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(move |a| a.side == side)
    }

    /// The arc of the given side incident to `v`, if any.
    pub fn incident(&self, v: usize, side: Side) -> Option<&Arc> {
        let slots = match side {
            Side::Outer => &self.outer_at,
            Side::Inner => &self.inner_at,
        };
        slots[v - 1].map(|id| &self.arcs[id])
    }

    pub fn degree(&self, v: usize) -> usize {
        Side::BOTH.iter().filter(|&&s| self.incident(v, s).is_some()).count()
    }

    /// Every vertex meets at most one outer and one inner arc, and no arc is
    /// a loop.
    pub fn degree_bound_holds(&self) -> bool {
        self.degree_ok && self.arcs.iter().all(|a| a.from != a.to)
    }

    /// The arc `σ(e)` on the same side (B/C families only).
    pub fn sigma_image(&self, arc: &Arc) -> Option<&Arc> {
        if !self.flavor.has_sigma() {
            return None;
        }
        let n = self.vertex_count();
        let (from, to) = (n + 1 - arc.to, n + 1 - arc.from);
        self.incident(from, arc.side).filter(|b| b.from == from && b.to == to)
    }
}

/// One maximal path `j₁, …, j_m` of the boundary after deleting cut arcs,
/// with the labels of its `m − 1` boundary arcs.
#[derive(Debug, Clone)]
struct BoundaryPath {
    vertices: Vec<usize>,
    labels: Vec<usize>,
}

fn boundary_paths(lab: &CircleLabeling, cut: &BTreeSet<usize>) -> Vec<BoundaryPath> {
    let n = lab.flavor.vertex_count();
    let deleted = |p: usize| lab.arc_from(p).is_none_or(|a| cut.contains(&a.label));
    let walk = |start: usize| {
        let mut path = BoundaryPath {
            vertices: vec![start],
            labels: Vec::new(),
        };
        let mut v = start;
        while !deleted(v) {
            let arc = lab.arc_from(v).expect("kept arc exists");
            path.labels.push(arc.label);
            v = arc.head;
            path.vertices.push(v);
        }
        path
    };
    if lab.is_closed() {
        lab.arcs
            .iter()
            .filter(|a| cut.contains(&a.label))
            .map(|a| walk(a.head))
            .collect()
    } else {
        let mut paths = Vec::new();
        let mut start = 1;
        while start <= n {
            let path = walk(start);
            start = path.vertices.last().unwrap() + 1;
            paths.push(path);
        }
        paths
    }
}

/// Builds the meander graph of `(flavor, cuts)`.
pub fn build_graph(flavor: Flavor, cuts: &CutPair) -> Result<MeanderGraph> {
    let lab = labeling(flavor)?;
    cuts.validate(flavor)?;
    let n = flavor.vertex_count();
    let mut g = MeanderGraph {
        flavor,
        cuts: cuts.clone(),
        arcs: Vec::new(),
        outer_at: vec![None; n],
        inner_at: vec![None; n],
        degree_ok: true,
    };
    for side in Side::BOTH {
        for path in boundary_paths(&lab, cuts.get(side)) {
            let m = path.vertices.len();
            for i in 0..m / 2 {
                let (from, to) = (path.vertices[i], path.vertices[m - 1 - i]);
                let mut shadow = flavor.zero_root();
                for &label in &path.labels[i..m - 1 - i] {
                    shadow.0[flavor.slot(label)] += 1;
                }
                let id = g.arcs.len();
                g.arcs.push(Arc {
                    id,
                    side,
                    from,
                    to,
                    shadow,
                });
                let slots = match side {
                    Side::Outer => &mut g.outer_at,
                    Side::Inner => &mut g.inner_at,
                };
                for v in [from, to] {
                    g.degree_ok &= slots[v - 1].replace(id).is_none();
                }
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Cycle,
    Segment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Traversal order; a cycle starts at its smallest vertex and leaves it
    /// along the outer arc, a segment starts at its smaller end.
    pub vertices: Vec<usize>,
    /// Arc ids in traversal order: `arcs[k]` joins `vertices[k]` and
    /// `vertices[k + 1]` (cyclically for a cycle).
    pub arcs: Vec<usize>,
    pub affine_arcs: usize,
    /// `None` for the A families.
    pub sigma_stable: Option<bool>,
}

impl Component {
    pub fn is_cycle(&self) -> bool {
        self.kind == ComponentKind::Cycle
    }

    /// `+1` when the traversal crosses `arcs[k]` in its stored orientation.
    pub fn traversal_signs<'a>(&'a self, g: &'a MeanderGraph) -> impl Iterator<Item = (usize, i64)> + 'a {
        self.arcs.iter().enumerate().map(move |(k, &id)| {
            let sign = if g.arcs[id].from == self.vertices[k] { 1 } else { -1 };
            (id, sign)
        })
    }
}

/// Decomposes the graph into cycles and segments, ordered by smallest vertex.
pub fn components(g: &MeanderGraph) -> Vec<Component> {
    let n = g.vertex_count();
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for v in 1..=n {
        if seen[v] {
            continue;
        }
        // Collect the vertex set first to find out whether there is an end.
        let mut members = vec![v];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for side in Side::BOTH {
                if let Some(a) = g.incident(u, side) {
                    let w = a.other_end(u);
                    if !seen[w] {
                        seen[w] = true;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
        }
        let start = members.iter().copied().filter(|&u| g.degree(u) < 2).min();
        let (kind, start) = match start {
            Some(end) => (ComponentKind::Segment, end),
            None => (ComponentKind::Cycle, v),
        };
        let mut vertices = vec![start];
        let mut arcs = Vec::new();
        let mut cur = start;
        let mut prev: Option<usize> = None;
        loop {
            let next = Side::BOTH
                .iter()
                .filter_map(|&s| g.incident(cur, s))
                .find(|a| Some(a.id) != prev);
            let Some(arc) = next else { break };
            arcs.push(arc.id);
            prev = Some(arc.id);
            cur = arc.other_end(cur);
            if cur == start {
                break;
            }
            vertices.push(cur);
        }
        let affine_arcs = arcs.iter().filter(|&&id| g.arcs[id].is_affine(g.flavor)).count();
        let sigma_stable = g.flavor.has_sigma().then(|| {
            let set: BTreeSet<usize> = vertices.iter().copied().collect();
            vertices.iter().all(|&u| set.contains(&(n + 1 - u)))
        });
        out.push(Component {
            kind,
            vertices,
            arcs,
            affine_arcs,
            sigma_stable,
        });
    }
    out
}

/// Lookup of arcs by `(side, from, to)`.
pub fn arc_index(g: &MeanderGraph) -> HashMap<(Side, usize, usize), usize> {
    g.arcs.iter().map(|a| ((a.side, a.from, a.to), a.id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;

    fn pairs(g: &MeanderGraph, side: Side) -> BTreeSet<(usize, usize)> {
        g.arcs_on(side).map(|a| (a.from, a.to)).collect()
    }

    #[test]
    fn first_figure_graph() {
        let f = Flavor::affine_a(10).unwrap();
        let g = build_graph(f, &CutPair::new([9], [4, 8])).unwrap();
        assert_eq!(
            pairs(&g, Side::Outer),
            BTreeSet::from([(10, 9), (1, 8), (2, 7), (3, 6), (4, 5)])
        );
        assert_eq!(
            pairs(&g, Side::Inner),
            BTreeSet::from([(9, 4), (10, 3), (1, 2), (5, 8), (6, 7)])
        );
        assert!(g.degree_bound_holds());
        let comps = components(&g);
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_cycle());
        assert_eq!(comps[0].vertices.len(), 10);
        assert_eq!(comps[0].affine_arcs, 3);
        let affine: BTreeSet<_> = g
            .arcs
            .iter()
            .filter(|a| a.is_affine(f))
            .map(|a| (a.side, a.from, a.to))
            .collect();
        assert_eq!(
            affine,
            BTreeSet::from([(Side::Outer, 10, 9), (Side::Inner, 10, 3), (Side::Inner, 9, 4)])
        );
    }

    #[test]
    fn second_figure_graph() {
        let f = Flavor::affine_a(9).unwrap();
        let g = build_graph(f, &CutPair::new([3, 8], [2, 6])).unwrap();
        let comps = components(&g);
        assert_eq!(comps.len(), 2);
        let cycle = comps.iter().find(|c| c.is_cycle()).unwrap();
        assert_eq!(comps.iter().filter(|c| !c.is_cycle()).count(), 1);
        assert_eq!(cycle.affine_arcs, 2);
        let affine: BTreeSet<_> = cycle
            .arcs
            .iter()
            .map(|&id| &g.arcs[id])
            .filter(|a| a.is_affine(f))
            .map(|a| BTreeSet::from([a.from, a.to]))
            .collect();
        assert_eq!(affine, BTreeSet::from([BTreeSet::from([7, 2]), BTreeSet::from([8, 1])]));
    }

    #[test]
    fn full_levi_finite_a() {
        for n in 2..9 {
            let f = Flavor::finite_a(n).unwrap();
            let g = build_graph(f, &CutPair::default()).unwrap();
            let expected: BTreeSet<_> = (1..=n / 2).map(|i| (i, n + 1 - i)).collect();
            assert_eq!(pairs(&g, Side::Outer), expected);
            assert_eq!(pairs(&g, Side::Inner), expected);
            let comps = components(&g);
            assert_eq!(comps.iter().filter(|c| c.is_cycle()).count(), n / 2);
            assert_eq!(comps.iter().filter(|c| !c.is_cycle()).count(), n % 2);
        }
    }

    #[test]
    fn affine_c_zero_cut_shadows() {
        let r = 4;
        let f = Flavor::affine_c(r).unwrap();
        let g = build_graph(f, &CutPair::new([0], [0])).unwrap();
        for a in &g.arcs {
            assert_eq!(a.from + a.to, 2 * r + 1);
            // β = 2ε_i = 2α_i + … + 2α_{r−1} + α_r
            let i = a.from;
            let mut expected = f.zero_root();
            for j in i..r {
                expected.0[j] = 2;
            }
            expected.0[r] = 1;
            assert_eq!(a.shadow, expected);
        }
    }

    #[test]
    fn maximal_c_cuts_give_two_cycles() {
        let r = 5;
        let f = Flavor::affine_c(r).unwrap();
        for i in 0..=r {
            let g = build_graph(f, &CutPair::new([i], [i])).unwrap();
            let comps = components(&g);
            assert_eq!(comps.len(), r);
            for c in &comps {
                assert!(c.is_cycle());
                assert_eq!(c.vertices.len(), 2);
                assert_eq!(c.vertices[0] + c.vertices[1], 2 * r + 1);
                assert_eq!(c.sigma_stable, Some(true));
                let ids = &c.arcs;
                assert_eq!(g.arcs[ids[0]].side, Side::Outer);
                assert_eq!(g.arcs[ids[1]].side, Side::Inner);
            }
        }
    }

    #[test]
    fn isolated_middle_vertex_is_a_segment() {
        let f = Flavor::finite_a(5).unwrap();
        let g = build_graph(f, &CutPair::default()).unwrap();
        let comps = components(&g);
        let seg = comps.iter().find(|c| !c.is_cycle()).unwrap();
        assert_eq!(seg.vertices, vec![3]);
        assert!(seg.arcs.is_empty());
    }

    #[test]
    fn borel_of_sl2() {
        let f = Flavor::finite_a(2).unwrap();
        let g = build_graph(f, &CutPair::new([], [1])).unwrap();
        assert_eq!(pairs(&g, Side::Outer), BTreeSet::from([(1, 2)]));
        assert!(pairs(&g, Side::Inner).is_empty());
        let comps = components(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Segment);
        assert_eq!(comps[0].vertices, vec![1, 2]);
    }

    #[test]
    fn invalid_cuts() {
        let f = Flavor::affine_a(5).unwrap();
        assert_eq!(
            build_graph(f, &CutPair::new([], [1])).unwrap_err(),
            Error::EmptyAffineCut { side: "outer" }
        );
        assert!(matches!(
            build_graph(f, &CutPair::new([5], [1])),
            Err(Error::CutOutOfRange { index: 5, hi: 4, .. })
        ));
        let fin = Flavor::finite_c(3).unwrap();
        assert!(matches!(
            build_graph(fin, &CutPair::new([0], [])),
            Err(Error::CutOutOfRange { index: 0, lo: 1, .. })
        ));
    }

    #[test]
    fn kept_sets_convert_to_cuts() {
        let f = Flavor::finite_a(9).unwrap();
        let cuts = CutPair::from_kept(f, [1, 2, 3, 4, 6, 8], [1, 3, 4, 5, 7, 8]).unwrap();
        assert_eq!(cuts, CutPair::new([5, 7], [2, 6]));
        let aff = Flavor::affine_a(4).unwrap();
        assert!(CutPair::from_kept(aff, [0, 1, 2, 3], [1]).is_err());
    }

    #[test]
    fn sigma_images_exist() {
        let f = Flavor::new(Family::FiniteB, 4).unwrap();
        let g = build_graph(f, &CutPair::new([2], [1, 4])).unwrap();
        for a in &g.arcs {
            let b = g.sigma_image(a).expect("σ-image");
            assert_eq!(b.shadow, a.shadow);
        }
    }
}
