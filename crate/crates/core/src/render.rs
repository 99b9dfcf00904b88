//! Serializations of an [`Analysis`]: canonical JSON, DOT, TikZ, SVG, CSV
//! rows and plain text.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::index::Analysis;
use crate::meander::{Arc, ComponentKind, MeanderGraph, Side};
use crate::roots::{epsilon_string, to_epsilon, Flavor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub id: usize,
    pub side: Side,
    pub from: usize,
    pub to: usize,
    pub shadow: Vec<i64>,
    pub affine: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentRecord {
    pub kind: ComponentKind,
    pub vertices: Vec<usize>,
    pub arc_ids: Vec<usize>,
    pub sigma_stable: Option<bool>,
    pub affine_arcs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexValues {
    pub combinatorial: i64,
    pub tyj: Option<i64>,
    pub brute: Option<i64>,
}

/// Canonical JSON document for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Document {
    pub flavor: Flavor,
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    pub vertices: usize,
    pub arcs: Vec<ArcRecord>,
    pub components: Vec<ComponentRecord>,
    pub iota: i64,
    pub index: IndexValues,
    pub index_of_qhat: i64,
}

impl Document {
    pub fn new(a: &Analysis) -> Self {
        let g = &a.graph;
        let r = &a.report;
        Document {
            flavor: g.flavor,
            outer: g.cuts.outer.iter().copied().collect(),
            inner: g.cuts.inner.iter().copied().collect(),
            vertices: g.vertex_count(),
            arcs: g
                .arcs
                .iter()
                .map(|arc| ArcRecord {
                    id: arc.id,
                    side: arc.side,
                    from: arc.from,
                    to: arc.to,
                    shadow: arc.shadow.0.clone(),
                    affine: arc.is_affine(g.flavor),
                })
                .collect(),
            components: a
                .components
                .iter()
                .map(|c| ComponentRecord {
                    kind: c.kind,
                    vertices: c.vertices.clone(),
                    arc_ids: c.arcs.clone(),
                    sigma_stable: c.sigma_stable,
                    affine_arcs: c.affine_arcs,
                })
                .collect(),
            iota: r.iota,
            index: IndexValues {
                combinatorial: r.index_combinatorial,
                tyj: r.index_tyj,
                brute: r.index_brute,
            },
            index_of_qhat: r.index_of_qhat(),
        }
    }
}

pub fn to_json(a: &Analysis) -> String {
    serde_json::to_string_pretty(&Document::new(a)).expect("document serializes")
}

/// `4;8`-style rendering of an index set (empty string for ∅).
pub fn format_set(set: &BTreeSet<usize>) -> String {
    set.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}

fn brace_set(set: &BTreeSet<usize>) -> String {
    format!("{{{}}}", set.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

/// One line of the `table` CSV, columns in fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub rank: usize,
    pub outer: String,
    pub inner: String,
    pub cycles: usize,
    pub segments: usize,
    pub nonsigma_segments: usize,
    pub iota: i64,
    pub index: i64,
    pub tyj: Option<i64>,
    pub brute: Option<i64>,
    /// Value predicted by a closed form, for sweeps that have one.
    pub closed_form: Option<i64>,
}

impl TableRow {
    pub fn new(a: &Analysis) -> Self {
        let r = &a.report;
        TableRow {
            family: r.flavor.family.as_str().to_owned(),
            rank: r.flavor.rank,
            outer: format_set(&r.cuts.outer),
            inner: format_set(&r.cuts.inner),
            cycles: r.census.cycles,
            segments: r.census.segments,
            nonsigma_segments: r.census.nonsigma_segments,
            iota: r.iota,
            index: r.index_combinatorial,
            tyj: r.index_tyj,
            brute: r.index_brute,
            closed_form: None,
        }
    }
}

pub fn beta_label(flavor: Flavor, arc: &Arc) -> String {
    epsilon_string(&to_epsilon(flavor, &arc.shadow).expect("shadow has flavor length"))
}

fn fmt_opt(v: Option<i64>) -> String {
    v.map_or_else(|| "-".to_owned(), |x| x.to_string())
}

/// Human-readable report.
pub fn to_text(a: &Analysis) -> String {
    let g = &a.graph;
    let r = &a.report;
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "flavor:      {}", r.flavor).unwrap();
    writeln!(
        w,
        "cuts:        I={} I'={}",
        brace_set(&r.cuts.outer),
        brace_set(&r.cuts.inner)
    )
    .unwrap();
    writeln!(w, "vertices:    {}", g.vertex_count()).unwrap();
    let affine = g.arcs.iter().filter(|arc| arc.is_affine(g.flavor)).count();
    writeln!(w, "arcs:        {} ({} affine)", g.arcs.len(), affine).unwrap();
    write!(
        w,
        "components:  {} cycles, {} segments",
        r.census.cycles, r.census.segments
    )
    .unwrap();
    if g.flavor.has_sigma() {
        write!(w, " ({} not σ-stable)", r.census.nonsigma_segments).unwrap();
    }
    writeln!(w).unwrap();
    for c in &a.components {
        let kind = if c.is_cycle() { "cycle  " } else { "segment" };
        let verts = c.vertices.iter().map(usize::to_string).collect::<Vec<_>>().join("-");
        write!(w, "  {kind} {verts}").unwrap();
        if g.flavor.is_affine() {
            write!(w, "  affine arcs: {}", c.affine_arcs).unwrap();
        }
        if let Some(s) = c.sigma_stable {
            write!(w, "  σ-stable: {}", if s { "yes" } else { "no" }).unwrap();
        }
        writeln!(w).unwrap();
    }
    if g.flavor.is_affine() {
        writeln!(w, "iota:        {}", r.iota).unwrap();
    }
    writeln!(w, "index:       {}", r.index_combinatorial).unwrap();
    if let Some(t) = &a.tyj {
        writeln!(
            w,
            "tyj:         {} = {} + {} + {} - 2*{}",
            t.index, t.simple_roots, t.rank_outer, t.rank_inner, t.rank_sum
        )
        .unwrap();
    }
    writeln!(w, "brute:       {}", fmt_opt(r.index_brute)).unwrap();
    if g.flavor.is_affine() {
        writeln!(w, "index(q^):   {}", r.index_of_qhat()).unwrap();
    }
    let verdict = if r.agrees() { "agree" } else { "DISAGREE" };
    writeln!(w, "oracles:     {verdict}").unwrap();
    out
}

/// Planar position of each vertex: clockwise on a circle with vertex `N` at
/// the top for affine flavors, left to right on a line otherwise.
struct Layout {
    circular: bool,
    scale: f64,
    n: usize,
}

impl Layout {
    fn new(g: &MeanderGraph, scale: f64) -> Self {
        Layout {
            circular: g.flavor.is_affine(),
            scale,
            n: g.vertex_count(),
        }
    }

    fn angle(&self, v: usize) -> f64 {
        PI / 2.0 - 2.0 * PI * v as f64 / self.n as f64
    }

    fn pos(&self, v: usize) -> (f64, f64) {
        if self.circular {
            let t = self.angle(v);
            (self.scale * t.cos(), self.scale * t.sin())
        } else {
            (self.scale * (v as f64 - 1.0), 0.0)
        }
    }

    /// Unit direction in which an arc of `side` leaves vertex `v`.
    fn normal(&self, v: usize, side: Side) -> (f64, f64) {
        let s = if side == Side::Outer { 1.0 } else { -1.0 };
        if self.circular {
            let t = self.angle(v);
            (s * t.cos(), s * t.sin())
        } else {
            (0.0, s)
        }
    }

    /// Cubic Bézier control points; the bulge grows with the shadow length.
    fn controls(&self, arc: &Arc) -> [(f64, f64); 4] {
        let span = arc.shadow.0.iter().sum::<i64>() as f64;
        let reach = if self.circular {
            let h = 0.25 + 0.6 * span / self.n as f64;
            if arc.side == Side::Outer {
                h
            } else {
                h.min(0.9)
            }
        } else {
            0.45 * span
        } * self.scale;
        let p = self.pos(arc.from);
        let q = self.pos(arc.to);
        let (nu, nv) = (self.normal(arc.from, arc.side), self.normal(arc.to, arc.side));
        [
            p,
            (p.0 + reach * nu.0, p.1 + reach * nu.1),
            (q.0 + reach * nv.0, q.1 + reach * nv.1),
            q,
        ]
    }
}

/// Graphviz digraph; positions are pinned for `neato -n`.
pub fn to_dot(g: &MeanderGraph) -> String {
    let layout = Layout::new(g, 2.0);
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "digraph meander {{").unwrap();
    writeln!(
        w,
        "  graph [label=\"{} I={} I'={}\", layout=neato];",
        g.flavor,
        brace_set(&g.cuts.outer),
        brace_set(&g.cuts.inner)
    )
    .unwrap();
    writeln!(w, "  node [shape=circle, fontsize=10];").unwrap();
    for v in 1..=g.vertex_count() {
        let (x, y) = layout.pos(v);
        writeln!(w, "  {v} [pos=\"{x:.3},{y:.3}!\"];").unwrap();
    }
    for arc in &g.arcs {
        let affine = arc.is_affine(g.flavor);
        let color = match (arc.side, affine) {
            (_, true) => "red",
            (Side::Outer, false) => "black",
            (Side::Inner, false) => "blue",
        };
        let style = if arc.side == Side::Inner { "dashed" } else { "solid" };
        writeln!(
            w,
            "  {} -> {} [side={}, affine={}, label=\"{}\", color={color}, style={style}];",
            arc.from,
            arc.to,
            arc.side,
            affine,
            beta_label(g.flavor, arc)
        )
        .unwrap();
    }
    writeln!(w, "}}").unwrap();
    out
}

/// TikZ picture: outer arcs outside the circle (above the line), inner arcs
/// inside (below), affine arcs in red.
pub fn to_tikz(g: &MeanderGraph) -> String {
    let layout = Layout::new(g, if g.flavor.is_affine() { 3.0 } else { 1.0 });
    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        "% {} I={} I'={}",
        g.flavor,
        brace_set(&g.cuts.outer),
        brace_set(&g.cuts.inner)
    )
    .unwrap();
    writeln!(w, "\\begin{{tikzpicture}}[v/.style={{circle,fill,inner sep=1.2pt}}]").unwrap();
    if layout.circular {
        writeln!(w, "  \\draw[gray!50] (0,0) circle ({:.2});", layout.scale).unwrap();
    }
    for v in 1..=g.vertex_count() {
        let (x, y) = layout.pos(v);
        let (nx, ny) = layout.normal(v, Side::Inner);
        let anchor = if layout.circular {
            format!("{:.0}", ny.atan2(nx).to_degrees())
        } else {
            "below".to_owned()
        };
        let placement = if layout.circular {
            format!("label={{{anchor}:{v}}}")
        } else {
            format!("label={anchor}:{v}")
        };
        writeln!(w, "  \\node[v,{placement}] (v{v}) at ({x:.3},{y:.3}) {{}};").unwrap();
    }
    for arc in &g.arcs {
        let [_, c1, c2, _] = layout.controls(arc);
        let mut style = vec![if arc.is_affine(g.flavor) { "red" } else { "black" }];
        if arc.side == Side::Inner {
            style.push("dashed");
        }
        writeln!(
            w,
            "  \\draw[{}] (v{}) .. controls ({:.3},{:.3}) and ({:.3},{:.3}) .. (v{});",
            style.join(","),
            arc.from,
            c1.0,
            c1.1,
            c2.0,
            c2.1,
            arc.to
        )
        .unwrap();
    }
    writeln!(w, "\\end{{tikzpicture}}").unwrap();
    out
}

/// Standalone SVG drawing with the same geometry as [`to_tikz`].
pub fn to_svg(g: &MeanderGraph) -> String {
    let layout = Layout::new(g, 100.0);
    let n = g.vertex_count();
    let (width, height, ox, oy) = if layout.circular {
        (520.0, 520.0, 260.0, 260.0)
    } else {
        let span = layout.scale * (n as f64 - 1.0);
        let h = layout.scale * 0.45 * n as f64 * 0.8 + 40.0;
        (span + 80.0, 2.0 * h, 40.0, h)
    };
    // SVG y grows downwards.
    let map = |(x, y): (f64, f64)| (ox + x, oy - y);
    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\" font-size=\"13\">"
    )
    .unwrap();
    if layout.circular {
        writeln!(
            w,
            "<circle cx=\"{ox}\" cy=\"{oy}\" r=\"{}\" fill=\"none\" stroke=\"#ccc\"/>",
            layout.scale
        )
        .unwrap();
    }
    for arc in &g.arcs {
        let pts = layout.controls(arc).map(map);
        let color = if arc.is_affine(g.flavor) {
            "#c0392b"
        } else if arc.side == Side::Outer {
            "#222"
        } else {
            "#2457a6"
        };
        let dash = if arc.side == Side::Inner {
            " stroke-dasharray=\"5 3\""
        } else {
            ""
        };
        writeln!(
            w,
            "<path d=\"M{:.1} {:.1} C{:.1} {:.1} {:.1} {:.1} {:.1} {:.1}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\"{dash}><title>{} {}→{}: {}</title></path>",
            pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1, pts[3].0, pts[3].1,
            arc.side, arc.from, arc.to, beta_label(g.flavor, arc)
        )
        .unwrap();
    }
    for v in 1..=n {
        let (x, y) = map(layout.pos(v));
        let (nx, ny) = layout.normal(v, Side::Inner);
        let (lx, ly) = if layout.circular {
            (x + 16.0 * nx, y - 16.0 * ny + 4.0)
        } else {
            (x, y + 20.0)
        };
        writeln!(w, "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\"/>").unwrap();
        writeln!(w, "<text x=\"{lx:.1}\" y=\"{ly:.1}\" text-anchor=\"middle\">{v}</text>").unwrap();
    }
    writeln!(w, "</svg>").unwrap();
    out
}
