//! Tauvel–Yu–Joseph oracle.
//!
//! `ind = |Π̂| + dim E_S + dim E_{S′} − 2 dim(E_S + E_{S′})`, where `E_S` is
//! spanned by the β-vectors of the outer arcs (one per σ-orbit) and `E_{S′}`
//! by those of the inner arcs. Only ranks enter, never component counts.

use num_bigint::BigInt;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Zero};

use crate::meander::{MeanderGraph, Side};
use crate::roots::RootVector;

/// Fraction-free Gaussian elimination. Returns `None` if an intermediate
/// value does not fit in `T`.
fn bareiss<T>(mut m: Vec<Vec<T>>) -> Option<usize>
where
    T: Clone + Zero + PartialEq + CheckedMul + CheckedSub + CheckedDiv + From<i8>,
{
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let a = pivot.checked_mul(&row[j])?;
                let b = lead.checked_mul(&pivot_row[j])?;
                row[j] = a.checked_sub(&b)?.checked_div(&prev)?;
            }
            row[c] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Rank over ℚ of an integer matrix.
pub fn rank_exact(rows: &[Vec<i64>]) -> usize {
    if let Some(rank) = bareiss(rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()) {
        return rank;
    }
    rank_exact_big(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

/// Rank over ℚ of an arbitrary-precision integer matrix.
pub fn rank_exact_big(rows: Vec<Vec<BigInt>>) -> usize {
    bareiss(rows).expect("big integers do not overflow")
}

pub fn rank_of(vectors: &[&RootVector]) -> usize {
    let rows: Vec<Vec<i64>> = vectors.iter().map(|v| v.0.clone()).collect();
    rank_exact(&rows)
}

/// β-vectors of one side, one row per σ-orbit of arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaMatrix {
    pub side: Side,
    /// Representative arc id of each orbit (smallest id).
    pub arc_ids: Vec<usize>,
    pub rows: Vec<RootVector>,
}

impl BetaMatrix {
    pub fn rank(&self) -> usize {
        rank_of(&self.rows.iter().collect::<Vec<_>>())
    }
}

/// Id of the σ-orbit representative of `arc` (the arc itself in type A).
pub fn orbit_representative(g: &MeanderGraph, arc_id: usize) -> usize {
    let arc = &g.arcs[arc_id];
    g.sigma_image(arc).map_or(arc_id, |b| b.id.min(arc_id))
}

pub fn beta_matrix(g: &MeanderGraph, side: Side) -> BetaMatrix {
    let (arc_ids, rows) = g
        .arcs_on(side)
        .filter(|a| orbit_representative(g, a.id) == a.id)
        .map(|a| (a.id, a.shadow.clone()))
        .unzip();
    BetaMatrix { side, arc_ids, rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TyjReport {
    pub simple_roots: usize,
    pub rank_outer: usize,
    pub rank_inner: usize,
    pub rank_sum: usize,
    pub orbits_outer: usize,
    pub orbits_inner: usize,
    pub index: i64,
}

pub fn tyj_index(g: &MeanderGraph) -> TyjReport {
    let outer = beta_matrix(g, Side::Outer);
    let inner = beta_matrix(g, Side::Inner);
    let both: Vec<&RootVector> = outer.rows.iter().chain(&inner.rows).collect();
    let rank_outer = outer.rank();
    let rank_inner = inner.rank();
    let rank_sum = rank_of(&both);
    let simple_roots = g.flavor.root_count();
    let index = simple_roots as i64 + rank_outer as i64 + rank_inner as i64 - 2 * rank_sum as i64;
    TyjReport {
        simple_roots,
        rank_outer,
        rank_inner,
        rank_sum,
        orbits_outer: outer.rows.len(),
        orbits_inner: inner.rows.len(),
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meander::{build_graph, CutPair};
    use crate::roots::Flavor;

    #[test]
    fn small_ranks() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(rank_exact(&id), 3);
        let dep = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert_eq!(rank_exact(&dep), 2);
        assert_eq!(rank_exact(&[]), 0);
        assert_eq!(rank_exact(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_exact(&[vec![0, 2], vec![0, 4], vec![1, 1]]), 2);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        // Hilbert-like matrix scaled to large integers; full rank.
        let n = 12;
        let big = 1_i64 << 40;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| big / (i + j + 1) as i64 + ((i * j) % 7) as i64)
                    .collect()
            })
            .collect();
        let as_i128: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        assert_eq!(bareiss(as_i128), None);
        assert_eq!(rank_exact(&rows), n);
    }

    #[test]
    fn rank_matches_big_path() {
        let rows = vec![vec![2, 4, 6, 8], vec![1, 3, 5, 7], vec![3, 7, 11, 15], vec![0, 1, 0, 1]];
        let big = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(rank_exact(&rows), 3);
        assert_eq!(rank_exact_big(big), 3);
    }

    #[test]
    fn first_figure_census() {
        let g = build_graph(Flavor::affine_a(10).unwrap(), &CutPair::new([9], [4, 8])).unwrap();
        let rep = tyj_index(&g);
        assert_eq!(
            (rep.simple_roots, rep.rank_outer, rep.rank_inner, rep.rank_sum),
            (10, 5, 5, 10)
        );
        assert_eq!(rep.index, 0);
    }

    #[test]
    fn finite_example_census() {
        let g = build_graph(Flavor::finite_a(9).unwrap(), &CutPair::new([5, 7], [2, 6])).unwrap();
        let rep = tyj_index(&g);
        assert_eq!(
            (rep.simple_roots, rep.rank_outer, rep.rank_inner, rep.rank_sum),
            (8, 4, 4, 7)
        );
        assert_eq!(rep.index, 2);
    }

    #[test]
    fn equal_maximal_cuts() {
        for n in 2..12 {
            for i in 0..n {
                let g = build_graph(Flavor::affine_a(n).unwrap(), &CutPair::new([i], [i])).unwrap();
                assert_eq!(tyj_index(&g).index, n as i64, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn sigma_orbits_are_deduplicated() {
        let f = Flavor::affine_c(3).unwrap();
        let g = build_graph(f, &CutPair::new([0, 3], [2])).unwrap();
        let outer = beta_matrix(&g, Side::Outer);
        assert!(outer.rows.len() < g.arcs_on(Side::Outer).count());
        assert_eq!(outer.rank(), outer.rows.len());
    }
}
