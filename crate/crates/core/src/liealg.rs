//! Explicit realization of type-A seaweeds and a brute-force index.
//!
//! With `0 ∈ I′` the quotient `q̄ = q̂ / kC` of an affine seaweed in
//! `ŝl_n` is `q ⊕ kd` or `(q ⊕ kd) ⋉ z t⁻¹`, where `q` is the finite seaweed
//! cut out by `I ∖ {0}` and `I′ ∖ {0}` and `z` is the top-right corner block
//! of the `S`-parabolic (present iff `α₀ ∈ S`). The index of a Lie algebra
//! is `dim − max_ξ rank(ξ([·,·]))`; the maximum is estimated with a few
//! random integer functionals and exact ranks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::meander::CutPair;
use crate::roots::Flavor;
use crate::tyj::rank_exact;

pub const DEFAULT_SEED: u64 = 0x5EA_11EED;

/// Coefficient range of the random functionals.
const XI_BOUND: i64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `E_{row,col} t^degree`, `degree ∈ {0, −1}`.
    MatrixUnit {
        row: usize,
        col: usize,
        degree: i8,
    },
    /// `E_{ii} − E_{i+1,i+1}`.
    CartanDiff(usize),
    Derivation,
}

/// A general element of `gl_n[t, t⁻¹] ⊕ kd`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct LoopElement {
    terms: BTreeMap<(i8, usize, usize), i64>,
    d: i64,
}

impl LoopElement {
    fn of(b: BasisElement) -> Self {
        let mut out = LoopElement::default();
        match b {
            BasisElement::MatrixUnit { row, col, degree } => {
                out.terms.insert((degree, row, col), 1);
            }
            BasisElement::CartanDiff(i) => {
                out.terms.insert((0, i, i), 1);
                out.terms.insert((0, i + 1, i + 1), -1);
            }
            BasisElement::Derivation => out.d = 1,
        }
        out
    }

    fn add(&mut self, key: (i8, usize, usize), c: i64) {
        let e = self.terms.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    fn bracket(&self, other: &Self) -> Self {
        let mut out = LoopElement::default();
        for (&(p, a, b), &x) in &self.terms {
            for (&(q, c, d), &y) in &other.terms {
                if b == c {
                    out.add((p + q, a, d), x * y);
                }
                if d == a {
                    out.add((p + q, c, b), -x * y);
                }
            }
        }
        // [d, X t^k] = k X t^k
        for (&(q, c, d), &y) in &other.terms {
            out.add((q, c, d), self.d * q as i64 * y);
        }
        for (&(p, a, b), &x) in &self.terms {
            out.add((p, a, b), -other.d * p as i64 * x);
        }
        out
    }
}

/// Basis plus bracket table `[b_u, b_v] = Σ c_w b_w`, stored sparsely.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub basis: Vec<BasisElement>,
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn bracket(&self, u: usize, v: usize) -> &[(usize, i64)] {
        &self.table[u][v]
    }

    /// Bracket of two elements given by coefficient vectors.
    pub fn bracket_vectors(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (u, &xu) in x.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (v, &yv) in y.iter().enumerate().filter(|(_, c)| **c != 0) {
                for &(w, c) in &self.table[u][v] {
                    out[w] += xu * yv * c;
                }
            }
        }
        out
    }

    fn from_basis(n: usize, basis: Vec<BasisElement>) -> Result<Self> {
        let lookup: HashMap<BasisElement, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let elems: Vec<LoopElement> = basis.iter().map(|&b| LoopElement::of(b)).collect();
        let dim = basis.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for u in 0..dim {
            for v in u + 1..dim {
                let coeffs = decompose(n, &elems[u].bracket(&elems[v]), &lookup)?;
                table[v][u] = coeffs.iter().map(|&(w, c)| (w, -c)).collect();
                table[u][v] = coeffs;
            }
        }
        Ok(StructureConstants { basis, table })
    }
}

/// Expresses a loop element in the basis, failing if it leaves the span.
fn decompose(n: usize, x: &LoopElement, lookup: &HashMap<BasisElement, usize>) -> Result<Vec<(usize, i64)>> {
    let mut out = BTreeMap::new();
    let mut diag = vec![0_i64; n + 1];
    for (&(degree, row, col), &c) in &x.terms {
        if row == col {
            if degree != 0 {
                return Err(Error::NotClosed(format!("diagonal term at degree {degree}")));
            }
            diag[row] += c;
            continue;
        }
        let b = BasisElement::MatrixUnit { row, col, degree };
        let idx = lookup.get(&b).ok_or_else(|| Error::NotClosed(format!("{b:?}")))?;
        out.insert(*idx, c);
    }
    if diag.iter().sum::<i64>() != 0 {
        return Err(Error::NotClosed("non-traceless diagonal".into()));
    }
    // Σ c_a E_aa = Σ_i (c_1 + … + c_i)(E_ii − E_{i+1,i+1})
    let mut partial = 0;
    for i in 1..n {
        partial += diag[i];
        if partial != 0 {
            out.insert(lookup[&BasisElement::CartanDiff(i)], partial);
        }
    }
    if x.d != 0 {
        let idx = lookup
            .get(&BasisElement::Derivation)
            .ok_or_else(|| Error::NotClosed("derivation".into()))?;
        out.insert(*idx, x.d);
    }
    Ok(out.into_iter().collect())
}

/// Block index of each vertex `1..=n` for the composition cut at `cut`.
fn blocks(n: usize, cut: &BTreeSet<usize>) -> Vec<usize> {
    let mut out = vec![0; n + 1];
    for (a, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = cut.iter().filter(|&&i| i >= 1 && i < a).count();
    }
    out
}

/// Off-diagonal matrix units and Cartan generators of the seaweed in `sl_n`.
fn finite_pattern(n: usize, outer: &BTreeSet<usize>, inner: &BTreeSet<usize>) -> Vec<BasisElement> {
    let bs = blocks(n, outer);
    let bi = blocks(n, inner);
    let mut basis: Vec<BasisElement> = (1..n).map(BasisElement::CartanDiff).collect();
    for a in 1..=n {
        for b in 1..=n {
            if a != b && bs[a] <= bs[b] && bi[a] >= bi[b] {
                basis.push(BasisElement::MatrixUnit {
                    row: a,
                    col: b,
                    degree: 0,
                });
            }
        }
    }
    basis
}

/// Cyclic relabeling `i ↦ i − k (mod n)` of both cut sets.
pub fn rotate_cuts(n: usize, cuts: &CutPair, k: usize) -> CutPair {
    let shift = |s: &BTreeSet<usize>| s.iter().map(|&i| (i + n - k % n) % n).collect();
    CutPair {
        outer: shift(&cuts.outer),
        inner: shift(&cuts.inner),
    }
}

/// Rotates the cuts so that `0 ∈ I′` (subtracting the smallest element of `I′`).
pub fn normalize_affine_cuts(n: usize, cuts: &CutPair) -> Result<CutPair> {
    cuts.validate(Flavor::affine_a(n)?)?;
    let k = *cuts.inner.first().expect("validated nonempty");
    Ok(rotate_cuts(n, cuts, k))
}

/// `q̄ = q̂ / kC` for the affine seaweed in `ŝl_n`; requires `0 ∈ I′`.
pub fn build_seaweed_affine_a(n: usize, cuts: &CutPair) -> Result<StructureConstants> {
    cuts.validate(Flavor::affine_a(n)?)?;
    if !cuts.inner.contains(&0) {
        return Err(Error::Precondition(
            "realization needs 0 ∈ I′; rotate the cuts first".into(),
        ));
    }
    let mut basis = finite_pattern(n, &cuts.outer, &cuts.inner);
    basis.push(BasisElement::Derivation);
    if !cuts.outer.contains(&0) {
        let bs = blocks(n, &cuts.outer);
        let last = cuts.outer.len();
        for a in (1..=n).filter(|&a| bs[a] == 0) {
            for b in (1..=n).filter(|&b| bs[b] == last) {
                basis.push(BasisElement::MatrixUnit {
                    row: a,
                    col: b,
                    degree: -1,
                });
            }
        }
    }
    StructureConstants::from_basis(n, basis)
}

/// The standard seaweed in `sl_n` with cut sets in `1..n`.
pub fn build_seaweed_finite_a(n: usize, cuts: &CutPair) -> Result<StructureConstants> {
    cuts.validate(Flavor::finite_a(n)?)?;
    StructureConstants::from_basis(n, finite_pattern(n, &cuts.outer, &cuts.inner))
}

/// Realizes any type-A instance, rotating affine cuts as needed.
pub fn realize(flavor: Flavor, cuts: &CutPair) -> Result<StructureConstants> {
    match flavor.family {
        crate::roots::Family::AffineA => {
            build_seaweed_affine_a(flavor.rank, &normalize_affine_cuts(flavor.rank, cuts)?)
        }
        crate::roots::Family::FiniteA => build_seaweed_finite_a(flavor.rank, cuts),
        family => Err(Error::UnsupportedFlavor {
            family,
            what: "the explicit Lie algebra realization",
        }),
    }
}

/// Rank of the skew form `ξ([·,·])` for one seeded random functional.
#[allow(clippy::needless_range_loop)]
pub fn skew_rank(sc: &StructureConstants, seed: u64, trial: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let xi: Vec<i64> = (0..sc.dim()).map(|_| rng.random_range(-XI_BOUND..=XI_BOUND)).collect();
    let dim = sc.dim();
    let mut m = vec![vec![0_i64; dim]; dim];
    for u in 0..dim {
        for v in u + 1..dim {
            let val: i64 = sc.bracket(u, v).iter().map(|&(w, c)| c * xi[w]).sum();
            m[u][v] = val;
            m[v][u] = -val;
        }
    }
    rank_exact(&m)
}

/// `dim − max rank` over `trials` seeded functionals; an upper bound on the
/// index that is attained for generic ξ.
pub fn brute_index(sc: &StructureConstants, trials: u32, seed: u64) -> usize {
    assert!(trials >= 1, "brute_index needs at least one trial");
    let best = (0..trials as u64).map(|t| skew_rank(sc, seed, t)).max().unwrap_or(0);
    sc.dim() - best
}
