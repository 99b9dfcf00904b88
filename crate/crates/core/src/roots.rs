//! Root-system bookkeeping for the supported flavors.
//!
//! Vertices of a meander graph are numbered `1..=N` clockwise (affine) or left
//! to right (finite). The boundary arc at position `p` joins vertex `p` to
//! vertex `p + 1` (and `N` to `1` on a circle) and carries one simple-root
//! label. Root vectors are integer coefficient vectors over the simple roots,
//! indexed `0..=r` for affine flavors and `1..=r` for finite ones.

use std::fmt;
use std::ops::{Add, Neg, RangeInclusive, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    AffineA,
    AffineC,
    FiniteA,
    FiniteB,
    FiniteC,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::AffineA,
        Family::AffineC,
        Family::FiniteA,
        Family::FiniteB,
        Family::FiniteC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::AffineA => "affine-a",
            Family::AffineC => "affine-c",
            Family::FiniteA => "finite-a",
            Family::FiniteB => "finite-b",
            Family::FiniteC => "finite-c",
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(self, Family::AffineA | Family::AffineC)
    }

    /// Type A families are parametrized by the vertex count `n`, the others
    /// by the rank `r`.
    pub fn is_type_a(self) -> bool {
        matches!(self, Family::AffineA | Family::FiniteA)
    }

    /// Families carrying the reflection `σ(v) = N + 1 − v`.
    pub fn has_sigma(self) -> bool {
        !self.is_type_a()
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::AffineA | Family::FiniteA | Family::FiniteB => 2,
            Family::AffineC | Family::FiniteC => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown family `{s}` (expected affine-a, affine-c, finite-a, finite-b or finite-c)")
            })
    }
}

/// An algebra family together with its rank parameter: `n` for the A
/// families (`sl_n`), `r` for the B and C families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flavor {
    pub family: Family,
    pub rank: usize,
}

impl Flavor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = family.min_rank();
        if rank < min {
            return Err(Error::RankTooSmall { family, min, got: rank });
        }
        Ok(Flavor { family, rank })
    }

    pub fn affine_a(n: usize) -> Result<Self> {
        Self::new(Family::AffineA, n)
    }

    pub fn affine_c(r: usize) -> Result<Self> {
        Self::new(Family::AffineC, r)
    }

    pub fn finite_a(n: usize) -> Result<Self> {
        Self::new(Family::FiniteA, n)
    }

    pub fn finite_b(r: usize) -> Result<Self> {
        Self::new(Family::FiniteB, r)
    }

    pub fn finite_c(r: usize) -> Result<Self> {
        Self::new(Family::FiniteC, r)
    }

    pub fn is_affine(&self) -> bool {
        self.family.is_affine()
    }

    pub fn has_sigma(&self) -> bool {
        self.family.has_sigma()
    }

    /// Number of vertices `N` of the meander graph.
    pub fn vertex_count(&self) -> usize {
        if self.family.is_type_a() {
            self.rank
        } else {
            2 * self.rank
        }
    }

    /// Rank `r` of the underlying finite root system.
    pub fn root_rank(&self) -> usize {
        if self.family.is_type_a() {
            self.rank - 1
        } else {
            self.rank
        }
    }

    /// Smallest simple-root index: 0 when α₀ exists, 1 otherwise.
    pub fn first_root(&self) -> usize {
        if self.is_affine() {
            0
        } else {
            1
        }
    }

    pub fn root_indices(&self) -> RangeInclusive<usize> {
        self.first_root()..=self.root_rank()
    }

    /// `|Π̂|` for affine flavors, `|Π|` for finite ones.
    pub fn root_count(&self) -> usize {
        self.root_rank() + 1 - self.first_root()
    }

    /// Position of simple root `label` inside a [`RootVector`].
    pub fn slot(&self, label: usize) -> usize {
        debug_assert!(self.root_indices().contains(&label));
        label - self.first_root()
    }

    /// Length of the ε-coordinate vector used by [`to_epsilon`].
    pub fn epsilon_len(&self) -> usize {
        self.rank
    }

    pub fn zero_root(&self) -> RootVector {
        RootVector::zero(self.root_count())
    }

    pub fn simple_root(&self, label: usize) -> RootVector {
        let mut v = self.zero_root();
        v.0[self.slot(label)] = 1;
        v
    }

    /// The imaginary root δ (affine flavors only).
    pub fn delta(&self) -> Option<RootVector> {
        let r = self.root_rank();
        match self.family {
            Family::AffineA => Some(RootVector(vec![1; r + 1])),
            Family::AffineC => {
                let mut coeffs = vec![2; r + 1];
                coeffs[0] = 1;
                coeffs[r] = 1;
                Some(RootVector(coeffs))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let param = if self.family.is_type_a() { "n" } else { "r" };
        write!(f, "{}({}={})", self.family, param, self.rank)
    }
}

/// Integer coefficients over the simple roots of a flavor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(len: usize) -> Self {
        RootVector(vec![0; len])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> RootVector {
        RootVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Returns `k` with `self = k · other`, if such an integer exists.
    pub fn multiple_of(&self, other: &RootVector) -> Option<i64> {
        let pivot = other.0.iter().position(|&c| c != 0)?;
        if self.0[pivot] % other.0[pivot] != 0 {
            return None;
        }
        let k = self.0[pivot] / other.0[pivot];
        (other.scaled(k) == *self).then_some(k)
    }
}

impl Add for &RootVector {
    type Output = RootVector;

    fn add(self, rhs: &RootVector) -> RootVector {
        assert_eq!(self.len(), rhs.len());
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVector {
    type Output = RootVector;

    fn sub(self, rhs: &RootVector) -> RootVector {
        assert_eq!(self.len(), rhs.len());
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVector {
    type Output = RootVector;

    fn neg(self) -> RootVector {
        self.scaled(-1)
    }
}

/// One arc of the boundary circle (or line).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryArc {
    /// Position `p`; the arc joins `tail = p` to `head = p + 1` (mod N).
    pub position: usize,
    pub tail: usize,
    pub head: usize,
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleLabeling {
    pub flavor: Flavor,
    /// `N` arcs on a circle for affine flavors, `N − 1` on a line otherwise.
    pub arcs: Vec<BoundaryArc>,
}

impl CircleLabeling {
    pub fn is_closed(&self) -> bool {
        self.flavor.is_affine()
    }

    /// Boundary arc whose tail is `v`, if any.
    pub fn arc_from(&self, v: usize) -> Option<&BoundaryArc> {
        self.arcs.get(v.checked_sub(1)?)
    }
}

/// Labels every boundary arc of the flavor's circle or line.
pub fn labeling(flavor: Flavor) -> Result<CircleLabeling> {
    let flavor = Flavor::new(flavor.family, flavor.rank)?;
    let n = flavor.vertex_count();
    let r = flavor.root_rank();
    let arc_count = if flavor.is_affine() { n } else { n - 1 };
    let arcs = (1..=arc_count)
        .map(|p| {
            let label = match flavor.family {
                Family::AffineA => {
                    if p == n {
                        0
                    } else {
                        p
                    }
                }
                Family::FiniteA => p,
                Family::AffineC | Family::FiniteB | Family::FiniteC => {
                    if p == n {
                        0
                    } else if p <= r {
                        p
                    } else {
                        n - p
                    }
                }
            };
            BoundaryArc {
                position: p,
                tail: p,
                head: if p == n { 1 } else { p + 1 },
                label,
            }
        })
        .collect();
    Ok(CircleLabeling { flavor, arcs })
}

/// The reflection `v ↦ N + 1 − v` of the B and C families.
pub fn sigma(flavor: Flavor, v: usize) -> Result<usize> {
    if !flavor.has_sigma() {
        return Err(Error::UnsupportedFlavor {
            family: flavor.family,
            what: "the reflection σ",
        });
    }
    let n = flavor.vertex_count();
    if v == 0 || v > n {
        return Err(Error::VertexOutOfRange { vertex: v, max: n });
    }
    Ok(n + 1 - v)
}

/// A root vector rewritten in the ε-basis, plus its δ-coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonCoords {
    pub eps: Vec<Rational64>,
    pub delta: Rational64,
}

impl EpsilonCoords {
    pub fn zero(len: usize) -> Self {
        EpsilonCoords {
            eps: vec![Rational64::zero(); len],
            delta: Rational64::zero(),
        }
    }
}

/// ε-image of the simple root `label`.
fn simple_root_epsilon(flavor: Flavor, label: usize) -> EpsilonCoords {
    let len = flavor.epsilon_len();
    let r = flavor.root_rank();
    let mut out = EpsilonCoords::zero(len);
    let one = Rational64::one();
    let two = Rational64::from_integer(2);
    match (flavor.family, label) {
        (Family::AffineA, 0) => {
            out.eps[len - 1] += one;
            out.eps[0] -= one;
            out.delta = one;
        }
        (Family::AffineC, 0) => {
            out.eps[0] -= two;
            out.delta = one;
        }
        (Family::AffineA | Family::FiniteA, i) => {
            out.eps[i - 1] += one;
            out.eps[i] -= one;
        }
        (Family::AffineC | Family::FiniteC, i) if i == r => out.eps[r - 1] += two,
        (Family::FiniteB, i) if i == r => out.eps[r - 1] += one,
        (_, i) => {
            out.eps[i - 1] += one;
            out.eps[i] -= one;
        }
    }
    out
}

/// Exact change of basis from simple roots to `(ε, δ)` coordinates.
pub fn to_epsilon(flavor: Flavor, v: &RootVector) -> Result<EpsilonCoords> {
    if v.len() != flavor.root_count() {
        return Err(Error::LengthMismatch {
            expected: flavor.root_count(),
            got: v.len(),
        });
    }
    let mut out = EpsilonCoords::zero(flavor.epsilon_len());
    for label in flavor.root_indices() {
        let c = v.0[flavor.slot(label)];
        if c == 0 {
            continue;
        }
        let c = Rational64::from_integer(c);
        let img = simple_root_epsilon(flavor, label);
        for (o, e) in out.eps.iter_mut().zip(&img.eps) {
            *o += c * e;
        }
        out.delta += c * img.delta;
    }
    Ok(out)
}

/// Inverse of [`to_epsilon`]: recovers the integer root vector, or `None`
/// when the coordinates are not in the image of the root lattice.
pub fn from_epsilon(flavor: Flavor, coords: &EpsilonCoords) -> Option<RootVector> {
    if coords.eps.len() != flavor.epsilon_len() {
        return None;
    }
    if !flavor.is_affine() && !coords.delta.is_zero() {
        return None;
    }
    let mut eps = coords.eps.clone();
    let mut out = flavor.zero_root();
    if flavor.is_affine() {
        // α₀ is the only simple root with a δ-component.
        let k = coords.delta;
        if !k.is_integer() {
            return None;
        }
        out.0[0] = k.to_integer();
        let a0 = simple_root_epsilon(flavor, 0);
        for (e, a) in eps.iter_mut().zip(&a0.eps) {
            *e -= k * a;
        }
    }
    let r = flavor.root_rank();
    // Partial sums of ε-coefficients give the coefficients of α₁…α_{r−1}.
    let mut partial = Rational64::zero();
    let chain_end = if flavor.family.is_type_a() { r } else { r - 1 };
    for i in 1..=chain_end {
        partial += eps[i - 1];
        if !partial.is_integer() {
            return None;
        }
        out.0[flavor.slot(i)] = partial.to_integer();
    }
    if flavor.family.is_type_a() {
        // Σ ε_i must vanish for the vector to lie in the span.
        partial += eps[r];
        if !partial.is_zero() {
            return None;
        }
    } else {
        partial += eps[r - 1];
        let last = match flavor.family {
            Family::FiniteB => partial,
            _ => partial / Rational64::from_integer(2),
        };
        if !last.is_integer() {
            return None;
        }
        out.0[flavor.slot(r)] = last.to_integer();
    }
    Some(out)
}

/// Expected β-set of the full-Levi meander graph (`I = ∅`) in types A and C:
/// `{ε_i − ε_{n+1−i}}` for `gl_n` and `{2ε_i}` for `sp_{2r}`.
pub fn full_cascade_anchor(flavor: Flavor) -> Result<Vec<RootVector>> {
    let len = flavor.epsilon_len();
    let unit = |i: usize| {
        let mut c = EpsilonCoords::zero(len);
        c.eps[i - 1] = Rational64::one();
        c
    };
    let vectors: Vec<EpsilonCoords> = match flavor.family {
        Family::FiniteA => {
            let n = flavor.rank;
            (1..=n / 2)
                .map(|i| {
                    let mut c = unit(i);
                    c.eps[n - i] = -Rational64::one();
                    c
                })
                .collect()
        }
        Family::FiniteC => (1..=flavor.rank)
            .map(|i| {
                let mut c = unit(i);
                c.eps[i - 1] = Rational64::from_integer(2);
                c
            })
            .collect(),
        family => {
            return Err(Error::UnsupportedFlavor {
                family,
                what: "full cascade anchors",
            })
        }
    };
    Ok(vectors
        .iter()
        .map(|c| from_epsilon(flavor, c).expect("cascade element lies in the root lattice"))
        .collect())
}

/// Human-readable `ε₁−ε₉+δ`-style rendering.
pub fn epsilon_string(coords: &EpsilonCoords) -> String {
    let mut out = String::new();
    let mut term = |coef: Rational64, sym: &str| {
        if coef.is_zero() {
            return;
        }
        let neg = coef < Rational64::zero();
        let mag = if neg { -coef } else { coef };
        if neg {
            out.push('−');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(sym);
    };
    for (i, c) in coords.eps.iter().enumerate() {
        term(*c, &format!("ε{}", i + 1));
    }
    term(coords.delta, "δ");
    if out.is_empty() {
        out.push('0');
    }
    out
}
