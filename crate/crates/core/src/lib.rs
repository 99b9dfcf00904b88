//! Index of finite-dimensional seaweed (biparabolic) subalgebras of the affine
//! Kac–Moody algebras of types Ã and C̃, and of the finite types A, B and C.
//!
//! The index is read off a meander graph built from the two sets of removed
//! simple roots. Every value can be cross-checked against two independent
//! computations: the Tauvel–Yu–Joseph rank formula evaluated in exact integer
//! arithmetic ([`tyj`]) and, in type A, the corank of the skew form of a
//! random functional on an explicit realization of the algebra ([`liealg`]).
//!
//! ```
//! use seaweed_core::{analyze, CutPair, Flavor, Oracles};
//!
//! let flavor = Flavor::affine_a(10).unwrap();
//! let cuts = CutPair::new([9], [4, 8]);
//! let analysis = analyze(flavor, &cuts, &Oracles::default()).unwrap();
//! assert_eq!(analysis.report.index_combinatorial, 0);
//! assert_eq!(analysis.report.index_tyj, Some(0));
//! ```

pub mod error;
pub mod index;
pub mod liealg;
pub mod meander;
pub mod render;
pub mod roots;
pub mod tyj;
pub mod verify;

pub use error::{Error, Result};
pub use index::{analyze, Analysis, BruteConfig, IndexReport, Oracles};
pub use meander::{build_graph, components, Arc, Component, ComponentKind, CutPair, MeanderGraph, Side};
pub use roots::{Family, Flavor, RootVector};
