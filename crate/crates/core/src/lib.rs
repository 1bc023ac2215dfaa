//! Constraint independence complexes of digraphs and graphs.
//!
//! A *window* `(n, m]` selects vertex pairs whose symmetrized distance `d`
//! satisfies `n < d <= m`. The window graph collects those pairs; its flag
//! complex is the constraint independence complex, its walks span the path
//! independence chains, and its clique number is the windowed independence
//! number used for capacity bounds.

pub mod capacity;
pub mod chain;
pub mod error;
pub mod field;
pub mod generators;
pub mod graph;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod morphism;
pub mod path;
pub mod product;
pub mod suites;
pub mod window;

pub use capacity::{alpha, capacity_bound, max_clique, CapacityEstimate, Root};
pub use chain::ChainComplex;
pub use error::{Error, Result};
pub use field::{Coefficients, Field, PrimeField, Rationals};
pub use generators::{AnyGraph, GeneratorKind, GeneratorSpec};
pub use graph::{Digraph, Dist, DistanceTable, Graph, GraphLike, VertexId};
pub use homology::{persistence_slice, rank_invariant, Barcode, RankInvariant, SliceDirection};
pub use morphism::{automorphisms, GeodesicReport, GraphMorphism};
pub use path::{ChainSlice, Side};
pub use product::{strong_power, strong_product};
pub use suites::{Claim, ClaimReport, SuiteConfig};
pub use window::{Bifiltration, Simplex, Window, WindowComplex, WindowGraph};
