//! Low-complexity algorithms for quadratic words and alternating knot diagrams.
//!
//! * [`word`]: cyclic quadratic words, Wicks forms, letter extensions.
//! * [`genus`]: genus of a word by Δ-components, permutation cycles, bounded
//!   pattern counting and an interlacement-rank oracle.
//! * [`equivalence`]: word isomorphism by distance sequences and KMP.
//! * [`diagram`]: Gauss codes, Seifert circles, reducedness, realizability.
//! * [`graph`], [`bieulerian`], [`standard`]: cubic graphs, Bieulerian paths
//!   and the standard alternating diagrams they determine.

pub mod bieulerian;
pub mod diagram;
pub mod dsu;
pub mod equivalence;
pub mod genus;
pub mod graph;
pub mod kmp;
pub mod random;
pub mod standard;
pub mod word;

pub use bieulerian::{bieulerian_search, classify_vertices, path_to_wicks, BieulerianPath, VertexSignReport};
pub use diagram::{parse_gauss, KnotDiagram, SeifertReport};
pub use equivalence::{iso_bruteforce, iso_words, IsoOptions, IsoResult};
pub use genus::{genus_bounded, genus_linear, genus_oracle_rank, genus_perm, GammaStats, GenusReport};
pub use graph::{is_3_connected, is_planar, parse_graph, CubicGraph};
pub use standard::{build_standard_diagram, StandardDiagram, StandardReport};
pub use word::{parse_word, CyclicWord, QuadraticWord, SignedLetter, WicksForm};
