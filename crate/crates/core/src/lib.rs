//! Computations in Artin groups and Artin monoids.
//!
//! A defining graph with edge labels `m >= 2` (missing edges mean `∞`)
//! presents the Artin group `A` and positive monoid `M`. The crate provides
//! the monoid word problem, Garside normal forms on spherical supports, an
//! incremental geodesic reducer for the group, distances in the Cayley graph
//! `Cay(A, M)` with positive elements as generators, checks for blocking
//! pairs and alternating blocking sequences, and a coned-off Deligne complex
//! used to test the quasi-isometry between the two.
//!
//! Everything that is only certified up to a search bound returns a
//! [`verdict::BoundedVerdict`] that echoes the bound.
//!
//! ```
//! use std::sync::Arc;
//! use artin_core::cayley::MetricContext;
//! use artin_core::{DefiningGraph, GroupOracle, SignedWord};
//!
//! let graph = DefiningGraph::parse("a b c; a b 3; b c 3; a c 3")?;
//! let oracle = Arc::new(GroupOracle::from_graph(graph));
//! let w = SignedWord::parse(oracle.graph(), "a b c' a'")?;
//! assert!(oracle.geodesic(&w)?);
//!
//! let ctx = MetricContext::new(oracle.clone(), 3)?;
//! assert_eq!(ctx.distance(&w, None)?.value(), Some(2));
//! # Ok::<(), artin_core::Error>(())
//! ```

pub mod cayley;
pub mod cli;
pub mod criteria;
pub mod deligne;
pub mod error;
pub mod group;
pub mod monoid;
pub mod presentation;
pub mod verdict;
pub mod words;

pub use error::{Error, Result};
pub use group::{Budget, GroupOracle};
pub use presentation::{DefiningGraph, Gen, GenSet, Label};
pub use words::{Letter, Sign, SignedWord};
