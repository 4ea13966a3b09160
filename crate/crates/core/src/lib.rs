//! Ternary region colorings of knot and link diagrams.
//!
//! Regions of a checkerboard-shaded (or oriented) diagram are colored by the
//! elements of a finite algebra with two ternary operations; at every crossing
//! each region's color is determined by the other three. For algebras that
//! satisfy the relevant axiom system the number of colorings is unchanged by
//! Reidemeister moves.

pub mod diagram;
pub mod algebra;
pub mod moves;
pub mod coloring;
pub mod presentation;
pub mod search;
pub mod fixtures;
pub mod cli;
