pub mod coloring;
pub mod dilation;
pub mod disjointness;
pub mod document;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod lifting;
pub mod linalg;
pub mod parallel;
pub mod pnm;
pub mod scalar;
pub mod svg;
