//! Geodetic index and minimum covers of graph edges by shortest paths of a
//! fixed length, with constructions for standard families and products.

pub mod cover;
pub mod families;
pub mod geodesic;
pub mod graph;
pub mod products;
pub mod verifier;
