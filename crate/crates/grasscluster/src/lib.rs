//! Cluster structures on decorated configurations of vectors, plane partitions,
//! tropical points, cyclic sieving and plabic graphs.

pub mod confspace;
pub mod csp;
pub mod error;
pub mod exact;
pub mod planepartition;
pub mod plabic;
pub mod quiver;
pub mod seed;
pub mod tropical;

pub use error::{Error, Result};
