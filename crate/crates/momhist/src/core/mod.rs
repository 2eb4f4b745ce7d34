//! Exact scalar arithmetic, dataset ingestion, bin counting, and the bounded
//! parameter domain.

pub mod dataset;
pub mod domain;
pub mod grid;
pub mod polygon;
pub mod quad;
pub mod scalar;
