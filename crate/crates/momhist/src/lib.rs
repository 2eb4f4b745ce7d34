//! Exact enumeration and method-of-moments analysis of uniform-bin-width
//! histogram shapes.
//!
//! A histogram with bins `[t0 + (k-1)h, t0 + kh)` is determined by an anchor
//! `t0` and a width `h`. For a fixed dataset, the (t0, h) plane splits into
//! convex polygonal *level sets*, each producing one vector of bin counts (a
//! *shape*). This crate enumerates those level sets exactly — every data
//! value and every vertex is a rational number, so no verdict ever depends on
//! a floating-point tolerance — and layers analysis on top:
//!
//! - method-of-moments bin parameters per shape (width from the variance
//!   constraint, anchor from the mean constraint) with joint-consistency
//!   verification by recounting,
//! - a five-way mean/variance consistency classification of every shape,
//! - Fisher-Pearson skewness ranking with configurable rank bands,
//! - bin-width stability cells, per-shape maximum-likelihood scores, and
//!   exact all-moment dot-plot grids,
//! - symmetry, shape-reversal, mode-inversion, and histogram-audit
//!   diagnostics.
//!
//! ```
//! use momhist::{parse_dataset, enumerate_level_sets, DomainMode};
//!
//! let data = parse_dataset("1\n2\n5").unwrap();
//! let catalog = enumerate_level_sets(&data, 4, DomainMode::AtMostK).unwrap();
//! assert_eq!(catalog.len(), 7);
//! ```

pub mod consistency;
pub mod core;
pub mod diagnostics;
pub mod error;
pub mod levelset;
pub mod moments;
pub mod report;
pub mod selection;
pub mod svg;

pub use crate::core::dataset::{parse_dataset, Dataset};
pub use crate::core::domain::{build_domain, Domain, DomainMode};
pub use crate::core::grid::{bin_counts, BinGrid, Shape};
pub use crate::core::polygon::{Line, Point, Polygon};
pub use crate::core::scalar::Scalar;
pub use crate::consistency::{
    classify_catalog, classify_shape, skew_rank, solve_mom, ConsistencyClass, Flavor,
};
pub use crate::error::{Error, Result};
pub use crate::levelset::{
    boundary_lines, enumerate_level_sets, enumerate_level_sets_with, grid_sample_oracle,
    BoundaryLine, Catalog, LevelSet,
};
pub use crate::moments::{
    constraint_fns, fps_grouped, grouped_mean, grouped_variance, sample_moments, SampleMoments,
};
pub use crate::selection::{exact_moment_grid, ml_rank, stability_cells};
pub use crate::diagnostics::{audit, is_exactly_symmetric, mode_inversion_report, reversal_pairs};
