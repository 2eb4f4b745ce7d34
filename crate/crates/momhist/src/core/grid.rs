//! Histogram shapes and exact bin counting.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, ToPrimitive};

use crate::core::dataset::Dataset;
use crate::core::quad::Quad;
use crate::core::scalar::Scalar;
use crate::error::{Error, Result};

/// Bin counts `v_1..v_Ks` with trailing empty bins trimmed. The first bin is
/// always occupied and the counts sum to the sample size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    counts: Vec<u32>,
}

impl Shape {
    /// Canonicalizes by trimming trailing zeros; leading zeros are rejected
    /// (the data minimum always lands in bin 1).
    pub fn new(mut counts: Vec<u32>) -> Result<Shape> {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        if counts.is_empty() {
            return Err(Error::EmptyShape);
        }
        if counts[0] == 0 {
            return Err(Error::LeadingZeroBin);
        }
        Ok(Shape { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Number of bins after trimming (the paper's K_s).
    pub fn num_bins(&self) -> usize {
        self.counts.len()
    }

    /// Total count (the sample size this shape belongs to).
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&v| v as u64).sum()
    }

    pub fn reversed(&self) -> Shape {
        let mut counts: Vec<u32> = self.counts.iter().rev().copied().collect();
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Shape { counts }
    }

    pub fn is_palindrome(&self) -> bool {
        self.counts
            .iter()
            .eq(self.counts.iter().rev())
    }

    /// Bin indices (1-based) holding the maximum count.
    pub fn argmax_bins(&self) -> Vec<usize> {
        let max = *self.counts.iter().max().expect("nonempty shape");
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == max)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Bin indices (1-based) holding the minimum count.
    pub fn argmin_bins(&self) -> Vec<usize> {
        let min = *self.counts.iter().min().expect("nonempty shape");
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == min)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Shape {
    /// Lexicographic on (number of bins, counts) — the catalog order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.num_bins()
            .cmp(&other.num_bins())
            .then_with(|| self.counts.cmp(&other.counts))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Uniform bin grid: bins `[t0 + (k-1)h, t0 + kh)` for `k = 1..=K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinGrid {
    pub t0: Scalar,
    pub h: Scalar,
    pub k: u32,
}

impl BinGrid {
    pub fn new(t0: Scalar, h: Scalar, k: u32) -> Result<BinGrid> {
        if !h.is_positive() {
            return Err(Error::invalid_grid(format!(
                "bin width must be positive, got {h}"
            )));
        }
        if k == 0 {
            return Err(Error::invalid_grid("need at least one bin"));
        }
        Ok(BinGrid { t0, h, k })
    }

    /// Edge `t0 + k·h`.
    pub fn edge(&self, k: u32) -> Scalar {
        &self.t0 + &Scalar::from(k) * &self.h
    }
}

/// Counts data into the grid's half-open bins with exact comparisons and
/// trims trailing empty bins.
///
/// Fails unless the data minimum lies in bin 1 and the maximum within the
/// grid's K bins.
pub fn bin_counts(d: &Dataset, g: &BinGrid) -> Result<Shape> {
    let mut counts = vec![0u32; 1];
    for x in d.values() {
        let idx = (&(x - &g.t0) / &g.h).floor_int();
        if idx.is_negative() {
            return Err(Error::invalid_grid(format!(
                "data minimum {} lies below the first bin edge {}",
                d.x_min(),
                g.t0
            )));
        }
        let idx = idx.to_u64().ok_or_else(|| Error::invalid_grid("bin index overflow"))?;
        if idx >= g.k as u64 {
            return Err(Error::invalid_grid(format!(
                "value {x} needs bin {} but the grid has only {} bins",
                idx + 1,
                g.k
            )));
        }
        let idx = idx as usize;
        if counts.len() <= idx {
            counts.resize(idx + 1, 0);
        }
        counts[idx] += 1;
    }
    if counts[0] == 0 {
        return Err(Error::invalid_grid(format!(
            "data minimum {} is not in the first bin [{}, {})",
            d.x_min(),
            g.t0,
            g.edge(1)
        )));
    }
    Shape::new(counts)
}

/// Bin counts at a point whose coordinates live in `Q(√r)` — used to verify
/// method-of-moments solutions without rounding. The grid must already be
/// known valid (data minimum in bin 1, all data within `k` bins).
pub fn bin_counts_quad(d: &Dataset, t0: &Quad, h: &Quad, k: u32) -> Result<Shape> {
    let mut counts = vec![0u32; 1];
    for x in d.values() {
        // find bin j with t0 + (j-1)h <= x < t0 + jh by scanning edges
        let mut j = 0u32;
        loop {
            if j == k {
                return Err(Error::invalid_grid(format!(
                    "value {x} is outside the grid's {k} bins"
                )));
            }
            let upper = t0.add(&h.scale(&Scalar::from(j + 1)));
            if upper.cmp_scalar(x) == Ordering::Greater {
                break;
            }
            j += 1;
        }
        if j == 0 && t0.cmp_scalar(x) == Ordering::Greater {
            return Err(Error::invalid_grid(format!(
                "value {x} lies below the first bin edge"
            )));
        }
        let idx = j as usize;
        if counts.len() <= idx {
            counts.resize(idx + 1, 0);
        }
        counts[idx] += 1;
    }
    Shape::new(counts)
}
