//! Width-based shape selection: exact stability cells, per-shape
//! maximum-likelihood scores at minimum width, and the exact all-moment
//! dot-plot grid.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::core::dataset::Dataset;
use crate::core::grid::{bin_counts, BinGrid, Shape};
use crate::core::scalar::Scalar;
use crate::error::{Error, Result};
use crate::levelset::Catalog;

/// A maximal open interval of widths over which the attainable shape set is
/// constant. Cell boundaries are exactly the distinct per-shape h_min/h_max
/// values.
#[derive(Clone, Debug)]
pub struct StabilityCell {
    pub h_lo: Scalar,
    pub h_hi: Scalar,
    pub shapes: Vec<Shape>,
}

impl StabilityCell {
    pub fn count(&self) -> usize {
        self.shapes.len()
    }
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub cells: Vec<StabilityCell>,
    /// Indices of the minimum-count cells — the most shape-stable widths.
    pub most_stable: Vec<usize>,
}

/// Projects every level set to the width axis and tiles the width range into
/// cells of constant attainable-shape sets.
pub fn stability_cells(c: &Catalog) -> Result<StabilityReport> {
    if c.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let mut breaks: Vec<Scalar> = Vec::with_capacity(2 * c.len());
    for ls in c.sets() {
        breaks.push(ls.h_min().clone());
        breaks.push(ls.h_max().clone());
    }
    breaks.sort();
    breaks.dedup();

    let mut cells = Vec::with_capacity(breaks.len().saturating_sub(1));
    for w in breaks.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let shapes: Vec<Shape> = c
            .sets()
            .iter()
            .filter(|ls| ls.h_min() <= lo && ls.h_max() >= hi)
            .map(|ls| ls.shape().clone())
            .collect();
        cells.push(StabilityCell {
            h_lo: lo.clone(),
            h_hi: hi.clone(),
            shapes,
        });
    }
    let min_count = cells.iter().map(StabilityCell::count).min().unwrap_or(0);
    let most_stable = cells
        .iter()
        .enumerate()
        .filter(|(_, cell)| cell.count() == min_count)
        .map(|(i, _)| i)
        .collect();
    Ok(StabilityReport { cells, most_stable })
}

/// Supremum log-likelihood of a shape's histogram density, attained (or
/// approached) at the level set's minimum width.
#[derive(Clone, Debug)]
pub struct MlEntry {
    pub shape: Shape,
    pub h_min: Scalar,
    /// Whether the minimum-width vertex itself still produces the shape; if
    /// not, the score is a supremum over an open set.
    pub h_min_attained: bool,
    /// Σ_{v>0} v·ln v − n·ln(n·h_min)
    pub score: f64,
}

/// Scores every shape and returns them best first.
pub fn ml_rank(d: &Dataset, c: &Catalog) -> Result<Vec<MlEntry>> {
    if c.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let n = c.n() as f64;
    let mut entries: Vec<MlEntry> = Vec::with_capacity(c.len());
    for ls in c.sets() {
        let counts_term: f64 = ls
            .shape()
            .counts()
            .iter()
            .filter(|&&v| v > 0)
            .map(|&v| (v as f64) * (v as f64).ln())
            .sum();
        let h_min = ls.h_min().clone();
        let score = counts_term - n * (n * h_min.to_f64()).ln();
        let bottom = ls.polygon().bottom_vertex().clone();
        let h_min_attained = BinGrid::new(bottom.t0, bottom.h, c.k())
            .ok()
            .and_then(|g| bin_counts(d, &g).ok())
            .is_some_and(|s| &s == ls.shape());
        entries.push(MlEntry {
            shape: ls.shape().clone(),
            h_min,
            h_min_attained,
            score,
        });
    }
    entries.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.shape.cmp(&b.shape))
    });
    Ok(entries)
}

/// A grid so fine that every data value is the midpoint of its bin: width
/// `1/(m·Q)` where `Q` is the least common multiple of the value
/// denominators, anchored half a bin below the minimum. All grouped
/// frequency moments then equal the data moments exactly.
#[derive(Clone, Debug)]
pub struct ExactMomentGrid {
    pub m: u32,
    /// lcm of the data denominators.
    pub q: BigInt,
    pub grid: BinGrid,
}

pub fn exact_moment_grid(d: &Dataset, m: u32) -> Result<ExactMomentGrid> {
    if m == 0 {
        return Err(Error::invalid_config("m must be positive"));
    }
    let mut q = BigInt::one();
    for x in d.values() {
        q = q.lcm(x.denom());
    }
    let mq = Scalar::from_big(num_rational::BigRational::new(
        BigInt::one(),
        &q * BigInt::from(m),
    ));
    let h = mq;
    let t0 = d.x_min() - &(&h / &Scalar::from_int(2));
    let bins = (&(d.x_max() - &t0) / &h).floor_int() + BigInt::one();
    let k = bins
        .to_u32()
        .filter(|&k| k <= 50_000_000)
        .ok_or_else(|| Error::invalid_config("exact-moment grid needs too many bins"))?;
    Ok(ExactMomentGrid {
        m,
        q,
        grid: BinGrid::new(t0, h, k)?,
    })
}

/// Raw data moment `Σ x^r / n`, exact.
pub fn data_moment(d: &Dataset, order: u32) -> Scalar {
    let mut acc = Scalar::zero();
    for x in d.values() {
        acc = acc + x.pow(order);
    }
    acc / Scalar::from_int(d.n() as i64)
}

/// Raw grouped moment `Σ v_k·midpoint_k^r / n`, exact.
pub fn grouped_moment(d: &Dataset, g: &BinGrid, order: u32) -> Result<Scalar> {
    let shape = bin_counts(d, g)?;
    let half = Scalar::from_ratio(1, 2);
    let mut acc = Scalar::zero();
    for (i, &v) in shape.counts().iter().enumerate() {
        if v == 0 {
            continue;
        }
        let mid = &g.t0 + &g.h * (Scalar::from_int(i as i64 + 1) - &half);
        acc = acc + Scalar::from(v) * mid.pow(order);
    }
    Ok(acc / Scalar::from_int(d.n() as i64))
}
