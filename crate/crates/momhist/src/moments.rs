//! Sample and grouped (bin-midpoint) moments, Fisher-Pearson skewness, and
//! the mean/variance constraint functions.
//!
//! Means and variances stay exact rationals. Skewness is a standardized third
//! moment, so its value needs a square root; the third- and second-moment
//! sums are kept exact and only the final quotient is evaluated in `f64`.
//! Comparisons between skewness values are done on the exact sums, which
//! makes ties (notably the zero of palindromic shapes) exact.

use std::cmp::Ordering;

use crate::core::dataset::Dataset;
use crate::core::grid::{BinGrid, Shape};
use crate::core::polygon::Point;
use crate::core::scalar::Scalar;
use crate::error::{Error, Result};

/// Exact standardized-third-moment value `(s3/n) / (s2/n)^{3/2}`, stored as
/// the central sums so that comparisons stay exact. Values belonging to the
/// same sample size are mutually comparable.
#[derive(Clone, Debug)]
pub struct SkewValue {
    /// Σ w·(pos - center)³
    s3: Scalar,
    /// Σ w·(pos - center)², strictly positive
    s2: Scalar,
    n: u64,
}

impl SkewValue {
    pub fn new(s3: Scalar, s2: Scalar, n: u64) -> Result<SkewValue> {
        if !s2.is_positive() {
            return Err(Error::ZeroVariance);
        }
        Ok(SkewValue { s3, s2, n })
    }

    pub fn signum(&self) -> i8 {
        self.s3.signum()
    }

    pub fn is_zero(&self) -> bool {
        self.s3.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.n as f64;
        (self.s3.to_f64() / n) / (self.s2.to_f64() / n).powf(1.5)
    }

    /// Exact comparison: sign first, then cross-multiplied squares
    /// (`a² · b_s2³` vs `b² · a_s2³`).
    pub fn exact_cmp(&self, other: &SkewValue) -> Ordering {
        debug_assert_eq!(self.n, other.n, "skew values from different samples");
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let lhs = &self.s3 * &self.s3 * other.s2.pow(3);
        let rhs = &other.s3 * &other.s3 * self.s2.pow(3);
        let mag = lhs.cmp(&rhs);
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

/// Sample size, exact mean and sample variance (divisor n-1), and the
/// Fisher-Pearson skewness pair.
#[derive(Clone, Debug)]
pub struct SampleMoments {
    pub n: usize,
    pub mean: Scalar,
    /// Sample variance with divisor n-1.
    pub variance: Scalar,
    m2_sum: Scalar,
    m3_sum: Scalar,
}

impl SampleMoments {
    /// Fisher-Pearson skewness: population-normalized standardized third
    /// moment, accurate to the final float operations.
    pub fn fps(&self) -> Result<f64> {
        Ok(self.fps_exact()?.to_f64())
    }

    pub fn fps_exact(&self) -> Result<SkewValue> {
        SkewValue::new(self.m3_sum.clone(), self.m2_sum.clone(), self.n as u64)
    }

    /// Small-sample adjusted skewness `√(n(n-1))/(n-2) · FPS`; needs n ≥ 3.
    pub fn fpas(&self) -> Result<f64> {
        if self.n < 3 {
            return Err(Error::TooFewValues {
                needed: 3,
                got: self.n,
            });
        }
        Ok(fpas_coefficient(self.n) * self.fps()?)
    }
}

/// `√(n(n-1))/(n-2)`, the factor relating adjusted to plain skewness.
pub fn fpas_coefficient(n: usize) -> f64 {
    let nf = n as f64;
    (nf * (nf - 1.0)).sqrt() / (nf - 2.0)
}

/// Exact mean and variance, plus skewness; needs n ≥ 2.
pub fn sample_moments(d: &Dataset) -> Result<SampleMoments> {
    if d.n() < 2 {
        return Err(Error::TooFewValues {
            needed: 2,
            got: d.n(),
        });
    }
    let n1 = Scalar::from_int(d.n() as i64 - 1);
    Ok(SampleMoments {
        n: d.n(),
        mean: d.mean().clone(),
        variance: d.m2_sum() / &n1,
        m2_sum: d.m2_sum().clone(),
        m3_sum: d.m3_sum().clone(),
    })
}

/// Bin-index moments of a shape; these depend only on the counts, never on
/// the grid placement.
#[derive(Clone, Debug)]
pub struct ShapeMoments {
    pub n: u64,
    /// Count-weighted average bin index Σ v_k·k / n.
    pub kbar: Scalar,
    /// Σ v_k (k - k̄)²
    pub s2: Scalar,
    /// Σ v_k (k - k̄)³
    pub s3: Scalar,
}

impl ShapeMoments {
    pub fn of(shape: &Shape) -> ShapeMoments {
        let n = shape.total();
        let nf = Scalar::from_int(n as i64);
        let mut weighted = Scalar::zero();
        for (i, &v) in shape.counts().iter().enumerate() {
            weighted = weighted + Scalar::from_int((i as i64 + 1) * v as i64);
        }
        let kbar = weighted / &nf;
        let mut s2 = Scalar::zero();
        let mut s3 = Scalar::zero();
        for (i, &v) in shape.counts().iter().enumerate() {
            if v == 0 {
                continue;
            }
            let dev = Scalar::from_int(i as i64 + 1) - &kbar;
            let w = Scalar::from(v);
            let d2 = &dev * &dev;
            s3 = s3 + &w * &d2 * &dev;
            s2 = s2 + &w * &d2;
        }
        ShapeMoments { n, kbar, s2, s3 }
    }

    /// Σ v_k (k - k̄)² / (n - 1) — the width-free part of the grouped
    /// variance.
    pub fn c(&self) -> Scalar {
        self.s2.clone() / Scalar::from_int(self.n as i64 - 1)
    }
}

/// Which variance a histogram carries: bin-midpoint frequencies, or the
/// continuous density (which adds the within-bin term h²/12).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarianceFlavor {
    Frequency,
    Density,
}

/// Grouped mean `t0 + h·(k̄ - ½)`, exact.
pub fn grouped_mean(g: &BinGrid, s: &Shape) -> Result<Scalar> {
    if s.total() == 0 {
        return Err(Error::EmptyShape);
    }
    let gm = ShapeMoments::of(s);
    Ok(&g.t0 + &g.h * (gm.kbar - Scalar::from_ratio(1, 2)))
}

/// Grouped variance: `h²·C` for frequencies, `h²·C + h²/12` for densities.
pub fn grouped_variance(g: &BinGrid, s: &Shape, flavor: VarianceFlavor) -> Result<Scalar> {
    if s.total() < 2 {
        return Err(Error::TooFewValues {
            needed: 2,
            got: s.total() as usize,
        });
    }
    let h2 = &g.h * &g.h;
    let base = &h2 * ShapeMoments::of(s).c();
    Ok(match flavor {
        VarianceFlavor::Frequency => base,
        VarianceFlavor::Density => base + h2 / Scalar::from_int(12),
    })
}

/// Grouped Fisher-Pearson skewness of a shape. Undefined (an error, not a
/// NaN) when only one bin is occupied.
pub fn fps_grouped(s: &Shape) -> Result<f64> {
    Ok(fps_grouped_exact(s)?.to_f64())
}

pub fn fps_grouped_exact(s: &Shape) -> Result<SkewValue> {
    let gm = ShapeMoments::of(s);
    if !gm.s2.is_positive() {
        return Err(Error::SingleOccupiedBin);
    }
    SkewValue::new(gm.s3, gm.s2, gm.n)
}

/// The mean and variance constraint functions of a shape, evaluable anywhere
/// in the (t0, h) plane.
///
/// `f_m(t0, h) = t0 + h(k̄ - ½) - x̄` is affine; `f_v(t0, h) = h²·C - s²`
/// depends on h only and is strictly increasing in h when C > 0.
#[derive(Clone, Debug)]
pub struct ConstraintFns {
    pub kbar: Scalar,
    /// Width-free variance factor (C, possibly flavor-adjusted).
    pub c: Scalar,
    pub mean: Scalar,
    pub variance: Scalar,
}

impl ConstraintFns {
    pub fn f_m(&self, p: &Point) -> Scalar {
        &p.t0 + &p.h * (&self.kbar - &Scalar::from_ratio(1, 2)) - &self.mean
    }

    pub fn f_v(&self, p: &Point) -> Scalar {
        &p.h * &p.h * &self.c - &self.variance
    }
}

/// Frequency-flavor constraint functions for a shape against a dataset.
pub fn constraint_fns(d: &Dataset, s: &Shape) -> Result<ConstraintFns> {
    constraint_fns_flavored(d, s, VarianceFlavor::Frequency)
}

pub fn constraint_fns_flavored(
    d: &Dataset,
    s: &Shape,
    flavor: VarianceFlavor,
) -> Result<ConstraintFns> {
    let sm = sample_moments(d)?;
    let gm = ShapeMoments::of(s);
    let c = match flavor {
        VarianceFlavor::Frequency => gm.c(),
        VarianceFlavor::Density => gm.c() + Scalar::from_ratio(1, 12),
    };
    Ok(ConstraintFns {
        kbar: gm.kbar,
        c,
        mean: sm.mean,
        variance: sm.variance,
    })
}
