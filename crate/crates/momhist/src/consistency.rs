//! Method-of-moments parameter solving, joint-consistency verification by
//! recounting, five-way classification of every shape, and skewness rank
//! bands.

use std::cmp::Ordering;
use std::fmt;

use crate::core::dataset::Dataset;
use crate::core::domain::Domain;
use crate::core::grid::{bin_counts, bin_counts_quad, BinGrid, Shape};
use crate::core::polygon::Point;
use crate::core::quad::Quad;
use crate::core::scalar::Scalar;
use crate::error::{Error, Result};
use crate::levelset::{Catalog, LevelSet};
use crate::moments::{
    constraint_fns_flavored, fpas_coefficient, fps_grouped_exact, sample_moments, ShapeMoments,
    SkewValue,
};

pub use crate::moments::VarianceFlavor as Flavor;

/// Which variance constraint actually produced the width.
///
/// A single-occupied-bin shape has zero grouped frequency variance, so its
/// frequency constraint has no solution; the density constraint (which adds
/// the within-bin h²/12) still does, and is used as the fallback.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarianceForm {
    Frequency,
    Density,
    DensityFallback,
}

impl VarianceForm {
    pub fn label(&self) -> &'static str {
        match self {
            VarianceForm::Frequency => "frequency",
            VarianceForm::Density => "density",
            VarianceForm::DensityFallback => "density-fallback",
        }
    }
}

/// A solved method-of-moments placement for one shape.
///
/// The width satisfies `h² · c = s²` exactly (`radicand = h²`), the anchor
/// satisfies the mean constraint, and `recomputed` holds the counts at the
/// solved point when that point is an admissible grid. The solution is
/// jointly consistent iff recounting reproduces the input shape.
#[derive(Clone, Debug)]
pub struct MomSolution {
    pub shape: Shape,
    pub flavor: Flavor,
    pub variance_form: VarianceForm,
    /// Exact value of h_mom².
    pub radicand: Scalar,
    pub h_exact: Quad,
    pub t0_exact: Quad,
    pub h_mom: f64,
    pub t0_mom: f64,
    /// True iff the solved point lies in the bounded parameter domain
    /// (minimum in bin 1, all data within K bins, width within the cap).
    pub grid_valid: bool,
    pub recomputed: Option<Shape>,
    pub jointly_consistent: bool,
}

/// Solves the variance constraint for the width and the mean constraint for
/// the anchor, then recounts. Exact throughout: the solved point lives in
/// `Q(√radicand)` and every comparison is decided there.
pub fn solve_mom(d: &Dataset, s: &Shape, flavor: Flavor, domain: &Domain) -> Result<MomSolution> {
    let sm = sample_moments(d)?;
    if !sm.variance.is_positive() {
        return Err(Error::ZeroVariance);
    }
    let gm = ShapeMoments::of(s);
    let c = gm.c();
    let twelfth = Scalar::from_ratio(1, 12);
    let (c_eff, variance_form) = match flavor {
        Flavor::Frequency if c.is_zero() => (twelfth, VarianceForm::DensityFallback),
        Flavor::Frequency => (c, VarianceForm::Frequency),
        Flavor::Density => (&c + &twelfth, VarianceForm::Density),
    };
    let radicand = &sm.variance / &c_eff;
    let h = Quad::sqrt(radicand.clone());
    let neg_coef = Scalar::from_ratio(1, 2) - &gm.kbar;
    let t0 = Quad::new(sm.mean.clone(), neg_coef, radicand.clone());

    let grid_valid = mom_point_admissible(d, domain, &t0, &h);
    let recomputed = if grid_valid {
        Some(bin_counts_quad(d, &t0, &h, domain.k)?)
    } else {
        None
    };
    let jointly_consistent = recomputed.as_ref() == Some(s);

    Ok(MomSolution {
        shape: s.clone(),
        flavor,
        variance_form,
        h_mom: h.to_f64(),
        t0_mom: t0.to_f64(),
        radicand,
        h_exact: h,
        t0_exact: t0,
        grid_valid,
        recomputed,
        jointly_consistent,
    })
}

/// Domain membership for the solved point, with the domain's open/closed
/// boundary semantics.
fn mom_point_admissible(d: &Dataset, domain: &Domain, t0: &Quad, h: &Quad) -> bool {
    let x_min = d.x_min();
    let x_max = d.x_max();
    // t0 <= x_min
    if t0.cmp_scalar(x_min) == Ordering::Greater {
        return false;
    }
    // x_min < t0 + h
    if t0.add(h).cmp_scalar(x_min) != Ordering::Greater {
        return false;
    }
    // x_max < t0 + K·h
    let k = Scalar::from(domain.k);
    if t0.add(&h.scale(&k)).cmp_scalar(x_max) != Ordering::Greater {
        return false;
    }
    // h <= cap
    if h.cmp_scalar(&domain.cap) == Ordering::Greater {
        return false;
    }
    if domain.mode == crate::core::domain::DomainMode::ExactlyK {
        // t0 + (K-1)·h <= x_max
        let km1 = &k - &Scalar::one();
        if t0.add(&h.scale(&km1)).cmp_scalar(x_max) == Ordering::Greater {
            return false;
        }
    }
    true
}

/// The five-way mean/variance consistency classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConsistencyClass {
    /// The solved MOM point reproduces the shape: mean and variance hold
    /// simultaneously.
    Joint,
    /// Both constraint lines cross the level set, but their intersection
    /// lies outside it.
    IndividualBoth,
    MeanOnly,
    VarOnly,
    Neither,
}

impl ConsistencyClass {
    pub fn label(&self) -> &'static str {
        match self {
            ConsistencyClass::Joint => "joint",
            ConsistencyClass::IndividualBoth => "individual-both",
            ConsistencyClass::MeanOnly => "mean-only",
            ConsistencyClass::VarOnly => "variance-only",
            ConsistencyClass::Neither => "neither",
        }
    }
}

impl fmt::Display for ConsistencyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classification outcome for one shape.
#[derive(Clone, Debug)]
pub struct ShapeClassification {
    pub shape: Shape,
    pub class: ConsistencyClass,
    pub mean_consistent: bool,
    pub variance_consistent: bool,
    pub solution: MomSolution,
}

/// Does the zero set of `f` meet the level set? Exact: a strict sign change
/// over the vertices means an interior crossing; zeros confined to the
/// boundary count only where the touched points actually belong to the level
/// set, which is decided by recounting bins there.
fn zero_set_meets_level_set<F>(d: &Dataset, k: u32, ls: &LevelSet, f: F) -> Result<bool>
where
    F: Fn(&Point) -> Scalar,
{
    let vs = ls.vertices();
    let n = vs.len();
    let signs: Vec<i8> = vs.iter().map(|v| f(v).signum()).collect();
    let pos = signs.iter().any(|&s| s > 0);
    let neg = signs.iter().any(|&s| s < 0);
    if pos && neg {
        return Ok(true);
    }
    let mut candidates: Vec<Point> = Vec::new();
    for i in 0..n {
        if signs[i] == 0 {
            candidates.push(vs[i].clone());
            if signs[(i + 1) % n] == 0 {
                let u = &vs[i];
                let v = &vs[(i + 1) % n];
                let half = Scalar::from_ratio(1, 2);
                candidates.push(Point::new(
                    (&u.t0 + &v.t0) * &half,
                    (&u.h + &v.h) * &half,
                ));
            }
        }
    }
    for p in candidates {
        let grid = BinGrid::new(p.t0, p.h, k)?;
        if let Ok(shape) = bin_counts(d, &grid) {
            if &shape == ls.shape() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Classifies one level set's shape.
pub fn classify_shape(
    d: &Dataset,
    ls: &LevelSet,
    flavor: Flavor,
    domain: &Domain,
) -> Result<ShapeClassification> {
    let solution = solve_mom(d, ls.shape(), flavor, domain)?;
    let fns = constraint_fns_flavored(d, ls.shape(), flavor)?;
    let c_eff = match solution.variance_form {
        VarianceForm::DensityFallback => Scalar::from_ratio(1, 12),
        _ => fns.c.clone(),
    };
    let variance = fns.variance.clone();
    let mean_consistent = zero_set_meets_level_set(d, domain.k, ls, |p| fns.f_m(p))?;
    let variance_consistent = zero_set_meets_level_set(d, domain.k, ls, |p| {
        &p.h * &p.h * &c_eff - &variance
    })?;
    let class = if solution.jointly_consistent {
        ConsistencyClass::Joint
    } else if mean_consistent && variance_consistent {
        ConsistencyClass::IndividualBoth
    } else if mean_consistent {
        ConsistencyClass::MeanOnly
    } else if variance_consistent {
        ConsistencyClass::VarOnly
    } else {
        ConsistencyClass::Neither
    };
    Ok(ShapeClassification {
        shape: ls.shape().clone(),
        class,
        mean_consistent,
        variance_consistent,
        solution,
    })
}

/// Per-class shape lists and counts over a whole catalog, in catalog order.
#[derive(Clone, Debug)]
pub struct CatalogClassification {
    pub flavor: Flavor,
    pub entries: Vec<ShapeClassification>,
    pub tallies: Tallies,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Tallies {
    pub joint: usize,
    pub individual_both: usize,
    pub mean_only: usize,
    pub variance_only: usize,
    pub neither: usize,
}

impl Tallies {
    pub fn mean_or_variance(&self) -> usize {
        self.joint + self.individual_both + self.mean_only + self.variance_only
    }

    pub fn total(&self) -> usize {
        self.mean_or_variance() + self.neither
    }

    fn count(&mut self, class: ConsistencyClass) {
        match class {
            ConsistencyClass::Joint => self.joint += 1,
            ConsistencyClass::IndividualBoth => self.individual_both += 1,
            ConsistencyClass::MeanOnly => self.mean_only += 1,
            ConsistencyClass::VarOnly => self.variance_only += 1,
            ConsistencyClass::Neither => self.neither += 1,
        }
    }
}

/// Classifies every shape in the catalog.
pub fn classify_catalog(d: &Dataset, c: &Catalog, flavor: Flavor) -> Result<CatalogClassification> {
    let mut entries = Vec::with_capacity(c.len());
    let mut tallies = Tallies::default();
    for ls in c.sets() {
        let e = classify_shape(d, ls, flavor, c.domain())?;
        tallies.count(e.class);
        entries.push(e);
    }
    Ok(CatalogClassification {
        flavor,
        entries,
        tallies,
    })
}

/// Rank-band fractions; the defaults are 10% and 5% of the catalog.
#[derive(Clone, Debug)]
pub struct RankBands {
    pub t: Scalar,
    pub f: Scalar,
}

impl Default for RankBands {
    fn default() -> Self {
        RankBands {
            t: Scalar::from_ratio(1, 10),
            f: Scalar::from_ratio(1, 20),
        }
    }
}

impl RankBands {
    pub fn validate(&self) -> Result<()> {
        let half = Scalar::from_ratio(1, 2);
        for frac in [&self.t, &self.f] {
            if !frac.is_positive() || frac > &half {
                return Err(Error::invalid_config(
                    "rank band fractions must lie in (0, 1/2]",
                ));
            }
        }
        Ok(())
    }

    /// Band width in ranks: `round-half-up(fraction · s)`.
    pub fn widths(&self, s: usize) -> (i64, i64) {
        (band_width(&self.t, s), band_width(&self.f, s))
    }
}

fn band_width(frac: &Scalar, s: usize) -> i64 {
    let scaled = frac * &Scalar::from_int(s as i64) + Scalar::from_ratio(1, 2);
    let f = scaled.floor_int();
    // frac <= 1/2 and s is a catalog size, so this fits comfortably
    i64::try_from(f).expect("band width fits in i64")
}

/// Signed skewness rank of one shape.
#[derive(Clone, Debug)]
pub struct SkewRank {
    pub shape: Shape,
    /// Grouped Fisher-Pearson skewness; `None` for single-occupied-bin
    /// shapes, which stay unranked.
    pub fps: Option<f64>,
    pub fpas: Option<f64>,
    /// +1, +2, … above the data skewness by increasing deviation; -1, -2, …
    /// below. Equal skewness values share a rank (competition style).
    pub rank: Option<i64>,
    pub tied: bool,
    pub in_t: bool,
    pub in_f: bool,
}

/// Ranks every catalog shape by grouped skewness against the data skewness.
pub fn skew_rank(d: &Dataset, c: &Catalog, bands: &RankBands) -> Result<Vec<SkewRank>> {
    bands.validate()?;
    let sm = sample_moments(d)?;
    let fps_x = sm.fps_exact()?;
    let n = d.n();
    let fpas_k = fpas_coefficient(n);

    let exact: Vec<Option<SkewValue>> = c
        .shapes()
        .map(|s| fps_grouped_exact(s).ok())
        .collect();

    let mut above: Vec<(usize, &SkewValue)> = Vec::new();
    let mut below: Vec<(usize, &SkewValue)> = Vec::new();
    for (i, sv) in exact.iter().enumerate() {
        if let Some(sv) = sv {
            if sv.exact_cmp(&fps_x) == Ordering::Less {
                below.push((i, sv));
            } else {
                above.push((i, sv));
            }
        }
    }
    // above: increasing deviation = increasing skewness
    above.sort_by(|a, b| a.1.exact_cmp(b.1).then_with(|| a.0.cmp(&b.0)));
    // below: increasing deviation = decreasing skewness
    below.sort_by(|a, b| b.1.exact_cmp(a.1).then_with(|| a.0.cmp(&b.0)));

    let mut rank_of: Vec<Option<(i64, bool)>> = vec![None; exact.len()];
    for (list, sign) in [(&above, 1i64), (&below, -1i64)] {
        let mut i = 0;
        while i < list.len() {
            let mut j = i + 1;
            while j < list.len() && list[j].1.exact_cmp(list[i].1) == Ordering::Equal {
                j += 1;
            }
            let rank = sign * (i as i64 + 1);
            for item in &list[i..j] {
                rank_of[item.0] = Some((rank, j - i > 1));
            }
            i = j;
        }
    }

    let (t_width, f_width) = bands.widths(c.len());
    let mut out = Vec::with_capacity(c.len());
    for (i, shape) in c.shapes().enumerate() {
        let fps = exact[i].as_ref().map(|sv| sv.to_f64());
        let fpas = if n >= 3 { fps.map(|v| fpas_k * v) } else { None };
        let (rank, tied) = match rank_of[i] {
            Some((r, t)) => (Some(r), t),
            None => (None, false),
        };
        let in_t = rank.is_some_and(|r| r.abs() <= t_width);
        let in_f = rank.is_some_and(|r| r.abs() <= f_width);
        out.push(SkewRank {
            shape: shape.clone(),
            fps,
            fpas,
            rank,
            tied,
            in_t,
            in_f,
        });
    }
    Ok(out)
}

/// Full per-shape analysis: classification joined with skew ranking.
#[derive(Clone, Debug)]
pub struct CatalogAnalysis {
    pub flavor: Flavor,
    pub fps_x: f64,
    pub fpas_x: Option<f64>,
    pub t_band: i64,
    pub f_band: i64,
    pub tallies: Tallies,
    pub entries: Vec<ShapeAnalysis>,
}

#[derive(Clone, Debug)]
pub struct ShapeAnalysis {
    pub classification: ShapeClassification,
    pub skew: SkewRank,
    pub in_t_and_joint: bool,
}

pub fn analyze_catalog(
    d: &Dataset,
    c: &Catalog,
    flavor: Flavor,
    bands: &RankBands,
) -> Result<CatalogAnalysis> {
    let classification = classify_catalog(d, c, flavor)?;
    let ranks = skew_rank(d, c, bands)?;
    let sm = sample_moments(d)?;
    let (t_band, f_band) = bands.widths(c.len());
    let tallies = classification.tallies;
    let entries: Vec<ShapeAnalysis> = classification
        .entries
        .into_iter()
        .zip(ranks)
        .map(|(classification, skew)| {
            let in_t_and_joint =
                skew.in_t && classification.class == ConsistencyClass::Joint;
            ShapeAnalysis {
                classification,
                skew,
                in_t_and_joint,
            }
        })
        .collect();
    Ok(CatalogAnalysis {
        flavor,
        fps_x: sm.fps()?,
        fpas_x: sm.fpas().ok(),
        t_band,
        f_band,
        tallies,
        entries,
    })
}
