//! Symmetry testing, shape-reversal detection, mode-inversion reporting, and
//! skewness-sign auditing of user-supplied histograms.

use crate::consistency::{analyze_catalog, ConsistencyClass, Flavor, RankBands};
use crate::core::dataset::Dataset;
use crate::core::domain::DomainMode;
use crate::core::grid::{bin_counts, BinGrid, Shape};
use crate::core::polygon::Point;
use crate::core::scalar::Scalar;
use crate::error::Result;
use crate::levelset::{enumerate_level_sets, Catalog};
use crate::moments::{fps_grouped_exact, sample_moments};

/// Exact symmetry: the i-th smallest and i-th largest values always sum to
/// twice the mean.
pub fn is_exactly_symmetric(d: &Dataset) -> bool {
    let values = d.values();
    let n = values.len();
    let twice_mean = d.mean() * &Scalar::from_int(2);
    for i in 0..n.div_ceil(2) {
        if &values[i] + &values[n - 1 - i] != twice_mean {
            return false;
        }
    }
    true
}

/// A shape paired with its reversal, both attainable; palindromic shapes
/// pair with themselves.
#[derive(Clone, Debug)]
pub struct ReversalPair {
    pub shape: Shape,
    pub reversed: Shape,
    /// Interior witnesses (level-set centroids) for each orientation.
    pub witness: Point,
    pub witness_reversed: Point,
}

/// All unordered {shape, reversal} pairs present in the catalog.
pub fn reversal_pairs(c: &Catalog) -> Vec<ReversalPair> {
    let mut out = Vec::new();
    for ls in c.sets() {
        let rev = ls.shape().reversed();
        if ls.shape() > &rev {
            continue; // count each unordered pair once
        }
        if let Some(rls) = c.lookup(&rev) {
            out.push(ReversalPair {
                shape: ls.shape().clone(),
                reversed: rev,
                witness: ls.centroid().clone(),
                witness_reversed: rls.centroid().clone(),
            });
        }
    }
    out
}

/// True iff every catalog shape's reversal is also attainable.
pub fn reversal_coverage(c: &Catalog) -> bool {
    c.shapes().all(|s| c.lookup(&s.reversed()).is_some())
}

/// Shapes whose reversal is missing from the catalog.
pub fn unpaired_shapes(c: &Catalog) -> Vec<Shape> {
    c.shapes()
        .filter(|s| c.lookup(&s.reversed()).is_none())
        .cloned()
        .collect()
}

/// Two attainable shapes whose modal bins trade places between the center
/// and the boundary.
#[derive(Clone, Debug)]
pub struct ModeInversionPair {
    pub a: Shape,
    pub b: Shape,
    pub witness_a: Point,
    pub witness_b: Point,
}

/// Distance of a 1-based bin index from the nearer boundary bin.
fn centrality(k: usize, bins: usize) -> usize {
    (k - 1).min(bins - k)
}

fn max_centrality(indices: &[usize], bins: usize) -> usize {
    indices
        .iter()
        .map(|&k| centrality(k, bins))
        .max()
        .expect("nonempty index set")
}

/// Flags shape pairs with disjoint modal-bin sets whose modal and
/// anti-modal centralities order oppositely: one shape peaks in the middle
/// where the other peaks at the edges.
pub fn mode_inversion_report(c: &Catalog) -> Vec<ModeInversionPair> {
    let sets = c.sets();
    let mut out = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        let a_max = a.shape().argmax_bins();
        let a_mc = max_centrality(&a_max, a.shape().num_bins()) as i64;
        let a_ac = max_centrality(&a.shape().argmin_bins(), a.shape().num_bins()) as i64;
        for b in &sets[i + 1..] {
            let b_max = b.shape().argmax_bins();
            if a_max.iter().any(|k| b_max.contains(k)) {
                continue;
            }
            let b_mc = max_centrality(&b_max, b.shape().num_bins()) as i64;
            let b_ac = max_centrality(&b.shape().argmin_bins(), b.shape().num_bins()) as i64;
            if (a_mc - b_mc) * (a_ac - b_ac) < 0 {
                out.push(ModeInversionPair {
                    a: a.shape().clone(),
                    b: b.shape().clone(),
                    witness_a: a.centroid().clone(),
                    witness_b: b.centroid().clone(),
                });
            }
        }
    }
    out
}

/// Data values that sit exactly on a grid edge `t0 + k·h`; for such grids
/// right-open and left-open bin conventions disagree.
pub fn edge_collisions(d: &Dataset, g: &BinGrid) -> Vec<(Scalar, u32)> {
    let mut out = Vec::new();
    for x in d.values() {
        let offset = &(x - &g.t0) / &g.h;
        if offset.is_integer() {
            if let Ok(k) = u32::try_from(offset.floor_int()) {
                if k <= g.k {
                    out.push((x.clone(), k));
                }
            }
        }
    }
    out.dedup();
    out
}

/// Audit of one concrete histogram grid against its data.
#[derive(Clone, Debug)]
pub struct AuditVerdict {
    pub grid: BinGrid,
    pub shape: Shape,
    pub fps_g: Option<f64>,
    pub fps_x: f64,
    /// Histogram skewness and data skewness are both nonzero with opposite
    /// signs: the picture contradicts the numbers.
    pub sign_conflict: bool,
    /// Consistency class of the shape within the K-bin catalog, when the
    /// shape is attainable inside the bounded domain.
    pub class: Option<ConsistencyClass>,
    /// Jointly consistent shape closest to the data skewness.
    pub suggested: Option<SuggestedShape>,
    pub edge_collisions: Vec<(Scalar, u32)>,
}

#[derive(Clone, Debug)]
pub struct SuggestedShape {
    pub shape: Shape,
    pub fps_g: f64,
    pub in_t_band: bool,
}

/// Computes the audited grid's shape and skewness, classifies it, and
/// proposes the best jointly consistent alternative.
pub fn audit(d: &Dataset, g: &BinGrid, flavor: Flavor) -> Result<AuditVerdict> {
    let shape = bin_counts(d, g)?;
    let sm = sample_moments(d)?;
    let fps_x_exact = sm.fps_exact()?;
    let fps_x = fps_x_exact.to_f64();
    let fps_g_exact = fps_grouped_exact(&shape).ok();
    let fps_g = fps_g_exact.as_ref().map(|v| v.to_f64());
    let sign_conflict = fps_g_exact
        .as_ref()
        .is_some_and(|g| g.signum() != 0 && fps_x_exact.signum() != 0 && g.signum() != fps_x_exact.signum());

    let catalog = enumerate_level_sets(d, g.k, DomainMode::AtMostK)?;
    let analysis = analyze_catalog(d, &catalog, flavor, &RankBands::default())?;
    let class = analysis
        .entries
        .iter()
        .find(|e| e.classification.shape == shape)
        .map(|e| e.classification.class);

    let mut suggested: Option<SuggestedShape> = None;
    let mut best_dev = f64::INFINITY;
    for e in &analysis.entries {
        if e.classification.class != ConsistencyClass::Joint {
            continue;
        }
        let Some(fps) = e.skew.fps else { continue };
        let dev = (fps - fps_x).abs();
        if dev + 1e-9 < best_dev {
            best_dev = dev;
            suggested = Some(SuggestedShape {
                shape: e.classification.shape.clone(),
                fps_g: fps,
                in_t_band: e.in_t_and_joint,
            });
        }
    }

    Ok(AuditVerdict {
        edge_collisions: edge_collisions(d, g),
        grid: g.clone(),
        shape,
        fps_g,
        fps_x,
        sign_conflict,
        class,
        suggested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::dataset::parse_dataset;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    fn shape(counts: &[u32]) -> Shape {
        Shape::new(counts.to_vec()).unwrap()
    }

    fn symmetric20() -> Dataset {
        parse_dataset(
            "2.05, 2.27, 2.50, 2.95, 3.18, 3.41, 3.64, 3.86, 4.09, 4.32,\n\
             5.68, 5.91, 6.14, 6.36, 6.59, 6.82, 7.05, 7.50, 7.73, 7.95",
        )
        .unwrap()
    }

    fn sample12() -> Dataset {
        parse_dataset(".37, 1.13, 1.23, 2.25, 2.35, 2.45, 3.37, 4.37, 4.47, 5.37, 5.47, 5.61")
            .unwrap()
    }

    #[test]
    fn symmetry_detection() {
        assert!(is_exactly_symmetric(&symmetric20()));
        assert!(!is_exactly_symmetric(&sample12()));
        assert!(is_exactly_symmetric(&parse_dataset("4.2").unwrap()));
        assert!(is_exactly_symmetric(&parse_dataset("1, 7").unwrap()));
        assert!(is_exactly_symmetric(&parse_dataset("1, 2, 3").unwrap()));
        assert!(!is_exactly_symmetric(&parse_dataset("1, 2, 4").unwrap()));
    }

    #[test]
    fn symmetric_data_reversals_cover_catalog() {
        let d = symmetric20();
        let cat = enumerate_level_sets(&d, 6, DomainMode::AtMostK).unwrap();
        assert!(reversal_coverage(&cat));
        let pairs = reversal_pairs(&cat);
        for want in [
            (vec![10u32, 9, 1], vec![1u32, 9, 10]),
            (vec![8, 4, 7, 1], vec![1, 7, 4, 8]),
            (vec![6, 4, 4, 5, 1], vec![1, 5, 4, 4, 6]),
            (vec![4, 6, 0, 5, 4, 1], vec![1, 4, 5, 0, 6, 4]),
        ] {
            let (a, b) = (shape(&want.0), shape(&want.1));
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            assert!(
                pairs.iter().any(|p| p.shape == lo && p.reversed == hi),
                "missing pair {lo} / {hi}"
            );
        }
        // witnesses reproduce their shapes
        for p in &pairs {
            let g = BinGrid::new(p.witness.t0.clone(), p.witness.h.clone(), 6).unwrap();
            assert_eq!(&bin_counts(&d, &g).unwrap(), &p.shape);
        }
    }

    #[test]
    fn asymmetric_data_leave_unpaired_shapes() {
        let d = sample12();
        let cat = enumerate_level_sets(&d, 6, DomainMode::AtMostK).unwrap();
        assert!(!reversal_coverage(&cat));
        let unpaired = unpaired_shapes(&cat);
        assert!(!unpaired.is_empty());
        // but some reversal pairs still exist, e.g. (5,3,4)/(4,3,5)
        let pairs = reversal_pairs(&cat);
        assert!(pairs
            .iter()
            .any(|p| p.shape == shape(&[4, 3, 5]) && p.reversed == shape(&[5, 3, 4])));
    }

    #[test]
    fn mode_inversions_flag_published_pairs() {
        let d12 = sample12();
        let cat12 = enumerate_level_sets(&d12, 6, DomainMode::AtMostK).unwrap();
        let pairs = mode_inversion_report(&cat12);
        assert!(pairs
            .iter()
            .any(|p| p.a == shape(&[1, 2, 3, 3, 2, 1]) && p.b == shape(&[3, 2, 1, 1, 2, 3])));

        let d20 = symmetric20();
        for k in [4u32, 5, 6] {
            let cat = enumerate_level_sets(&d20, k, DomainMode::AtMostK).unwrap();
            let pairs = mode_inversion_report(&cat);
            assert!(
                pairs
                    .iter()
                    .any(|p| p.a == shape(&[1, 9, 9, 1]) && p.b == shape(&[6, 4, 4, 6])),
                "missing inversion pair at K={k}"
            );
        }
    }

    #[test]
    fn no_mode_inversions_in_tiny_catalog() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let cat = enumerate_level_sets(&d, 4, DomainMode::AtMostK).unwrap();
        assert!(mode_inversion_report(&cat).is_empty());
        let single = parse_dataset("0\n1").unwrap();
        let cat = enumerate_level_sets(&single, 1, DomainMode::AtMostK).unwrap();
        assert!(mode_inversion_report(&cat).is_empty());
    }

    #[test]
    fn edge_collision_detection() {
        let d = parse_dataset("0\n0.5\n1").unwrap();
        let g = BinGrid::new(s("0"), s("1/2"), 3).unwrap();
        let hits = edge_collisions(&d, &g);
        assert_eq!(hits.len(), 3); // every value sits on an edge
        let g = BinGrid::new(s("-0.01"), s("1/2"), 3).unwrap();
        assert!(edge_collisions(&d, &g).is_empty());
    }

    #[test]
    fn audit_flags_sign_conflicts() {
        let d = sample12();
        // (5,3,4) is jointly mean/variance consistent yet right-skewed while
        // the data skew left: exactly the conflict the audit must flag
        let sol_grid = BinGrid::new(s("0.3159"), s("2.0382"), 6).unwrap();
        let verdict = audit(&d, &sol_grid, Flavor::Frequency).unwrap();
        assert_eq!(verdict.shape, shape(&[5, 3, 4]));
        assert_eq!(verdict.class, Some(ConsistencyClass::Joint));
        assert!(verdict.fps_g.unwrap() > 0.0 && verdict.fps_x < 0.0);
        assert!(verdict.sign_conflict);
        assert!(verdict.edge_collisions.is_empty());
        // the suggested alternative is jointly consistent and closer in skew
        let suggested = verdict.suggested.unwrap();
        let dev_sugg = (suggested.fps_g - verdict.fps_x).abs();
        let dev_here = (verdict.fps_g.unwrap() - verdict.fps_x).abs();
        assert!(dev_sugg < dev_here);

        // (3,8,1) skews the same way as the data: no conflict
        let g = BinGrid::new(s("-1.1"), s("3.3"), 6).unwrap();
        let v = audit(&d, &g, Flavor::Frequency).unwrap();
        assert_eq!(v.shape, shape(&[3, 8, 1]));
        assert!(v.fps_g.unwrap() < 0.0);
        assert!(!v.sign_conflict);
    }

    #[test]
    fn audit_on_symmetric_palindrome_has_no_conflict() {
        let d = symmetric20();
        let g = BinGrid::new(s("-0.68"), s("2.84"), 4).unwrap();
        let v = audit(&d, &g, Flavor::Frequency).unwrap();
        assert_eq!(v.shape, shape(&[1, 9, 9, 1]));
        assert_eq!(v.fps_g, Some(0.0));
        assert!(!v.sign_conflict);
    }
}
