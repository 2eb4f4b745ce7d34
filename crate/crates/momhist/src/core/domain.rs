//! The bounded convex domain of admissible (t0, h) pairs.
//!
//! The data minimum must land in bin 1, all data must fit in at most (or
//! exactly) K bins, and the width is capped at `range + delta` so the domain
//! is bounded. The default `delta` equals the data range.

use crate::core::dataset::Dataset;
use crate::core::polygon::{Line, Point, Polygon};
use crate::core::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DomainMode {
    /// Shapes of at most K bins.
    AtMostK,
    /// The last bin must be occupied: exactly K bins.
    ExactlyK,
}

impl DomainMode {
    pub fn label(&self, k: u32) -> String {
        match self {
            DomainMode::AtMostK => format!("at-most-{k}"),
            DomainMode::ExactlyK => format!("exactly-{k}"),
        }
    }
}

/// One boundary constraint. The inside of the domain is where
/// `sign(line.eval) == inside_sign`, with equality allowed iff `closed`.
#[derive(Clone, Debug)]
pub struct HalfPlane {
    pub line: Line,
    pub inside_sign: i8,
    pub closed: bool,
}

impl HalfPlane {
    fn new(a: i64, b: &Scalar, c: Scalar, inside_sign: i8, closed: bool) -> HalfPlane {
        HalfPlane {
            line: Line::new(Scalar::from_int(a), b.clone(), c),
            inside_sign,
            closed,
        }
    }

    pub fn admits(&self, p: &Point) -> bool {
        let s = self.line.side(p);
        s == self.inside_sign || (self.closed && s == 0)
    }

    pub fn admits_strict(&self, p: &Point) -> bool {
        self.line.side(p) == self.inside_sign
    }
}

/// Bounded convex polygon of admissible (t0, h) values.
#[derive(Clone, Debug)]
pub struct Domain {
    pub k: u32,
    pub mode: DomainMode,
    pub delta: Scalar,
    /// Width cap `range + delta`.
    pub cap: Scalar,
    polygon: Polygon,
    boundaries: Vec<HalfPlane>,
}

impl Domain {
    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn vertices(&self) -> &[Point] {
        self.polygon.vertices()
    }

    pub fn boundaries(&self) -> &[HalfPlane] {
        &self.boundaries
    }

    /// Membership with the true open/closed boundary semantics.
    pub fn contains(&self, p: &Point) -> bool {
        self.boundaries.iter().all(|hp| hp.admits(p))
    }

    /// Strict interior membership.
    pub fn contains_interior(&self, p: &Point) -> bool {
        self.boundaries.iter().all(|hp| hp.admits_strict(p))
    }
}

/// Builds the domain with the default width slack `delta = range`.
pub fn build_domain(d: &Dataset, k: u32, mode: DomainMode) -> Result<Domain> {
    build_domain_with(d, k, mode, None)
}

/// Builds the domain with an explicit width slack.
pub fn build_domain_with(
    d: &Dataset,
    k: u32,
    mode: DomainMode,
    delta: Option<Scalar>,
) -> Result<Domain> {
    if k == 0 {
        return Err(Error::invalid_config("need at least one bin"));
    }
    let range = d.range();
    if range.is_zero() {
        return Err(Error::DegenerateData);
    }
    let delta = match delta {
        Some(v) => {
            if !v.is_positive() {
                return Err(Error::invalid_config("delta must be positive"));
            }
            v
        }
        None => range.clone(),
    };
    let cap = &range + &delta;
    let x_min = d.x_min().clone();
    let x_max = d.x_max().clone();
    let kk = Scalar::from(k);

    let mut boundaries = vec![
        // t0 <= x_min
        HalfPlane::new(1, &Scalar::zero(), x_min.clone(), -1, true),
        // t0 + h > x_min
        HalfPlane::new(1, &Scalar::one(), x_min.clone(), 1, false),
        // t0 + K·h > x_max
        HalfPlane::new(1, &kk, x_max.clone(), 1, false),
        // h <= cap
        HalfPlane::new(0, &Scalar::one(), cap.clone(), -1, true),
    ];
    if mode == DomainMode::ExactlyK {
        // t0 + (K-1)·h <= x_max
        boundaries.push(HalfPlane::new(
            1,
            &(&kk - &Scalar::one()),
            x_max.clone(),
            -1,
            true,
        ));
    }

    // Seed box comfortably containing the closure, then clip.
    let pad = Scalar::one();
    let t_lo = (&x_min - &cap).min(&x_max - &kk * &cap) - &pad;
    let t_hi = &x_min + &pad;
    let h_lo = -&pad;
    let h_hi = &cap + &pad;
    let mut poly = Polygon::new(vec![
        Point::new(t_lo.clone(), h_lo.clone()),
        Point::new(t_hi.clone(), h_lo),
        Point::new(t_hi, h_hi.clone()),
        Point::new(t_lo, h_hi),
    ]);
    for hp in &boundaries {
        let (neg, pos) = poly.split(&hp.line);
        let kept = if hp.inside_sign < 0 { neg } else { pos };
        poly = kept.ok_or(Error::DegenerateData)?;
    }

    Ok(Domain {
        k,
        mode,
        delta,
        cap,
        polygon: poly.canonical(),
        boundaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::dataset::parse_dataset;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    fn pt(t0: &str, h: &str) -> Point {
        Point::new(s(t0), s(h))
    }

    #[test]
    fn domain_for_three_points_four_bins() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let dom = build_domain(&d, 4, DomainMode::AtMostK).unwrap();
        assert_eq!(
            dom.vertices(),
            &[pt("1", "1"), pt("1", "8"), pt("-7", "8"), pt("-1/3", "4/3")]
        );
        assert_eq!(dom.cap, s("8"));
    }

    #[test]
    fn domain_single_bin() {
        let d = parse_dataset("0\n1").unwrap();
        let dom = build_domain(&d, 1, DomainMode::AtMostK).unwrap();
        assert_eq!(dom.vertices(), &[pt("0", "1"), pt("0", "2"), pt("-1", "2")]);
    }

    #[test]
    fn degenerate_data_has_no_domain() {
        let d = parse_dataset("5\n5\n5").unwrap();
        assert!(matches!(
            build_domain(&d, 4, DomainMode::AtMostK),
            Err(Error::DegenerateData)
        ));
    }

    #[test]
    fn membership_honours_open_and_closed_edges() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let dom = build_domain(&d, 4, DomainMode::AtMostK).unwrap();
        // closed: t0 = x_min, h = cap
        assert!(dom.contains(&pt("1", "4")));
        assert!(dom.contains(&pt("0", "8")));
        // open: on t0 + h = x_min or t0 + 4h = x_max
        assert!(!dom.contains(&pt("-7", "8")));
        assert!(!dom.contains(&pt("1", "1")));
        // interior
        assert!(dom.contains_interior(&pt("0", "4")));
        assert!(!dom.contains_interior(&pt("1", "4")));
    }

    #[test]
    fn vertices_lie_in_every_closed_halfplane() {
        let d = parse_dataset("0.37, 1.13, 5.61, 2.25").unwrap();
        for mode in [DomainMode::AtMostK, DomainMode::ExactlyK] {
            let dom = build_domain(&d, 3, mode).unwrap();
            for v in dom.vertices() {
                for hp in dom.boundaries() {
                    let side = hp.line.side(v);
                    assert!(
                        side == hp.inside_sign || side == 0,
                        "vertex {v:?} violates a boundary"
                    );
                }
            }
            assert!(dom.polygon().signed_area2().is_positive());
        }
    }

    #[test]
    fn exactly_k_restricts_the_domain() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let at_most = build_domain(&d, 2, DomainMode::AtMostK).unwrap();
        let exact = build_domain(&d, 2, DomainMode::ExactlyK).unwrap();
        assert!(exact.polygon().area2() < at_most.polygon().area2());
        // (0, 6): bins [0,6) hold everything -> one bin, excluded when exact
        assert!(at_most.contains(&pt("0", "6")));
        assert!(!exact.contains(&pt("0", "6")));
    }

    #[test]
    fn custom_delta_changes_the_cap() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let dom = build_domain_with(&d, 4, DomainMode::AtMostK, Some(s("1"))).unwrap();
        assert_eq!(dom.cap, s("5"));
        assert!(build_domain_with(&d, 4, DomainMode::AtMostK, Some(s("0"))).is_err());
    }
}
