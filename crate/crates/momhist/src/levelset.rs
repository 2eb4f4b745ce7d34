//! Shape level sets: the convex faces of the boundary-line arrangement
//! clipped to the parameter domain, one face per attainable shape.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::core::dataset::Dataset;
use crate::core::domain::{build_domain_with, Domain, DomainMode};
use crate::core::grid::{bin_counts, BinGrid, Shape};
use crate::core::polygon::{convex_hull, Line, Point, Polygon};
use crate::core::quad::Quad;
use crate::core::scalar::Scalar;
use crate::error::{Error, Result};

/// The line `t0 + k·h = x`: a bin edge pinned to a data value. Crossing it
/// moves that value into the adjacent bin, so these lines bound level sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryLine {
    pub k: u32,
    pub x: Scalar,
}

impl BoundaryLine {
    pub fn as_line(&self) -> Line {
        Line::new(Scalar::one(), Scalar::from(self.k), self.x.clone())
    }
}

/// All candidate boundary lines `t0 + k·h = x_i` for `k = 0..=K` over the
/// distinct data values, ordered by (k, x).
pub fn boundary_lines(d: &Dataset, k: u32) -> Vec<BoundaryLine> {
    let mut distinct: Vec<&Scalar> = Vec::new();
    for x in d.values() {
        if distinct.last() != Some(&x) {
            distinct.push(x);
        }
    }
    let mut lines = Vec::with_capacity(distinct.len() * (k as usize + 1));
    for kk in 0..=k {
        for x in &distinct {
            lines.push(BoundaryLine {
                k: kk,
                x: (*x).clone(),
            });
        }
    }
    lines
}

/// One edge of a level-set polygon. The polygon owns the points on this edge
/// iff its interior lies on the negative side of the (normalized) line: there
/// the pinned data value still counts in the lower-index bin's successor, so
/// the shape is unchanged on the boundary.
#[derive(Clone, Debug)]
pub struct LevelSetEdge {
    pub line: Line,
    pub interior_sign: i8,
}

/// A maximal convex region of (t0, h) values that all produce `shape`.
#[derive(Clone, Debug)]
pub struct LevelSet {
    shape: Shape,
    polygon: Polygon,
    centroid: Point,
    h_min: Scalar,
    h_max: Scalar,
    edges: Vec<LevelSetEdge>,
}

impl LevelSet {
    fn build(shape: Shape, polygon: Polygon) -> LevelSet {
        let polygon = polygon.canonical();
        let centroid = polygon.centroid();
        let h_min = polygon.h_min();
        let h_max = polygon.h_max();
        let vs = polygon.vertices();
        let n = vs.len();
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let line = Line::through(&vs[i], &vs[(i + 1) % n]);
            let interior_sign = line.side(&centroid);
            debug_assert!(interior_sign != 0, "centroid on an edge line");
            edges.push(LevelSetEdge {
                line,
                interior_sign,
            });
        }
        LevelSet {
            shape,
            polygon,
            centroid,
            h_min,
            h_max,
            edges,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn vertices(&self) -> &[Point] {
        self.polygon.vertices()
    }

    pub fn centroid(&self) -> &Point {
        &self.centroid
    }

    pub fn h_min(&self) -> &Scalar {
        &self.h_min
    }

    pub fn h_max(&self) -> &Scalar {
        &self.h_max
    }

    pub fn edges(&self) -> &[LevelSetEdge] {
        &self.edges
    }

    /// Membership with half-open boundary ownership: strict interior always,
    /// boundary points only where every touching edge is owned (interior on
    /// the negative side of the bin-edge line).
    pub fn contains(&self, p: &Point) -> bool {
        for e in &self.edges {
            match e.line.side(p) {
                0 => {
                    if e.interior_sign > 0 {
                        return false;
                    }
                }
                s if s == e.interior_sign => {}
                _ => return false,
            }
        }
        true
    }

    /// Same membership test for a point with coordinates in `Q(√r)`.
    pub fn contains_quad(&self, t0: &Quad, h: &Quad) -> bool {
        for e in &self.edges {
            match e.line.side_quad(t0, h) {
                0 => {
                    if e.interior_sign > 0 {
                        return false;
                    }
                }
                s if s == e.interior_sign => {}
                _ => return false,
            }
        }
        true
    }
}

/// Every level set for one (dataset, K, mode) choice, ordered
/// lexicographically by (number of bins, counts).
#[derive(Clone, Debug)]
pub struct Catalog {
    digest: String,
    n: usize,
    domain: Domain,
    sets: Vec<LevelSet>,
    /// Shapes whose faces did not merge into a single convex polygon. Empty
    /// in every observed case; populated regions are reported verbatim.
    merge_anomalies: Vec<Shape>,
}

impl Catalog {
    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.domain.k
    }

    pub fn mode(&self) -> DomainMode {
        self.domain.mode
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn sets(&self) -> &[LevelSet] {
        &self.sets
    }

    /// Number of shapes (the paper-style S).
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn merge_anomalies(&self) -> &[Shape] {
        &self.merge_anomalies
    }

    pub fn shapes(&self) -> impl Iterator<Item = &Shape> {
        self.sets.iter().map(|ls| ls.shape())
    }

    /// Exact lookup after trailing-zero canonicalization; `None` means the
    /// shape is unattainable for this dataset and bin budget.
    pub fn lookup(&self, shape: &Shape) -> Option<&LevelSet> {
        self.sets
            .binary_search_by(|ls| ls.shape().cmp(shape))
            .ok()
            .map(|i| &self.sets[i])
    }
}

/// Enumerates all shape level sets with the default width slack.
pub fn enumerate_level_sets(d: &Dataset, k: u32, mode: DomainMode) -> Result<Catalog> {
    enumerate_level_sets_with(d, k, mode, None)
}

/// Enumerates all shape level sets.
///
/// The domain is subdivided by every boundary line that crosses it; each
/// resulting convex face is labeled with the bin counts at its vertex
/// average. Faces that share a trimmed shape are merged (their union must
/// again be convex, which is checked exactly by area).
pub fn enumerate_level_sets_with(
    d: &Dataset,
    k: u32,
    mode: DomainMode,
    delta: Option<Scalar>,
) -> Result<Catalog> {
    let domain = build_domain_with(d, k, mode, delta)?;
    let lines: Vec<Line> = boundary_lines(d, k)
        .iter()
        .map(BoundaryLine::as_line)
        .collect();
    let mut faces: Vec<Polygon> = Vec::new();
    subdivide(domain.polygon().clone(), &lines, &mut faces);

    let mut by_shape: BTreeMap<Shape, Vec<Polygon>> = BTreeMap::new();
    for face in faces {
        let c = face.centroid();
        let grid = BinGrid::new(c.t0, c.h, k)?;
        let shape = bin_counts(d, &grid)?;
        by_shape.entry(shape).or_default().push(face);
    }

    let mut sets = Vec::with_capacity(by_shape.len());
    let mut merge_anomalies = Vec::new();
    for (shape, group) in by_shape {
        let polygon = if group.len() == 1 {
            group.into_iter().next().expect("nonempty group")
        } else {
            let mut pts: Vec<Point> = Vec::new();
            let mut area_sum = Scalar::zero();
            for f in &group {
                pts.extend_from_slice(f.vertices());
                area_sum = area_sum + f.area2();
            }
            let hull = convex_hull(&pts);
            if hull.area2() != area_sum {
                merge_anomalies.push(shape.clone());
            }
            hull
        };
        sets.push(LevelSet::build(shape, polygon));
    }

    for ls in &sets {
        let c = ls.centroid();
        let grid = BinGrid::new(c.t0.clone(), c.h.clone(), k)?;
        let recounted = bin_counts(d, &grid)?;
        if &recounted != ls.shape() && !merge_anomalies.contains(ls.shape()) {
            return Err(Error::invalid_config(format!(
                "internal error: centroid of level set {} recounts as {}",
                ls.shape(),
                recounted
            )));
        }
    }

    Ok(Catalog {
        digest: d.digest(),
        n: d.n(),
        domain,
        sets,
        merge_anomalies,
    })
}

/// Recursively cuts a convex region by every line that crosses its interior.
/// Lines already found non-crossing for a region never cross its subregions,
/// so each branch only revisits the remaining suffix.
fn subdivide(poly: Polygon, lines: &[Line], out: &mut Vec<Polygon>) {
    for (j, line) in lines.iter().enumerate() {
        if poly.is_crossed_by(line) {
            let (neg, pos) = poly.split(line);
            let rest = &lines[j + 1..];
            subdivide(neg.expect("crossing split has a negative side"), rest, out);
            subdivide(pos.expect("crossing split has a positive side"), rest, out);
            return;
        }
    }
    out.push(poly);
}

/// Brute-force oracle: bin counts on a dense rational grid over the domain's
/// bounding box, keeping strictly interior sample points. Independent of the
/// arrangement machinery; every observed shape must appear in the catalog.
///
/// The lattice coordinates and all data values share one common denominator,
/// so the whole sweep runs in exact integer arithmetic (i128 when it fits,
/// arbitrary precision otherwise).
pub fn grid_sample_oracle(d: &Dataset, k: u32, resolution: u32) -> Result<BTreeSet<Shape>> {
    if resolution < 2 {
        return Err(Error::invalid_config("resolution must be at least 2"));
    }
    let domain = build_domain_with(d, k, DomainMode::AtMostK, None)?;
    let (t_lo, t_hi, h_lo, h_hi) = domain.polygon().bbox();
    let step_t = (&t_hi - &t_lo) / Scalar::from(2 * resolution);
    let step_h = (&h_hi - &h_lo) / Scalar::from(2 * resolution);

    // one scale S making every lattice coordinate, data value, and boundary
    // offset an integer
    let mut scale = num_bigint::BigInt::from(1);
    for v in [&t_lo, &step_t, &h_lo, &step_h] {
        scale = scale.lcm(v.denom());
    }
    for x in d.values() {
        scale = scale.lcm(x.denom());
    }
    for hp in domain.boundaries() {
        scale = scale.lcm(hp.line.c.denom());
        debug_assert!(hp.line.a.is_integer() && hp.line.b.is_integer());
    }
    let s = Scalar::from_big(num_rational::BigRational::from_integer(scale));

    let to_int = |v: &Scalar| -> Option<i128> {
        let scaled = v * &s;
        debug_assert!(scaled.is_integer());
        i128::try_from(scaled.numer().clone()).ok()
    };

    // overflow headroom: values stay far below i128 once the extremes fit
    let fits = [&t_lo, &t_hi, &h_lo, &h_hi]
        .iter()
        .all(|v| to_int(v).is_some_and(|i| i.abs() < i128::MAX / (4 * resolution as i128 + 8)));
    if !fits {
        return grid_sample_oracle_slow(d, &domain, k, resolution);
    }

    let t0_base = to_int(&t_lo).expect("checked") ;
    let h_base = to_int(&h_lo).expect("checked");
    let step_t_i = to_int(&step_t).expect("scaled step is integral");
    let step_h_i = to_int(&step_h).expect("scaled step is integral");
    let xs: Vec<i128> = d
        .values()
        .iter()
        .map(|x| to_int(x).expect("scaled datum is integral"))
        .collect();
    let bounds: Vec<(i128, i128, i128, i8)> = domain
        .boundaries()
        .iter()
        .map(|hp| {
            let a = i128::try_from(hp.line.a.numer().clone()).expect("small coefficient");
            let b = i128::try_from(hp.line.b.numer().clone()).expect("small coefficient");
            let c = to_int(&hp.line.c).expect("scaled offset is integral");
            (a, b, c, hp.inside_sign)
        })
        .collect();

    let mut shapes = BTreeSet::new();
    let mut counts: Vec<u32> = Vec::new();
    for i in 0..resolution {
        let t0 = t0_base + step_t_i * (2 * i as i128 + 1);
        'point: for j in 0..resolution {
            let h = h_base + step_h_i * (2 * j as i128 + 1);
            for &(a, b, c, inside) in &bounds {
                let v = a * t0 + b * h - c;
                if v.signum() != inside as i128 {
                    continue 'point;
                }
            }
            counts.clear();
            counts.resize(k as usize, 0);
            for &x in &xs {
                let idx = num_integer::Integer::div_floor(&(x - t0), &h);
                // interior points always yield valid grids
                counts[idx as usize] += 1;
            }
            shapes.insert(Shape::new(counts.clone())?);
        }
    }
    Ok(shapes)
}

/// Arbitrary-precision fallback for pathological magnitudes.
fn grid_sample_oracle_slow(
    d: &Dataset,
    domain: &Domain,
    k: u32,
    resolution: u32,
) -> Result<BTreeSet<Shape>> {
    let (t_lo, t_hi, h_lo, h_hi) = domain.polygon().bbox();
    let dt = &t_hi - &t_lo;
    let dh = &h_hi - &h_lo;
    let denom = Scalar::from(2 * resolution);
    let mut shapes = BTreeSet::new();
    for i in 0..resolution {
        let fi = Scalar::from(2 * i + 1);
        let t0 = &t_lo + &(&dt * &fi) / &denom;
        for j in 0..resolution {
            let fj = Scalar::from(2 * j + 1);
            let h = &h_lo + &(&dh * &fj) / &denom;
            let p = Point::new(t0.clone(), h);
            if !domain.contains_interior(&p) {
                continue;
            }
            let grid = BinGrid::new(p.t0, p.h, k)?;
            shapes.insert(bin_counts(d, &grid)?);
        }
    }
    Ok(shapes)
}
