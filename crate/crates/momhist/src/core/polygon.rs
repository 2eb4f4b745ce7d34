//! Exact convex-polygon geometry in the (t0, h) plane.

use std::cmp::Ordering;

use crate::core::quad::Quad;
use crate::core::scalar::Scalar;

/// A point (t0, h) with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub t0: Scalar,
    pub h: Scalar,
}

impl Point {
    pub fn new(t0: Scalar, h: Scalar) -> Point {
        Point { t0, h }
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.t0, self.h)
    }
}

/// The line `a·t0 + b·h = c`, with `(a, b)` normalized lexicographically
/// positive so that equal lines compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Line {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl Line {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Line {
        assert!(!(a.is_zero() && b.is_zero()), "degenerate line");
        let flip = a.is_negative() || (a.is_zero() && b.is_negative());
        if flip {
            Line {
                a: -a,
                b: -b,
                c: -c,
            }
        } else {
            Line { a, b, c }
        }
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Line {
        let dt = &q.t0 - &p.t0;
        let dh = &q.h - &p.h;
        let a = dh;
        let b = -dt;
        let c = &a * &p.t0 + &b * &p.h;
        Line::new(a, b, c)
    }

    /// `a·t0 + b·h - c` at a rational point.
    pub fn eval(&self, p: &Point) -> Scalar {
        &self.a * &p.t0 + &self.b * &p.h - &self.c
    }

    pub fn side(&self, p: &Point) -> i8 {
        self.eval(p).signum()
    }

    /// Same evaluation at a point whose coordinates live in `Q(√r)`.
    pub fn side_quad(&self, t0: &Quad, h: &Quad) -> i8 {
        t0.scale(&self.a)
            .add(&h.scale(&self.b))
            .add_scalar(&-&self.c)
            .signum()
    }
}

/// A convex polygon; vertices ordered counterclockwise after `canonical()`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Polygon {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Twice the signed area (positive for counterclockwise order).
    pub fn signed_area2(&self) -> Scalar {
        let n = self.vertices.len();
        let mut acc = Scalar::zero();
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            acc = acc + (&p.t0 * &q.h - &q.t0 * &p.h);
        }
        acc
    }

    pub fn area2(&self) -> Scalar {
        self.signed_area2().abs()
    }

    /// Arithmetic mean of the vertices; interior for any positive-area convex
    /// polygon without collinear vertices.
    pub fn centroid(&self) -> Point {
        let n = Scalar::from_int(self.vertices.len() as i64);
        let mut t = Scalar::zero();
        let mut h = Scalar::zero();
        for v in &self.vertices {
            t = t + &v.t0;
            h = h + &v.h;
        }
        Point::new(t / &n, h / &n)
    }

    pub fn h_min(&self) -> Scalar {
        self.vertices
            .iter()
            .map(|v| v.h.clone())
            .min()
            .expect("nonempty polygon")
    }

    pub fn h_max(&self) -> Scalar {
        self.vertices
            .iter()
            .map(|v| v.h.clone())
            .max()
            .expect("nonempty polygon")
    }

    /// Vertex attaining the minimum h (unique when no edge is horizontal).
    pub fn bottom_vertex(&self) -> &Point {
        self.vertices
            .iter()
            .min_by(|p, q| p.h.cmp(&q.h).then_with(|| p.t0.cmp(&q.t0)))
            .expect("nonempty polygon")
    }

    /// (t0_min, t0_max, h_min, h_max).
    pub fn bbox(&self) -> (Scalar, Scalar, Scalar, Scalar) {
        let mut it = self.vertices.iter();
        let first = it.next().expect("nonempty polygon");
        let (mut t_lo, mut t_hi) = (first.t0.clone(), first.t0.clone());
        let (mut h_lo, mut h_hi) = (first.h.clone(), first.h.clone());
        for v in it {
            if v.t0 < t_lo {
                t_lo = v.t0.clone();
            }
            if v.t0 > t_hi {
                t_hi = v.t0.clone();
            }
            if v.h < h_lo {
                h_lo = v.h.clone();
            }
            if v.h > h_hi {
                h_hi = v.h.clone();
            }
        }
        (t_lo, t_hi, h_lo, h_hi)
    }

    /// True iff the line separates two vertices strictly, i.e. it passes
    /// through the polygon's interior.
    pub fn is_crossed_by(&self, line: &Line) -> bool {
        let mut pos = false;
        let mut neg = false;
        for v in &self.vertices {
            match line.side(v) {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
            if pos && neg {
                return true;
            }
        }
        false
    }

    /// Splits by a line into (negative side, positive side). Vertices on the
    /// line belong to both halves. A side with no area is `None`.
    pub fn split(&self, line: &Line) -> (Option<Polygon>, Option<Polygon>) {
        let n = self.vertices.len();
        let signs: Vec<i8> = self.vertices.iter().map(|v| line.side(v)).collect();
        let any_pos = signs.iter().any(|&s| s > 0);
        let any_neg = signs.iter().any(|&s| s < 0);
        if !any_pos {
            return (Some(self.clone()), None);
        }
        if !any_neg {
            return (None, Some(self.clone()));
        }
        let mut neg: Vec<Point> = Vec::with_capacity(n + 2);
        let mut pos: Vec<Point> = Vec::with_capacity(n + 2);
        for i in 0..n {
            let u = &self.vertices[i];
            let v = &self.vertices[(i + 1) % n];
            let (su, sv) = (signs[i], signs[(i + 1) % n]);
            if su <= 0 {
                neg.push(u.clone());
            }
            if su >= 0 {
                pos.push(u.clone());
            }
            if su * sv < 0 {
                let fu = line.eval(u);
                let fv = line.eval(v);
                // w = u + t·(v - u) with t = fu / (fu - fv)
                let t = &fu / &(&fu - &fv);
                let w = Point::new(&u.t0 + &t * &(&v.t0 - &u.t0), &u.h + &t * &(&v.h - &u.h));
                neg.push(w.clone());
                pos.push(w);
            }
        }
        (
            Polygon::new(neg).cleaned(),
            Polygon::new(pos).cleaned(),
        )
    }

    /// Drops duplicate and collinear vertices; `None` if no area remains.
    fn cleaned(self) -> Option<Polygon> {
        let mut vs: Vec<Point> = Vec::with_capacity(self.vertices.len());
        for v in self.vertices {
            if vs.last() != Some(&v) {
                vs.push(v);
            }
        }
        while vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        if vs.len() < 3 {
            return None;
        }
        // drop collinear triples until stable
        loop {
            let n = vs.len();
            if n < 3 {
                return None;
            }
            let mut removed = false;
            let mut keep: Vec<Point> = Vec::with_capacity(n);
            for i in 0..n {
                let prev = &vs[(i + n - 1) % n];
                let cur = &vs[i];
                let next = &vs[(i + 1) % n];
                if cross(prev, cur, next).is_zero() {
                    removed = true;
                } else {
                    keep.push(cur.clone());
                }
            }
            if !removed {
                break;
            }
            vs = keep;
        }
        if vs.len() < 3 {
            return None;
        }
        let poly = Polygon::new(vs);
        if poly.area2().is_zero() {
            None
        } else {
            Some(poly)
        }
    }

    /// Canonical form: collinear vertices removed, counterclockwise order,
    /// starting at the vertex with the greatest t0 (least h on ties).
    pub fn canonical(&self) -> Polygon {
        let mut poly = self
            .clone()
            .cleaned()
            .expect("canonical() needs a positive-area polygon");
        if poly.signed_area2().is_negative() {
            poly.vertices.reverse();
        }
        let start = poly
            .vertices
            .iter()
            .enumerate()
            .max_by(|(_, p), (_, q)| p.t0.cmp(&q.t0).then_with(|| q.h.cmp(&p.h)))
            .map(|(i, _)| i)
            .expect("nonempty polygon");
        poly.vertices.rotate_left(start);
        poly
    }

    /// Strict interior test (assumes canonical counterclockwise order).
    pub fn contains_strict(&self, p: &Point) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let u = &self.vertices[i];
            let v = &self.vertices[(i + 1) % n];
            if !cross(u, v, p).is_positive() {
                return false;
            }
        }
        true
    }
}

/// Cross product (b-a) × (c-a).
pub fn cross(a: &Point, b: &Point, c: &Point) -> Scalar {
    let abt = &b.t0 - &a.t0;
    let abh = &b.h - &a.h;
    let act = &c.t0 - &a.t0;
    let ach = &c.h - &a.h;
    abt * ach - abh * act
}

/// Convex hull (monotone chain), counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Polygon {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|p, q| p.t0.cmp(&q.t0).then_with(|| p.h.cmp(&q.h)));
    pts.dedup();
    if pts.len() < 3 {
        return Polygon::new(pts);
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Polygon::new(lower)
}

/// Lexicographic point order used for deterministic listings.
pub fn point_cmp(p: &Point, q: &Point) -> Ordering {
    p.t0.cmp(&q.t0).then_with(|| p.h.cmp(&q.h))
}
