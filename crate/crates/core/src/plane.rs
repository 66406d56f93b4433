//! Exact planar geometry over the rationals: convex polygons, half-plane
//! clipping, polygon differences and collinear segment bookkeeping.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

pub type Point2 = [Rational; 2];

pub fn point(x: Rational, y: Rational) -> Point2 {
    [x, y]
}

pub fn midpoint(p: &Point2, q: &Point2) -> Point2 {
    let two = rational::int(2);
    [(&p[0] + &q[0]) / &two, (&p[1] + &q[1]) / &two]
}

fn sub(p: &Point2, q: &Point2) -> Point2 {
    [&p[0] - &q[0], &p[1] - &q[1]]
}

fn dot(p: &Point2, q: &Point2) -> Rational {
    &p[0] * &q[0] + &p[1] * &q[1]
}

fn cross(p: &Point2, q: &Point2) -> Rational {
    &p[0] * &q[1] - &p[1] * &q[0]
}

/// The line `a·z = c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub a: Point2,
    pub c: Rational,
}

impl Line {
    pub fn new(a: Point2, c: Rational) -> Self {
        assert!(
            !(a[0].is_zero() && a[1].is_zero()),
            "line with zero normal vector"
        );
        Line { a, c }
    }

    /// `a·p − c`.
    pub fn eval(&self, p: &Point2) -> Rational {
        dot(&self.a, p) - &self.c
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.eval(p).is_zero()
    }

    /// Same line scaled so the first nonzero normal coordinate is 1.
    pub fn normalized(&self) -> Line {
        let s = if self.a[0].is_zero() {
            self.a[1].clone()
        } else {
            self.a[0].clone()
        };
        Line {
            a: [&self.a[0] / &s, &self.a[1] / &s],
            c: &self.c / &s,
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.a[1].is_zero()
    }

    /// Coordinate used to order points along the line: `x`, or `y` on a
    /// vertical line.
    pub fn param(&self, p: &Point2) -> Rational {
        if self.is_vertical() {
            p[1].clone()
        } else {
            p[0].clone()
        }
    }

    fn intersect_segment(&self, p: &Point2, q: &Point2) -> Point2 {
        let d = sub(q, p);
        let t = -self.eval(p) / dot(&self.a, &d);
        [&p[0] + &t * &d[0], &p[1] + &t * &d[1]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Keep `a·z ≤ c`.
    Below,
    /// Keep `a·z ≥ c`.
    Above,
}

/// Convex polygon with vertices in counter-clockwise order, without
/// repeated or collinear consecutive vertices. May be degenerate (fewer
/// than three vertices) after clipping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn rectangle(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Self {
        Polygon::from_vertices(vec![
            [x0.clone(), y0.clone()],
            [x1.clone(), y0],
            [x1, y1.clone()],
            [x0, y1],
        ])
    }

    /// Builds a polygon from counter-clockwise vertices, dropping repeats
    /// and collinear middle points.
    pub fn from_vertices(vertices: Vec<Point2>) -> Self {
        let mut vs: Vec<Point2> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if vs.last() != Some(&v) {
                vs.push(v);
            }
        }
        while vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        // Drop collinear vertices until stable.
        loop {
            let n = vs.len();
            if n < 3 {
                break;
            }
            let drop = (0..n).find(|&i| {
                let prev = &vs[(i + n - 1) % n];
                let next = &vs[(i + 1) % n];
                cross(&sub(&vs[i], prev), &sub(next, &vs[i])).is_zero()
            });
            match drop {
                Some(i) => {
                    vs.remove(i);
                }
                None => break,
            }
        }
        Polygon { vertices: vs }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Twice the signed area.
    pub fn area2(&self) -> Rational {
        let n = self.vertices.len();
        (0..n).fold(Rational::zero(), |acc, i| {
            acc + cross(&self.vertices[i], &self.vertices[(i + 1) % n])
        })
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3 || !self.area2().is_positive()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point2, &Point2)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn clip(&self, line: &Line, side: Side) -> Polygon {
        let keep = |p: &Point2| {
            let v = line.eval(p);
            match side {
                Side::Below => !v.is_positive(),
                Side::Above => !v.is_negative(),
            }
        };
        let mut out = Vec::new();
        for (p, q) in self.edges() {
            let (vp, vq) = (line.eval(p), line.eval(q));
            if keep(p) {
                out.push(p.clone());
            }
            if (vp.is_positive() && vq.is_negative()) || (vp.is_negative() && vq.is_positive()) {
                out.push(line.intersect_segment(p, q));
            }
        }
        Polygon::from_vertices(out)
    }

    /// Strict interior test.
    pub fn contains_interior(&self, p: &Point2) -> bool {
        !self.is_degenerate()
            && self
                .edges()
                .all(|(a, b)| cross(&sub(b, a), &sub(p, a)).is_positive())
    }

    pub fn centroid_of_vertices(&self) -> Point2 {
        let n = rational::int(self.vertices.len() as i64);
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((Rational::zero(), Rational::zero()), |(x, y), v| {
                (x + &v[0], y + &v[1])
            });
        [sx / &n, sy / n]
    }
}

/// `polygon` minus the closed convex set `∩ {line·z ≤ c}`, returned as
/// convex pieces with pairwise disjoint interiors; zero-area pieces are
/// dropped.
pub fn difference(polygon: &Polygon, halfplanes: &[Line]) -> Vec<Polygon> {
    let mut pieces = Vec::new();
    let mut rest = polygon.clone();
    for line in halfplanes {
        if rest.is_degenerate() {
            break;
        }
        let outside = rest.clip(line, Side::Above);
        if !outside.is_degenerate() {
            pieces.push(outside);
        }
        rest = rest.clip(line, Side::Below);
    }
    pieces
}

/// Whether two segments are collinear and overlap in a segment of positive
/// length.
pub fn segments_overlap(p1: &Point2, q1: &Point2, p2: &Point2, q2: &Point2) -> bool {
    let d = sub(q1, p1);
    if !cross(&d, &sub(p2, p1)).is_zero() || !cross(&d, &sub(q2, p1)).is_zero() {
        return false;
    }
    let (s2, t2) = (dot(&d, &sub(p2, p1)), dot(&d, &sub(q2, p1)));
    let (lo, hi) = match s2.cmp(&t2) {
        Ordering::Greater => (t2, s2),
        _ => (s2, t2),
    };
    let top = std::cmp::min(dot(&d, &d), hi);
    let bottom = std::cmp::max(Rational::zero(), lo);
    top > bottom
}

/// Merges segments on a common line into maximal segments. Endpoints are
/// returned ordered by [`Line::param`], and the list is sorted the same way.
pub fn merge_collinear(line: &Line, segments: &[(Point2, Point2)]) -> Vec<(Point2, Point2)> {
    let mut sorted: Vec<(Point2, Point2)> = segments
        .iter()
        .map(|(p, q)| {
            if line.param(p) <= line.param(q) {
                (p.clone(), q.clone())
            } else {
                (q.clone(), p.clone())
            }
        })
        .collect();
    sorted.sort_by_key(|a| line.param(&a.0));
    let mut merged: Vec<(Point2, Point2)> = Vec::new();
    for (p, q) in sorted {
        if let Some(last) = merged.last_mut() {
            if line.param(&p) <= line.param(&last.1) {
                if line.param(&q) > line.param(&last.1) {
                    last.1 = q;
                }
                continue;
            }
        }
        merged.push((p, q));
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point2 {
        [ratio(x.0, x.1), ratio(y.0, y.1)]
    }

    fn unit_square() -> Polygon {
        Polygon::rectangle(int(0), int(0), int(1), int(1))
    }

    #[test]
    fn rectangle_area() {
        assert_eq!(unit_square().area2(), int(2));
        assert!(!unit_square().is_degenerate());
    }

    #[test]
    fn clipping_by_diagonal() {
        let line = Line::new([int(1), int(1)], int(1));
        let below = unit_square().clip(&line, Side::Below);
        assert_eq!(below.vertices().len(), 3);
        assert_eq!(below.area2(), int(1));
        let above = unit_square().clip(&line, Side::Above);
        assert_eq!(above.area2(), int(1));
        // A line missing the polygon leaves it intact or empties it.
        let far = Line::new([int(1), int(1)], int(5));
        assert_eq!(unit_square().clip(&far, Side::Below), unit_square());
        assert!(unit_square().clip(&far, Side::Above).is_degenerate());
    }

    #[test]
    fn clipping_along_an_edge_keeps_a_degenerate_sliver() {
        let edge = Line::new([int(1), int(0)], int(1));
        let sliver = unit_square().clip(&edge, Side::Above);
        assert!(sliver.is_degenerate());
    }

    #[test]
    fn example_first_region() {
        let mut poly = Polygon::rectangle(int(0), int(0), ratio(10, 21), ratio(3, 2));
        for (a, c) in [([6, 2], 3), ([21, 6], 10)] {
            poly = poly.clip(&Line::new([int(a[0]), int(a[1])], int(c)), Side::Below);
        }
        let vs = poly.vertices();
        assert_eq!(vs.len(), 4);
        assert!(vs.contains(&pt((1, 3), (1, 2))));
        assert!(vs.contains(&pt((10, 21), (0, 1))));
        assert!(vs.contains(&pt((0, 1), (3, 2))));
    }

    #[test]
    fn differences_cover_the_complement() {
        let inner = [
            Line::new([int(1), int(0)], ratio(1, 2)),
            Line::new([int(0), int(1)], ratio(1, 2)),
        ];
        let pieces = difference(&unit_square(), &inner);
        let total: Rational = pieces.iter().map(Polygon::area2).sum();
        assert_eq!(total, ratio(3, 2));
        assert_eq!(pieces.len(), 2);
        // Removing a superset leaves nothing.
        let outer = [Line::new([int(1), int(1)], int(3))];
        assert!(difference(&unit_square(), &outer).is_empty());
    }

    #[test]
    fn overlap_detection() {
        let (a, b) = (pt((0, 1), (0, 1)), pt((2, 1), (0, 1)));
        let (c, d) = (pt((1, 1), (0, 1)), pt((3, 1), (0, 1)));
        assert!(segments_overlap(&a, &b, &c, &d));
        assert!(segments_overlap(&a, &b, &d, &c));
        let (e, f) = (pt((2, 1), (0, 1)), pt((3, 1), (0, 1)));
        assert!(!segments_overlap(&a, &b, &e, &f));
        let (g, h) = (pt((1, 1), (1, 1)), pt((2, 1), (1, 1)));
        assert!(!segments_overlap(&a, &b, &g, &h));
    }

    #[test]
    fn merging_segments() {
        let line = Line::new([int(0), int(1)], int(0));
        let segs = vec![
            (pt((2, 1), (0, 1)), pt((1, 1), (0, 1))),
            (pt((0, 1), (0, 1)), pt((1, 1), (0, 1))),
            (pt((3, 1), (0, 1)), pt((4, 1), (0, 1))),
        ];
        let merged = merge_collinear(&line, &segs);
        assert_eq!(
            merged,
            vec![
                (pt((0, 1), (0, 1)), pt((2, 1), (0, 1))),
                (pt((3, 1), (0, 1)), pt((4, 1), (0, 1))),
            ]
        );
    }

    #[test]
    fn normalized_lines_agree() {
        let l1 = Line::new([int(6), int(2)], int(3));
        let l2 = Line::new([int(3), int(1)], ratio(3, 2));
        assert_eq!(l1.normalized(), l2.normalized());
        assert!(l1.contains(&pt((1, 3), (1, 2))));
    }

    #[test]
    fn interior_points() {
        assert!(unit_square().contains_interior(&pt((1, 2), (1, 2))));
        assert!(!unit_square().contains_interior(&pt((1, 1), (1, 2))));
        assert_eq!(unit_square().centroid_of_vertices(), pt((1, 2), (1, 2)));
    }
}
