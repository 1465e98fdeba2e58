use std::fmt;

use num_traits::{One, Zero};

use crate::surface2d::{Side, SquareComplex};
use crate::{Point2, Rational, Violation, ViolationKind};

/// A point in the square-local coordinates of one square.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarePoint {
    pub square: usize,
    pub pos: Point2,
}

impl SquarePoint {
    pub fn new(square: usize, pos: Point2) -> Self {
        SquarePoint { square, pos }
    }
}

impl fmt::Display for SquarePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{} {}", self.square, self.pos)
    }
}

pub(crate) fn strictly_inside(p: &Point2) -> bool {
    let open = |v: &Rational| *v > Rational::zero() && *v < Rational::one();
    open(&p.x) && open(&p.y)
}

fn check_vertex(v: &SquarePoint, ambient: &SquareComplex, k: usize) -> Result<(), Violation> {
    if v.square >= ambient.squares() {
        return Err(Violation::new(
            ViolationKind::VertexOutsideSquare,
            format!("vertex {k} names missing square s{}", v.square),
        ));
    }
    let unit = |x: &Rational| *x >= Rational::zero() && *x <= Rational::one();
    if !unit(&v.pos.x) || !unit(&v.pos.y) {
        return Err(Violation::new(
            ViolationKind::VertexOutsideSquare,
            format!("vertex {k} at {v} is outside its square"),
        ));
    }
    if !strictly_inside(&v.pos) {
        return Err(Violation::new(
            ViolationKind::VertexOnEdge,
            format!("vertex {k} at {v} lies on a square side"),
        ));
    }
    Ok(())
}

/// A closed polyline on a square complex. Segment `k` joins vertex `k` to
/// vertex `k + 1`, crossing at most one side (`via[k]`, a side of vertex
/// `k`'s square).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedPolyline {
    vertices: Vec<SquarePoint>,
    via: Vec<Option<Side>>,
}

impl ClosedPolyline {
    /// Resolve each segment by the shortest-wrap rule: among the direct
    /// segment (same square) and the segments through each glued side leading
    /// to the next vertex's square, take the unique shortest.
    pub fn resolve(ambient: &SquareComplex, vertices: Vec<SquarePoint>) -> Result<Self, Violation> {
        let n = vertices.len();
        if n < 2 {
            return Err(Violation::new(
                ViolationKind::TooFewVertices,
                format!("closed polyline needs at least 2 vertices, got {n}"),
            ));
        }
        for (k, v) in vertices.iter().enumerate() {
            check_vertex(v, ambient, k)?;
        }
        let mut via = Vec::with_capacity(n);
        for k in 0..n {
            let (v, w) = (&vertices[k], &vertices[(k + 1) % n]);
            let mut cands: Vec<(Rational, Option<Side>)> = Vec::new();
            if v.square == w.square && v.pos != w.pos {
                cands.push((v.pos.dist_sq(&w.pos), None));
            }
            for side in Side::ALL {
                if let Some(t) = ambient.neighbor(v.square, side) {
                    if t.square == w.square {
                        cands.push((v.pos.dist_sq(&t.to_here.apply(&w.pos)), Some(side)));
                    }
                }
            }
            cands.sort_by(|a, b| a.0.cmp(&b.0));
            match cands.as_slice() {
                [] => {
                    let kind = if v == w {
                        ViolationKind::ZeroLength
                    } else {
                        ViolationKind::NotAdjacent
                    };
                    return Err(Violation::new(
                        kind,
                        format!("segment {k} from {v} to {w} cannot be realized"),
                    ));
                }
                [only] => via.push(only.1),
                [a, b, ..] => {
                    if a.0 == b.0 {
                        return Err(Violation::new(
                            ViolationKind::AmbiguousWrap,
                            format!("segment {k} from {v} to {w} has two shortest routes"),
                        ));
                    }
                    via.push(a.1);
                }
            }
        }
        Ok(ClosedPolyline { vertices, via })
    }

    /// Build from explicit crossing sides, checking that each named side leads
    /// to the next vertex's square.
    pub fn with_vias(
        ambient: &SquareComplex,
        vertices: Vec<SquarePoint>,
        via: Vec<Option<Side>>,
    ) -> Result<Self, Violation> {
        let n = vertices.len();
        if n < 2 || via.len() != n {
            return Err(Violation::new(
                ViolationKind::TooFewVertices,
                format!("closed polyline needs at least 2 vertices and one route per segment, got {n}"),
            ));
        }
        for (k, v) in vertices.iter().enumerate() {
            check_vertex(v, ambient, k)?;
        }
        for k in 0..n {
            let (v, w) = (&vertices[k], &vertices[(k + 1) % n]);
            match via[k] {
                None => {
                    if v.square != w.square {
                        return Err(Violation::new(
                            ViolationKind::NotAdjacent,
                            format!("segment {k} leaves its square without a crossing"),
                        ));
                    }
                    if v.pos == w.pos {
                        return Err(Violation::new(
                            ViolationKind::ZeroLength,
                            format!("segment {k} at {v} has zero length"),
                        ));
                    }
                }
                Some(side) => {
                    let ok = ambient.neighbor(v.square, side).is_some_and(|t| t.square == w.square);
                    if !ok {
                        return Err(Violation::new(
                            ViolationKind::NotAdjacent,
                            format!("segment {k} crosses s{}.{side} but ends in s{}", v.square, w.square),
                        ));
                    }
                }
            }
        }
        Ok(ClosedPolyline { vertices, via })
    }

    pub fn vertices(&self) -> &[SquarePoint] {
        &self.vertices
    }

    pub fn via(&self) -> &[Option<Side>] {
        &self.via
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex `k + 1` in the frame of vertex `k`'s square.
    pub fn next_in_frame(&self, ambient: &SquareComplex, k: usize) -> Point2 {
        let w = &self.vertices[(k + 1) % self.len()];
        match self.via[k] {
            None => w.pos.clone(),
            Some(side) => ambient
                .neighbor(self.vertices[k].square, side)
                .expect("validated route")
                .to_here
                .apply(&w.pos),
        }
    }

    /// Vertex `k - 1` in the frame of vertex `k`'s square.
    pub fn prev_in_frame(&self, ambient: &SquareComplex, k: usize) -> Point2 {
        let n = self.len();
        let j = (k + n - 1) % n;
        let u = &self.vertices[j];
        match self.via[j] {
            None => u.pos.clone(),
            Some(side) => ambient
                .neighbor(u.square, side)
                .expect("validated route")
                .to_here
                .inverse()
                .apply(&u.pos),
        }
    }

    /// Gluing signs of the sides crossed, in order.
    pub fn crossing_signs(&self, ambient: &SquareComplex) -> Vec<i8> {
        self.vertices
            .iter()
            .zip(&self.via)
            .filter_map(|(v, via)| via.map(|s| ambient.neighbor(v.square, s).expect("validated").sign))
            .collect()
    }

    /// Parameter along segment `k` where it meets its crossing side.
    pub fn crossing_param(&self, ambient: &SquareComplex, k: usize) -> Option<Rational> {
        let side = self.via[k]?;
        let v = &self.vertices[k].pos;
        let w = self.next_in_frame(ambient, k);
        let ev = side.excess(v);
        let ew = side.excess(&w);
        Some(ev.clone() / (ev - ew))
    }

    /// Insert a vertex at parameter `t` of segment `k`. The new vertex must not
    /// land on a square side.
    pub fn refine(&self, ambient: &SquareComplex, k: usize, t: &Rational) -> Result<Self, Violation> {
        let v = &self.vertices[k];
        let p = v.pos.lerp(&self.next_in_frame(ambient, k), t);
        let mut vertices = self.vertices.clone();
        let mut via = self.via.clone();
        let (new_vertex, first, second) = if crate::curves2d::polyline::strictly_inside(&p) {
            (SquarePoint::new(v.square, p), None, self.via[k])
        } else {
            let side =
                self.via[k].ok_or_else(|| Violation::new(ViolationKind::VertexOnEdge, "refinement point on a side"))?;
            let tr = ambient.neighbor(v.square, side).expect("validated");
            let q = tr.to_here.inverse().apply(&p);
            (SquarePoint::new(tr.square, q), Some(side), None)
        };
        vertices.insert(k + 1, new_vertex);
        via[k] = first;
        via.insert(k + 1, second);
        ClosedPolyline::with_vias(ambient, vertices, via)
    }
}
