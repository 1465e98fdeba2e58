//! Closed curves drawn on the source surface.

use std::fmt;

use super::arrangement::SourcePiece;
use super::mesh::{across_edge, SourceMesh};
use crate::{rat, Point3, Rational, Triangle3, Violation, ViolationKind};

/// The point `(1-a-b)·v0 + a·v1 + b·v2` of triangle `tri`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeshPoint {
    pub tri: usize,
    pub a: Rational,
    pub b: Rational,
}

impl MeshPoint {
    pub fn new(tri: usize, a: Rational, b: Rational) -> Self {
        MeshPoint { tri, a, b }
    }

    fn in_closed_triangle(&self) -> bool {
        let zero = rat(0, 1);
        self.a >= zero && self.b >= zero && self.a.clone() + self.b.clone() <= rat(1, 1)
    }

    /// The edge this point lies on, with its parameter from the edge start,
    /// if it lies on exactly one edge.
    fn edge(&self) -> Option<(usize, Rational)> {
        let zero = rat(0, 1);
        let w0 = rat(1, 1) - self.a.clone() - self.b.clone();
        let on = [self.b == zero, w0 == zero, self.a == zero];
        match on {
            [true, false, false] => Some((0, self.a.clone())),
            [false, true, false] => Some((1, self.b.clone())),
            [false, false, true] => Some((2, w0)),
            _ => None,
        }
    }
}

impl fmt::Display for MeshPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{} {} {}", self.tri, self.a, self.b)
    }
}

/// A closed polygon on the source, visiting `points` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceCycle {
    pub name: String,
    pub points: Vec<MeshPoint>,
}

/// A cycle cut into straight pieces, one per triangle visit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedCycle {
    pub pieces: Vec<SourcePiece>,
    /// Whether going once around reverses the local orientation.
    pub orientation_reversing: bool,
}

impl ResolvedCycle {
    /// The pieces as segments in the lifts of their triangles.
    pub fn segments(&self) -> Vec<(Point3, Point3)> {
        self.pieces.iter().map(|p| (p.start.clone(), p.end.clone())).collect()
    }
}

fn invalid(cycle: &SourceCycle, msg: String) -> Violation {
    Violation::new(ViolationKind::InvalidCycle, format!("cycle {}: {msg}", cycle.name))
}

pub(crate) fn resolve_cycle(
    tris: &[Triangle3],
    mesh: &SourceMesh,
    cycle: &SourceCycle,
) -> Result<ResolvedCycle, Violation> {
    let n = cycle.points.len();
    if n < 2 {
        return Err(invalid(cycle, "needs at least two points".into()));
    }
    for p in &cycle.points {
        if p.tri >= tris.len() {
            return Err(invalid(cycle, format!("no triangle {}", p.tri)));
        }
        if !p.in_closed_triangle() {
            return Err(invalid(cycle, format!("{p} lies outside its triangle")));
        }
    }
    let mut pieces = Vec::with_capacity(n);
    let mut reversing = false;
    for k in 0..n {
        let (p, q) = (&cycle.points[k], &cycle.points[(k + 1) % n]);
        let tri = &tris[p.tri];
        let start = tri.point_at(&p.a, &p.b);
        let end = if p.tri == q.tri {
            tri.point_at(&q.a, &q.b)
        } else {
            let Some((edge, u)) = q.edge() else {
                return Err(invalid(cycle, format!("{q} is not on a single edge")));
            };
            let (slot, v) = across_edge(mesh, q.tri, edge, &u);
            if slot.tri != p.tri {
                return Err(invalid(
                    cycle,
                    format!("edge {edge} of t{} is not glued to t{}", q.tri, p.tri),
                ));
            }
            reversing ^= mesh.flip_at(q.tri, edge);
            let (e0, e1) = (tri.vertex(slot.edge), tri.vertex((slot.edge + 1) % 3));
            e0.lerp(e1, &v)
        };
        if start == end {
            return Err(invalid(cycle, format!("zero-length step at {p}")));
        }
        pieces.push(SourcePiece { tri: p.tri, start, end });
    }
    Ok(ResolvedCycle {
        pieces,
        orientation_reversing: reversing,
    })
}
