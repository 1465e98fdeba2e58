use std::cmp::Ordering;

use super::point::{orient2d, orient3d, Point2, Point3};
use super::scalar::ExactScalar;
use super::GeomError;

/// A nondegenerate triangle in space. Edge `k` runs from vertex `k` to
/// vertex `k + 1 (mod 3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle3<T> {
    v: [Point3<T>; 3],
}

impl<T: ExactScalar> Triangle3<T> {
    pub fn new(a: Point3<T>, b: Point3<T>, c: Point3<T>) -> Result<Self, GeomError> {
        let n = b.sub(&a).cross(&c.sub(&a));
        if n.is_zero() {
            return Err(GeomError::DegenerateTriangle);
        }
        Ok(Triangle3 { v: [a, b, c] })
    }

    pub fn vertices(&self) -> &[Point3<T>; 3] {
        &self.v
    }

    pub fn vertex(&self, k: usize) -> &Point3<T> {
        &self.v[k % 3]
    }

    pub fn normal(&self) -> Point3<T> {
        self.v[1].sub(&self.v[0]).cross(&self.v[2].sub(&self.v[0]))
    }

    pub fn translated(&self, by: &Point3<T>) -> Self {
        Triangle3 {
            v: [self.v[0].add(by), self.v[1].add(by), self.v[2].add(by)],
        }
    }

    /// `(1 - a - b) v0 + a v1 + b v2`.
    pub fn point_at(&self, a: &T, b: &T) -> Point3<T> {
        let d1 = self.v[1].sub(&self.v[0]).scale(a);
        let d2 = self.v[2].sub(&self.v[0]).scale(b);
        self.v[0].add(&d1).add(&d2)
    }

    pub fn plane_side(&self, p: &Point3<T>) -> T {
        orient3d(&self.v[0], &self.v[1], &self.v[2], p)
    }

    /// The triangle flattened by dropping the dominant normal axis, together
    /// with the sign that maps projected orientation back to 3D orientation.
    pub fn flatten(&self) -> (usize, [Point2<T>; 3]) {
        let axis = self.normal().dominant_axis();
        (
            axis,
            [
                self.v[0].project(axis),
                self.v[1].project(axis),
                self.v[2].project(axis),
            ],
        )
    }

    /// Where a point of the triangle's plane sits relative to the triangle.
    pub fn locate_coplanar(&self, p: &Point3<T>) -> Incidence3 {
        let (axis, q) = self.flatten();
        locate_in_triangle2(&q, &p.project(axis))
    }

    pub fn bbox(&self) -> (Point3<T>, Point3<T>) {
        let mut lo = self.v[0].clone();
        let mut hi = self.v[0].clone();
        for p in &self.v[1..] {
            lo = Point3::new(lo.x.min(p.x.clone()), lo.y.min(p.y.clone()), lo.z.min(p.z.clone()));
            hi = Point3::new(hi.x.max(p.x.clone()), hi.y.max(p.y.clone()), hi.z.max(p.z.clone()));
        }
        (lo, hi)
    }
}

/// Position of a point relative to a triangle it is known to lie in (or on
/// the plane of).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Incidence3 {
    Outside,
    Interior,
    Edge(usize),
    Vertex(usize),
}

/// Locate `p` relative to the planar triangle `t` (either orientation).
pub fn locate_in_triangle2<T: ExactScalar>(t: &[Point2<T>; 3], p: &Point2<T>) -> Incidence3 {
    let area = orient2d(&t[0], &t[1], &t[2]);
    let sign = area.signum();
    let mut zero_edges = Vec::new();
    for k in 0..3 {
        let o = orient2d(&t[k], &t[(k + 1) % 3], p) * sign.clone();
        if o.is_negative() {
            return Incidence3::Outside;
        }
        if o.is_zero() {
            zero_edges.push(k);
        }
    }
    match zero_edges.as_slice() {
        [] => Incidence3::Interior,
        [k] => Incidence3::Edge(*k),
        // Two edges vanish at their common vertex.
        [0, 1] => Incidence3::Vertex(1),
        [1, 2] => Incidence3::Vertex(2),
        [0, 2] => Incidence3::Vertex(0),
        _ => Incidence3::Outside,
    }
}

/// Where an endpoint of a triangle–triangle intersection segment sits on one
/// of the two triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Incidence {
    Interior,
    Edge(usize),
    Vertex(usize),
}

/// A transverse intersection segment. `tags[e][k]` locates endpoint `e` on
/// triangle `k` (0 = first argument).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriSegment<T> {
    pub ends: [Point3<T>; 2],
    pub tags: [[Incidence; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy<T> {
    CoplanarOverlap,
    PointContact(Point3<T>),
    /// An edge lies in the other triangle's plane and overlaps it.
    Tangency,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriTriIntersection<T> {
    None,
    Segment(TriSegment<T>),
    Degenerate(Degeneracy<T>),
}

fn edge_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (1, 2) => 1,
        (0, 2) => 2,
        _ => unreachable!("not an edge"),
    }
}

struct PlaneCut<T> {
    ends: Vec<(Point3<T>, Incidence)>,
    on_edge: bool,
}

/// Intersection of a triangle with a plane, given the signed plane values of
/// its vertices.
fn plane_cut<T: ExactScalar>(t: &Triangle3<T>, d: &[T; 3]) -> Option<PlaneCut<T>> {
    let zeros: Vec<usize> = (0..3).filter(|&k| d[k].is_zero()).collect();
    let crossing = |i: usize, j: usize| {
        let lam = d[i].clone() / (d[i].clone() - d[j].clone());
        (t.v[i].lerp(&t.v[j], &lam), Incidence::Edge(edge_index(i, j)))
    };
    match zeros.as_slice() {
        [i, j] => Some(PlaneCut {
            ends: vec![
                (t.v[*i].clone(), Incidence::Vertex(*i)),
                (t.v[*j].clone(), Incidence::Vertex(*j)),
            ],
            on_edge: true,
        }),
        [i] => {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let mut ends = vec![(t.v[*i].clone(), Incidence::Vertex(*i))];
            if d[j].signum() != d[k].signum() {
                ends.push(crossing(j, k));
            }
            Some(PlaneCut { ends, on_edge: false })
        }
        [] => {
            let s: Vec<T> = d.iter().map(|x| x.signum()).collect();
            if s[0] == s[1] && s[1] == s[2] {
                return None;
            }
            let lone = if s[0] == s[1] {
                2
            } else if s[0] == s[2] {
                1
            } else {
                0
            };
            let (j, k) = ((lone + 1) % 3, (lone + 2) % 3);
            Some(PlaneCut {
                ends: vec![crossing(lone, j), crossing(lone, k)],
                on_edge: false,
            })
        }
        _ => unreachable!("coplanar case handled by caller"),
    }
}

/// Do two coplanar triangles share interior points?
fn coplanar_interiors_meet<T: ExactScalar>(a: &Triangle3<T>, b: &Triangle3<T>) -> bool {
    let axis = a.normal().dominant_axis();
    let pa = [a.v[0].project(axis), a.v[1].project(axis), a.v[2].project(axis)];
    let pb = [b.v[0].project(axis), b.v[1].project(axis), b.v[2].project(axis)];
    // Separating axis test over the six edge normals: interiors are disjoint
    // iff some edge line weakly separates the two triangles.
    for (tri, other) in [(&pa, &pb), (&pb, &pa)] {
        let sign = orient2d(&tri[0], &tri[1], &tri[2]).signum();
        for k in 0..3 {
            let (p, q) = (&tri[k], &tri[(k + 1) % 3]);
            if other.iter().all(|r| !(orient2d(p, q, r) * sign.clone()).is_positive()) {
                return false;
            }
        }
    }
    true
}

pub fn tri_tri_intersect<T: ExactScalar>(a: &Triangle3<T>, b: &Triangle3<T>) -> TriTriIntersection<T> {
    let da = [b.plane_side(&a.v[0]), b.plane_side(&a.v[1]), b.plane_side(&a.v[2])];
    if da.iter().all(|x| x.is_zero()) {
        return if coplanar_interiors_meet(a, b) {
            TriTriIntersection::Degenerate(Degeneracy::CoplanarOverlap)
        } else {
            TriTriIntersection::None
        };
    }
    let db = [a.plane_side(&b.v[0]), a.plane_side(&b.v[1]), a.plane_side(&b.v[2])];
    let Some(ca) = plane_cut(a, &da) else {
        return TriTriIntersection::None;
    };
    let Some(cb) = plane_cut(b, &db) else {
        return TriTriIntersection::None;
    };
    let dir = a.normal().cross(&b.normal());
    let key = |p: &Point3<T>| dir.dot(p);
    let sorted = |cut: &PlaneCut<T>| {
        let mut e: Vec<(T, Point3<T>, Incidence)> = cut.ends.iter().map(|(p, inc)| (key(p), p.clone(), *inc)).collect();
        e.sort_by(|x, y| x.0.cmp(&y.0));
        e
    };
    let ea = sorted(&ca);
    let eb = sorted(&cb);
    let (a_lo, a_hi) = (&ea[0], &ea[ea.len() - 1]);
    let (b_lo, b_hi) = (&eb[0], &eb[eb.len() - 1]);
    let lo = a_lo.0.clone().max(b_lo.0.clone());
    let hi = a_hi.0.clone().min(b_hi.0.clone());
    match lo.cmp(&hi) {
        Ordering::Greater => return TriTriIntersection::None,
        Ordering::Equal => {
            let p = if a_lo.0 == lo { a_lo.1.clone() } else { b_lo.1.clone() };
            return TriTriIntersection::Degenerate(Degeneracy::PointContact(p));
        }
        Ordering::Less => {}
    }
    if ca.on_edge || cb.on_edge {
        return TriTriIntersection::Degenerate(Degeneracy::Tangency);
    }
    let pick = |xa: &(T, Point3<T>, Incidence), xb: &(T, Point3<T>, Incidence), v: &T| {
        let point = if xa.0 == *v { xa.1.clone() } else { xb.1.clone() };
        let ta = if xa.0 == *v { xa.2 } else { Incidence::Interior };
        let tb = if xb.0 == *v { xb.2 } else { Incidence::Interior };
        (point, [ta, tb])
    };
    let (p0, t0) = pick(a_lo, b_lo, &lo);
    let (p1, t1) = pick(a_hi, b_hi, &hi);
    TriTriIntersection::Segment(TriSegment {
        ends: [p0, p1],
        tags: [t0, t1],
    })
}

/// Result of crossing a segment with a triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegTriCrossing<T> {
    None,
    /// Transverse crossing through the triangle interior at `p + t (q - p)`,
    /// `0 < t < 1`.
    Crossing {
        point: Point3<T>,
        t: T,
    },
    /// The segment touches the closed triangle in some non-transverse way.
    Degenerate,
}

pub fn segment_triangle_crossing<T: ExactScalar>(
    p: &Point3<T>,
    q: &Point3<T>,
    tri: &Triangle3<T>,
) -> SegTriCrossing<T> {
    let sp = tri.plane_side(p);
    let sq = tri.plane_side(q);
    if sp.is_zero() && sq.is_zero() {
        let (axis, flat) = tri.flatten();
        let (a, b) = (p.project(axis), q.project(axis));
        if locate_in_triangle2(&flat, &a) != Incidence3::Outside
            || locate_in_triangle2(&flat, &b) != Incidence3::Outside
        {
            return SegTriCrossing::Degenerate;
        }
        let seg = super::segment::Segment2::new(a, b).expect("distinct endpoints");
        for k in 0..3 {
            let edge = super::segment::Segment2::new(flat[k].clone(), flat[(k + 1) % 3].clone())
                .expect("nondegenerate triangle");
            if !super::segment::seg_intersect(&seg, &edge).is_none() {
                return SegTriCrossing::Degenerate;
            }
        }
        return SegTriCrossing::None;
    }
    if sp.is_zero() || sq.is_zero() {
        let on = if sp.is_zero() { p } else { q };
        return if tri.locate_coplanar(on) == Incidence3::Outside {
            SegTriCrossing::None
        } else {
            SegTriCrossing::Degenerate
        };
    }
    if sp.signum() == sq.signum() {
        return SegTriCrossing::None;
    }
    let e: Vec<T> = (0..3).map(|k| orient3d(p, q, &tri.v[k], &tri.v[(k + 1) % 3])).collect();
    let pos = e.iter().filter(|x| x.is_positive()).count();
    let neg = e.iter().filter(|x| x.is_negative()).count();
    if pos > 0 && neg > 0 {
        return SegTriCrossing::None;
    }
    if pos == 3 || neg == 3 {
        let t = sp.clone() / (sp - sq);
        return SegTriCrossing::Crossing {
            point: p.lerp(q, &t),
            t,
        };
    }
    SegTriCrossing::Degenerate
}
