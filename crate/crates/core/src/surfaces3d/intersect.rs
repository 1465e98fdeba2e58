//! Pairwise triangle intersections in the 3-torus.

use std::collections::BTreeSet;

use super::torus::{lex_positive, shift_point, shifts_between, Shift};
use crate::exactgeom::{seg_intersect, tri_tri_intersect, Degeneracy, Incidence, SegIntersection, TriTriIntersection};
use crate::{Point2, Point3, Triangle3, Violation, ViolationKind};

/// The intersection of triangle `a` with triangle `b` translated by `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSegment {
    pub a: usize,
    pub b: usize,
    pub shift: Shift,
    /// Endpoints in the frame of triangle `a`.
    pub ends: [Point3; 2],
    /// `tags[e][0]` locates endpoint `e` on `a`, `tags[e][1]` on `b`.
    pub tags: [[Incidence; 2]; 2],
}

impl PairSegment {
    pub fn sheet_tri(&self, sheet: usize) -> usize {
        if sheet == 0 {
            self.a
        } else {
            self.b
        }
    }

    /// Endpoints in the own frame of the sheet's triangle.
    pub fn local_ends(&self, sheet: usize) -> [Point3; 2] {
        if sheet == 0 {
            self.ends.clone()
        } else {
            let s = shift_point(&self.shift);
            [self.ends[0].sub(&s), self.ends[1].sub(&s)]
        }
    }
}

pub(crate) type Bbox = (Point3, Point3);

pub(crate) fn boxes(tris: &[Triangle3]) -> Vec<Bbox> {
    tris.iter().map(|t| t.bbox()).collect()
}

/// Pairs `(i, j, s)` that may meet: `i < j` with any shift, or `i == j`
/// with a lexicographically positive shift.
pub(crate) fn self_candidates(bx: &[Bbox]) -> Vec<(usize, usize, Shift)> {
    let mut out = Vec::new();
    for i in 0..bx.len() {
        for j in i..bx.len() {
            for s in shifts_between(&bx[i], &bx[j]) {
                if i < j || lex_positive(&s) {
                    out.push((i, j, s));
                }
            }
        }
    }
    out
}

pub(crate) fn cross_candidates(ba: &[Bbox], bb: &[Bbox]) -> Vec<(usize, usize, Shift)> {
    let mut out = Vec::new();
    for (i, a) in ba.iter().enumerate() {
        for (j, b) in bb.iter().enumerate() {
            for s in shifts_between(a, b) {
                out.push((i, j, s));
            }
        }
    }
    out
}

fn shared_corners(a: &Triangle3, b: &Triangle3) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if a.vertex(i) == b.vertex(j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn coplanar(a: &Triangle3, b: &Triangle3) -> bool {
    b.vertices().iter().all(|p| a.plane_side(p) == crate::rat(0, 1))
}

fn pair_name(i: usize, j: usize, s: &Shift) -> String {
    format!("triangles {i} and {j}{:?}", s)
}

/// Reject coplanar overlaps anywhere, before the mesh is even recovered.
pub(crate) fn coplanar_scan(tris: &[Triangle3], bx: &[Bbox]) -> Result<(), Violation> {
    for (i, j, s) in self_candidates(bx) {
        let b = tris[j].translated(&shift_point(&s));
        if coplanar(&tris[i], &b)
            && matches!(
                tri_tri_intersect(&tris[i], &b),
                TriTriIntersection::Degenerate(Degeneracy::CoplanarOverlap)
            )
        {
            return Err(Violation::new(
                ViolationKind::CoplanarOverlap,
                format!("{} overlap in a common plane", pair_name(i, j, &s)),
            ));
        }
    }
    Ok(())
}

fn check_tags(seg: &crate::exactgeom::TriSegment<crate::Rational>, name: &str) -> Result<(), Violation> {
    for (e, t) in seg.tags.iter().enumerate() {
        if t.iter().any(|x| matches!(x, Incidence::Vertex(_))) {
            return Err(Violation::new(
                ViolationKind::VertexContact,
                format!("{name}: intersection passes through a vertex at {}", seg.ends[e]),
            ));
        }
        if t.iter().all(|x| matches!(x, Incidence::Edge(_))) {
            return Err(Violation::new(
                ViolationKind::EdgeEdgeContact,
                format!("{name}: two edges meet at {}", seg.ends[e]),
            ));
        }
    }
    Ok(())
}

type TaggedChord = [(Point3, [Incidence; 2]); 2];

fn generic_pair(a: &Triangle3, b: &Triangle3, name: &str) -> Result<Option<TaggedChord>, Violation> {
    match tri_tri_intersect(a, b) {
        TriTriIntersection::None => Ok(None),
        TriTriIntersection::Segment(seg) => {
            check_tags(&seg, name)?;
            let [p0, p1] = seg.ends;
            Ok(Some([(p0, seg.tags[0]), (p1, seg.tags[1])]))
        }
        TriTriIntersection::Degenerate(Degeneracy::CoplanarOverlap) => Err(Violation::new(
            ViolationKind::CoplanarOverlap,
            format!("{name} overlap in a common plane"),
        )),
        TriTriIntersection::Degenerate(Degeneracy::PointContact(p)) => Err(Violation::new(
            ViolationKind::Tangency,
            format!("{name} touch at the single point {p}"),
        )),
        TriTriIntersection::Degenerate(Degeneracy::Tangency) => Err(Violation::new(
            ViolationKind::Tangency,
            format!("{name} meet along an edge lying in the other's plane"),
        )),
    }
}

fn to_segment(i: usize, j: usize, s: Shift, r: [(Point3, [Incidence; 2]); 2]) -> PairSegment {
    let [(p0, t0), (p1, t1)] = r;
    PairSegment {
        a: i,
        b: j,
        shift: s,
        ends: [p0, p1],
        tags: [t0, t1],
    }
}

/// Self-intersection segments of one immersed surface.
pub(crate) fn self_segments(tris: &[Triangle3], bx: &[Bbox]) -> Result<Vec<PairSegment>, Violation> {
    let mut out = Vec::new();
    for (i, j, s) in self_candidates(bx) {
        let a = &tris[i];
        let b = tris[j].translated(&shift_point(&s));
        let name = pair_name(i, j, &s);
        let shared = shared_corners(a, &b);
        match shared.len() {
            0 => {
                if let Some(r) = generic_pair(a, &b, &name)? {
                    out.push(to_segment(i, j, s, r));
                }
            }
            1 => {
                let p = a.vertex(shared[0].0).clone();
                match tri_tri_intersect(a, &b) {
                    TriTriIntersection::None => {}
                    TriTriIntersection::Degenerate(Degeneracy::PointContact(q)) if q == p => {}
                    TriTriIntersection::Degenerate(Degeneracy::CoplanarOverlap) => {
                        return Err(Violation::new(
                            ViolationKind::CoplanarOverlap,
                            format!("{name} overlap in a common plane"),
                        ))
                    }
                    _ => {
                        return Err(Violation::new(
                            ViolationKind::NonImmersion,
                            format!("{name} cross near their common vertex {p}"),
                        ))
                    }
                }
            }
            2 => {
                let (ai, bi) = ((3 - shared[0].0 - shared[1].0), (3 - shared[0].1 - shared[1].1));
                let s0 = a.vertex(shared[0].0);
                let s1 = a.vertex(shared[1].0);
                let (pa, pb) = (a.vertex(ai), b.vertex(bi));
                if a.plane_side(pb) == crate::rat(0, 1) {
                    let e = s1.sub(s0);
                    let na = e.cross(&pa.sub(s0));
                    let nb = e.cross(&pb.sub(s0));
                    if na.dot(&nb) > crate::rat(0, 1) {
                        return Err(Violation::new(
                            ViolationKind::Fold,
                            format!("{name} fold over their common edge"),
                        ));
                    }
                }
            }
            _ => {
                return Err(Violation::new(
                    ViolationKind::CoplanarOverlap,
                    format!("{name} coincide"),
                ))
            }
        }
    }
    Ok(out)
}

/// Intersection segments between two different surfaces; sheet 0 is on the
/// first, sheet 1 on the second.
pub(crate) fn cross_segments(ta: &[Triangle3], tb: &[Triangle3]) -> Result<Vec<PairSegment>, Violation> {
    let mut out = Vec::new();
    for (i, j, s) in cross_candidates(&boxes(ta), &boxes(tb)) {
        let b = tb[j].translated(&shift_point(&s));
        let name = format!("triangle {i} and other triangle {j}{:?}", s);
        if !shared_corners(&ta[i], &b).is_empty() {
            return Err(Violation::new(
                ViolationKind::VertexContact,
                format!("{name} share a vertex"),
            ));
        }
        if let Some(r) = generic_pair(&ta[i], &b, &name)? {
            out.push(to_segment(i, j, s, r));
        }
    }
    Ok(out)
}

/// Check that the intersection segments meet each other only in isolated
/// transverse points inside triangles, and at most three sheets at a time.
/// Returns the number of triple points.
pub(crate) fn check_triple_genericity(tris: &[Triangle3], segs: &[PairSegment]) -> Result<usize, Violation> {
    let mut ends: std::collections::BTreeMap<Point3, usize> = std::collections::BTreeMap::new();
    for s in segs {
        for e in &s.ends {
            *ends.entry(super::torus::normalize(e).0).or_default() += 1;
        }
    }
    if let Some((p, _)) = ends.iter().find(|(_, &n)| n > 2) {
        return Err(Violation::new(
            ViolationKind::TriplePointOnEdge,
            format!("three sheets meet at {p} on a triangle edge"),
        ));
    }
    let mut per_tri: Vec<Vec<[Point3; 2]>> = vec![Vec::new(); tris.len()];
    for s in segs {
        per_tri[s.a].push(s.local_ends(0));
        per_tri[s.b].push(s.local_ends(1));
    }
    let mut incidences = 0usize;
    for (t, list) in per_tri.iter().enumerate() {
        if list.len() < 2 {
            continue;
        }
        let (axis, _) = tris[t].flatten();
        let flat: Vec<crate::Segment2> = list
            .iter()
            .map(|[p, q]| crate::Segment2::new(p.project(axis), q.project(axis)).expect("nondegenerate"))
            .collect();
        let mut points: BTreeSet<Point2> = BTreeSet::new();
        for i in 0..flat.len() {
            for j in i + 1..flat.len() {
                match seg_intersect(&flat[i], &flat[j]) {
                    SegIntersection::None => {}
                    SegIntersection::Degenerate => {
                        return Err(Violation::new(
                            ViolationKind::NonTransverseTriple,
                            format!("two double curves overlap inside triangle {t}"),
                        ))
                    }
                    SegIntersection::Point { point, s, t: u } => {
                        let end = |x: &crate::Rational| *x == crate::rat(0, 1) || *x == crate::rat(1, 1);
                        if end(&s) && end(&u) {
                            // consecutive pieces of one curve
                            continue;
                        }
                        if end(&s) || end(&u) {
                            return Err(Violation::new(
                                ViolationKind::TriplePointOnEdge,
                                format!("three sheets meet on an edge of triangle {t}"),
                            ));
                        }
                        if !points.insert(point) {
                            return Err(Violation::new(
                                ViolationKind::QuadruplePoint,
                                format!("four sheets meet inside triangle {t}"),
                            ));
                        }
                        incidences += 1;
                    }
                }
            }
        }
    }
    Ok(incidences / 3)
}
