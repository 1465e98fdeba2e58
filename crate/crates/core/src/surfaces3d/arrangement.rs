//! Double curves, their preimages on the source, and triple points.

use std::collections::BTreeMap;

use super::intersect::PairSegment;
use super::mesh::SourceMesh;
use super::torus::{integer_offset, normalize, shift_point, Shift};
use crate::exactgeom::{locate_in_triangle2, Incidence, Incidence3};
use crate::{Point3, Rational, Triangle3};

/// A piece of a curve on the source surface, in the frame of its triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourcePiece {
    pub tri: usize,
    pub start: Point3,
    pub end: Point3,
}

/// A point on the source surface, in the frame of its triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourcePoint {
    pub tri: usize,
    pub local: Point3,
}

/// A closed intersection curve in the 3-torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCircle {
    /// A continuous lift: vertex `k + 1` follows vertex `k`, and the last
    /// vertex joins the first translated by `closing_shift`.
    pub vertices: Vec<Point3>,
    pub closing_shift: Shift,
    /// Constituent segments (index into the segment list) and whether each is
    /// traversed backwards.
    pub segments: Vec<(usize, bool)>,
}

impl DoubleCircle {
    /// Segments of the lift, including the closing one.
    pub fn lifted_segments(&self) -> Vec<(Point3, Point3)> {
        let n = self.vertices.len();
        let close = self.vertices[0].add(&shift_point(&self.closing_shift));
        (0..n)
            .map(|k| {
                let q = if k + 1 == n {
                    close.clone()
                } else {
                    self.vertices[k + 1].clone()
                };
                (self.vertices[k].clone(), q)
            })
            .collect()
    }
}

/// A closed curve on a source surface lying over a double circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageCircle {
    pub circle: usize,
    /// Which surface the curve lives on (0 or 1; always 0 for
    /// self-intersections).
    pub surface: usize,
    pub pieces: Vec<SourcePiece>,
    /// Orientation character of the source along the curve.
    pub w1: bool,
    /// A single source circle covering the double circle twice.
    pub double_cover: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleCurveArrangement {
    pub circles: Vec<DoubleCircle>,
    pub preimages: Vec<PreimageCircle>,
}

impl DoubleCurveArrangement {
    pub fn w1_total(&self) -> bool {
        self.preimages.iter().filter(|p| p.w1).count() % 2 == 1
    }

    /// Preimage circles over circle `c`, counted with multiplicity.
    pub fn lift_count(&self, c: usize) -> usize {
        self.preimages
            .iter()
            .filter(|p| p.circle == c)
            .map(|p| if p.double_cover { 2 } else { 1 })
            .sum()
    }

    /// All segments of all circles, each as a pair of points in some lift.
    pub fn lifted_segments(&self) -> Vec<(Point3, Point3)> {
        self.circles.iter().flat_map(|c| c.lifted_segments()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("double-curve trace failed: {0}")]
pub struct TraceError(pub String);

fn end_tags(s: &PairSegment, reversed: bool, at_end: bool) -> [Incidence; 2] {
    let e = usize::from(at_end != reversed);
    s.tags[e]
}

/// Glue intersection segments into closed curves and follow both sheets.
/// `meshes[k]` is the source of sheet `k`.
pub(crate) fn trace(
    segs: &[PairSegment],
    meshes: [&SourceMesh; 2],
    same_surface: bool,
) -> Result<DoubleCurveArrangement, TraceError> {
    let mut at: BTreeMap<Point3, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, s) in segs.iter().enumerate() {
        for e in 0..2 {
            at.entry(normalize(&s.ends[e]).0).or_default().push((i, e));
        }
    }
    if let Some((p, v)) = at.iter().find(|(_, v)| v.len() != 2) {
        return Err(TraceError(format!("{} segment ends meet at {p}", v.len())));
    }
    let partner = |i: usize, e: usize| -> (usize, usize) {
        let v = &at[&normalize(&segs[i].ends[e]).0];
        if v[0] == (i, e) {
            v[1]
        } else {
            v[0]
        }
    };

    let mut used = vec![false; segs.len()];
    let mut out = DoubleCurveArrangement::default();
    for start in 0..segs.len() {
        if used[start] {
            continue;
        }
        let mut order = vec![(start, false)];
        let mut vertices = vec![segs[start].ends[0].clone(), segs[start].ends[1].clone()];
        used[start] = true;
        let mut cur = (start, 1usize);
        let closing_shift;
        loop {
            let (ni, ne) = partner(cur.0, cur.1);
            let here = vertices.last().unwrap().clone();
            if ni == start && ne == 0 {
                closing_shift = integer_offset(&here, &segs[start].ends[0])
                    .ok_or_else(|| TraceError("closing point mismatch".into()))?;
                vertices.pop();
                break;
            }
            if used[ni] {
                return Err(TraceError(format!("segment {ni} reached twice")));
            }
            used[ni] = true;
            let delta = integer_offset(&here, &segs[ni].ends[ne]).ok_or_else(|| TraceError("joint mismatch".into()))?;
            vertices.push(segs[ni].ends[1 - ne].add(&shift_point(&delta)));
            order.push((ni, ne == 1));
            cur = (ni, 1 - ne);
        }
        let circle = out.circles.len();
        out.circles.push(DoubleCircle {
            vertices,
            closing_shift,
            segments: order.clone(),
        });

        // Follow one sheet around; at each joint exactly one sheet crosses a
        // triangle edge while the other continues inside its triangle.
        let n = order.len();
        let follow = |x0: usize| -> Result<(Vec<SourcePiece>, bool, usize), TraceError> {
            let mut x = x0;
            let mut pieces = Vec::new();
            let mut w1 = false;
            for k in 0..n {
                let (si, rev) = order[k];
                let s = &segs[si];
                let [p, q] = s.local_ends(x);
                let (a, b) = if rev { (q, p) } else { (p, q) };
                pieces.push(SourcePiece {
                    tri: s.sheet_tri(x),
                    start: a,
                    end: b,
                });
                let here = end_tags(s, rev, true);
                let (ti, trev) = order[(k + 1) % n];
                let next = end_tags(&segs[ti], trev, false);
                let interior_next = next.iter().position(|t| *t == Incidence::Interior);
                let edge_next = next.iter().position(|t| matches!(t, Incidence::Edge(_)));
                x = match here[x] {
                    Incidence::Interior => interior_next,
                    Incidence::Edge(e) => {
                        w1 ^= meshes[x].flip_at(s.sheet_tri(x), e);
                        edge_next
                    }
                    Incidence::Vertex(_) => None,
                }
                .ok_or_else(|| TraceError(format!("joint after segment {si} is not generic")))?;
            }
            Ok((pieces, w1, x))
        };
        let (pieces0, w10, end0) = follow(0)?;
        if end0 == 0 {
            let (pieces1, w11, _) = follow(1)?;
            out.preimages.push(PreimageCircle {
                circle,
                surface: 0,
                pieces: pieces0,
                w1: w10,
                double_cover: false,
            });
            out.preimages.push(PreimageCircle {
                circle,
                surface: usize::from(!same_surface),
                pieces: pieces1,
                w1: w11,
                double_cover: false,
            });
        } else {
            let (pieces1, w11, end1) = follow(1)?;
            if end1 != 0 {
                return Err(TraceError("sheet swap is not an involution".into()));
            }
            let mut pieces = pieces0;
            pieces.extend(pieces1);
            out.preimages.push(PreimageCircle {
                circle,
                surface: 0,
                pieces,
                w1: w10 ^ w11,
                double_cover: true,
            });
        }
    }
    Ok(out)
}

/// A point where three sheets meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePoint {
    /// Position reduced into `[0,1)³`.
    pub point: Point3,
    /// The three sheets, sorted.
    pub sheets: [SourcePoint; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriplePointSet {
    pub points: Vec<TriplePoint>,
    /// The six orderings of each point's sheets.
    pub ordered_triples: Vec<[SourcePoint; 3]>,
    /// Each sheet with the unordered pair of the other two.
    pub mu3_points: Vec<(SourcePoint, [SourcePoint; 2])>,
}

impl TriplePointSet {
    fn from_points(points: Vec<TriplePoint>) -> Self {
        let mut ordered_triples = Vec::new();
        let mut mu3_points = Vec::new();
        for tp in &points {
            let s = &tp.sheets;
            for [i, j, k] in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                ordered_triples.push([s[i].clone(), s[j].clone(), s[k].clone()]);
            }
            for [i, j, k] in [[0, 1, 2], [1, 0, 2], [2, 0, 1]] {
                mu3_points.push((s[i].clone(), [s[j].clone(), s[k].clone()]));
            }
        }
        TriplePointSet {
            points,
            ordered_triples,
            mu3_points,
        }
    }
}

fn strictly_inside(t: &Triangle3, p: &Point3) -> bool {
    let (axis, flat) = t.flatten();
    locate_in_triangle2(&flat, &p.project(axis)) == Incidence3::Interior
}

/// Solve `n_k · x = c_k` for three planes.
fn solve3(n: [&Point3; 3], c: [&Rational; 3]) -> Option<Point3> {
    let det = n[0].dot(&n[1].cross(n[2]));
    if det == crate::rat(0, 1) {
        return None;
    }
    let x = n[1]
        .cross(n[2])
        .scale(c[0])
        .add(&n[2].cross(n[0]).scale(c[1]))
        .add(&n[0].cross(n[1]).scale(c[2]));
    Some(x.scale(&(crate::rat(1, 1) / det)))
}

/// Triple points found by intersecting the three planes of every pair of
/// sheets that both meet a common triangle.
pub(crate) fn triple_points(tris: &[Triangle3], segs: &[PairSegment]) -> TriplePointSet {
    let mut partners: Vec<Vec<(usize, Shift)>> = vec![Vec::new(); tris.len()];
    for s in segs {
        partners[s.a].push((s.b, s.shift));
        partners[s.b].push((s.a, [-s.shift[0], -s.shift[1], -s.shift[2]]));
    }
    let mut found: BTreeMap<Point3, [SourcePoint; 3]> = BTreeMap::new();
    for (a, list) in partners.iter().enumerate() {
        let ta = &tris[a];
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let (b, sb) = list[i];
                let (c, sc) = list[j];
                let tb = tris[b].translated(&shift_point(&sb));
                let tc = tris[c].translated(&shift_point(&sc));
                let (na, nb, nc) = (ta.normal(), tb.normal(), tc.normal());
                let (ca, cb, cc) = (na.dot(ta.vertex(0)), nb.dot(tb.vertex(0)), nc.dot(tc.vertex(0)));
                let Some(x) = solve3([&na, &nb, &nc], [&ca, &cb, &cc]) else {
                    continue;
                };
                if !(strictly_inside(ta, &x) && strictly_inside(&tb, &x) && strictly_inside(&tc, &x)) {
                    continue;
                }
                let mut sheets = [
                    SourcePoint {
                        tri: a,
                        local: x.clone(),
                    },
                    SourcePoint {
                        tri: b,
                        local: x.sub(&shift_point(&sb)),
                    },
                    SourcePoint {
                        tri: c,
                        local: x.sub(&shift_point(&sc)),
                    },
                ];
                sheets.sort();
                found.entry(normalize(&x).0).or_insert(sheets);
            }
        }
    }
    TriplePointSet::from_points(
        found
            .into_iter()
            .map(|(point, sheets)| TriplePoint { point, sheets })
            .collect(),
    )
}
