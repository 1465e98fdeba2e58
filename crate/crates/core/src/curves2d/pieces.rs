//! Splitting polylines into per-square pieces and intersecting them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::polyline::ClosedPolyline;
use super::{ArcPoint, Crossing};
use crate::exactgeom::{seg_intersect, Feature, SegIntersection};
use crate::surface2d::SquareComplex;
use crate::{Point2, Rational, Segment2, Violation, ViolationKind};

/// The part of one segment that lies in a single square.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub comp: usize,
    pub seg: usize,
    /// Position in the component's piece sequence.
    pub ord: usize,
    pub square: usize,
    pub segment: Segment2,
    /// Range of the segment parameter covered by the piece.
    pub t0: Rational,
    pub t1: Rational,
    pub start_on_side: bool,
    pub end_on_side: bool,
}

impl Piece {
    fn arc(&self, s: &Rational) -> ArcPoint {
        ArcPoint {
            component: self.comp,
            segment: self.seg,
            param: self.t0.clone() + s.clone() * (self.t1.clone() - self.t0.clone()),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct PieceSet {
    pub pieces: Vec<Piece>,
    /// Pieces per component, indexed by component id.
    pub counts: BTreeMap<usize, usize>,
}

impl PieceSet {
    pub fn build<'a>(
        ambient: &SquareComplex,
        comps: impl IntoIterator<Item = (usize, &'a ClosedPolyline)>,
    ) -> PieceSet {
        let mut set = PieceSet::default();
        for (comp, poly) in comps {
            let mut ord = 0;
            for k in 0..poly.len() {
                let v = &poly.vertices()[k];
                let next = &poly.vertices()[(k + 1) % poly.len()];
                let w = poly.next_in_frame(ambient, k);
                match poly.via()[k] {
                    None => {
                        set.pieces.push(Piece {
                            comp,
                            seg: k,
                            ord,
                            square: v.square,
                            segment: Segment2::new(v.pos.clone(), w).expect("nonzero segment"),
                            t0: Rational::zero(),
                            t1: Rational::one(),
                            start_on_side: false,
                            end_on_side: false,
                        });
                        ord += 1;
                    }
                    Some(side) => {
                        let tc = poly.crossing_param(ambient, k).expect("crossing");
                        let c = v.pos.lerp(&w, &tc);
                        let tr = ambient.neighbor(v.square, side).expect("validated");
                        let c_there = tr.to_here.inverse().apply(&c);
                        set.pieces.push(Piece {
                            comp,
                            seg: k,
                            ord,
                            square: v.square,
                            segment: Segment2::new(v.pos.clone(), c).expect("vertex inside"),
                            t0: Rational::zero(),
                            t1: tc.clone(),
                            start_on_side: false,
                            end_on_side: true,
                        });
                        set.pieces.push(Piece {
                            comp,
                            seg: k,
                            ord: ord + 1,
                            square: next.square,
                            segment: Segment2::new(c_there, next.pos.clone()).expect("vertex inside"),
                            t0: tc,
                            t1: Rational::one(),
                            start_on_side: true,
                            end_on_side: false,
                        });
                        ord += 2;
                    }
                }
            }
            set.counts.insert(comp, ord);
        }
        set
    }

    pub fn by_square(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, p) in self.pieces.iter().enumerate() {
            m.entry(p.square).or_default().push(i);
        }
        m
    }

    /// Does piece `q` directly follow piece `p` through a shared vertex?
    fn follows(&self, p: &Piece, q: &Piece) -> bool {
        p.comp == q.comp && !p.end_on_side && (p.ord + 1) % self.counts[&p.comp] == q.ord
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Spot {
    Interior,
    Vertex,
    Side,
}

fn spot(p: &Piece, s: &Rational) -> Spot {
    if s.is_zero() {
        if p.start_on_side {
            Spot::Side
        } else {
            Spot::Vertex
        }
    } else if s.is_one() {
        if p.end_on_side {
            Spot::Side
        } else {
            Spot::Vertex
        }
    } else {
        Spot::Interior
    }
}

fn describe(p: &Piece) -> String {
    format!("component {} segment {} in s{}", p.comp, p.seg, p.square)
}

/// Classify the meeting of two pieces. `Ok(Some)` is a transverse interior
/// crossing, `Ok(None)` no meeting (or the shared vertex of consecutive
/// pieces), `Err` a violation.
fn meet(set_a: &PieceSet, p: &Piece, set_b: &PieceSet, q: &Piece, same: bool) -> Result<Option<Crossing>, Violation> {
    match seg_intersect(&p.segment, &q.segment) {
        SegIntersection::None => Ok(None),
        SegIntersection::Degenerate => Err(Violation::new(
            ViolationKind::DegenerateOverlap,
            format!("{} overlaps {}", describe(p), describe(q)),
        )),
        SegIntersection::Point { point, s, t } => {
            if same {
                if set_a.follows(p, q) && s.is_one() && t.is_zero() {
                    return Ok(None);
                }
                if set_b.follows(q, p) && t.is_one() && s.is_zero() {
                    return Ok(None);
                }
            }
            let (sp, sq) = (spot(p, &s), spot(q, &t));
            let kind = match (sp, sq) {
                (Spot::Interior, Spot::Interior) => {
                    return Ok(Some(Crossing {
                        square: p.square,
                        point,
                        first: p.arc(&s),
                        second: q.arc(&t),
                    }))
                }
                (Spot::Side, _) | (_, Spot::Side) => ViolationKind::CrossingOnEdge,
                (Spot::Vertex, Spot::Vertex) => ViolationKind::CoincidentVertices,
                _ => ViolationKind::Tangency,
            };
            Err(Violation::new(
                kind,
                format!("{} meets {} at s{} {}", describe(p), describe(q), p.square, point),
            ))
        }
    }
}

fn check_triples(crossings: &[Crossing]) -> Result<(), Violation> {
    let mut seen = BTreeSet::new();
    for c in crossings {
        if !seen.insert((c.square, c.point.clone())) {
            return Err(Violation::new(
                ViolationKind::TriplePoint,
                format!("more than two strands pass through s{} {}", c.square, c.point),
            ));
        }
    }
    Ok(())
}

/// All self-crossings of a piece set, each reported once with the earlier
/// piece first.
pub(crate) fn self_crossings(set: &PieceSet) -> Result<Vec<Crossing>, Violation> {
    let mut out = Vec::new();
    for idx in set.by_square().values() {
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if let Some(c) = meet(set, &set.pieces[i], set, &set.pieces[j], true)? {
                    out.push(c);
                }
            }
        }
    }
    check_triples(&out)?;
    Ok(out)
}

/// All crossings between two piece sets; `first` refers to `a`.
pub(crate) fn mutual_crossings(a: &PieceSet, b: &PieceSet) -> Result<Vec<Crossing>, Violation> {
    let bsq = b.by_square();
    let mut out = Vec::new();
    for (sq, ia) in a.by_square() {
        let Some(ib) = bsq.get(&sq) else { continue };
        for &i in &ia {
            for &j in ib {
                if let Some(c) = meet(a, &a.pieces[i], b, &b.pieces[j], false)? {
                    out.push(c);
                }
            }
        }
    }
    check_triples(&out)?;
    Ok(out)
}

fn square_sides() -> [Segment2; 4] {
    let c = |x: i64, y: i64| crate::p2((x, 1), (y, 1));
    [
        Segment2::new(c(1, 0), c(1, 1)).unwrap(),
        Segment2::new(c(0, 0), c(0, 1)).unwrap(),
        Segment2::new(c(0, 1), c(1, 1)).unwrap(),
        Segment2::new(c(0, 0), c(1, 0)).unwrap(),
    ]
}

/// Per-square separation features: pieces, their endpoints, the given extra
/// points and the square sides.
pub(crate) fn features_by_square(set: &PieceSet, extra: &[(usize, Point2)]) -> BTreeMap<usize, Vec<Feature<Rational>>> {
    let mut points: BTreeMap<usize, BTreeSet<Point2>> = BTreeMap::new();
    let mut segs: BTreeMap<usize, Vec<Segment2>> = BTreeMap::new();
    for p in &set.pieces {
        let e = points.entry(p.square).or_default();
        e.insert(p.segment.start().clone());
        e.insert(p.segment.end().clone());
        segs.entry(p.square).or_default().push(p.segment.clone());
    }
    for (sq, pt) in extra {
        points.entry(*sq).or_default().insert(pt.clone());
    }
    let mut out = BTreeMap::new();
    for (sq, pts) in points {
        let mut f: Vec<Feature<Rational>> = pts.into_iter().map(Feature::Point).collect();
        f.extend(segs.remove(&sq).unwrap_or_default().into_iter().map(Feature::Segment));
        f.extend(square_sides().into_iter().map(Feature::Segment));
        out.insert(sq, f);
    }
    out
}

pub(crate) fn separation(features: &BTreeMap<usize, Vec<Feature<Rational>>>) -> Option<Rational> {
    features
        .values()
        .filter_map(|f| crate::exactgeom::min_separation(f))
        .min()
}
