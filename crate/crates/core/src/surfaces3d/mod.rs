//! Immersed triangulated surfaces in the flat 3-torus.

pub mod arrangement;
pub mod catalog;
pub mod classes;
pub mod cycle;
pub(crate) mod intersect;
pub mod mesh;
pub mod torus;

use std::collections::BTreeSet;

pub use arrangement::{
    DoubleCircle, DoubleCurveArrangement, PreimageCircle, SourcePiece, SourcePoint, TraceError, TriplePoint,
    TriplePointSet,
};
pub use catalog::{swept_klein_bottle, swept_klein_core, three_coordinate_tori, TorusSpec};
pub use classes::{ambient_class_h2, curve_class_h1, generic_offset, RETRY_BUDGET};
pub use cycle::{MeshPoint, ResolvedCycle, SourceCycle};
pub use intersect::PairSegment;
pub use mesh::{EdgeSlot, MeshEdge, SourceMesh};

use crate::exactgeom::{seg_intersect, SegIntersection};
use crate::{rat, Point3, Rational, Segment2, Triangle3, Violation, ViolationKind};
use intersect::Bbox;
use torus::normalize;

/// A closed triangulated surface mapped into the 3-torus. Vertices may lie
/// outside the unit cube; positions are read modulo the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedImmersion3 {
    triangles: Vec<Triangle3>,
    mesh: SourceMesh,
}

impl TriangulatedImmersion3 {
    pub fn new(triangles: Vec<Triangle3>) -> Result<Self, Violation> {
        let bx = intersect::boxes(&triangles);
        intersect::coplanar_scan(&triangles, &bx)?;
        let mesh = SourceMesh::recover(&triangles)?;
        Ok(TriangulatedImmersion3 { triangles, mesh })
    }

    pub fn empty() -> Self {
        TriangulatedImmersion3 {
            triangles: Vec::new(),
            mesh: SourceMesh::recover(&[]).expect("empty mesh"),
        }
    }

    pub fn from_tori(specs: &[TorusSpec]) -> Result<Self, Violation> {
        Self::new(specs.iter().flat_map(|s| s.triangles()).collect())
    }

    pub fn triangles(&self) -> &[Triangle3] {
        &self.triangles
    }

    pub fn mesh(&self) -> &SourceMesh {
        &self.mesh
    }

    pub fn component_ids(&self) -> &[usize] {
        &self.mesh.component_of
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Disjoint union; triangles of `other` are numbered after those of `self`.
    pub fn union(&self, other: &Self) -> Result<Self, Violation> {
        let mut t = self.triangles.clone();
        t.extend(other.triangles.iter().cloned());
        Self::new(t)
    }

    /// The sub-immersion on the given connected components.
    pub fn select_components(&self, comps: &[usize]) -> Result<Self, Violation> {
        let keep: BTreeSet<usize> = comps.iter().copied().collect();
        let t = self
            .triangles
            .iter()
            .zip(&self.mesh.component_of)
            .filter(|(_, c)| keep.contains(c))
            .map(|(t, _)| t.clone())
            .collect();
        Self::new(t)
    }

    pub fn translated(&self, by: &Point3) -> Self {
        TriangulatedImmersion3 {
            triangles: self.triangles.iter().map(|t| t.translated(by)).collect(),
            mesh: self.mesh.clone(),
        }
    }

    fn boxes(&self) -> Vec<Bbox> {
        intersect::boxes(&self.triangles)
    }

    pub fn certify(self) -> Result<CertifiedImmersion3, Violation> {
        let bx = self.boxes();
        let segments = intersect::self_segments(&self.triangles, &bx)?;
        let triple_count = intersect::check_triple_genericity(&self.triangles, &segments)?;
        let arrangement = arrangement::trace(&segments, [&self.mesh, &self.mesh], true)
            .map_err(|e| Violation::new(ViolationKind::NonImmersion, e.to_string()))?;
        let triples = arrangement::triple_points(&self.triangles, &segments);
        if triples.points.len() != triple_count {
            return Err(Violation::new(
                ViolationKind::NonTransverseTriple,
                format!(
                    "{} triple crossings of double curves but {} transverse triple points",
                    triple_count,
                    triples.points.len()
                ),
            ));
        }
        let cert = GeneralPositionCert3 {
            triangles: self.triangles.len(),
            segments: segments.len(),
            double_circles: arrangement.circles.len(),
            triple_points: triple_count,
        };
        Ok(CertifiedImmersion3 {
            imm: self,
            segments,
            arrangement,
            triples,
            cert,
        })
    }

    /// Starting offset for generic translates: below every squared distance
    /// between distinct vertices, and at most 1/16.
    pub fn delta0(&self) -> Rational {
        let pts: BTreeSet<Point3> = self
            .triangles
            .iter()
            .flat_map(|t| t.vertices().iter().map(|v| normalize(v).0))
            .collect();
        let pts: Vec<Point3> = pts.into_iter().collect();
        let mut best = rat(1, 16);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = pts[i].dist_sq(&pts[j]);
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    pub fn ambient_class_h2(&self) -> Result<[bool; 3], Violation> {
        ambient_class_h2(&self.triangles, &self.delta0())
    }

    /// Transverse crossings of the segments with a generic translate of the
    /// surface, and the offset parameter used.
    pub fn translate_crossings(&self, segments: &[(Point3, Point3)]) -> Result<(usize, Rational), Violation> {
        classes::translate_count(segments, &self.triangles, &self.boxes(), &self.delta0())
    }

    /// Points of the 3-torus (reduced into the unit cube) where the segments
    /// cross this surface, or `None` if a contact is not transverse.
    pub fn crossing_points(&self, segments: &[(Point3, Point3)]) -> Option<Vec<Point3>> {
        let mut out: Vec<Point3> = self
            .crossing_source_points(segments)?
            .iter()
            .map(|p| torus::wrap(&p.local))
            .collect();
        out.sort();
        Some(out)
    }

    /// The same crossings, located on the source.
    pub fn crossing_source_points(&self, segments: &[(Point3, Point3)]) -> Option<Vec<SourcePoint>> {
        let mut out: Vec<SourcePoint> = classes::crossing_points(segments, &self.triangles, &self.boxes())?
            .into_iter()
            .map(|(tri, local)| SourcePoint { tri, local })
            .collect();
        out.sort();
        Some(out)
    }

    /// Points where two of the given source pieces cross inside a triangle.
    pub fn piece_crossings<'a>(&self, pieces: impl IntoIterator<Item = &'a SourcePiece>) -> Vec<SourcePoint> {
        let mut per_tri: Vec<Vec<&SourcePiece>> = vec![Vec::new(); self.triangles.len()];
        for p in pieces {
            per_tri[p.tri].push(p);
        }
        let mut out = BTreeSet::new();
        let inner = |x: &Rational| *x > rat(0, 1) && *x < rat(1, 1);
        for (t, list) in per_tri.iter().enumerate() {
            let (axis, _) = self.triangles[t].flatten();
            let flat: Vec<Segment2> = list
                .iter()
                .map(|p| Segment2::new(p.start.project(axis), p.end.project(axis)).expect("nondegenerate"))
                .collect();
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    if let SegIntersection::Point { s, t: u, .. } = seg_intersect(&flat[i], &flat[j]) {
                        if inner(&s) && inner(&u) {
                            out.insert(SourcePoint {
                                tri: t,
                                local: list[i].start.lerp(&list[i].end, &s),
                            });
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn resolve_cycle(&self, cycle: &SourceCycle) -> Result<ResolvedCycle, Violation> {
        cycle::resolve_cycle(&self.triangles, &self.mesh, cycle)
    }
}

/// What certification established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPositionCert3 {
    pub triangles: usize,
    pub segments: usize,
    pub double_circles: usize,
    pub triple_points: usize,
}

/// An immersion checked to be self-transverse, with its double curves and
/// triple points.
#[derive(Clone, Debug)]
pub struct CertifiedImmersion3 {
    imm: TriangulatedImmersion3,
    segments: Vec<PairSegment>,
    arrangement: DoubleCurveArrangement,
    triples: TriplePointSet,
    cert: GeneralPositionCert3,
}

impl std::ops::Deref for CertifiedImmersion3 {
    type Target = TriangulatedImmersion3;
    fn deref(&self) -> &TriangulatedImmersion3 {
        &self.imm
    }
}

/// Both sides of the r = 1 identity on a source cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEvaluation {
    pub lhs: bool,
    pub mu: bool,
    pub euler: bool,
    pub translate_crossings: usize,
    pub preimage_crossings: usize,
}

impl CycleEvaluation {
    pub fn rhs(&self) -> bool {
        self.mu ^ self.euler
    }
}

impl CertifiedImmersion3 {
    pub fn immersion(&self) -> &TriangulatedImmersion3 {
        &self.imm
    }

    pub fn cert(&self) -> &GeneralPositionCert3 {
        &self.cert
    }

    pub fn segments(&self) -> &[PairSegment] {
        &self.segments
    }

    pub fn double_curves(&self) -> &DoubleCurveArrangement {
        &self.arrangement
    }

    pub fn triple_points(&self) -> &TriplePointSet {
        &self.triples
    }

    /// Homology classes of the double circles.
    pub fn double_circle_classes(&self) -> Result<Vec<[bool; 3]>, Violation> {
        let d = self.delta0();
        self.arrangement
            .circles
            .iter()
            .map(|c| curve_class_h1(&c.lifted_segments(), &d))
            .collect()
    }

    /// Mod-2 crossings of the double curve with a generic translate of the
    /// surface.
    pub fn herbert_lhs_r2(&self) -> Result<bool, Violation> {
        let (c, _) = self.translate_crossings(&self.arrangement.lifted_segments())?;
        Ok(c % 2 == 1)
    }

    /// Triple-point parity and the total orientation character along the
    /// preimage curves.
    pub fn herbert_rhs_r2(&self) -> (bool, bool) {
        (self.triples.points.len() % 2 == 1, self.arrangement.w1_total())
    }

    /// Points where two preimage curves cross on the source.
    pub fn preimage_double_points(&self) -> Vec<SourcePoint> {
        self.piece_crossings(self.arrangement.preimages.iter().flat_map(|p| &p.pieces))
    }

    /// Both sides of the r = 1 identity on a cycle of the source.
    pub fn herbert_r1_on_cycle(&self, cycle: &SourceCycle) -> Result<CycleEvaluation, Violation> {
        let resolved = self.resolve_cycle(cycle)?;
        let mut preimage_crossings = 0usize;
        let not_transverse = |detail: String| {
            Violation::new(
                ViolationKind::CycleNotTransverse,
                format!("cycle {}: {detail}", cycle.name),
            )
        };
        for piece in &resolved.pieces {
            let (axis, _) = self.triangles()[piece.tri].flatten();
            let sc = Segment2::new(piece.start.project(axis), piece.end.project(axis)).expect("nondegenerate");
            for pre in &self.arrangement.preimages {
                for p in pre.pieces.iter().filter(|p| p.tri == piece.tri) {
                    let sp = Segment2::new(p.start.project(axis), p.end.project(axis)).expect("nondegenerate");
                    match seg_intersect(&sc, &sp) {
                        SegIntersection::None => {}
                        SegIntersection::Degenerate => {
                            return Err(not_transverse(format!("runs along a double curve in t{}", piece.tri)))
                        }
                        SegIntersection::Point { s, t, .. } => {
                            let inner = |x: &Rational| *x > rat(0, 1) && *x < rat(1, 1);
                            if !(inner(&s) && inner(&t)) {
                                return Err(not_transverse(format!(
                                    "touches a double curve at a corner in t{}",
                                    piece.tri
                                )));
                            }
                            preimage_crossings += 1;
                        }
                    }
                }
            }
        }
        let (translate_crossings, _) = self.translate_crossings(&resolved.segments())?;
        Ok(CycleEvaluation {
            lhs: translate_crossings % 2 == 1,
            mu: preimage_crossings % 2 == 1,
            euler: resolved.orientation_reversing,
            translate_crossings,
            preimage_crossings,
        })
    }
}

/// Validate and certify in one step.
pub fn validate_general_position_3d(f: TriangulatedImmersion3) -> Result<CertifiedImmersion3, Violation> {
    f.certify()
}

/// Intersection curves of two surfaces as a class in the 3-torus: the
/// traced circles with their preimages on each surface.
pub fn intersection_curves(
    f: &TriangulatedImmersion3,
    g: &TriangulatedImmersion3,
) -> Result<DoubleCurveArrangement, Violation> {
    let segs = intersect::cross_segments(f.triangles(), g.triangles())?;
    arrangement::trace(&segs, [f.mesh(), g.mesh()], false)
        .map_err(|e| Violation::new(ViolationKind::NonTransversePair, e.to_string()))
}
