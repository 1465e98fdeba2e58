//! Represented immersion classes: disjoint union, intersection, pullback,
//! the multiple-point operations and the checks relating them.
//!
//! Classes are never quotiented. Two classes are compared through their
//! exact geometric data.

use std::collections::BTreeMap;
use std::fmt;

use crate::curves2d::{ArcPoint, CertifiedMulticurve, CurveError, SquarePoint};
use crate::surfaces3d::torus::segment_key;
use crate::surfaces3d::{
    intersection_curves, CertifiedImmersion3, DoubleCurveArrangement, PreimageCircle, SourceCycle, SourcePoint,
};
use crate::{Point3, Violation, ViolationKind};

/// Where a represented class lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Universe {
    CurveInSurface,
    SurfaceInTorus3,
    PointsInSurface,
    CurveInTorus3,
    PointsInTorus3,
    PointsOnCurveSource,
    PointsOnSurfaceSource,
    CurvesOnSurfaceSource,
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Universe::CurveInSurface => "curve-in-surface",
            Universe::SurfaceInTorus3 => "surface-in-3-torus",
            Universe::PointsInSurface => "points-in-surface",
            Universe::CurveInTorus3 => "curve-in-3-torus",
            Universe::PointsInTorus3 => "points-in-3-torus",
            Universe::PointsOnCurveSource => "points-on-curve-source",
            Universe::PointsOnSurfaceSource => "points-on-surface-source",
            Universe::CurvesOnSurfaceSource => "curves-on-surface-source",
        };
        f.write_str(s)
    }
}

/// A point of a 0-dimensional class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassPoint {
    Surface(SquarePoint),
    CurveSource(ArcPoint),
    SurfaceSource(SourcePoint),
    Torus(Point3),
}

/// A closed curve in the 3-torus with the unordered orientation characters
/// of the sheets meeting along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceCurve {
    pub segments: Vec<(Point3, Point3)>,
    pub transport: Vec<bool>,
}

pub const GENERICALLY_EMPTY: &str = "generically-empty-guaranteed";

#[derive(Clone, Debug)]
pub enum RepresentedClass {
    /// The identity of the ambient, the unit for intersection.
    Identity,
    Empty {
        universe: Universe,
        note: Option<String>,
    },
    Curves(CertifiedMulticurve),
    Surfaces(CertifiedImmersion3),
    Points {
        universe: Universe,
        points: Vec<ClassPoint>,
    },
    SpaceCurves(Vec<SpaceCurve>),
    SourceCurves(Vec<PreimageCircle>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BordismError {
    #[error(transparent)]
    Violation(#[from] Violation),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("cannot combine {0} with {1}")]
    Mismatch(String, String),
}

fn space_curves(arr: &DoubleCurveArrangement) -> Vec<SpaceCurve> {
    arr.circles
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut transport: Vec<bool> = arr.preimages.iter().filter(|p| p.circle == i).map(|p| p.w1).collect();
            transport.sort();
            SpaceCurve {
                segments: c.lifted_segments(),
                transport,
            }
        })
        .collect()
}

fn points_class(universe: Universe, mut points: Vec<ClassPoint>) -> RepresentedClass {
    points.sort();
    RepresentedClass::Points { universe, points }
}

impl RepresentedClass {
    pub fn universe(&self) -> Option<Universe> {
        match self {
            RepresentedClass::Identity => None,
            RepresentedClass::Empty { universe, .. } => Some(*universe),
            RepresentedClass::Curves(_) => Some(Universe::CurveInSurface),
            RepresentedClass::Surfaces(_) => Some(Universe::SurfaceInTorus3),
            RepresentedClass::Points { universe, .. } => Some(*universe),
            RepresentedClass::SpaceCurves(_) => Some(Universe::CurveInTorus3),
            RepresentedClass::SourceCurves(_) => Some(Universe::CurvesOnSurfaceSource),
        }
    }

    fn label(&self) -> String {
        self.universe()
            .map_or_else(|| "identity".to_string(), |u| u.to_string())
    }

    /// Whether the representative has no geometry at all.
    pub fn is_empty(&self) -> bool {
        match self {
            RepresentedClass::Identity => false,
            RepresentedClass::Empty { .. } => true,
            RepresentedClass::Curves(c) => c.components().is_empty(),
            RepresentedClass::Surfaces(s) => s.is_empty(),
            RepresentedClass::Points { points, .. } => points.is_empty(),
            RepresentedClass::SpaceCurves(c) => c.is_empty(),
            RepresentedClass::SourceCurves(c) => c.is_empty(),
        }
    }

    pub fn note(&self) -> Option<&str> {
        match self {
            RepresentedClass::Empty { note, .. } => note.as_deref(),
            _ => None,
        }
    }

    /// The points of a 0-dimensional class.
    pub fn points(&self) -> &[ClassPoint] {
        match self {
            RepresentedClass::Points { points, .. } => points,
            _ => &[],
        }
    }

    fn empty_of(universe: Universe) -> Self {
        RepresentedClass::Empty { universe, note: None }
    }
}

/// Disjoint union.
pub fn add(a: &RepresentedClass, b: &RepresentedClass) -> Result<RepresentedClass, BordismError> {
    use RepresentedClass as R;
    match (a, b) {
        (R::Empty { universe, .. }, other) | (other, R::Empty { universe, .. })
            if other.universe() == Some(*universe) =>
        {
            Ok(other.clone())
        }
        (R::Curves(f), R::Curves(g)) => Ok(R::Curves(f.curve().union(g.curve())?.certify()?)),
        (R::Surfaces(f), R::Surfaces(g)) => Ok(R::Surfaces(f.immersion().union(g.immersion())?.certify()?)),
        (R::Points { universe: u, points: p }, R::Points { universe: v, points: q }) if u == v => {
            let mut all = p.clone();
            all.extend(q.iter().cloned());
            all.sort();
            if all.windows(2).any(|w| w[0] == w[1]) {
                return Err(Violation::new(ViolationKind::CoincidentVertices, "point classes overlap").into());
            }
            Ok(points_class(*u, all))
        }
        _ => Err(BordismError::Mismatch(a.label(), b.label())),
    }
}

/// The transverse intersection of two classes in the same ambient.
pub fn internal_product(a: &RepresentedClass, b: &RepresentedClass) -> Result<RepresentedClass, BordismError> {
    use RepresentedClass as R;
    match (a, b) {
        (R::Identity, other) | (other, R::Identity) => Ok(other.clone()),
        (R::Curves(f), R::Curves(g)) => {
            let pts = f
                .crossings_with(g)?
                .into_iter()
                .map(|c| ClassPoint::Surface(SquarePoint::new(c.square, c.point)))
                .collect();
            Ok(points_class(Universe::PointsInSurface, pts))
        }
        (R::Surfaces(f), R::Surfaces(g)) => Ok(R::SpaceCurves(space_curves(&intersection_curves(f, g)?))),
        (R::Empty { .. }, _) | (_, R::Empty { .. }) => Ok(R::empty_of(Universe::PointsInSurface)),
        _ => Err(BordismError::Mismatch(a.label(), b.label())),
    }
}

/// The fiber product of `g` with `f`, immersed in the source of `g`.
pub fn pullback_class(g: &RepresentedClass, f: &RepresentedClass) -> Result<RepresentedClass, BordismError> {
    use RepresentedClass as R;
    match (g, f) {
        (R::Curves(g), R::Curves(f)) => {
            let pts = g
                .crossings_with(f)?
                .into_iter()
                .map(|c| ClassPoint::CurveSource(c.first))
                .collect();
            Ok(points_class(Universe::PointsOnCurveSource, pts))
        }
        (R::Surfaces(g), R::Surfaces(f)) => {
            let arr = intersection_curves(g, f)?;
            Ok(R::SourceCurves(
                arr.preimages.into_iter().filter(|p| p.surface == 0).collect(),
            ))
        }
        (R::Surfaces(_), R::Empty { .. }) => Ok(R::SourceCurves(Vec::new())),
        (R::Curves(_), R::Empty { .. }) => Ok(R::empty_of(Universe::PointsOnCurveSource)),
        _ => Err(BordismError::Mismatch(g.label(), f.label())),
    }
}

fn out_of_range(universe: Universe) -> RepresentedClass {
    RepresentedClass::Empty {
        universe,
        note: Some(GENERICALLY_EMPTY.to_string()),
    }
}

/// The r-fold self-intersection class.
pub fn psi_r(f: &RepresentedClass, r: usize) -> Result<RepresentedClass, BordismError> {
    use RepresentedClass as R;
    if r == 0 {
        return Ok(R::Identity);
    }
    if r == 1 {
        return Ok(f.clone());
    }
    match f {
        R::Curves(c) => match r {
            2 => Ok(points_class(
                Universe::PointsInSurface,
                c.double_points().points.into_iter().map(ClassPoint::Surface).collect(),
            )),
            _ => Ok(out_of_range(Universe::PointsInSurface)),
        },
        R::Surfaces(s) => match r {
            2 => Ok(R::SpaceCurves(space_curves(s.double_curves()))),
            3 => Ok(points_class(
                Universe::PointsInTorus3,
                s.triple_points()
                    .points
                    .iter()
                    .map(|t| ClassPoint::Torus(t.point.clone()))
                    .collect(),
            )),
            _ => Ok(out_of_range(Universe::PointsInTorus3)),
        },
        R::Empty { universe, .. } => Ok(R::empty_of(*universe)),
        // points and curves of positive codimension have no self-crossings
        other => Ok(out_of_range(other.universe().expect("not the identity"))),
    }
}

/// The r-fold points remembering one preimage, immersed in the source.
pub fn mu_r(f: &RepresentedClass, r: usize) -> Result<RepresentedClass, BordismError> {
    use RepresentedClass as R;
    match (f, r) {
        (_, 0 | 1) => Err(BordismError::Mismatch(f.label(), format!("mu_{r}"))),
        (R::Curves(c), 2) => Ok(points_class(
            Universe::PointsOnCurveSource,
            c.double_points()
                .ordered_preimages
                .into_iter()
                .map(|(a, _)| ClassPoint::CurveSource(a))
                .collect(),
        )),
        (R::Curves(_), _) => Ok(out_of_range(Universe::PointsOnCurveSource)),
        (R::Surfaces(s), 2) => Ok(R::SourceCurves(s.double_curves().preimages.clone())),
        (R::Surfaces(s), 3) => Ok(points_class(
            Universe::PointsOnSurfaceSource,
            s.triple_points()
                .mu3_points
                .iter()
                .map(|(p, _)| ClassPoint::SurfaceSource(p.clone()))
                .collect(),
        )),
        (R::Surfaces(_), _) => Ok(out_of_range(Universe::PointsOnSurfaceSource)),
        (R::Empty { universe, .. }, _) => Ok(R::empty_of(*universe)),
        (other, _) => Ok(out_of_range(other.universe().unwrap_or(Universe::PointsInSurface))),
    }
}

/// Named bits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvaluationFunctional {
    pub table: BTreeMap<String, bool>,
}

impl EvaluationFunctional {
    pub fn get(&self, name: &str) -> Option<bool> {
        self.table.get(name).copied()
    }
}

/// The mod-2 Euler class of the normal bundle: one bit per curve component
/// (one-sidedness), or per supplied source cycle for surfaces, where the
/// default rows are the components with bit set when non-orientable.
pub fn euler_class(f: &RepresentedClass, cycles: &[SourceCycle]) -> Result<EvaluationFunctional, BordismError> {
    let mut table = BTreeMap::new();
    match f {
        RepresentedClass::Curves(c) => {
            for (i, id) in c.ids().iter().enumerate() {
                table.insert(id.clone(), c.two_sidedness(i));
            }
        }
        RepresentedClass::Surfaces(s) => {
            if cycles.is_empty() {
                for (i, o) in s.mesh().orientable.iter().enumerate() {
                    table.insert(format!("component{i}"), !o);
                }
            }
            for cy in cycles {
                table.insert(cy.name.clone(), s.resolve_cycle(cy)?.orientation_reversing);
            }
        }
        _ => {}
    }
    Ok(EvaluationFunctional { table })
}

/// The outcome of one exact comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub holds: bool,
    pub left: usize,
    pub right: usize,
    pub detail: String,
}

fn report<T: Ord + fmt::Debug>(name: &str, mut left: Vec<T>, mut right: Vec<T>) -> CheckReport {
    left.sort();
    right.sort();
    let holds = left == right;
    let detail = if holds {
        format!("{} = {}", left.len(), right.len())
    } else {
        format!("{left:?} vs {right:?}")
    };
    CheckReport {
        name: name.to_string(),
        holds,
        left: left.len(),
        right: right.len(),
        detail,
    }
}

fn not_transverse(what: &str) -> BordismError {
    Violation::new(ViolationKind::NonTransversePair, format!("{what} is not transverse")).into()
}

/// Pulling the double curve of `f` back along `g` gives the double points of
/// the pulled-back class, as points on the source of `g`.
pub fn check_naturality(g: &CertifiedImmersion3, f: &CertifiedImmersion3) -> Result<CheckReport, BordismError> {
    let left = g
        .crossing_source_points(&f.double_curves().lifted_segments())
        .ok_or_else(|| not_transverse("the double curve against g"))?;
    let theta = intersection_curves(g, f)?;
    let right = g.piece_crossings(
        theta
            .preimages
            .iter()
            .filter(|p| p.surface == 0)
            .flat_map(|p| &p.pieces),
    );
    Ok(report("naturality", left, right))
}

fn segment_keys(segs: &[(Point3, Point3)]) -> Vec<(Point3, Point3)> {
    segs.iter().map(|(p, q)| segment_key(p, q).0).collect()
}

/// Split the r-fold points of `f ⊔ g` into the mixed pieces.
pub fn check_cartan(f: &RepresentedClass, g: &RepresentedClass, r: usize) -> Result<CheckReport, BordismError> {
    use RepresentedClass as R;
    let sum = add(f, g)?;
    match (f, g, &sum, r) {
        (R::Curves(a), R::Curves(b), R::Curves(ab), 2) => {
            let pts = |c: &CertifiedMulticurve| c.double_points().points;
            let mut right = pts(a);
            right.extend(pts(b));
            right.extend(
                a.crossings_with(b)?
                    .into_iter()
                    .map(|c| SquarePoint::new(c.square, c.point)),
            );
            Ok(report("cartan r=2", pts(ab), right))
        }
        (R::Surfaces(a), R::Surfaces(b), R::Surfaces(ab), 2) => {
            let keys = |s: &CertifiedImmersion3| segment_keys(&s.double_curves().lifted_segments());
            let mut right = keys(a);
            right.extend(keys(b));
            right.extend(segment_keys(&intersection_curves(a, b)?.lifted_segments()));
            Ok(report("cartan r=2", keys(ab), right))
        }
        (R::Surfaces(a), R::Surfaces(b), R::Surfaces(ab), 3) => {
            let triples = |s: &CertifiedImmersion3| -> Vec<Point3> {
                s.triple_points().points.iter().map(|t| t.point.clone()).collect()
            };
            let mut right = triples(a);
            right.extend(triples(b));
            right.extend(
                b.crossing_points(&a.double_curves().lifted_segments())
                    .ok_or_else(|| not_transverse("doubles of f against g"))?,
            );
            right.extend(
                a.crossing_points(&b.double_curves().lifted_segments())
                    .ok_or_else(|| not_transverse("f against doubles of g"))?,
            );
            Ok(report("cartan r=3", triples(ab), right))
        }
        _ => Err(BordismError::Mismatch(f.label(), format!("cartan r={r}"))),
    }
}

/// Double points of the preimage curves against the distinguished points of
/// the triple-point manifold.
pub fn check_mu_tower(f: &CertifiedImmersion3) -> CheckReport {
    let left = f.preimage_double_points();
    let right: Vec<SourcePoint> = f.triple_points().mu3_points.iter().map(|(p, _)| p.clone()).collect();
    report("mu tower r=2", left, right)
}
