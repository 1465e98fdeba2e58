//! Immersed closed multicurves on square-tiled surfaces.

mod pieces;
mod polyline;
mod pushoff;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::surface2d::{validate_complex, AmbientLoop, LoopStep, SquareComplex};
use crate::{rat, Point2, Rational, Violation, ViolationKind};

pub(crate) use pieces::PieceSet;
pub use polyline::{ClosedPolyline, SquarePoint};
pub use pushoff::{pushoff_polyline, PushSide, Pushoff};

use pieces::{features_by_square, mutual_crossings, self_crossings, separation};
use pushoff::pushoff_anchored;

/// A point on a source circle: segment index and parameter in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcPoint {
    pub component: usize,
    pub segment: usize,
    pub param: Rational,
}

impl fmt::Display for ArcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}:{}@{}", self.component, self.segment, self.param)
    }
}

/// A transverse crossing of two strands inside a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub square: usize,
    pub point: Point2,
    pub first: ArcPoint,
    pub second: ArcPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Violation(#[from] Violation),
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("duplicate component id {0}")]
    DuplicateId(String),
    #[error("curves live on different surfaces")]
    AmbientMismatch,
    #[error("invalid ambient surface: {0}")]
    InvalidAmbient(String),
}

/// Closed polylines on a square complex, one per source circle.
#[derive(Clone, Debug)]
pub struct ImmersedMulticurve {
    ambient: Arc<SquareComplex>,
    components: Vec<ClosedPolyline>,
    ids: Vec<String>,
    transport: Vec<Vec<bool>>,
}

impl PartialEq for ImmersedMulticurve {
    fn eq(&self, other: &Self) -> bool {
        *self.ambient == *other.ambient && self.components == other.components && self.ids == other.ids
    }
}

impl ImmersedMulticurve {
    pub fn new(ambient: Arc<SquareComplex>, components: Vec<(String, ClosedPolyline)>) -> Result<Self, CurveError> {
        let report = validate_complex(&ambient);
        if !report.is_valid() {
            let text: Vec<String> = report.issues.iter().map(|i| i.to_string()).collect();
            return Err(CurveError::InvalidAmbient(text.join("; ")));
        }
        let mut seen = BTreeSet::new();
        for (id, _) in &components {
            if !seen.insert(id.clone()) {
                return Err(CurveError::DuplicateId(id.clone()));
            }
        }
        let (ids, components): (Vec<_>, Vec<_>) = components.into_iter().unzip();
        let transport = components
            .iter()
            .map(|c: &ClosedPolyline| c.crossing_signs(&ambient).iter().map(|s| *s < 0).collect())
            .collect();
        Ok(ImmersedMulticurve {
            ambient,
            components,
            ids,
            transport,
        })
    }

    pub fn empty(ambient: Arc<SquareComplex>) -> Result<Self, CurveError> {
        ImmersedMulticurve::new(ambient, Vec::new())
    }

    pub fn ambient(&self) -> &Arc<SquareComplex> {
        &self.ambient
    }

    pub fn components(&self) -> &[ClosedPolyline] {
        &self.components
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn component_index(&self, id: &str) -> Result<usize, CurveError> {
        self.ids
            .iter()
            .position(|i| i == id)
            .ok_or_else(|| CurveError::UnknownComponent(id.to_string()))
    }

    /// Orientation flips of a normal direction at each side crossing.
    pub fn normal_transport(&self, component: usize) -> &[bool] {
        &self.transport[component]
    }

    /// Disjoint union. Clashing ids from `other` get a `'` suffix.
    pub fn union(&self, other: &ImmersedMulticurve) -> Result<Self, CurveError> {
        if *self.ambient != *other.ambient {
            return Err(CurveError::AmbientMismatch);
        }
        let mut comps: Vec<(String, ClosedPolyline)> =
            self.ids.iter().cloned().zip(self.components.iter().cloned()).collect();
        let mut taken: BTreeSet<String> = self.ids.iter().cloned().collect();
        for (id, c) in other.ids.iter().zip(&other.components) {
            let mut name = id.clone();
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            comps.push((name, c.clone()));
        }
        ImmersedMulticurve::new(self.ambient.clone(), comps)
    }

    /// Sub-multicurve made of the listed components.
    pub fn select(&self, components: &[usize]) -> Result<Self, CurveError> {
        let comps = components
            .iter()
            .map(|&c| (self.ids[c].clone(), self.components[c].clone()))
            .collect();
        ImmersedMulticurve::new(self.ambient.clone(), comps)
    }

    /// The closed path of squares a component runs through.
    pub fn component_loop(&self, component: usize) -> AmbientLoop {
        let poly = &self.components[component];
        let n = poly.len();
        let crossing: Vec<usize> = (0..n).filter(|&k| poly.via()[k].is_some()).collect();
        let m = crossing.len();
        let steps = (0..m)
            .map(|i| {
                let k = crossing[i];
                let prev = crossing[(i + m - 1) % m];
                let pv = &poly.vertices()[prev];
                let entry = self
                    .ambient
                    .neighbor(pv.square, poly.via()[prev].unwrap())
                    .expect("validated")
                    .side;
                LoopStep {
                    square: poly.vertices()[k].square,
                    entry,
                    exit: poly.via()[k].unwrap(),
                }
            })
            .collect();
        AmbientLoop { steps }
    }

    pub fn certify(self) -> Result<CertifiedMulticurve, Violation> {
        let cert = validate_general_position(&self)?;
        Ok(CertifiedMulticurve { curve: self, cert })
    }

    pub(crate) fn pieces(&self) -> PieceSet {
        PieceSet::build(&self.ambient, self.components.iter().enumerate())
    }
}

/// Evidence that a multicurve is in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPositionCert2 {
    pub vertices_off_edges: bool,
    pub vertices_off_crossings: bool,
    pub transverse: bool,
    pub no_triple_points: bool,
    pub min_separation: Rational,
    crossings: Vec<Crossing>,
}

impl GeneralPositionCert2 {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
}

pub fn validate_general_position(f: &ImmersedMulticurve) -> Result<GeneralPositionCert2, Violation> {
    let set = f.pieces();
    let mut crossings = self_crossings(&set)?;
    crossings.sort_by(|a, b| (a.square, &a.point).cmp(&(b.square, &b.point)));
    let extra: Vec<_> = crossings.iter().map(|c| (c.square, c.point.clone())).collect();
    let min_separation = separation(&features_by_square(&set, &extra)).unwrap_or_else(|| rat(1, 4));
    if min_separation <= rat(0, 1) {
        return Err(Violation::new(
            ViolationKind::CoincidentVertices,
            "two features coincide",
        ));
    }
    Ok(GeneralPositionCert2 {
        vertices_off_edges: true,
        vertices_off_crossings: true,
        transverse: true,
        no_triple_points: true,
        min_separation,
        crossings,
    })
}

/// A multicurve with its general-position certificate.
#[derive(Clone, Debug)]
pub struct CertifiedMulticurve {
    curve: ImmersedMulticurve,
    cert: GeneralPositionCert2,
}

impl std::ops::Deref for CertifiedMulticurve {
    type Target = ImmersedMulticurve;
    fn deref(&self) -> &ImmersedMulticurve {
        &self.curve
    }
}

impl PartialEq for CertifiedMulticurve {
    fn eq(&self, other: &Self) -> bool {
        self.curve == other.curve
    }
}

/// Double points with their ordered preimage pairs. Entry `2k` and `2k + 1`
/// of `ordered_preimages` are the two orderings over `points[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePointData {
    pub points: Vec<SquarePoint>,
    pub ordered_preimages: Vec<(ArcPoint, ArcPoint)>,
}

/// Evidence behind one pairing evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingWitness {
    pub crossings: usize,
    pub epsilon: Rational,
    pub reconnected: Vec<bool>,
}

impl PairingWitness {
    pub fn bit(&self) -> bool {
        self.crossings % 2 == 1
    }
}

const RETRY_BUDGET: usize = 16;

impl CertifiedMulticurve {
    pub fn curve(&self) -> &ImmersedMulticurve {
        &self.curve
    }

    pub fn into_curve(self) -> ImmersedMulticurve {
        self.curve
    }

    pub fn cert(&self) -> &GeneralPositionCert2 {
        &self.cert
    }

    pub fn double_points(&self) -> DoublePointData {
        let mut points = Vec::new();
        let mut ordered = Vec::new();
        for c in &self.cert.crossings {
            points.push(SquarePoint::new(c.square, c.point.clone()));
            let (a, b) = if c.first <= c.second {
                (c.first.clone(), c.second.clone())
            } else {
                (c.second.clone(), c.first.clone())
            };
            ordered.push((a.clone(), b.clone()));
            ordered.push((b, a));
        }
        DoublePointData {
            points,
            ordered_preimages: ordered,
        }
    }

    pub fn two_sidedness(&self, component: usize) -> bool {
        self.transport[component].iter().filter(|b| **b).count() % 2 == 1
    }

    pub fn two_sidedness_of(&self, id: &str) -> Result<bool, CurveError> {
        Ok(self.two_sidedness(self.component_index(id)?))
    }

    /// Mod-2 crossing count of component `component` with a pushoff of all
    /// of `g`.
    pub fn pairing_mod2(&self, component: usize, g: &CertifiedMulticurve) -> Result<bool, CurveError> {
        Ok(self.pairing_witness(component, g)?.bit())
    }

    pub fn pairing_witness(&self, component: usize, g: &CertifiedMulticurve) -> Result<PairingWitness, CurveError> {
        if *self.ambient != *g.ambient {
            return Err(CurveError::AmbientMismatch);
        }
        let c_poly = &self.components[component];
        let gset = g.pieces();
        let mut extra: Vec<(usize, Point2)> = g.cert.crossings.iter().map(|c| (c.square, c.point.clone())).collect();
        extra.extend(c_poly.vertices().iter().map(|v| (v.square, v.pos.clone())));
        let sep = separation(&features_by_square(&gset, &extra)).unwrap_or_else(|| rat(1, 4));
        if sep <= rat(0, 1) {
            return Err(Violation::new(
                ViolationKind::Tangency,
                format!("component {} touches a vertex of the other curve", self.ids[component]),
            )
            .into());
        }
        let mut eps = sep / rat(4, 1);
        let cset = PieceSet::build(&self.ambient, [(0, c_poly)]);
        let mut last = None;
        for attempt in 0..RETRY_BUDGET {
            match self.try_pairing(&cset, g, PushSide::Left, &eps, attempt) {
                Ok(w) => return Ok(w),
                Err(v) => last = Some(v),
            }
            eps /= rat(2, 1);
        }
        Err(last
            .map(|v| Violation::new(ViolationKind::PushoffCollision, v.detail))
            .unwrap_or_else(|| Violation::new(ViolationKind::PushoffCollision, "retry budget exhausted"))
            .into())
    }

    /// One pairing attempt with explicit pushoff parameters and no retry.
    pub fn pairing_with(
        &self,
        component: usize,
        g: &CertifiedMulticurve,
        side: PushSide,
        epsilon: &Rational,
        anchor: usize,
    ) -> Result<PairingWitness, CurveError> {
        if *self.ambient != *g.ambient {
            return Err(CurveError::AmbientMismatch);
        }
        let cset = PieceSet::build(&self.ambient, [(0, &self.components[component])]);
        Ok(self.try_pairing(&cset, g, side, epsilon, anchor)?)
    }

    fn try_pairing(
        &self,
        cset: &PieceSet,
        g: &CertifiedMulticurve,
        side: PushSide,
        eps: &Rational,
        anchor: usize,
    ) -> Result<PairingWitness, Violation> {
        let mut pushed = Vec::new();
        let mut reconnected = Vec::new();
        for poly in &g.components {
            let p = pushoff_anchored(&self.ambient, poly, side, eps, anchor)?;
            reconnected.push(p.reconnected);
            pushed.push(p.polyline);
        }
        let pset = PieceSet::build(&self.ambient, pushed.iter().enumerate());
        let hits = mutual_crossings(cset, &pset)?;
        Ok(PairingWitness {
            crossings: hits.len(),
            epsilon: eps.clone(),
            reconnected,
        })
    }

    /// Left side of Herbert's identity at r = 1 on a component: `f*[f]`
    /// evaluated on it.
    pub fn herbert_lhs_r1(&self, component: usize) -> Result<bool, CurveError> {
        self.pairing_mod2(component, self)
    }

    /// Right side as (double-point term, Euler term).
    pub fn herbert_rhs_r1(&self, component: usize) -> (bool, bool) {
        (self.mu_term(component), self.two_sidedness(component))
    }

    /// Parity of ordered preimage pairs whose first point lies on the
    /// component.
    pub fn mu_term(&self, component: usize) -> bool {
        self.preimages_on(component) % 2 == 1
    }

    pub fn preimages_on(&self, component: usize) -> usize {
        self.cert
            .crossings
            .iter()
            .map(|c| usize::from(c.first.component == component) + usize::from(c.second.component == component))
            .sum()
    }

    /// Transverse crossings between this multicurve and `g`.
    pub fn crossings_with(&self, g: &CertifiedMulticurve) -> Result<Vec<Crossing>, CurveError> {
        if *self.ambient != *g.ambient {
            return Err(CurveError::AmbientMismatch);
        }
        let mut out = mutual_crossings(&self.pieces(), &g.pieces())?;
        out.sort_by(|a, b| (a.square, &a.point).cmp(&(b.square, &b.point)));
        Ok(out)
    }
}
