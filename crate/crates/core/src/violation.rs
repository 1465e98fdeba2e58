use std::fmt;

/// The kinds of general-position failure the validators report. Each has a
/// stable kebab-case name used in reports and by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    DegenerateOverlap,
    Tangency,
    TriplePoint,
    VertexOnEdge,
    VertexOutsideSquare,
    CoincidentVertices,
    CrossingOnEdge,
    ZeroLength,
    TooFewVertices,
    AmbiguousWrap,
    NotAdjacent,
    PushoffCollision,
    CoplanarOverlap,
    VertexContact,
    EdgeEdgeContact,
    TriplePointOnEdge,
    NonTransverseTriple,
    QuadruplePoint,
    Fold,
    NonImmersion,
    OpenMesh,
    NonManifold,
    DegenerateTriangle,
    CycleNotTransverse,
    InvalidCycle,
    TranslateCollision,
    NonTransversePair,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        use ViolationKind::*;
        match self {
            DegenerateOverlap => "degenerate-overlap",
            Tangency => "tangency",
            TriplePoint => "triple-point",
            VertexOnEdge => "vertex-on-edge",
            VertexOutsideSquare => "vertex-outside-square",
            CoincidentVertices => "coincident-vertices",
            CrossingOnEdge => "crossing-on-edge",
            ZeroLength => "zero-length",
            TooFewVertices => "too-few-vertices",
            AmbiguousWrap => "ambiguous-wrap",
            NotAdjacent => "not-adjacent",
            PushoffCollision => "pushoff-collision",
            CoplanarOverlap => "coplanar-overlap",
            VertexContact => "vertex-contact",
            EdgeEdgeContact => "edge-edge-contact",
            TriplePointOnEdge => "triple-point-on-edge",
            NonTransverseTriple => "non-transverse-triple",
            QuadruplePoint => "quadruple-point",
            Fold => "fold",
            NonImmersion => "non-immersion",
            OpenMesh => "open-mesh",
            NonManifold => "non-manifold",
            DegenerateTriangle => "degenerate-triangle",
            CycleNotTransverse => "cycle-not-transverse",
            InvalidCycle => "invalid-cycle",
            TranslateCollision => "translate-collision",
            NonTransversePair => "non-transverse-pair",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A general-position violation with a description of the offending
/// features.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind}: {detail}")]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            detail: detail.into(),
        }
    }
}
