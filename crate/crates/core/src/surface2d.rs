//! Closed surfaces tiled by unit squares with dihedral edge identifications.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::{Point2, Rational};

/// A side of the unit square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    E,
    W,
    N,
    S,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::E, Side::W, Side::N, Side::S];

    pub fn index(self) -> usize {
        match self {
            Side::E => 0,
            Side::W => 1,
            Side::N => 2,
            Side::S => 3,
        }
    }

    /// The point at side parameter 0 (sides are parametrized by `y` for E/W
    /// and by `x` for N/S).
    fn start(self) -> [i8; 2] {
        match self {
            Side::E => [1, 0],
            Side::W | Side::S => [0, 0],
            Side::N => [0, 1],
        }
    }

    fn dir(self) -> [i8; 2] {
        match self {
            Side::E | Side::W => [0, 1],
            Side::N | Side::S => [1, 0],
        }
    }

    fn outward(self) -> [i8; 2] {
        match self {
            Side::E => [1, 0],
            Side::W => [-1, 0],
            Side::N => [0, 1],
            Side::S => [0, -1],
        }
    }

    /// Corner indices at side parameter 0 and 1. Corners are numbered
    /// (0,0)=0, (1,0)=1, (1,1)=2, (0,1)=3.
    fn corners(self) -> [usize; 2] {
        match self {
            Side::E => [1, 2],
            Side::W => [0, 3],
            Side::N => [3, 2],
            Side::S => [0, 1],
        }
    }

    /// Signed distance past this side: positive outside the square.
    pub fn excess(self, p: &Point2) -> Rational {
        match self {
            Side::E => p.x.clone() - Rational::one(),
            Side::W => -p.x.clone(),
            Side::N => p.y.clone() - Rational::one(),
            Side::S => -p.y.clone(),
        }
    }

    /// Whether `p` lies on the closed side.
    pub fn contains(self, p: &Point2) -> bool {
        let u = match self {
            Side::E | Side::W => &p.y,
            Side::N | Side::S => &p.x,
        };
        self.excess(p).is_zero() && *u >= Rational::zero() && *u <= Rational::one()
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Side::E => "E",
            Side::W => "W",
            Side::N => "N",
            Side::S => "S",
        };
        f.write_str(s)
    }
}

impl FromStr for Side {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "E" => Ok(Side::E),
            "W" => Ok(Side::W),
            "N" => Ok(Side::N),
            "S" => Ok(Side::S),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GlueMode {
    /// `u -> u`
    Same,
    /// `u -> 1 - u`
    Flip,
}

impl fmt::Display for GlueMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GlueMode::Same => "same",
            GlueMode::Flip => "flip",
        })
    }
}

impl FromStr for GlueMode {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "same" => Ok(GlueMode::Same),
            "flip" => Ok(GlueMode::Flip),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub square: usize,
    pub side: Side,
}

impl EdgeRef {
    pub fn new(square: usize, side: Side) -> Self {
        EdgeRef { square, side }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}.{}", self.square, self.side)
    }
}

/// Identification of side `b` with side `a`: the point at parameter `u` on
/// `b` is glued to the point at parameter `u` (same) or `1 - u` (flip) on `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub a: EdgeRef,
    pub b: EdgeRef,
    pub mode: GlueMode,
}

/// An affine map of the plane with a signed permutation matrix and integer
/// translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralMap {
    m: [[i8; 2]; 2],
    t: [i8; 2],
}

impl DihedralMap {
    pub fn identity() -> Self {
        DihedralMap {
            m: [[1, 0], [0, 1]],
            t: [0, 0],
        }
    }

    /// The map carrying the frame of the square behind `b` into the frame of
    /// the square behind `a`, for the gluing `a ~ b`.
    fn for_gluing(a: Side, b: Side, mode: GlueMode) -> Self {
        let sigma: i8 = match mode {
            GlueMode::Same => 1,
            GlueMode::Flip => -1,
        };
        let (da, db) = (a.dir(), b.dir());
        let (oa, ob) = (a.outward(), b.outward());
        // L = sigma * da * db^T + oa * (-ob)^T
        let mut m = [[0i8; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = sigma * da[r] * db[c] - oa[r] * ob[c];
            }
        }
        let sa = a.start();
        let target = match mode {
            GlueMode::Same => sa,
            GlueMode::Flip => [sa[0] + da[0], sa[1] + da[1]],
        };
        let sb = b.start();
        let t = [
            target[0] - (m[0][0] * sb[0] + m[0][1] * sb[1]),
            target[1] - (m[1][0] * sb[0] + m[1][1] * sb[1]),
        ];
        DihedralMap { m, t }
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let c = |k: i8| Rational::from_integer(k.into());
        Point2::new(
            c(self.m[0][0]) * p.x.clone() + c(self.m[0][1]) * p.y.clone() + c(self.t[0]),
            c(self.m[1][0]) * p.x.clone() + c(self.m[1][1]) * p.y.clone() + c(self.t[1]),
        )
    }

    /// Apply only the linear part (for directions).
    pub fn apply_linear(&self, v: &Point2) -> Point2 {
        let c = |k: i8| Rational::from_integer(k.into());
        Point2::new(
            c(self.m[0][0]) * v.x.clone() + c(self.m[0][1]) * v.y.clone(),
            c(self.m[1][0]) * v.x.clone() + c(self.m[1][1]) * v.y.clone(),
        )
    }

    pub fn det(&self) -> i8 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Self {
        // Signed permutation matrices are orthogonal.
        let mt = [[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]];
        let t = [
            -(mt[0][0] * self.t[0] + mt[0][1] * self.t[1]),
            -(mt[1][0] * self.t[0] + mt[1][1] * self.t[1]),
        ];
        DihedralMap { m: mt, t }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let mut m = [[0i8; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.m[r][0] * other.m[0][c] + self.m[r][1] * other.m[1][c];
            }
        }
        let t = [
            self.m[0][0] * other.t[0] + self.m[0][1] * other.t[1] + self.t[0],
            self.m[1][0] * other.t[0] + self.m[1][1] * other.t[1] + self.t[1],
        ];
        DihedralMap { m, t }
    }
}

/// What lies across one side of a square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub square: usize,
    pub side: Side,
    /// Carries the neighbour's frame into this square's frame.
    pub to_here: DihedralMap,
    /// `+1` when the gluing preserves the local orientations, else `-1`.
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexIssue {
    SquareOutOfRange(EdgeRef),
    SelfGlued(EdgeRef),
    MultiplyGlued(EdgeRef),
    Boundary(EdgeRef),
    Disconnected { components: usize },
    BadLink { square: usize, corner: usize },
    ChiMismatch { chi: i64, orientable: bool },
    Empty,
}

impl fmt::Display for ComplexIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexIssue::SquareOutOfRange(e) => write!(f, "edge {e} names a missing square"),
            ComplexIssue::SelfGlued(e) => write!(f, "edge {e} is glued to itself"),
            ComplexIssue::MultiplyGlued(e) => write!(f, "edge {e} is glued more than once"),
            ComplexIssue::Boundary(e) => write!(f, "boundary edge {e}"),
            ComplexIssue::Disconnected { components } => {
                write!(f, "complex has {components} components")
            }
            ComplexIssue::BadLink { square, corner } => {
                write!(f, "link of corner {corner} of s{square} is not a cycle")
            }
            ComplexIssue::ChiMismatch { chi, orientable } => write!(
                f,
                "euler characteristic {chi} impossible for {} surface",
                if *orientable {
                    "an orientable"
                } else {
                    "a non-orientable"
                }
            ),
            ComplexIssue::Empty => write!(f, "no squares"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub closed: bool,
    pub connected: bool,
    pub surface_condition: bool,
    pub vertices: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub issues: Vec<ComplexIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub orientable: bool,
    /// Genus when orientable, number of crosscaps otherwise.
    pub genus_or_crosscaps: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid square complex: {0}")]
    Invalid(String),
    #[error("loop is not closed at step {0}")]
    LoopNotClosed(usize),
    #[error("loop step {0} references a missing square")]
    LoopOutOfRange(usize),
}

/// A closed surface built from unit squares.
#[derive(Clone, Debug)]
pub struct SquareComplex {
    name: String,
    squares: usize,
    gluings: Vec<Gluing>,
    neighbors: Vec<[Option<Transition>; 4]>,
    issues: Vec<ComplexIssue>,
}

impl PartialEq for SquareComplex {
    fn eq(&self, other: &Self) -> bool {
        self.squares == other.squares && self.neighbors == other.neighbors
    }
}

impl Eq for SquareComplex {}

impl SquareComplex {
    /// Record the gluings. Structural problems are collected and reported by
    /// [`validate_complex`] rather than raised here.
    pub fn new(name: impl Into<String>, squares: usize, gluings: Vec<Gluing>) -> Self {
        let mut neighbors = vec![[None; 4]; squares];
        let mut issues = Vec::new();
        if squares == 0 {
            issues.push(ComplexIssue::Empty);
        }
        for g in &gluings {
            if g.a.square >= squares || g.b.square >= squares {
                let bad = if g.a.square >= squares { g.a } else { g.b };
                issues.push(ComplexIssue::SquareOutOfRange(bad));
                continue;
            }
            if g.a == g.b {
                issues.push(ComplexIssue::SelfGlued(g.a));
                continue;
            }
            let to_a = DihedralMap::for_gluing(g.a.side, g.b.side, g.mode);
            let sign = to_a.det();
            for (here, there, map) in [(g.a, g.b, to_a), (g.b, g.a, to_a.inverse())] {
                let slot = &mut neighbors[here.square][here.side.index()];
                if slot.is_some() {
                    issues.push(ComplexIssue::MultiplyGlued(here));
                } else {
                    *slot = Some(Transition {
                        square: there.square,
                        side: there.side,
                        to_here: map,
                        sign,
                    });
                }
            }
        }
        for (s, row) in neighbors.iter().enumerate() {
            for side in Side::ALL {
                if row[side.index()].is_none() {
                    issues.push(ComplexIssue::Boundary(EdgeRef::new(s, side)));
                }
            }
        }
        SquareComplex {
            name: name.into(),
            squares,
            gluings,
            neighbors,
            issues,
        }
    }

    pub fn torus() -> Self {
        SquareComplex::new(
            "torus",
            1,
            vec![
                glue(0, Side::E, 0, Side::W, GlueMode::Same),
                glue(0, Side::N, 0, Side::S, GlueMode::Same),
            ],
        )
    }

    pub fn klein_bottle() -> Self {
        SquareComplex::new(
            "klein",
            1,
            vec![
                glue(0, Side::E, 0, Side::W, GlueMode::Flip),
                glue(0, Side::N, 0, Side::S, GlueMode::Same),
            ],
        )
    }

    /// A four-square origami of genus 2: horizontal cycle (0 1 2 3),
    /// vertical permutation (2 3).
    pub fn genus_two() -> Self {
        let mut g = Vec::new();
        for i in 0..4 {
            g.push(glue(i, Side::E, (i + 1) % 4, Side::W, GlueMode::Same));
        }
        for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            g.push(glue(i, Side::N, j, Side::S, GlueMode::Same));
        }
        SquareComplex::new("genus2", 4, g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn squares(&self) -> usize {
        self.squares
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn neighbor(&self, square: usize, side: Side) -> Option<&Transition> {
        self.neighbors.get(square)?[side.index()].as_ref()
    }

    pub fn is_valid(&self) -> bool {
        validate_complex(self).is_valid()
    }
}

pub fn glue(i: usize, a: Side, j: usize, b: Side, mode: GlueMode) -> Gluing {
    Gluing {
        a: EdgeRef::new(i, a),
        b: EdgeRef::new(j, b),
        mode,
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

pub fn validate_complex(c: &SquareComplex) -> ValidationReport {
    let mut issues = c.issues.clone();
    let closed = !issues.iter().any(|i| {
        matches!(
            i,
            ComplexIssue::Boundary(_)
                | ComplexIssue::MultiplyGlued(_)
                | ComplexIssue::SelfGlued(_)
                | ComplexIssue::SquareOutOfRange(_)
        )
    }) && c.squares > 0;

    let mut faces = UnionFind::new(c.squares);
    for (s, row) in c.neighbors.iter().enumerate() {
        for t in row.iter().flatten() {
            faces.union(s, t.square);
        }
    }
    let components = faces.classes();
    let connected = components == 1;
    if !connected && c.squares > 0 {
        issues.push(ComplexIssue::Disconnected { components });
    }

    // Corner graph: each glued side identifies its two end corners with the
    // partner's. Vertices are its components; the link of a vertex is the
    // cycle of corners around it, so every corner needs degree two.
    let mut corners = UnionFind::new(4 * c.squares);
    let mut degree = vec![0usize; 4 * c.squares];
    for (s, row) in c.neighbors.iter().enumerate() {
        for side in Side::ALL {
            let Some(t) = row[side.index()] else { continue };
            let here = side.corners();
            let there = t.side.corners();
            // The map carries the neighbour's side onto ours; recover the
            // correspondence of endpoints from it.
            let image0 = t.to_here.apply(&corner_point(there[0]));
            for &hc in &here {
                degree[4 * s + hc] += 1;
            }
            let matches_first = image0 == corner_point(here[0]);
            let (c0, c1) = if matches_first {
                (there[0], there[1])
            } else {
                (there[1], there[0])
            };
            corners.union(4 * s + here[0], 4 * t.square + c0);
            corners.union(4 * s + here[1], 4 * t.square + c1);
        }
    }
    let mut surface_condition = closed;
    for (idx, &d) in degree.iter().enumerate() {
        if d != 2 {
            surface_condition = false;
            if closed {
                issues.push(ComplexIssue::BadLink {
                    square: idx / 4,
                    corner: idx % 4,
                });
            }
        }
    }
    let vertices = corners.classes();
    let k = c.squares as i64;
    let euler_characteristic = vertices as i64 - 2 * k + k;
    let orientable = orientability(c);
    if closed && connected {
        let ok = if orientable {
            euler_characteristic <= 2 && euler_characteristic % 2 == 0
        } else {
            euler_characteristic <= 1
        };
        if !ok {
            issues.push(ComplexIssue::ChiMismatch {
                chi: euler_characteristic,
                orientable,
            });
        }
    }
    ValidationReport {
        closed,
        connected,
        surface_condition,
        vertices,
        euler_characteristic,
        orientable,
        issues,
    }
}

fn corner_point(c: usize) -> Point2 {
    let (x, y) = match c {
        0 => (0, 0),
        1 => (1, 0),
        2 => (1, 1),
        _ => (0, 1),
    };
    Point2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
}

/// Spanning-tree orientation propagation over face adjacency; every non-tree
/// gluing closes a face-dual loop whose sign product must be +1.
fn orientability(c: &SquareComplex) -> bool {
    let mut eps: Vec<Option<i8>> = vec![None; c.squares];
    for root in 0..c.squares {
        if eps[root].is_some() {
            continue;
        }
        eps[root] = Some(1);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            for t in c.neighbors[s].iter().flatten() {
                // Frame of t.square pushed into s has orientation sign t.sign.
                let want = eps[s].unwrap() * t.sign;
                match eps[t.square] {
                    None => {
                        eps[t.square] = Some(want);
                        queue.push_back(t.square);
                    }
                    Some(e) if e != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn classify_surface(c: &SquareComplex) -> Result<Classification, SurfaceError> {
    let report = validate_complex(c);
    if !report.is_valid() {
        let text: Vec<String> = report.issues.iter().map(|i| i.to_string()).collect();
        return Err(SurfaceError::Invalid(text.join("; ")));
    }
    let chi = report.euler_characteristic;
    Ok(if report.orientable {
        Classification {
            orientable: true,
            genus_or_crosscaps: (2 - chi) / 2,
        }
    } else {
        Classification {
            orientable: false,
            genus_or_crosscaps: 2 - chi,
        }
    })
}

/// One square visited by a closed path: it enters through `entry` and leaves
/// through `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopStep {
    pub square: usize,
    pub entry: Side,
    pub exit: Side,
}

/// A closed path on the complex, recorded by the squares it passes through.
/// An empty step list is a loop inside a single square.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AmbientLoop {
    pub steps: Vec<LoopStep>,
}

impl AmbientLoop {
    /// The loop that follows the given exits starting in `square`. Entries
    /// are filled in from the gluings.
    pub fn from_exits(c: &SquareComplex, square: usize, exits: &[Side]) -> Result<Self, SurfaceError> {
        if exits.is_empty() {
            return Ok(AmbientLoop::default());
        }
        let mut squares = vec![square];
        let mut entries = Vec::new();
        for (k, side) in exits.iter().enumerate() {
            let t = c
                .neighbor(*squares.last().unwrap(), *side)
                .ok_or(SurfaceError::LoopOutOfRange(k))?;
            squares.push(t.square);
            entries.push(t.side);
        }
        let n = exits.len();
        let steps = (0..n)
            .map(|k| LoopStep {
                square: squares[k],
                entry: entries[(k + n - 1) % n],
                exit: exits[k],
            })
            .collect();
        let lp = AmbientLoop { steps };
        lp.check(c)?;
        Ok(lp)
    }

    fn check(&self, c: &SquareComplex) -> Result<(), SurfaceError> {
        let n = self.steps.len();
        for (k, st) in self.steps.iter().enumerate() {
            let t = c.neighbor(st.square, st.exit).ok_or(SurfaceError::LoopOutOfRange(k))?;
            let next = &self.steps[(k + 1) % n];
            if t.square != next.square || t.side != next.entry {
                return Err(SurfaceError::LoopNotClosed(k));
            }
        }
        Ok(())
    }
}

/// Product of gluing signs along the loop, as a bit (true = orientation
/// reversing).
pub fn orientation_character(c: &SquareComplex, lp: &AmbientLoop) -> Result<bool, SurfaceError> {
    lp.check(c)?;
    let mut bit = false;
    for st in &lp.steps {
        let t = c.neighbor(st.square, st.exit).expect("checked");
        bit ^= t.sign < 0;
    }
    Ok(bit)
}
