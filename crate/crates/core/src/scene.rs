//! Line-oriented scene files.
//!
//! ```text
//! surface T
//! squares 1
//! glue s0.E s0.W same
//! glue s0.N s0.S same
//! curve eight on T
//! pt s0 3/8 3/8
//! pt s0 5/8 5/8
//! pt s0 5/8 3/8
//! pt s0 3/8 5/8
//! verify T
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::curves2d::{CertifiedMulticurve, ClosedPolyline, CurveError, ImmersedMulticurve, SquarePoint};
use crate::exactgeom::{format_scalar, parse_scalar};
use crate::herbert::{verify_curves, verify_surface, HerbertReport};
use crate::surface2d::{validate_complex, EdgeRef, GlueMode, Gluing, Side, SquareComplex};
use crate::surfaces3d::{CertifiedImmersion3, MeshPoint, SourceCycle, TriangulatedImmersion3};
use crate::{Point2, Point3, Rational, Triangle3, Violation, ViolationKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stanza {
    Surface {
        name: String,
        squares: usize,
        gluings: Vec<Gluing>,
    },
    Curve {
        name: String,
        surface: String,
        points: Vec<SquarePoint>,
    },
    Immersion3 {
        name: String,
        triangles: Vec<[Point3; 3]>,
    },
    Cycle {
        name: String,
        immersion: String,
        points: Vec<MeshPoint>,
    },
    Verify {
        subject: String,
        targets: Vec<String>,
    },
}

impl Stanza {
    pub fn name(&self) -> Option<&str> {
        match self {
            Stanza::Surface { name, .. }
            | Stanza::Curve { name, .. }
            | Stanza::Immersion3 { name, .. }
            | Stanza::Cycle { name, .. } => Some(name),
            Stanza::Verify { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scene {
    pub stanzas: Vec<Stanza>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SceneError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("surface {name}: {detail}")]
    Surface { name: String, detail: String },
    #[error("{name}: {violation}")]
    Violation { name: String, violation: Violation },
    #[error("{name}: {error}")]
    Curve { name: String, error: CurveError },
}

impl SceneError {
    /// The violation behind the error, if it is a geometric one.
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            SceneError::Violation { violation, .. } => Some(violation),
            SceneError::Curve {
                error: CurveError::Violation(v),
                ..
            } => Some(v),
            _ => None,
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn rational(line: usize, tok: &str) -> Result<Rational, ParseError> {
    parse_scalar(tok).ok_or_else(|| err(line, format!("invalid rational '{tok}'")))
}

fn index(line: usize, tok: &str, prefix: char) -> Result<usize, ParseError> {
    tok.strip_prefix(prefix)
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| err(line, format!("expected {prefix}<index>, found '{tok}'")))
}

fn edge(line: usize, tok: &str) -> Result<EdgeRef, ParseError> {
    let (sq, side) = tok
        .split_once('.')
        .ok_or_else(|| err(line, format!("expected s<i>.<side>, found '{tok}'")))?;
    let side: Side = side.parse().map_err(|_| err(line, format!("unknown side '{side}'")))?;
    Ok(EdgeRef::new(index(line, sq, 's')?, side))
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<(), ParseError> {
    if toks.len() != n {
        return Err(err(
            line,
            format!("'{}' takes {} arguments, found {}", toks[0], n - 1, toks.len() - 1),
        ));
    }
    Ok(())
}

fn on_clause(line: usize, toks: &[&str]) -> Result<(String, String), ParseError> {
    if toks.len() != 4 || toks[2] != "on" {
        return Err(err(line, format!("expected '{} <name> on <parent>'", toks[0])));
    }
    Ok((toks[1].to_string(), toks[3].to_string()))
}

/// Parse a scene, stopping at the first error.
pub fn parse_scene(text: &str) -> Result<Scene, ParseError> {
    let mut scene = Scene::default();
    let mut kinds: BTreeMap<String, &'static str> = BTreeMap::new();
    let mut sizes: BTreeMap<String, usize> = BTreeMap::new();
    let mut parents: BTreeMap<String, String> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let declare = |kinds: &mut BTreeMap<String, &'static str>, name: &str, kind: &'static str| {
            if kinds.insert(name.to_string(), kind).is_some() {
                return Err(err(line, format!("'{name}' is defined twice")));
            }
            Ok(())
        };
        let current = scene.stanzas.last_mut();
        match toks[0] {
            "surface" => {
                arity(line, &toks, 2)?;
                declare(&mut kinds, toks[1], "surface")?;
                scene.stanzas.push(Stanza::Surface {
                    name: toks[1].to_string(),
                    squares: 0,
                    gluings: Vec::new(),
                });
            }
            "squares" => {
                arity(line, &toks, 2)?;
                let Some(Stanza::Surface { squares, name, .. }) = current else {
                    return Err(err(line, "'squares' outside a surface"));
                };
                *squares = toks[1]
                    .parse()
                    .map_err(|_| err(line, format!("invalid square count '{}'", toks[1])))?;
                sizes.insert(name.clone(), *squares);
            }
            "glue" => {
                arity(line, &toks, 4)?;
                let Some(Stanza::Surface { squares, gluings, .. }) = current else {
                    return Err(err(line, "'glue' outside a surface"));
                };
                let (a, b) = (edge(line, toks[1])?, edge(line, toks[2])?);
                for e in [a, b] {
                    if e.square >= *squares {
                        return Err(err(line, format!("no square {} (surface has {})", e.square, squares)));
                    }
                }
                let mode: GlueMode = toks[3]
                    .parse()
                    .map_err(|_| err(line, format!("unknown gluing mode '{}'", toks[3])))?;
                gluings.push(Gluing { a, b, mode });
            }
            "curve" => {
                let (name, surface) = on_clause(line, &toks)?;
                if kinds.get(&surface) != Some(&"surface") {
                    return Err(err(line, format!("unknown surface '{surface}'")));
                }
                declare(&mut kinds, &name, "curve")?;
                parents.insert(name.clone(), surface.clone());
                scene.stanzas.push(Stanza::Curve {
                    name,
                    surface,
                    points: Vec::new(),
                });
            }
            "pt" => {
                arity(line, &toks, 4)?;
                let Some(Stanza::Curve { points, surface, .. }) = current else {
                    return Err(err(line, "'pt' outside a curve"));
                };
                let sq = index(line, toks[1], 's')?;
                if sq >= sizes.get(surface.as_str()).copied().unwrap_or(0) {
                    return Err(err(line, format!("no square {sq} on surface {surface}")));
                }
                let pos = Point2::new(rational(line, toks[2])?, rational(line, toks[3])?);
                points.push(SquarePoint::new(sq, pos));
            }
            "immersion3" => {
                arity(line, &toks, 2)?;
                declare(&mut kinds, toks[1], "immersion3")?;
                scene.stanzas.push(Stanza::Immersion3 {
                    name: toks[1].to_string(),
                    triangles: Vec::new(),
                });
            }
            "tri" => {
                arity(line, &toks, 10)?;
                let Some(Stanza::Immersion3 { triangles, name }) = current else {
                    return Err(err(line, "'tri' outside an immersion3"));
                };
                let c: Vec<Rational> = toks[1..].iter().map(|t| rational(line, t)).collect::<Result<_, _>>()?;
                let p = |k: usize| Point3::new(c[3 * k].clone(), c[3 * k + 1].clone(), c[3 * k + 2].clone());
                triangles.push([p(0), p(1), p(2)]);
                sizes.insert(name.clone(), triangles.len());
            }
            "cycle" => {
                let (name, immersion) = on_clause(line, &toks)?;
                if kinds.get(&immersion) != Some(&"immersion3") {
                    return Err(err(line, format!("unknown immersion3 '{immersion}'")));
                }
                declare(&mut kinds, &name, "cycle")?;
                parents.insert(name.clone(), immersion.clone());
                scene.stanzas.push(Stanza::Cycle {
                    name,
                    immersion,
                    points: Vec::new(),
                });
            }
            "mpt" => {
                arity(line, &toks, 4)?;
                let Some(Stanza::Cycle { points, immersion, .. }) = current else {
                    return Err(err(line, "'mpt' outside a cycle"));
                };
                let t = index(line, toks[1], 't')?;
                if t >= sizes.get(immersion.as_str()).copied().unwrap_or(0) {
                    return Err(err(line, format!("no triangle {t} in {immersion}")));
                }
                points.push(MeshPoint::new(t, rational(line, toks[2])?, rational(line, toks[3])?));
            }
            "verify" => {
                if toks.len() < 2 {
                    return Err(err(line, "'verify' needs a subject"));
                }
                let subject = toks[1];
                let kind = kinds
                    .get(subject)
                    .ok_or_else(|| err(line, format!("unknown name '{subject}'")))?;
                let wanted = match *kind {
                    "surface" | "curve" => "curve",
                    "immersion3" => "cycle",
                    other => return Err(err(line, format!("cannot verify a {other}"))),
                };
                let owner = if *kind == "curve" { &parents[subject] } else { subject };
                for t in &toks[2..] {
                    if kinds.get(*t) != Some(&wanted) || parents.get(*t).map(String::as_str) != Some(owner) {
                        return Err(err(line, format!("'{t}' is not a {wanted} of {owner}")));
                    }
                }
                scene.stanzas.push(Stanza::Verify {
                    subject: subject.to_string(),
                    targets: toks[2..].iter().map(|s| s.to_string()).collect(),
                });
            }
            other => return Err(err(line, format!("unknown directive '{other}'"))),
        }
    }
    Ok(scene)
}

impl fmt::Display for Scene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.stanzas {
            if !first && !matches!(s, Stanza::Verify { .. }) {
                writeln!(f)?;
            }
            first = false;
            match s {
                Stanza::Surface { name, squares, gluings } => {
                    writeln!(f, "surface {name}")?;
                    writeln!(f, "squares {squares}")?;
                    for g in gluings {
                        writeln!(f, "glue {} {} {}", g.a, g.b, g.mode)?;
                    }
                }
                Stanza::Curve { name, surface, points } => {
                    writeln!(f, "curve {name} on {surface}")?;
                    for p in points {
                        writeln!(
                            f,
                            "pt s{} {} {}",
                            p.square,
                            format_scalar(&p.pos.x),
                            format_scalar(&p.pos.y)
                        )?;
                    }
                }
                Stanza::Immersion3 { name, triangles } => {
                    writeln!(f, "immersion3 {name}")?;
                    for t in triangles {
                        let mut line = String::from("tri");
                        for v in t {
                            for c in [&v.x, &v.y, &v.z] {
                                let _ = write!(line, " {}", format_scalar(c));
                            }
                        }
                        writeln!(f, "{line}")?;
                    }
                }
                Stanza::Cycle {
                    name,
                    immersion,
                    points,
                } => {
                    writeln!(f, "cycle {name} on {immersion}")?;
                    for p in points {
                        writeln!(f, "mpt {p}")?;
                    }
                }
                Stanza::Verify { subject, targets } => {
                    write!(f, "verify {subject}")?;
                    for t in targets {
                        write!(f, " {t}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

/// Certified geometry for every named object of a scene.
#[derive(Clone, Debug, Default)]
pub struct BuiltScene {
    pub surfaces: BTreeMap<String, Arc<SquareComplex>>,
    /// All curves on each surface, as one certified multicurve.
    pub multicurves: BTreeMap<String, CertifiedMulticurve>,
    pub immersions: BTreeMap<String, CertifiedImmersion3>,
    pub cycles: BTreeMap<String, SourceCycle>,
    pub curve_surface: BTreeMap<String, String>,
    pub cycle_owner: BTreeMap<String, String>,
    pub verifies: Vec<(String, Vec<String>)>,
}

impl Scene {
    /// Certify all geometry. The first failure is returned.
    pub fn build(&self) -> Result<BuiltScene, SceneError> {
        let mut out = BuiltScene::default();
        let mut curves: BTreeMap<String, Vec<(String, ClosedPolyline)>> = BTreeMap::new();
        let mut order: Vec<String> = Vec::new();
        for s in &self.stanzas {
            match s {
                Stanza::Surface { name, squares, gluings } => {
                    let c = SquareComplex::new(name.clone(), *squares, gluings.clone());
                    let report = validate_complex(&c);
                    if !report.is_valid() {
                        let detail = report
                            .issues
                            .iter()
                            .map(|i| i.to_string())
                            .collect::<Vec<_>>()
                            .join("; ");
                        return Err(SceneError::Surface {
                            name: name.clone(),
                            detail: if detail.is_empty() {
                                "not a closed connected surface".into()
                            } else {
                                detail
                            },
                        });
                    }
                    out.surfaces.insert(name.clone(), Arc::new(c));
                    curves.insert(name.clone(), Vec::new());
                    order.push(name.clone());
                }
                Stanza::Curve { name, surface, points } => {
                    let poly = ClosedPolyline::resolve(&out.surfaces[surface], points.clone()).map_err(|v| {
                        SceneError::Violation {
                            name: name.clone(),
                            violation: v,
                        }
                    })?;
                    curves.get_mut(surface).expect("parsed").push((name.clone(), poly));
                    out.curve_surface.insert(name.clone(), surface.clone());
                }
                Stanza::Immersion3 { name, triangles } => {
                    let violation = |v: Violation| SceneError::Violation {
                        name: name.clone(),
                        violation: v,
                    };
                    let tris = triangles
                        .iter()
                        .enumerate()
                        .map(|(i, [a, b, c])| {
                            Triangle3::new(a.clone(), b.clone(), c.clone()).map_err(|_| {
                                Violation::new(ViolationKind::DegenerateTriangle, format!("triangle {i} is degenerate"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(violation)?;
                    let f = TriangulatedImmersion3::new(tris).map_err(violation)?;
                    out.immersions.insert(name.clone(), f.certify().map_err(violation)?);
                }
                Stanza::Cycle {
                    name,
                    immersion,
                    points,
                } => {
                    let cycle = SourceCycle {
                        name: name.clone(),
                        points: points.clone(),
                    };
                    out.immersions[immersion]
                        .resolve_cycle(&cycle)
                        .map_err(|v| SceneError::Violation {
                            name: name.clone(),
                            violation: v,
                        })?;
                    out.cycles.insert(name.clone(), cycle);
                    out.cycle_owner.insert(name.clone(), immersion.clone());
                }
                Stanza::Verify { subject, targets } => out.verifies.push((subject.clone(), targets.clone())),
            }
        }
        for name in order {
            let comps = curves.remove(&name).unwrap_or_default();
            let m = ImmersedMulticurve::new(out.surfaces[&name].clone(), comps).map_err(|e| SceneError::Curve {
                name: name.clone(),
                error: e,
            })?;
            let m = m.certify().map_err(|v| SceneError::Violation {
                name: name.clone(),
                violation: v,
            })?;
            out.multicurves.insert(name, m);
        }
        Ok(out)
    }
}

impl BuiltScene {
    /// One report per `verify` directive, labelled `<scene>:<subject>`.
    pub fn verify(&self, scene: &str) -> Vec<HerbertReport> {
        self.verifies
            .iter()
            .map(|(subject, targets)| {
                let id = format!("{scene}:{subject}");
                if let Some(f) = self.immersions.get(subject) {
                    let cycles: Vec<SourceCycle> = if targets.is_empty() {
                        self.cycles
                            .values()
                            .filter(|c| self.cycle_owner[&c.name] == *subject)
                            .cloned()
                            .collect()
                    } else {
                        targets.iter().map(|t| self.cycles[t].clone()).collect()
                    };
                    verify_surface(&id, f, &cycles)
                } else if let Some(surface) = self.curve_surface.get(subject) {
                    verify_curves(&id, &self.multicurves[surface], std::slice::from_ref(subject))
                } else {
                    verify_curves(&id, &self.multicurves[subject], targets)
                }
            })
            .collect()
    }
}

/// Parse, build and verify in one step.
pub fn verify_text(scene: &str, text: &str) -> Result<Vec<HerbertReport>, SceneError> {
    Ok(parse_scene(text)?.build()?.verify(scene))
}

/// Scene stanzas for a certified multicurve on a named surface.
pub fn curve_stanzas(surface_name: &str, f: &ImmersedMulticurve) -> Vec<Stanza> {
    let c = f.ambient();
    let mut out = vec![Stanza::Surface {
        name: surface_name.to_string(),
        squares: c.squares(),
        gluings: c.gluings().to_vec(),
    }];
    for (id, poly) in f.ids().iter().zip(f.components()) {
        out.push(Stanza::Curve {
            name: id.clone(),
            surface: surface_name.to_string(),
            points: poly.vertices().to_vec(),
        });
    }
    out
}

/// Scene stanzas for a triangulated immersion and cycles on it.
pub fn immersion_stanzas(name: &str, f: &TriangulatedImmersion3, cycles: &[SourceCycle]) -> Vec<Stanza> {
    let mut out = vec![Stanza::Immersion3 {
        name: name.to_string(),
        triangles: f.triangles().iter().map(|t| t.vertices().clone()).collect(),
    }];
    for c in cycles {
        out.push(Stanza::Cycle {
            name: c.name.clone(),
            immersion: name.to_string(),
            points: c.points.clone(),
        });
    }
    out
}
