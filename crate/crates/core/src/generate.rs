//! Seeded random scenes for fuzzing.
//!
//! Curve scenes are random closed polylines on a preset square complex.
//! Surface scenes are drawn from the torus catalog with random exact
//! levels, translations and integer shears. Every candidate is built and
//! verified; anything rejected (general position, unresolvable routes,
//! error rows) consumes one unit of the retry budget.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves2d::SquarePoint;
use crate::herbert::Verdict;
use crate::scene::{Scene, Stanza};
use crate::surface2d::{Side, SquareComplex};
use crate::surfaces3d::{TorusSpec, TriangulatedImmersion3};
use crate::{rat, Point2, Point3, Rational};

/// Largest denominator of a random coordinate.
pub const MAX_DENOMINATOR: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    Torus,
    Klein,
    Genus2,
    T3ToriCatalog,
}

impl Preset {
    pub const CURVE_PRESETS: [Preset; 3] = [Preset::Torus, Preset::Klein, Preset::Genus2];

    pub fn universe(self) -> GenUniverse {
        match self {
            Preset::T3ToriCatalog => GenUniverse::Surfaces,
            _ => GenUniverse::Curves,
        }
    }

    fn complex(self) -> Option<SquareComplex> {
        match self {
            Preset::Torus => Some(SquareComplex::torus()),
            Preset::Klein => Some(SquareComplex::klein_bottle()),
            Preset::Genus2 => Some(SquareComplex::genus_two()),
            Preset::T3ToriCatalog => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Torus => "torus",
            Preset::Klein => "klein",
            Preset::Genus2 => "genus2",
            Preset::T3ToriCatalog => "t3-tori-catalog",
        })
    }
}

impl FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "torus" => Ok(Preset::Torus),
            "klein" => Ok(Preset::Klein),
            "genus2" => Ok(Preset::Genus2),
            "t3-tori-catalog" => Ok(Preset::T3ToriCatalog),
            _ => Err(format!("unknown preset '{s}'")),
        }
    }
}

/// The two fuzzable universes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenUniverse {
    Curves,
    Surfaces,
}

impl fmt::Display for GenUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenUniverse::Curves => "curves",
            GenUniverse::Surfaces => "surfaces",
        })
    }
}

impl FromStr for GenUniverse {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "curves" => Ok(GenUniverse::Curves),
            "surfaces" | "t3" => Ok(GenUniverse::Surfaces),
            _ => Err(format!("unknown universe '{s}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub preset: Preset,
    /// Curve components, or tori for the 3D catalog.
    pub components: RangeInclusive<usize>,
    /// Vertices per curve component. Unused by the 3D catalog.
    pub segments: RangeInclusive<usize>,
    pub seed: u64,
    pub budget: usize,
    /// Only accept scenes without double points.
    pub embedded: bool,
}

impl GeneratorConfig {
    pub fn new(preset: Preset, seed: u64) -> Self {
        let (components, segments) = match preset {
            Preset::T3ToriCatalog => (1..=4, 1..=1),
            _ => (1..=2, 2..=6),
        };
        GeneratorConfig {
            preset,
            components,
            segments,
            seed,
            budget: 200,
            embedded: false,
        }
    }

    /// Embedded curves of 2 or 3 vertices, one component.
    pub fn embedded(preset: Preset, seed: u64) -> Self {
        GeneratorConfig {
            components: 1..=1,
            segments: 2..=3,
            embedded: true,
            ..GeneratorConfig::new(preset, seed)
        }
    }

    /// The config used by fuzz campaigns for seed index `i`: curve scenes
    /// cycle through the torus, Klein bottle and genus-2 presets.
    pub fn for_fuzz(universe: GenUniverse, seed: u64) -> Self {
        match universe {
            GenUniverse::Curves => GeneratorConfig::new(Preset::CURVE_PRESETS[(seed % 3) as usize], seed),
            GenUniverse::Surfaces => GeneratorConfig::new(Preset::T3ToriCatalog, seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("retry budget of {budget} exhausted; last rejection: {last}")]
    BudgetExhausted { budget: usize, last: String },
}

/// A uniformly drawn `n/d` strictly between 0 and 1 with `d ≤ 64`.
fn unit_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(2..=MAX_DENOMINATOR);
    rat(rng.gen_range(1..d), d)
}

fn square_point(rng: &mut ChaCha8Rng, square: usize) -> SquarePoint {
    SquarePoint::new(square, Point2::new(unit_rational(rng), unit_rational(rng)))
}

fn reachable(c: &SquareComplex, from: usize) -> Vec<usize> {
    let mut out = vec![from];
    for side in Side::ALL {
        if let Some(t) = c.neighbor(from, side) {
            out.push(t.square);
        }
    }
    out
}

fn random_curve(rng: &mut ChaCha8Rng, c: &SquareComplex, n: usize) -> Option<Vec<SquarePoint>> {
    let first = rng.gen_range(0..c.squares());
    let mut pts = vec![square_point(rng, first)];
    for k in 1..n {
        let prev = pts[k - 1].square;
        let mut options = reachable(c, prev);
        if k + 1 == n {
            let back = reachable(c, first);
            options.retain(|s| back.contains(s));
        }
        let sq = *options.choose(rng)?;
        pts.push(square_point(rng, sq));
    }
    Some(pts)
}

fn curve_candidate(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Scene, String> {
    let complex = cfg.preset.complex().expect("curve preset");
    let name = complex.name().to_string();
    let mut stanzas = vec![Stanza::Surface {
        name: name.clone(),
        squares: complex.squares(),
        gluings: complex.gluings().to_vec(),
    }];
    let count = rng.gen_range(cfg.components.clone());
    for i in 0..count {
        let n = rng.gen_range(cfg.segments.clone());
        let points = random_curve(rng, &complex, n).ok_or("no closing square")?;
        stanzas.push(Stanza::Curve {
            name: format!("c{i}"),
            surface: name.clone(),
            points,
        });
    }
    stanzas.push(Stanza::Verify {
        subject: name,
        targets: Vec::new(),
    });
    Ok(Scene { stanzas })
}

fn random_shear(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    if rng.gen_ratio(1, 3) {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        m[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    m
}

fn torus_candidate(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Scene, String> {
    let count = rng.gen_range(cfg.components.clone());
    let mut specs = Vec::with_capacity(count);
    let mut cycles = Vec::new();
    let mut offset = 0;
    for k in 0..count {
        let grid = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let mut spec = TorusSpec::coordinate(
            rng.gen_range(0..3),
            unit_rational(rng),
            [unit_rational(rng), unit_rational(rng)],
            grid,
        )
        .sheared(random_shear(rng))
        .translated(Point3::new(unit_rational(rng), unit_rational(rng), unit_rational(rng)));
        if rng.gen_bool(0.5) {
            spec = spec.antidiagonal();
        }
        let s = spec
            .s_cycle(&format!("a{k}"), offset, &unit_rational(rng))
            .ok_or("cycle on a grid line")?;
        let t = spec
            .t_cycle(&format!("b{k}"), offset, &unit_rational(rng))
            .ok_or("cycle on a grid line")?;
        cycles.push(s);
        cycles.push(t);
        offset += spec.triangle_count();
        specs.push(spec);
    }
    let f = TriangulatedImmersion3::from_tori(&specs).map_err(|v| v.to_string())?;
    let mut stanzas = crate::scene::immersion_stanzas("T3", &f, &cycles);
    stanzas.push(Stanza::Verify {
        subject: "T3".into(),
        targets: Vec::new(),
    });
    Ok(Scene { stanzas })
}

fn check(scene: &Scene, embedded: bool) -> Result<(), String> {
    let built = scene.build().map_err(|e| e.to_string())?;
    for report in built.verify("candidate") {
        if report.has_errors() {
            let msg = report.rows.iter().find_map(|r| match &r.verdict {
                Verdict::Error(m) => Some(m.clone()),
                _ => None,
            });
            return Err(msg.unwrap_or_default());
        }
        if embedded && report.double_count > 0 {
            return Err("not embedded".into());
        }
    }
    Ok(())
}

/// A certified scene, determined by the config alone.
pub fn generate(cfg: &GeneratorConfig) -> Result<Scene, GenerateError> {
    if cfg.components.is_empty() || cfg.segments.is_empty() {
        return Err(GenerateError::InvalidConfig("empty range".into()));
    }
    if cfg.budget == 0 {
        return Err(GenerateError::InvalidConfig("budget must be at least 1".into()));
    }
    if cfg.embedded && cfg.preset.universe() == GenUniverse::Surfaces {
        return Err(GenerateError::InvalidConfig("embedded mode is for curves".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last = String::new();
    for _ in 0..cfg.budget {
        let candidate = match cfg.preset.universe() {
            GenUniverse::Curves => curve_candidate(&mut rng, cfg),
            GenUniverse::Surfaces => torus_candidate(&mut rng, cfg),
        };
        match candidate.and_then(|s| check(&s, cfg.embedded).map(|_| s)) {
            Ok(scene) => return Ok(scene),
            Err(e) => last = e,
        }
    }
    Err(GenerateError::BudgetExhausted {
        budget: cfg.budget,
        last,
    })
}
