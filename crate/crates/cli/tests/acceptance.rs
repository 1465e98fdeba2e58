//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines always print; exits non-zero if any criterion fails.

mod support {
    pub mod square_oracle;
}

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use multipoint::bordism::{check_cartan, check_mu_tower, check_naturality, psi_r, RepresentedClass};
use multipoint::curves2d::{CertifiedMulticurve, ClosedPolyline, ImmersedMulticurve, SquarePoint};
use multipoint::generate::{generate, GenUniverse, GeneratorConfig, Preset};
use multipoint::herbert::{verify_curves, verify_surface, HerbertReport};
use multipoint::scene::{parse_scene, verify_text, Scene, Stanza};
use multipoint::surface2d::SquareComplex;
use multipoint::surfaces3d::{three_coordinate_tori, CertifiedImmersion3, TriangulatedImmersion3};
use multipoint::{p2, ViolationKind};
use multipoint_cli::{fuzz_one, run_with};
use support::square_oracle::{self as oracle, Square, P};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn docs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

/// A rational as (numerator, denominator).
type Frac = (i64, i64);

fn poly(c: &SquareComplex, pts: &[(Frac, Frac)]) -> ClosedPolyline {
    let v = pts.iter().map(|(x, y)| SquarePoint::new(0, p2(*x, *y))).collect();
    ClosedPolyline::resolve(c, v).unwrap()
}

fn certify(c: &Arc<SquareComplex>, comps: Vec<(&str, ClosedPolyline)>) -> CertifiedMulticurve {
    ImmersedMulticurve::new(c.clone(), comps.into_iter().map(|(n, p)| (n.to_string(), p)).collect())
        .unwrap()
        .certify()
        .unwrap()
}

fn oracle_pieces(sq: Square, pts: &[(Frac, Frac)]) -> Vec<(P, P)> {
    let pts: Vec<P> = pts
        .iter()
        .map(|(x, y)| (multipoint::rat(x.0, x.1), multipoint::rat(y.0, y.1)))
        .collect();
    oracle::pieces(sq, &pts)
}

fn row_bits(r: &HerbertReport, target: &str) -> Option<(bool, bool, bool)> {
    r.rows
        .iter()
        .find(|x| x.target == target)
        .map(|x| (x.lhs, x.mu, x.euler))
}

fn timed<T>(budget: Duration, name: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let t = start.elapsed();
    ensure(t < budget, || format!("{name} took {t:?}"))?;
    Ok(out)
}

fn anchors() -> Outcome {
    let sec = Duration::from_secs(1);
    let t = Arc::new(SquareComplex::torus());
    let eight = [((3, 8), (3, 8)), ((5, 8), (5, 8)), ((5, 8), (3, 8)), ((3, 8), (5, 8))];
    let r = timed(sec, "figure-eight", || {
        let f = certify(&t, vec![("eight", poly(&t, &eight))]);
        (verify_curves("eight", &f, &[]), f.double_points())
    })?;
    ensure(row_bits(&r.0, "eight") == Some((false, false, false)), || {
        "figure-eight row".into()
    })?;
    ensure(r.1.points.len() == 1 && r.1.ordered_preimages.len() == 2, || {
        "figure-eight double points".into()
    })?;
    let brute = oracle::double_points(&[oracle_pieces(Square::Torus, &eight)]);
    ensure(brute == 1, || format!("figure-eight enumeration found {brute}"))?;

    let h = [((1, 6), (1, 2)), ((5, 12), (1, 2)), ((5, 6), (1, 2))];
    let v = [((1, 2), (1, 6)), ((1, 2), (5, 12)), ((1, 2), (5, 6))];
    let r = timed(sec, "meridian and longitude", || {
        verify_curves("hv", &certify(&t, vec![("h", poly(&t, &h)), ("v", poly(&t, &v))]), &[])
    })?;
    for c in ["h", "v"] {
        ensure(row_bits(&r, c) == Some((true, true, false)), || {
            format!("(1,0) + (0,1) row {c}")
        })?;
    }

    let k = Arc::new(SquareComplex::klein_bottle());
    let r = timed(sec, "Klein core", || {
        verify_curves("core", &certify(&k, vec![("core", poly(&k, &h))]), &[])
    })?;
    ensure(row_bits(&r, "core") == Some((true, false, true)), || {
        "Klein core row".into()
    })?;

    let (r, f) = timed(sec, "three tori", || {
        let f = TriangulatedImmersion3::from_tori(&three_coordinate_tori())
            .unwrap()
            .certify()
            .unwrap();
        (verify_surface("tori", &f, &[]), f)
    })?;
    let tp = f.triple_points();
    ensure(row_bits(&r, "[M]") == Some((true, true, false)), || {
        "three tori row".into()
    })?;
    ensure(tp.points.len() == 1, || "triple points".into())?;
    ensure(f.double_curves().circles.len() == 3, || "double circles".into())?;
    ensure(tp.ordered_triples.len() == 6 && tp.mu3_points.len() == 3, || {
        "triple bookkeeping".into()
    })?;
    Ok("figure-eight 0=0+0, (1,0)+(0,1) 1=1+0 twice, Klein core 1=0+1, three tori 1=1+0 with 1/3/6/3".into())
}

fn oracle_square(preset: Preset) -> Option<Square> {
    match preset {
        Preset::Torus => Some(Square::Torus),
        Preset::Klein => Some(Square::Klein),
        _ => None,
    }
}

fn curve_points(scene: &Scene) -> Vec<Vec<P>> {
    scene
        .stanzas
        .iter()
        .filter_map(|s| match s {
            Stanza::Curve { points, .. } => Some(points.iter().map(|p| (p.pos.x.clone(), p.pos.y.clone())).collect()),
            _ => None,
        })
        .collect()
}

fn fuzz_campaign() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    let mut checked = 0;
    for seed in 0..500 {
        let (scene, reports) = fuzz_one(GenUniverse::Curves, seed)?;
        for r in &reports {
            ensure(r.passed(), || format!("curves seed {seed}: {}", r.tsv_rows()))?;
            rows += r.rows.len();
        }
        let preset = GeneratorConfig::for_fuzz(GenUniverse::Curves, seed).preset;
        if let Some(sq) = oracle_square(preset) {
            let comps: Vec<_> = curve_points(&scene).iter().map(|c| oracle::pieces(sq, c)).collect();
            let brute = oracle::double_points(&comps);
            ensure(brute == reports[0].double_count, || {
                format!(
                    "seed {seed}: {} double points, enumeration {brute}",
                    reports[0].double_count
                )
            })?;
            checked += 1;
        }
    }
    let mut triples = 0;
    for seed in 0..100 {
        let (_, reports) = fuzz_one(GenUniverse::Surfaces, seed)?;
        for r in &reports {
            ensure(r.passed(), || format!("T3 seed {seed}: {}", r.tsv_rows()))?;
            rows += r.rows.len();
            triples += r.triple_count;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "600 scenes, {rows} rows all PASS, {triples} triple points, {checked} double-point counts match enumeration, {t:.1?}"
    ))
}

fn t3_scene(seed: u64, tori: std::ops::RangeInclusive<usize>) -> Result<CertifiedImmersion3, String> {
    let cfg = GeneratorConfig {
        components: tori,
        ..GeneratorConfig::new(Preset::T3ToriCatalog, seed)
    };
    let scene = generate(&cfg).map_err(|e| e.to_string())?;
    let mut built = scene.build().map_err(|e| e.to_string())?;
    Ok(built.immersions.remove("T3").expect("generated name"))
}

/// The first torus and the rest.
fn split(f: &CertifiedImmersion3) -> Result<(CertifiedImmersion3, CertifiedImmersion3), String> {
    let n = f.mesh().components;
    let part = |c: Vec<usize>| {
        f.immersion()
            .select_components(&c)
            .and_then(|g| g.certify())
            .map_err(|e| e.to_string())
    };
    Ok((part(vec![0])?, part((1..n).collect())?))
}

fn curve_scene(seed: u64, cfg: impl Fn(u64) -> GeneratorConfig) -> Result<CertifiedMulticurve, String> {
    let scene = generate(&cfg(seed)).map_err(|e| e.to_string())?;
    let built = scene.build().map_err(|e| e.to_string())?;
    Ok(built.multicurves.into_values().next().expect("one surface"))
}

fn split_curves(m: &CertifiedMulticurve) -> Result<(RepresentedClass, RepresentedClass), String> {
    let n = m.components().len();
    let part = |c: Vec<usize>| {
        m.curve()
            .select(&c)
            .map_err(|e| e.to_string())
            .and_then(|g| g.certify().map_err(|e| e.to_string()))
            .map(RepresentedClass::Curves)
    };
    Ok((part(vec![0])?, part((1..n).collect())?))
}

fn proposition_suite() -> Outcome {
    let mut nonempty = 0;
    for seed in 0..50 {
        let f = t3_scene(seed, 2..=4)?;
        let (g, rest) = split(&f)?;
        let r = check_naturality(&g, &rest).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("naturality seed {seed}: {}", r.detail))?;
        nonempty += usize::from(r.left > 0);
    }

    for seed in 0..100 {
        let preset = Preset::CURVE_PRESETS[(seed % 3) as usize];
        let m = curve_scene(seed, |s| GeneratorConfig::embedded(preset, s))?;
        let f = RepresentedClass::Curves(m);
        for r in 2..=3 {
            let p = psi_r(&f, r).map_err(|e| e.to_string())?;
            ensure(p.is_empty(), || format!("psi_{r} nonempty on embedding {seed}"))?;
        }
        let RepresentedClass::Curves(same) = psi_r(&f, 1).map_err(|e| e.to_string())? else {
            return Err("psi_1 changed the universe".into());
        };
        let RepresentedClass::Curves(orig) = &f else {
            unreachable!()
        };
        ensure(same.curve() == orig.curve(), || format!("psi_1 on embedding {seed}"))?;
    }

    let mut mixed = 0;
    for seed in 0..100 {
        let preset = Preset::CURVE_PRESETS[(seed % 3) as usize];
        let m = curve_scene(seed, |s| GeneratorConfig {
            components: 2..=3,
            ..GeneratorConfig::new(preset, s)
        })?;
        let (a, b) = split_curves(&m)?;
        let r = check_cartan(&a, &b, 2).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("cartan curves seed {seed}: {}", r.detail))?;
        mixed += r.left;
    }
    for seed in 0..25 {
        let f = t3_scene(1000 + seed, 2..=4)?;
        let (a, b) = split(&f)?;
        let (a, b) = (RepresentedClass::Surfaces(a), RepresentedClass::Surfaces(b));
        for r in [2, 3] {
            let rep = check_cartan(&a, &b, r).map_err(|e| e.to_string())?;
            ensure(rep.holds, || format!("cartan T3 seed {seed} r={r}: {}", rep.detail))?;
        }
        let tower = check_mu_tower(&t3_scene(2000 + seed, 1..=4)?);
        ensure(tower.holds, || format!("mu tower seed {seed}: {}", tower.detail))?;
    }
    Ok(format!(
        "naturality 50 ({nonempty} nonempty), psi on 100 embeddings, Cartan 100 curve pairs ({mixed} points) + 25 T3 splits, mu tower 25"
    ))
}

fn embedded_pairing() -> Outcome {
    let (mut one_sided, mut total) = (0, 0);
    for seed in 0..100 {
        let preset = Preset::CURVE_PRESETS[(seed % 3) as usize];
        let m = curve_scene(seed, |s| GeneratorConfig::embedded(preset, s))?;
        for i in 0..m.components().len() {
            let lhs = m.pairing_mod2(i, &m).map_err(|e| e.to_string())?;
            ensure(lhs == m.two_sidedness(i), || format!("seed {seed} component {i}"))?;
            one_sided += usize::from(m.two_sidedness(i));
            total += 1;
        }
    }
    Ok(format!("{total} embedded components, {one_sided} one-sided"))
}

fn cross_oracle() -> Outcome {
    ensure(oracle::form(Square::Torus) == [[false, true], [true, false]], || {
        "torus form".into()
    })?;
    ensure(oracle::form(Square::Klein) == [[true, true], [true, false]], || {
        "Klein form".into()
    })?;
    let mut agree = 0;
    let mut ones = 0;
    for (sq, preset) in [(Square::Torus, Preset::Torus), (Square::Klein, Preset::Klein)] {
        for seed in 0..100 {
            let cfg = GeneratorConfig::new(preset, 5000 + seed);
            let scene = generate(&cfg).map_err(|e| e.to_string())?;
            let built = scene.build().map_err(|e| e.to_string())?;
            let m = built.multicurves.values().next().expect("one surface");
            let comps: Vec<_> = curve_points(&scene).iter().map(|c| oracle::pieces(sq, c)).collect();
            for i in 0..comps.len() {
                let lib = m.pairing_mod2(i, m).map_err(|e| e.to_string())?;
                let form = oracle::pairing(sq, &comps[i], &comps);
                ensure(lib == form, || {
                    format!(
                        "{preset} seed {} component {i}: pushoff {lib}, form {form}",
                        5000 + seed
                    )
                })?;
                agree += 1;
                ones += usize::from(lib);
            }
        }
    }
    Ok(format!("200 curves, {agree} components agree ({ones} odd)"))
}

fn robustness() -> Outcome {
    let fixtures = [
        ("tangency.scene", ViolationKind::Tangency),
        ("triple-point.scene", ViolationKind::TriplePoint),
        ("vertex-on-edge.scene", ViolationKind::VertexOnEdge),
        ("coplanar-overlap.scene", ViolationKind::CoplanarOverlap),
    ];
    let mut names = Vec::new();
    for (file, kind) in fixtures {
        let text = std::fs::read_to_string(docs().join("degenerate").join(file)).map_err(|e| e.to_string())?;
        match verify_text(file, &text) {
            Ok(_) => return Err(format!("{file} produced a verdict")),
            Err(e) => {
                let got = e.violation().map(|v| v.kind);
                ensure(got == Some(kind), || format!("{file}: expected {kind}, got {e}"))?;
                names.push(kind.to_string());
            }
        }
    }
    let text = std::fs::read_to_string(docs().join("degenerate/invalid-rational.scene")).map_err(|e| e.to_string())?;
    let e = parse_scene(&text).err().ok_or("1/0 accepted")?;
    ensure(e.message.contains("invalid rational"), || e.to_string())?;
    Ok(format!("rejected as {}, and 1/0 as invalid rational", names.join(", ")))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        std::iter::once("multipoint").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn determinism() -> Outcome {
    let mut files: Vec<String> = std::fs::read_dir(docs())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "scene"))
        .map(|p| p.display().to_string())
        .collect();
    files.sort();
    let mut args = vec!["verify"];
    args.extend(files.iter().map(String::as_str));
    let first = cli(&args);
    ensure(first.0 == 0, || format!("corpus verify exited {}", first.0))?;
    for _ in 0..2 {
        ensure(cli(&args) == first, || "corpus reports differ between runs".into())?;
    }
    let fuzz = ["fuzz", "--universe", "curves", "--count", "20", "--seed", "11"];
    let a = cli(&fuzz);
    ensure(a.0 == 0 && cli(&fuzz) == a, || {
        "fuzz reports differ between runs".into()
    })?;
    Ok(format!(
        "{} corpus files, {} bytes, identical over 3 runs",
        files.len(),
        first.1.len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("anchor scenes", anchors),
        ("fuzz campaign", fuzz_campaign),
        ("bordism properties", proposition_suite),
        ("embedded pairing", embedded_pairing),
        ("intersection-form oracle", cross_oracle),
        ("degenerate fixtures", robustness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}) [{t:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
