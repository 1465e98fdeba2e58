use std::sync::Arc;
use std::time::Duration;

use multipoint::curves2d::{CertifiedMulticurve, ClosedPolyline, ImmersedMulticurve, SquarePoint};
use multipoint::herbert::{
    explain, to_tsv, verify_curves, verify_surface, HerbertReport, HerbertRow, Verdict, FUNDAMENTAL_CLASS, TSV_HEADER,
};
use multipoint::p2;
use multipoint::surface2d::SquareComplex;
use multipoint::surfaces3d::{three_coordinate_tori, TriangulatedImmersion3};

type Frac = (i64, i64);

fn on(c: &Arc<SquareComplex>, comps: &[(&str, &[(Frac, Frac)])]) -> CertifiedMulticurve {
    let comps = comps
        .iter()
        .map(|(id, pts)| {
            let v = pts.iter().map(|(x, y)| SquarePoint::new(0, p2(*x, *y))).collect();
            (id.to_string(), ClosedPolyline::resolve(c, v).unwrap())
        })
        .collect();
    ImmersedMulticurve::new(c.clone(), comps).unwrap().certify().unwrap()
}

const CORE: &[(Frac, Frac)] = &[((1, 6), (1, 2)), ((5, 12), (1, 2)), ((5, 6), (1, 2))];
const EIGHT: &[(Frac, Frac)] = &[((3, 8), (3, 8)), ((5, 8), (5, 8)), ((5, 8), (3, 8)), ((3, 8), (5, 8))];

fn bits(r: &HerbertRow) -> (bool, bool, bool) {
    (r.lhs, r.mu, r.euler)
}

#[test]
fn klein_core_row() {
    let k = Arc::new(SquareComplex::klein_bottle());
    let rep = verify_curves("k", &on(&k, &[("C", CORE)]), &[]);
    assert_eq!(rep.rows.len(), 1);
    let r = &rep.rows[0];
    assert_eq!((r.target.as_str(), r.r), ("C", 1));
    assert_eq!(bits(r), (true, false, true));
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn three_tori_fundamental_row() {
    let f = TriangulatedImmersion3::from_tori(&three_coordinate_tori())
        .unwrap()
        .certify()
        .unwrap();
    let rep = verify_surface("t", &f, &[]);
    assert_eq!(rep.rows.len(), 1);
    let r = &rep.rows[0];
    assert_eq!((r.target.as_str(), r.r), (FUNDAMENTAL_CLASS, 2));
    assert_eq!(bits(r), (true, true, false));
    assert!(rep.passed());
    assert_eq!((rep.double_count, rep.triple_count), (3, 1));
}

#[test]
fn figure_eight_explanation() {
    let t = Arc::new(SquareComplex::torus());
    let rep = verify_curves("fig", &on(&t, &[("eight", EIGHT)]), &[]);
    let text = explain(&rep);
    assert!(text.contains("1 double, 0 triple"), "{text}");
    let line = text.lines().find(|l| l.contains("double point")).unwrap();
    assert!(line.contains("(1/2, 1/2)"), "{line}");
    assert_eq!(line.matches("c0:").count(), 2, "{line}");
    assert!(!text.contains("mismatch"));
}

#[test]
fn injected_failure_is_highlighted() {
    let rep = HerbertReport {
        scene: "forged".into(),
        rows: vec![
            HerbertRow::new(1, "ok", true, true, false),
            HerbertRow::new(1, "bad", true, false, false),
        ],
        double_count: 0,
        triple_count: 0,
        evidence: vec![],
        elapsed: Duration::ZERO,
    };
    assert_eq!(rep.rows[1].verdict, Verdict::Fail);
    assert!(!rep.passed());
    let text = explain(&rep);
    let marked: Vec<&str> = text.lines().filter(|l| l.contains("mismatch")).collect();
    assert_eq!(marked.len(), 1);
    assert!(marked[0].contains("bad"));
    assert_eq!(
        to_tsv(&[rep]),
        format!("{TSV_HEADER}\nforged\t1\tok\t1\t1\t0\tPASS\nforged\t1\tbad\t1\t0\t0\tFAIL\n")
    );
}

#[test]
fn verdict_is_the_mod_two_identity() {
    for n in 0..8u8 {
        let (l, m, e) = (n & 1 == 1, n & 2 == 2, n & 4 == 4);
        let want = if l == (m ^ e) { Verdict::Pass } else { Verdict::Fail };
        assert_eq!(HerbertRow::new(1, "x", l, m, e).verdict, want);
    }
}

#[test]
fn reports_are_deterministic() {
    let t = Arc::new(SquareComplex::torus());
    let h: &[(Frac, Frac)] = &[((1, 6), (1, 3)), ((5, 12), (1, 3)), ((5, 6), (1, 3))];
    let f = on(&t, &[("h", h), ("eight", EIGHT)]);
    let a = verify_curves("d", &f, &[]);
    let b = verify_curves("d", &f.clone(), &[]);
    assert_eq!(to_tsv(std::slice::from_ref(&a)), to_tsv(std::slice::from_ref(&b)));
    assert_eq!(explain(&a), explain(&b));
    assert!(a.passed());
}
