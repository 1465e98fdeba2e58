use std::sync::Arc;

use multipoint::bordism::{
    add, check_cartan, check_mu_tower, check_naturality, euler_class, internal_product, mu_r, psi_r, pullback_class,
    ClassPoint, RepresentedClass, GENERICALLY_EMPTY,
};
use multipoint::curves2d::{ClosedPolyline, ImmersedMulticurve, SquarePoint};
use multipoint::surface2d::SquareComplex;
use multipoint::surfaces3d::{
    swept_klein_bottle, swept_klein_core, three_coordinate_tori, CertifiedImmersion3, TorusSpec, TriangulatedImmersion3,
};
use multipoint::{p2, rat, Point3};

type Pts = [(i64, i64)];

fn loop_on(c: &Arc<SquareComplex>, den: i64, pts: &Pts) -> ClosedPolyline {
    let v = pts
        .iter()
        .map(|&(x, y)| SquarePoint::new(0, p2((x, den), (y, den))))
        .collect();
    ClosedPolyline::resolve(c, v).unwrap()
}

fn curves(c: &Arc<SquareComplex>, den: i64, comps: &[(&str, &Pts)]) -> RepresentedClass {
    let comps = comps.iter().map(|(n, p)| (n.to_string(), loop_on(c, den, p))).collect();
    RepresentedClass::Curves(ImmersedMulticurve::new(c.clone(), comps).unwrap().certify().unwrap())
}

const HORIZONTAL: &Pts = &[(2, 6), (5, 6), (10, 6)];
const VERTICAL: &Pts = &[(6, 2), (6, 5), (6, 10)];
const HIGHER: &Pts = &[(2, 9), (5, 9), (10, 9)];
// figure-eights in 32nds; the second pokes through the right side of the first
const EIGHT: &Pts = &[(12, 12), (20, 20), (20, 12), (12, 20)];
const THIN_EIGHT: &Pts = &[(19, 15), (27, 17), (27, 15), (19, 17)];

fn torus() -> Arc<SquareComplex> {
    Arc::new(SquareComplex::torus())
}

fn tori(specs: &[TorusSpec]) -> CertifiedImmersion3 {
    TriangulatedImmersion3::from_tori(specs).unwrap().certify().unwrap()
}

fn surf(specs: &[TorusSpec]) -> RepresentedClass {
    RepresentedClass::Surfaces(tori(specs))
}

#[test]
fn union_and_empty() {
    let t = torus();
    let h = curves(&t, 12, &[("h", HORIZONTAL)]);
    let v = curves(&t, 12, &[("v", VERTICAL)]);
    let empty = RepresentedClass::Curves(ImmersedMulticurve::empty(t.clone()).unwrap().certify().unwrap());
    let RepresentedClass::Curves(s) = add(&h, &empty).unwrap() else {
        panic!()
    };
    assert_eq!(s.components().len(), 1);
    let RepresentedClass::Curves(s) = add(&h, &v).unwrap() else {
        panic!()
    };
    assert_eq!(s.components().len(), 2);
    assert!(add(&h, &h).is_err());
}

#[test]
fn products_of_curves() {
    let t = torus();
    let h = curves(&t, 12, &[("h", HORIZONTAL)]);
    let v = curves(&t, 12, &[("v", VERTICAL)]);
    let h2 = curves(&t, 12, &[("h2", HIGHER)]);
    let x = internal_product(&h, &v).unwrap();
    assert_eq!(
        x.points(),
        &[ClassPoint::Surface(SquarePoint::new(0, p2((1, 2), (1, 2))))]
    );
    assert!(internal_product(&h, &h2).unwrap().is_empty());
    let unit = psi_r(&h, 0).unwrap();
    let RepresentedClass::Curves(back) = internal_product(&unit, &h).unwrap() else {
        panic!()
    };
    assert_eq!(back.components().len(), 1);

    let p = pullback_class(&h, &v).unwrap();
    assert_eq!(p.points().len(), 1);
    let ClassPoint::CurveSource(a) = &p.points()[0] else {
        panic!()
    };
    assert_eq!(a.component, 0);
}

#[test]
fn products_of_surfaces() {
    let specs = three_coordinate_tori();
    let z = surf(&specs[..1]);
    let y = surf(&specs[1..2]);
    let RepresentedClass::SpaceCurves(c) = internal_product(&z, &y).unwrap() else {
        panic!()
    };
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].transport, vec![false, false]);
    let RepresentedClass::SourceCurves(on_g) = pullback_class(&z, &y).unwrap() else {
        panic!()
    };
    assert_eq!(on_g.len(), 1);
    let RepresentedClass::SourceCurves(none) = pullback_class(
        &z,
        &RepresentedClass::Empty {
            universe: multipoint::bordism::Universe::SurfaceInTorus3,
            note: None,
        },
    )
    .unwrap() else {
        panic!()
    };
    assert!(none.is_empty());
}

#[test]
fn multiple_point_operations() {
    let t = torus();
    let eight = curves(&t, 32, &[("e", EIGHT)]);
    let h = curves(&t, 12, &[("h", HORIZONTAL)]);
    assert!(psi_r(&h, 2).unwrap().is_empty());
    assert_eq!(psi_r(&eight, 2).unwrap().points().len(), 1);
    assert_eq!(mu_r(&eight, 2).unwrap().points().len(), 2);
    assert!(mu_r(&h, 2).unwrap().is_empty());
    let three = psi_r(&eight, 3).unwrap();
    assert!(three.is_empty());
    assert_eq!(three.note(), Some(GENERICALLY_EMPTY));

    let f = surf(&three_coordinate_tori());
    let RepresentedClass::Surfaces(same) = psi_r(&f, 1).unwrap() else {
        panic!()
    };
    assert_eq!(same.triangles().len(), 6);
    assert_eq!(
        psi_r(&f, 3).unwrap().points(),
        &[ClassPoint::Torus(Point3::new(rat(1, 4), rat(1, 4), rat(1, 4)))]
    );
    assert_eq!(mu_r(&f, 3).unwrap().points().len(), 3);
    let RepresentedClass::SpaceCurves(d) = psi_r(&f, 2).unwrap() else {
        panic!()
    };
    assert_eq!(d.len(), 3);
    assert_eq!(psi_r(&f, 4).unwrap().note(), Some(GENERICALLY_EMPTY));
}

#[test]
fn euler_bits() {
    let k = Arc::new(SquareComplex::klein_bottle());
    let core = curves(&k, 12, &[("core", HORIZONTAL), ("fiber", VERTICAL)]);
    let e = euler_class(&core, &[]).unwrap();
    assert_eq!(e.get("core"), Some(true));
    assert_eq!(e.get("fiber"), Some(false));

    let t = torus();
    let e = euler_class(&curves(&t, 32, &[("e", EIGHT)]), &[]).unwrap();
    assert_eq!(e.get("e"), Some(false));

    let z = surf(&three_coordinate_tori()[..1]);
    assert!(euler_class(&z, &[]).unwrap().table.values().all(|b| !b));
    let kb = RepresentedClass::Surfaces(
        TriangulatedImmersion3::new(swept_klein_bottle())
            .unwrap()
            .certify()
            .unwrap(),
    );
    let e = euler_class(&kb, &[swept_klein_core("core", 0)]).unwrap();
    assert_eq!(e.get("core"), Some(true));
}

#[test]
fn naturality_on_coordinate_tori() {
    let specs = three_coordinate_tori();
    let g = tori(&specs[..1]);
    let f = tori(&specs[1..]);
    let r = check_naturality(&g, &f).unwrap();
    assert!(r.holds, "{}", r.detail);
    assert_eq!((r.left, r.right), (1, 1));
    let lone = tori(&specs[1..2]);
    let r = check_naturality(&g, &lone).unwrap();
    assert!(r.holds);
    assert_eq!(r.left, 0);
}

#[test]
fn cartan_pieces() {
    let t = torus();
    let a = curves(&t, 32, &[("a", EIGHT)]);
    let b = curves(&t, 32, &[("b", THIN_EIGHT)]);
    assert_eq!(internal_product(&a, &b).unwrap().points().len(), 2);
    let r = check_cartan(&a, &b, 2).unwrap();
    assert!(r.holds, "{}", r.detail);
    assert_eq!(r.left, 4);

    let specs = three_coordinate_tori();
    let f = surf(&specs[..2]);
    let g = surf(&specs[2..]);
    let r = check_cartan(&f, &g, 3).unwrap();
    assert!(r.holds, "{}", r.detail);
    assert_eq!(r.left, 1);
    let r = check_cartan(&f, &g, 2).unwrap();
    assert!(r.holds, "{}", r.detail);
}

#[test]
fn mu_tower_on_anchor() {
    let r = check_mu_tower(&tori(&three_coordinate_tori()));
    assert!(r.holds);
    assert_eq!((r.left, r.right), (3, 3));
    let r = check_mu_tower(&tori(&three_coordinate_tori()[..1]));
    assert!(r.holds);
    assert_eq!(r.left, 0);
}
