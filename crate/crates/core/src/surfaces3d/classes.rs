//! Homology coordinates and crossing counts against generic translates.

use num_traits::ToPrimitive;

use super::intersect::Bbox;
use super::torus::{bbox_of, shift_point, shifts_between};
use crate::exactgeom::{locate_in_triangle2, segment_triangle_crossing, Incidence3, SegTriCrossing};
use crate::{rat, Point2, Point3, Rational, Segment2, Triangle3, Violation, ViolationKind};

pub const RETRY_BUDGET: usize = 16;

/// The offset `(δ, δ², δ³)`.
pub fn generic_offset(delta: &Rational) -> Point3 {
    let d2 = delta.clone() * delta.clone();
    let d3 = d2.clone() * delta.clone();
    Point3::new(delta.clone(), d2, d3)
}

/// Transverse crossings of the segments with every lift of the triangles
/// translated by `offset`; `None` if some contact is not transverse.
pub(crate) fn crossings_with_translate(
    segments: &[(Point3, Point3)],
    tris: &[Triangle3],
    boxes: &[Bbox],
    offset: &Point3,
) -> Option<usize> {
    let mut count = 0;
    for (p, q) in segments {
        let sb = bbox_of(&[p, q]);
        for (tri, b) in tris.iter().zip(boxes) {
            let moved = (b.0.add(offset), b.1.add(offset));
            for s in shifts_between(&sb, &moved) {
                let t = tri.translated(&offset.add(&shift_point(&s)));
                match segment_triangle_crossing(p, q, &t) {
                    SegTriCrossing::None => {}
                    SegTriCrossing::Crossing { .. } => count += 1,
                    SegTriCrossing::Degenerate => return None,
                }
            }
        }
    }
    Some(count)
}

/// Crossing count with a generic translate, halving `delta` on collisions.
pub(crate) fn translate_count(
    segments: &[(Point3, Point3)],
    tris: &[Triangle3],
    boxes: &[Bbox],
    delta0: &Rational,
) -> Result<(usize, Rational), Violation> {
    let mut delta = delta0.clone();
    for _ in 0..RETRY_BUDGET {
        if let Some(c) = crossings_with_translate(segments, tris, boxes, &generic_offset(&delta)) {
            return Ok((c, delta));
        }
        delta /= rat(2, 1);
    }
    Err(Violation::new(
        ViolationKind::TranslateCollision,
        "no generic translate found within the retry budget",
    ))
}

fn floor_i64(v: &Rational) -> i64 {
    v.floor().to_integer().to_i64().expect("fits")
}

fn ceil_i64(v: &Rational) -> i64 {
    v.ceil().to_integer().to_i64().expect("fits")
}

fn base_point(delta: &Rational) -> Point3 {
    generic_offset(delta).add(&Point3::new(rat(1, 3), rat(1, 3), rat(1, 3)))
}

/// Crossings of the surface with the closed line through `base` in
/// direction `axis`, or `None` if the line touches it non-transversally.
fn line_crossings(tris: &[Triangle3], base: &Point3, axis: usize) -> Option<usize> {
    let b = base.project(axis);
    let mut count = 0;
    for tri in tris {
        let flat = [
            tri.vertex(0).project(axis),
            tri.vertex(1).project(axis),
            tri.vertex(2).project(axis),
        ];
        let lo_x = flat.iter().map(|p| p.x.clone()).min().unwrap();
        let hi_x = flat.iter().map(|p| p.x.clone()).max().unwrap();
        let lo_y = flat.iter().map(|p| p.y.clone()).min().unwrap();
        let hi_y = flat.iter().map(|p| p.y.clone()).max().unwrap();
        let flat_area = crate::exactgeom::orient2d(&flat[0], &flat[1], &flat[2]);
        for sx in ceil_i64(&(b.x.clone() - hi_x.clone()))..=floor_i64(&(b.x.clone() - lo_x.clone())) {
            for sy in ceil_i64(&(b.y.clone() - hi_y.clone()))..=floor_i64(&(b.y.clone() - lo_y.clone())) {
                let q = Point2::new(
                    b.x.clone() - Rational::from_integer(sx.into()),
                    b.y.clone() - Rational::from_integer(sy.into()),
                );
                if flat_area == rat(0, 1) {
                    for k in 0..3 {
                        if let Ok(e) = Segment2::new(flat[k].clone(), flat[(k + 1) % 3].clone()) {
                            if e.contains(&q) {
                                return None;
                            }
                        }
                    }
                    continue;
                }
                match locate_in_triangle2(&flat, &q) {
                    Incidence3::Outside => {}
                    Incidence3::Interior => count += 1,
                    _ => return None,
                }
            }
        }
    }
    Some(count)
}

/// Mod-2 crossings of the surface with the coordinate circles in the x, y
/// and z directions.
pub fn ambient_class_h2(tris: &[Triangle3], delta0: &Rational) -> Result<[bool; 3], Violation> {
    let mut delta = delta0.clone();
    for _ in 0..RETRY_BUDGET {
        let base = base_point(&delta);
        let counts: Option<Vec<usize>> = (0..3).map(|axis| line_crossings(tris, &base, axis)).collect();
        if let Some(c) = counts {
            return Ok([c[0] % 2 == 1, c[1] % 2 == 1, c[2] % 2 == 1]);
        }
        delta /= rat(2, 1);
    }
    Err(Violation::new(
        ViolationKind::TranslateCollision,
        "no generic base point found within the retry budget",
    ))
}

fn plane_crossings(segments: &[(Point3, Point3)], c: &Rational, axis: usize) -> Option<usize> {
    let mut count = 0usize;
    for (p, q) in segments {
        let (a, b) = (p.coord(axis).clone() - c.clone(), q.coord(axis).clone() - c.clone());
        if a.is_integer() || b.is_integer() {
            return None;
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        count += (floor_i64(&hi) - floor_i64(&lo)) as usize;
    }
    Some(count)
}

/// Mod-2 crossings of a closed curve (given as segments, each in any lift)
/// with the coordinate 2-tori normal to x, y and z.
pub fn curve_class_h1(segments: &[(Point3, Point3)], delta0: &Rational) -> Result<[bool; 3], Violation> {
    let mut delta = delta0.clone();
    for _ in 0..RETRY_BUDGET {
        let base = base_point(&delta);
        let counts: Option<Vec<usize>> = (0..3)
            .map(|axis| plane_crossings(segments, base.coord(axis), axis))
            .collect();
        if let Some(c) = counts {
            return Ok([c[0] % 2 == 1, c[1] % 2 == 1, c[2] % 2 == 1]);
        }
        delta /= rat(2, 1);
    }
    Err(Violation::new(
        ViolationKind::TranslateCollision,
        "no generic base point found within the retry budget",
    ))
}

/// Crossings of the segments with the surface itself, as (triangle, point
/// in the triangle's frame); `None` if some contact is not transverse.
pub(crate) fn crossing_points(
    segments: &[(Point3, Point3)],
    tris: &[Triangle3],
    boxes: &[Bbox],
) -> Option<Vec<(usize, Point3)>> {
    let mut out = Vec::new();
    for (p, q) in segments {
        let sb = bbox_of(&[p, q]);
        for (t, (tri, b)) in tris.iter().zip(boxes).enumerate() {
            for s in shifts_between(&sb, b) {
                let sp = shift_point(&s);
                match segment_triangle_crossing(p, q, &tri.translated(&sp)) {
                    SegTriCrossing::None => {}
                    SegTriCrossing::Crossing { point, .. } => out.push((t, point.sub(&sp))),
                    SegTriCrossing::Degenerate => return None,
                }
            }
        }
    }
    out.sort();
    Some(out)
}
