//! Helpers for the flat 3-torus `R³ / Z³`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::{Point3, Rational};

/// An integer translation.
pub type Shift = [i64; 3];

pub fn shift_point(s: &Shift) -> Point3 {
    Point3::new(
        Rational::from_integer(BigInt::from(s[0])),
        Rational::from_integer(BigInt::from(s[1])),
        Rational::from_integer(BigInt::from(s[2])),
    )
}

pub fn add_shift(a: &Shift, b: &Shift) -> Shift {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub_shift(a: &Shift, b: &Shift) -> Shift {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn floor_i64(v: &Rational) -> i64 {
    v.floor().to_integer().to_i64().expect("coordinate fits in i64")
}

fn ceil_i64(v: &Rational) -> i64 {
    v.ceil().to_integer().to_i64().expect("coordinate fits in i64")
}

/// Split `p` as `q + s` with `q ∈ [0,1)³` and `s` integral.
pub fn normalize(p: &Point3) -> (Point3, Shift) {
    let s = [floor_i64(&p.x), floor_i64(&p.y), floor_i64(&p.z)];
    (p.sub(&shift_point(&s)), s)
}

pub fn wrap(p: &Point3) -> Point3 {
    normalize(p).0
}

/// `a - b` when it is an integer vector.
pub fn integer_offset(a: &Point3, b: &Point3) -> Option<Shift> {
    let d = a.sub(b);
    let c = |v: &Rational| if v.is_integer() { v.to_integer().to_i64() } else { None };
    Some([c(&d.x)?, c(&d.y)?, c(&d.z)?])
}

/// Translation-invariant key of the unordered segment `pq`, plus whether the
/// key follows the `p -> q` direction.
pub fn segment_key(p: &Point3, q: &Point3) -> ((Point3, Point3), bool) {
    let fwd = (wrap(p), q.sub(p));
    let bwd = (wrap(q), p.sub(q));
    if fwd <= bwd {
        (fwd, true)
    } else {
        (bwd, false)
    }
}

/// Integer shifts `s` for which the closed boxes `a` and `b + s` meet.
pub fn shifts_between(a: &(Point3, Point3), b: &(Point3, Point3)) -> Vec<Shift> {
    let mut ranges = [(0i64, 0i64); 3];
    for (axis, range) in ranges.iter_mut().enumerate() {
        let lo = a.0.coord(axis).clone() - b.1.coord(axis).clone();
        let hi = a.1.coord(axis).clone() - b.0.coord(axis).clone();
        *range = (ceil_i64(&lo), floor_i64(&hi));
    }
    let mut out = Vec::new();
    for x in ranges[0].0..=ranges[0].1 {
        for y in ranges[1].0..=ranges[1].1 {
            for z in ranges[2].0..=ranges[2].1 {
                out.push([x, y, z]);
            }
        }
    }
    out
}

pub fn lex_positive(s: &Shift) -> bool {
    *s > [0, 0, 0]
}

pub fn bbox_of(points: &[&Point3]) -> (Point3, Point3) {
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in &points[1..] {
        lo = Point3::new(lo.x.min(p.x.clone()), lo.y.min(p.y.clone()), lo.z.min(p.z.clone()));
        hi = Point3::new(hi.x.max(p.x.clone()), hi.y.max(p.y.clone()), hi.z.max(p.z.clone()));
    }
    (lo, hi)
}
