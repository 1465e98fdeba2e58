use super::point::Point2;
use super::scalar::ExactScalar;

/// Point at offset `side * eps` (in L1-scaled normal units) from `base`
/// along the left normal of `dir`. The offset line of a direction `d`
/// through `a` is `{p : cross(d, p - a) = side * eps * |d|_1}`, which keeps
/// everything rational.
pub fn offset_point<T: ExactScalar>(base: &Point2<T>, dir: &Point2<T>, side: &T, eps: &T) -> Point2<T> {
    let t = side.clone() * eps.clone() * dir.norm_l1() / dir.norm_sq();
    base.add(&dir.rot90().scale(&t))
}

/// Mitered corner: the intersection of the offset lines of the incoming and
/// outgoing directions at `v`. Falls back to a plain offset when the two
/// directions are parallel.
pub fn miter_point<T: ExactScalar>(v: &Point2<T>, d_in: &Point2<T>, d_out: &Point2<T>, side: &T, eps: &T) -> Point2<T> {
    let det = d_in.cross(d_out);
    if det.is_zero() {
        return offset_point(v, d_out, side, eps);
    }
    let c1 = side.clone() * eps.clone() * d_in.norm_l1();
    let c2 = side.clone() * eps.clone() * d_out.norm_l1();
    let x = (c1.clone() * d_out.x.clone() - d_in.x.clone() * c2.clone()) / det.clone();
    let y = (d_out.y.clone() * c1 - d_in.y.clone() * c2) / det;
    v.add(&Point2::new(x, y))
}
