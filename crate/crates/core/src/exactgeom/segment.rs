use super::point::Point2;
use super::scalar::ExactScalar;
use super::GeomError;

/// A closed segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment2<T> {
    start: Point2<T>,
    end: Point2<T>,
}

impl<T: ExactScalar> Segment2<T> {
    pub fn new(start: Point2<T>, end: Point2<T>) -> Result<Self, GeomError> {
        if start == end {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment2 { start, end })
    }

    pub fn start(&self) -> &Point2<T> {
        &self.start
    }

    pub fn end(&self) -> &Point2<T> {
        &self.end
    }

    pub fn direction(&self) -> Point2<T> {
        self.end.sub(&self.start)
    }

    pub fn at(&self, t: &T) -> Point2<T> {
        self.start.lerp(&self.end, t)
    }

    pub fn reversed(&self) -> Self {
        Segment2 {
            start: self.end.clone(),
            end: self.start.clone(),
        }
    }

    /// Parameter of the orthogonal projection of `p` onto the supporting line.
    pub fn project_param(&self, p: &Point2<T>) -> T {
        let d = self.direction();
        p.sub(&self.start).dot(&d) / d.norm_sq()
    }

    pub fn contains(&self, p: &Point2<T>) -> bool {
        let d = self.direction();
        let w = p.sub(&self.start);
        if !d.cross(&w).is_zero() {
            return false;
        }
        let t = w.dot(&d);
        !t.is_negative() && t <= d.norm_sq()
    }

    /// Squared distance from `p` to the closed segment.
    pub fn dist_sq_to_point(&self, p: &Point2<T>) -> T {
        let t = self.project_param(p);
        let t = if t.is_negative() {
            T::zero()
        } else if t > T::one() {
            T::one()
        } else {
            t
        };
        self.at(&t).dist_sq(p)
    }
}

/// Result of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegIntersection<T> {
    None,
    /// A single common point; `s` and `t` are its parameters on the first
    /// and second segment.
    Point {
        point: Point2<T>,
        s: T,
        t: T,
    },
    /// Collinear with an overlap of positive length.
    Degenerate,
}

impl<T> SegIntersection<T> {
    pub fn is_none(&self) -> bool {
        matches!(self, SegIntersection::None)
    }
}

pub fn seg_intersect<T: ExactScalar>(a: &Segment2<T>, b: &Segment2<T>) -> SegIntersection<T> {
    let u = a.direction();
    let v = b.direction();
    let w = b.start.sub(&a.start);
    let det = u.cross(&v);
    if det.is_zero() {
        if !u.cross(&w).is_zero() {
            return SegIntersection::None;
        }
        let uu = u.norm_sq();
        let t0 = w.dot(&u) / uu.clone();
        let t1 = b.end.sub(&a.start).dot(&u) / uu;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(T::zero());
        let hi = hi.min(T::one());
        if lo > hi {
            return SegIntersection::None;
        }
        if lo < hi {
            return SegIntersection::Degenerate;
        }
        let point = a.at(&lo);
        let t = b.project_param(&point);
        return SegIntersection::Point { point, s: lo, t };
    }
    let s = w.cross(&v) / det.clone();
    let t = w.cross(&u) / det;
    let unit = |x: &T| !x.is_negative() && *x <= T::one();
    if unit(&s) && unit(&t) {
        SegIntersection::Point { point: a.at(&s), s, t }
    } else {
        SegIntersection::None
    }
}
