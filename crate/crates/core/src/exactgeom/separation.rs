use super::point::Point2;
use super::scalar::ExactScalar;
use super::segment::{seg_intersect, SegIntersection, Segment2};

/// A geometric feature taking part in a separation measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feature<T> {
    Point(Point2<T>),
    Segment(Segment2<T>),
}

/// Squared distance between two features, or `None` when they are incident
/// (a point on a segment, or two segments that meet).
pub fn feature_dist_sq<T: ExactScalar>(a: &Feature<T>, b: &Feature<T>) -> Option<T> {
    match (a, b) {
        (Feature::Point(p), Feature::Point(q)) => Some(p.dist_sq(q)),
        (Feature::Point(p), Feature::Segment(s)) | (Feature::Segment(s), Feature::Point(p)) => {
            if s.contains(p) {
                None
            } else {
                Some(s.dist_sq_to_point(p))
            }
        }
        (Feature::Segment(s), Feature::Segment(t)) => {
            if !matches!(seg_intersect(s, t), SegIntersection::None) {
                return None;
            }
            [
                s.dist_sq_to_point(t.start()),
                s.dist_sq_to_point(t.end()),
                t.dist_sq_to_point(s.start()),
                t.dist_sq_to_point(s.end()),
            ]
            .into_iter()
            .min()
        }
    }
}

type Bounds = [f64; 4];

fn bounds<T: ExactScalar>(f: &Feature<T>) -> Bounds {
    let pts = match f {
        Feature::Point(p) => vec![p],
        Feature::Segment(s) => vec![s.start(), s.end()],
    };
    let mut b = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
    for p in pts {
        let (x, y) = (p.x.approx(), p.y.approx());
        b = [b[0].min(x), b[1].max(x), b[2].min(y), b[3].max(y)];
    }
    b
}

/// Squared gap between two boxes, a lower bound for the squared distance
/// of the features up to rounding.
fn gap_sq(a: &Bounds, b: &Bounds) -> f64 {
    let dx = (b[0] - a[1]).max(a[0] - b[1]).max(0.0);
    let dy = (b[2] - a[3]).max(a[2] - b[3]).max(0.0);
    dx * dx + dy * dy
}

/// Minimum squared distance over all non-incident feature pairs. Coincident
/// points contribute zero. Returns `None` when no pair qualifies.
///
/// Pairs whose float bounding boxes are clearly farther apart than the best
/// exact distance so far are skipped; the result is still exact.
pub fn min_separation<T: ExactScalar>(features: &[Feature<T>]) -> Option<T> {
    let boxes: Vec<Bounds> = features.iter().map(bounds).collect();
    let finite = boxes.iter().all(|b| b.iter().all(|v| v.is_finite() && v.abs() < 16.0));
    let mut best: Option<T> = None;
    let mut best_f = f64::INFINITY;
    for (i, a) in features.iter().enumerate() {
        for (j, b) in features.iter().enumerate().skip(i + 1) {
            if finite && gap_sq(&boxes[i], &boxes[j]) > best_f * (1.0 + 1e-9) + 1e-9 {
                continue;
            }
            if let Some(d) = feature_dist_sq(a, b) {
                if best.as_ref().is_none_or(|m| d < *m) {
                    best_f = d.approx();
                    best = Some(d);
                }
            }
        }
    }
    best
}
