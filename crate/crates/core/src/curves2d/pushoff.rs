use num_traits::{One, Zero};

use super::pieces::{features_by_square, mutual_crossings, self_crossings, separation, PieceSet};
use super::polyline::{strictly_inside, ClosedPolyline, SquarePoint};
use crate::exactgeom::{miter_point, offset_point};
use crate::surface2d::SquareComplex;
use crate::{rat, Rational, Violation, ViolationKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PushSide {
    Left,
    Right,
}

impl PushSide {
    fn sign(self) -> Rational {
        match self {
            PushSide::Left => Rational::one(),
            PushSide::Right => -Rational::one(),
        }
    }
}

/// An offset copy of a closed polyline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushoff {
    pub polyline: ClosedPolyline,
    /// The offset came back on the other side after one traversal and was
    /// closed with a jump segment (the last segment).
    pub reconnected: bool,
}

fn collision(detail: impl Into<String>) -> Violation {
    Violation::new(ViolationKind::PushoffCollision, detail)
}

/// Offset `curve` by `epsilon` to the chosen side with mitered corners.
///
/// Requires `epsilon < min_separation / 3`, where the separation is taken
/// over the curve's own features (vertices, side crossings, self-crossings,
/// segments and square sides).
pub fn pushoff_polyline(
    ambient: &SquareComplex,
    curve: &ClosedPolyline,
    side: PushSide,
    epsilon: &Rational,
) -> Result<Pushoff, Violation> {
    let set = PieceSet::build(ambient, [(0, curve)]);
    let crossings = self_crossings(&set)?;
    let extra: Vec<_> = crossings.iter().map(|c| (c.square, c.point.clone())).collect();
    let sep = separation(&features_by_square(&set, &extra)).unwrap_or_else(Rational::one);
    if *epsilon <= Rational::zero() || epsilon * rat(3, 1) >= sep {
        return Err(collision(format!(
            "epsilon {epsilon} is not below a third of the separation {sep}"
        )));
    }
    pushoff_anchored(ambient, curve, side, epsilon, 0)
}

/// The offset construction without the separation precondition. The offset
/// starts and (if needed) jumps on segment `anchor`, in the part of that
/// segment before any side crossing.
pub(crate) fn pushoff_anchored(
    ambient: &SquareComplex,
    curve: &ClosedPolyline,
    side: PushSide,
    eps: &Rational,
    anchor: usize,
) -> Result<Pushoff, Violation> {
    let n = curve.len();
    let a = anchor % n;
    let idx = |i: usize| (a + i) % n;
    let verts = curve.vertices();

    // Offset side sign in each vertex's frame, carried through gluings.
    let mut signs = vec![side.sign()];
    for i in 0..n {
        let k = idx(i);
        let flip = match curve.via()[k] {
            Some(s) => ambient.neighbor(verts[k].square, s).expect("validated").sign < 0,
            None => false,
        };
        let last = signs[i].clone();
        signs.push(if flip { -last } else { last });
    }
    let reconnected = signs[n] != signs[0];

    let d_out = |k: usize| curve.next_in_frame(ambient, k).sub(&verts[k].pos);
    let d_in = |k: usize| verts[k].pos.sub(&curve.prev_in_frame(ambient, k));

    let lambda = match curve.crossing_param(ambient, a) {
        Some(tc) => tc / rat(2, 1),
        None => rat(1, 2),
    };
    let q = verts[a].pos.lerp(&curve.next_in_frame(ambient, a), &lambda);
    let d0 = d_out(a);

    let mut out = vec![SquarePoint::new(verts[a].square, offset_point(&q, &d0, &signs[0], eps))];
    let mut via = vec![curve.via()[a]];
    for (i, sign) in signs.iter().enumerate().take(n).skip(1) {
        let k = idx(i);
        let p = miter_point(&verts[k].pos, &d_in(k), &d_out(k), sign, eps);
        out.push(SquarePoint::new(verts[k].square, p));
        via.push(curve.via()[k]);
    }
    let back = miter_point(&verts[a].pos, &d_in(a), &d0, &signs[n], eps);
    out.push(SquarePoint::new(verts[a].square, back));
    via.push(None);
    if reconnected {
        out.push(SquarePoint::new(verts[a].square, offset_point(&q, &d0, &signs[n], eps)));
        via.push(None);
    }
    if let Some(bad) = out.iter().find(|v| !strictly_inside(&v.pos)) {
        return Err(collision(format!("offset vertex {bad} leaves its square")));
    }
    let polyline = ClosedPolyline::with_vias(ambient, out, via).map_err(|v| collision(v.detail))?;

    if reconnected {
        let m = polyline.len();
        let jump = PieceSet::build(ambient, [(0, &polyline)]);
        let jump = PieceSet {
            pieces: jump.pieces.into_iter().filter(|p| p.seg == m - 1).collect(),
            counts: jump.counts,
        };
        let original = PieceSet::build(ambient, [(0, curve)]);
        let hits = mutual_crossings(&jump, &original).map_err(|v| collision(v.detail))?;
        if hits.len() != 1 {
            return Err(collision(format!(
                "reconnection jump crosses the curve {} times",
                hits.len()
            )));
        }
    }
    Ok(Pushoff { polyline, reconnected })
}
