//! Plain plane geometry on the one-square torus and Klein bottle, written
//! without the library's curve machinery: routes, pieces, crossing counts
//! and mod-2 intersection numbers through basis loops.

use multipoint::{rat, Rational};

pub type P = (Rational, Rational);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    Torus,
    Klein,
}

fn one() -> Rational {
    rat(1, 1)
}

fn dist2(a: &P, b: &P) -> Rational {
    let dx = a.0.clone() - b.0.clone();
    let dy = a.1.clone() - b.1.clone();
    dx.clone() * dx + dy.clone() * dy
}

/// Where a point of the square lies when seen across each side, and the
/// map back from that copy into the square.
fn across(sq: Square, side: usize, p: &P) -> P {
    let flip = |y: &Rational| {
        if sq == Square::Klein {
            one() - y.clone()
        } else {
            y.clone()
        }
    };
    match side {
        0 => (p.0.clone() + one(), flip(&p.1)),
        1 => (p.0.clone() - one(), flip(&p.1)),
        2 => (p.0.clone(), p.1.clone() + one()),
        _ => (p.0.clone(), p.1.clone() - one()),
    }
}

fn back(sq: Square, side: usize, p: &P) -> P {
    let flip = |y: &Rational| {
        if sq == Square::Klein {
            one() - y.clone()
        } else {
            y.clone()
        }
    };
    match side {
        0 => (p.0.clone() - one(), flip(&p.1)),
        1 => (p.0.clone() + one(), flip(&p.1)),
        2 => (p.0.clone(), p.1.clone() - one()),
        _ => (p.0.clone(), p.1.clone() + one()),
    }
}

/// The closed polyline cut into straight pieces inside the unit square,
/// choosing the unique shortest route for every step.
pub fn pieces(sq: Square, pts: &[P]) -> Vec<(P, P)> {
    let mut out = Vec::new();
    for k in 0..pts.len() {
        let (v, w) = (&pts[k], &pts[(k + 1) % pts.len()]);
        let mut cands: Vec<(Rational, Option<usize>, P)> = Vec::new();
        if v != w {
            cands.push((dist2(v, w), None, w.clone()));
        }
        for side in 0..4 {
            let w2 = across(sq, side, w);
            cands.push((dist2(v, &w2), Some(side), w2));
        }
        cands.sort_by(|a, b| a.0.cmp(&b.0));
        assert!(cands[0].0 != cands[1].0, "tied route");
        let (_, side, target) = cands.swap_remove(0);
        match side {
            None => out.push((v.clone(), target)),
            Some(s) => {
                // parameter where the step meets the side it leaves through
                let (num, den) = match s {
                    0 => (one() - v.0.clone(), target.0.clone() - v.0.clone()),
                    1 => (-v.0.clone(), target.0.clone() - v.0.clone()),
                    2 => (one() - v.1.clone(), target.1.clone() - v.1.clone()),
                    _ => (-v.1.clone(), target.1.clone() - v.1.clone()),
                };
                let t = num / den;
                let hit = (
                    v.0.clone() + (target.0.clone() - v.0.clone()) * t.clone(),
                    v.1.clone() + (target.1.clone() - v.1.clone()) * t,
                );
                out.push((v.clone(), hit.clone()));
                out.push((back(sq, s, &hit), w.clone()));
            }
        }
    }
    out
}

fn orient(a: &P, b: &P, c: &P) -> Rational {
    (b.0.clone() - a.0.clone()) * (c.1.clone() - a.1.clone())
        - (b.1.clone() - a.1.clone()) * (c.0.clone() - a.0.clone())
}

fn sign(r: &Rational) -> i32 {
    r.cmp(&rat(0, 1)) as i32
}

/// Whether two pieces cross at one interior point. Touching at a shared
/// endpoint is not a crossing; any other contact panics.
fn crosses(a: &(P, P), b: &(P, P)) -> bool {
    let s = [
        sign(&orient(&a.0, &a.1, &b.0)),
        sign(&orient(&a.0, &a.1, &b.1)),
        sign(&orient(&b.0, &b.1, &a.0)),
        sign(&orient(&b.0, &b.1, &a.1)),
    ];
    if s.iter().all(|x| *x != 0) {
        return s[0] != s[1] && s[2] != s[3];
    }
    let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    let collinear = s[0] == 0 && s[1] == 0;
    if shared && !collinear {
        return false;
    }
    let touching = on_segment(a, &b.0) || on_segment(a, &b.1) || on_segment(b, &a.0) || on_segment(b, &a.1);
    assert!(!touching, "non-transverse contact between {a:?} and {b:?}");
    false
}

fn on_segment(s: &(P, P), p: &P) -> bool {
    let within = |a: &Rational, b: &Rational, x: &Rational| a.min(b) <= x && x <= a.max(b);
    within(&s.0 .0, &s.1 .0, &p.0) && within(&s.0 .1, &s.1 .1, &p.1) && sign(&orient(&s.0, &s.1, p)) == 0
}

pub fn crossings_between(a: &[(P, P)], b: &[(P, P)]) -> usize {
    a.iter().map(|x| b.iter().filter(|y| crosses(x, y)).count()).sum()
}

/// Double points of a multicurve: crossings among all its pieces.
pub fn double_points(comps: &[Vec<(P, P)>]) -> usize {
    let all: Vec<&(P, P)> = comps.iter().flatten().collect();
    let mut n = 0;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            n += usize::from(crosses(all[i], all[j]));
        }
    }
    n
}

/// Two representatives of each basis loop `a` and `b`. On the Klein
/// bottle `a` is a one-sided core; a straight closed core always passes
/// through the centre, so it is bent at a generic point instead.
fn basis(sq: Square, copy: i64) -> [Vec<(P, P)>; 2] {
    let half = rat(1, 2);
    let eta = rat(copy, 1009);
    let start = (rat(0, 1), half.clone() + eta.clone());
    let a = match sq {
        Square::Torus => vec![(start, (one(), half.clone() + eta))],
        Square::Klein => {
            let bend = (half.clone() + rat(copy, 1019), half.clone() + rat(copy, 1021));
            vec![(start, bend.clone()), (bend, (one(), half.clone() - eta))]
        }
    };
    let x = half + rat(copy, 1013);
    let b = ((x.clone(), rat(0, 1)), (x, one()));
    [a, vec![b]]
}

/// Intersection numbers of a curve with the basis loops.
pub fn basis_numbers(sq: Square, curve: &[(P, P)]) -> [bool; 2] {
    let [a, b] = basis(sq, 1);
    [
        crossings_between(curve, &a) % 2 == 1,
        crossings_between(curve, &b) % 2 == 1,
    ]
}

/// The intersection form on the basis, from crossings of two independent
/// representatives of each loop.
pub fn form(sq: Square) -> [[bool; 2]; 2] {
    let l1 = basis(sq, 1);
    let l2 = basis(sq, 2);
    let mut q = [[false; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            q[i][j] = crossings_between(&l1[i], &l2[j]) % 2 == 1;
        }
    }
    q
}

/// Solve `q x = v` over the field of two elements.
fn solve(q: [[bool; 2]; 2], v: [bool; 2]) -> [bool; 2] {
    for x in [[false, false], [false, true], [true, false], [true, true]] {
        let qx = [(q[0][0] & x[0]) ^ (q[0][1] & x[1]), (q[1][0] & x[0]) ^ (q[1][1] & x[1])];
        if qx == v {
            return x;
        }
    }
    panic!("singular form")
}

/// `C · F` from homology coordinates: `x_C^T Q x_F` with `Q x_F` read off
/// the basis crossings of `F`.
pub fn pairing(sq: Square, c: &[(P, P)], f: &[Vec<(P, P)>]) -> bool {
    let q = form(sq);
    let xc = solve(q, basis_numbers(sq, c));
    let mut nf = [false, false];
    for comp in f {
        let n = basis_numbers(sq, comp);
        nf = [nf[0] ^ n[0], nf[1] ^ n[1]];
    }
    (xc[0] & nf[0]) ^ (xc[1] & nf[1])
}
