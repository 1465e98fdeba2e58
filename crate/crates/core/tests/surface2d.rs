use std::collections::BTreeSet;

use multipoint::surface2d::{
    classify_surface, glue, orientation_character, validate_complex, AmbientLoop, ComplexIssue, EdgeRef, GlueMode,
    Gluing, LoopStep, Side, SquareComplex, SurfaceError,
};
use proptest::prelude::*;

const SIDES: [Side; 4] = [Side::E, Side::W, Side::N, Side::S];

// Oracle: corner bookkeeping by hand. Corners of a square are
// (x, y) in {0,1}²; sides are parametrized by y (E, W) or x (N, S).

fn corner_at(side: Side, u: u8) -> (u8, u8) {
    match side {
        Side::E => (1, u),
        Side::W => (0, u),
        Side::N => (u, 1),
        Side::S => (u, 0),
    }
}

fn corner_id(square: usize, (x, y): (u8, u8)) -> usize {
    4 * square + (2 * y + x) as usize
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    parent[ra] = rb;
}

/// Vertex count from tracing which corners each gluing identifies.
fn vertex_count(squares: usize, gluings: &[Gluing]) -> usize {
    let mut parent: Vec<usize> = (0..4 * squares).collect();
    for g in gluings {
        for u in 0..2u8 {
            let v = if g.mode == GlueMode::Same { u } else { 1 - u };
            union(
                &mut parent,
                corner_id(g.b.square, corner_at(g.b.side, u)),
                corner_id(g.a.square, corner_at(g.a.side, v)),
            );
        }
    }
    (0..4 * squares).filter(|&i| find(&mut parent, i) == i).count()
}

/// Orientation sign of a gluing: the linear part sends the outward normal
/// of `b` to the inward normal of `a` and the direction of `b` to ± that of
/// `a`; compare the determinants of the two frames.
fn gluing_sign(g: &Gluing) -> i32 {
    let frame = |s: Side| match s {
        Side::E => 1,
        Side::W => -1,
        Side::N => -1,
        Side::S => 1,
    };
    let sigma = if g.mode == GlueMode::Same { 1 } else { -1 };
    // det[-n_a, sigma t_a] = -sigma det[n_a, t_a]
    -sigma * frame(g.a.side) * frame(g.b.side)
}

/// Orientable iff the squares can be given signs that every gluing respects.
fn two_colorable(squares: usize, gluings: &[Gluing]) -> bool {
    let mut sign = vec![0i32; squares];
    for root in 0..squares {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut changed = true;
        while changed {
            changed = false;
            for g in gluings {
                let (i, j, s) = (g.a.square, g.b.square, gluing_sign(g));
                for (x, y) in [(i, j), (j, i)] {
                    if sign[x] != 0 {
                        let want = sign[x] * s;
                        if sign[y] == 0 {
                            sign[y] = want;
                            changed = true;
                        } else if sign[y] != want {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn components(squares: usize, gluings: &[Gluing]) -> usize {
    let mut parent: Vec<usize> = (0..squares).collect();
    for g in gluings {
        union(&mut parent, g.a.square, g.b.square);
    }
    (0..squares).filter(|&i| find(&mut parent, i) == i).count()
}

/// Each square cut into four, numbered `4i + qx + 2qy`. Every side splits
/// in two halves that keep their gluing mode.
fn refine(squares: usize, gluings: &[Gluing]) -> Vec<Gluing> {
    let sub = |i: usize, qx: usize, qy: usize| 4 * i + qx + 2 * qy;
    let half = |e: EdgeRef, h: usize| {
        let i = e.square;
        let s = match e.side {
            Side::E => sub(i, 1, h),
            Side::W => sub(i, 0, h),
            Side::N => sub(i, h, 1),
            Side::S => sub(i, h, 0),
        };
        EdgeRef::new(s, e.side)
    };
    let mut out = Vec::new();
    for i in 0..squares {
        for q in 0..2 {
            out.push(glue(sub(i, 0, q), Side::E, sub(i, 1, q), Side::W, GlueMode::Same));
            out.push(glue(sub(i, q, 0), Side::N, sub(i, q, 1), Side::S, GlueMode::Same));
        }
    }
    for g in gluings {
        for h in 0..2 {
            let k = if g.mode == GlueMode::Same { h } else { 1 - h };
            out.push(Gluing {
                a: half(g.a, k),
                b: half(g.b, h),
                mode: g.mode,
            });
        }
    }
    out
}

fn random_complex(squares: usize, order: &[usize], flips: &[bool]) -> SquareComplex {
    let edges: Vec<EdgeRef> = (0..squares).flat_map(|i| SIDES.map(|s| EdgeRef::new(i, s))).collect();
    let mut pool: Vec<EdgeRef> = Vec::new();
    for &k in order.iter().take(edges.len()) {
        let remaining: Vec<EdgeRef> = edges.iter().copied().filter(|e| !pool.contains(e)).collect();
        pool.push(remaining[k % remaining.len()]);
    }
    let gluings = pool
        .chunks(2)
        .zip(flips)
        .map(|(p, &f)| Gluing {
            a: p[0],
            b: p[1],
            mode: if f { GlueMode::Flip } else { GlueMode::Same },
        })
        .collect();
    SquareComplex::new("random", squares, gluings)
}

#[test]
fn torus_and_klein_bottle() {
    let t = validate_complex(&SquareComplex::torus());
    assert!(t.is_valid());
    assert_eq!((t.euler_characteristic, t.orientable), (0, true));
    let k = validate_complex(&SquareComplex::klein_bottle());
    assert!(k.is_valid());
    assert_eq!((k.euler_characteristic, k.orientable), (0, false));
    for c in [
        SquareComplex::torus(),
        SquareComplex::klein_bottle(),
        SquareComplex::genus_two(),
    ] {
        let r = validate_complex(&c);
        assert_eq!(r.vertices, vertex_count(c.squares(), c.gluings()));
        assert_eq!(r.orientable, two_colorable(c.squares(), c.gluings()));
    }
}

#[test]
fn missing_gluings_leave_boundary() {
    let c = SquareComplex::new("band", 1, vec![glue(0, Side::E, 0, Side::W, GlueMode::Same)]);
    let r = validate_complex(&c);
    assert!(!r.closed);
    let boundary: BTreeSet<EdgeRef> = r
        .issues
        .iter()
        .filter_map(|i| match i {
            ComplexIssue::Boundary(e) => Some(*e),
            _ => None,
        })
        .collect();
    assert_eq!(
        boundary,
        BTreeSet::from([EdgeRef::new(0, Side::N), EdgeRef::new(0, Side::S)])
    );
    assert!(matches!(classify_surface(&c), Err(SurfaceError::Invalid(_))));
}

#[test]
fn structural_mistakes_are_reported() {
    let twice = SquareComplex::new(
        "x",
        1,
        vec![
            glue(0, Side::E, 0, Side::W, GlueMode::Same),
            glue(0, Side::E, 0, Side::N, GlueMode::Same),
        ],
    );
    assert!(validate_complex(&twice)
        .issues
        .contains(&ComplexIssue::MultiplyGlued(EdgeRef::new(0, Side::E))));
    let missing = SquareComplex::new("x", 1, vec![glue(0, Side::E, 3, Side::W, GlueMode::Same)]);
    assert!(matches!(
        validate_complex(&missing).issues[0],
        ComplexIssue::SquareOutOfRange(_)
    ));
    let split = SquareComplex::new(
        "two tori",
        2,
        [0, 1]
            .iter()
            .flat_map(|&i| {
                [
                    glue(i, Side::E, i, Side::W, GlueMode::Same),
                    glue(i, Side::N, i, Side::S, GlueMode::Same),
                ]
            })
            .collect(),
    );
    let r = validate_complex(&split);
    assert!(!r.connected);
    assert!(r.issues.contains(&ComplexIssue::Disconnected { components: 2 }));
    assert!(!validate_complex(&SquareComplex::new("none", 0, vec![])).is_valid());
}

#[test]
fn classification() {
    let c = |s: SquareComplex| {
        let k = classify_surface(&s).unwrap();
        (k.orientable, k.genus_or_crosscaps)
    };
    assert_eq!(c(SquareComplex::torus()), (true, 1));
    assert_eq!(c(SquareComplex::klein_bottle()), (false, 2));
    let g = SquareComplex::genus_two();
    // V - E + F with E = 2F
    let chi = vertex_count(4, g.gluings()) as i64 - 8 + 4;
    assert_eq!(chi, -2);
    assert_eq!(c(g), (true, 2));
    // E ~ W and N ~ S both flipped: the projective plane
    let rp2 = SquareComplex::new(
        "rp2",
        1,
        vec![
            glue(0, Side::E, 0, Side::W, GlueMode::Flip),
            glue(0, Side::N, 0, Side::S, GlueMode::Flip),
        ],
    );
    assert_eq!(c(rp2), (false, 1));
    // E ~ N and W ~ S folded at their shared corners: a sphere
    let sphere = SquareComplex::new(
        "sphere",
        1,
        vec![
            glue(0, Side::E, 0, Side::N, GlueMode::Same),
            glue(0, Side::W, 0, Side::S, GlueMode::Same),
        ],
    );
    assert_eq!(c(sphere), (true, 0));
}

#[test]
fn orientation_character_examples() {
    let t = SquareComplex::torus();
    for exits in [vec![Side::E], vec![Side::N], vec![Side::E, Side::N, Side::W, Side::W]] {
        let lp = AmbientLoop::from_exits(&t, 0, &exits).unwrap();
        assert!(!orientation_character(&t, &lp).unwrap());
    }
    let k = SquareComplex::klein_bottle();
    let core = AmbientLoop::from_exits(&k, 0, &[Side::E]).unwrap();
    assert!(orientation_character(&k, &core).unwrap());
    let twice = AmbientLoop::from_exits(&k, 0, &[Side::E, Side::E]).unwrap();
    assert!(!orientation_character(&k, &twice).unwrap());
    let vertical = AmbientLoop::from_exits(&k, 0, &[Side::N]).unwrap();
    assert!(!orientation_character(&k, &vertical).unwrap());
    assert!(!orientation_character(&k, &AmbientLoop::default()).unwrap());
}

#[test]
fn open_paths_are_not_loops() {
    let g = SquareComplex::genus_two();
    assert_eq!(
        AmbientLoop::from_exits(&g, 0, &[Side::E]).unwrap_err(),
        SurfaceError::LoopNotClosed(0)
    );
    let broken = AmbientLoop {
        steps: vec![LoopStep {
            square: 0,
            entry: Side::N,
            exit: Side::E,
        }],
    };
    let t = SquareComplex::torus();
    assert!(matches!(
        orientation_character(&t, &broken),
        Err(SurfaceError::LoopNotClosed(0))
    ));
}

fn exits() -> impl Strategy<Value = Vec<Side>> {
    prop::collection::vec(prop::sample::select(SIDES.to_vec()), 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn random_complexes_match_the_corner_oracle(
        squares in 1usize..5,
        order in prop::collection::vec(0usize..64, 20),
        flips in prop::collection::vec(any::<bool>(), 10),
    ) {
        let c = random_complex(squares, &order, &flips);
        let r = validate_complex(&c);
        prop_assert!(r.closed);
        prop_assert!(r.surface_condition);
        prop_assert_eq!(r.vertices, vertex_count(squares, c.gluings()));
        prop_assert_eq!(r.euler_characteristic, r.vertices as i64 - squares as i64);
        prop_assert_eq!(r.orientable, two_colorable(squares, c.gluings()));
        prop_assert_eq!(r.connected, components(squares, c.gluings()) == 1);
        prop_assert_eq!(r.is_valid(), r.connected);
    }

    #[test]
    fn refinement_keeps_chi_and_orientability(
        squares in 1usize..4,
        order in prop::collection::vec(0usize..64, 16),
        flips in prop::collection::vec(any::<bool>(), 8),
    ) {
        let c = random_complex(squares, &order, &flips);
        let fine = SquareComplex::new("fine", 4 * squares, refine(squares, c.gluings()));
        let (r, rf) = (validate_complex(&c), validate_complex(&fine));
        prop_assert!(rf.closed && rf.surface_condition);
        prop_assert_eq!(rf.euler_characteristic, r.euler_characteristic);
        prop_assert_eq!(rf.orientable, r.orientable);
        prop_assert_eq!(rf.connected, r.connected);
        if r.is_valid() {
            prop_assert_eq!(classify_surface(&fine).unwrap(), classify_surface(&c).unwrap());
        }
    }

    #[test]
    fn loops_on_the_klein_bottle(a in exits(), b in exits(), seed in any::<u64>()) {
        let k = SquareComplex::klein_bottle();
        let bit = |e: &[Side]| orientation_character(&k, &AmbientLoop::from_exits(&k, 0, e).unwrap()).unwrap();
        let horizontal = a.iter().filter(|s| matches!(s, Side::E | Side::W)).count();
        prop_assert_eq!(bit(&a), horizontal % 2 == 1);
        let ab: Vec<Side> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(bit(&ab), bit(&a) ^ bit(&b));
        let mut shuffled = ab.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, (seed as usize).wrapping_add(i * 7919) % (i + 1));
        }
        prop_assert_eq!(bit(&shuffled), bit(&ab));
    }

    #[test]
    fn closed_loops_on_orientable_complexes_preserve_orientation(e in exits(), start in 0usize..4) {
        let g = SquareComplex::genus_two();
        if let Ok(lp) = AmbientLoop::from_exits(&g, start, &e) {
            prop_assert!(!orientation_character(&g, &lp).unwrap());
        }
        let t = SquareComplex::torus();
        prop_assert!(!orientation_character(&t, &AmbientLoop::from_exits(&t, 0, &e).unwrap()).unwrap());
    }
}
