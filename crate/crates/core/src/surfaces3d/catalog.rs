//! Triangulated flat tori and their standard cycles.

use super::cycle::{MeshPoint, SourceCycle};
use crate::{rat, Point3, Rational, Triangle3};

/// A flat torus parallel to two coordinate axes, triangulated by an
/// `n × m` grid, then mapped by an integer matrix and translated.
///
/// The in-plane axes are `(axis+1)%3` (parameter `s`) and `(axis+2)%3`
/// (parameter `t`). Cell `(i, j)` owns triangles `2(j·n+i)` and
/// `2(j·n+i)+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    pub axis: usize,
    pub level: Rational,
    pub origin: [Rational; 2],
    pub grid: (usize, usize),
    pub antidiagonal: bool,
    /// Rows of a unimodular integer matrix applied before translating.
    pub shear: [[i64; 3]; 3],
    pub translation: Point3,
}

impl TorusSpec {
    pub fn coordinate(axis: usize, level: Rational, origin: [Rational; 2], grid: (usize, usize)) -> Self {
        TorusSpec {
            axis,
            level,
            origin,
            grid,
            antidiagonal: false,
            shear: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            translation: Point3::zero(),
        }
    }

    pub fn antidiagonal(mut self) -> Self {
        self.antidiagonal = true;
        self
    }

    pub fn sheared(mut self, shear: [[i64; 3]; 3]) -> Self {
        self.shear = shear;
        self
    }

    pub fn translated(mut self, by: Point3) -> Self {
        self.translation = by;
        self
    }

    fn point(&self, s: &Rational, t: &Rational) -> Point3 {
        let mut c = [rat(0, 1), rat(0, 1), rat(0, 1)];
        c[self.axis] = self.level.clone();
        c[(self.axis + 1) % 3] = self.origin[0].clone() + s.clone();
        c[(self.axis + 2) % 3] = self.origin[1].clone() + t.clone();
        let mut out = [rat(0, 1), rat(0, 1), rat(0, 1)];
        for (r, row) in self.shear.iter().enumerate() {
            for (k, &m) in row.iter().enumerate() {
                out[r] += c[k].clone() * rat(m, 1);
            }
        }
        Point3::from_array(out).add(&self.translation)
    }

    fn grid_point(&self, i: usize, j: usize) -> Point3 {
        let (n, m) = self.grid;
        self.point(&rat(i as i64, n as i64), &rat(j as i64, m as i64))
    }

    pub fn triangle_count(&self) -> usize {
        2 * self.grid.0 * self.grid.1
    }

    pub fn triangles(&self) -> Vec<Triangle3> {
        let (n, m) = self.grid;
        let mut out = Vec::with_capacity(self.triangle_count());
        for j in 0..m {
            for i in 0..n {
                let p00 = self.grid_point(i, j);
                let p10 = self.grid_point(i + 1, j);
                let p01 = self.grid_point(i, j + 1);
                let p11 = self.grid_point(i + 1, j + 1);
                let (t0, t1) = if self.antidiagonal {
                    ([p00, p10.clone(), p01.clone()], [p10, p11, p01])
                } else {
                    ([p00.clone(), p10, p11.clone()], [p00, p11, p01])
                };
                for [a, b, c] in [t0, t1] {
                    out.push(Triangle3::new(a, b, c).expect("grid cells are nondegenerate"));
                }
            }
        }
        out
    }

    fn cell(&self, i: usize, j: usize, offset: usize) -> usize {
        offset + 2 * (j * self.grid.0 + i)
    }

    fn split(x: &Rational, cells: usize) -> Option<(usize, Rational)> {
        let scaled = x.clone() * rat(cells as i64, 1);
        let k = scaled.floor();
        let frac = scaled - k.clone();
        let k: i64 = k.to_integer().try_into().ok()?;
        if frac == rat(0, 1) || k < 0 || k as usize >= cells {
            return None;
        }
        Some((k as usize, frac))
    }

    /// The loop `t = t0` running once around in the `s` direction, with
    /// triangle indices offset by `offset`. `t0` must lie in `(0, 1)` off
    /// the grid lines.
    pub fn s_cycle(&self, name: &str, offset: usize, t0: &Rational) -> Option<SourceCycle> {
        let (n, m) = self.grid;
        let (j, v) = Self::split(t0, m)?;
        let half = rat(1, 2);
        let one = rat(1, 1);
        let mut points = Vec::with_capacity(4 * n);
        for i in 0..n {
            let c = self.cell(i, j, offset);
            let next = self.cell((i + 1) % n, j, offset);
            if self.antidiagonal {
                points.push(MeshPoint::new(c, (one.clone() - v.clone()) * half.clone(), v.clone()));
                points.push(MeshPoint::new(c + 1, rat(0, 1), v.clone()));
                points.push(MeshPoint::new(
                    c + 1,
                    v.clone() * half.clone(),
                    v.clone() * half.clone(),
                ));
                points.push(MeshPoint::new(next, rat(0, 1), v.clone()));
            } else {
                points.push(MeshPoint::new(
                    c + 1,
                    v.clone() * half.clone(),
                    v.clone() * half.clone(),
                ));
                points.push(MeshPoint::new(c, rat(0, 1), v.clone()));
                points.push(MeshPoint::new(c, (one.clone() - v.clone()) * half.clone(), v.clone()));
                points.push(MeshPoint::new(next + 1, rat(0, 1), v.clone()));
            }
        }
        Some(SourceCycle {
            name: name.to_string(),
            points,
        })
    }

    /// The loop `s = s0` running once around in the `t` direction.
    pub fn t_cycle(&self, name: &str, offset: usize, s0: &Rational) -> Option<SourceCycle> {
        let (n, m) = self.grid;
        let (i, u) = Self::split(s0, n)?;
        let half = rat(1, 2);
        let one = rat(1, 1);
        let mut points = Vec::with_capacity(4 * m);
        for j in 0..m {
            let c = self.cell(i, j, offset);
            let next = self.cell(i, (j + 1) % m, offset);
            if self.antidiagonal {
                points.push(MeshPoint::new(c, u.clone(), (one.clone() - u.clone()) * half.clone()));
                points.push(MeshPoint::new(c + 1, rat(0, 1), one.clone() - u.clone()));
                points.push(MeshPoint::new(c + 1, u.clone() * half.clone(), one.clone() - u.clone()));
                points.push(MeshPoint::new(next, u.clone(), rat(0, 1)));
            } else {
                points.push(MeshPoint::new(c, u.clone() * half.clone(), u.clone() * half.clone()));
                points.push(MeshPoint::new(c + 1, u.clone(), rat(0, 1)));
                points.push(MeshPoint::new(
                    c + 1,
                    u.clone(),
                    (one.clone() - u.clone()) * half.clone(),
                ));
                points.push(MeshPoint::new(next, u.clone(), rat(0, 1)));
            }
        }
        Some(SourceCycle {
            name: name.to_string(),
            points,
        })
    }
}

/// The three coordinate tori `z = 1/4`, `y = 1/4`, `x = 1/4`, each a
/// single grid cell, meeting in one triple point.
pub fn three_coordinate_tori() -> Vec<TorusSpec> {
    vec![
        TorusSpec::coordinate(2, rat(1, 4), [rat(1, 8), rat(3, 8)], (1, 1)),
        TorusSpec::coordinate(1, rat(1, 4), [rat(1, 8), rat(5, 8)], (1, 1)),
        TorusSpec::coordinate(0, rat(1, 4), [rat(5, 8), rat(5, 8)], (1, 1)).antidiagonal(),
    ]
}

/// An immersed Klein bottle: a figure-eight cross-section swept once around
/// the z-circle while turning by half a revolution in four steps, so that
/// the top is glued to the bottom with the two lobes exchanged.
///
/// Triangles `8k + 2e` and `8k + 2e + 1` form the band over edge `e` of the
/// figure-eight between steps `k` and `k + 1`.
pub fn swept_klein_bottle() -> Vec<Triangle3> {
    // Directions at multiples of 45 degrees, scaled to about 1/8.
    let dir = |k: i64| -> (Rational, Rational) {
        let (r, q, z) = (rat(7, 40), rat(1, 8), rat(0, 1));
        match k.rem_euclid(8) {
            0 => (r, z),
            1 => (q.clone(), q),
            2 => (z, r),
            3 => (-q.clone(), q),
            4 => (-r, z),
            5 => (-q.clone(), -q),
            6 => (z, -r),
            _ => (q.clone(), -q),
        }
    };
    let start = [5i64, 1, 7, 3];
    let heights = [rat(0, 1), rat(1, 97), rat(1, 16), rat(1, 13)];
    let mut levels: Vec<Vec<Point3>> = (0..4i64)
        .map(|k| {
            (0..4)
                .map(|v| {
                    let (dx, dy) = dir(start[v] + k);
                    let j = rat(1, 89 + 2 * (v as i64 + 4 * k));
                    Point3::new(
                        rat(1, 2) + dx + j.clone(),
                        rat(1, 2) + dy + j * rat(2, 3),
                        rat(k, 4) + heights[v].clone(),
                    )
                })
                .collect()
        })
        .collect();
    let up = Point3::new(rat(0, 1), rat(0, 1), rat(1, 1));
    let top = [1, 0, 3, 2].iter().map(|&i| levels[0][i].add(&up)).collect();
    levels.push(top);
    let mut out = Vec::with_capacity(32);
    for k in 0..4 {
        for e in 0..4 {
            let (x, y) = (e, (e + 1) % 4);
            let (a, b, c, d) = (&levels[k][x], &levels[k][y], &levels[k + 1][y], &levels[k + 1][x]);
            out.push(Triangle3::new(a.clone(), b.clone(), c.clone()).expect("nondegenerate"));
            out.push(Triangle3::new(a.clone(), c.clone(), d.clone()).expect("nondegenerate"));
        }
    }
    out
}

/// The loop of [`swept_klein_bottle`] running once around through the band
/// over the first edge.
pub fn swept_klein_core(name: &str, offset: usize) -> SourceCycle {
    let mut points = Vec::with_capacity(16);
    for k in 0..4usize {
        points.push(MeshPoint::new(offset + 8 * k, rat(1, 2), rat(1, 4)));
        points.push(MeshPoint::new(offset + 8 * k + 1, rat(1, 2), rat(0, 1)));
        points.push(MeshPoint::new(offset + 8 * k + 1, rat(1, 4), rat(1, 2)));
        points.push(MeshPoint::new(offset + 8 * ((k + 1) % 4), rat(1, 2), rat(0, 1)));
    }
    SourceCycle {
        name: name.to_string(),
        points,
    }
}
