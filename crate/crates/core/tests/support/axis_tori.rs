//! Closed-form answers for scenes made of flat tori, each parallel to two
//! coordinate axes. Only the normal axis of each torus matters.

/// Counts for a scene whose tori have the given normal axes.
#[derive(Debug, PartialEq, Eq)]
pub struct Expected {
    pub circles: usize,
    pub triple_points: usize,
    pub lhs_r2_crossings: usize,
    /// Per circle, the axis it runs along.
    pub circle_axes: Vec<usize>,
}

pub fn expected(axes: &[usize]) -> Expected {
    let mut circle_axes = Vec::new();
    for i in 0..axes.len() {
        for j in i + 1..axes.len() {
            if axes[i] != axes[j] {
                circle_axes.push(3 - axes[i] - axes[j]);
            }
        }
    }
    let mut triple_points = 0;
    for i in 0..axes.len() {
        for j in i + 1..axes.len() {
            for k in j + 1..axes.len() {
                let mut a = [axes[i], axes[j], axes[k]];
                a.sort();
                if a == [0, 1, 2] {
                    triple_points += 1;
                }
            }
        }
    }
    let lhs_r2_crossings = circle_axes
        .iter()
        .map(|&c| axes.iter().filter(|&&a| a == c).count())
        .sum();
    Expected {
        circles: circle_axes.len(),
        triple_points,
        lhs_r2_crossings,
        circle_axes,
    }
}

/// A loop running along `dir` on some torus crosses the translate of each
/// torus normal to `dir` once, and each preimage line of those tori once.
pub fn cycle_crossings(axes: &[usize], dir: usize) -> usize {
    axes.iter().filter(|&&a| a == dir).count()
}

/// Unit vector as a bit triple.
pub fn axis_bits(a: usize) -> [bool; 3] {
    let mut b = [false; 3];
    b[a] = true;
    b
}

/// Mod-2 class of the plane spanned by two integer vectors.
pub fn plane_class(u: [i64; 3], v: [i64; 3]) -> [bool; 3] {
    let c = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    [c[0] % 2 != 0, c[1] % 2 != 0, c[2] % 2 != 0]
}
