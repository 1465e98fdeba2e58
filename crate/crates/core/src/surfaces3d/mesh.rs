//! Recovery of the source surface from exact edge matching.

use std::collections::BTreeMap;

use super::torus::{segment_key, wrap};
use crate::{Point3, Triangle3, Violation, ViolationKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSlot {
    pub tri: usize,
    pub edge: usize,
}

/// A source edge shared by two triangle sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshEdge {
    pub slots: [EdgeSlot; 2],
    /// Both triangles traverse the edge in the same direction, so their
    /// chosen normals disagree across it.
    pub flip: bool,
}

impl MeshEdge {
    pub fn other(&self, slot: EdgeSlot) -> EdgeSlot {
        if self.slots[0] == slot {
            self.slots[1]
        } else {
            self.slots[0]
        }
    }
}

/// The closed triangulated surface behind an immersion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceMesh {
    pub tri_edges: Vec<[usize; 3]>,
    pub tri_vertices: Vec<[usize; 3]>,
    pub edges: Vec<MeshEdge>,
    /// Vertex positions reduced into `[0,1)³`.
    pub vertex_positions: Vec<Point3>,
    pub component_of: Vec<usize>,
    pub components: usize,
    pub orientable: Vec<bool>,
    pub euler: Vec<i64>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl SourceMesh {
    pub fn recover(tris: &[Triangle3]) -> Result<SourceMesh, Violation> {
        let n = tris.len();
        let mut by_key: BTreeMap<(Point3, Point3), Vec<(EdgeSlot, bool)>> = BTreeMap::new();
        for (t, tri) in tris.iter().enumerate() {
            for e in 0..3 {
                let (key, fwd) = segment_key(tri.vertex(e), tri.vertex(e + 1));
                by_key.entry(key).or_default().push((EdgeSlot { tri: t, edge: e }, fwd));
            }
        }
        let mut edges = Vec::new();
        let mut tri_edges = vec![[usize::MAX; 3]; n];
        for slots in by_key.values() {
            match slots.as_slice() {
                [(a, fa), (b, fb)] => {
                    let id = edges.len();
                    tri_edges[a.tri][a.edge] = id;
                    tri_edges[b.tri][b.edge] = id;
                    edges.push(MeshEdge {
                        slots: [*a, *b],
                        flip: fa == fb,
                    });
                }
                [(a, _)] => {
                    return Err(Violation::new(
                        ViolationKind::OpenMesh,
                        format!("edge {} of triangle {} has no partner", a.edge, a.tri),
                    ))
                }
                many => {
                    return Err(Violation::new(
                        ViolationKind::NonManifold,
                        format!(
                            "edge {} of triangle {} is shared by {} triangles",
                            many[0].0.edge,
                            many[0].0.tri,
                            many.len()
                        ),
                    ))
                }
            }
        }

        // Corners are glued along matched edges; each vertex must be a
        // single class (its link a single cycle).
        let mut corners = Dsu::new(3 * n);
        for e in &edges {
            let [a, b] = e.slots;
            let (a0, a1) = (3 * a.tri + a.edge, 3 * a.tri + (a.edge + 1) % 3);
            let (b0, b1) = (3 * b.tri + b.edge, 3 * b.tri + (b.edge + 1) % 3);
            if e.flip {
                corners.union(a0, b0);
                corners.union(a1, b1);
            } else {
                corners.union(a0, b1);
                corners.union(a1, b0);
            }
        }
        let mut class_of_key: BTreeMap<Point3, usize> = BTreeMap::new();
        let mut vertex_of_class: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vertex_positions = Vec::new();
        let mut tri_vertices = vec![[0usize; 3]; n];
        for (t, tri) in tris.iter().enumerate() {
            #[allow(clippy::needless_range_loop)]
            for k in 0..3 {
                let key = wrap(tri.vertex(k));
                let class = corners.find(3 * t + k);
                if let Some(&c) = class_of_key.get(&key) {
                    if c != class {
                        return Err(Violation::new(
                            ViolationKind::NonManifold,
                            format!("vertex {} of triangle {t} has a disconnected link", k),
                        ));
                    }
                } else {
                    class_of_key.insert(key.clone(), class);
                }
                let next = vertex_of_class.len();
                let v = *vertex_of_class.entry(class).or_insert_with(|| {
                    vertex_positions.push(key);
                    next
                });
                tri_vertices[t][k] = v;
            }
        }

        let mut comps = Dsu::new(n);
        for e in &edges {
            comps.union(e.slots[0].tri, e.slots[1].tri);
        }
        let mut comp_ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut component_of = vec![0; n];
        for (t, slot) in component_of.iter_mut().enumerate() {
            let r = comps.find(t);
            let next = comp_ids.len();
            *slot = *comp_ids.entry(r).or_insert(next);
        }
        let components = comp_ids.len();

        let mut orientable = vec![true; components];
        let mut eps: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if eps[root].is_some() {
                continue;
            }
            eps[root] = Some(false);
            let mut stack = vec![root];
            while let Some(t) = stack.pop() {
                for e in 0..3 {
                    let edge = &edges[tri_edges[t][e]];
                    let o = edge.other(EdgeSlot { tri: t, edge: e });
                    let want = eps[t].unwrap() ^ edge.flip;
                    match eps[o.tri] {
                        None => {
                            eps[o.tri] = Some(want);
                            stack.push(o.tri);
                        }
                        Some(have) if have != want => orientable[component_of[t]] = false,
                        _ => {}
                    }
                }
            }
        }

        let mut euler = vec![0i64; components];
        let mut seen_vertex = vec![false; vertex_positions.len()];
        for (t, vs) in tri_vertices.iter().enumerate() {
            euler[component_of[t]] += 1;
            for &v in vs {
                if !seen_vertex[v] {
                    seen_vertex[v] = true;
                    euler[component_of[t]] += 1;
                }
            }
        }
        for e in &edges {
            euler[component_of[e.slots[0].tri]] -= 1;
        }

        Ok(SourceMesh {
            tri_edges,
            tri_vertices,
            edges,
            vertex_positions,
            component_of,
            components,
            orientable,
            euler,
        })
    }

    pub fn edge_at(&self, tri: usize, edge: usize) -> &MeshEdge {
        &self.edges[self.tri_edges[tri][edge]]
    }

    pub fn flip_at(&self, tri: usize, edge: usize) -> bool {
        self.edge_at(tri, edge).flip
    }
}

/// Where a point given on edge `edge` of `tri` lands on the partner side.
/// Returns the partner slot and the edge parameter measured from the
/// partner's edge start.
pub fn across_edge(mesh: &SourceMesh, tri: usize, edge: usize, u: &crate::Rational) -> (EdgeSlot, crate::Rational) {
    let e = mesh.edge_at(tri, edge);
    let other = e.other(EdgeSlot { tri, edge });
    let v = if e.flip {
        u.clone()
    } else {
        crate::rat(1, 1) - u.clone()
    };
    (other, v)
}
