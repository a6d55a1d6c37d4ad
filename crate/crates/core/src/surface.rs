//! The tile surface: one oriented triangle `(v0, v0bar, vinf)` per half-edge,
//! glued along `<v0, v0bar>` to the reversed side of the paired half-edge and
//! along `<v0bar, vinf>` to the `<v0, vinf>` side of the next half-edge of the
//! boundary cycle.

use crate::graph::{Cell, RibbonGraph};
use crate::perm::DisjointSets;

const V0: usize = 0;
const V0BAR: usize = 1;
const VINF: usize = 2;

/// Sides in boundary order of the model triangle.
const SIDE_A: usize = 0; // v0 -> v0bar
const SIDE_C: usize = 1; // v0bar -> vinf
const SIDE_B: usize = 2; // vinf -> v0

fn side_ends(side: usize) -> (usize, usize) {
    match side {
        SIDE_A => (V0, V0BAR),
        SIDE_C => (V0BAR, VINF),
        _ => (VINF, V0),
    }
}

#[derive(Debug, Clone)]
pub struct SurfaceComplex {
    /// For each triangle, the vertex class of its three corners.
    pub triangles: Vec<[usize; 3]>,
    /// The cell of the graph each vertex class realizes.
    pub vertices: Vec<Cell>,
    /// `glued[3 * e + s] = (triangle, side)` on the other side of side `s` of `e`.
    pub glued: Vec<(usize, usize)>,
    /// The gluing reverses direction along every identified side.
    pub oriented: bool,
    /// Every vertex link is a single circle and every side is glued to
    /// exactly one other side.
    pub closed: bool,
}

impl SurfaceComplex {
    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.glued.len() / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_triangles() as i64
    }

    fn cross(&self, tri: usize, side: usize) -> (usize, usize) {
        self.glued[3 * tri + side]
    }

    /// Permutation of triangles obtained by circling the `v0` corners: cross
    /// the side ending at `v0`, then the side through `v0bar`.
    pub fn monodromy_v0(&self) -> Vec<usize> {
        (0..self.num_triangles())
            .map(|e| {
                let (x, s) = self.cross(e, SIDE_B);
                debug_assert_eq!(s, SIDE_C);
                self.cross(x, SIDE_A).0
            })
            .collect()
    }

    /// Crossing the side `<v0, v0bar>`, i.e. around its midpoint.
    pub fn monodromy_v1(&self) -> Vec<usize> {
        (0..self.num_triangles()).map(|e| self.cross(e, SIDE_A).0).collect()
    }

    /// Circling the `vinf` corner.
    pub fn monodromy_vinf(&self) -> Vec<usize> {
        (0..self.num_triangles()).map(|e| self.cross(e, SIDE_C).0).collect()
    }
}

pub fn surface_complex(g: &RibbonGraph) -> SurfaceComplex {
    let n = g.num_half_edges();
    let s1 = g.sigma1();
    let sinf = g.sigma_inf();
    let mut glued = vec![(usize::MAX, usize::MAX); 3 * n];
    for e in 0..n {
        glued[3 * e + SIDE_A] = (s1[e], SIDE_A);
        glued[3 * e + SIDE_C] = (sinf[e], SIDE_B);
        let prev = g.face_cycle(e);
        let prev = prev[prev.len() - 1];
        glued[3 * e + SIDE_B] = (prev, SIDE_C);
    }

    // side s of e is glued to side t of f with ends matched in reverse
    let mut corners = DisjointSets::new(3 * n);
    for e in 0..n {
        for s in 0..3 {
            let (f, t) = glued[3 * e + s];
            let (a, b) = side_ends(s);
            let (c, d) = side_ends(t);
            corners.union(3 * e + a, 3 * f + d);
            corners.union(3 * e + b, 3 * f + c);
        }
    }
    let mut class_of_root = std::collections::BTreeMap::new();
    let mut vertices = Vec::new();
    let mut triangles = vec![[0usize; 3]; n];
    for e in 0..n {
        for k in 0..3 {
            let root = corners.find(3 * e + k);
            let id = *class_of_root.entry(root).or_insert_with(|| {
                vertices.push(if k == VINF {
                    Cell::Boundary(g.face_of(e))
                } else if k == V0 {
                    Cell::Vertex(g.vertex_of(e))
                } else {
                    Cell::Vertex(g.vertex_of(s1[e]))
                });
                vertices.len() - 1
            });
            triangles[e][k] = id;
        }
    }

    let mut oriented = true;
    let mut closed = true;
    for e in 0..n {
        for s in 0..3 {
            let (f, t) = glued[3 * e + s];
            if glued[3 * f + t] != (e, s) || (f, t) == (e, s) {
                closed = false;
            }
            let (a, b) = side_ends(s);
            let (c, d) = side_ends(t);
            if triangles[e][a] != triangles[f][d] || triangles[e][b] != triangles[f][c] {
                oriented = false;
            }
        }
    }

    // each corner lies on two sides; going around a vertex must return after
    // visiting every corner of the class exactly once
    for e in 0..n {
        for k in 0..3 {
            let class = triangles[e][k];
            let size = triangles.iter().flatten().filter(|&&c| c == class).count();
            let mut steps = 0;
            let (mut tri, mut corner) = (e, k);
            loop {
                // leave through the side that starts at this corner
                let side = (0..3).find(|&s| side_ends(s).0 == corner).unwrap();
                let (f, t) = glued[3 * tri + side];
                corner = side_ends(t).1;
                tri = f;
                steps += 1;
                if (tri, corner) == (e, k) || steps > 3 * n {
                    break;
                }
            }
            if steps != size {
                closed = false;
            }
        }
    }

    SurfaceComplex {
        triangles,
        vertices,
        glued,
        oriented,
        closed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn torus_theta() {
        let s = surface_complex(&corpus::g_t1());
        assert_eq!(s.num_triangles(), 6);
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.closed && s.oriented);
    }

    #[test]
    fn loop_is_sphere() {
        let s = surface_complex(&corpus::g_l());
        assert_eq!(s.num_triangles(), 2);
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.closed && s.oriented);
    }

    #[test]
    fn monodromies_are_the_permutations() {
        for g in corpus::all_graphs() {
            let s = surface_complex(&g);
            assert_eq!(s.monodromy_v0(), g.sigma0());
            assert_eq!(s.monodromy_v1(), g.sigma1());
            assert_eq!(s.monodromy_vinf(), g.sigma_inf());
            assert_eq!(s.euler_characteristic(), g.euler_characteristic());
            assert_eq!(s.num_vertices(), g.num_vertices() + g.num_faces());
        }
    }
}
