//! The permutation model of ribbon graphs and their pointings.
//!
//! A ribbon graph lives on the dense half-edge set `0..2m`. `sigma0` rotates
//! half-edges around their vertex of origin, `sigma1` reverses orientation and
//! `sigma_inf` is determined by `sigma_inf . sigma1 . sigma0 = 1`. Vertices,
//! edges and boundary cycles are the orbits of these three permutations and
//! are named by their minimal half-edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{RibbonError, Result};
use crate::perm;

/// A 0-simplex of the tile surface: a vertex or a boundary cycle, named by the
/// minimal half-edge of its orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "orbit_rep", rename_all = "lowercase")]
pub enum Cell {
    Vertex(usize),
    Boundary(usize),
}

impl Cell {
    pub fn rep(self) -> usize {
        match self {
            Cell::Vertex(r) | Cell::Boundary(r) => r,
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, Cell::Vertex(_))
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, Cell::Boundary(_))
    }

    pub fn kind(self) -> &'static str {
        match self {
            Cell::Vertex(_) => "vertex",
            Cell::Boundary(_) => "boundary",
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Vertex(r) => write!(f, "vertex {r}"),
            Cell::Boundary(r) => write!(f, "boundary {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    sigma0: Vec<usize>,
    sigma1: Vec<usize>,
    sigma_inf: Vec<usize>,
    vertex_rep: Vec<usize>,
    edge_rep: Vec<usize>,
    face_rep: Vec<usize>,
    component: Vec<usize>,
}

impl RibbonGraph {
    /// Builds a graph from the rotation `sigma0` and the pairing `sigma1`.
    pub fn from_permutations(sigma0: Vec<usize>, sigma1: Vec<usize>) -> Result<Self> {
        if sigma0.is_empty() && sigma1.is_empty() {
            return Err(RibbonError::EmptyLabelSet);
        }
        if sigma0.len() != sigma1.len() {
            return Err(RibbonError::InvalidPermutation(format!(
                "sigma0 acts on {} labels but sigma1 on {}",
                sigma0.len(),
                sigma1.len()
            )));
        }
        perm::validate(&sigma0, "sigma0")?;
        for (e, &f) in sigma1.iter().enumerate() {
            if f >= sigma1.len() {
                return Err(RibbonError::InvalidPermutation(format!(
                    "sigma1 maps {e} outside the label set"
                )));
            }
            if f == e {
                return Err(RibbonError::FixedPointInPairing(e));
            }
        }
        for (e, &f) in sigma1.iter().enumerate() {
            if sigma1[f] != e {
                return Err(RibbonError::NotInvolution(e));
            }
        }
        Ok(Self::build_unchecked(sigma0, sigma1))
    }

    /// Builds a graph with the standard pairing `(0 1)(2 3)...`.
    pub fn with_standard_pairing(sigma0: Vec<usize>) -> Result<Self> {
        let n = sigma0.len();
        if n % 2 == 1 {
            return Err(RibbonError::InvalidPermutation(format!(
                "odd number of half-edges ({n})"
            )));
        }
        Self::from_permutations(sigma0, standard_pairing(n))
    }

    /// Builds a graph from cycle lists on `0..half_edges`.
    pub fn from_cycles(
        half_edges: usize,
        sigma0: &[Vec<usize>],
        sigma1: &[Vec<usize>],
    ) -> Result<Self> {
        if half_edges == 0 {
            return Err(RibbonError::EmptyLabelSet);
        }
        let s0 = perm::from_cycles(half_edges, sigma0)?;
        let s1 = perm::from_cycles(half_edges, sigma1)?;
        Self::from_permutations(s0, s1)
    }

    pub(crate) fn build_unchecked(sigma0: Vec<usize>, sigma1: Vec<usize>) -> Self {
        let n = sigma0.len();
        let mut sigma_inf = vec![0; n];
        for e in 0..n {
            // sigma_inf(sigma1(sigma0(e))) = e
            sigma_inf[sigma1[sigma0[e]]] = e;
        }
        let vertex_rep = perm::orbit_reps(&sigma0);
        let edge_rep = perm::orbit_reps(&sigma1);
        let face_rep = perm::orbit_reps(&sigma_inf);
        let mut sets = perm::DisjointSets::new(n);
        for e in 0..n {
            sets.union(e, sigma0[e]);
            sets.union(e, sigma1[e]);
        }
        let component = (0..n).map(|e| sets.find(e)).collect();
        RibbonGraph {
            sigma0,
            sigma1,
            sigma_inf,
            vertex_rep,
            edge_rep,
            face_rep,
            component,
        }
    }

    pub fn num_half_edges(&self) -> usize {
        self.sigma0.len()
    }

    pub fn sigma0(&self) -> &[usize] {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &[usize] {
        &self.sigma1
    }

    pub fn sigma_inf(&self) -> &[usize] {
        &self.sigma_inf
    }

    pub fn has_standard_pairing(&self) -> bool {
        self.sigma1.iter().enumerate().all(|(e, &f)| f == e ^ 1)
    }

    pub fn vertex_of(&self, e: usize) -> usize {
        self.vertex_rep[e]
    }

    pub fn edge_of(&self, e: usize) -> usize {
        self.edge_rep[e]
    }

    pub fn face_of(&self, e: usize) -> usize {
        self.face_rep[e]
    }

    pub fn vertices(&self) -> Vec<usize> {
        reps(&self.vertex_rep)
    }

    /// Edge representatives in increasing order; the position in this list is
    /// the edge index.
    pub fn edges(&self) -> Vec<usize> {
        reps(&self.edge_rep)
    }

    pub fn faces(&self) -> Vec<usize> {
        reps(&self.face_rep)
    }

    pub fn num_vertices(&self) -> usize {
        count_reps(&self.vertex_rep)
    }

    pub fn num_edges(&self) -> usize {
        self.num_half_edges() / 2
    }

    pub fn num_faces(&self) -> usize {
        count_reps(&self.face_rep)
    }

    /// Edge index of the edge containing half-edge `e`.
    pub fn edge_index(&self, e: usize) -> usize {
        let rep = self.edge_rep[e];
        self.edge_rep[..rep].iter().enumerate().filter(|&(i, &r)| r == i).count()
    }

    /// The half-edges `(rep, sigma1(rep))` of the edge with index `idx`.
    pub fn edge_half_edges(&self, idx: usize) -> Result<(usize, usize)> {
        let rep = *self.edges().get(idx).ok_or(RibbonError::UnknownEdge(idx))?;
        Ok((rep, self.sigma1[rep]))
    }

    /// Half-edges of a vertex in rotation order, starting at its representative.
    pub fn vertex_cycle(&self, rep: usize) -> Vec<usize> {
        orbit(&self.sigma0, rep)
    }

    /// Half-edges of a boundary cycle in `sigma_inf` order.
    pub fn face_cycle(&self, rep: usize) -> Vec<usize> {
        orbit(&self.sigma_inf, rep)
    }

    pub fn valency(&self, vertex: usize) -> usize {
        self.vertex_cycle(vertex).len()
    }

    pub fn cell_exists(&self, cell: Cell) -> bool {
        match cell {
            Cell::Vertex(r) => r < self.num_half_edges() && self.vertex_rep[r] == r,
            Cell::Boundary(r) => r < self.num_half_edges() && self.face_rep[r] == r,
        }
    }

    /// Cell containing half-edge `e` of the given kind.
    pub fn cell_of(&self, e: usize, vertex: bool) -> Cell {
        if vertex {
            Cell::Vertex(self.vertex_rep[e])
        } else {
            Cell::Boundary(self.face_rep[e])
        }
    }

    pub fn cell_labels(&self, cell: Cell) -> Vec<usize> {
        match cell {
            Cell::Vertex(r) => self.vertex_cycle(r),
            Cell::Boundary(r) => self.face_cycle(r),
        }
    }

    /// Connected components as sorted label lists, ordered by minimal label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..self.num_half_edges() {
            by_root.entry(self.component[e]).or_default().push(e);
        }
        by_root.into_values().collect()
    }

    /// Minimal label of the component of `e`.
    pub fn component_root(&self, e: usize) -> usize {
        self.component[e]
    }

    pub fn num_components(&self) -> usize {
        count_reps(&self.component)
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// `|X0| - |X1| + |Xinf|` restricted to the component containing `e`.
    pub fn euler_characteristic_of(&self, e: usize) -> i64 {
        let root = self.component[e];
        let mut v = 0i64;
        let mut h = 0i64;
        let mut f = 0i64;
        for x in 0..self.num_half_edges() {
            if self.component[x] != root {
                continue;
            }
            h += 1;
            v += (self.vertex_rep[x] == x) as i64;
            f += (self.face_rep[x] == x) as i64;
        }
        v - h / 2 + f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// Genus of the closed surface of the component containing `e`.
    pub fn genus_of(&self, e: usize) -> usize {
        let chi = self.euler_characteristic_of(e);
        debug_assert!(chi <= 2 && chi % 2 == 0);
        ((2 - chi) / 2) as usize
    }

    /// Genus of a connected graph; for a disconnected graph the sum of the
    /// component genera.
    pub fn genus(&self) -> usize {
        self.components().iter().map(|c| self.genus_of(c[0])).sum()
    }

    /// The dual graph `(X; sigma_inf, sigma1)`. Edge `k` of the dual is edge `k`
    /// of `self`.
    pub fn dual(&self) -> RibbonGraph {
        RibbonGraph::build_unchecked(self.sigma_inf.clone(), self.sigma1.clone())
    }

    /// Every boundary cycle and every vertex of valency at most two.
    pub fn distinguished_points(&self) -> Vec<Cell> {
        let mut out: Vec<Cell> = self
            .vertices()
            .into_iter()
            .filter(|&v| self.valency(v) <= 2)
            .map(Cell::Vertex)
            .collect();
        out.extend(self.faces().into_iter().map(Cell::Boundary));
        out
    }

    /// Relabels the half-edges `kept` (sorted) to `0..kept.len()` preserving
    /// their order; the new rotation and pairing are given on old labels.
    pub(crate) fn relabeled(
        kept: &[usize],
        n_old: usize,
        sigma0_old: impl Fn(usize) -> usize,
        sigma1_old: impl Fn(usize) -> usize,
    ) -> (RibbonGraph, Vec<Option<usize>>) {
        let mut old_to_new = vec![None; n_old];
        for (i, &x) in kept.iter().enumerate() {
            old_to_new[x] = Some(i);
        }
        let map = |x: usize| old_to_new[x].expect("relabel target outside kept set");
        let s0: Vec<usize> = kept.iter().map(|&x| map(sigma0_old(x))).collect();
        let s1: Vec<usize> = kept.iter().map(|&x| map(sigma1_old(x))).collect();
        (RibbonGraph::build_unchecked(s0, s1), old_to_new)
    }

    /// Each connected component as its own graph, with the label map back to
    /// `self`.
    pub fn split_components(&self) -> Vec<(RibbonGraph, Vec<usize>)> {
        let n = self.num_half_edges();
        self.components()
            .into_iter()
            .map(|labels| {
                let (g, _) = RibbonGraph::relabeled(&labels, n, |e| self.sigma0[e], |e| self.sigma1[e]);
                (g, labels)
            })
            .collect()
    }

    /// Applies a relabeling `new = map[old]`.
    pub fn relabel(&self, map: &[usize]) -> RibbonGraph {
        let n = self.num_half_edges();
        let mut s0 = vec![0; n];
        let mut s1 = vec![0; n];
        for e in 0..n {
            s0[map[e]] = map[self.sigma0[e]];
            s1[map[e]] = map[self.sigma1[e]];
        }
        RibbonGraph::build_unchecked(s0, s1)
    }

    /// Relabels so that the pairing becomes `(0 1)(2 3)...`, keeping the
    /// order of edge representatives. Returns the graph and `new = map[old]`.
    pub fn normalize_pairing(&self) -> (RibbonGraph, Vec<usize>) {
        let mut map = vec![0; self.num_half_edges()];
        for (k, rep) in self.edges().into_iter().enumerate() {
            map[rep] = 2 * k;
            map[self.sigma1[rep]] = 2 * k + 1;
        }
        (self.relabel(&map), map)
    }
}

pub fn standard_pairing(n: usize) -> Vec<usize> {
    (0..n).map(|e| e ^ 1).collect()
}

fn reps(rep: &[usize]) -> Vec<usize> {
    rep.iter()
        .enumerate()
        .filter(|&(i, &r)| i == r)
        .map(|(i, _)| i)
        .collect()
}

fn count_reps(rep: &[usize]) -> usize {
    rep.iter().enumerate().filter(|&(i, &r)| i == r).count()
}

fn orbit(map: &[usize], start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut x = map[start];
    while x != start {
        out.push(x);
        x = map[x];
    }
    out
}

/// A pointing `P -> X0 ⊔ Xinf`, keyed by label name.
pub type Pointing = BTreeMap<String, Cell>;

/// A ribbon graph together with a validated pointing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedRibbonGraph {
    graph: RibbonGraph,
    pointing: Pointing,
}

impl PointedRibbonGraph {
    /// Validates injectivity, coverage of distinguished points and negative
    /// Euler characteristic of every punctured component.
    pub fn new(graph: RibbonGraph, pointing: Pointing) -> Result<Self> {
        validate_pointing(&graph, &pointing)?;
        Ok(PointedRibbonGraph { graph, pointing })
    }

    pub(crate) fn new_unchecked(graph: RibbonGraph, pointing: Pointing) -> Self {
        PointedRibbonGraph { graph, pointing }
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn pointing(&self) -> &Pointing {
        &self.pointing
    }

    pub fn into_parts(self) -> (RibbonGraph, Pointing) {
        (self.graph, self.pointing)
    }

    /// Labels mapped to boundary cycles.
    pub fn q_labels(&self) -> BTreeSet<String> {
        self.pointing
            .iter()
            .filter(|(_, c)| c.is_boundary())
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn label_at(&self, cell: Cell) -> Option<&str> {
        self.pointing
            .iter()
            .find(|(_, &c)| c == cell)
            .map(|(p, _)| p.as_str())
    }

    pub fn is_marked_vertex(&self, vertex: usize) -> bool {
        self.pointing.values().any(|&c| c == Cell::Vertex(vertex))
    }

    /// Marked-vertex flag for every half-edge's vertex of origin.
    pub fn marked_vertex_mask(&self) -> Vec<bool> {
        let g = &self.graph;
        let marked: BTreeSet<usize> = self
            .pointing
            .values()
            .filter_map(|c| match c {
                Cell::Vertex(v) => Some(*v),
                _ => None,
            })
            .collect();
        (0..g.num_half_edges())
            .map(|e| marked.contains(&g.vertex_of(e)))
            .collect()
    }

    /// Forgets an unpointed bivalent vertex, merging its two edges.
    pub fn smooth_bivalent(&self, vertex: usize) -> Result<PointedRibbonGraph> {
        if self.is_marked_vertex(vertex) {
            return Err(RibbonError::VertexPointed(vertex));
        }
        let (graph, old_to_new) = smooth_vertex(&self.graph, vertex)?;
        let pointing = self
            .pointing
            .iter()
            .map(|(p, &c)| (p.clone(), transfer_cell(&self.graph, &graph, &old_to_new, c)))
            .collect();
        Ok(PointedRibbonGraph { graph, pointing })
    }
}

/// Maps a cell that survives a relabeling to its new name.
pub(crate) fn transfer_cell(
    old: &RibbonGraph,
    new: &RibbonGraph,
    old_to_new: &[Option<usize>],
    cell: Cell,
) -> Cell {
    let label = old
        .cell_labels(cell)
        .into_iter()
        .find_map(|x| old_to_new[x])
        .expect("cell does not survive");
    new.cell_of(label, cell.is_vertex())
}

/// Removes the bivalent `vertex`, joining its two edges into one.
pub(crate) fn smooth_vertex(
    g: &RibbonGraph,
    vertex: usize,
) -> Result<(RibbonGraph, Vec<Option<usize>>)> {
    if vertex >= g.num_half_edges() || g.vertex_of(vertex) != vertex {
        return Err(RibbonError::UnknownCell(format!("vertex {vertex}")));
    }
    let cyc = g.vertex_cycle(vertex);
    if cyc.len() != 2 {
        return Err(RibbonError::NotBivalent(vertex));
    }
    let (a, b) = (cyc[0], cyc[1]);
    let (ra, rb) = (g.sigma1()[a], g.sigma1()[b]);
    if ra == b {
        return Err(RibbonError::IsolatedLoop(vertex));
    }
    let kept: Vec<usize> = (0..g.num_half_edges()).filter(|&x| x != a && x != b).collect();
    let s1 = |x: usize| {
        if x == ra {
            rb
        } else if x == rb {
            ra
        } else {
            g.sigma1()[x]
        }
    };
    Ok(RibbonGraph::relabeled(
        &kept,
        g.num_half_edges(),
        |x| g.sigma0()[x],
        s1,
    ))
}

fn validate_pointing(g: &RibbonGraph, pointing: &Pointing) -> Result<()> {
    let mut seen: BTreeMap<Cell, &str> = BTreeMap::new();
    for (p, &c) in pointing {
        if !g.cell_exists(c) {
            return Err(RibbonError::UnknownCell(format!("{p} -> {c}")));
        }
        if let Some(q) = seen.insert(c, p) {
            return Err(RibbonError::NotInjective(q.to_string(), p.clone()));
        }
    }
    for d in g.distinguished_points() {
        if !seen.contains_key(&d) {
            return Err(RibbonError::DistinguishedPointUncovered(d.to_string()));
        }
    }
    for comp in g.components() {
        let root = comp[0];
        let n_c = pointing
            .values()
            .filter(|c| g.component_root(c.rep()) == root)
            .count() as i64;
        let g_c = g.genus_of(root) as i64;
        if 2 - 2 * g_c - n_c >= 0 {
            return Err(RibbonError::NonNegativeEulerComponent(root));
        }
    }
    Ok(())
}
