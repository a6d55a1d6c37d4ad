//! Edge subsets of a pointed ribbon graph: the subgraph and quotient ribbon
//! structures they induce, negligibility, semistable and stable cores, the
//! exceptional correspondence and the pseudosurface obtained by collapsing.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{RibbonError, Result};
use crate::graph::{Cell, PointedRibbonGraph, Pointing, RibbonGraph};
use crate::perm::DisjointSets;

/// A set of edges, by edge index (position in `RibbonGraph::edges`).
pub type EdgeSet = BTreeSet<usize>;

/// Edge index of every half-edge.
pub fn edge_indices(g: &RibbonGraph) -> Vec<usize> {
    let mut idx = vec![0; g.num_half_edges()];
    for (k, rep) in g.edges().into_iter().enumerate() {
        idx[rep] = k;
        idx[g.sigma1()[rep]] = k;
    }
    idx
}

/// Half-edge membership mask of an edge set.
pub fn edge_mask(g: &RibbonGraph, z: &EdgeSet) -> Result<Vec<bool>> {
    let edges = g.edges();
    let mut mask = vec![false; g.num_half_edges()];
    for &k in z {
        let rep = *edges.get(k).ok_or(RibbonError::UnknownEdge(k))?;
        mask[rep] = true;
        mask[g.sigma1()[rep]] = true;
    }
    Ok(mask)
}

pub fn mask_to_edges(g: &RibbonGraph, mask: &[bool]) -> EdgeSet {
    let idx = edge_indices(g);
    (0..g.num_half_edges()).filter(|&e| mask[e]).map(|e| idx[e]).collect()
}

pub fn all_edges(g: &RibbonGraph) -> EdgeSet {
    (0..g.num_edges()).collect()
}

/// `G_Z` with its induced ribbon structure, relabeled densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: RibbonGraph,
    /// Host half-edge of every subgraph half-edge.
    pub to_host: Vec<usize>,
    pub from_host: Vec<Option<usize>>,
}

pub(crate) fn subgraph_of_mask(g: &RibbonGraph, mask: &[bool]) -> Subgraph {
    let kept: Vec<usize> = (0..g.num_half_edges()).filter(|&e| mask[e]).collect();
    let s0 = |e: usize| {
        let mut x = g.sigma0()[e];
        while !mask[x] {
            x = g.sigma0()[x];
        }
        x
    };
    let (graph, from_host) =
        RibbonGraph::relabeled(&kept, g.num_half_edges(), s0, |e| g.sigma1()[e]);
    Subgraph {
        graph,
        to_host: kept,
        from_host,
    }
}

/// The ribbon graph `G_Z`: rotation is the first `sigma0`-iterate inside `Z`.
pub fn subgraph_ribbon(g: &RibbonGraph, z: &EdgeSet) -> Result<Subgraph> {
    if z.is_empty() {
        return Err(RibbonError::EmptySubset);
    }
    let mask = edge_mask(g, z)?;
    Ok(subgraph_of_mask(g, &mask))
}

/// `G/G_Z` before any pointing is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub graph: RibbonGraph,
    pub to_host: Vec<usize>,
    pub from_host: Vec<Option<usize>>,
    /// For each quotient vertex (by representative), the host half-edges of
    /// `Z` passed over while walking around it.
    pub skipped: BTreeMap<usize, Vec<usize>>,
}

impl QuotientGraph {
    pub fn vertex_of_host(&self, e: usize) -> Option<usize> {
        self.from_host[e].map(|x| self.graph.vertex_of(x))
    }
}

pub(crate) fn quotient_of_mask(g: &RibbonGraph, mask: &[bool]) -> Result<QuotientGraph> {
    let n = g.num_half_edges();
    let kept: Vec<usize> = (0..n).filter(|&e| !mask[e]).collect();
    if kept.is_empty() {
        return Err(RibbonError::FullSubset);
    }
    let sinf = g.sigma_inf();
    let sinf_inv = crate::perm::inverse(sinf);
    // sigma0' = sigma1 . (sigma_inf')^-1
    let s0 = |e: usize| {
        let mut x = sinf_inv[e];
        while mask[x] {
            x = sinf_inv[x];
        }
        g.sigma1()[x]
    };
    let (graph, from_host) = RibbonGraph::relabeled(&kept, n, s0, |e| g.sigma1()[e]);
    let mut skipped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &e) in kept.iter().enumerate() {
        let entry = skipped.entry(graph.vertex_of(i)).or_default();
        let mut x = sinf_inv[e];
        while mask[x] {
            entry.push(x);
            x = sinf_inv[x];
        }
    }
    for v in skipped.values_mut() {
        v.sort_unstable();
    }
    Ok(QuotientGraph {
        graph,
        to_host: kept,
        from_host,
        skipped,
    })
}

/// Component root (minimal host label) of every half-edge of `Z`; `None`
/// outside `Z`.
pub(crate) fn z_components(g: &RibbonGraph, mask: &[bool]) -> Vec<Option<usize>> {
    let n = g.num_half_edges();
    let mut sets = DisjointSets::new(n);
    let mut first_at_vertex: BTreeMap<usize, usize> = BTreeMap::new();
    for e in 0..n {
        if !mask[e] {
            continue;
        }
        sets.union(e, g.sigma1()[e]);
        let v = g.vertex_of(e);
        match first_at_vertex.get(&v) {
            Some(&f) => sets.union(e, f),
            None => {
                first_at_vertex.insert(v, e);
            }
        }
    }
    (0..n).map(|e| mask[e].then(|| sets.find(e))).collect()
}

/// Where the cells of a collapsed component go.
fn image_vertices(q: &QuotientGraph, comp: &[Option<usize>]) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&w, skipped) in &q.skipped {
        if let Some(&x) = skipped.first() {
            out.entry(comp[x].unwrap()).or_default().push(w);
        }
    }
    out
}

/// The component of `Z` a cell lies in, if the cell disappears in the
/// quotient; `Ok(None)` if it survives.
fn collapsed_component(g: &RibbonGraph, mask: &[bool], comp: &[Option<usize>], cell: Cell) -> Option<usize> {
    let labels = g.cell_labels(cell);
    match cell {
        Cell::Vertex(_) => labels.iter().find_map(|&e| comp[e]),
        Cell::Boundary(_) => {
            if labels.iter().all(|&e| mask[e]) {
                comp[labels[0]]
            } else {
                None
            }
        }
    }
}

fn surviving_cell(g: &RibbonGraph, q: &QuotientGraph, cell: Cell) -> Cell {
    let e = g
        .cell_labels(cell)
        .into_iter()
        .find_map(|x| q.from_host[x])
        .expect("surviving cell has a surviving half-edge");
    q.graph.cell_of(e, cell.is_vertex())
}

fn insert_label(pointing: &mut Pointing, p: &str, cell: Cell) -> Result<()> {
    if let Some((other, _)) = pointing.iter().find(|(_, &c)| c == cell) {
        return Err(RibbonError::PointingCollision(other.clone(), p.to_string()));
    }
    pointing.insert(p.to_string(), cell);
    Ok(())
}

/// `G/G_Z` together with the transferred pointing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub quotient: QuotientGraph,
    /// Labels that land on a cell of the quotient.
    pub pointing: Pointing,
    /// Labels inside a collapsed component that has no single image vertex.
    pub unplaced: Vec<String>,
}

impl Quotient {
    pub fn graph(&self) -> &RibbonGraph {
        &self.quotient.graph
    }

    /// The quotient as a validated pointed ribbon graph.
    pub fn pointed(&self) -> Result<PointedRibbonGraph> {
        PointedRibbonGraph::new(self.quotient.graph.clone(), self.pointing.clone())
    }
}

/// `G/G_Z`: boundary cycles skip the half-edges of `Z`. Labels on surviving
/// cells keep their cells; labels inside a collapsed component move to its
/// image vertex when there is exactly one.
pub fn quotient_ribbon(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<Quotient> {
    let g = gp.graph();
    let mask = edge_mask(g, z)?;
    let quotient = quotient_of_mask(g, &mask)?;
    let comp = z_components(g, &mask);
    let images = image_vertices(&quotient, &comp);
    let mut pointing = Pointing::new();
    let mut unplaced = Vec::new();
    for (p, &cell) in gp.pointing() {
        match collapsed_component(g, &mask, &comp, cell) {
            None => insert_label(&mut pointing, p, surviving_cell(g, &quotient, cell))?,
            Some(root) => match images.get(&root).map(|v| v.as_slice()) {
                Some([w]) => insert_label(&mut pointing, p, Cell::Vertex(*w))?,
                _ => unplaced.push(p.clone()),
            },
        }
    }
    Ok(Quotient {
        quotient,
        pointing,
        unplaced,
    })
}

/// Vertex/edge/marked counts of each component of `G_Z`.
struct ComponentShape {
    labels: Vec<usize>,
    vertices: BTreeSet<usize>,
    marked: usize,
    all_bivalent: bool,
}

fn component_shapes(gp: &PointedRibbonGraph, mask: &[bool]) -> Vec<ComponentShape> {
    let g = gp.graph();
    let comp = z_components(g, mask);
    let marked = gp.marked_vertex_mask();
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..g.num_half_edges() {
        if let Some(r) = comp[e] {
            by_root.entry(r).or_default().push(e);
        }
    }
    by_root
        .into_values()
        .map(|labels| {
            let mut valency: BTreeMap<usize, usize> = BTreeMap::new();
            for &e in &labels {
                *valency.entry(g.vertex_of(e)).or_default() += 1;
            }
            let vertices: BTreeSet<usize> = valency.keys().copied().collect();
            let marked = vertices.iter().filter(|&&v| marked[v]).count();
            let all_bivalent = valency.values().all(|&k| k == 2);
            ComponentShape {
                labels,
                vertices,
                marked,
                all_bivalent,
            }
        })
        .collect()
}

impl ComponentShape {
    fn num_edges(&self) -> usize {
        self.labels.len() / 2
    }

    fn is_tree(&self) -> bool {
        self.num_edges() + 1 == self.vertices.len()
    }

    fn is_homotopy_circle(&self) -> bool {
        self.num_edges() == self.vertices.len()
    }

    fn contains_face_of(&self, g: &RibbonGraph) -> bool {
        let set: BTreeSet<usize> = self.labels.iter().copied().collect();
        self.labels
            .iter()
            .filter(|&&e| g.face_of(e) == e)
            .any(|&f| g.face_cycle(f).iter().all(|x| set.contains(x)))
    }

    fn is_negligible(&self, g: &RibbonGraph) -> bool {
        (self.is_tree() && self.marked <= 1)
            || (self.is_homotopy_circle() && self.marked == 0 && self.contains_face_of(g))
    }

    fn is_unmarked_topological_circle(&self) -> bool {
        self.is_homotopy_circle() && self.all_bivalent && self.marked == 0
    }
}

pub(crate) fn is_negligible_mask(gp: &PointedRibbonGraph, mask: &[bool]) -> bool {
    component_shapes(gp, mask)
        .iter()
        .all(|c| c.is_negligible(gp.graph()))
}

/// Every component of `G_Z` is a tree with at most one marked vertex, or an
/// unmarked homotopy circle containing a whole boundary cycle of `G`.
pub fn is_negligible(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<bool> {
    let mask = edge_mask(gp.graph(), z)?;
    Ok(is_negligible_mask(gp, &mask))
}

pub(crate) fn semistable_mask(gp: &PointedRibbonGraph, mask: &[bool]) -> Vec<bool> {
    let g = gp.graph();
    let marked = gp.marked_vertex_mask();
    let mut mask = mask.to_vec();
    loop {
        let mut pruned = true;
        while pruned {
            pruned = false;
            let mut valency = vec![0usize; g.num_half_edges()];
            for e in 0..g.num_half_edges() {
                if mask[e] {
                    valency[g.vertex_of(e)] += 1;
                }
            }
            for e in 0..g.num_half_edges() {
                if mask[e] && valency[g.vertex_of(e)] == 1 && !marked[e] {
                    let f = g.sigma1()[e];
                    mask[e] = false;
                    mask[f] = false;
                    valency[g.vertex_of(e)] -= 1;
                    valency[g.vertex_of(f)] -= 1;
                    pruned = true;
                }
            }
        }
        let mut removed = false;
        for c in component_shapes(gp, &mask) {
            if c.is_negligible(g) {
                for &e in &c.labels {
                    mask[e] = false;
                }
                removed = true;
            }
        }
        if !removed {
            return mask;
        }
    }
}

pub(crate) fn stable_mask(gp: &PointedRibbonGraph, mask: &[bool]) -> Vec<bool> {
    let mut sst = semistable_mask(gp, mask);
    for c in component_shapes(gp, &sst) {
        if c.is_unmarked_topological_circle() {
            for &e in &c.labels {
                sst[e] = false;
            }
        }
    }
    sst
}

/// The largest `Z' ⊆ Z` without negligible components whose univalent
/// vertices are all marked.
pub fn semistable_core(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<EdgeSet> {
    let g = gp.graph();
    let mask = edge_mask(g, z)?;
    Ok(mask_to_edges(g, &semistable_mask(gp, &mask)))
}

/// The semistable core without its unmarked topological circles.
pub fn stable_core(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<EdgeSet> {
    let g = gp.graph();
    let mask = edge_mask(g, z)?;
    Ok(mask_to_edges(g, &stable_mask(gp, &mask)))
}

/// One exceptional vertex of `G/G_Z` and its exceptional boundary cycle of
/// `G_{Z^sst}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalPair {
    /// Representative of the vertex in the quotient's labels.
    pub vertex: usize,
    /// Host half-edges of the boundary cycle, in cyclic order.
    pub boundary: Vec<usize>,
    /// Root (minimal host label) of the `Z^sst` component carrying it.
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalData {
    pub semistable: EdgeSet,
    pub stable: EdgeSet,
    pub pairs: Vec<ExceptionalPair>,
    /// Every boundary cycle of `G_{Z^sst}` that is not one of `G`, as host
    /// labels starting from their minimum.
    pub exceptional_boundaries: Vec<Vec<usize>>,
}

impl ExceptionalData {
    /// Each exceptional boundary cycle is matched exactly once.
    pub fn is_bijective(&self) -> bool {
        let matched: BTreeSet<usize> = self.pairs.iter().map(|p| p.boundary[0]).collect();
        let all: BTreeSet<usize> = self.exceptional_boundaries.iter().map(|b| b[0]).collect();
        matched.len() == self.pairs.len() && matched == all
    }
}

/// Exceptional data from a quotient and a semistable mask.
pub(crate) fn exceptional_pairs(
    g: &RibbonGraph,
    q: &QuotientGraph,
    sst: &[bool],
) -> (Vec<ExceptionalPair>, Vec<Vec<usize>>) {
    if !sst.iter().any(|&b| b) {
        return (Vec::new(), Vec::new());
    }
    let sub = subgraph_of_mask(g, sst);
    let host_cycle = |f: usize| -> Vec<usize> {
        let mut cyc: Vec<usize> = sub.graph.face_cycle(f).iter().map(|&x| sub.to_host[x]).collect();
        let k = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap();
        cyc.rotate_left(k);
        cyc
    };
    let exceptional: Vec<Vec<usize>> = sub
        .graph
        .faces()
        .into_iter()
        .map(host_cycle)
        .filter(|cyc| {
            let f = g.face_of(cyc[0]);
            !(g.face_cycle(f).len() == cyc.len() && cyc.iter().all(|&x| g.face_of(x) == f))
        })
        .collect();
    let mut pairs = Vec::new();
    for (&w, skipped) in &q.skipped {
        let inside: Vec<usize> = skipped.iter().copied().filter(|&x| sst[x]).collect();
        if let Some(&x) = inside.first() {
            let f = sub.graph.face_of(sub.from_host[x].unwrap());
            pairs.push(ExceptionalPair {
                vertex: w,
                boundary: host_cycle(f),
                component: sub.to_host[sub.graph.component_root(f)],
            });
        }
    }
    (pairs, exceptional)
}

/// Exceptional vertices of `G/G_Z`, exceptional boundary cycles of
/// `G_{Z^sst}` and the correspondence between them.
pub fn exceptional_sets(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<ExceptionalData> {
    let g = gp.graph();
    let mask = edge_mask(g, z)?;
    let q = quotient_of_mask(g, &mask)?;
    let sst = semistable_mask(gp, &mask);
    let st = stable_mask(gp, &mask);
    let (pairs, exceptional_boundaries) = exceptional_pairs(g, &q, &sst);
    Ok(ExceptionalData {
        semistable: mask_to_edges(g, &sst),
        stable: mask_to_edges(g, &st),
        pairs,
        exceptional_boundaries,
    })
}

/// Collapses a single negligible edge.
pub fn collapse_edge(gp: &PointedRibbonGraph, s: usize) -> Result<PointedRibbonGraph> {
    let z: EdgeSet = [s].into_iter().collect();
    if !is_negligible(gp, &z)? {
        return Err(RibbonError::NotNegligible);
    }
    quotient_ribbon(gp, &z)?.pointed()
}

/// Points of the normalization that are glued to one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentificationClass {
    /// Root (minimal host label) of the `Z^sst` component.
    pub component: usize,
    /// Exceptional vertices of the quotient, by representative.
    pub vertices: Vec<usize>,
    pub epsilon: usize,
    /// Labels of `P` sitting at the identified point.
    pub labels: Vec<String>,
}

impl IdentificationClass {
    pub fn branches(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudosurfaceData {
    pub normalization: QuotientGraph,
    /// Labels sitting on cells of the normalization.
    pub pointing: Pointing,
    pub classes: Vec<IdentificationClass>,
    /// Labels on boundary cycles that survive the collapse.
    pub q: BTreeSet<String>,
    /// Genus of the host graph.
    pub host_genus: usize,
}

impl PseudosurfaceData {
    pub fn epsilon_total(&self) -> usize {
        self.classes.iter().map(|c| c.epsilon).sum()
    }
}

/// `S(G)_Z`: the quotient `S(G/G_Z)` with the exceptional vertices of each
/// `Z^sst` component identified and weighted by that component's genus.
pub fn pseudosurface(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<PseudosurfaceData> {
    let g = gp.graph();
    let mask = edge_mask(g, z)?;
    let q = quotient_of_mask(g, &mask)?;
    let sst = semistable_mask(gp, &mask);
    let comp = z_components(g, &mask);
    let images = image_vertices(&q, &comp);
    let (pairs, _) = exceptional_pairs(g, &q, &sst);
    let sub = subgraph_of_mask(g, &sst);

    let mut classes: BTreeMap<usize, IdentificationClass> = BTreeMap::new();
    // Z-component root -> Z^sst component root
    let mut sst_of_zcomp: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &pairs {
        let class = classes.entry(p.component).or_insert_with(|| IdentificationClass {
            component: p.component,
            vertices: Vec::new(),
            epsilon: sub.graph.genus_of(sub.from_host[p.component].unwrap()),
            labels: Vec::new(),
        });
        class.vertices.push(p.vertex);
        sst_of_zcomp.insert(comp[p.component].unwrap(), p.component);
    }

    let mut pointing = Pointing::new();
    let mut q_labels = BTreeSet::new();
    for (p, &cell) in gp.pointing() {
        match collapsed_component(g, &mask, &comp, cell) {
            None => {
                if cell.is_boundary() {
                    q_labels.insert(p.clone());
                }
                insert_label(&mut pointing, p, surviving_cell(g, &q, cell))?;
            }
            Some(root) => {
                if let Some(c) = sst_of_zcomp.get(&root) {
                    classes.get_mut(c).unwrap().labels.push(p.clone());
                } else {
                    match images.get(&root).map(|v| v.as_slice()) {
                        Some([w]) => insert_label(&mut pointing, p, Cell::Vertex(*w))?,
                        _ => {
                            return Err(RibbonError::InvalidStableData(format!(
                                "label {p} has no image in the collapse"
                            )))
                        }
                    }
                }
            }
        }
    }
    Ok(PseudosurfaceData {
        normalization: q,
        pointing,
        classes: classes.into_values().collect(),
        q: q_labels,
        host_genus: g.genus(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(xs: &[usize]) -> EdgeSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn subgraph_examples() {
        let s = subgraph_ribbon(&corpus::g_f8(), &set(&[0])).unwrap();
        assert_eq!(s.graph, corpus::g_l());
        let s = subgraph_ribbon(&corpus::g_t0(), &set(&[0, 1])).unwrap();
        assert_eq!(s.graph.num_vertices(), 2);
        assert_eq!(s.graph.num_faces(), 2);
        let s = subgraph_ribbon(&corpus::g_t1(), &set(&[0, 1, 2])).unwrap();
        assert_eq!(s.graph, corpus::g_t1());
        assert_eq!(
            subgraph_ribbon(&corpus::g_t1(), &set(&[])).unwrap_err(),
            RibbonError::EmptySubset
        );
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_ribbon(&corpus::g_f8_pointed(), &set(&[0])).unwrap();
        assert_eq!(q.graph(), &corpus::g_s());
        assert_eq!(q.quotient.graph.sigma_inf(), &[1, 0]);
        assert_eq!(q.pointing.len(), 1);

        let gp = corpus::g_t0_pointed();
        let q = quotient_ribbon(&gp, &set(&[0, 1])).unwrap();
        assert_eq!(q.graph(), &corpus::g_l());
        let pointed = q.pointed().unwrap();
        // the face {0, 3} lies inside the collapsed 2-gon; its label now sits on the vertex
        let moved = gp.label_at(Cell::Boundary(gp.graph().face_of(0))).unwrap();
        assert_eq!(pointed.pointing()[moved], Cell::Vertex(0));

        let q = quotient_ribbon(&corpus::g_t1_pointed(), &set(&[2])).unwrap();
        assert_eq!(q.graph(), &corpus::g_f8());
        assert_eq!(
            quotient_ribbon(&corpus::g_t1_pointed(), &set(&[0, 1, 2])).unwrap_err(),
            RibbonError::FullSubset
        );
    }

    #[test]
    fn negligible_examples() {
        assert!(is_negligible(&corpus::g_t1_pointed(), &set(&[2])).unwrap());
        assert!(!is_negligible(&corpus::g_f8_pointed(), &set(&[0])).unwrap());
        assert!(is_negligible(&corpus::g_t0_pointed(), &set(&[0, 1])).unwrap());
    }

    #[test]
    fn collapse_examples() {
        let c = collapse_edge(&corpus::g_t1_pointed(), 2).unwrap();
        assert_eq!(c.graph(), &corpus::g_f8());
        assert_eq!(
            collapse_edge(&corpus::g_f8_pointed(), 0).unwrap_err(),
            RibbonError::NotNegligible
        );
        // lollipop, one whisker end pointed
        let c = collapse_edge(&corpus::g_lp_pointed(), 1).unwrap();
        assert_eq!(c.graph(), &corpus::g_l());
        assert_eq!(c.pointing()["r"], Cell::Vertex(0));
        // both whisker ends pointed
        let gp = corpus::g_lp_pointed();
        let mut p = gp.pointing().clone();
        p.insert("s".into(), Cell::Vertex(0));
        let both = PointedRibbonGraph::new(gp.graph().clone(), p).unwrap();
        assert_eq!(collapse_edge(&both, 1).unwrap_err(), RibbonError::NotNegligible);
    }

    #[test]
    fn core_examples() {
        assert_eq!(semistable_core(&corpus::g_t1_pointed(), &set(&[0])).unwrap(), set(&[]));
        assert_eq!(semistable_core(&corpus::g_f8_pointed(), &set(&[0])).unwrap(), set(&[0]));
        assert_eq!(semistable_core(&corpus::g_t0_pointed(), &set(&[0, 1])).unwrap(), set(&[]));
        assert_eq!(stable_core(&corpus::g_f8_pointed(), &set(&[0])).unwrap(), set(&[]));
        assert_eq!(stable_core(&corpus::g_f8q(), &set(&[0])).unwrap(), set(&[0]));
    }

    #[test]
    fn exceptional_examples() {
        let ex = exceptional_sets(&corpus::g_f8_pointed(), &set(&[0])).unwrap();
        assert_eq!(ex.pairs.len(), 2);
        assert_eq!(ex.exceptional_boundaries, vec![vec![0], vec![1]]);
        assert!(ex.is_bijective());
        assert!(ex.stable.is_empty());

        let ex = exceptional_sets(&corpus::g_t1_pointed(), &set(&[2])).unwrap();
        assert!(ex.pairs.is_empty() && ex.semistable.is_empty());

        let ex = exceptional_sets(&corpus::g_f8q(), &set(&[0])).unwrap();
        assert_eq!(ex.pairs.len(), 2);
        assert_eq!(ex.stable, ex.semistable);
    }

    #[test]
    fn pseudosurface_examples() {
        let ps = pseudosurface(&corpus::g_f8_pointed(), &set(&[0])).unwrap();
        assert_eq!(ps.normalization.graph, corpus::g_s());
        assert_eq!(ps.classes.len(), 1);
        assert_eq!(ps.classes[0].branches(), 2);
        assert_eq!(ps.classes[0].epsilon, 0);

        let ps = pseudosurface(&corpus::g_t1_pointed(), &set(&[2])).unwrap();
        assert_eq!(ps.normalization.graph, corpus::g_f8());
        assert!(ps.classes.is_empty());
        assert_eq!(ps.q, ["p".to_string()].into_iter().collect());
    }
}
