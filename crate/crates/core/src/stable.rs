//! Stable ribbon graphs: disjoint pointed pieces glued along a node
//! involution, together with the constructions producing them from an edge
//! subset or a permissible sequence of edge subsets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::collapse::{
    self, edge_mask, exceptional_pairs, mask_to_edges, quotient_of_mask, semistable_mask,
    stable_mask, subgraph_of_mask, z_components, EdgeSet, PseudosurfaceData,
};
use crate::error::{RibbonError, Result};
use crate::graph::{smooth_vertex, Cell, PointedRibbonGraph, RibbonGraph};
use crate::perm::DisjointSets;

/// A vertex or boundary cycle of one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpecialPoint {
    pub comp: usize,
    pub cell: Cell,
}

impl SpecialPoint {
    pub fn new(comp: usize, cell: Cell) -> Self {
        SpecialPoint { comp, cell }
    }
}

impl fmt::Display for SpecialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of component {}", self.cell, self.comp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableRibbonGraph {
    /// Connected pieces.
    pub components: Vec<RibbonGraph>,
    pub pointing: BTreeMap<String, SpecialPoint>,
    /// Node pairs of the involution on `Sigma - x(P)`.
    pub iota: Vec<(SpecialPoint, SpecialPoint)>,
    /// Depth of the degeneration each component comes from.
    pub levels: Vec<usize>,
    /// Host half-edge of every label of every component, when the graph was
    /// built from a host.
    pub host_labels: Vec<Vec<usize>>,
    /// Indices into `iota` of the nodes left by contracted circles.
    pub contracted: Vec<usize>,
}

impl StableRibbonGraph {
    /// A pointed ribbon graph seen as a stable graph with no nodes.
    pub fn from_pointed(gp: &PointedRibbonGraph) -> Self {
        StableRibbonGraph {
            components: vec![gp.graph().clone()],
            pointing: gp
                .pointing()
                .iter()
                .map(|(p, &c)| (p.clone(), SpecialPoint::new(0, c)))
                .collect(),
            iota: Vec::new(),
            levels: vec![0],
            host_labels: vec![(0..gp.graph().num_half_edges()).collect()],
            contracted: Vec::new(),
        }
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn partner(&self, p: SpecialPoint) -> Option<SpecialPoint> {
        self.iota.iter().find_map(|&(a, b)| {
            if a == p {
                Some(b)
            } else if b == p {
                Some(a)
            } else {
                None
            }
        })
    }

    /// `x(P)` together with every node branch.
    pub fn sigma_set(&self) -> BTreeSet<SpecialPoint> {
        let mut s: BTreeSet<SpecialPoint> = self.pointing.values().copied().collect();
        for &(a, b) in &self.iota {
            s.insert(a);
            s.insert(b);
        }
        s
    }

    pub fn genus_of(&self, comp: usize) -> usize {
        self.components[comp].genus_of(0)
    }

    /// The pointing of one component by `Sigma`.
    pub fn points_on(&self, comp: usize) -> usize {
        self.sigma_set().iter().filter(|p| p.comp == comp).count()
    }
}

fn structural_checks(s: &StableRibbonGraph) -> Result<()> {
    let bad = |m: String| Err(RibbonError::InvalidStableData(m));
    if s.components.is_empty() {
        return bad("no components".into());
    }
    if s.levels.len() != s.components.len() {
        return bad("level list does not match the components".into());
    }
    for (i, c) in s.components.iter().enumerate() {
        if !c.is_connected() {
            return bad(format!("component {i} is not connected"));
        }
    }
    let exists = |p: &SpecialPoint| p.comp < s.components.len() && s.components[p.comp].cell_exists(p.cell);
    let mut seen: BTreeMap<SpecialPoint, String> = BTreeMap::new();
    for (label, p) in &s.pointing {
        if !exists(p) {
            return Err(RibbonError::UnknownCell(format!("{label} -> {p}")));
        }
        if let Some(q) = seen.insert(*p, label.clone()) {
            return Err(RibbonError::NotInjective(q, label.clone()));
        }
    }
    for (a, b) in &s.iota {
        for p in [a, b] {
            if !exists(p) {
                return bad(format!("node branch {p} does not exist"));
            }
            if seen.insert(*p, "iota".into()).is_some() {
                return bad(format!("{p} is used twice"));
            }
        }
        if a == b {
            return bad(format!("node at {a} is a fixed point"));
        }
    }
    for (i, c) in s.components.iter().enumerate() {
        for d in c.distinguished_points() {
            if !seen.contains_key(&SpecialPoint::new(i, d)) {
                return Err(RibbonError::DistinguishedPointUncovered(format!("{d} of component {i}")));
            }
        }
    }
    Ok(())
}

/// Orders of the components: zero for a component carrying a label on a
/// boundary cycle, and one more than the least order reachable through a
/// node otherwise.
pub fn component_orders(s: &StableRibbonGraph) -> Result<Vec<usize>> {
    let nc = s.components.len();
    let mut order: Vec<Option<usize>> = vec![None; nc];
    for p in s.pointing.values() {
        if p.cell.is_boundary() {
            order[p.comp] = Some(0);
        }
    }
    let mut k = 0;
    loop {
        let mut next = Vec::new();
        for &(a, b) in &s.iota {
            for (x, y) in [(a, b), (b, a)] {
                if order[x.comp].is_none() && order[y.comp].map_or(false, |o| o <= k) {
                    next.push(x.comp);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for c in next {
            order[c] = Some(k + 1);
        }
        k += 1;
    }
    order
        .into_iter()
        .enumerate()
        .map(|(c, o)| o.ok_or(RibbonError::UnorderedComponent(c)))
        .collect()
}

/// Checks the structure, that every component has an order, and that each
/// node boundary cycle of an order `k > 0` component meets a vertex of an
/// order `k - 1` component.
pub fn validate_stable(s: &StableRibbonGraph) -> Result<Vec<usize>> {
    structural_checks(s)?;
    let order = component_orders(s)?;
    for &(a, b) in &s.iota {
        for (x, y) in [(a, b), (b, a)] {
            let k = order[x.comp];
            if x.cell.is_boundary() && k > 0 && !(y.cell.is_vertex() && order[y.comp] + 1 == k) {
                return Err(RibbonError::BadFaceTarget(format!(
                    "{x} (order {k}) is glued to {y} (order {})",
                    order[y.comp]
                )));
            }
        }
    }
    Ok(order)
}

/// Genus of the glued pseudosurface: `2 - 2g` is the Euler characteristic of
/// its smooth part.
pub fn glued_genus(s: &StableRibbonGraph) -> Result<usize> {
    let nc = s.components.len();
    let mut sets = DisjointSets::new(nc);
    for &(a, b) in &s.iota {
        sets.union(a.comp, b.comp);
    }
    if (0..nc).any(|c| sets.find(c) != 0) {
        return Err(RibbonError::Disconnected("the glued pseudosurface".into()));
    }
    let chi: i64 = s.components.iter().map(|c| c.euler_characteristic()).sum::<i64>()
        - 2 * s.iota.len() as i64;
    let g = (2 - chi) / 2;
    debug_assert_eq!(
        g,
        (0..nc).map(|c| s.genus_of(c) as i64).sum::<i64>() + s.iota.len() as i64 - nc as i64 + 1
    );
    Ok(g as usize)
}

/// Genus of a pseudosurface with genus defect: the genus of the normalization
/// plus `epsilon + r - 1` for every identified point.
pub fn pseudosurface_genus(p: &PseudosurfaceData) -> Result<usize> {
    let g = &p.normalization.graph;
    let comps = g.components();
    let mut sets = DisjointSets::new(g.num_half_edges());
    for c in &p.classes {
        for w in c.vertices.windows(2) {
            sets.union(g.component_root(w[0]), g.component_root(w[1]));
        }
    }
    let roots: BTreeSet<usize> = comps.iter().map(|c| sets.find(g.component_root(c[0]))).collect();
    if roots.len() != 1 {
        return Err(RibbonError::Disconnected("the pseudosurface".into()));
    }
    let normal: i64 = comps.iter().map(|c| g.genus_of(c[0]) as i64).sum();
    let defect: i64 = p
        .classes
        .iter()
        .map(|c| c.epsilon as i64 + c.branches() as i64 - 1)
        .sum();
    Ok((normal + defect - (comps.len() as i64 - 1)) as usize)
}

/// Outcome of the three Q-minimality conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QMinimalReport {
    /// Labels of `Q` sit on distinct regular points away from the other
    /// labels and meet every component.
    pub injective_q: bool,
    /// Every component minus labeled and special points has negative Euler
    /// characteristic.
    pub finite_automorphisms: bool,
    /// The genus identity with branches and defect.
    pub genus_identity: bool,
}

impl QMinimalReport {
    pub fn passes(&self) -> bool {
        self.injective_q && self.finite_automorphisms && self.genus_identity
    }
}

pub fn q_minimal_check(p: &PseudosurfaceData) -> QMinimalReport {
    let g = &p.normalization.graph;
    let comps = g.components();
    let special: BTreeSet<usize> = p.classes.iter().flat_map(|c| c.vertices.iter().copied()).collect();

    let q_cells: Vec<Cell> = p.q.iter().filter_map(|l| p.pointing.get(l).copied()).collect();
    let distinct: BTreeSet<Cell> = q_cells.iter().copied().collect();
    let others: BTreeSet<Cell> = p
        .pointing
        .iter()
        .filter(|(l, _)| !p.q.contains(*l))
        .map(|(_, &c)| c)
        .collect();
    let injective_q = q_cells.len() == p.q.len()
        && distinct.len() == q_cells.len()
        && q_cells.iter().all(|c| c.is_boundary() && !others.contains(c))
        && comps
            .iter()
            .all(|comp| q_cells.iter().any(|c| g.component_root(c.rep()) == comp[0]));

    let finite_automorphisms = comps.iter().all(|comp| {
        let root = comp[0];
        let labeled: BTreeSet<Cell> = p
            .pointing
            .values()
            .copied()
            .filter(|c| g.component_root(c.rep()) == root)
            .collect();
        let extra = special
            .iter()
            .filter(|&&w| g.component_root(w) == root && !labeled.contains(&Cell::Vertex(w)))
            .count();
        let n = (labeled.len() + extra) as i64;
        2 - 2 * g.genus_of(root) as i64 - n < 0
    });

    let genus_identity = pseudosurface_genus(p).map_or(false, |genus| genus == p.host_genus);
    QMinimalReport {
        injective_q,
        finite_automorphisms,
        genus_identity,
    }
}

/// Pieces of a stable graph under construction, indexed by host half-edge.
struct Assembly {
    components: Vec<RibbonGraph>,
    host_labels: Vec<Vec<usize>>,
    levels: Vec<usize>,
    /// host half-edge -> (component, label in component)
    place: Vec<Option<(usize, usize)>>,
}

impl Assembly {
    fn new(n: usize) -> Self {
        Assembly {
            components: Vec::new(),
            host_labels: Vec::new(),
            levels: Vec::new(),
            place: vec![None; n],
        }
    }

    /// Adds every component of `g`, whose labels map to host labels via
    /// `to_host`. Returns the component index of each label of `g`.
    fn add(&mut self, g: &RibbonGraph, to_host: &[usize], level: usize) -> Vec<usize> {
        let mut comp_of = vec![0; g.num_half_edges()];
        for (piece, labels) in g.split_components() {
            let idx = self.components.len();
            let hosts: Vec<usize> = labels.iter().map(|&x| to_host[x]).collect();
            for (i, (&x, &h)) in labels.iter().zip(&hosts).enumerate() {
                comp_of[x] = idx;
                self.place[h] = Some((idx, i));
            }
            self.components.push(piece);
            self.host_labels.push(hosts);
            self.levels.push(level);
        }
        comp_of
    }

    /// Like `add`, after smoothing the bivalent vertices of `g` that are
    /// neither marked in the host nor listed in `keep`: on a piece they are
    /// regular points with nothing to be glued to.
    fn add_piece(
        &mut self,
        gp: &PointedRibbonGraph,
        g: &RibbonGraph,
        to_host: &[usize],
        keep: &BTreeSet<usize>,
        level: usize,
    ) -> Result<()> {
        let smooth: Vec<usize> = g
            .vertices()
            .into_iter()
            .filter(|&v| {
                g.valency(v) == 2
                    && !keep.contains(&v)
                    && !gp.is_marked_vertex(gp.graph().vertex_of(to_host[v]))
            })
            .collect();
        let bar = bar_graph(g, &smooth)?;
        let hosts: Vec<usize> = bar.to_orig.iter().map(|&x| to_host[x]).collect();
        self.add(&bar.graph, &hosts, level);
        Ok(())
    }

    fn point_at(&self, host: usize, vertex: bool) -> SpecialPoint {
        let (c, x) = self.place[host].expect("host label is placed");
        SpecialPoint::new(c, self.components[c].cell_of(x, vertex))
    }

    /// The boundary cycle through the given host labels, located in the
    /// shallowest piece holding any of them.
    fn boundary(&self, hosts: &[usize]) -> SpecialPoint {
        let h = *hosts
            .iter()
            .filter(|&&h| self.place[h].is_some())
            .min_by_key(|&&h| self.levels[self.place[h].unwrap().0])
            .expect("boundary cycle is placed");
        self.point_at(h, false)
    }

    /// The vertex through the given host labels, in the deepest piece.
    fn vertex(&self, hosts: &[usize]) -> SpecialPoint {
        let h = *hosts
            .iter()
            .filter(|&&h| self.place[h].is_some())
            .max_by_key(|&&h| self.levels[self.place[h].unwrap().0])
            .expect("vertex is placed");
        self.point_at(h, true)
    }
}

/// `G(Z) = G/G_Z ⊔ G_{Z^st}` with exceptional vertices glued to the
/// exceptional boundary cycles; each contracted circle leaves a node joining
/// its two exceptional vertices.
pub fn stabilize(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<StableRibbonGraph> {
    let g = gp.graph();
    let n = g.num_half_edges();
    let mask = edge_mask(g, z)?;
    let q = quotient_of_mask(g, &mask)?;
    let sst = semistable_mask(gp, &mask);
    let st = stable_mask(gp, &mask);
    let comp = z_components(g, &mask);
    let (pairs, _) = exceptional_pairs(g, &q, &sst);

    let mut asm = Assembly::new(n);
    asm.add(&q.graph, &q.to_host, 0);
    if st.iter().any(|&b| b) {
        let sub = subgraph_of_mask(g, &st);
        asm.add_piece(gp, &sub.graph, &sub.to_host, &BTreeSet::new(), 1)?;
    }

    let mut iota = Vec::new();
    let mut contracted = Vec::new();
    let mut circles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in &pairs {
        let w = asm.point_at(q.to_host[p.vertex], true);
        if st[p.component] {
            iota.push((w, asm.boundary(&p.boundary)));
        } else {
            circles.entry(p.component).or_default().push(p.vertex);
        }
    }
    for (root, ws) in circles {
        if ws.len() != 2 {
            return Err(RibbonError::InvalidStableData(format!(
                "contracted component at {root} has {} exceptional vertices",
                ws.len()
            )));
        }
        contracted.push(iota.len());
        iota.push((
            asm.point_at(q.to_host[ws[0]], true),
            asm.point_at(q.to_host[ws[1]], true),
        ));
    }

    // Z-component root -> does it hold a stable piece
    let with_piece: BTreeSet<usize> = pairs
        .iter()
        .filter(|p| st[p.component])
        .map(|p| comp[p.component].unwrap())
        .collect();
    let images: BTreeMap<usize, Vec<usize>> = {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&w, skipped) in &q.skipped {
            if let Some(&x) = skipped.first() {
                out.entry(comp[x].unwrap()).or_default().push(w);
            }
        }
        out
    };
    let mut pointing = BTreeMap::new();
    for (label, &cell) in gp.pointing() {
        let hosts = g.cell_labels(cell);
        let point = match cell {
            Cell::Vertex(_) => match hosts.iter().find_map(|&e| comp[e]) {
                None => asm.point_at(hosts[0], true),
                Some(root) if with_piece.contains(&root) => {
                    let inside: Vec<usize> = hosts.iter().copied().filter(|&e| st[e]).collect();
                    asm.vertex(&inside)
                }
                Some(root) => asm.point_at(q.to_host[image_vertex(&images, root, label)?], true),
            },
            Cell::Boundary(_) => {
                if hosts.iter().any(|&e| !mask[e]) {
                    asm.boundary(&hosts)
                } else {
                    let root = comp[hosts[0]].unwrap();
                    if with_piece.contains(&root) {
                        asm.boundary(&hosts)
                    } else {
                        asm.point_at(q.to_host[image_vertex(&images, root, label)?], true)
                    }
                }
            }
        };
        pointing.insert(label.clone(), point);
    }
    let s = StableRibbonGraph {
        components: asm.components,
        pointing,
        iota,
        levels: asm.levels,
        host_labels: asm.host_labels,
        contracted,
    };
    structural_checks(&s)?;
    Ok(s)
}

/// The quotient vertex a collapsed component was sent to.
fn image_vertex(images: &BTreeMap<usize, Vec<usize>>, root: usize, label: &str) -> Result<usize> {
    match images.get(&root).map(|v| v.as_slice()) {
        Some([w]) => Ok(*w),
        _ => Err(RibbonError::InvalidStableData(format!(
            "label {label} sits in a collapsed component without a single image vertex"
        ))),
    }
}

/// A ribbon graph with some bivalent vertices forgotten.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarGraph {
    pub graph: RibbonGraph,
    /// Original half-edge of every surviving half-edge.
    pub to_orig: Vec<usize>,
    /// For each edge of `graph` (by index), the original edge indices merged
    /// into it.
    pub chains: Vec<Vec<usize>>,
}

/// Smooths the listed bivalent vertices (given by original representative).
/// A bivalent vertex that is the only vertex of a loop has nothing to merge
/// and is kept.
pub fn bar_graph(g: &RibbonGraph, vertices: &[usize]) -> Result<BarGraph> {
    let idx = collapse::edge_indices(g);
    let mut cur = g.clone();
    let mut to_orig: Vec<usize> = (0..g.num_half_edges()).collect();
    let mut chain: Vec<Vec<usize>> = (0..g.num_half_edges()).map(|e| vec![idx[e]]).collect();
    for &v in vertices {
        if v >= g.num_half_edges() || g.vertex_of(v) != v {
            return Err(RibbonError::UnknownCell(format!("vertex {v}")));
        }
        if g.valency(v) != 2 {
            return Err(RibbonError::NotBivalent(v));
        }
        let pos = to_orig.iter().position(|&x| x == v).expect("vertex survives");
        let cv = cur.vertex_of(pos);
        let (next, old_to_new) = match smooth_vertex(&cur, cv) {
            Ok(r) => r,
            Err(RibbonError::IsolatedLoop(_)) => continue,
            Err(e) => return Err(e),
        };
        let cyc = cur.vertex_cycle(cv);
        let (a, b) = (cyc[0], cyc[1]);
        let merged: Vec<usize> = chain[a].iter().chain(&chain[b]).copied().collect();
        let mut new_to_orig = vec![0; next.num_half_edges()];
        let mut new_chain = vec![Vec::new(); next.num_half_edges()];
        for x in 0..cur.num_half_edges() {
            if let Some(y) = old_to_new[x] {
                new_to_orig[y] = to_orig[x];
                new_chain[y] = if x == cur.sigma1()[a] || x == cur.sigma1()[b] {
                    merged.clone()
                } else {
                    chain[x].clone()
                };
            }
        }
        cur = next;
        to_orig = new_to_orig;
        chain = new_chain;
    }
    let chains = cur
        .edges()
        .into_iter()
        .map(|rep| {
            let mut c = chain[rep].clone();
            c.sort_unstable();
            c
        })
        .collect();
    Ok(BarGraph {
        graph: cur,
        to_orig,
        chains,
    })
}

/// The bar graph of `G_Z` inside the host: its bivalent vertices that carry a
/// label are forgotten. Chains are in host edge indices.
pub fn bar_of_subset(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<BarGraph> {
    let g = gp.graph();
    let mask = edge_mask(g, z)?;
    let sub = subgraph_of_mask(g, &mask);
    let marked = gp.marked_vertex_mask();
    let host_idx = collapse::edge_indices(g);
    let vertices: Vec<usize> = sub
        .graph
        .vertices()
        .into_iter()
        .filter(|&v| sub.graph.valency(v) == 2 && marked[sub.to_host[v]])
        .collect();
    let mut bar = bar_graph(&sub.graph, &vertices)?;
    let sub_idx_to_host: Vec<usize> = sub
        .graph
        .edges()
        .into_iter()
        .map(|rep| host_idx[sub.to_host[rep]])
        .collect();
    for c in &mut bar.chains {
        for e in c.iter_mut() {
            *e = sub_idx_to_host[*e];
        }
        c.sort_unstable();
    }
    for x in &mut bar.to_orig {
        *x = sub.to_host[*x];
    }
    Ok(bar)
}

/// `X1 = Z_0 ⊃ Z_1 ⊃ ... ⊃ Z_k`, already validated against its host.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermissibleSequence {
    pub levels: Vec<EdgeSet>,
}

impl PermissibleSequence {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Checks nesting, that no level swallows a component of the previous one,
/// that every level is stable and is made of whole edges of the previous
/// level's bar graph.
pub fn validate_permissible(gp: &PointedRibbonGraph, zs: &[EdgeSet]) -> Result<PermissibleSequence> {
    let g = gp.graph();
    let all = collapse::all_edges(g);
    if zs.first() != Some(&all) {
        return Err(RibbonError::NotNested(0));
    }
    for k in 1..zs.len() {
        let (prev, z) = (&zs[k - 1], &zs[k]);
        if z.is_empty() {
            return Err(RibbonError::NotInStableCore(k, "empty level".into()));
        }
        if !z.is_subset(prev) {
            return Err(RibbonError::NotNested(k));
        }
        let prev_mask = edge_mask(g, prev)?;
        let prev_sub = subgraph_of_mask(g, &prev_mask);
        let host_idx = collapse::edge_indices(g);
        for labels in prev_sub.graph.components() {
            let edges: EdgeSet = labels.iter().map(|&x| host_idx[prev_sub.to_host[x]]).collect();
            if edges.is_subset(z) {
                return Err(RibbonError::SwallowsComponent(k));
            }
        }
        let mask = edge_mask(g, z)?;
        let core = mask_to_edges(g, &stable_mask(gp, &mask));
        if &core != z {
            return Err(RibbonError::NotInStableCore(
                k,
                format!("stable core of the level is {core:?}"),
            ));
        }
        if k >= 2 {
            let idx = collapse::edge_indices(g);
            for f in prev_sub.graph.faces() {
                let cycle: BTreeSet<usize> =
                    prev_sub.graph.face_cycle(f).iter().map(|&x| prev_sub.to_host[x]).collect();
                let first = *cycle.iter().next().unwrap();
                let host: BTreeSet<usize> = g.face_cycle(g.face_of(first)).into_iter().collect();
                if host != cycle && cycle.iter().all(|&h| z.contains(&idx[h])) {
                    return Err(RibbonError::ShrinksNodeCycle(k));
                }
            }
        }
        let bar = bar_of_subset(gp, prev)?;
        for chain in &bar.chains {
            let inside = chain.iter().filter(|e| z.contains(e)).count();
            if inside != 0 && inside != chain.len() {
                return Err(RibbonError::NotInStableCore(
                    k,
                    format!("edges {chain:?} form one edge of the bar graph"),
                ));
            }
        }
    }
    Ok(PermissibleSequence {
        levels: zs.to_vec(),
    })
}

/// The stable graph of a permissible sequence: the pieces
/// `G_{Z_k} / G_{Z_{k+1}}` with every exceptional vertex of a piece glued
/// to the boundary cycle it came from.
pub fn stabilize_sequence(gp: &PointedRibbonGraph, zs: &[EdgeSet]) -> Result<StableRibbonGraph> {
    let seq = validate_permissible(gp, zs)?;
    let g = gp.graph();
    let n = g.num_half_edges();
    let masks: Vec<Vec<bool>> = seq
        .levels
        .iter()
        .map(|z| edge_mask(g, z))
        .collect::<Result<_>>()?;
    let depth = seq.depth();
    let mut asm = Assembly::new(n);
    // (level piece vertex given by host labels, exceptional boundary by host labels)
    let mut pending: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for k in 0..=depth {
        let sub = subgraph_of_mask(g, &masks[k]);
        if k == depth {
            asm.add_piece(gp, &sub.graph, &sub.to_host, &BTreeSet::new(), k)?;
            continue;
        }
        let inner: Vec<bool> = sub.to_host.iter().map(|&h| masks[k + 1][h]).collect();
        let q = quotient_of_mask(&sub.graph, &inner)?;
        let to_host: Vec<usize> = q.to_host.iter().map(|&x| sub.to_host[x]).collect();
        let exceptional: BTreeSet<usize> = q
            .skipped
            .iter()
            .filter(|(_, s)| !s.is_empty())
            .map(|(&w, _)| w)
            .collect();
        asm.add_piece(gp, &q.graph, &to_host, &exceptional, k)?;
        let next = subgraph_of_mask(g, &masks[k + 1]);
        for (&w, skipped) in &q.skipped {
            let Some(&x) = skipped.first() else { continue };
            let h = sub.to_host[x];
            let f = next.graph.face_of(next.from_host[h].unwrap());
            let boundary: Vec<usize> = next.graph.face_cycle(f).iter().map(|&y| next.to_host[y]).collect();
            let vertex: Vec<usize> = q.graph.vertex_cycle(w).iter().map(|&y| to_host[y]).collect();
            pending.push((vertex, boundary));
        }
    }
    let iota: Vec<(SpecialPoint, SpecialPoint)> = pending
        .iter()
        .map(|(v, b)| (asm.vertex(v), asm.boundary(b)))
        .collect();
    let mut pointing = BTreeMap::new();
    for (label, &cell) in gp.pointing() {
        let hosts = g.cell_labels(cell);
        let p = if cell.is_vertex() {
            asm.vertex(&hosts)
        } else {
            asm.boundary(&hosts)
        };
        pointing.insert(label.clone(), p);
    }
    let s = StableRibbonGraph {
        components: asm.components,
        pointing,
        iota,
        levels: asm.levels,
        host_labels: asm.host_labels,
        contracted: Vec::new(),
    };
    validate_stable(&s)?;
    Ok(s)
}
