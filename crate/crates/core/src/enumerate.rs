//! Exhaustive generation of pointed ribbon graph classes for a stable pair
//! `(g, n)`, the cell complex they form, and the audits run over it.
//!
//! Unpointed connected graphs with `F` boundary cycles are grown from the
//! one-vertex graphs of the same genus and `F` by splitting vertices: every
//! graph with two or more vertices contracts along a non-loop edge to a graph
//! with one edge fewer, and splitting a rotation cycle into two consecutive
//! arcs is the inverse. Pointings are then placed orbit-wise under the
//! automorphism group.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::canon::{self, automorphisms, canonical_form, canonical_form_pointed, digest};
use crate::collapse::{self, EdgeSet};
use crate::error::{RibbonError, Result};
use crate::graph::{standard_pairing, Cell, PointedRibbonGraph, Pointing, RibbonGraph};
use crate::metric::cell_lambda_map;
use crate::stable::{stabilize_sequence, validate_permissible, PermissibleSequence, StableRibbonGraph};
use crate::{io, Rational};

/// Names of the `n` points: `p, q, r, ...` and then `p11, p12, ...`.
pub fn point_labels(n: usize) -> Vec<String> {
    const NAMES: &str = "pqrstuvwxyz";
    (0..n)
        .map(|i| match NAMES.chars().nth(i) {
            Some(c) => c.to_string(),
            None => format!("p{}", i + 1),
        })
        .collect()
}

pub fn check_stable_pair(g: usize, n: usize) -> Result<()> {
    if n == 0 || 2 * g + n <= 2 {
        return Err(RibbonError::UnstablePair(g, n));
    }
    Ok(())
}

/// Largest edge count of a cell: `6g - 6 + 3n`.
pub fn max_edges(g: usize, n: usize) -> usize {
    6 * g + 3 * n - 6
}

fn low_vertices(g: &RibbonGraph) -> usize {
    g.vertices().into_iter().filter(|&v| g.valency(v) <= 2).count()
}

fn one_vertex_graphs(edges: usize, faces: usize) -> BTreeMap<Vec<u32>, RibbonGraph> {
    let n = 2 * edges;
    let sigma0: Vec<usize> = (0..n).map(|e| (e + 1) % n).collect();
    let mut out = BTreeMap::new();
    let mut sigma1 = vec![usize::MAX; n];
    fn rec(
        sigma0: &[usize],
        sigma1: &mut Vec<usize>,
        faces: usize,
        out: &mut BTreeMap<Vec<u32>, RibbonGraph>,
    ) {
        let Some(a) = sigma1.iter().position(|&x| x == usize::MAX) else {
            let g = RibbonGraph::build_unchecked(sigma0.to_vec(), sigma1.clone());
            if g.num_faces() == faces {
                let (g, _) = g.normalize_pairing();
                let c = canonical_form(&g);
                out.entry(c.code).or_insert(c.graph);
            }
            return;
        };
        for b in a + 1..sigma1.len() {
            if sigma1[b] == usize::MAX {
                sigma1[a] = b;
                sigma1[b] = a;
                rec(sigma0, sigma1, faces, out);
                sigma1[a] = usize::MAX;
                sigma1[b] = usize::MAX;
            }
        }
    }
    rec(&sigma0, &mut sigma1, faces, &mut out);
    out
}

/// Replaces the vertex with rotation `cycle` by two vertices joined by a new
/// edge `{N, N+1}`: `(cycle[i..i+a], N)` and `(cycle[i+a..], N+1)`, indices
/// taken cyclically.
pub fn split_vertex(g: &RibbonGraph, cycle: &[usize], i: usize, a: usize) -> RibbonGraph {
    let k = cycle.len();
    let n = g.num_half_edges();
    let (x, y) = (n, n + 1);
    let mut s0 = g.sigma0().to_vec();
    s0.extend([x, y]);
    let arc = |from: usize, len: usize| (0..len).map(|j| cycle[(from + j) % k]).collect::<Vec<_>>();
    for (part, new) in [(arc(i, a), x), (arc(i + a, k - a), y)] {
        let mut ring = part;
        ring.push(new);
        for j in 0..ring.len() {
            s0[ring[j]] = ring[(j + 1) % ring.len()];
        }
    }
    RibbonGraph::build_unchecked(s0, standard_pairing(n + 2))
}

/// Unpointed connected classes of genus `g` with `faces` boundary cycles and
/// exactly `edges` edges, whose distinguished points number at most `n`.
fn unpointed_level(
    prev: &BTreeMap<Vec<u32>, RibbonGraph>,
    n: usize,
) -> BTreeMap<Vec<u32>, RibbonGraph> {
    let found: Vec<(Vec<u32>, RibbonGraph)> = prev
        .par_iter()
        .flat_map_iter(|(_, g)| {
            let mut local = Vec::new();
            for v in g.vertices() {
                let cycle = g.vertex_cycle(v);
                let k = cycle.len();
                for i in 0..k {
                    for a in 0..=k {
                        // (i, a) and (i + a, k - a) differ by swapping the ends
                        if (a, i) > (k - a, (i + a) % k.max(1)) {
                            continue;
                        }
                        let h = split_vertex(g, &cycle, i, a);
                        if low_vertices(&h) + h.num_faces() > n {
                            continue;
                        }
                        let c = canonical_form(&h);
                        local.push((c.code, c.graph));
                    }
                }
            }
            local
        })
        .collect();
    found.into_iter().collect()
}

/// All unpointed connected classes of genus `g` that admit a pointing by `n`
/// labels, keyed by edge count.
pub fn unpointed_classes(g: usize, n: usize) -> Result<BTreeMap<usize, Vec<RibbonGraph>>> {
    check_stable_pair(g, n)?;
    let top = max_edges(g, n);
    let mut by_edges: BTreeMap<usize, BTreeMap<Vec<u32>, RibbonGraph>> = BTreeMap::new();
    for faces in 1..=n {
        let m0 = 2 * g + faces - 1;
        // planar one-face graphs are trees, grown from the segment
        let (m0, seeds) = if m0 == 0 {
            let segment = RibbonGraph::with_standard_pairing(vec![0, 1])?;
            (1, [(canonical_form(&segment).code, segment)].into_iter().collect())
        } else {
            (m0, one_vertex_graphs(m0, faces))
        };
        if m0 > top {
            continue;
        }
        let mut level: BTreeMap<Vec<u32>, RibbonGraph> = seeds
            .into_iter()
            .filter(|(_, h)| low_vertices(h) + faces <= n)
            .collect();
        for m in m0..=top {
            if level.is_empty() {
                break;
            }
            let next = if m < top { unpointed_level(&level, n) } else { BTreeMap::new() };
            by_edges.entry(m).or_default().extend(level);
            level = next;
        }
    }
    Ok(by_edges
        .into_iter()
        .map(|(m, gs)| (m, gs.into_values().collect()))
        .collect())
}

/// Pointings of `g` by `labels` covering the distinguished points, one per
/// orbit of the automorphism group.
pub fn pointings_up_to_symmetry(g: &RibbonGraph, labels: &[String]) -> Vec<Pointing> {
    let mut cells: Vec<Cell> = g.vertices().into_iter().map(Cell::Vertex).collect();
    cells.extend(g.faces().into_iter().map(Cell::Boundary));
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let distinguished: Vec<bool> = cells
        .iter()
        .map(|&c| match c {
            Cell::Boundary(_) => true,
            Cell::Vertex(v) => g.valency(v) <= 2,
        })
        .collect();
    let actions: Vec<Vec<usize>> = automorphisms(g)
        .elements
        .iter()
        .map(|phi| {
            cells
                .iter()
                .map(|&c| index[&g.cell_of(phi[c.rep()], c.is_vertex())])
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(labels.len());
    let mut used = vec![false; cells.len()];
    let uncovered = distinguished.iter().filter(|&&d| d).count();
    fn rec(
        chosen: &mut Vec<usize>,
        used: &mut Vec<bool>,
        uncovered: usize,
        n: usize,
        distinguished: &[bool],
        actions: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == n {
            if uncovered == 0
                && actions.iter().all(|act| {
                    let image: Vec<usize> = chosen.iter().map(|&c| act[c]).collect();
                    image >= *chosen
                })
            {
                out.push(chosen.clone());
            }
            return;
        }
        for c in 0..used.len() {
            if used[c] {
                continue;
            }
            let left = uncovered - distinguished[c] as usize;
            if left > n - chosen.len() - 1 {
                continue;
            }
            used[c] = true;
            chosen.push(c);
            rec(chosen, used, left, n, distinguished, actions, out);
            chosen.pop();
            used[c] = false;
        }
    }
    rec(
        &mut chosen,
        &mut used,
        uncovered,
        labels.len(),
        &distinguished,
        &actions,
        &mut out,
    );
    out.into_iter()
        .map(|sel| {
            labels
                .iter()
                .cloned()
                .zip(sel.into_iter().map(|i| cells[i]))
                .collect()
        })
        .collect()
}

/// One cell of the combinatorial moduli space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellClass {
    /// Canonical representative.
    pub graph: PointedRibbonGraph,
    pub certificate: String,
    pub dimension: usize,
    pub aut_order: usize,
    pub lambda_rank: usize,
    /// Labels sitting on boundary cycles.
    pub q: BTreeSet<String>,
}

impl CellClass {
    pub fn num_edges(&self) -> usize {
        self.dimension + 1
    }

    pub fn fiber_dimension(&self) -> usize {
        self.num_edges() - self.lambda_rank
    }
}

fn make_cell(gp: &PointedRibbonGraph) -> Result<CellClass> {
    let c = canonical_form_pointed(gp);
    let graph = c.pointed();
    let aut_order = canon::automorphisms_pointed(&graph).order;
    let lambda_rank = cell_lambda_map::<Rational>(&graph)?.rank;
    Ok(CellClass {
        certificate: c.certificate(),
        dimension: graph.graph().num_edges() - 1,
        aut_order,
        lambda_rank,
        q: graph.q_labels(),
        graph,
    })
}

/// Every isomorphism class of connected pointed ribbon graphs of genus `g`
/// with `n` labelled points, ordered by dimension and certificate.
pub fn enumerate_graphs(g: usize, n: usize) -> Result<Vec<CellClass>> {
    let labels = point_labels(n);
    let classes = unpointed_classes(g, n)?;
    let graphs: Vec<&RibbonGraph> = classes.values().flatten().collect();
    let cells: Vec<Result<Vec<CellClass>>> = graphs
        .par_iter()
        .map(|h| {
            pointings_up_to_symmetry(h, &labels)
                .into_iter()
                .map(|p| make_cell(&PointedRibbonGraph::new((*h).clone(), p)?))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for c in cells {
        out.extend(c?);
    }
    out.sort_by(|a, b| (a.dimension, &a.certificate).cmp(&(b.dimension, &b.certificate)));
    out.dedup_by(|a, b| a.certificate == b.certificate);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliCellComplex {
    pub genus: usize,
    pub points: usize,
    pub cells: Vec<CellClass>,
    /// `(cell, face) -> number of edges whose collapse gives that face`.
    pub faces: BTreeMap<(usize, usize), usize>,
    /// Collapses landing outside the enumerated cells, as (cell, edge).
    pub unmatched: Vec<(usize, usize)>,
}

impl ModuliCellComplex {
    pub fn index_of(&self, certificate: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.certificate == certificate)
    }

    pub fn facets(&self, cell: usize) -> Vec<(usize, usize)> {
        self.faces
            .range((cell, 0)..(cell + 1, 0))
            .map(|(&(_, f), &m)| (f, m))
            .collect()
    }

    /// Longest chain of face steps from each cell down to a cell with no faces.
    pub fn chain_lengths(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|&i| self.cells[i].dimension);
        let mut depth = vec![0; self.cells.len()];
        for i in order {
            depth[i] = self
                .facets(i)
                .iter()
                .map(|&(f, _)| depth[f] + 1)
                .max()
                .unwrap_or(0);
        }
        depth
    }
}

pub fn build_complex(g: usize, n: usize) -> Result<ModuliCellComplex> {
    let cells = enumerate_graphs(g, n)?;
    let index: HashMap<&str, usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.certificate.as_str(), i))
        .collect();
    let arrows: Vec<Result<Vec<(usize, usize, Option<usize>)>>> = cells
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let gp = &c.graph;
            let m = gp.graph().num_edges();
            let mut out = Vec::new();
            if m == 1 {
                return Ok(out);
            }
            for k in 0..m {
                let z: EdgeSet = [k].into_iter().collect();
                if !collapse::is_negligible(gp, &z)? {
                    continue;
                }
                let face = collapse::collapse_edge(gp, k)?;
                let cert = canonical_form_pointed(&face).certificate();
                out.push((i, k, index.get(cert.as_str()).copied()));
            }
            Ok(out)
        })
        .collect();
    let mut faces = BTreeMap::new();
    let mut unmatched = Vec::new();
    for a in arrows {
        for (i, k, target) in a? {
            match target {
                Some(j) => *faces.entry((i, j)).or_insert(0) += 1,
                None => unmatched.push((i, k)),
            }
        }
    }
    Ok(ModuliCellComplex {
        genus: g,
        points: n,
        cells,
        faces,
        unmatched,
    })
}

/// Dimension audit of a complex. Every bound is reported next to the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub genus: usize,
    pub points: usize,
    /// Largest dimension among cells with every label on a boundary cycle.
    pub max_dim_full: Option<usize>,
    /// `6g - 7 + 3n`.
    pub expected_max_dim: usize,
    /// Largest dimension per boundary-label set, with the bound
    /// `6g - 6 + 2n + |Q| - 1`.
    pub max_dim_by_q: BTreeMap<Vec<String>, (usize, usize)>,
    pub max_fiber_dim: usize,
    /// `6g - 6 + 2n`.
    pub expected_fiber_dim: usize,
    pub min_dim: usize,
    /// `2g - 2 + n`.
    pub stated_min_bound: i64,
    /// `2g - 3 + n`.
    pub derived_min_bound: i64,
    pub longest_chain: usize,
    /// `4g - 4 + n + (n - 1)`.
    pub chain_bound: i64,
    pub faces_drop_dimension: bool,
    pub unmatched_collapses: usize,
}

impl DimensionReport {
    pub fn max_dim_ok(&self) -> bool {
        self.max_dim_full == Some(self.expected_max_dim)
            && self.max_dim_by_q.values().all(|(d, b)| d <= b)
    }

    pub fn fiber_ok(&self) -> bool {
        self.max_fiber_dim == self.expected_fiber_dim
    }

    pub fn chain_ok(&self) -> bool {
        self.longest_chain as i64 <= self.chain_bound
    }

    pub fn stated_min_holds(&self) -> bool {
        self.min_dim as i64 >= self.stated_min_bound
    }

    pub fn derived_min_holds(&self) -> bool {
        self.min_dim as i64 >= self.derived_min_bound
    }
}

pub fn verify_dimensions(complex: &ModuliCellComplex) -> DimensionReport {
    let (g, n) = (complex.genus as i64, complex.points as i64);
    let cells = &complex.cells;
    let mut by_q: BTreeMap<Vec<String>, (usize, usize)> = BTreeMap::new();
    for c in cells {
        let key: Vec<String> = c.q.iter().cloned().collect();
        let bound = (6 * g - 7 + 2 * n + c.q.len() as i64).max(0) as usize;
        let e = by_q.entry(key).or_insert((0, bound));
        e.0 = e.0.max(c.dimension);
    }
    let full: Vec<String> = point_labels(complex.points);
    DimensionReport {
        genus: complex.genus,
        points: complex.points,
        max_dim_full: by_q.get(&full).map(|x| x.0),
        expected_max_dim: (6 * g - 7 + 3 * n) as usize,
        max_dim_by_q: by_q,
        max_fiber_dim: cells.iter().map(|c| c.fiber_dimension()).max().unwrap_or(0),
        expected_fiber_dim: (6 * g - 6 + 2 * n) as usize,
        min_dim: cells.iter().map(|c| c.dimension).min().unwrap_or(0),
        stated_min_bound: 2 * g - 2 + n,
        derived_min_bound: 2 * g - 3 + n,
        longest_chain: complex.chain_lengths().into_iter().max().unwrap_or(0),
        chain_bound: 4 * g - 4 + n + (n - 1),
        faces_drop_dimension: complex
            .faces
            .keys()
            .all(|&(i, j)| cells[i].dimension == cells[j].dimension + 1),
        unmatched_collapses: complex.unmatched.len(),
    }
}

/// Splittings of an unpointed vertex of valency at least four into two
/// vertices of valency at least three joined by a new edge. The new edge is
/// the last one.
pub fn resolutions(gp: &PointedRibbonGraph, v: usize) -> Result<Vec<PointedRibbonGraph>> {
    let g = gp.graph();
    if v >= g.num_half_edges() {
        return Err(RibbonError::UnknownCell(format!("vertex {v}")));
    }
    let v = g.vertex_of(v);
    if gp.is_marked_vertex(v) {
        return Err(RibbonError::VertexPointed(v));
    }
    let k = g.valency(v);
    if k < 4 {
        return Err(RibbonError::ValencyTooLow(v, k));
    }
    let cycle = g.vertex_cycle(v);
    let mut out = Vec::new();
    for i in 0..k {
        for a in 2..=k - 2 {
            if (a, i) > (k - a, (i + a) % k) {
                continue;
            }
            let h = split_vertex(g, &cycle, i, a);
            let pointing = gp
                .pointing()
                .iter()
                .map(|(p, &c)| (p.clone(), h.cell_of(c.rep(), c.is_vertex())))
                .collect();
            out.push(PointedRibbonGraph::new(h, pointing)?);
        }
    }
    Ok(out)
}

/// Sum over the classes with one point of `(-1)^(edges - 1) / |Aut|`.
pub fn orbifold_euler(g: usize) -> Result<Rational> {
    Ok(orbifold_euler_of(&enumerate_graphs(g, 1)?))
}

pub fn orbifold_euler_of(cells: &[CellClass]) -> Rational {
    cells.iter().fold(Rational::zero(), |acc, c| {
        let term = Rational::new(One::one(), (c.aut_order as i64).into());
        if c.dimension % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Bernoulli numbers `B_0 ..= B_k` with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> Vec<Rational> {
    let int = |x: usize| Rational::from(num_bigint::BigInt::from(x));
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=k {
        let s = (0..m).fold(Rational::zero(), |acc, j| {
            acc + &b[j] * Rational::from(num_integer::binomial(num_bigint::BigInt::from(m + 1), j.into()))
        });
        b.push(-s / int(m + 1));
    }
    b
}

/// Orbifold Euler characteristic of the moduli space of curves of genus `g`
/// with `n` points, from `-B_2g / 2g` at one point (or `1` for three points
/// on the sphere) and `chi(g, k + 1) = (2 - 2g - k) chi(g, k)`.
pub fn classical_euler(g: usize, n: usize) -> Result<Rational> {
    check_stable_pair(g, n)?;
    let (mut chi, start) = if g == 0 {
        (Rational::one(), 3)
    } else {
        let b = bernoulli(2 * g);
        (-b[2 * g].clone() / Rational::from(num_bigint::BigInt::from(2 * g)), 1)
    };
    for k in start..n {
        chi *= Rational::from(num_bigint::BigInt::from(2 - 2 * g as i64 - k as i64));
    }
    Ok(chi)
}

/// `(-1)^(n-1)` times the alternating sum over the cells with every label on
/// a boundary cycle; equals the orbifold Euler characteristic of the moduli
/// space.
pub fn stratum_euler(cells: &[CellClass], n: usize) -> Rational {
    let full: Vec<CellClass> = cells.iter().filter(|c| c.q.len() == n).cloned().collect();
    let x = orbifold_euler_of(&full);
    if n % 2 == 1 {
        x
    } else {
        -x
    }
}

/// Short structural name of a stable graph.
pub fn stable_certificate(s: &StableRibbonGraph) -> String {
    let json = serde_json::to_string(&serde_json::to_value(io::stable_to_file(s)).expect("serializable"))
        .expect("serializable");
    digest(&json)
}

/// Every permissible sequence of depth at most `max_depth`, by depth and then
/// by levels, with the certificate of its stable graph.
pub fn enumerate_permissible(
    gp: &PointedRibbonGraph,
    max_depth: usize,
) -> Result<Vec<(PermissibleSequence, String)>> {
    let mut frontier = vec![validate_permissible(gp, &[collapse::all_edges(gp.graph())])?];
    let mut all = frontier.clone();
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for seq in &frontier {
            let last: Vec<usize> = seq.levels.last().unwrap().iter().copied().collect();
            for mask in 1u64..(1u64 << last.len()) - 1 {
                let z: EdgeSet = (0..last.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| last[i])
                    .collect();
                let mut levels = seq.levels.clone();
                levels.push(z);
                if let Ok(s) = validate_permissible(gp, &levels) {
                    next.push(s);
                }
            }
        }
        next.sort_by(|a, b| a.levels.cmp(&b.levels));
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.into_iter()
        .map(|s| {
            let st = stabilize_sequence(gp, &s.levels)?;
            Ok((s, stable_certificate(&st)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn hist(cells: &[CellClass]) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in cells {
            *h.entry(c.dimension).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn genus_one_one_point() {
        let cells = enumerate_graphs(1, 1).unwrap();
        assert_eq!(cells.len(), 2);
        let auts: BTreeSet<usize> = cells.iter().map(|c| c.aut_order).collect();
        assert_eq!(auts, [4, 6].into_iter().collect());
        let f8 = canonical_form_pointed(&corpus::g_f8_pointed()).certificate();
        let t1 = canonical_form_pointed(&corpus::g_t1_pointed()).certificate();
        assert_eq!(cells[0].certificate, f8);
        assert_eq!(cells[1].certificate, t1);
    }

    #[test]
    fn sphere_three_points() {
        let cells = enumerate_graphs(0, 3).unwrap();
        // the theta graph and three labellings of the dumbbell in top degree
        assert_eq!(cells.len(), 19);
        assert_eq!(hist(&cells), [(0, 6), (1, 9), (2, 4)].into_iter().collect());
    }

    #[test]
    fn unstable_pairs() {
        assert_eq!(enumerate_graphs(0, 2).unwrap_err(), RibbonError::UnstablePair(0, 2));
        assert!(orbifold_euler(0).is_err());
    }

    #[test]
    fn complex_faces() {
        let c = build_complex(1, 1).unwrap();
        assert_eq!(c.faces.get(&(1, 0)), Some(&3));
        let c = build_complex(0, 3).unwrap();
        let t0 = canonical_form_pointed(&corpus::g_t0_pointed()).certificate();
        let top = c.index_of(&t0).unwrap();
        let facets = c.facets(top);
        assert_eq!(facets.len(), 3);
        for (f, m) in facets {
            assert_eq!(m, 1);
            let p8 = canonical_form(&corpus::g_p8()).code;
            assert_eq!(canonical_form(c.cells[f].graph.graph()).code, p8);
        }
        assert!(c.unmatched.is_empty());
        for (i, cell) in c.cells.iter().enumerate() {
            if cell.dimension == 0 {
                assert!(c.facets(i).is_empty());
            }
        }
    }

    #[test]
    fn resolution_counts() {
        let f8 = corpus::g_f8_pointed();
        let res = resolutions(&f8, 0).unwrap();
        assert_eq!(res.len(), 2);
        let t1 = canonical_form_pointed(&corpus::g_t1_pointed()).certificate();
        for r in &res {
            assert_eq!(canonical_form_pointed(r).certificate(), t1);
            let back = collapse::collapse_edge(r, 2).unwrap();
            assert_eq!(
                canonical_form_pointed(&back).certificate(),
                canonical_form_pointed(&f8).certificate()
            );
        }
        let g = RibbonGraph::with_standard_pairing(vec![1, 2, 3, 4, 0, 5]).unwrap();
        let mut p = Pointing::new();
        let d = g.distinguished_points();
        for (l, c) in point_labels(d.len()).into_iter().zip(d) {
            p.insert(l, c);
        }
        let gp = PointedRibbonGraph::new(g, p).unwrap();
        assert_eq!(resolutions(&gp, 0).unwrap().len(), 5);
        assert_eq!(
            resolutions(&corpus::g_t1_pointed(), 0).unwrap_err().name(),
            "ValencyTooLow"
        );
        assert_eq!(resolutions(&corpus::g_f8q(), 0).unwrap_err().name(), "VertexPointed");
    }

    #[test]
    fn classical_values() {
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        assert_eq!(bernoulli(4)[4], q(-1, 30));
        assert_eq!(classical_euler(1, 1).unwrap(), q(-1, 12));
        assert_eq!(classical_euler(2, 1).unwrap(), q(1, 120));
        assert_eq!(classical_euler(0, 5).unwrap(), q(2, 1));
        let cells = enumerate_graphs(0, 3).unwrap();
        assert_eq!(stratum_euler(&cells, 3), q(1, 1));
    }

    #[test]
    fn euler_genus_one() {
        assert_eq!(orbifold_euler(1).unwrap(), Rational::new((-1).into(), 12.into()));
    }

    #[test]
    fn permissible_census() {
        assert_eq!(enumerate_permissible(&corpus::g_t1_pointed(), 1).unwrap().len(), 1);
        assert_eq!(enumerate_permissible(&corpus::g_f8q(), 0).unwrap().len(), 1);
        let seqs = enumerate_permissible(&corpus::g_f8q(), 1).unwrap();
        let levels: Vec<_> = seqs.iter().map(|(s, _)| s.levels.clone()).collect();
        let z = |xs: &[usize]| xs.iter().copied().collect::<EdgeSet>();
        assert_eq!(levels[0], vec![z(&[0, 1])]);
        assert!(levels.contains(&vec![z(&[0, 1]), z(&[0])]));
        assert!(levels.contains(&vec![z(&[0, 1]), z(&[1])]));
    }
}
