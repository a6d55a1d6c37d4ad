//! Canonical labelings and automorphism groups.
//!
//! Starting from a half-edge `s`, number `s` and `sigma1(s)` as 0 and 1, then
//! walk the numbered half-edges in order and number `sigma0` of each one (and
//! its partner) the first time it is seen. Every start yields a labeling with
//! pairing `(0 1)(2 3)...`; the lexicographically least `sigma0` word (followed
//! by the pointing) is the certificate. Starts that reproduce the least word
//! are exactly the images of the least start under automorphisms, so the
//! automorphism group comes out of the same pass.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::graph::{Cell, PointedRibbonGraph, Pointing, RibbonGraph};

const UNSET: u32 = u32::MAX;

/// The canonical relabeling of a (pointed) ribbon graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Comparable code; equal codes mean isomorphic inputs.
    pub code: Vec<u32>,
    /// `new = relabel[old]`.
    pub relabel: Vec<usize>,
    pub graph: RibbonGraph,
    pub pointing: Pointing,
}

impl CanonicalForm {
    /// Human-readable certificate: half-edge count, canonical rotation cycles
    /// and the pointing in canonical labels.
    pub fn certificate(&self) -> String {
        let mut s = format!("n{}:", self.graph.num_half_edges());
        for cyc in crate::perm::cycles(self.graph.sigma0()) {
            s.push('(');
            let parts: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        if !self.pointing.is_empty() {
            s.push('|');
            let parts: Vec<String> = self
                .pointing
                .iter()
                .map(|(p, c)| {
                    let k = if c.is_vertex() { 'v' } else { 'b' };
                    format!("{p}={k}{}", c.rep())
                })
                .collect();
            s.push_str(&parts.join(","));
        }
        s
    }

    pub fn pointed(&self) -> PointedRibbonGraph {
        PointedRibbonGraph::new_unchecked(self.graph.clone(), self.pointing.clone())
    }
}

/// Automorphisms of a connected (pointed) ribbon graph, listed exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphisms {
    pub order: usize,
    /// Every group element as a permutation of the input labels.
    pub elements: Vec<Vec<usize>>,
}

struct Labeler<'a> {
    g: &'a RibbonGraph,
    num: Vec<u32>,
    order: Vec<usize>,
}

impl<'a> Labeler<'a> {
    fn new(g: &'a RibbonGraph) -> Self {
        Labeler {
            g,
            num: vec![UNSET; g.num_half_edges()],
            order: Vec::with_capacity(g.num_half_edges()),
        }
    }

    fn reset(&mut self) {
        for &x in &self.order {
            self.num[x] = UNSET;
        }
        self.order.clear();
    }

    fn assign(&mut self, x: usize) {
        let s1 = self.g.sigma1()[x];
        self.num[x] = self.order.len() as u32;
        self.order.push(x);
        self.num[s1] = self.order.len() as u32;
        self.order.push(s1);
    }

    /// Builds the rotation word from `start`. Stops early and returns
    /// `Greater` as soon as the word exceeds `best`.
    fn word(&mut self, start: usize, best: Option<&[u32]>, out: &mut Vec<u32>) -> Ordering {
        self.reset();
        out.clear();
        self.assign(start);
        let mut cmp = if best.is_some() { Ordering::Equal } else { Ordering::Less };
        let mut i = 0;
        while i < self.order.len() {
            let y = self.g.sigma0()[self.order[i]];
            if self.num[y] == UNSET {
                self.assign(y);
            }
            let v = self.num[y];
            if cmp == Ordering::Equal {
                match v.cmp(&best.unwrap()[i]) {
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Less => cmp = Ordering::Less,
                    Ordering::Equal => {}
                }
            }
            out.push(v);
            i += 1;
        }
        cmp
    }

    /// Canonical name of `cell` under the current numbering.
    fn cell_code(&self, cell: Cell) -> (u32, u32) {
        let labels = self.g.cell_labels(cell);
        let rep = labels.iter().map(|&x| self.num[x]).min().unwrap();
        (cell.is_boundary() as u32, rep)
    }
}

struct ComponentCanon {
    code: Vec<u32>,
    /// Half-edges in canonical order for every optimal start.
    orders: Vec<Vec<usize>>,
}

fn canon_component(
    g: &RibbonGraph,
    comp: &[usize],
    pointed: &[(u32, Cell)],
    lab: &mut Labeler,
) -> ComponentCanon {
    let mut best: Option<Vec<u32>> = None;
    let mut orders: Vec<Vec<usize>> = Vec::new();
    let mut word = Vec::with_capacity(comp.len() + 3 * pointed.len());
    let root = g.component_root(comp[0]);
    let here: Vec<(u32, Cell)> = pointed
        .iter()
        .copied()
        .filter(|(_, c)| g.component_root(c.rep()) == root)
        .collect();
    for &s in comp {
        let c = lab.word(s, best.as_deref().map(|b| &b[..comp.len()]), &mut word);
        if c == Ordering::Greater {
            continue;
        }
        for &(idx, cell) in &here {
            let (kind, rep) = lab.cell_code(cell);
            word.extend_from_slice(&[idx, kind, rep]);
        }
        let ord = match &best {
            None => Ordering::Less,
            Some(b) => word.as_slice().cmp(b.as_slice()),
        };
        match ord {
            Ordering::Less => {
                best = Some(word.clone());
                orders.clear();
                orders.push(lab.order.clone());
            }
            Ordering::Equal => orders.push(lab.order.clone()),
            Ordering::Greater => {}
        }
    }
    ComponentCanon {
        code: best.unwrap(),
        orders,
    }
}

fn canonicalize(g: &RibbonGraph, pointing: &Pointing) -> (CanonicalForm, Vec<ComponentCanon>) {
    let pointed: Vec<(u32, Cell)> = pointing
        .values()
        .enumerate()
        .map(|(i, &c)| (i as u32, c))
        .collect();
    let mut lab = Labeler::new(g);
    let mut comps: Vec<ComponentCanon> = g
        .components()
        .iter()
        .map(|c| canon_component(g, c, &pointed, &mut lab))
        .collect();
    comps.sort_by(|a, b| {
        (a.orders[0].len(), &a.code).cmp(&(b.orders[0].len(), &b.code))
    });
    let mut relabel = vec![0; g.num_half_edges()];
    let mut code = Vec::new();
    let mut offset = 0;
    for c in &comps {
        for (i, &x) in c.orders[0].iter().enumerate() {
            relabel[x] = offset + i;
        }
        code.push(c.orders[0].len() as u32);
        code.extend_from_slice(&c.code);
        offset += c.orders[0].len();
    }
    let graph = g.relabel(&relabel);
    let pointing = pointing
        .iter()
        .map(|(p, &c)| {
            let new = relabel[c.rep()];
            (p.clone(), graph.cell_of(new, c.is_vertex()))
        })
        .collect();
    (
        CanonicalForm {
            code,
            relabel,
            graph,
            pointing,
        },
        comps,
    )
}

pub fn canonical_form(g: &RibbonGraph) -> CanonicalForm {
    canonicalize(g, &Pointing::new()).0
}

/// Canonical form respecting the pointing labels.
pub fn canonical_form_pointed(gp: &PointedRibbonGraph) -> CanonicalForm {
    canonicalize(gp.graph(), gp.pointing()).0
}

fn automorphisms_of(g: &RibbonGraph, pointing: &Pointing) -> Automorphisms {
    let (_, comps) = canonicalize(g, pointing);
    if comps.len() != 1 {
        // Only the connected case is contractual; for several components we
        // report the product of the component groups.
        let order = comps.iter().map(|c| c.orders.len()).product();
        return Automorphisms {
            order,
            elements: Vec::new(),
        };
    }
    let c = &comps[0];
    let base = &c.orders[0];
    let elements = c
        .orders
        .iter()
        .map(|o| {
            let mut phi = vec![0; g.num_half_edges()];
            for (i, &x) in base.iter().enumerate() {
                phi[x] = o[i];
            }
            phi
        })
        .collect::<Vec<_>>();
    Automorphisms {
        order: elements.len(),
        elements,
    }
}

pub fn automorphisms(g: &RibbonGraph) -> Automorphisms {
    automorphisms_of(g, &Pointing::new())
}

/// Automorphisms fixing every pointed cell.
pub fn automorphisms_pointed(gp: &PointedRibbonGraph) -> Automorphisms {
    automorphisms_of(gp.graph(), gp.pointing())
}

/// Short hex digest of a certificate string, for compact reports.
pub fn digest(s: &str) -> String {
    use sha2::{Digest, Sha256};
    let h = Sha256::digest(s.as_bytes());
    let mut out = String::new();
    for b in &h[..8] {
        let _ = write!(out, "{b:02x}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::perm;

    fn commutes(g: &RibbonGraph, phi: &[usize]) -> bool {
        (0..g.num_half_edges()).all(|e| {
            phi[g.sigma0()[e]] == g.sigma0()[phi[e]] && phi[g.sigma1()[e]] == g.sigma1()[phi[e]]
        })
    }

    #[test]
    fn lollipop_relabeling_has_same_certificate() {
        let a = corpus::g_lp();
        // swap the loop half-edges 0 <-> 1
        let b = RibbonGraph::from_cycles(4, &[vec![0, 2, 1]], &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(canonical_form(&a).code, canonical_form(&b).code);
        assert_eq!(canonical_form(&a).certificate(), canonical_form(&b).certificate());
    }

    #[test]
    fn different_face_counts_differ() {
        assert_ne!(
            canonical_form(&corpus::g_t0()).code,
            canonical_form(&corpus::g_t1()).code
        );
    }

    #[test]
    fn loop_graph_under_relabeling() {
        let g = corpus::g_l();
        let swapped = g.relabel(&[1, 0]);
        assert_eq!(canonical_form(&g).code, canonical_form(&swapped).code);
    }

    #[test]
    fn canonical_graph_has_standard_pairing() {
        for g in corpus::all_graphs() {
            let c = canonical_form(&g);
            assert!(c.graph.has_standard_pairing());
            assert_eq!(g.relabel(&c.relabel), c.graph);
        }
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphisms_pointed(&corpus::g_t1_pointed()).order, 6);
        assert_eq!(automorphisms_pointed(&corpus::g_f8_pointed()).order, 4);
        assert_eq!(automorphisms_pointed(&corpus::g_t0_pointed()).order, 1);
        assert_eq!(automorphisms(&corpus::g_t0()).order, 6);
        assert_eq!(automorphisms(&corpus::g_p8()).order, 2);
    }

    #[test]
    fn figure_eight_generator() {
        let auts = automorphisms_pointed(&corpus::g_f8_pointed());
        let gen: Vec<usize> = perm::from_cycles(4, &[vec![0, 2, 1, 3]]).unwrap();
        assert!(auts.elements.contains(&gen));
        for phi in &auts.elements {
            assert!(commutes(corpus::g_f8_pointed().graph(), phi));
        }
    }

    #[test]
    fn pointing_breaks_symmetry() {
        let gp = corpus::g_p8_pointed();
        let mut swapped = gp.pointing().clone();
        let p = swapped["p"];
        let r = swapped["r"];
        swapped.insert("p".into(), r);
        swapped.insert("r".into(), p);
        let other = PointedRibbonGraph::new(gp.graph().clone(), swapped).unwrap();
        // faces p and r are the two loop interiors, exchanged by the half-turn
        assert_eq!(
            canonical_form_pointed(&gp).code,
            canonical_form_pointed(&other).code
        );
        let mut swapped = gp.pointing().clone();
        let q = swapped["q"];
        swapped.insert("p".into(), q);
        swapped.insert("q".into(), p);
        let other = PointedRibbonGraph::new(gp.graph().clone(), swapped).unwrap();
        assert_ne!(
            canonical_form_pointed(&gp).code,
            canonical_form_pointed(&other).code
        );
    }
}
