#![allow(dead_code)]

use std::collections::BTreeMap;

use ribbonmod::canon::{automorphisms_pointed, canonical_form_pointed};
use ribbonmod::enumerate::point_labels;
use ribbonmod::graph::{Cell, PointedRibbonGraph, Pointing, RibbonGraph};

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn cells_of(g: &RibbonGraph) -> Vec<Cell> {
    let mut cells: Vec<Cell> = g.vertices().into_iter().map(Cell::Vertex).collect();
    cells.extend(g.faces().into_iter().map(Cell::Boundary));
    cells
}

/// Every injection of the labels into the cells, in label order.
fn injections(cells: &[Cell], k: usize) -> Vec<Vec<Cell>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for prefix in injections(cells, k - 1) {
        for c in cells {
            if !prefix.contains(c) {
                let mut p = prefix.clone();
                p.push(*c);
                out.push(p);
            }
        }
    }
    out
}

/// Brute force: every rotation system with the standard pairing on at most
/// `max_half_edges` labels, every injective pointing.
pub fn brute_force(genus: usize, n: usize, max_half_edges: usize) -> BTreeMap<String, usize> {
    let labels = point_labels(n);
    let mut found = BTreeMap::new();
    for m in (2..=max_half_edges).step_by(2) {
        for sigma0 in all_permutations(m) {
            let g = RibbonGraph::with_standard_pairing(sigma0).unwrap();
            if !g.is_connected() || g.genus() != genus {
                continue;
            }
            for choice in injections(&cells_of(&g), n) {
                let p: Pointing = labels.iter().cloned().zip(choice).collect();
                if let Ok(gp) = PointedRibbonGraph::new(g.clone(), p) {
                    let cert = canonical_form_pointed(&gp).certificate();
                    found.entry(cert).or_insert_with(|| automorphisms_pointed(&gp).order);
                }
            }
        }
    }
    found
}
