//! The small named graphs used throughout the tests, the CLI examples and the
//! bundled corpus files.

use crate::graph::{Cell, PointedRibbonGraph, Pointing, RibbonGraph};

fn std_graph(half_edges: usize, sigma0: &[Vec<usize>]) -> RibbonGraph {
    let pairs: Vec<Vec<usize>> = (0..half_edges / 2).map(|k| vec![2 * k, 2 * k + 1]).collect();
    RibbonGraph::from_cycles(half_edges, sigma0, &pairs).expect("corpus graph")
}

fn point(g: RibbonGraph, cells: &[(&str, Cell)]) -> PointedRibbonGraph {
    let pointing: Pointing = cells.iter().map(|(p, c)| (p.to_string(), *c)).collect();
    PointedRibbonGraph::new(g, pointing).expect("corpus pointing")
}

/// One vertex with a loop: two boundary cycles.
pub fn g_l() -> RibbonGraph {
    std_graph(2, &[vec![0, 1]])
}

/// A single segment: two univalent vertices.
pub fn g_s() -> RibbonGraph {
    std_graph(2, &[])
}

/// Planar theta graph: three boundary cycles.
pub fn g_t0() -> RibbonGraph {
    std_graph(6, &[vec![0, 2, 4], vec![1, 5, 3]])
}

/// Theta graph on the torus: one boundary cycle.
pub fn g_t1() -> RibbonGraph {
    std_graph(6, &[vec![0, 2, 4], vec![1, 3, 5]])
}

/// Figure eight on the torus.
pub fn g_f8() -> RibbonGraph {
    std_graph(4, &[vec![0, 2, 1, 3]])
}

/// Planar figure eight.
pub fn g_p8() -> RibbonGraph {
    std_graph(4, &[vec![0, 1, 2, 3]])
}

/// Lollipop: a loop with a whisker.
pub fn g_lp() -> RibbonGraph {
    std_graph(4, &[vec![0, 1, 2]])
}

pub fn all_graphs() -> Vec<RibbonGraph> {
    vec![g_l(), g_s(), g_t0(), g_t1(), g_f8(), g_p8(), g_lp()]
}

pub fn g_l_pointed() -> PointedRibbonGraph {
    point(
        g_l(),
        &[("p", Cell::Boundary(0)), ("q", Cell::Boundary(1)), ("r", Cell::Vertex(0))],
    )
}

pub fn g_s_pointed() -> PointedRibbonGraph {
    point(
        g_s(),
        &[("p", Cell::Vertex(0)), ("q", Cell::Vertex(1)), ("r", Cell::Boundary(0))],
    )
}

pub fn g_t0_pointed() -> PointedRibbonGraph {
    let g = g_t0();
    let faces = g.faces();
    point(
        g,
        &[
            ("p", Cell::Boundary(faces[0])),
            ("q", Cell::Boundary(faces[1])),
            ("r", Cell::Boundary(faces[2])),
        ],
    )
}

pub fn g_t1_pointed() -> PointedRibbonGraph {
    point(g_t1(), &[("p", Cell::Boundary(0))])
}

pub fn g_f8_pointed() -> PointedRibbonGraph {
    point(g_f8(), &[("p", Cell::Boundary(0))])
}

/// Figure eight on the torus with its vertex pointed as well.
pub fn g_f8q() -> PointedRibbonGraph {
    point(g_f8(), &[("p", Cell::Boundary(0)), ("q", Cell::Vertex(0))])
}

pub fn g_p8_pointed() -> PointedRibbonGraph {
    let g = g_p8();
    let faces = g.faces();
    point(
        g,
        &[
            ("p", Cell::Boundary(faces[0])),
            ("q", Cell::Boundary(faces[1])),
            ("r", Cell::Boundary(faces[2])),
        ],
    )
}

/// Lollipop with its univalent end pointed.
pub fn g_lp_pointed() -> PointedRibbonGraph {
    let g = g_lp();
    let faces = g.faces();
    point(
        g,
        &[
            ("p", Cell::Boundary(faces[0])),
            ("q", Cell::Boundary(faces[1])),
            ("r", Cell::Vertex(3)),
        ],
    )
}

/// Named corpus entries in the order used by the bundled files.
pub fn named_pointed() -> Vec<(&'static str, PointedRibbonGraph)> {
    vec![
        ("g_l", g_l_pointed()),
        ("g_s", g_s_pointed()),
        ("g_t0", g_t0_pointed()),
        ("g_t1", g_t1_pointed()),
        ("g_f8", g_f8_pointed()),
        ("g_p8", g_p8_pointed()),
        ("g_lp", g_lp_pointed()),
        ("g_f8q", g_f8q()),
    ]
}
