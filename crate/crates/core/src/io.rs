//! JSON file formats for graphs, stable graphs, metrics and reports.
//!
//! Output is canonical: object keys are sorted, rationals are written `p/q`
//! in lowest terms with a positive denominator, and the pairing of every
//! written graph is `(0 1)(2 3)...`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::collapse::EdgeSet;
use crate::error::{RibbonError, Result};
use crate::graph::{Cell, PointedRibbonGraph, Pointing, RibbonGraph};
use crate::metric::{LevelPiece, Poly, StableMetric};
use crate::perm;
use crate::stable::{validate_permissible, SpecialPoint, StableRibbonGraph};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IotaEnd {
    pub comp: usize,
    pub kind: String,
    pub rep: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub half_edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<Vec<[IotaEnd; 2]>>,
    #[serde(default)]
    pub pointing: BTreeMap<String, Cell>,
    pub sigma0: Vec<Vec<usize>>,
}

fn parse_err(msg: impl Into<String>) -> RibbonError {
    RibbonError::Parse(msg.into())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    let q: BigInt = q.trim().parse().map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    if q.is_zero() {
        return Err(parse_err(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn graph_and_pointing(file: &GraphFile) -> Result<(RibbonGraph, Pointing)> {
    let n = file.half_edges;
    if n == 0 {
        return Err(RibbonError::EmptyLabelSet);
    }
    if n % 2 == 1 {
        return Err(RibbonError::FixedPointInPairing(n - 1));
    }
    let s0 = perm::from_cycles(n, &file.sigma0)?;
    let g = RibbonGraph::from_permutations(s0, crate::graph::standard_pairing(n))?;
    let mut pointing = Pointing::new();
    for (label, &cell) in &file.pointing {
        if cell.rep() >= n {
            return Err(RibbonError::UnknownCell(format!("{label} -> {cell}")));
        }
        pointing.insert(label.clone(), g.cell_of(cell.rep(), cell.is_vertex()));
    }
    Ok((g, pointing))
}

/// Reads a connected or disconnected pointed graph; a file carrying an
/// `iota` block is rejected here.
pub fn pointed_from_file(file: &GraphFile) -> Result<PointedRibbonGraph> {
    if file.iota.is_some() {
        return Err(parse_err("iota block in a plain graph file"));
    }
    let (g, pointing) = graph_and_pointing(file)?;
    PointedRibbonGraph::new(g, pointing)
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

pub fn parse_pointed(text: &str) -> Result<PointedRibbonGraph> {
    pointed_from_file(&parse_graph_file(text)?)
}

pub fn graph_to_file(g: &RibbonGraph, pointing: &Pointing) -> GraphFile {
    let (g, map) = g.normalize_pairing();
    let pointing = pointing
        .iter()
        .map(|(p, c)| (p.clone(), g.cell_of(map[c.rep()], c.is_vertex())))
        .collect();
    GraphFile {
        half_edges: g.num_half_edges(),
        iota: None,
        pointing,
        sigma0: perm::cycles(g.sigma0()),
    }
}

pub fn pointed_to_file(gp: &PointedRibbonGraph) -> GraphFile {
    graph_to_file(gp.graph(), gp.pointing())
}

/// Canonical pretty JSON with sorted keys.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn write_pointed(gp: &PointedRibbonGraph) -> String {
    to_canonical_json(&pointed_to_file(gp))
}

/// A stable graph as one disjoint union: components are laid out in order,
/// each with its pairing normalized, and labels are global.
pub fn stable_to_file(s: &StableRibbonGraph) -> GraphFile {
    let mut offset = 0;
    let mut cycles = Vec::new();
    let mut maps = Vec::new();
    let mut normalized = Vec::new();
    for g in &s.components {
        let (h, map) = g.normalize_pairing();
        cycles.extend(
            perm::cycles(h.sigma0())
                .into_iter()
                .map(|c| c.into_iter().map(|x| x + offset).collect::<Vec<_>>()),
        );
        maps.push((offset, map));
        offset += h.num_half_edges();
        normalized.push(h);
    }
    let place = |p: &SpecialPoint| -> (usize, Cell) {
        let (off, map) = &maps[p.comp];
        let h = &normalized[p.comp];
        let cell = h.cell_of(map[p.cell.rep()], p.cell.is_vertex());
        let global = match cell {
            Cell::Vertex(r) => Cell::Vertex(r + off),
            Cell::Boundary(r) => Cell::Boundary(r + off),
        };
        (p.comp, global)
    };
    let pointing = s
        .pointing
        .iter()
        .map(|(l, p)| (l.clone(), place(p).1))
        .collect();
    let end = |p: &SpecialPoint| {
        let (comp, cell) = place(p);
        IotaEnd {
            comp,
            kind: cell.kind().to_string(),
            rep: cell.rep(),
        }
    };
    let iota = s.iota.iter().map(|(a, b)| [end(a), end(b)]).collect();
    GraphFile {
        half_edges: offset,
        iota: Some(iota),
        pointing,
        sigma0: cycles,
    }
}

/// Splits a multi-component file back into a stable graph.
pub fn stable_from_file(file: &GraphFile) -> Result<StableRibbonGraph> {
    let (g, pointing) = graph_and_pointing(file)?;
    let parts = g.split_components();
    let mut where_label = vec![(0usize, 0usize); g.num_half_edges()];
    for (i, (_, labels)) in parts.iter().enumerate() {
        for (local, &host) in labels.iter().enumerate() {
            where_label[host] = (i, local);
        }
    }
    let to_point = |cell: Cell| {
        let (comp, local) = where_label[cell.rep()];
        SpecialPoint::new(comp, parts[comp].0.cell_of(local, cell.is_vertex()))
    };
    let mut iota = Vec::new();
    for [a, b] in file.iota.clone().unwrap_or_default() {
        let mut ends = Vec::new();
        for x in [a, b] {
            if x.rep >= g.num_half_edges() {
                return Err(RibbonError::UnknownCell(format!("iota rep {}", x.rep)));
            }
            let cell = match x.kind.as_str() {
                "vertex" => Cell::Vertex(x.rep),
                "boundary" => Cell::Boundary(x.rep),
                k => return Err(parse_err(format!("unknown cell kind {k:?}"))),
            };
            let p = to_point(cell);
            if p.comp != x.comp {
                return Err(RibbonError::InvalidStableData(format!(
                    "iota end {} lies on component {}, not {}",
                    x.rep, p.comp, x.comp
                )));
            }
            ends.push(p);
        }
        iota.push((ends[0], ends[1]));
    }
    let pointing = pointing.into_iter().map(|(l, c)| (l, to_point(c))).collect();
    Ok(StableRibbonGraph {
        levels: vec![0; parts.len()],
        host_labels: parts.iter().map(|(_, l)| l.clone()).collect(),
        components: parts.into_iter().map(|(c, _)| c).collect(),
        pointing,
        iota,
        contracted: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub lengths: BTreeMap<String, String>,
}

/// Reads lengths keyed by edge representative into edge-index order.
pub fn metric_from_file(g: &RibbonGraph, file: &MetricFile) -> Result<Vec<Rational>> {
    let edges = g.edges();
    let mut out = vec![None; edges.len()];
    for (key, value) in &file.lengths {
        let rep: usize = key.parse().map_err(|_| parse_err(format!("bad edge key {key:?}")))?;
        let k = edges
            .iter()
            .position(|&r| r == rep)
            .ok_or(RibbonError::UnknownEdge(rep))?;
        out[k] = Some(parse_rational(value)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(k, x)| x.ok_or_else(|| RibbonError::InvalidMetric(format!("edge {} has no length", edges[k]))))
        .collect()
}

pub fn metric_to_file(g: &RibbonGraph, l: &[Rational]) -> MetricFile {
    MetricFile {
        lengths: g
            .edges()
            .into_iter()
            .zip(l)
            .map(|(rep, x)| (rep.to_string(), format_rational(x)))
            .collect(),
    }
}

pub fn parse_metric(g: &RibbonGraph, text: &str) -> Result<Vec<Rational>> {
    let file: MetricFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    metric_from_file(g, &file)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialFile {
    pub coeff: String,
    pub power: usize,
}

/// Non-zero terms of a polynomial.
pub fn poly_to_monomials(p: &Poly<Rational>) -> Vec<MonomialFile> {
    p.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| MonomialFile {
            coeff: format_rational(c),
            power: k,
        })
        .collect()
}

pub fn poly_from_monomials(ms: &[MonomialFile]) -> Result<Poly<Rational>> {
    let mut p = Poly { coeffs: Vec::new() };
    for m in ms {
        let c = parse_rational(&m.coeff)?;
        if p.coeffs.len() <= m.power {
            p.coeffs.resize(m.power + 1, Rational::zero());
        }
        p.coeffs[m.power] = &p.coeffs[m.power] + c;
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableMetricFile {
    /// Levels of the permissible sequence, as edge indices.
    pub sequence: Vec<Vec<usize>>,
    /// Per level, lengths keyed by the comma-joined edge representatives of
    /// each bar chain.
    pub levels: Vec<BTreeMap<String, String>>,
}

fn chain_key(g: &RibbonGraph, chain: &[usize]) -> String {
    let edges = g.edges();
    chain
        .iter()
        .map(|&k| edges[k].to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn stable_metric_to_file(g: &RibbonGraph, m: &StableMetric<Rational>) -> StableMetricFile {
    StableMetricFile {
        sequence: m
            .sequence
            .levels
            .iter()
            .map(|z| z.iter().copied().collect())
            .collect(),
        levels: m
            .levels
            .iter()
            .map(|pieces| {
                pieces
                    .iter()
                    .flat_map(|p| {
                        p.chains
                            .iter()
                            .zip(&p.lengths)
                            .map(|(c, x)| (chain_key(g, c), format_rational(x)))
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn stable_metric_from_file(
    gp: &PointedRibbonGraph,
    file: &StableMetricFile,
) -> Result<StableMetric<Rational>> {
    let zs: Vec<EdgeSet> = file
        .sequence
        .iter()
        .map(|z| z.iter().copied().collect())
        .collect();
    let sequence = validate_permissible(gp, &zs)?;
    if file.levels.len() != zs.len() {
        return Err(RibbonError::InvalidMetric(format!(
            "{} levels for a sequence of length {}",
            file.levels.len(),
            zs.len()
        )));
    }
    let g = gp.graph();
    let mut levels = Vec::new();
    for (z, values) in zs.iter().zip(&file.levels) {
        let mut pieces = Vec::new();
        let mut used = 0;
        for c in crate::metric::subset_components(gp, z)? {
            let bar = crate::stable::bar_of_subset(gp, &c)?;
            let mut lengths = Vec::new();
            for chain in &bar.chains {
                let key = chain_key(g, chain);
                let x = values
                    .get(&key)
                    .ok_or_else(|| RibbonError::InvalidMetric(format!("no length for chain {key}")))?;
                lengths.push(parse_rational(x)?);
                used += 1;
            }
            let total = lengths.iter().fold(Rational::zero(), |a, b| a + b);
            if !total.is_one() || lengths.iter().any(|x| *x < Rational::zero()) {
                return Err(RibbonError::InvalidMetric(format!(
                    "lengths on {c:?} are not unital"
                )));
            }
            pieces.push(LevelPiece {
                edges: c,
                chains: bar.chains,
                lengths,
            });
        }
        if used != values.len() {
            return Err(RibbonError::InvalidMetric("lengths on unknown chains".into()));
        }
        levels.push(pieces);
    }
    Ok(StableMetric { sequence, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::stable::stabilize;

    #[test]
    fn corpus_round_trips() {
        for (_, gp) in corpus::named_pointed() {
            let text = write_pointed(&gp);
            let back = parse_pointed(&text).unwrap();
            assert_eq!(back, gp);
            assert_eq!(write_pointed(&back), text);
        }
    }

    #[test]
    fn malformed_files() {
        let odd = r#"{"half_edges": 3, "sigma0": [[0, 1, 2]], "pointing": {}}"#;
        assert_eq!(parse_pointed(odd).unwrap_err().name(), "FixedPointInPairing");
        let extra = r#"{"half_edges": 2, "sigma0": [[0, 1]], "pointing": {}, "colour": 1}"#;
        assert_eq!(parse_pointed(extra).unwrap_err().name(), "Parse");
        let uncovered = r#"{"half_edges": 2, "sigma0": [[0, 1]], "pointing": {}}"#;
        assert_eq!(parse_pointed(uncovered).unwrap_err().name(), "DistinguishedPointUncovered");
    }

    #[test]
    fn rationals() {
        let x = parse_rational("6/-8").unwrap();
        assert_eq!(format_rational(&x), "-3/4");
        assert_eq!(format_rational(&parse_rational("2").unwrap()), "2/1");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn stable_graph_round_trip() {
        let z: EdgeSet = [0].into_iter().collect();
        let s = stabilize(&corpus::g_f8q(), &z).unwrap();
        let file = stable_to_file(&s);
        assert_eq!(file.iota.as_ref().unwrap().len(), 2);
        let back = stable_from_file(&file).unwrap();
        assert_eq!(stable_to_file(&back), file);
        assert_eq!(crate::stable::glued_genus(&back).unwrap(), 1);
    }

    #[test]
    fn metric_files() {
        let gp = corpus::g_f8q();
        let l = vec![parse_rational("1/3").unwrap(), parse_rational("2/3").unwrap()];
        let file = metric_to_file(gp.graph(), &l);
        assert_eq!(file.lengths["2"], "2/3");
        assert_eq!(metric_from_file(gp.graph(), &file).unwrap(), l);

        let path = vec![Poly::monomial(Rational::one(), 1), Poly::monomial(Rational::one(), 0)];
        let sm = crate::metric::extract_from_path(&gp, &path).unwrap();
        let file = stable_metric_to_file(gp.graph(), &sm);
        assert_eq!(file.sequence, vec![vec![0, 1], vec![0]]);
        assert_eq!(stable_metric_from_file(&gp, &file).unwrap(), sm);
        let ms = poly_to_monomials(&path[0]);
        assert_eq!(ms, vec![MonomialFile { coeff: "1/1".into(), power: 1 }]);
        assert_eq!(poly_from_monomials(&ms).unwrap(), path[0]);
    }
}
