//! Edge-length metrics and the maps built from them: the circumference map
//! to the simplex on `P`, reduction of almost-metrics, projections onto
//! connected stable subgraphs, degeneration along a permissible sequence and
//! the recovery of a stable metric from projection limits.
//!
//! Everything is generic over [`Scalar`]; use the exact [`crate::Rational`]
//! for anything that compares values.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{FromPrimitive, Num};

use crate::collapse::{self, edge_mask, stable_core, EdgeSet};
use crate::error::{RibbonError, Result};
use crate::graph::{Cell, PointedRibbonGraph};
use crate::stable::{bar_of_subset, validate_permissible, BarGraph, PermissibleSequence};

/// Ordered field elements used as lengths.
pub trait Scalar: Clone + PartialOrd + fmt::Debug + Num + FromPrimitive {
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the scalar type")
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_count(2)
    }
}

impl<T: Clone + PartialOrd + fmt::Debug + Num + FromPrimitive> Scalar for T {}

/// Lengths indexed by edge index.
pub type Lengths<S> = Vec<S>;

/// Barycentric coordinates on the simplex spanned by `P`.
pub type LambdaPoint<S> = BTreeMap<String, S>;

fn sum<S: Scalar>(xs: impl IntoIterator<Item = S>) -> S {
    xs.into_iter().fold(S::zero(), |a, b| a + b)
}

fn check_lengths<S: Scalar>(gp: &PointedRibbonGraph, l: &[S], strict: bool) -> Result<()> {
    if l.len() != gp.graph().num_edges() {
        return Err(RibbonError::InvalidMetric(format!(
            "{} lengths for {} edges",
            l.len(),
            gp.graph().num_edges()
        )));
    }
    for (k, x) in l.iter().enumerate() {
        if *x < S::zero() || (strict && x.is_zero()) {
            return Err(RibbonError::InvalidMetric(format!("edge {k} has length {x:?}")));
        }
    }
    Ok(())
}

pub fn is_unital<S: Scalar>(l: &[S]) -> bool {
    sum(l.iter().cloned()).is_one()
}

/// Scales to total length one.
pub fn normalize<S: Scalar>(l: &[S]) -> Result<Lengths<S>> {
    let total = sum(l.iter().cloned());
    if total.is_zero() {
        return Err(RibbonError::ZeroOnSubgraph);
    }
    Ok(l.iter().map(|x| x.clone() / total.clone()).collect())
}

/// Half the length of the boundary cycle of every label on a boundary cycle,
/// zero for labels on vertices.
pub fn lambda<S: Scalar>(gp: &PointedRibbonGraph, l: &[S]) -> Result<LambdaPoint<S>> {
    let g = gp.graph();
    if !g.is_connected() {
        return Err(RibbonError::Disconnected("lambda needs a connected graph".into()));
    }
    check_lengths(gp, l, false)?;
    let idx = collapse::edge_indices(g);
    Ok(gp
        .pointing()
        .iter()
        .map(|(p, &c)| {
            let v = match c {
                Cell::Vertex(_) => S::zero(),
                Cell::Boundary(f) => sum(g.face_cycle(f).into_iter().map(|e| l[idx[e]].clone())).half(),
            };
            (p.clone(), v)
        })
        .collect())
}

/// Collapses the zero set of an almost-metric, which must be negligible.
pub fn reduce_almost_metric<S: Scalar>(
    gp: &PointedRibbonGraph,
    l: &[S],
) -> Result<(PointedRibbonGraph, Lengths<S>)> {
    check_lengths(gp, l, false)?;
    let g = gp.graph();
    let zero: EdgeSet = (0..l.len()).filter(|&k| l[k].is_zero()).collect();
    if zero.is_empty() {
        return Ok((gp.clone(), l.to_vec()));
    }
    if !collapse::is_negligible(gp, &zero)? {
        return Err(RibbonError::NotNegligible);
    }
    let q = collapse::quotient_ribbon(gp, &zero)?;
    let reduced = q.pointed()?;
    let idx = collapse::edge_indices(g);
    let lengths = reduced
        .graph()
        .edges()
        .into_iter()
        .map(|rep| l[idx[q.quotient.to_host[rep]]].clone())
        .collect();
    Ok((reduced, lengths))
}

/// A unital metric on the bar graph of `G_Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection<S> {
    pub bar: BarGraph,
    /// Indexed like `bar.chains`.
    pub lengths: Lengths<S>,
}

fn connected_subset(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<()> {
    if z.is_empty() {
        return Err(RibbonError::EmptySubset);
    }
    let sub = collapse::subgraph_ribbon(gp.graph(), z)?;
    if !sub.graph.is_connected() {
        return Err(RibbonError::DisconnectedSubgraph);
    }
    Ok(())
}

/// The unital metric proportional to `l` restricted to `Z`, with the edges of
/// each bar chain added up.
pub fn project<S: Scalar>(gp: &PointedRibbonGraph, l: &[S], z: &EdgeSet) -> Result<Projection<S>> {
    check_lengths(gp, l, false)?;
    connected_subset(gp, z)?;
    let total = sum(z.iter().map(|&k| l[k].clone()));
    if total.is_zero() {
        return Err(RibbonError::ZeroOnSubgraph);
    }
    let bar = bar_of_subset(gp, z)?;
    let lengths = bar
        .chains
        .iter()
        .map(|c| sum(c.iter().map(|&k| l[k].clone())) / total.clone())
        .collect();
    Ok(Projection { bar, lengths })
}

/// Level of every edge in a permissible sequence.
fn edge_levels(seq: &PermissibleSequence, edges: usize) -> Vec<u32> {
    (0..edges)
        .map(|k| seq.levels.iter().rposition(|z| z.contains(&k)).unwrap_or(0) as u32)
        .collect()
}

/// `t^k l` on `Z_k - Z_{k+1}`.
pub fn degenerate<S: Scalar>(
    gp: &PointedRibbonGraph,
    l: &[S],
    zs: &[EdgeSet],
    t: &S,
) -> Result<Lengths<S>> {
    check_lengths(gp, l, true)?;
    if *t <= S::zero() {
        return Err(RibbonError::InvalidMetric(format!("t = {t:?} is not positive")));
    }
    let seq = validate_permissible(gp, zs)?;
    let levels = edge_levels(&seq, l.len());
    Ok(l
        .iter()
        .zip(levels)
        .map(|(x, k)| (0..k).fold(x.clone(), |acc, _| acc * t.clone()))
        .collect())
}

/// A polynomial in `t`, coefficients by increasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn monomial(coeff: S, power: usize) -> Self {
        let mut coeffs = vec![S::zero(); power];
        coeffs.push(coeff);
        Poly { coeffs }
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    fn add(&self, other: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly {
            coeffs: (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        }
    }
}

/// The degeneration as a path `t -> t^k l(e)`.
pub fn degenerate_path<S: Scalar>(
    gp: &PointedRibbonGraph,
    l: &[S],
    zs: &[EdgeSet],
) -> Result<Vec<Poly<S>>> {
    check_lengths(gp, l, true)?;
    let seq = validate_permissible(gp, zs)?;
    let levels = edge_levels(&seq, l.len());
    Ok(l
        .iter()
        .zip(levels)
        .map(|(x, k)| Poly::monomial(x.clone(), k as usize))
        .collect())
}

/// `lim_{t -> 0}` of the projection of a path onto `Z`. The path entries are
/// numerators over a common positive denominator, which cancels.
pub fn path_limit<S: Scalar>(
    gp: &PointedRibbonGraph,
    path: &[Poly<S>],
    z: &EdgeSet,
) -> Result<Projection<S>> {
    connected_subset(gp, z)?;
    let total = z
        .iter()
        .fold(Poly { coeffs: Vec::new() }, |acc, &k| acc.add(&path[k]));
    let m = total.order().ok_or(RibbonError::ZeroOnSubgraph)?;
    if z.iter().any(|&k| path[k].order().map_or(false, |o| o < m)) {
        return Err(RibbonError::InconsistentLimit(format!(
            "projection onto {z:?} has no limit"
        )));
    }
    let lead = total.coeff(m);
    let bar = bar_of_subset(gp, z)?;
    let lengths = bar
        .chains
        .iter()
        .map(|c| sum(c.iter().map(|&k| path[k].coeff(m))) / lead.clone())
        .collect();
    Ok(Projection { bar, lengths })
}

/// The part of a stable metric on one component of a level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPiece<S> {
    /// Edges of the component of `G_{Z_k}`.
    pub edges: EdgeSet,
    /// Bar chains of the component, in host edge indices.
    pub chains: Vec<Vec<usize>>,
    /// Unital lengths on the chains; zero exactly on the chains that
    /// degenerate further or are collapsed.
    pub lengths: Lengths<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableMetric<S> {
    pub sequence: PermissibleSequence,
    pub levels: Vec<Vec<LevelPiece<S>>>,
}

/// Edge sets of the components of `G_Z`.
pub fn subset_components(gp: &PointedRibbonGraph, z: &EdgeSet) -> Result<Vec<EdgeSet>> {
    let g = gp.graph();
    let mask = edge_mask(g, z)?;
    let sub = collapse::subgraph_of_mask(g, &mask);
    let idx = collapse::edge_indices(g);
    Ok(sub
        .graph
        .components()
        .into_iter()
        .map(|labels| labels.iter().map(|&x| idx[sub.to_host[x]]).collect())
        .collect())
}

/// Rebuilds the stable metric from the limits of the projections onto
/// connected stable subsets: `Z_{k+1}` is the stable core of the zero set of
/// the level-`k` limit.
pub fn extract_stable<S: Scalar>(
    gp: &PointedRibbonGraph,
    limit: &dyn Fn(&EdgeSet) -> Option<Lengths<S>>,
) -> Result<StableMetric<S>> {
    let mut levels = vec![collapse::all_edges(gp.graph())];
    let mut pieces: Vec<Vec<LevelPiece<S>>> = Vec::new();
    loop {
        let z = levels.last().unwrap().clone();
        let mut level = Vec::new();
        let mut zero = EdgeSet::new();
        for c in subset_components(gp, &z)? {
            let lengths = limit(&c).ok_or_else(|| {
                RibbonError::InconsistentLimit(format!("no limit given on {c:?}"))
            })?;
            let bar = bar_of_subset(gp, &c)?;
            if lengths.len() != bar.chains.len()
                || lengths.iter().any(|x| *x < S::zero())
                || !is_unital(&lengths)
            {
                return Err(RibbonError::InconsistentLimit(format!(
                    "limit on {c:?} is not a unital metric on its bar graph"
                )));
            }
            for (chain, x) in bar.chains.iter().zip(&lengths) {
                if x.is_zero() {
                    zero.extend(chain.iter().copied());
                }
            }
            level.push(LevelPiece {
                edges: c,
                chains: bar.chains,
                lengths,
            });
        }
        pieces.push(level);
        let next = stable_core(gp, &zero)?;
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let sequence = validate_permissible(gp, &levels)?;
    Ok(StableMetric {
        sequence,
        levels: pieces,
    })
}

/// `extract_stable` fed with the limits of a path.
pub fn extract_from_path<S: Scalar>(gp: &PointedRibbonGraph, path: &[Poly<S>]) -> Result<StableMetric<S>> {
    let limit = |z: &EdgeSet| path_limit(gp, path, z).ok().map(|p| p.lengths);
    extract_stable(gp, &limit)
}

/// The circumference map of a cell as a matrix (rows: labels in order,
/// columns: edges) and its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap<S> {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<S>>,
    pub rank: usize,
}

impl<S> LambdaMap<S> {
    /// Dimension of a generic fiber over the cell simplex.
    pub fn fiber_dimension(&self) -> usize {
        let edges = self.matrix.first().map_or(0, |r| r.len());
        edges - self.rank
    }

    /// Dimension of the image inside the simplex on `P`.
    pub fn image_dimension(&self) -> usize {
        self.rank - 1
    }
}

pub fn rank<S: Scalar>(matrix: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() / pivot.clone();
                for j in c..cols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn cell_lambda_map<S: Scalar>(gp: &PointedRibbonGraph) -> Result<LambdaMap<S>> {
    let g = gp.graph();
    if !g.is_connected() {
        return Err(RibbonError::Disconnected("lambda needs a connected graph".into()));
    }
    let idx = collapse::edge_indices(g);
    let mut labels = Vec::new();
    let mut matrix = Vec::new();
    for (p, &c) in gp.pointing() {
        let mut row = vec![S::zero(); g.num_edges()];
        if let Cell::Boundary(f) = c {
            for e in g.face_cycle(f) {
                row[idx[e]] = row[idx[e]].clone() + S::one().half();
            }
        }
        labels.push(p.clone());
        matrix.push(row);
    }
    let rank = rank(&matrix);
    Ok(LambdaMap { labels, matrix, rank })
}
