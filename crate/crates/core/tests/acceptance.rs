mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use ribbonmod::canon::{canonical_form, canonical_form_pointed};
use ribbonmod::collapse::{is_negligible, pseudosurface, EdgeSet};
use ribbonmod::corpus;
use ribbonmod::enumerate::{
    build_complex, classical_euler, enumerate_graphs, enumerate_permissible, orbifold_euler,
    resolutions, verify_dimensions, CellClass, DimensionReport,
};
use ribbonmod::graph::{PointedRibbonGraph, RibbonGraph};
use ribbonmod::metric::{degenerate_path, extract_from_path, lambda, normalize, reduce_almost_metric};
use ribbonmod::stable::{glued_genus, q_minimal_check, stabilize};
use ribbonmod::Rational;

// Every value is compared exactly (integers and arbitrary-precision
// rationals); the only tolerances are the wall-clock budgets.
const BUDGET_PERMUTATIONS: Duration = Duration::from_secs(10);
const BUDGET_GOLDEN_COUNTS: Duration = Duration::from_secs(5);
const BUDGET_DIMENSIONS: Duration = Duration::from_secs(600);
const BUDGET_EULER: Duration = Duration::from_secs(600);
const BUDGET_GENUS: Duration = Duration::from_secs(900);

const RANDOM_PAIRS: usize = 10_000;
const MAX_RANDOM_HALF_EDGES: usize = 20;
const METRICS_PER_CLASS: usize = 100;
const REDUCTIONS_PER_CLASS: usize = 10;
const PAIRS: [(usize, usize); 6] = [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (2, 1)];
const THREE_POINT_CLASSES: usize = 19;
const THREE_POINT_HISTOGRAM: [(usize, usize); 3] = [(0, 6), (1, 9), (2, 4)];

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn random_positive(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rational> {
    (0..m).map(|_| q(rng.gen_range(1..=1000), rng.gen_range(1..=1000))).collect()
}

/// Small integer weights keep every value inside `Rational64`; overflow
/// would panic rather than wrap, so the checks stay exact.
fn random_unital(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rational64> {
    let weights: Vec<Rational64> = (0..m).map(|_| Rational64::from_integer(rng.gen_range(1..=1000))).collect();
    normalize(&weights).expect("positive weights")
}

fn classes(pairs: &[(usize, usize)]) -> std::result::Result<Vec<((usize, usize), CellClass)>, String> {
    let mut out = Vec::new();
    for &(g, n) in pairs {
        out.extend(lift(enumerate_graphs(g, n))?.into_iter().map(|c| ((g, n), c)));
    }
    Ok(out)
}

fn subsets(m: usize) -> impl Iterator<Item = EdgeSet> {
    (1u64..(1u64 << m) - 1).map(move |mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
}

fn permutation_model() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut dual_checked = 0;
    for _ in 0..RANDOM_PAIRS {
        let m = 2 * rng.gen_range(1..=MAX_RANDOM_HALF_EDGES / 2);
        let mut sigma0: Vec<usize> = (0..m).collect();
        sigma0.shuffle(&mut rng);
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        let mut sigma1 = vec![0; m];
        for p in order.chunks(2) {
            sigma1[p[0]] = p[1];
            sigma1[p[1]] = p[0];
        }
        let g = lift(RibbonGraph::from_permutations(sigma0, sigma1.clone()))?;
        let (s0, s1, si) = (g.sigma0(), g.sigma1(), g.sigma_inf());
        ensure((0..m).all(|e| si[s1[s0[e]]] == e), || format!("sigma_inf sigma1 sigma0 != id on {g:?}"))?;
        for comp in g.components() {
            let chi = g.euler_characteristic_of(comp[0]);
            ensure(chi <= 2 && chi % 2 == 0, || format!("component Euler characteristic {chi}"))?;
        }
        let dd = g.dual().dual();
        ensure(dd == g.relabel(&sigma1), || format!("dual of dual is not the sigma1-relabeling of {g:?}"))?;
        if g.is_connected() {
            ensure(canonical_form(&dd).code == canonical_form(&g).code, || {
                format!("dual of dual not isomorphic to {g:?}")
            })?;
            dual_checked += 1;
        }
    }
    Ok(format!(
        "{RANDOM_PAIRS} pairs up to {MAX_RANDOM_HALF_EDGES} half-edges, {dual_checked} connected ones also by canonical form"
    ))
}

fn golden_counts() -> Check {
    let start = Instant::now();
    let torus = lift(enumerate_graphs(1, 1))?;
    let three = lift(enumerate_graphs(0, 3))?;
    let elapsed = start.elapsed();
    ensure(elapsed < BUDGET_GOLDEN_COUNTS, || format!("enumeration took {elapsed:?}"))?;

    let mut orders: Vec<usize> = torus.iter().map(|c| c.aut_order).collect();
    orders.sort_unstable();
    ensure(orders == [4, 6], || format!("(1,1) automorphism orders {orders:?}"))?;

    let oracle = common::brute_force(0, 3, 6);
    let found: BTreeMap<String, usize> = three.iter().map(|c| (c.certificate.clone(), c.aut_order)).collect();
    ensure(oracle == found, || {
        format!("(0,3): enumeration gives {} classes, brute force {}", found.len(), oracle.len())
    })?;
    ensure(oracle.len() == THREE_POINT_CLASSES, || format!("(0,3) oracle count {}", oracle.len()))?;
    let mut hist = BTreeMap::new();
    for c in &three {
        *hist.entry(c.dimension).or_insert(0) += 1;
    }
    let golden: BTreeMap<usize, usize> = THREE_POINT_HISTOGRAM.into_iter().collect();
    ensure(hist == golden, || format!("(0,3) histogram {hist:?}"))?;
    Ok(format!(
        "(1,1): 2 classes, |Aut| {{6,4}}; (0,3): {} classes = brute force, histogram {hist:?}",
        three.len()
    ))
}

fn dimension_reports() -> std::result::Result<Vec<DimensionReport>, String> {
    PAIRS
        .iter()
        .map(|&(g, n)| Ok(verify_dimensions(&lift(build_complex(g, n))?)))
        .collect()
}

fn dimensions(reports: &[DimensionReport]) -> Check {
    let mut out = Vec::new();
    for r in reports {
        let (g, n) = (r.genus as i64, r.points as i64);
        let max_dim = 6 * g - 7 + 3 * n;
        let fiber = 6 * g - 6 + 2 * n;
        ensure(r.max_dim_full.map(|d| d as i64) == Some(max_dim), || {
            format!("({g},{n}): max Q=P dimension {:?}, expected {max_dim}", r.max_dim_full)
        })?;
        ensure(r.max_fiber_dim as i64 == fiber, || {
            format!("({g},{n}): max fiber dimension {}, expected {fiber}", r.max_fiber_dim)
        })?;
        out.push(format!("({g},{n}) {max_dim}/{fiber}"));
    }
    Ok(format!("max dim / fiber dim: {}", out.join(", ")))
}

fn chain_lengths(reports: &[DimensionReport]) -> Check {
    let mut bad = Vec::new();
    let mut all = Vec::new();
    for r in reports {
        let (g, n) = (r.genus as i64, r.points as i64);
        let bound = 4 * g - 4 + n + (n - 1);
        all.push(format!("({g},{n}) {}<={bound}", r.longest_chain));
        if r.longest_chain as i64 > bound {
            bad.push(format!("({g},{n}) chain {} > bound {bound}", r.longest_chain));
        }
    }
    if bad.is_empty() {
        Ok(all.join(", "))
    } else {
        Err(bad.join("; "))
    }
}

fn farey() -> Check {
    let f8 = corpus::g_f8_pointed();
    let res = lift(resolutions(&f8, 0))?;
    ensure(res.len() == 2, || format!("{} resolutions of the 4-valent vertex", res.len()))?;

    let c = lift(build_complex(1, 1))?;
    let t1 = lift(c.index_of(&canonical_form_pointed(&corpus::g_t1_pointed()).certificate()).ok_or("T1 missing"))?;
    let f8i = lift(c.index_of(&canonical_form_pointed(&f8).certificate()).ok_or("F8 missing"))?;
    ensure(c.faces.get(&(t1, f8i)) == Some(&3), || format!("T1 -> F8 multiplicity {:?}", c.faces.get(&(t1, f8i))))?;

    let mut degenerations = 0;
    for (g, n) in [(1, 1), (0, 4)] {
        let c = lift(build_complex(g, n))?;
        for (fi, f) in c.cells.iter().enumerate() {
            let graph = f.graph.graph();
            for v in graph.vertices() {
                if graph.valency(v) != 4 || f.graph.is_marked_vertex(v) {
                    continue;
                }
                let res = lift(resolutions(&f.graph, v))?;
                ensure(res.len() == 2, || format!("({g},{n}) cell {fi}: {} resolutions", res.len()))?;
                for r in &res {
                    let ci = c.index_of(&canonical_form_pointed(r).certificate());
                    ensure(ci.map_or(false, |ci| c.faces.contains_key(&(ci, fi))), || {
                        format!("({g},{n}) cell {fi}: resolution is not a coface")
                    })?;
                }
                degenerations += 1;
            }
        }
    }
    Ok(format!(
        "F8 has 2 resolutions, T1 -> F8 multiplicity 3, {degenerations} codimension-1 degenerations in (1,1),(0,4) each with 2"
    ))
}

fn euler() -> Check {
    let start = Instant::now();
    for (g, expected) in [(1, q(-1, 12)), (2, q(1, 120))] {
        let value = lift(orbifold_euler(g))?;
        ensure(value == expected, || format!("g={g}: {value}, expected {expected}"))?;
        let classical = lift(classical_euler(g, 1))?;
        ensure(classical == expected, || format!("g={g}: classical value {classical}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BUDGET_EULER, || format!("took {elapsed:?}"))?;
    Ok("chi(M_1,1) = -1/12, chi(M_2,1) = 1/120, matching the classical values".into())
}

fn genus_bookkeeping() -> Check {
    let all = classes(&PAIRS)?;
    let small: Vec<&CellClass> = all.iter().map(|(_, c)| c).filter(|c| c.graph.graph().num_half_edges() <= 12).collect();
    let results: Vec<std::result::Result<usize, String>> = small
        .par_iter()
        .map(|c| {
            let gp = &c.graph;
            let genus = gp.graph().genus();
            let mut checked = 0;
            for z in subsets(gp.graph().num_edges()) {
                let s = stabilize(gp, &z).map_err(|e| format!("{}: stabilize {z:?}: {e}", c.certificate))?;
                let glued = lift(glued_genus(&s))?;
                ensure(glued == genus, || format!("{}: Z={z:?} glued genus {glued} != {genus}", c.certificate))?;
                let p = lift(pseudosurface(gp, &z))?;
                let report = q_minimal_check(&p);
                ensure(report.passes(), || format!("{}: Z={z:?} {report:?}", c.certificate))?;
                checked += 1;
            }
            Ok(checked)
        })
        .collect();
    let mut total = 0;
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(k) => total += k,
            Err(e) => failures.push(e),
        }
    }
    if failures.is_empty() {
        Ok(format!("{} classes, {total} pairs (G, Z)", small.len()))
    } else {
        Err(format!("{} failing classes, first: {}", failures.len(), failures[0]))
    }
}

fn edge_level(levels: &[EdgeSet], e: usize) -> usize {
    levels.iter().rposition(|z| z.contains(&e)).unwrap_or(0)
}

fn round_trip_one(gp: &PointedRibbonGraph, levels: &[EdgeSet], l: &[Rational]) -> std::result::Result<(), String> {
    let path = lift(degenerate_path(gp, l, levels))?;
    let sm = lift(extract_from_path(gp, &path))?;
    ensure(sm.sequence.levels == levels, || format!("recovered {:?} from {levels:?}", sm.sequence.levels))?;
    ensure(sm.levels.len() == levels.len(), || "wrong number of levels".into())?;
    for (k, pieces) in sm.levels.iter().enumerate() {
        let covered: BTreeSet<usize> = pieces.iter().flat_map(|p| p.edges.iter().copied()).collect();
        let total: usize = pieces.iter().map(|p| p.edges.len()).sum();
        ensure(covered == levels[k] && total == covered.len(), || format!("level {k} pieces do not partition Z_{k}"))?;
        for p in pieces {
            let at_level = |e: &&usize| edge_level(levels, **e) == k;
            let denom: Rational = p.edges.iter().filter(at_level).map(|&e| l[e].clone()).sum();
            let expected: Vec<Rational> = p
                .chains
                .iter()
                .map(|c| c.iter().filter(at_level).map(|&e| l[e].clone()).sum::<Rational>() / denom.clone())
                .collect();
            ensure(p.lengths == expected, || format!("level {k} piece {:?}: {:?} != {expected:?}", p.edges, p.lengths))?;
        }
    }
    Ok(())
}

fn round_trip() -> Check {
    let all = classes(&PAIRS)?;
    let small: Vec<&CellClass> = all.iter().map(|(_, c)| c).filter(|c| c.graph.graph().num_half_edges() <= 10).collect();
    let results: Vec<std::result::Result<(usize, usize), String>> = small
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let gp = &c.graph;
            let mut rng = ChaCha8Rng::seed_from_u64(7_000 + i as u64);
            let seqs = lift(enumerate_permissible(gp, 2))?;
            let mut deep = 0;
            for (seq, _) in &seqs {
                let l = random_positive(&mut rng, gp.graph().num_edges());
                round_trip_one(gp, &seq.levels, &l).map_err(|e| format!("{}: {e}", c.certificate))?;
                deep += (seq.depth() == 2) as usize;
            }
            Ok((seqs.len(), deep))
        })
        .collect();
    let (mut total, mut deep) = (0, 0);
    for r in results {
        let (a, b) = r?;
        total += a;
        deep += b;
    }
    Ok(format!("{} classes, {total} sequences ({deep} of depth 2)", small.len()))
}

fn negligible_subsets(gp: &PointedRibbonGraph, rng: &mut ChaCha8Rng) -> std::result::Result<Vec<EdgeSet>, String> {
    let m = gp.graph().num_edges();
    let mut found = BTreeSet::new();
    let mut candidates: Vec<EdgeSet> = (0..m).map(|k| [k].into_iter().collect()).collect();
    for _ in 0..8 {
        candidates.push((0..m).filter(|_| rng.gen_bool(0.4)).collect());
    }
    for z in candidates {
        if !z.is_empty() && z.len() < m && lift(is_negligible(gp, &z))? {
            found.insert(z);
        }
    }
    Ok(found.into_iter().collect())
}

fn lambda_normalization() -> Check {
    let all = classes(&PAIRS)?;
    let results: Vec<std::result::Result<usize, String>> = all
        .par_iter()
        .enumerate()
        .map(|(i, (_, c))| {
            let gp = &c.graph;
            let m = gp.graph().num_edges();
            let mut rng = ChaCha8Rng::seed_from_u64(90_000 + i as u64);
            let negligible = negligible_subsets(gp, &mut rng)?;
            let mut reductions = 0;
            for k in 0..METRICS_PER_CLASS {
                let l = random_unital(&mut rng, m);
                let lam = lift(lambda(gp, &l))?;
                let s: Rational64 = lam.values().copied().sum();
                ensure(s.is_one(), || format!("{}: lambda sums to {s}", c.certificate))?;
                if negligible.is_empty() || k >= REDUCTIONS_PER_CLASS {
                    continue;
                }
                let z = &negligible[k % negligible.len()];
                let mut almost = l.clone();
                for &e in z {
                    almost[e] = Rational64::zero();
                }
                let almost = lift(normalize(&almost))?;
                let before = lift(lambda(gp, &almost))?;
                let (reduced, rl) = lift(reduce_almost_metric(gp, &almost))?;
                let after = lift(lambda(&reduced, &rl))?;
                ensure(before == after, || format!("{}: reduction along {z:?} changes lambda", c.certificate))?;
                reductions += 1;
            }
            Ok(reductions)
        })
        .collect();
    let mut reductions = 0;
    for r in results {
        reductions += r?;
    }
    Ok(format!(
        "{} classes x {METRICS_PER_CLASS} metrics sum to 1; {reductions} negligible reductions preserve lambda",
        all.len()
    ))
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn selected(label: &str) -> bool {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    filters.is_empty() || filters.iter().any(|f| label.contains(f.as_str()))
}

fn run(label: &str, budget: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    if !selected(label) {
        return true;
    }
    let start = Instant::now();
    let mut outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| Err(panic_message(p)));
    let elapsed = start.elapsed();
    if let (Ok(_), Some(b)) = (&outcome, budget) {
        if elapsed > b {
            outcome = Err(format!("over the {b:?} budget"));
        }
    }
    let ok = outcome.is_ok();
    let (tag, detail) = match outcome {
        Ok(d) => ("PASS", d),
        Err(e) => ("FAIL", e),
    };
    println!("{tag} {label}: {detail} [{:.1}s]", elapsed.as_secs_f64());
    ok
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= run("criterion 1 (permutation model)", Some(BUDGET_PERMUTATIONS), permutation_model);
    ok &= run("criterion 2 (golden counts)", None, golden_counts);

    let start = Instant::now();
    let reports = if selected("criterion 3") { dimension_reports() } else { Ok(Vec::new()) };
    let built = start.elapsed();
    let within = built < BUDGET_DIMENSIONS;
    ok &= run("criterion 3 (cell and fiber dimensions)", None, || {
        ensure(within, || format!("complexes took {built:?}"))?;
        let d = dimensions(reports.as_ref().map_err(Clone::clone)?)?;
        Ok(format!("{d}; complexes built in {:.1}s", built.as_secs_f64()))
    });
    ok &= run("criterion 3 (face chain length)", None, || {
        chain_lengths(reports.as_ref().map_err(Clone::clone)?)
    });

    ok &= run("criterion 4 (Farey adjacency)", None, farey);
    ok &= run("criterion 5 (orbifold Euler)", None, euler);
    ok &= run("criterion 6 (genus bookkeeping)", Some(BUDGET_GENUS), genus_bookkeeping);
    ok &= run("criterion 7 (stable round trip)", None, round_trip);
    ok &= run("criterion 8 (lambda normalization)", None, lambda_normalization);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
