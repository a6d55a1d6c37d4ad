//! The `ribbon` command line. Reports are canonical JSON on standard output;
//! diagnostics go to standard error and start with the error name.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 property or validation
//! failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canon::{automorphisms_pointed, canonical_form_pointed, digest};
use crate::collapse::{self, EdgeSet};
use crate::enumerate::{self, CellClass, ModuliCellComplex};
use crate::error::RibbonError;
use crate::graph::{Cell, PointedRibbonGraph, Pointing};
use crate::io::{self, format_rational, parse_rational};
use crate::metric;
use crate::stable;
use crate::surface::surface_complex;
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "ribbon", about = "Ribbon graphs and the cells of combinatorial moduli spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportKind {
    Dims,
    Euler,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Dims,
    Euler,
    Farey,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants of a pointed graph.
    Analyze { file: PathBuf },
    /// The dual graph, exchanging vertices and boundary cycles.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Collapse an edge subset.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        edges: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stable graph of an edge subset or of a permissible sequence, or the
    /// list of permissible sequences up to a depth.
    Stabilize {
        file: PathBuf,
        #[arg(long, conflicts_with_all = ["sequence", "depth"])]
        edges: Option<String>,
        #[arg(long, conflicts_with = "depth")]
        sequence: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Circumference map, reduction, degeneration and stable limit of a metric.
    Metric {
        file: PathBuf,
        #[arg(long)]
        metric: PathBuf,
        #[arg(long)]
        sequence: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every cell for a stable pair (g, n).
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        complex: bool,
        #[arg(long)]
        report: Option<ReportKind>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: usize,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Input(RibbonError),
    Property(RibbonError),
    /// A suite ran and reported a failed check.
    Check(Value),
}

impl From<RibbonError> for Failure {
    fn from(e: RibbonError) -> Self {
        Failure::Property(e)
    }
}

type CliResult = std::result::Result<Value, Failure>;

struct Ctx {
    inputs: Vec<(String, String)>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> std::result::Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push((path.display().to_string(), digest(&text)));
        Ok(text)
    }

    fn graph(&mut self, path: &Path) -> std::result::Result<PointedRibbonGraph, Failure> {
        let text = self.read(path)?;
        io::parse_pointed(&text).map_err(Failure::Input)
    }
}

fn parse_edges(s: &str) -> std::result::Result<EdgeSet, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad edge index {x:?}")))
        })
        .collect()
}

fn parse_sequence(s: &str) -> std::result::Result<Vec<EdgeSet>, Failure> {
    s.split(';').map(parse_edges).collect()
}

fn edges_json(z: &EdgeSet) -> Value {
    json!(z.iter().collect::<Vec<_>>())
}

fn write_out(dir: &Option<PathBuf>, name: &str, text: &str) -> std::result::Result<(), Failure> {
    if let Some(dir) = dir {
        fs::create_dir_all(dir)
            .and_then(|_| fs::write(dir.join(name), text))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", dir.join(name).display())))?;
    }
    Ok(())
}

fn graph_value(gp: &PointedRibbonGraph) -> Value {
    serde_json::to_value(io::pointed_to_file(gp)).expect("serializable")
}

fn certificate(gp: &PointedRibbonGraph) -> String {
    canonical_form_pointed(gp).certificate()
}

fn analyze(ctx: &mut Ctx, file: &Path) -> CliResult {
    let gp = ctx.graph(file)?;
    let g = gp.graph();
    let surface = surface_complex(g);
    let mut report = json!({
        "half_edges": g.num_half_edges(),
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "faces": g.num_faces(),
        "components": g.num_components(),
        "genus": g.genus(),
        "euler_characteristic": g.euler_characteristic(),
        "distinguished": g.distinguished_points().len(),
        "aut_order": automorphisms_pointed(&gp).order,
        "certificate": certificate(&gp),
        "q": gp.q_labels(),
        "surface": {
            "triangles": surface.num_triangles(),
            "euler_characteristic": surface.euler_characteristic(),
            "closed": surface.closed,
            "oriented": surface.oriented,
        },
    });
    if g.is_connected() {
        let lam: metric::LambdaMap<Rational> = metric::cell_lambda_map(&gp)?;
        report["lambda_rank"] = json!(lam.rank);
        report["fiber_dimension"] = json!(lam.fiber_dimension());
    }
    Ok(report)
}

fn dual(ctx: &mut Ctx, file: &Path, out: &Option<PathBuf>) -> CliResult {
    let gp = ctx.graph(file)?;
    let g = gp.graph();
    let d = g.dual();
    // boundary cycles become vertices; the vertex through e becomes the
    // boundary cycle through sigma1(e)
    let pointing: Pointing = gp
        .pointing()
        .iter()
        .map(|(p, &c)| {
            let cell = match c {
                Cell::Boundary(f) => d.cell_of(f, true),
                Cell::Vertex(v) => d.cell_of(g.sigma1()[v], false),
            };
            (p.clone(), cell)
        })
        .collect();
    let file = io::graph_to_file(&d, &pointing);
    let text = io::to_canonical_json(&file);
    write_out(out, "dual.json", &text)?;
    let valid = PointedRibbonGraph::new(d.clone(), pointing).is_ok();
    let double = g.dual().dual().relabel(g.sigma1());
    Ok(json!({
        "graph": serde_json::to_value(&file).expect("serializable"),
        "pointing_valid": valid,
        "double_dual_is_original_via_sigma1": double == *g,
    }))
}

fn collapse_cmd(ctx: &mut Ctx, file: &Path, edges: &str, out: &Option<PathBuf>) -> CliResult {
    let gp = ctx.graph(file)?;
    let z = parse_edges(edges)?;
    let negligible = collapse::is_negligible(&gp, &z)?;
    let q = collapse::quotient_ribbon(&gp, &z)?;
    let file = io::graph_to_file(q.graph(), &q.pointing);
    let text = io::to_canonical_json(&file);
    write_out(out, "quotient.json", &text)?;
    let ex = collapse::exceptional_sets(&gp, &z)?;
    let ps = collapse::pseudosurface(&gp, &z)?;
    let pairs: Vec<Value> = ex
        .pairs
        .iter()
        .map(|p| json!({"vertex": p.vertex, "boundary": p.boundary, "component": p.component}))
        .collect();
    Ok(json!({
        "graph": serde_json::to_value(&file).expect("serializable"),
        "unplaced": q.unplaced,
        "report": {
            "negligible": negligible,
            "semistable_core": edges_json(&ex.semistable),
            "stable_core": edges_json(&ex.stable),
            "exceptional": {
                "pairs": pairs,
                "boundaries": ex.exceptional_boundaries,
                "bijective": ex.is_bijective(),
            },
            "epsilon": ps.epsilon_total(),
        },
    }))
}

fn stable_value(s: &stable::StableRibbonGraph) -> Value {
    serde_json::to_value(io::stable_to_file(s)).expect("serializable")
}

fn stabilize_cmd(
    ctx: &mut Ctx,
    file: &Path,
    edges: &Option<String>,
    sequence: &Option<String>,
    depth: Option<usize>,
    out: &Option<PathBuf>,
) -> CliResult {
    let gp = ctx.graph(file)?;
    if let Some(d) = depth {
        let seqs = enumerate::enumerate_permissible(&gp, d)?;
        let list: Vec<Value> = seqs
            .iter()
            .map(|(s, c)| {
                json!({
                    "sequence": s.levels.iter().map(edges_json).collect::<Vec<_>>(),
                    "certificate": c,
                })
            })
            .collect();
        return Ok(json!({ "sequences": list }));
    }
    let (s, mut extra) = match (edges, sequence) {
        (Some(e), None) => {
            let z = parse_edges(e)?;
            let s = stable::stabilize(&gp, &z)?;
            let ps = collapse::pseudosurface(&gp, &z)?;
            let q = stable::q_minimal_check(&ps);
            let extra = json!({
                "q_minimal": {
                    "injective_q": q.injective_q,
                    "finite_automorphisms": q.finite_automorphisms,
                    "genus_identity": q.genus_identity,
                },
                "pseudosurface_genus": stable::pseudosurface_genus(&ps)?,
            });
            (s, extra)
        }
        (None, Some(seq)) => {
            let zs = parse_sequence(seq)?;
            (stable::stabilize_sequence(&gp, &zs)?, json!({}))
        }
        _ => return Err(Failure::Usage("give one of --edges, --sequence or --depth".into())),
    };
    let orders = stable::validate_stable(&s)?;
    let value = stable_value(&s);
    write_out(out, "stable.json", &io::to_canonical_json(&value))?;
    extra["graph"] = value;
    extra["orders"] = json!(orders);
    extra["glued_genus"] = json!(stable::glued_genus(&s)?);
    extra["host_genus"] = json!(gp.graph().genus());
    extra["certificate"] = json!(enumerate::stable_certificate(&s));
    Ok(extra)
}

fn lambda_value(lam: &metric::LambdaPoint<Rational>) -> Value {
    json!(lam
        .iter()
        .map(|(p, x)| (p.clone(), format_rational(x)))
        .collect::<std::collections::BTreeMap<_, _>>())
}

fn metric_cmd(
    ctx: &mut Ctx,
    file: &Path,
    metric_file: &Path,
    sequence: &Option<String>,
    t: &Option<String>,
    out: &Option<PathBuf>,
) -> CliResult {
    let gp = ctx.graph(file)?;
    let text = ctx.read(metric_file)?;
    let l = io::parse_metric(gp.graph(), &text).map_err(Failure::Input)?;
    let mut report = json!({
        "lambda": lambda_value(&metric::lambda(&gp, &l)?),
        "unital": metric::is_unital(&l),
    });
    if l.iter().any(|x| *x == Rational::from_integer(0.into())) {
        let (red, rl) = metric::reduce_almost_metric(&gp, &l)?;
        report["reduced"] = json!({
            "graph": graph_value(&red),
            "metric": serde_json::to_value(io::metric_to_file(red.graph(), &rl)).expect("serializable"),
            "lambda": lambda_value(&metric::lambda(&red, &rl)?),
        });
    }
    if let Some(seq) = sequence {
        let zs = parse_sequence(seq)?;
        match t {
            Some(t) => {
                let t = parse_rational(t).map_err(|e| Failure::Usage(e.to_string()))?;
                let lt = metric::degenerate(&gp, &l, &zs, &t)?;
                let mf = io::metric_to_file(gp.graph(), &lt);
                write_out(out, "metric.json", &io::to_canonical_json(&mf))?;
                report["degenerate"] = serde_json::to_value(mf).expect("serializable");
            }
            None => {
                let path = metric::degenerate_path(&gp, &l, &zs)?;
                let sm = metric::extract_from_path(&gp, &path)?;
                let edges = gp.graph().edges();
                report["path"] = json!(path
                    .iter()
                    .zip(&edges)
                    .map(|(p, rep)| (rep.to_string(), io::poly_to_monomials(p)))
                    .collect::<std::collections::BTreeMap<_, _>>());
                let smf = io::stable_metric_to_file(gp.graph(), &sm);
                write_out(out, "stable_metric.json", &io::to_canonical_json(&smf))?;
                report["stable_metric"] = serde_json::to_value(smf).expect("serializable");
            }
        }
    } else if t.is_some() {
        return Err(Failure::Usage("--t needs --sequence".into()));
    }
    Ok(report)
}

fn cell_value(c: &CellClass) -> Value {
    json!({
        "graph": graph_value(&c.graph),
        "certificate": c.certificate,
        "dimension": c.dimension,
        "aut_order": c.aut_order,
        "lambda_rank": c.lambda_rank,
        "q": c.q,
    })
}

fn dims_value(r: &enumerate::DimensionReport) -> Value {
    let by_q: Vec<Value> = r
        .max_dim_by_q
        .iter()
        .map(|(q, (d, b))| json!({"q": q, "max_dimension": d, "bound": b}))
        .collect();
    json!({
        "max_dimension_full_q": r.max_dim_full,
        "expected_max_dimension": r.expected_max_dim,
        "max_dimension_by_q": by_q,
        "max_fiber_dimension": r.max_fiber_dim,
        "expected_fiber_dimension": r.expected_fiber_dim,
        "min_dimension": r.min_dim,
        "stated_min_bound": r.stated_min_bound,
        "derived_min_bound": r.derived_min_bound,
        "stated_min_holds": r.stated_min_holds(),
        "derived_min_holds": r.derived_min_holds(),
        "longest_chain": r.longest_chain,
        "chain_bound": r.chain_bound,
        "checks": {
            "max_dimension": r.max_dim_ok(),
            "fiber_dimension": r.fiber_ok(),
            "chain_length": r.chain_ok(),
            "faces_drop_dimension": r.faces_drop_dimension,
            "faces_closed": r.unmatched_collapses == 0,
        },
    })
}

fn dims_pass(r: &enumerate::DimensionReport) -> bool {
    r.max_dim_ok() && r.fiber_ok() && r.chain_ok() && r.faces_drop_dimension && r.unmatched_collapses == 0
}

fn euler_value(cells: &[CellClass], g: usize, n: usize) -> crate::Result<(Value, bool)> {
    let value = enumerate::stratum_euler(cells, n);
    let classical = enumerate::classical_euler(g, n)?;
    let pass = value == classical;
    Ok((
        json!({
            "value": format_rational(&value),
            "classical": format_rational(&classical),
            "alternating_sum_all_cells": format_rational(&enumerate::orbifold_euler_of(cells)),
            "pass": pass,
        }),
        pass,
    ))
}

fn faces_value(c: &ModuliCellComplex) -> Value {
    json!(c
        .faces
        .iter()
        .map(|(&(i, j), &m)| json!({"cell": i, "face": j, "multiplicity": m}))
        .collect::<Vec<_>>())
}

fn enumerate_cmd(
    g: usize,
    n: usize,
    complex: bool,
    report: Option<ReportKind>,
    out: &Option<PathBuf>,
) -> CliResult {
    let needs_complex = complex || matches!(report, Some(ReportKind::Dims));
    let (cells, cx) = if needs_complex {
        let cx = enumerate::build_complex(g, n)?;
        (cx.cells.clone(), Some(cx))
    } else {
        (enumerate::enumerate_graphs(g, n)?, None)
    };
    if out.is_some() {
        for (i, c) in cells.iter().enumerate() {
            write_out(out, &format!("cell_{i:05}.json"), &io::write_pointed(&c.graph))?;
        }
    }
    let mut result = json!({
        "genus": g,
        "points": n,
        "cells": cells.iter().map(cell_value).collect::<Vec<_>>(),
    });
    if let (true, Some(cx)) = (complex, &cx) {
        result["faces"] = faces_value(cx);
    }
    match report {
        Some(ReportKind::Dims) => {
            result["report"] = dims_value(&enumerate::verify_dimensions(cx.as_ref().unwrap()))
        }
        Some(ReportKind::Euler) => result["report"] = euler_value(&cells, g, n)?.0,
        None => {}
    }
    Ok(result)
}

fn farey(g: usize, n: usize) -> crate::Result<(Value, bool)> {
    let cx = enumerate::build_complex(g, n)?;
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for (i, c) in cx.cells.iter().enumerate() {
        let gr = c.graph.graph();
        for v in gr.vertices() {
            let k = gr.valency(v);
            if k < 4 || c.graph.is_marked_vertex(v) {
                continue;
            }
            checked += 1;
            let res = enumerate::resolutions(&c.graph, v)?;
            let mut ok = res.len() == k * (k - 3) / 2;
            for r in &res {
                let back = collapse::collapse_edge(r, r.graph().num_edges() - 1)?;
                let lands = cx.index_of(&certificate(r)).is_some();
                ok &= lands && certificate(&back) == c.certificate;
            }
            if !ok {
                failures.push(json!({"cell": i, "vertex": v}));
            }
        }
    }
    let pass = failures.is_empty() && cx.unmatched.is_empty();
    Ok((
        json!({
            "vertices_checked": checked,
            "failures": failures,
            "faces": faces_value(&cx),
            "pass": pass,
        }),
        pass,
    ))
}

fn verify(suite: Suite, g: usize, n: usize) -> CliResult {
    let (value, pass) = match suite {
        Suite::Dims => {
            let r = enumerate::verify_dimensions(&enumerate::build_complex(g, n)?);
            let mut v = dims_value(&r);
            let pass = dims_pass(&r);
            v["pass"] = json!(pass);
            (v, pass)
        }
        Suite::Euler => euler_value(&enumerate::enumerate_graphs(g, n)?, g, n)?,
        Suite::Farey => farey(g, n)?,
    };
    if pass {
        Ok(value)
    } else {
        Err(Failure::Check(value))
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Dual { .. } => "dual",
        Command::Collapse { .. } => "collapse",
        Command::Stabilize { .. } => "stabilize",
        Command::Metric { .. } => "metric",
        Command::Enumerate { .. } => "enumerate",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(ctx: &mut Ctx, cmd: &Command) -> CliResult {
    match cmd {
        Command::Analyze { file } => analyze(ctx, file),
        Command::Dual { file, out } => dual(ctx, file, out),
        Command::Collapse { file, edges, out } => collapse_cmd(ctx, file, edges, out),
        Command::Stabilize {
            file,
            edges,
            sequence,
            depth,
            out,
        } => stabilize_cmd(ctx, file, edges, sequence, *depth, out),
        Command::Metric {
            file,
            metric,
            sequence,
            t,
            out,
        } => metric_cmd(ctx, file, metric, sequence, t, out),
        Command::Enumerate {
            genus,
            points,
            complex,
            report,
            out,
        } => enumerate_cmd(*genus, *points, *complex, *report, out),
        Command::Verify {
            suite,
            genus,
            points,
        } => verify(*suite, *genus, *points),
    }
}

/// Runs the command line on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("Usage: {text}") }
            };
        }
    };
    let mut ctx = Ctx { inputs: Vec::new() };
    let result = dispatch(&mut ctx, &cli.command);
    let inputs: std::collections::BTreeMap<String, String> = ctx.inputs.into_iter().collect();
    let mut report = json!({
        "command": command_name(&cli.command),
        "inputs": inputs,
    });
    let (code, stderr) = match result {
        Ok(v) => {
            report["status"] = json!("ok");
            report["result"] = v;
            (0, String::new())
        }
        Err(f) => {
            let (code, name, message, value) = match f {
                Failure::Usage(m) => (2, "Usage", m, None),
                Failure::Input(e) => (2, e.name(), e.to_string(), None),
                Failure::Property(e) => (3, e.name(), e.to_string(), None),
                Failure::Check(v) => {
                    let failed: Vec<String> = v["checks"]
                        .as_object()
                        .map(|m| {
                            m.iter()
                                .filter(|(_, ok)| **ok == json!(false))
                                .map(|(k, _)| k.clone())
                                .collect()
                        })
                        .unwrap_or_default();
                    let what = if failed.is_empty() { "pass".to_string() } else { failed.join(", ") };
                    (3, "CheckFailed", format!("failed checks: {what}"), Some(v))
                }
            };
            report["status"] = json!("error");
            report["error"] = json!({"name": name, "message": message});
            if let Some(v) = value {
                report["result"] = v;
            }
            let line = if message.starts_with(name) {
                message
            } else {
                format!("{name}: {message}")
            };
            (code, format!("{line}\n"))
        }
    };
    Outcome {
        code,
        stdout: io::to_canonical_json(&report),
        stderr,
    }
}
