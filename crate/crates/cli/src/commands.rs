use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use kgc_core::generators::{
    cycle_graph, grid_graph, path_graph, random_connected, random_tree, star_graph,
};
use kgc_core::oracle::OracleCaps;
use kgc_core::rooted::RootedOptions;
use kgc_core::solver::{GammaMode, TauMode};
use kgc_core::{
    apsp, exact_optimum, family_eccentricity, four_point_delta_with_cap, is_isometric,
    load_graph, solve as run_solver, subdivide, verify_packing, write_graph, Graph, HalfInteger,
    SolveOptions, VertexPath,
};
use serde_json::{json, Value};

use crate::{BenchArgs, BenchFamily, DeltaArgs, ExactArgs, GenArgs, GenType, Output, SolveArgs, VerifyArgs};

fn read_graph(path: &Path) -> Result<Graph> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    load_graph(file).with_context(|| format!("reading {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(out: &Output, value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    emit(out, &text)
}

pub fn solve(args: SolveArgs) -> Result<bool> {
    let g = read_graph(&args.graph)?;
    let gamma = match args.gamma.as_str() {
        "auto" => GammaMode::Auto,
        "threshold" => GammaMode::Threshold,
        other => {
            let doubled: u64 = other
                .parse()
                .map_err(|_| anyhow!("--gamma expects auto, threshold or a doubled depth, got {other:?}"))?;
            GammaMode::Fixed(HalfInteger::from_doubled(doubled))
        }
    };
    let tau = match (args.tau_doubled, args.no_tau) {
        (Some(t), _) => TauMode::Supplied(HalfInteger::from_doubled(t)),
        (None, true) => TauMode::Skip,
        (None, false) => TauMode::Compute { vertex_cap: args.delta_cap },
    };
    let opts = SolveOptions {
        tau,
        gamma,
        rooted: RootedOptions {
            prune: !args.no_prune,
            check_monotonicity: args.check_monotonicity,
        },
        best_effort: args.best_effort,
    };
    let result = run_solver(&g, args.k, &opts)?;
    emit_json(&args.out, &result)?;
    Ok(true)
}

pub fn exact(args: ExactArgs) -> Result<bool> {
    let g = read_graph(&args.graph)?;
    let caps = OracleCaps {
        max_paths: args.max_paths,
        max_combinations: args.max_combinations,
    };
    let result = exact_optimum(&g, &apsp(&g), args.k, &caps)?;
    emit_json(&args.out, &result)?;
    Ok(true)
}

pub fn delta(args: DeltaArgs) -> Result<bool> {
    let g = read_graph(&args.graph)?;
    let delta = four_point_delta_with_cap(&apsp(&g), args.delta_cap)?;
    emit(&args.out, &format!("{}\n", json!({ "delta_doubled": delta.doubled() })))?;
    Ok(true)
}

pub fn gen(args: GenArgs) -> Result<bool> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("--type {:?} needs --{flag}", args.kind));
    let g = match args.kind {
        GenType::Path => path_graph(need(args.n, "n")?)?,
        GenType::Cycle => cycle_graph(need(args.n, "n")?)?,
        GenType::Star => star_graph(need(args.n, "n")?)?,
        GenType::Grid => grid_graph(need(args.w, "w")?, need(args.h, "h")?)?,
        GenType::Tree => random_tree(need(args.n, "n")?, args.seed)?,
        GenType::Random => random_connected(need(args.n, "n")?, need(args.m, "m")?, args.seed)?,
    };
    let g = match args.subdivide {
        Some(len) => subdivide(&g, len)?,
        None => g,
    };
    emit(&args.out, &write_graph(&g))?;
    Ok(true)
}

/// Finds the list of paths in solver output, oracle output or a bare list.
fn cover_paths(doc: &Value) -> Result<Vec<VertexPath>> {
    let list = match doc {
        Value::Array(_) => doc,
        Value::Object(map) => map
            .get("paths")
            .or_else(|| map.get("cover"))
            .or_else(|| map.get("rooted").and_then(|r| r.get("cover")))
            .ok_or_else(|| anyhow!("no \"paths\" or \"cover\" field"))?,
        _ => bail!("expected a list of paths or an object"),
    };
    serde_json::from_value(list.clone()).context("paths must be lists of vertex ids")
}

pub fn verify(args: VerifyArgs) -> Result<bool> {
    let g = read_graph(&args.graph)?;
    let d = apsp(&g);
    let report = if let Some(path) = &args.cover {
        let doc = read_json(path)?;
        let paths = cover_paths(&doc)?;
        let radius = match args.radius {
            Some(r) => r,
            None => doc
                .get("radius")
                .and_then(Value::as_u64)
                .ok_or_else(|| anyhow!("no --radius given and none recorded in the file"))? as u32,
        };
        let isometric = !paths.is_empty() && paths.iter().all(|p| is_isometric(&d, p));
        let eccentricity = if isometric { Some(family_eccentricity(&g, &paths)?) } else { None };
        let size_ok = args.k.is_none_or(|k| paths.len() <= k);
        let valid = isometric && size_ok && eccentricity.is_some_and(|e| e <= radius);
        json!({
            "kind": "cover",
            "valid": valid,
            "paths": paths.len(),
            "isometric": isometric,
            "eccentricity": eccentricity,
            "radius": radius,
        })
    } else {
        let path = args.packing.as_ref().expect("clap requires --cover or --packing");
        let doc = read_json(path)?;
        let holder = doc.get("rooted").unwrap_or(&doc);
        let (witness, recorded_root) = match holder.get("packing_witness") {
            Some(Value::Null) => bail!("the file records no packing witness"),
            Some(w) => (w, holder.get("root")),
            None => (holder, holder.get("root")),
        };
        let vertices: Vec<usize> = match witness {
            Value::Array(_) => serde_json::from_value(witness.clone()),
            _ => serde_json::from_value(
                witness.get("vertices").cloned().ok_or_else(|| anyhow!("no \"vertices\" field"))?,
            ),
        }
        .context("packing vertices must be vertex ids")?;
        let root = match args.root {
            Some(r) => r,
            None => recorded_root
                .and_then(Value::as_u64)
                .ok_or_else(|| anyhow!("no --root given and none recorded in the file"))? as usize,
        };
        let radius = match args.radius {
            Some(r) => r,
            None => witness
                .get("R")
                .and_then(Value::as_u64)
                .ok_or_else(|| anyhow!("no --radius given and none recorded in the file"))? as u32,
        };
        let size_ok = args.k.is_none_or(|k| vertices.len() == 2 * k);
        let valid = size_ok && verify_packing(&d, root, radius, &vertices);
        json!({
            "kind": "packing",
            "valid": valid,
            "root": root,
            "R": radius,
            "size": vertices.len(),
        })
    };
    emit(&args.out, &format!("{report}\n"))?;
    Ok(report["valid"] == Value::Bool(true))
}

fn bench_graph(family: BenchFamily, n: usize, seed: u64) -> Result<Graph> {
    Ok(match family {
        BenchFamily::Path => path_graph(n)?,
        BenchFamily::Ladder => grid_graph(n.div_ceil(2), 2)?,
        BenchFamily::Grid => {
            let side = (n as f64).sqrt().round().max(1.0) as usize;
            grid_graph(side, side)?
        }
        BenchFamily::Tree => random_tree(n, seed)?,
        BenchFamily::Random => random_connected(n, (n + n / 4).min(n * (n - 1) / 2).max(n - 1), seed)?,
    })
}

pub fn bench(args: BenchArgs) -> Result<bool> {
    if args.repeats == 0 {
        bail!("--repeats must be positive");
    }
    let mut csv = String::from("n,m,k,R_u,radius,tau_hat_doubled,wall_ms\n");
    for &n in &args.sizes {
        let g = bench_graph(args.family, n, args.seed)?;
        let mut opts = SolveOptions {
            tau: TauMode::Compute { vertex_cap: args.delta_cap },
            ..SolveOptions::default()
        };
        if g.vertex_count() > args.delta_cap {
            opts.tau = TauMode::Skip;
        }
        let mut times = Vec::with_capacity(args.repeats);
        let mut last = None;
        for _ in 0..args.repeats {
            let start = Instant::now();
            let res = run_solver(&g, args.k, &opts)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
            last = Some(res);
        }
        times.sort_by(f64::total_cmp);
        let res = last.unwrap();
        let tau = res.bounds.map(|b| b.tau_hat.doubled().to_string()).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{:.3}\n",
            g.vertex_count(),
            g.edge_count(),
            args.k,
            res.rooted.radius,
            res.radius,
            tau,
            times[times.len() / 2]
        ));
    }
    emit(&args.out, &csv)?;
    Ok(true)
}
