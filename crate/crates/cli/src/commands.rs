use std::fs;

use anyhow::{bail, Context};
use fcentrality::baselines::{
    agg_deg_centrality, agg_eig, eig_cen, eig_versatility, global_heterogeneous,
    local_heterogeneous, CentralityMatrix, NodeCentrality, PerronOptions,
};
use fcentrality::io::{
    csv_field, format_number, parse_labels, parse_multiplex_edges, score_rows, to_network,
    write_scores, NetworkOptions, OutputFormat,
};
use fcentrality::network::connectivity;
use fcentrality::rank::{alpha_sweep, isim_curve, pearson, rank, spaghetti};
use fcentrality::solver::{contraction_factor, iteration_bound, ConvergenceReport};
use fcentrality::{f_centrality, InfluenceMatrix, MultiplexNetwork, NodeLayerScores, SolverParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::{csv_table, Sink};
use crate::{
    CliResult, Command, CompareMeasure, InputArgs, LinearArgs, Measure, SolverArgs, Status,
};

pub(crate) fn run(command: Command) -> CliResult<Status> {
    match command {
        Command::Centrality { input, solver, out } => {
            let (net, labels) = load(&input)?;
            centrality(
                &net,
                labels.as_deref(),
                &solver,
                out.format.into(),
                Sink::new(out.out_dir)?,
            )
        }
        Command::Baseline {
            input,
            measure,
            linear,
            out,
        } => {
            let (net, labels) = load(&input)?;
            baseline(
                &net,
                labels.as_deref(),
                measure,
                &linear,
                out.format.into(),
                Sink::new(out.out_dir)?,
            )
        }
        Command::Compare {
            input,
            measures,
            k,
            solver,
            linear,
            out_dir,
        } => {
            let (net, labels) = load(&input)?;
            compare(
                &net,
                labels.as_deref(),
                &measures,
                k,
                &solver,
                &linear,
                Sink::new(out_dir)?,
            )
        }
        Command::Bound {
            input,
            alpha,
            beta,
            eps,
        } => {
            let (net, _) = load(&input)?;
            let b = iteration_bound(&net, alpha, beta, eps)?;
            println!("rho = {}", b.rho);
            println!("C = {}", b.c);
            println!("k = {}", b.k);
            if b.start_is_fixed_point {
                println!("the uniform start is already the fixed point");
            }
            Ok(Status::Done)
        }
        Command::Info { input } => {
            let (net, _) = load(&input)?;
            print!("{}", info(&net));
            Ok(Status::Done)
        }
        Command::Sweep {
            input,
            alphas,
            beta,
            tol,
            max_iter,
            norm,
            unsafe_params,
            out_dir,
        } => {
            let (net, labels) = load(&input)?;
            let mut params = SolverParams::new(alphas.first().copied().unwrap_or(2.1), beta)
                .with_tol(tol)
                .with_max_iter(max_iter)
                .with_norm(norm);
            params.unsafe_params = unsafe_params;
            sweep(
                &net,
                labels.as_deref(),
                &alphas,
                beta,
                &params,
                Sink::new(out_dir)?,
            )
        }
    }
}

fn load(args: &InputArgs) -> CliResult<(MultiplexNetwork, Option<Vec<String>>)> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let doc = parse_multiplex_edges(&text)
        .with_context(|| format!("parsing {}", args.input.display()))?;
    let opts = NetworkOptions {
        n: args.n,
        layers: args.layers,
        symmetrize: args.symmetrize.into(),
        unweighted: args.unweighted,
    };
    let (net, warnings) = to_network(&doc, &opts)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let labels = match &args.node_labels {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(parse_labels(&text, net.num_nodes())?)
        }
        None => None,
    };
    Ok((net, labels))
}

fn solver_params(args: &SolverArgs) -> SolverParams {
    let mut p = SolverParams::new(args.alpha, args.beta)
        .with_tol(args.tol)
        .with_max_iter(args.max_iter)
        .with_norm(args.norm);
    p.unsafe_params = args.unsafe_params;
    p
}

fn solve(
    net: &MultiplexNetwork,
    args: &SolverArgs,
) -> CliResult<(NodeLayerScores, ConvergenceReport)> {
    let params = solver_params(args);
    let start = args.random_start.then(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut draw = |k: usize| {
            (0..k)
                .map(|_| rng.gen_range(0.01..1.0))
                .collect::<Vec<f64>>()
        };
        let x = draw(net.num_nodes());
        NodeLayerScores::new(x, draw(net.num_layers()))
    });
    let result = f_centrality(net, &params, start.as_ref())?;
    let r = &result.1;
    eprintln!(
        "{} after {} iterations (nodes at {}, layers at {}), rho = {:.6}",
        if r.converged { "converged" } else { "stopped" },
        r.iterations,
        fmt_opt(r.node_converged_at),
        fmt_opt(r.layer_converged_at),
        r.rho
    );
    Ok(result)
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |k| k.to_string())
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

fn centrality(
    net: &MultiplexNetwork,
    labels: Option<&[String]>,
    args: &SolverArgs,
    format: OutputFormat,
    sink: Sink,
) -> CliResult<Status> {
    let (scores, report) = solve(net, args)?;
    let nodes = rank(&scores.x);
    let layers = rank(&scores.t);
    let ext = extension(format);
    let node_text = write_scores(&nodes, labels, Some(&report), format);
    let layer_labels = net.layer_labels();
    let layer_text = write_scores(&layers, layer_labels, Some(&report), format);
    sink.emit(&format!("nodes.{ext}"), &node_text, true)?;
    sink.emit(&format!("layers.{ext}"), &layer_text, false)?;
    let mut report_text = serde_json::to_string_pretty(&report)?;
    report_text.push('\n');
    sink.emit("report.json", &report_text, false)?;
    if !sink.has_dir() {
        // The layer table follows the node table on stdout.
        let layer_only = match format {
            OutputFormat::Csv => write_scores(&layers, layer_labels, None, format),
            OutputFormat::Json => {
                serde_json::to_string_pretty(&score_rows(&layers, layer_labels))? + "\n"
            }
        };
        print!("\n{layer_only}");
    }
    Ok(if report.converged {
        Status::Done
    } else {
        Status::NotConverged
    })
}

fn omega(args: &LinearArgs, net: &MultiplexNetwork) -> Vec<f64> {
    args.omega
        .clone()
        .unwrap_or_else(|| vec![1.0; net.num_layers()])
}

fn influence(source: &str, size: usize) -> CliResult<InfluenceMatrix> {
    match source {
        "identity" => Ok(InfluenceMatrix::identity(size)),
        "ones" => Ok(InfluenceMatrix::ones(size)),
        path => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading influence matrix {path}"))?;
            let rows = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| {
                    l.split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|f| !f.is_empty())
                        .map(|f| {
                            f.parse::<f64>()
                                .with_context(|| format!("bad entry '{f}' in {path}"))
                        })
                        .collect::<CliResult<Vec<f64>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            if rows.len() != size {
                bail!(
                    "influence matrix in {path} has {} rows, expected {size}",
                    rows.len()
                );
            }
            Ok(InfluenceMatrix::from_rows(&rows)?)
        }
    }
}

fn warn_degenerate(name: &str, flagged: bool) {
    if flagged {
        eprintln!("warning: {name} is not uniquely defined on this network (reducible matrix or no convergence)");
    }
}

fn node_measure(
    net: &MultiplexNetwork,
    measure: CompareMeasure,
    linear: &LinearArgs,
    opts: &PerronOptions,
) -> CliResult<NodeCentrality> {
    let w = omega(linear, net);
    Ok(match measure {
        CompareMeasure::EigVer => eig_versatility(net, &w, opts)?,
        CompareMeasure::EigCen => eig_cen(net, &w, opts)?,
        CompareMeasure::AggEig => agg_eig(net, &w, opts)?,
        CompareMeasure::AggDeg => agg_deg_centrality(net),
        CompareMeasure::F => unreachable!("solved separately"),
    })
}

fn measure_name(m: CompareMeasure) -> &'static str {
    match m {
        CompareMeasure::F => "f",
        CompareMeasure::EigVer => "eig_ver",
        CompareMeasure::EigCen => "eig_cen",
        CompareMeasure::AggEig => "agg_eig",
        CompareMeasure::AggDeg => "agg_deg",
    }
}

fn baseline(
    net: &MultiplexNetwork,
    labels: Option<&[String]>,
    measure: Measure,
    linear: &LinearArgs,
    format: OutputFormat,
    sink: Sink,
) -> CliResult<Status> {
    let opts = PerronOptions::default();
    let ext = extension(format);
    let single = match measure {
        Measure::EigCen => Some(CompareMeasure::EigCen),
        Measure::AggEig => Some(CompareMeasure::AggEig),
        Measure::AggDeg => Some(CompareMeasure::AggDeg),
        Measure::EigVer => Some(CompareMeasure::EigVer),
        Measure::LocalHet | Measure::GlobalHet => None,
    };
    if let Some(m) = single {
        let c = node_measure(net, m, linear, &opts)?;
        warn_degenerate(measure_name(m), c.degenerate_warning);
        let text = write_scores(&rank(&c.scores), labels, None, format);
        sink.emit(&format!("{}.{ext}", measure_name(m)), &text, true)?;
        return Ok(Status::Done);
    }
    let w = influence(&linear.influence, net.num_layers())?;
    let m = if measure == Measure::LocalHet {
        local_heterogeneous(net, &w, &opts)?
    } else {
        global_heterogeneous(net, &w, &opts)?
    };
    for (l, &d) in m.degenerate.iter().enumerate() {
        warn_degenerate(&format!("{} column {}", m.measure_name, l + 1), d);
    }
    let text = match format {
        OutputFormat::Csv => matrix_csv(&m, labels),
        OutputFormat::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "measure": m.measure_name,
                "degenerate": m.degenerate,
                "columns": (0..m.num_layers).map(|l| m.column(l).to_vec()).collect::<Vec<_>>(),
            }))? + "\n"
        }
    };
    sink.emit(&format!("{}.{ext}", m.measure_name), &text, true)?;
    Ok(Status::Done)
}

fn label_of(labels: Option<&[String]>, i: usize) -> String {
    labels
        .and_then(|l| l.get(i).cloned())
        .unwrap_or_else(|| (i + 1).to_string())
}

fn matrix_csv(m: &CentralityMatrix, labels: Option<&[String]>) -> String {
    let mut header = vec!["index".to_string(), "label".to_string()];
    header.extend((1..=m.num_layers).map(|l| format!("layer{l}")));
    let rows: Vec<Vec<String>> = (0..m.num_nodes)
        .map(|i| {
            let mut row = vec![(i + 1).to_string(), csv_field(&label_of(labels, i))];
            row.extend((0..m.num_layers).map(|l| format_number(m.get(i, l))));
            row
        })
        .collect();
    csv_table(&header, &rows)
}

fn compare(
    net: &MultiplexNetwork,
    labels: Option<&[String]>,
    measures: &[CompareMeasure],
    k: Option<usize>,
    solver: &SolverArgs,
    linear: &LinearArgs,
    sink: Sink,
) -> CliResult<Status> {
    let mut selected: Vec<CompareMeasure> = Vec::new();
    for &m in measures {
        if !selected.contains(&m) {
            selected.push(m);
        }
    }
    let n = net.num_nodes();
    let k = k.unwrap_or(n);
    if k == 0 || k > n {
        bail!("K = {k} outside 1..={n}");
    }
    let opts = PerronOptions::default();
    let mut status = Status::Done;
    let mut vectors = Vec::new();
    for &m in &selected {
        let scores = if m == CompareMeasure::F {
            let (s, report) = solve(net, solver)?;
            if !report.converged {
                status = Status::NotConverged;
            }
            s.x
        } else {
            let c = node_measure(net, m, linear, &opts)?;
            warn_degenerate(measure_name(m), c.degenerate_warning);
            c.scores
        };
        vectors.push(scores);
    }
    let names: Vec<String> = selected
        .iter()
        .map(|&m| measure_name(m).to_string())
        .collect();

    let mut header = vec!["measure".to_string()];
    header.extend(names.iter().cloned());
    let mut rows = Vec::new();
    for (a, va) in vectors.iter().enumerate() {
        let mut row = vec![names[a].clone()];
        for (b, vb) in vectors.iter().enumerate() {
            row.push(match pearson(va, vb) {
                Ok(r) => format_number(r),
                Err(e) => {
                    if a < b {
                        eprintln!("warning: {} vs {}: {e}", names[a], names[b]);
                    }
                    String::new()
                }
            });
        }
        rows.push(row);
    }
    sink.emit("pearson.csv", &csv_table(&header, &rows), true)?;

    let rankings: Vec<_> = vectors.iter().map(|v| rank(v)).collect();
    let mut header = vec!["K".to_string()];
    let mut curves = Vec::new();
    for a in 0..rankings.len() {
        for b in a + 1..rankings.len() {
            header.push(format!("{}|{}", names[a], names[b]));
            curves.push(isim_curve(&rankings[a], &rankings[b])?);
        }
    }
    let rows: Vec<Vec<String>> = (0..k)
        .map(|j| {
            let mut row = vec![(j + 1).to_string()];
            row.extend(curves.iter().map(|c| format_number(c[j])));
            row
        })
        .collect();
    sink.emit("isim.csv", &csv_table(&header, &rows), false)?;

    let mut header = vec!["index".to_string(), "label".to_string()];
    header.extend(names.iter().cloned());
    let rows: Vec<Vec<String>> = (0..n)
        .map(|i| {
            let mut row = vec![(i + 1).to_string(), csv_field(&label_of(labels, i))];
            row.extend(vectors.iter().map(|v| format_number(v[i])));
            row
        })
        .collect();
    sink.emit("scatter.csv", &csv_table(&header, &rows), false)?;
    Ok(status)
}

fn info(net: &MultiplexNetwork) -> String {
    let d = connectivity(net);
    let edges: Vec<String> = net
        .layers()
        .iter()
        .map(|m| {
            let self_loops = (0..m.nrows()).filter(|&i| m.get(i, i) != 0.0).count();
            ((m.nnz() - self_loops) / 2 + self_loops).to_string()
        })
        .collect();
    let connected = d.layer_connected.iter().filter(|&&c| c).count();
    let aggregate = if d.aggregate_connected {
        "connected"
    } else {
        "disconnected"
    };
    let list = |v: &[usize]| {
        v.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!(
        "{} layers, {} nodes, {} isolated nodes, aggregate {aggregate}\n",
        net.num_layers(),
        net.num_nodes(),
        d.isolated_nodes.len()
    );
    out += &format!("edges per layer: {}\n", edges.join(" "));
    out += &format!("connected layers: {connected} of {}\n", net.num_layers());
    out += &format!("empty layers: {}\n", list(&d.empty_layers));
    out += &format!("isolated nodes: {}\n", list(&d.isolated_nodes));
    out
}

fn sweep(
    net: &MultiplexNetwork,
    labels: Option<&[String]>,
    alphas: &[f64],
    beta: f64,
    params: &SolverParams,
    sink: Sink,
) -> CliResult<Status> {
    if alphas.is_empty() {
        bail!("no alpha values given");
    }
    let entries = alpha_sweep(net, alphas, beta, params);
    let mut status = Status::Done;
    let header: Vec<String> = [
        "alpha",
        "rho",
        "iterations",
        "node_converged_at",
        "layer_converged_at",
        "converged",
        "error",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut rows = Vec::new();
    for e in &entries {
        let rho = contraction_factor(e.alpha, beta).rho.to_string();
        match &e.outcome {
            Ok(run) => {
                let r = &run.report;
                if !r.converged {
                    status = Status::NotConverged;
                }
                rows.push(vec![
                    e.alpha.to_string(),
                    rho,
                    r.iterations.to_string(),
                    fmt_opt(r.node_converged_at),
                    fmt_opt(r.layer_converged_at),
                    r.converged.to_string(),
                    String::new(),
                ]);
            }
            Err(err) => {
                eprintln!("warning: alpha = {}: {err}", e.alpha);
                rows.push(vec![
                    e.alpha.to_string(),
                    rho,
                    String::new(),
                    String::new(),
                    String::new(),
                    "false".into(),
                    csv_field(&err.to_string()),
                ]);
            }
        }
    }
    sink.emit("sweep.csv", &csv_table(&header, &rows), true)?;

    let mut header = vec!["index".to_string(), "label".to_string()];
    header.extend(alphas.iter().map(|a| format!("alpha={a}")));
    let rows: Vec<Vec<String>> = spaghetti(&entries)
        .into_iter()
        .enumerate()
        .map(|(i, positions)| {
            let mut row = vec![(i + 1).to_string(), csv_field(&label_of(labels, i))];
            row.extend(
                positions
                    .into_iter()
                    .map(|p| p.map_or_else(String::new, |p| p.to_string())),
            );
            row
        })
        .collect();
    sink.emit("spaghetti.csv", &csv_table(&header, &rows), false)?;
    Ok(status)
}
