//! Multiplex edge lists and score tables.
//!
//! Edge list lines read `layer node node [weight]`, whitespace separated, 1-based,
//! with `#` comments and a default weight of 1.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{build_network, Edge, MultiplexNetwork};
use crate::rank::Ranking;
use crate::solver::ConvergenceReport;

/// One edge-list line, 1-based as in the file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub layer: usize,
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeListDocument {
    pub records: Vec<EdgeRecord>,
    pub inferred_n: usize,
    pub inferred_layers: usize,
}

fn parse_index(field: &str, line: usize, what: &str) -> Result<usize> {
    let v: i64 = field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("{what} '{field}' is not an integer"),
    })?;
    if v <= 0 {
        return Err(Error::validation(format!(
            "line {line}: {what} must be positive, got {v}"
        )));
    }
    Ok(v as usize)
}

pub fn parse_multiplex_edges(text: &str) -> Result<EdgeListDocument> {
    let mut records = Vec::new();
    let (mut n, mut layers) = (0, 0);
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 && fields.len() != 4 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 or 4 fields, found {}", fields.len()),
            });
        }
        let layer = parse_index(fields[0], line_no, "layer")?;
        let a = parse_index(fields[1], line_no, "node")?;
        let b = parse_index(fields[2], line_no, "node")?;
        let weight = match fields.get(3) {
            None => 1.0,
            Some(f) => f64::from_str(f)
                .ok()
                .filter(|w| w.is_finite())
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("weight '{f}' is not a finite number"),
                })?,
        };
        if weight < 0.0 {
            return Err(Error::validation(format!(
                "line {line_no}: negative weight {weight}"
            )));
        }
        n = n.max(a).max(b);
        layers = layers.max(layer);
        records.push(EdgeRecord {
            layer,
            a,
            b,
            weight,
        });
    }
    Ok(EdgeListDocument {
        records,
        inferred_n: n,
        inferred_layers: layers,
    })
}

/// How the two listed directions of one undirected edge are reconciled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SymmetrizePolicy {
    /// Equal reverse listings count once; unequal ones keep the larger weight with a warning.
    #[default]
    Mirror,
    /// Like `Mirror`, without the warning.
    Max,
    /// Unequal reverse listings are an error.
    Error,
}

impl FromStr for SymmetrizePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mirror" => Ok(SymmetrizePolicy::Mirror),
            "max" => Ok(SymmetrizePolicy::Max),
            "error" => Ok(SymmetrizePolicy::Error),
            _ => Err(Error::validation(format!(
                "unknown symmetrize policy '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct NetworkOptions {
    pub n: Option<usize>,
    pub layers: Option<usize>,
    pub symmetrize: SymmetrizePolicy,
    /// Replace every positive weight by 1.
    pub unweighted: bool,
}

/// Builds the network and returns it with any warnings produced on the way.
pub fn to_network(
    doc: &EdgeListDocument,
    opts: &NetworkOptions,
) -> Result<(MultiplexNetwork, Vec<String>)> {
    let n = resolve_size(opts.n, doc.inferred_n, "node count")?;
    let num_layers = resolve_size(opts.layers, doc.inferred_layers, "layer count")?;

    // Same-direction repeats are summed first.
    let mut directed: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
    for r in &doc.records {
        *directed
            .entry((r.layer - 1, r.a - 1, r.b - 1))
            .or_insert(0.0) += r.weight;
    }
    let mut warnings = Vec::new();
    let mut edges = Vec::new();
    for (&(l, i, j), &w) in &directed {
        if i > j && directed.contains_key(&(l, j, i)) {
            continue;
        }
        let w = match directed.get(&(l, j, i)) {
            Some(&back) if i != j && back != w => match opts.symmetrize {
                SymmetrizePolicy::Error => {
                    return Err(Error::validation(format!(
                        "layer {} edge {}-{} listed with weights {w} and {back}",
                        l + 1,
                        i + 1,
                        j + 1
                    )))
                }
                SymmetrizePolicy::Mirror => {
                    warnings.push(format!(
                        "layer {} edge {}-{}: weights {w} and {back} differ, keeping {}",
                        l + 1,
                        i + 1,
                        j + 1,
                        w.max(back)
                    ));
                    w.max(back)
                }
                SymmetrizePolicy::Max => w.max(back),
            },
            _ => w,
        };
        let w = if opts.unweighted && w > 0.0 { 1.0 } else { w };
        edges.push(Edge::new(l, i, j, w));
    }
    Ok((build_network(n, num_layers, &edges)?, warnings))
}

fn resolve_size(over: Option<usize>, inferred: usize, what: &str) -> Result<usize> {
    match over {
        Some(v) if v < inferred => Err(Error::validation(format!(
            "{what} override {v} is below the {inferred} found in the file"
        ))),
        Some(v) => Ok(v),
        None => Ok(inferred),
    }
}

/// Parses and builds with default options.
pub fn read_network(text: &str) -> Result<MultiplexNetwork> {
    Ok(to_network(&parse_multiplex_edges(text)?, &NetworkOptions::default())?.0)
}

/// Each undirected edge once, 1-based, ordered by layer then node pair.
pub fn write_multiplex_edges(net: &MultiplexNetwork) -> String {
    let mut out = String::new();
    for e in net.undirected_edges() {
        writeln!(out, "{} {} {} {}", e.layer + 1, e.i + 1, e.j + 1, e.weight).unwrap();
    }
    out
}

/// `id label` per line (1-based ids); other columns, a non-numeric header line
/// and `#` comments are ignored. Missing ids fall back to the id itself.
pub fn parse_labels(text: &str, n: usize) -> Result<Vec<String>> {
    let mut labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let id = fields.next().unwrap();
        let Ok(id) = id.parse::<usize>() else {
            if k == 0 {
                continue;
            }
            return Err(Error::Parse {
                line: k + 1,
                message: format!("label id '{id}' is not an integer"),
            });
        };
        if id == 0 || id > n {
            return Err(Error::IndexOutOfRange(format!(
                "label id {id} at line {}",
                k + 1
            )));
        }
        if let Some(label) = fields.next() {
            labels[id - 1] = label.to_string();
        }
    }
    Ok(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::validation(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    /// 1-based.
    pub index: usize,
    pub label: String,
    pub score: f64,
    /// 1-based position in the ranking.
    pub rank: usize,
}

/// A score table as written in JSON: the report fields (when present) plus the rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreDocument {
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ConvergenceReport>,
    pub scores: Vec<ScoreRow>,
}

pub fn score_rows(ranking: &Ranking, labels: Option<&[String]>) -> Vec<ScoreRow> {
    let positions = ranking.positions();
    ranking
        .scores
        .iter()
        .enumerate()
        .map(|(i, &score)| ScoreRow {
            index: i + 1,
            label: labels
                .and_then(|l| l.get(i).cloned())
                .unwrap_or_else(|| (i + 1).to_string()),
            score,
            rank: positions[i] + 1,
        })
        .collect()
}

/// Rows in index order. CSV carries the rows only; JSON adds the report fields.
pub fn write_scores(
    ranking: &Ranking,
    labels: Option<&[String]>,
    report: Option<&ConvergenceReport>,
    format: OutputFormat,
) -> String {
    let rows = score_rows(ranking, labels);
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("index,label,score,rank\n");
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    r.index,
                    csv_field(&r.label),
                    format_number(r.score),
                    r.rank
                )
                .unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let doc = ScoreDocument {
                report: report.cloned(),
                scores: rows,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("score document serializes");
            s.push('\n');
            s
        }
    }
}

/// Shortest round-trip text for `v`, switching to exponent form for very small
/// or very large magnitudes.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match (c, quoted) {
            ('"', true) if chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            ('"', _) => quoted = !quoted,
            (',', false) => fields.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    fields.push(cur);
    fields
}

pub fn parse_scores_csv(text: &str) -> Result<Vec<ScoreRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == "index,label,score,rank" => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header index,label,score,rank".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (k, line) in lines {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let bad = |message: &str| Error::Parse {
            line: k + 1,
            message: message.to_string(),
        };
        let f = split_csv_line(line);
        if f.len() != 4 {
            return Err(bad("expected 4 fields"));
        }
        rows.push(ScoreRow {
            index: f[0].parse().map_err(|_| bad("bad index"))?,
            label: f[1].clone(),
            score: f[2].parse().map_err(|_| bad("bad score"))?,
            rank: f[3].parse().map_err(|_| bad("bad rank"))?,
        });
    }
    Ok(rows)
}

pub fn parse_scores_json(text: &str) -> Result<ScoreDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}
