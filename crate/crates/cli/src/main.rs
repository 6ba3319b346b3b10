use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vinbergkit::brauer::{hasse_invariant, witt_invariant};
use vinbergkit::charfields::{char_poly_gram, coxeter_char_poly};
use vinbergkit::classify::{classify, field_watchlist};
use vinbergkit::coxgraph::{load_graph, CoxeterGraph, GramMatrix};
use vinbergkit::cycles::{simple_cycles, vinberg_field, vinberg_ring, DEFAULT_CYCLE_CAP, DEFAULT_WALK_LENGTH};
use vinbergkit::report::{compare, compute, FieldInfo, Invariants, Options};
use vinbergkit::vform::{vinberg_form, BasisOptions};

/// Commensurability invariants of hyperbolic Coxeter groups.
#[derive(Parser)]
#[command(name = "vinbergkit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full invariant record of one graph.
    Invariants(One),
    /// Arithmeticity class with witnesses, plus advisories.
    Classify(One),
    /// Vinberg field and the simple cycles generating it.
    Field(One),
    /// Vinberg form with Hasse and Witt invariants.
    Form(One),
    /// Vinberg ring.
    Ring(One),
    /// Gram field and Coxeter fields.
    Coxfield(One),
    /// Compare two graphs of the same dimension.
    Compare(Two),
    /// Records and pairwise verdicts for every graph file under a directory.
    Corpus(Dir),
}

#[derive(Args)]
struct One {
    path: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Two {
    first: PathBuf,
    second: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Dir {
    dir: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Base vertex of the Vinberg vectors (1-based).
    #[arg(long, default_value_t = 1)]
    base_vertex: usize,
    /// Coxeter-element orders, e.g. 1-2-3,3-2-1 (default: vertex order).
    #[arg(long, value_parser = parse_orders)]
    orders: Option<Orders>,
    /// Skip the check that G has signature (n,1).
    #[arg(long)]
    no_signature_check: bool,
    /// Longest closed walk used for the Vinberg ring.
    #[arg(long, default_value_t = DEFAULT_WALK_LENGTH)]
    cycle_cap: usize,
}

#[derive(Clone)]
struct Orders(Vec<Vec<usize>>);

fn parse_orders(s: &str) -> Result<Orders, String> {
    s.split(',')
        .map(|o| {
            o.split('-')
                .map(|i| match i.trim().parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(format!("bad vertex '{i}' in order '{o}'")),
                })
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(Orders)
}

impl Common {
    fn options(&self) -> Options {
        Options {
            base_vertex: self.base_vertex.wrapping_sub(1),
            orders: self.orders.clone().map(|o| o.0).unwrap_or_default(),
            cycle_cap: DEFAULT_CYCLE_CAP,
            walk_length: self.cycle_cap,
        }
    }
}

type Fail = String;

fn load(path: &Path, c: &Common) -> Result<(CoxeterGraph, GramMatrix), Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| at(path, e))?;
    let (g, gm) = load_graph(&text, !c.no_signature_check).map_err(|e| at(path, e))?;
    if let Some(Orders(os)) = &c.orders {
        if let Some(o) = os.iter().find(|o| o.len() != g.rank) {
            return Err(format!("order of length {} for a graph of rank {}", o.len(), g.rank));
        }
    }
    Ok((g, gm))
}

fn record(path: &Path, c: &Common) -> Result<Invariants, Fail> {
    let (g, gm) = load(path, c)?;
    compute(&g, &gm, &c.options()).map_err(|e| at(path, e))
}

/// Write to stdout; a closed pipe is not an error.
fn out(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit(c: &Common, v: Value, text: String) {
    match c.format {
        Format::Json => out(&(serde_json::to_string_pretty(&v).unwrap() + "\n")),
        Format::Text => out(&text),
    }
}

fn at<E: std::fmt::Display>(path: &Path, e: E) -> Fail {
    format!("{}: {e}", path.display())
}

fn single(cmd: &str, a: &One) -> Result<(), Fail> {
    let c = &a.common;
    if cmd == "invariants" {
        let r = record(&a.path, c)?;
        emit(c, serde_json::to_value(&r).unwrap(), r.to_text());
        return Ok(());
    }
    let (g, gm) = load(&a.path, c)?;
    let opts = c.options();
    let cycles = simple_cycles(&gm, opts.cycle_cap).map_err(|x| at(&a.path, x))?;
    let k = vinberg_field(&gm, &cycles);
    let (v, t) = match cmd {
        "field" => {
            let info = FieldInfo::of(&k);
            let cs: Vec<Value> = cycles
                .iter()
                .map(|cy| json!({ "cycle": cy.indices.iter().map(|i| i + 1).collect::<Vec<_>>(), "value": cy.value.to_string() }))
                .collect();
            let mut t = format!("Vinberg field: {} [min poly {}, generator {}]\n", info.name, info.minpoly, info.generator);
            for cy in &cycles {
                let ix: Vec<String> = cy.indices.iter().map(|i| (i + 1).to_string()).collect();
                t += &format!("  cycle {}: {}\n", ix.join("-"), cy.value);
            }
            (json!({ "vinberg_field": info, "cycles": cs }), t)
        }
        "ring" => {
            let r = vinberg_ring(&gm, &k, &cycles, opts.walk_length).map_err(|x| at(&a.path, x))?;
            let t = format!("Vinberg ring: {} [simple cycles suffice: {}]\n", r.ring, r.simple_cycles_suffice);
            (json!({ "ring": r }), t)
        }
        "form" => {
            if opts.base_vertex >= g.rank {
                return Err(format!("base vertex {} out of range 1..{}", c.base_vertex, g.rank));
            }
            let f = vinberg_form(&gm, &k, &BasisOptions { base: opts.base_vertex, seed: None }).map_err(|x| at(&a.path, x))?;
            let h = hasse_invariant(&f.diagonal).ok();
            let w = witt_invariant(&f.diagonal).ok();
            let d: Vec<String> = f.diagonal.iter().map(|x| x.to_string()).collect();
            let mut t = format!("Vinberg form: <{}>\n  det class {}, signature ({}, {})\n", d.join(", "), f.det_class, f.signature.0, f.signature.1);
            match (&h, &w) {
                (Some(h), Some(w)) => t += &format!("  Hasse invariant: {h}\n  Witt invariant: {w}\n"),
                _ => t += "  Hasse and Witt invariants: unsupported over this field\n",
            }
            (json!({ "form": f, "hasse": h, "witt": w }), t)
        }
        "classify" => {
            let cl = classify(&gm, &k, &cycles);
            let adv = field_watchlist(&g, &gm, &k, &cl);
            let mut t = format!("class: {}\n", cl.value);
            for w in &cl.witnesses {
                t += &format!("  witness: {}\n", serde_json::to_string(w).unwrap());
            }
            for a in &adv {
                t += &format!("advisory: {a}\n");
            }
            (json!({ "arithmeticity": cl, "advisories": adv }), t)
        }
        "coxfield" => {
            let gf = char_poly_gram(&gm);
            let orders = if opts.orders.is_empty() { vec![(0..g.rank).collect()] } else { opts.orders.clone() };
            let cps = orders.iter().map(|o| coxeter_char_poly(&gm, o)).collect::<Result<Vec<_>, _>>().map_err(|x| at(&a.path, x))?;
            let mut t = format!("Gram field: {}\n", gf.field.field().describe());
            for cp in &cps {
                let o: Vec<String> = cp.order.iter().map(|i| i.to_string()).collect();
                t += &format!(
                    "Coxeter field ({}): {} [chi_C {}]\n",
                    o.join("-"),
                    cp.chi_c.field.field().describe(),
                    cp.chi_c.poly.to_strings().join(", ")
                );
            }
            (json!({ "gram_field": gf, "coxeter": cps }), t)
        }
        _ => unreachable!(),
    };
    emit(c, v, t);
    Ok(())
}

fn pair(a: &Two) -> Result<(), Fail> {
    let c = &a.common;
    let (r1, r2) = rayon::join(|| record(&a.first, c), || record(&a.second, c));
    let (r1, r2) = (r1?, r2?);
    let v = compare(&r1, &r2).map_err(|e| e.to_string())?;
    let j = json!({ "first": a.first.display().to_string(), "second": a.second.display().to_string(), "verdict": v });
    emit(c, j, v.to_string());
    Ok(())
}

fn graph_files(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
    for e in std::fs::read_dir(dir)? {
        let p = e?.path();
        if p.is_dir() {
            graph_files(&p, out)?;
        } else if p.extension().is_some_and(|x| x == "cox") {
            out.push(p);
        }
    }
    Ok(())
}

/// Ok(true) when every file produced a record.
fn corpus(a: &Dir) -> Result<bool, Fail> {
    let c = &a.common;
    let mut files = Vec::new();
    graph_files(&a.dir, &mut files).map_err(|e| format!("{}: {e}", a.dir.display()))?;
    let mut files: Vec<(String, PathBuf)> = files
        .into_iter()
        .map(|p| (p.strip_prefix(&a.dir).unwrap_or(&p).to_string_lossy().replace('\\', "/"), p))
        .collect();
    files.sort();
    let results: Vec<(String, Result<Invariants, Fail>)> =
        files.par_iter().map(|(name, p)| (name.clone(), record(p, c))).collect();
    let ok: Vec<(&String, &Invariants)> = results.iter().filter_map(|(n, r)| r.as_ref().ok().map(|r| (n, r))).collect();
    let mut pairs = Vec::new();
    for (i, (n1, r1)) in ok.iter().enumerate() {
        for (n2, r2) in &ok[i + 1..] {
            if r1.dim == r2.dim {
                pairs.push((*n1, *n2, compare(r1, r2).expect("same dimension")));
            }
        }
    }
    let complete = results.iter().all(|(_, r)| r.is_ok());
    match c.format {
        Format::Json => {
            let recs: serde_json::Map<String, Value> = results
                .iter()
                .map(|(n, r)| {
                    let v = match r {
                        Ok(r) => serde_json::to_value(r).unwrap(),
                        Err(e) => json!({ "error": e }),
                    };
                    (n.clone(), v)
                })
                .collect();
            let cmp: Vec<Value> = pairs.iter().map(|(a, b, v)| json!({ "first": a, "second": b, "verdict": v })).collect();
            out(&(serde_json::to_string_pretty(&json!({ "records": recs, "comparisons": cmp })).unwrap() + "\n"));
        }
        Format::Text => {
            let mut t = String::new();
            for (n, r) in &results {
                t += &format!("== {n}\n");
                match r {
                    Ok(r) => t += &r.to_text(),
                    Err(e) => t += &format!("error: {e}\n"),
                }
            }
            if !pairs.is_empty() {
                t += "== comparisons\n";
            }
            for (a, b, v) in &pairs {
                let head = v.to_string();
                t += &format!("{a} vs {b}: {}\n", head.lines().next().unwrap_or("").trim_start_matches("verdict: "));
            }
            out(&t);
        }
    }
    Ok(complete)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Invariants(a) => single("invariants", a).map(|_| true),
        Cmd::Classify(a) => single("classify", a).map(|_| true),
        Cmd::Field(a) => single("field", a).map(|_| true),
        Cmd::Form(a) => single("form", a).map(|_| true),
        Cmd::Ring(a) => single("ring", a).map(|_| true),
        Cmd::Coxfield(a) => single("coxfield", a).map(|_| true),
        Cmd::Compare(a) => pair(a).map(|_| true),
        Cmd::Corpus(a) => corpus(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
