//! Per-group invariant records and pairwise verdicts.
//!
//! A verdict of `Incommensurable` is backed by one invariant that provably
//! differs. Agreement of every invariant is reported as `NotDistinguished`: the
//! invariants are not complete.

use crate::algnum::Subfield;
use crate::brauer::{hasse_invariant, similarity_decision, witt_invariant, BrauerClass, FormData, NotSimilarReason, SimilarityVerdict};
use crate::charfields::{char_poly_gram, coxeter_char_poly, CharError, CharPolyRecord, CoxeterPoly};
use crate::classify::{classify, field_watchlist, Advisory, ArithClass, ArithKind};
use crate::coxgraph::{CoxeterGraph, GramMatrix};
use crate::cycles::{simple_cycles, vinberg_field, vinberg_ring, Cycle, CycleError, RingReport, DEFAULT_CYCLE_CAP, DEFAULT_WALK_LENGTH};
use crate::vform::{vinberg_form, BasisOptions, VformError, VinbergForm};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Form(#[from] VformError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("base vertex {0} is out of range")]
    BaseVertex(usize),
    #[error("groups have dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Options {
    /// 0-based.
    pub base_vertex: usize,
    /// 0-based Coxeter-element orders; empty means the vertex order.
    pub orders: Vec<Vec<usize>>,
    pub cycle_cap: usize,
    pub walk_length: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { base_vertex: 0, orders: Vec::new(), cycle_cap: DEFAULT_CYCLE_CAP, walk_length: DEFAULT_WALK_LENGTH }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub name: String,
    pub degree: usize,
    pub minpoly: String,
    /// The generator of K as an element of the entry field.
    pub generator: String,
}

impl FieldInfo {
    pub fn of(k: &Subfield) -> FieldInfo {
        FieldInfo {
            name: k.field().describe(),
            degree: k.degree(),
            minpoly: k.field().minpoly().to_string(),
            generator: k.generator_image().to_string(),
        }
    }
}

/// Everything computed for one group.
#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    pub schema: u32,
    /// SHA-256 of the canonical graph text.
    pub hash: String,
    pub dim: usize,
    pub rank: usize,
    pub entry_field: String,
    pub vinberg_field: FieldInfo,
    pub simple_cycles: usize,
    pub arithmeticity: ArithClass,
    pub ring: RingReport,
    pub form: VinbergForm,
    /// None when local invariants over K are not available.
    pub hasse: Option<BrauerClass>,
    pub witt: Option<BrauerClass>,
    pub gram_field: CharPolyRecord,
    pub coxeter: Vec<CoxeterPoly>,
    pub advisories: Vec<Advisory>,
    #[serde(skip)]
    pub field: Subfield,
    #[serde(skip)]
    pub cycles: Vec<Cycle>,
}

pub fn graph_hash(g: &CoxeterGraph) -> String {
    Sha256::digest(g.to_string().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn compute(graph: &CoxeterGraph, g: &GramMatrix, opts: &Options) -> Result<Invariants, ReportError> {
    if opts.base_vertex >= g.size() {
        return Err(ReportError::BaseVertex(opts.base_vertex));
    }
    let cycles = simple_cycles(g, opts.cycle_cap)?;
    let field = vinberg_field(g, &cycles);
    let arithmeticity = classify(g, &field, &cycles);
    let ring = vinberg_ring(g, &field, &cycles, opts.walk_length)?;
    let form = vinberg_form(g, &field, &BasisOptions { base: opts.base_vertex, seed: None })?;
    let hasse = hasse_invariant(&form.diagonal).ok();
    let witt = witt_invariant(&form.diagonal).ok();
    let identity: Vec<usize> = (0..g.size()).collect();
    let orders = if opts.orders.is_empty() { std::slice::from_ref(&identity) } else { &opts.orders[..] };
    let coxeter = orders.iter().map(|o| coxeter_char_poly(g, o)).collect::<Result<Vec<_>, _>>()?;
    let advisories = field_watchlist(graph, g, &field, &arithmeticity);
    Ok(Invariants {
        schema: SCHEMA_VERSION,
        hash: graph_hash(graph),
        dim: g.dim,
        rank: g.size(),
        entry_field: g.field().describe(),
        vinberg_field: FieldInfo::of(&field),
        simple_cycles: cycles.len(),
        arithmeticity,
        ring,
        form,
        hasse,
        witt,
        gram_field: char_poly_gram(g),
        coxeter,
        advisories,
        field,
        cycles,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Incommensurable,
    NotDistinguished,
    Inconclusive,
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    VinbergFieldDiffers,
    VinbergRingDiffers,
    FormsNotSimilar,
    DetClassDiffers,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonVerdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Reason>,
    /// The differing invariant on each side, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<(String, String)>,
    pub details: Vec<String>,
}

fn differs(reason: Reason, a: String, b: String, details: Vec<String>) -> ComparisonVerdict {
    ComparisonVerdict { status: Status::Incommensurable, reason: Some(reason), values: Some((a, b)), details }
}

fn form_summary(inv: &Invariants) -> String {
    let d: Vec<String> = inv.form.diagonal.iter().map(|x| x.to_string()).collect();
    let mut s = format!("<{}>, det class {}", d.join(", "), inv.form.det_class);
    if let Some(h) = &inv.hasse {
        let _ = write!(s, ", Hasse {h}");
    }
    s
}

/// Checks the Vinberg field, then the Vinberg form, then the Vinberg ring.
pub fn compare(a: &Invariants, b: &Invariants) -> Result<ComparisonVerdict, ReportError> {
    if a.dim != b.dim {
        return Err(ReportError::DimensionMismatch(a.dim, b.dim));
    }
    let mut details = Vec::new();
    if !a.field.same_as(&b.field) {
        return Ok(differs(Reason::VinbergFieldDiffers, a.vinberg_field.name.clone(), b.vinberg_field.name.clone(), details));
    }
    details.push(format!("Vinberg fields agree: {}", a.vinberg_field.name));

    let mut open = None;
    let fa = FormData {
        field: a.form.base_field(),
        diagonal: &a.form.diagonal,
        quasi_arithmetic: a.arithmeticity.value != ArithKind::NqArithmetic,
    };
    let fb = FormData {
        field: b.form.base_field(),
        diagonal: &b.form.diagonal,
        quasi_arithmetic: b.arithmeticity.value != ArithKind::NqArithmetic,
    };
    match similarity_decision(&fa, &fb, a.dim) {
        Ok(SimilarityVerdict::Similar { detail }) => details.push(format!("forms similar: {detail}")),
        Ok(SimilarityVerdict::NotSimilar { reason, detail }) => {
            details.push(detail);
            let r = if reason == NotSimilarReason::DetClass { Reason::DetClassDiffers } else { Reason::FormsNotSimilar };
            return Ok(differs(r, form_summary(a), form_summary(b), details));
        }
        Ok(SimilarityVerdict::Inconclusive { detail }) => {
            details.push(format!("forms: {detail}"));
            open = Some(Status::Inconclusive);
        }
        Ok(SimilarityVerdict::Unsupported { detail }) => {
            details.push(format!("forms: {detail}"));
            open = Some(Status::Unsupported);
        }
        Err(e) => {
            details.push(format!("forms: {e}"));
            open = Some(Status::Unsupported);
        }
    }

    match a.ring.ring.same_as(&b.ring.ring) {
        Some(false) => {
            return Ok(differs(Reason::VinbergRingDiffers, a.ring.ring.to_string(), b.ring.ring.to_string(), details));
        }
        Some(true) => details.push(format!("Vinberg rings agree: {}", a.ring.ring)),
        None => {
            details.push(format!("rings {} and {} cannot be compared", a.ring.ring, b.ring.ring));
            open.get_or_insert(Status::Inconclusive);
        }
    }
    let status = open.unwrap_or(Status::NotDistinguished);
    Ok(ComparisonVerdict { status, reason: None, values: None, details })
}

impl std::fmt::Display for ComparisonVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.status, self.reason) {
            (Status::Incommensurable, Some(r)) => writeln!(f, "verdict: incommensurable ({r:?})")?,
            (s, _) => writeln!(f, "verdict: {}", serde_json::to_value(s).unwrap().as_str().unwrap().replace('_', " "))?,
        }
        if let Some((a, b)) = &self.values {
            writeln!(f, "  first:  {a}")?;
            writeln!(f, "  second: {b}")?;
        }
        for d in &self.details {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}

fn poly_text(p: &crate::matrix::FPoly) -> String {
    format!("[{}]", p.to_strings().join(", "))
}

impl Invariants {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "graph {} (n = {}, N = {})", &self.hash[..16], self.dim, self.rank);
        let _ = writeln!(w, "entry field: {}", self.entry_field);
        let k = &self.vinberg_field;
        let _ = writeln!(w, "Vinberg field: {} [min poly {}, generator {}; from {} simple cycles]", k.name, k.minpoly, k.generator, self.simple_cycles);
        let c = &self.arithmeticity;
        let _ = writeln!(w, "class: {}", c.value);
        for wt in &c.witnesses {
            let _ = writeln!(w, "  witness: {}", serde_json::to_string(wt).unwrap());
        }
        let r = &self.ring;
        let _ = writeln!(
            w,
            "Vinberg ring: {} [simple cycles and closed walks up to length {}; simple cycles suffice: {}]",
            r.ring,
            r.walk_length,
            if r.simple_cycles_suffice { "yes" } else { "no" }
        );
        let f = &self.form;
        let basis: Vec<String> = f.basis.iter().map(|v| v.to_string()).collect();
        let diag: Vec<String> = f.diagonal.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(w, "Vinberg form: <{}> [basis {}]", diag.join(", "), basis.join(" "));
        let _ = writeln!(w, "  det class {}, discriminant {}, signature ({}, {})", f.det_class, f.discriminant, f.signature.0, f.signature.1);
        match (&self.hasse, &self.witt) {
            (Some(h), Some(c)) => {
                let _ = writeln!(w, "  Hasse invariant: {h}");
                let _ = writeln!(w, "  Witt invariant: {c}");
            }
            _ => {
                let _ = writeln!(w, "  Hasse and Witt invariants: unsupported over {}", k.name);
            }
        }
        let _ = writeln!(w, "Gram field: {} [char poly {}]", self.gram_field.field.field().describe(), poly_text(&self.gram_field.poly));
        for cp in &self.coxeter {
            let o: Vec<String> = cp.order.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(
                w,
                "Coxeter field ({}): {} [chi_C {}; palindromic: {}; eigenvalues > 1: {}]",
                o.join("-"),
                cp.chi_c.field.field().describe(),
                poly_text(&cp.chi_c.poly),
                cp.palindromic,
                cp.eigenvalues_above_one
            );
        }
        for a in &self.advisories {
            let _ = writeln!(w, "advisory: {a}");
        }
        s
    }
}
