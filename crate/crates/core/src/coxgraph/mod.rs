//! Coxeter graphs, their file format and Gram matrices.
//!
//! File format, one statement per line, `#` starts a comment:
//!
//! ```text
//! dim 4
//! rank 6
//! edge 1 2 angle 6
//! edge 5 6 inf
//! edge 1 4 dotted sqrt((10+3*sqrt(5))/11)
//! flag cofinite
//! ```
//!
//! Unlisted pairs are right angles; plain edges of the drawing are `angle 3`.

pub mod expr;

use crate::algnum::{cos_pi_over, AlgError, AlgebraicNumber, Field};
use crate::matrix::{signature_of_char_poly, FPoly, Matrix};
pub use expr::{parse_expr, ExprError};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoxError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: duplicate edge {i}-{j}")]
    DuplicateEdge { line: usize, i: usize, j: usize },
    #[error("line {line}: dotted weight must exceed 1")]
    WeightTooSmall { line: usize },
    #[error("rank {rank} is smaller than dim + 1 = {}", dim + 1)]
    RankTooSmall { dim: usize, rank: usize },
    #[error("Gram signature is ({p},{q}) with {z} zero eigenvalues; expected ({n},1) with {zeros}")]
    Signature { p: usize, q: usize, z: usize, n: usize, zeros: usize },
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Clone, Debug)]
pub enum EdgeLabel {
    /// Dihedral angle π/m, m ≥ 3.
    Angle(u64),
    /// Parallel faces (label ∞).
    Parallel,
    /// Ultraparallel faces; the weight is cosh of their distance. `expr` is the
    /// source text, kept for printing.
    Dotted { weight: AlgebraicNumber, expr: String },
}

impl PartialEq for EdgeLabel {
    fn eq(&self, o: &EdgeLabel) -> bool {
        match (self, o) {
            (EdgeLabel::Angle(a), EdgeLabel::Angle(b)) => a == b,
            (EdgeLabel::Parallel, EdgeLabel::Parallel) => true,
            (EdgeLabel::Dotted { weight: a, .. }, EdgeLabel::Dotted { weight: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl EdgeLabel {
    /// The Gram entry −cos(π/m), −1 or −w.
    pub fn gram_entry(&self) -> AlgebraicNumber {
        match self {
            EdgeLabel::Angle(m) => -cos_pi_over(*m),
            EdgeLabel::Parallel => AlgebraicNumber::from_int(-1),
            EdgeLabel::Dotted { weight, .. } => -weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoxeterGraph {
    /// Dimension n of hyperbolic space.
    pub dim: usize,
    /// Number of vertices N.
    pub rank: usize,
    /// Keys (i, j) are 0-based with i < j.
    edges: BTreeMap<(usize, usize), EdgeLabel>,
    pub cofinite: bool,
    pub cocompact: bool,
}

impl CoxeterGraph {
    pub fn new(dim: usize, rank: usize) -> Result<Self, CoxError> {
        if rank < dim + 1 {
            return Err(CoxError::RankTooSmall { dim, rank });
        }
        Ok(CoxeterGraph { dim, rank, edges: BTreeMap::new(), cofinite: false, cocompact: false })
    }

    /// Add an edge between 0-based vertices. Returns false on a duplicate.
    pub fn add_edge(&mut self, i: usize, j: usize, label: EdgeLabel) -> bool {
        assert!(i != j && i < self.rank && j < self.rank);
        let key = (i.min(j), i.max(j));
        if self.edges.contains_key(&key) {
            return false;
        }
        self.edges.insert(key, label);
        true
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&EdgeLabel> {
        self.edges.get(&(i.min(j), i.max(j)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &EdgeLabel)> {
        self.edges.iter()
    }

    /// Angle labels m of all ordinary edges.
    pub fn angle_labels(&self) -> Vec<u64> {
        self.edges
            .values()
            .filter_map(|l| if let EdgeLabel::Angle(m) = l { Some(*m) } else { None })
            .collect()
    }

    /// New graph whose vertex i is old vertex perm[i].
    pub fn relabel(&self, perm: &[usize]) -> CoxeterGraph {
        assert_eq!(perm.len(), self.rank);
        let mut inv = vec![0; self.rank];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut g = CoxeterGraph { edges: BTreeMap::new(), ..self.clone() };
        for (&(a, b), l) in &self.edges {
            g.add_edge(inv[a], inv[b], l.clone());
        }
        g
    }

    /// Gram matrix over the field generated by all entries.
    pub fn gram_matrix(&self) -> Result<GramMatrix, CoxError> {
        let vals: Vec<AlgebraicNumber> = self.edges.values().map(|l| l.gram_entry()).collect();
        let (field, vals) = AlgebraicNumber::common_all(&vals)?;
        let n = self.rank;
        let mut m = Matrix::identity(&field, n);
        for ((&(i, j), _), v) in self.edges.iter().zip(vals) {
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
        Ok(GramMatrix { dim: self.dim, matrix: m, chi: OnceLock::new() })
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        writeln!(f, "rank {}", self.rank)?;
        for (&(i, j), l) in &self.edges {
            match l {
                EdgeLabel::Angle(m) => writeln!(f, "edge {} {} angle {}", i + 1, j + 1, m)?,
                EdgeLabel::Parallel => writeln!(f, "edge {} {} inf", i + 1, j + 1)?,
                EdgeLabel::Dotted { expr, .. } => writeln!(f, "edge {} {} dotted {}", i + 1, j + 1, expr)?,
            }
        }
        if self.cofinite {
            writeln!(f, "flag cofinite")?;
        }
        if self.cocompact {
            writeln!(f, "flag cocompact")?;
        }
        Ok(())
    }
}

/// The Gram matrix of a Coxeter graph together with the dimension n.
#[derive(Debug)]
pub struct GramMatrix {
    pub dim: usize,
    matrix: Matrix,
    chi: OnceLock<FPoly>,
}

impl Clone for GramMatrix {
    fn clone(&self) -> Self {
        GramMatrix { dim: self.dim, matrix: self.matrix.clone(), chi: self.chi.clone() }
    }
}

impl GramMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// The entry field K̃.
    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgebraicNumber {
        self.matrix.get(i, j)
    }

    /// det(tI − G), computed once.
    pub fn char_poly(&self) -> &FPoly {
        self.chi.get_or_init(|| self.matrix.char_poly())
    }

    /// Gram matrix of `graph.relabel(perm)` without rebuilding the entry field.
    pub fn relabel(&self, perm: &[usize]) -> GramMatrix {
        GramMatrix { dim: self.dim, matrix: self.matrix.permuted(perm), chi: self.chi.clone() }
    }

    /// Inertia (positive, negative, zero) under the designated embedding.
    pub fn signature(&self) -> (usize, usize, usize) {
        signature_of_char_poly(self.char_poly(), self.field().designated())
    }

    /// Checks signature (n, 1) with N − n − 1 zero eigenvalues.
    pub fn check_signature(&self) -> Result<(), CoxError> {
        let (p, q, z) = self.signature();
        let zeros = self.size() - self.dim - 1;
        if (p, q, z) == (self.dim, 1, zeros) {
            Ok(())
        } else {
            Err(CoxError::Signature { p, q, z, n: self.dim, zeros })
        }
    }
}

fn syntax<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, CoxError> {
    Err(CoxError::Syntax { line, col, msg: msg.into() })
}

/// Parse a graph file. Structural checks only; see [`load_graph`] for the
/// signature check.
pub fn parse_graph(text: &str) -> Result<CoxeterGraph, CoxError> {
    let mut dim: Option<usize> = None;
    let mut rank: Option<usize> = None;
    let mut pending: Vec<(usize, usize, usize, EdgeLabel)> = Vec::new();
    let mut flags: Vec<String> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap();
        // tokens with their 1-based start columns
        let mut toks: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (i, c) in body.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    toks.push((s + 1, &body[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            toks.push((s + 1, &body[s..]));
        }
        let Some(&(kcol, kw)) = toks.first() else { continue };
        let int = |k: usize, what: &str| -> Result<usize, CoxError> {
            let Some(&(c, t)) = toks.get(k) else {
                return syntax(line, body.trim_end().len() + 1, format!("missing {what}"));
            };
            t.parse::<usize>().or_else(|_| syntax(line, c, format!("expected {what}, found '{t}'")))
        };
        match kw {
            "dim" | "rank" => {
                let v = int(1, "an integer")?;
                if toks.len() > 2 {
                    return syntax(line, toks[2].0, "trailing input");
                }
                let slot = if kw == "dim" { &mut dim } else { &mut rank };
                if slot.is_some() {
                    return syntax(line, kcol, format!("'{kw}' given twice"));
                }
                *slot = Some(v);
            }
            "flag" => {
                let Some(&(c, f)) = toks.get(1) else { return syntax(line, body.len() + 1, "missing flag name") };
                if f != "cofinite" && f != "cocompact" {
                    return syntax(line, c, format!("unknown flag '{f}'"));
                }
                flags.push(f.to_string());
            }
            "edge" => {
                let i = int(1, "a vertex")?;
                let j = int(2, "a vertex")?;
                if i == 0 || j == 0 {
                    return syntax(line, toks[if i == 0 { 1 } else { 2 }].0, "vertices are numbered from 1");
                }
                if i == j {
                    return syntax(line, toks[2].0, "self-loop");
                }
                let Some(&(kc, kind)) = toks.get(3) else { return syntax(line, body.len() + 1, "missing edge kind") };
                let label = match kind {
                    "angle" => {
                        let m = int(4, "an integer m >= 3")?;
                        if m < 3 {
                            return syntax(line, toks[4].0, "angle label must be >= 3");
                        }
                        if toks.len() > 5 {
                            return syntax(line, toks[5].0, "trailing input");
                        }
                        EdgeLabel::Angle(m as u64)
                    }
                    "inf" => {
                        if toks.len() > 4 {
                            return syntax(line, toks[4].0, "trailing input");
                        }
                        EdgeLabel::Parallel
                    }
                    "dotted" => {
                        let Some(&(ec, _)) = toks.get(4) else { return syntax(line, body.len() + 1, "missing weight") };
                        let src = body[ec - 1..].trim_end();
                        let w = parse_expr(src).map_err(|e| CoxError::Syntax { line, col: ec - 1 + e.col, msg: e.msg })?;
                        if w.cmp_value(&AlgebraicNumber::from_int(1)) != std::cmp::Ordering::Greater {
                            return Err(CoxError::WeightTooSmall { line });
                        }
                        EdgeLabel::Dotted { weight: w, expr: src.to_string() }
                    }
                    _ => return syntax(line, kc, format!("unknown edge kind '{kind}'")),
                };
                pending.push((line, i - 1, j - 1, label));
            }
            _ => return syntax(line, kcol, format!("unknown statement '{kw}'")),
        }
    }
    let last = text.lines().count().max(1);
    let Some(dim) = dim else { return syntax(last, 1, "missing 'dim'") };
    let Some(rank) = rank else { return syntax(last, 1, "missing 'rank'") };
    if dim < 2 {
        return syntax(last, 1, "dim must be at least 2");
    }
    let mut g = CoxeterGraph::new(dim, rank)?;
    for (line, i, j, label) in pending {
        if i >= rank || j >= rank {
            return syntax(line, 1, format!("vertex out of range 1..{rank}"));
        }
        if !g.add_edge(i, j, label) {
            return Err(CoxError::DuplicateEdge { line, i: i.min(j) + 1, j: i.max(j) + 1 });
        }
    }
    g.cofinite = flags.iter().any(|f| f == "cofinite");
    g.cocompact = flags.iter().any(|f| f == "cocompact");
    Ok(g)
}

/// Parse, build the Gram matrix and (optionally) check its signature.
pub fn load_graph(text: &str, check_signature: bool) -> Result<(CoxeterGraph, GramMatrix), CoxError> {
    let g = parse_graph(text)?;
    let gm = g.gram_matrix()?;
    if check_signature {
        gm.check_signature()?;
    }
    Ok((g, gm))
}
