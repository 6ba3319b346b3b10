//! Arithmeticity via Vinberg's criterion, and advisory sanity checks on the
//! Vinberg field (possible fields for cocompact groups, totient bound on angles).

use crate::algnum::{cos_pi_over, fields_equal, quadratic_field, rationals, totient, AlgebraicNumber, Field, Subfield};
use crate::coxgraph::{CoxeterGraph, EdgeLabel, GramMatrix};
use crate::cycles::Cycle;
use crate::matrix::{signature, FPoly, Matrix};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithKind {
    Arithmetic,
    QuasiArithmetic,
    NqArithmetic,
}

impl fmt::Display for ArithKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithKind::Arithmetic => "arithmetic",
            ArithKind::QuasiArithmetic => "quasi-arithmetic",
            ArithKind::NqArithmetic => "nq-arithmetic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The entry field has a complex embedding.
    NotTotallyReal { field: String },
    /// G^σ is not positive semidefinite: the coefficient of t^k in χ has the wrong
    /// sign under the real root `root` of the entry field.
    NotPsd { root: usize, coefficient: usize },
    /// A simple cycle of 2G that is not an algebraic integer.
    NonIntegralCycle { cycle: Vec<usize>, value: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ArithClass {
    pub value: ArithKind,
    pub witnesses: Vec<Witness>,
    /// Real roots of the entry field whose embeddings move K(Γ); these are the
    /// embeddings at which G^σ was tested.
    pub conjugate_roots: Vec<usize>,
}

/// Coefficient test for χ(t) = det(tI − M) of a symmetric matrix: all roots are
/// ≥ 0 under `root` iff (−1)^{N−k} a_k ≥ 0 for every k. Returns the first k that fails.
pub fn psd_exact(chi: &FPoly, root: usize) -> Result<(), usize> {
    let n = chi.degree();
    for k in 0..=n {
        let s = chi.coeff(k).sign_under(root);
        let s = if (n - k) % 2 == 0 { s } else { -s };
        if s < 0 {
            return Err(k);
        }
    }
    Ok(())
}

/// Convenience wrapper on a matrix.
pub fn psd_matrix(m: &Matrix, root: usize) -> Result<(), usize> {
    psd_exact(&m.char_poly(), root)
}

/// Vinberg's criterion. Integrality is checked on simple cycles, which suffices:
/// the value of any closed walk is a product of simple-cycle values.
pub fn classify(g: &GramMatrix, field: &Subfield, cycles: &[Cycle]) -> ArithClass {
    let entry = g.field();
    if !entry.is_totally_real() {
        return ArithClass {
            value: ArithKind::NqArithmetic,
            witnesses: vec![Witness::NotTotallyReal { field: entry.describe() }],
            conjugate_roots: Vec::new(),
        };
    }
    let roots: Vec<usize> = (0..entry.real_root_count()).filter(|&r| !field.is_identity_under(r)).collect();
    for &r in &roots {
        if let Err(k) = psd_exact(g.char_poly(), r) {
            return ArithClass {
                value: ArithKind::NqArithmetic,
                witnesses: vec![Witness::NotPsd { root: r, coefficient: k }],
                conjugate_roots: roots,
            };
        }
    }
    match cycles.iter().find(|c| !c.value.is_algebraic_integer()) {
        Some(c) => ArithClass {
            value: ArithKind::QuasiArithmetic,
            witnesses: vec![Witness::NonIntegralCycle { cycle: c.indices.clone(), value: c.value.to_string() }],
            conjugate_roots: roots,
        },
        None => ArithClass { value: ArithKind::Arithmetic, witnesses: Vec::new(), conjugate_roots: roots },
    }
}

/// All m ≥ 2 with φ(m) ≤ 2d. Complete because φ(m) ≥ √m for m ∉ {2, 6}.
pub fn admissible_m(d: usize) -> Vec<u64> {
    let b = 2 * d as u64;
    (2..=(b * b).max(6)).filter(|&m| totient(m) <= b).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Advisory {
    /// A non-cocompact quasi-arithmetic group should have Vinberg field ℚ.
    NoncompactFieldNotRational { field: String },
    /// Cocompact quasi-arithmetic with a Lannér subgraph of order ≥ 3, but K is
    /// not one of the possible fields.
    FieldNotInList { field: String, lanner: Vec<usize> },
    /// An angle π/m with φ(m) > 2·[K:ℚ].
    TotientBound { m: u64, phi: u64, degree: usize },
}

impl fmt::Display for Advisory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Advisory::NoncompactFieldNotRational { field } => {
                write!(f, "non-cocompact quasi-arithmetic group with Vinberg field {field} (expected Q)")
            }
            Advisory::FieldNotInList { field, lanner } => {
                let l: Vec<String> = lanner.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "Vinberg field {field} is not a possible field (Lanner subgraph {{{}}})", l.join(","))
            }
            Advisory::TotientBound { m, phi, degree } => {
                write!(f, "angle pi/{m}: phi({m}) = {phi} exceeds 2*{degree}")
            }
        }
    }
}

/// Violations of φ(m) ≤ 2d over the angle labels; only meaningful for cofinite
/// groups with n > 2.
pub fn totient_bound_check(graph: &CoxeterGraph, d: usize) -> Vec<Advisory> {
    let mut ms = graph.angle_labels();
    ms.sort();
    ms.dedup();
    ms.into_iter()
        .filter(|&m| totient(m) > 2 * d as u64)
        .map(|m| Advisory::TotientBound { m, phi: totient(m), degree: d })
        .collect()
}

/// A Lannér subgraph of order 3 to 5: only angle edges, connected, Gram
/// submatrix of signature (k − 1, 1), every maximal proper subgraph elliptic.
pub fn find_lanner_subgraph(graph: &CoxeterGraph, g: &GramMatrix) -> Option<Vec<usize>> {
    let n = graph.rank;
    let root = g.field().designated();
    for k in 3..=5.min(n) {
        let mut found = None;
        for_each_subset(n, k, &mut |s: &[usize]| {
            if found.is_some() || !lanner_candidate(graph, s) {
                return;
            }
            if signature(&g.matrix().submatrix(s), root) != (k - 1, 1, 0) {
                return;
            }
            let elliptic = (0..k).all(|drop| {
                let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                signature(&g.matrix().submatrix(&sub), root) == (k - 1, 0, 0)
            });
            if elliptic {
                found = Some(s.to_vec());
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn lanner_candidate(graph: &CoxeterGraph, s: &[usize]) -> bool {
    let mut adj = vec![Vec::new(); s.len()];
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            match graph.edge(s[a], s[b]) {
                None => {}
                Some(EdgeLabel::Angle(_)) => {
                    adj[a].push(b);
                    adj[b].push(a);
                }
                Some(_) => return false,
            }
        }
    }
    let mut seen = vec![false; s.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&x| x)
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Fields a cocompact quasi-arithmetic group with a Lannér subgraph of order ≥ 3
/// can have, restricted to those of the given degree.
fn possible_fields(degree: usize) -> Vec<Field> {
    let mut out = Vec::new();
    let quad = |d: i64| quadratic_field(&d.into());
    match degree {
        1 => out.push(rationals()),
        2 => out.extend([2, 3, 5, 6].map(quad)),
        4 => {
            for (a, b) in [(2, 3), (2, 5)] {
                if let Ok(c) = crate::algnum::compositum(&quad(a), &quad(b)) {
                    out.push(c.field);
                }
            }
        }
        _ => {}
    }
    for m in [7u64, 9, 11, 15, 16, 20] {
        if (totient(m) / 2) as usize == degree {
            // cos(2π/m) = 2cos²(π/m) − 1
            let c = cos_pi_over(m);
            let x = &(&c * &c).scale(&crate::algnum::poly::q(2)) - &AlgebraicNumber::from_int(1);
            out.push(crate::algnum::subfield::field_of(&x).field().clone());
        }
    }
    out
}

pub fn field_watchlist(graph: &CoxeterGraph, g: &GramMatrix, field: &Subfield, class: &ArithClass) -> Vec<Advisory> {
    let mut out = Vec::new();
    let k = field.field();
    if class.value != ArithKind::NqArithmetic {
        if !graph.cocompact && !k.is_rational() {
            out.push(Advisory::NoncompactFieldNotRational { field: k.describe() });
        }
        if graph.cocompact {
            if let Some(l) = find_lanner_subgraph(graph, g) {
                if !possible_fields(k.degree()).iter().any(|f| fields_equal(f, k)) {
                    out.push(Advisory::FieldNotInList { field: k.describe(), lanner: l });
                }
            }
        }
    }
    if graph.cofinite && graph.dim > 2 {
        out.extend(totient_bound_check(graph, k.degree()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::poly::qq;
    use crate::coxgraph::load_graph;

    #[test]
    fn admissible_lists() {
        assert_eq!(admissible_m(1), vec![2, 3, 4, 6]);
        assert_eq!(admissible_m(5), vec![2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16, 18, 20, 22, 24, 30]);
    }

    #[test]
    fn psd_small() {
        let id = Matrix::identity(&rationals(), 3);
        assert!(psd_matrix(&id, 0).is_ok());
        let m = Matrix::from_rationals(&rationals(), &[vec![qq(1, 1), qq(0, 1)], vec![qq(0, 1), qq(-1, 1_000_000)]]);
        assert!(psd_matrix(&m, 0).is_err());
    }

    #[test]
    fn totient_violation() {
        let (g, _) = load_graph("dim 3\nrank 4\nedge 1 2 angle 7\nedge 2 3 angle 3\nedge 3 4 angle 3\n", false).unwrap();
        assert_eq!(totient_bound_check(&g, 1), vec![Advisory::TotientBound { m: 7, phi: 6, degree: 1 }]);
        assert!(totient_bound_check(&g, 3).is_empty());
    }

    #[test]
    fn lanner_triangle_found() {
        // [5,3,5] compact tetrahedron: a Lannér graph of order 4 with no smaller one
        let (g, gm) = load_graph("dim 3\nrank 4\nedge 1 2 angle 5\nedge 2 3 angle 3\nedge 3 4 angle 5\n", true).unwrap();
        assert_eq!(find_lanner_subgraph(&g, &gm), Some(vec![0, 1, 2, 3]));
        // the (2,3,7) triangle
        let (g, gm) = load_graph("dim 2\nrank 3\nedge 1 2 angle 7\nedge 2 3 angle 3\n", true).unwrap();
        assert_eq!(find_lanner_subgraph(&g, &gm), Some(vec![0, 1, 2]));
    }

    #[test]
    fn possible_field_degrees() {
        assert_eq!(possible_fields(2).len(), 4);
        assert_eq!(possible_fields(3).len(), 2);
        assert_eq!(possible_fields(4).len(), 5);
        assert_eq!(possible_fields(5).len(), 1);
    }
}
