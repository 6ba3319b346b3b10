//! Cycles of 2G, the Vinberg field and the Vinberg ring.
//!
//! A cycle value is b = 2^l g_{i₁i₂} g_{i₂i₃} ⋯ g_{i_l i₁}. The ring is stored by
//! the primes it inverts: every ring between O_K and K is the intersection of
//! the local rings O_𝔭 it does not invert, so this description is exact.

use crate::algnum::{AlgError, AlgebraicNumber, Subfield};
use crate::brauer::{LocalField, PrimeIdeal};
use crate::coxgraph::GramMatrix;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use thiserror::Error;

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;
/// Longest closed walk used for the ring unless configured otherwise.
pub const DEFAULT_WALK_LENGTH: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error("more than {0} simple cycles")]
    TooManyCycles(usize),
    #[error("cycle value {0} does not lie in the Vinberg field")]
    OutsideField(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A simple cycle in canonical form with its value in the entry field.
#[derive(Clone, Debug, Serialize)]
pub struct Cycle {
    pub indices: Vec<usize>,
    #[serde(serialize_with = "crate::ser_display")]
    pub value: AlgebraicNumber,
}

fn adjacency(g: &GramMatrix) -> Vec<Vec<usize>> {
    let n = g.size();
    (0..n).map(|i| (0..n).filter(|&j| j != i && !g.entry(i, j).is_zero()).collect()).collect()
}

/// All simple cycles of length ≥ 2, each once: smallest vertex first and, from
/// length 3 on, the second vertex smaller than the last. Sorted lexicographically.
pub fn enumerate_simple_cycles(g: &GramMatrix, cap: usize) -> Result<Vec<Vec<usize>>, CycleError> {
    let adj = adjacency(g);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..g.size() {
        for &j in &adj[s] {
            if j > s {
                out.push(vec![s, j]);
            }
        }
        let mut path = vec![s];
        let mut on = vec![false; g.size()];
        on[s] = true;
        dfs(&adj, s, &mut path, &mut on, &mut out, cap)?;
    }
    if out.len() > cap {
        return Err(CycleError::TooManyCycles(cap));
    }
    out.sort();
    Ok(out)
}

fn dfs(
    adj: &[Vec<usize>],
    s: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<(), CycleError> {
    let v = *path.last().unwrap();
    for &w in &adj[v] {
        if w == s && path.len() >= 3 && path[1] < v {
            out.push(path.clone());
            if out.len() > cap {
                return Err(CycleError::TooManyCycles(cap));
            }
        }
        if w > s && !on[w] {
            on[w] = true;
            path.push(w);
            dfs(adj, s, path, on, out, cap)?;
            path.pop();
            on[w] = false;
        }
    }
    Ok(())
}

/// 2^l g_{i₁i₂} ⋯ g_{i_l i₁} for any closed index sequence.
pub fn cycle_value(g: &GramMatrix, cycle: &[usize]) -> AlgebraicNumber {
    let l = cycle.len();
    let mut acc = AlgebraicNumber::from_int(1 << l).coerce_to(g.field()).expect("ℚ embeds");
    for k in 0..l {
        acc = &acc * g.entry(cycle[k], cycle[(k + 1) % l]);
    }
    acc
}

pub fn simple_cycles(g: &GramMatrix, cap: usize) -> Result<Vec<Cycle>, CycleError> {
    Ok(enumerate_simple_cycles(g, cap)?
        .into_iter()
        .map(|c| {
            let value = cycle_value(g, &c);
            Cycle { indices: c, value }
        })
        .collect())
}

/// K(Γ), generated by the simple-cycle values.
pub fn vinberg_field(g: &GramMatrix, cycles: &[Cycle]) -> Subfield {
    let vals: Vec<AlgebraicNumber> = cycles.iter().map(|c| c.value.clone()).collect();
    crate::algnum::subfield_generated(g.field(), &vals)
}

/// Values of closed walks of length 2..=max_len (loops at a vertex excluded),
/// one per multiset of traversed edges. Each walk is read from its smallest vertex.
pub fn closed_walk_values(g: &GramMatrix, max_len: usize) -> Vec<AlgebraicNumber> {
    let adj = adjacency(g);
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut out = Vec::new();
    for s in 0..g.size() {
        let mut walk = vec![s];
        walks(&adj, s, max_len, &mut walk, &mut |w: &[usize]| {
            let mut key: Vec<(usize, usize)> =
                (0..w.len()).map(|k| (w[k].min(w[(k + 1) % w.len()]), w[k].max(w[(k + 1) % w.len()]))).collect();
            key.sort();
            if seen.insert(key) {
                out.push(cycle_value(g, w));
            }
        });
    }
    out
}

fn walks(adj: &[Vec<usize>], s: usize, max_len: usize, walk: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let v = *walk.last().unwrap();
    for &w in &adj[v] {
        if w == s && walk.len() >= 2 {
            f(walk);
        }
        if w > s && walk.len() < max_len {
            walk.push(w);
            walks(adj, s, max_len, walk, f);
            walk.pop();
        }
    }
}

/// How the Vinberg ring is described.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingKind {
    /// ℤ[1/n] with n squarefree (n = 1 is ℤ).
    Rational {
        #[serde(serialize_with = "crate::ser_display")]
        n: BigInt,
    },
    /// O_K with the listed prime ideals inverted.
    Quadratic {
        #[serde(serialize_with = "ser_primes")]
        inverted: BTreeSet<PrimeIdeal>,
    },
    /// O_K itself over a field of degree > 2.
    Integers,
    /// Degree > 2 with non-integral generators: kept as the generator list,
    /// equal only to a ring with the same generators.
    Opaque { generators: Vec<String> },
}

fn ser_primes<S: serde::Serializer>(ps: &BTreeSet<PrimeIdeal>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct VinbergRing {
    #[serde(serialize_with = "ser_field")]
    pub field: Subfield,
    #[serde(flatten)]
    pub kind: RingKind,
}

fn ser_field<S: serde::Serializer>(f: &Subfield, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.field().describe())
}

impl VinbergRing {
    /// Equal rings: equal fields and equal descriptions. Opaque rings are never
    /// reported different from anything.
    pub fn same_as(&self, other: &VinbergRing) -> Option<bool> {
        if !self.field.same_as(&other.field) {
            return Some(false);
        }
        match (&self.kind, &other.kind) {
            (RingKind::Opaque { generators: a }, RingKind::Opaque { generators: b }) if a == b => Some(true),
            (RingKind::Opaque { .. }, _) | (_, RingKind::Opaque { .. }) => None,
            (a, b) => Some(a == b),
        }
    }

    pub fn is_integers(&self) -> bool {
        match &self.kind {
            RingKind::Rational { n } => n.is_one(),
            RingKind::Quadratic { inverted } => inverted.is_empty(),
            RingKind::Integers => true,
            RingKind::Opaque { .. } => false,
        }
    }
}

impl fmt::Display for VinbergRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Rational { n } if n.is_one() => write!(f, "Z"),
            RingKind::Rational { n } => write!(f, "Z[1/{n}]"),
            RingKind::Quadratic { inverted } if inverted.is_empty() => write!(f, "O_K"),
            RingKind::Quadratic { inverted } => {
                let ps: Vec<String> = inverted.iter().map(|p| p.generators()).collect();
                write!(f, "O_K[1/p : p in {{{}}}]", ps.join(", "))
            }
            RingKind::Integers => write!(f, "O_K"),
            RingKind::Opaque { generators } => write!(f, "O_K[{}]", generators.join(", ")),
        }
    }
}

/// The ring generated over O_K by `values` (elements of the parent of `field`).
pub fn ring_of(field: &Subfield, values: &[AlgebraicNumber]) -> Result<VinbergRing, CycleError> {
    let vals = values
        .iter()
        .map(|v| field.to_sub(v).ok_or_else(|| CycleError::OutsideField(v.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let kind = if field.degree() == 1 {
        let mut ps = BTreeSet::new();
        for v in &vals {
            let r = v.as_rational().expect("rational field");
            ps.extend(crate::brauer::local::prime_divisors(r.denom()));
        }
        RingKind::Rational { n: ps.iter().fold(BigInt::one(), |a, p| a * p) }
    } else if let (2, Some(d)) = (field.degree(), field.field().quadratic_d()) {
        let k = LocalField::quadratic(d.clone());
        let mut inv = BTreeSet::new();
        for v in vals.iter().filter(|v| !v.is_zero()) {
            let e = k.elt(v);
            for p in crate::brauer::local::prime_divisors(&e.m) {
                for pr in k.primes_above(&p) {
                    if k.valuation(&e, &pr) < 0 {
                        inv.insert(pr);
                    }
                }
            }
        }
        RingKind::Quadratic { inverted: inv }
    } else {
        let bad: Vec<&AlgebraicNumber> = vals.iter().filter(|v| !v.is_algebraic_integer()).collect();
        if bad.is_empty() {
            RingKind::Integers
        } else {
            let mut generators: Vec<String> = bad.iter().map(|v| v.to_string()).collect();
            generators.sort();
            generators.dedup();
            RingKind::Opaque { generators }
        }
    };
    Ok(VinbergRing { field: field.clone(), kind })
}

/// The ring from simple cycles and closed walks up to `walk_length`, and whether
/// simple cycles alone give the same ring.
#[derive(Clone, Debug, Serialize)]
pub struct RingReport {
    pub ring: VinbergRing,
    pub walk_length: usize,
    pub simple_cycles_suffice: bool,
}

pub fn vinberg_ring(
    g: &GramMatrix,
    field: &Subfield,
    cycles: &[Cycle],
    walk_length: usize,
) -> Result<RingReport, CycleError> {
    let simple: Vec<AlgebraicNumber> = cycles.iter().map(|c| c.value.clone()).collect();
    let from_simple = ring_of(field, &simple)?;
    let mut all = simple;
    all.extend(closed_walk_values(g, walk_length));
    let ring = ring_of(field, &all)?;
    let suffice = from_simple.same_as(&ring) == Some(true);
    Ok(RingReport { ring, walk_length, simple_cycles_suffice: suffice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxgraph::load_graph;

    fn gram(text: &str) -> GramMatrix {
        load_graph(text, false).unwrap().1
    }

    #[test]
    fn path_has_only_two_cycles() {
        let g = gram("dim 2\nrank 3\nedge 1 2 angle 3\nedge 2 3 angle 7\n");
        assert_eq!(enumerate_simple_cycles(&g, 100).unwrap(), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn triangle_cycles() {
        let g = gram("dim 2\nrank 3\nedge 1 2 angle 3\nedge 2 3 angle 3\nedge 1 3 angle 7\n");
        let c = enumerate_simple_cycles(&g, 100).unwrap();
        assert_eq!(c, vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]);
        assert!(matches!(enumerate_simple_cycles(&g, 3), Err(CycleError::TooManyCycles(3))));
    }

    #[test]
    fn complete_graph_cycle_count() {
        // K5 has Σ_{k=3}^{5} C(5,k)(k−1)!/2 = 10 + 15 + 12 = 37 cycles of length ≥ 3
        let mut t = String::from("dim 4\nrank 5\n");
        for i in 1..=5 {
            for j in i + 1..=5 {
                t += &format!("edge {i} {j} angle 3\n");
            }
        }
        let c = enumerate_simple_cycles(&gram(&t), 1000).unwrap();
        assert_eq!(c.iter().filter(|c| c.len() >= 3).count(), 37);
        assert_eq!(c.len(), 47);
    }

    #[test]
    fn angle_six_two_cycle_is_three() {
        let g = gram("dim 2\nrank 3\nedge 1 2 angle 6\nedge 2 3 angle 3\n");
        assert_eq!(cycle_value(&g, &[0, 1]), AlgebraicNumber::from_int(3).coerce_to(g.field()).unwrap());
    }

    #[test]
    fn rational_ring_inverts_denominators() {
        // weight 2√3/3 gives the 2-cycle 16/3
        let g = gram("dim 2\nrank 3\nedge 1 2 angle 3\nedge 2 3 dotted 2*sqrt(3)/3\n");
        let cs = simple_cycles(&g, 100).unwrap();
        let k = vinberg_field(&g, &cs);
        let r = vinberg_ring(&g, &k, &cs, 6).unwrap();
        assert_eq!(r.ring.to_string(), "Z[1/3]");
    }
}
