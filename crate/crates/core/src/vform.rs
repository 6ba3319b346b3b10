//! The Vinberg form: the pairing on the K(Γ)-span of the vectors
//! v₁ = 2e₁, v_{i₁…i_k} = 2^k g_{1i₁} g_{i₁i₂} ⋯ g_{i_{k−1}i_k} e_{i_k},
//! its diagonalization and square-class data.
//!
//! Every v is a multiple of some e_j, so a basis is a set of n + 1 vertices with
//! linearly independent rows of G, each reached by one path from the base vertex.

use crate::algnum::{AlgError, AlgebraicNumber, Field, Subfield};
use crate::coxgraph::GramMatrix;
use crate::matrix::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VformError {
    #[error("base vertex {0} out of range")]
    BadBase(usize),
    #[error("only {found} independent Vinberg vectors, expected {expected}")]
    RankDeficient { found: usize, expected: usize },
    #[error("pairing <{0}, {1}> does not lie in the Vinberg field")]
    OutsideField(String, String),
    #[error("singular form")]
    Singular,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// v_P for the path P = (base, i₁, …, i_k); `path` holds i₁, …, i_k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VinbergVector {
    pub base: usize,
    pub path: Vec<usize>,
}

impl VinbergVector {
    pub fn last(&self) -> usize {
        *self.path.last().unwrap_or(&self.base)
    }

    /// The scalar c with v = c·e_last, in the entry field.
    pub fn coeff(&self, g: &GramMatrix) -> AlgebraicNumber {
        let mut c = AlgebraicNumber::from_int(2).coerce_to(g.field()).expect("ℚ embeds");
        let mut prev = self.base;
        for (k, &i) in self.path.iter().enumerate() {
            if k > 0 {
                c = c.scale(&BigRational::from_integer(2.into()));
            }
            c = &c * g.entry(prev, i);
            prev = i;
        }
        c
    }
}

impl fmt::Display for VinbergVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = std::iter::once(self.base).chain(self.path.iter().copied()).map(|i| (i + 1).to_string()).collect();
        write!(f, "v[{}]", p.join(","))
    }
}

/// ⟨v_P, v_Q⟩ = c_P c_Q g_{last P, last Q}, expressed in K(Γ).
pub fn inner_product(
    g: &GramMatrix,
    field: &Subfield,
    p: &VinbergVector,
    q: &VinbergVector,
) -> Result<AlgebraicNumber, VformError> {
    let x = &(&p.coeff(g) * &q.coeff(g)) * g.entry(p.last(), q.last());
    field.to_sub(&x).ok_or_else(|| VformError::OutsideField(p.to_string(), q.to_string()))
}

/// How basis vectors are chosen.
#[derive(Clone, Debug, Default)]
pub struct BasisOptions {
    /// Base vertex (0-based); the lowest index by default.
    pub base: usize,
    /// Random vertex order and random simple paths, for independence checks.
    pub seed: Option<u64>,
}

fn adjacency(g: &GramMatrix) -> Vec<Vec<usize>> {
    let n = g.size();
    (0..n).map(|i| (0..n).filter(|&j| j != i && !g.entry(i, j).is_zero()).collect()).collect()
}

/// Lexicographically least shortest path from `base` to every reachable vertex.
fn shortest_paths(adj: &[Vec<usize>], base: usize) -> Vec<Option<Vec<usize>>> {
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; adj.len()];
    paths[base] = Some(Vec::new());
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if paths[w].is_none() {
                let mut p = paths[v].clone().unwrap();
                p.push(w);
                paths[w] = Some(p);
                queue.push_back(w);
            }
        }
    }
    paths
}

/// A shortest path from `from` to `to` (excluding `from`), lexicographically least.
pub fn shortest_path(g: &GramMatrix, from: usize, to: usize) -> Option<Vec<usize>> {
    shortest_paths(&adjacency(g), from).swap_remove(to)
}

fn random_path(adj: &[Vec<usize>], base: usize, target: usize, rng: &mut impl rand::Rng) -> Option<Vec<usize>> {
    fn go(adj: &[Vec<usize>], v: usize, t: usize, on: &mut [bool], path: &mut Vec<usize>, rng: &mut impl rand::Rng) -> bool {
        if v == t {
            return true;
        }
        let mut nb = adj[v].clone();
        nb.shuffle(rng);
        for w in nb {
            if !on[w] {
                on[w] = true;
                path.push(w);
                if go(adj, w, t, on, path, rng) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    let mut on = vec![false; adj.len()];
    on[base] = true;
    let mut path = Vec::new();
    go(adj, base, target, &mut on, &mut path, rng).then_some(path)
}

/// n + 1 Vinberg vectors whose last vertices have independent rows of G.
pub fn select_basis(g: &GramMatrix, opts: &BasisOptions) -> Result<Vec<VinbergVector>, VformError> {
    let n = g.size();
    let base = opts.base;
    if base >= n {
        return Err(VformError::BadBase(base));
    }
    let adj = adjacency(g);
    let mut cands: Vec<VinbergVector> = match opts.seed {
        None => {
            let mut c: Vec<VinbergVector> = shortest_paths(&adj, base)
                .into_iter()
                .flatten()
                .map(|path| VinbergVector { base, path })
                .collect();
            c.sort_by(|a, b| a.path.len().cmp(&b.path.len()).then_with(|| a.path.cmp(&b.path)));
            c
        }
        Some(seed) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            order
                .into_iter()
                .filter_map(|t| random_path(&adj, base, t, &mut rng).map(|path| VinbergVector { base, path }))
                .collect()
        }
    };
    let want = g.dim + 1;
    let mut kept: Vec<VinbergVector> = Vec::new();
    let mut rows: Vec<Vec<AlgebraicNumber>> = Vec::new();
    for v in cands.drain(..) {
        if kept.len() == want {
            break;
        }
        rows.push(g.matrix().rows()[v.last()].clone());
        if Matrix::from_rows(g.field(), rows.clone())?.rank() == rows.len() {
            kept.push(v);
        } else {
            rows.pop();
        }
    }
    if kept.len() < want {
        return Err(VformError::RankDeficient { found: kept.len(), expected: want });
    }
    Ok(kept)
}

/// Congruence diagonalization: returns D and S with SᵀMS = diag(D).
pub fn diagonalize(m: &Matrix) -> Result<(Vec<AlgebraicNumber>, Matrix), VformError> {
    let n = m.nrows();
    let f = m.field().clone();
    let mut a = m.clone();
    let mut s = Matrix::identity(&f, n);
    // column op: col_i += c·col_j on both a (then the matching row op) and s
    let add = |a: &mut Matrix, s: &mut Matrix, i: usize, j: usize, c: &AlgebraicNumber| {
        for r in 0..n {
            let x = a.get(r, i) + &(c * a.get(r, j));
            a.set(r, i, x);
            let y = s.get(r, i) + &(c * s.get(r, j));
            s.set(r, i, y);
        }
        for col in 0..n {
            let x = a.get(i, col) + &(c * a.get(j, col));
            a.set(i, col, x);
        }
    };
    for k in 0..n {
        if a.get(k, k).is_zero() {
            let j = (k + 1..n).find(|&j| !a.get(k, j).is_zero()).ok_or(VformError::Singular)?;
            let two = AlgebraicNumber::from_int(2);
            let one = AlgebraicNumber::one_in(&f);
            // new pivot a_kk + 2c a_kj + c² a_jj with c = ±1
            let c = if (&(&two * a.get(k, j)) + a.get(j, j)).is_zero() { -&one } else { one };
            add(&mut a, &mut s, k, j, &c);
        }
        let p = a.get(k, k).clone();
        for i in k + 1..n {
            if !a.get(k, i).is_zero() {
                let c = -&a.get(k, i).try_div(&p)?;
                add(&mut a, &mut s, i, k, &c);
            }
        }
    }
    let d = (0..n).map(|i| a.get(i, i).clone()).collect::<Vec<_>>();
    if d.iter().any(|x| x.is_zero()) {
        return Err(VformError::Singular);
    }
    Ok((d, s))
}

/// A class in K*/(K*)², held by a representative.
#[derive(Clone, Debug)]
pub struct SquareClass {
    pub rep: AlgebraicNumber,
}

impl SquareClass {
    /// Over ℚ the squarefree integer; otherwise an integral representative with
    /// the square part of the content divided out.
    pub fn of(x: &AlgebraicNumber) -> SquareClass {
        assert!(!x.is_zero());
        let c = x.coords();
        let den = c.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let ints: Vec<BigInt> = c.iter().map(|r| r.numer() * (&den / r.denom()) * &den).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        let (s, _) = crate::algnum::field::square_part(&g);
        let rep: Vec<BigRational> = ints.iter().map(|v| BigRational::new(v.clone(), &s * &s)).collect();
        SquareClass { rep: AlgebraicNumber::new(x.field(), rep) }
    }

    pub fn same(&self, o: &SquareClass) -> bool {
        crate::brauer::is_square_ratio(&self.rep, &o.rep)
    }

    pub fn is_square(&self) -> bool {
        self.rep.is_square().is_some()
    }

    /// Squarefree integer when the class is rational-valued.
    pub fn rational(&self) -> Option<BigInt> {
        let r = self.rep.as_rational()?;
        Some(crate::algnum::field::square_part(&(r.numer() * r.denom())).1)
    }
}

impl PartialEq for SquareClass {
    fn eq(&self, o: &Self) -> bool {
        self.same(o)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational() {
            Some(d) => write!(f, "{d}"),
            None => write!(f, "{}", self.rep),
        }
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn product(xs: &[AlgebraicNumber]) -> AlgebraicNumber {
    xs.iter().skip(1).fold(xs[0].clone(), |a, b| &a * b)
}

pub fn det_square_class(diag: &[AlgebraicNumber]) -> SquareClass {
    SquareClass::of(&product(diag))
}

/// δ = (−1)^{n(n+1)/2} det q for a form of dimension n + 1.
pub fn discriminant(diag: &[AlgebraicNumber], n: usize) -> SquareClass {
    let d = product(diag);
    let d = if (n * (n + 1) / 2) % 2 == 1 { -&d } else { d };
    SquareClass::of(&d)
}

/// The Vinberg form of Γ in a chosen basis.
#[derive(Clone, Debug, Serialize)]
pub struct VinbergForm {
    #[serde(skip)]
    pub field: Subfield,
    pub basis: Vec<VinbergVector>,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Matrix,
    #[serde(serialize_with = "ser_list")]
    pub diagonal: Vec<AlgebraicNumber>,
    #[serde(serialize_with = "ser_matrix")]
    pub transcript: Matrix,
    pub det_class: SquareClass,
    pub discriminant: SquareClass,
    /// (positive, negative) entries under the designated embedding.
    pub signature: (usize, usize),
}

fn ser_list<S: serde::Serializer>(xs: &[AlgebraicNumber], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

impl VinbergForm {
    /// Re-check SᵀMS = D exactly.
    pub fn verify(&self) -> bool {
        let d = self.transcript.transpose().mul(&self.matrix).mul(&self.transcript);
        let n = d.nrows();
        (0..n).all(|i| (0..n).all(|j| if i == j { d.get(i, i) == &self.diagonal[i] } else { d.get(i, j).is_zero() }))
    }

    pub fn base_field(&self) -> &Field {
        self.field.field()
    }
}

pub fn vinberg_form(g: &GramMatrix, field: &Subfield, opts: &BasisOptions) -> Result<VinbergForm, VformError> {
    let basis = select_basis(g, opts)?;
    let m = basis.len();
    let mut rows: Vec<Vec<AlgebraicNumber>> = vec![Vec::with_capacity(m); m];
    for i in 0..m {
        for j in 0..m {
            let x = if j < i { rows[j][i].clone() } else { inner_product(g, field, &basis[i], &basis[j])? };
            rows[i].push(x);
        }
    }
    let matrix = Matrix::from_rows(field.field(), rows)?;
    let (diagonal, transcript) = diagonalize(&matrix)?;
    let mut signature = (0, 0);
    for x in &diagonal {
        if field.to_parent(x).sign() > 0 {
            signature.0 += 1;
        } else {
            signature.1 += 1;
        }
    }
    let det_class = det_square_class(&diagonal);
    let discriminant = discriminant(&diagonal, g.dim);
    Ok(VinbergForm { field: field.clone(), basis, matrix, diagonal, transcript, det_class, discriminant, signature })
}
