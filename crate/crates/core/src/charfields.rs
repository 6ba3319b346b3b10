//! Gram field K(G) and Coxeter field K(C).
//!
//! The Tits representation acts on the rank-N module with basis v_1, …, v_N by
//! ρ(s_i) v_j = v_j − 2 G_ij v_i. For a Coxeter element c = s_{o_1} ⋯ s_{o_N} the
//! transformation C_T = ρ(s_{o_1}) ⋯ ρ(s_{o_N}) fixes the radical of G, so
//! χ_{C_T} = (t − 1)^{N−n−1} χ_C.

use crate::algnum::{AlgError, AlgebraicNumber, Subfield};
use crate::coxgraph::GramMatrix;
use crate::matrix::{FPoly, Matrix};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharError {
    #[error("order must be a permutation of 1..{0}")]
    BadOrder(usize),
    #[error("(t - 1)^{0} does not divide the characteristic polynomial of C_T")]
    NotDivisible(usize),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A characteristic polynomial and the field of its coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct CharPolyRecord {
    /// Coefficients a_0, …, a_N.
    #[serde(serialize_with = "ser_poly")]
    pub poly: FPoly,
    #[serde(serialize_with = "ser_field")]
    pub field: Subfield,
}

fn ser_poly<S: serde::Serializer>(p: &FPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.to_strings())
}

fn ser_field<S: serde::Serializer>(f: &Subfield, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.field().describe())
}

fn record(g: &GramMatrix, poly: FPoly) -> CharPolyRecord {
    let field = crate::algnum::subfield_generated(g.field(), poly.coeffs());
    CharPolyRecord { poly, field }
}

/// χ_G and K(G).
pub fn char_poly_gram(g: &GramMatrix) -> CharPolyRecord {
    record(g, g.char_poly().clone())
}

/// ρ(s_1), …, ρ(s_N) as matrices on coordinate columns.
pub fn tits_matrices(g: &GramMatrix) -> Vec<Matrix> {
    let n = g.size();
    let f = g.field();
    let two = BigRational::from_integer(2.into());
    (0..n)
        .map(|i| {
            let mut m = Matrix::identity(f, n);
            for j in 0..n {
                let x = &m.get(i, j).clone() - &g.entry(i, j).scale(&two);
                m.set(i, j, x);
            }
            m
        })
        .collect()
}

fn check_order(n: usize, order: &[usize]) -> Result<(), CharError> {
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(CharError::BadOrder(n));
    }
    Ok(())
}

/// C_T = ρ(s_{o_1}) ⋯ ρ(s_{o_N}) for a 0-based order.
pub fn coxeter_transformation(g: &GramMatrix, order: &[usize]) -> Result<Matrix, CharError> {
    check_order(g.size(), order)?;
    let rho = tits_matrices(g);
    let mut c = Matrix::identity(g.field(), g.size());
    for &i in order {
        c = c.mul(&rho[i]);
    }
    Ok(c)
}

/// U with 1 on the diagonal, U[o_a][o_b] = 2 G[o_a][o_b] for b > a, 0 otherwise.
pub fn u_matrix(g: &GramMatrix, order: &[usize]) -> Result<Matrix, CharError> {
    check_order(g.size(), order)?;
    let n = g.size();
    let mut u = Matrix::identity(g.field(), n);
    let two = BigRational::from_integer(2.into());
    for a in 0..n {
        for b in a + 1..n {
            u.set(order[a], order[b], g.entry(order[a], order[b]).scale(&two));
        }
    }
    Ok(u)
}

/// U + Uᵀ = 2G and −U⁻¹Uᵀ = C_T.
pub fn check_u_identity(g: &GramMatrix, order: &[usize]) -> Result<bool, CharError> {
    let u = u_matrix(g, order)?;
    let two = AlgebraicNumber::from_int(2);
    if u.add(&u.transpose()) != g.matrix().scale(&two) {
        return Ok(false);
    }
    let c = u.inverse()?.mul(&u.transpose()).scale(&AlgebraicNumber::from_int(-1));
    Ok(c == coxeter_transformation(g, order)?)
}

/// χ_C for one ordering of the generators.
#[derive(Clone, Debug, Serialize)]
pub struct CoxeterPoly {
    /// 1-based order of the factors.
    pub order: Vec<usize>,
    #[serde(serialize_with = "ser_poly")]
    pub chi_ct: FPoly,
    pub chi_c: CharPolyRecord,
    /// a_j = ±a_{n+1−j} with sign (−1)^{N−n−1}.
    pub palindromic: bool,
    /// Real eigenvalues > 1 of C_T under the designated embedding.
    pub eigenvalues_above_one: usize,
}

pub fn coxeter_char_poly(g: &GramMatrix, order: &[usize]) -> Result<CoxeterPoly, CharError> {
    let ct = coxeter_transformation(g, order)?;
    let chi_ct = ct.char_poly();
    let f = g.field();
    let k = g.size() - g.dim - 1;
    let lin = FPoly::new(f, vec![AlgebraicNumber::from_int(-1), AlgebraicNumber::from_int(1)]);
    let mut p = chi_ct.clone();
    for _ in 0..k {
        let (q, r) = p.divrem(&lin);
        if !r.is_zero() {
            return Err(CharError::NotDivisible(k));
        }
        p = q;
    }
    let m = p.degree();
    let palindromic = (0..=m).all(|j| {
        let b = p.coeff(m - j);
        p.coeff(j) == if k % 2 == 0 { b } else { -&b }
    });
    let (_, stripped) = p.strip_root(&AlgebraicNumber::one_in(f));
    let eigenvalues_above_one = stripped.count_roots_above(&BigRational::one(), f.designated());
    Ok(CoxeterPoly {
        order: order.iter().map(|i| i + 1).collect(),
        chi_ct,
        chi_c: record(g, p),
        palindromic,
        eigenvalues_above_one,
    })
}
