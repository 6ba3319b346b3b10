//! Quaternion classes as ramification sets, Hasse and Witt invariants of diagonal
//! forms, and the similarity test for Vinberg forms.
//!
//! Local computations are supported over ℚ and real quadratic fields in the
//! canonical presentation t² − D.

pub mod local;

pub use local::{hilbert_q, LocalField, Place, PrimeIdeal, PrimeKind, QElt};

use crate::algnum::{embeddings, AlgError, AlgebraicNumber, Field};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BrauerError {
    #[error("forms live over different fields")]
    FieldMismatch,
    #[error("forms have dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero entry in a diagonal form")]
    ZeroEntry,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A 2-torsion Brauer class over ℚ or ℚ(√D), stored as its ramification set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerClass {
    /// D of the base field, 1 for ℚ.
    #[serde(serialize_with = "crate::ser_display")]
    pub d: BigInt,
    pub ram: BTreeSet<Place>,
}

impl BrauerClass {
    pub fn trivial(k: &LocalField) -> BrauerClass {
        BrauerClass { d: k.d.clone(), ram: BTreeSet::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.ram.is_empty()
    }

    /// Tensor product of classes.
    pub fn add(&self, o: &BrauerClass) -> BrauerClass {
        assert_eq!(self.d, o.d);
        BrauerClass { d: self.d.clone(), ram: self.ram.symmetric_difference(&o.ram).cloned().collect() }
    }

    pub fn finite_places(&self) -> Vec<&PrimeIdeal> {
        self.ram.iter().filter_map(|p| if let Place::Finite(q) = p { Some(q) } else { None }).collect()
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ram.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.ram.iter().map(|p| p.to_string()).collect();
        write!(f, "ramified at {}", parts.join(", "))
    }
}

/// Class of the quaternion algebra (a, b).
pub fn quaternion_class(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<BrauerClass, BrauerError> {
    let (k, ab) = local_entries(&[a.clone(), b.clone()])?;
    let (x, y) = (ab[0].clone(), ab[1].clone());
    Ok(BrauerClass { d: k.d.clone(), ram: k.symbol_ramification(&x, &y) })
}

fn local_entries(diag: &[AlgebraicNumber]) -> Result<(LocalField, Vec<QElt>), BrauerError> {
    // rational-valued entries still live in their ambient field, so fold the generators in too
    let mut all = diag.to_vec();
    all.extend(diag.iter().map(|x| AlgebraicNumber::generator(x.field())));
    let (_, mut xs) = AlgebraicNumber::common_all(&all)?;
    let gen = xs.split_off(diag.len());
    if xs.iter().any(|x| x.is_zero()) {
        return Err(BrauerError::ZeroEntry);
    }
    let k = match gen.first() {
        Some(g) => LocalField::of(g)?,
        None => LocalField::rationals(),
    };
    let es = xs.iter().map(|x| k.elt(x)).collect();
    Ok((k, es))
}

/// s(q) = Σ_{i<j} (a_i, a_j).
pub fn hasse_invariant(diag: &[AlgebraicNumber]) -> Result<BrauerClass, BrauerError> {
    let (k, es) = local_entries(diag)?;
    let mut acc = BrauerClass::trivial(&k);
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            let c = BrauerClass { d: k.d.clone(), ram: k.symbol_ramification(&es[i], &es[j]) };
            acc = acc.add(&c);
        }
    }
    Ok(acc)
}

/// c(q) from s(q) by dimension mod 8 (d = det q):
/// 1,2: s; 3,4: s + (−1,−d); 5,6: s + (−1,−1); 7,8: s + (−1,d).
pub fn witt_invariant(diag: &[AlgebraicNumber]) -> Result<BrauerClass, BrauerError> {
    let s = hasse_invariant(diag)?;
    if diag.is_empty() {
        return Ok(s);
    }
    let det = diag.iter().skip(1).fold(diag[0].clone(), |a, b| &a * b);
    let minus_one = AlgebraicNumber::from_int(-1);
    let corr = match diag.len() % 8 {
        1 | 2 => return Ok(s),
        3 | 4 => quaternion_class(&minus_one, &-&det)?,
        5 | 6 => quaternion_class(&minus_one, &minus_one)?,
        _ => quaternion_class(&minus_one, &det)?,
    };
    let corr = BrauerClass { d: s.d.clone(), ..corr };
    Ok(s.add(&corr))
}

pub fn is_square_ratio(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    a.try_div(b).ok().and_then(|r| r.is_square()).is_some()
}

/// Number of negative entries under every real embedding of `field`.
pub fn negative_counts(field: &Field, diag: &[AlgebraicNumber]) -> Vec<usize> {
    embeddings(field).iter().map(|e| diag.iter().filter(|x| e.sign(x) < 0).count()).collect()
}

/// Ramification of B ⊗ ℚ(√δ) for B over ℚ and δ a squarefree integer ≠ 1: places of
/// ℚ(√δ) above ramified places of B with local degree 1.
pub fn extend_to_quadratic(b: &BrauerClass, delta: &BigInt) -> BrauerClass {
    assert!(b.d.is_one());
    let l = LocalField::quadratic(delta.clone());
    let disc = l.discriminant();
    let mut ram = BTreeSet::new();
    for v in &b.ram {
        match v {
            Place::Real { .. } => {
                if delta.is_positive() {
                    ram.extend(l.real_places());
                }
            }
            Place::Finite(pr) => {
                if local::kronecker(&disc, &pr.p) == 1 {
                    ram.extend(l.primes_above(&pr.p).into_iter().map(Place::Finite));
                }
            }
        }
    }
    BrauerClass { d: delta.clone(), ram }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NotSimilarReason {
    /// det q₁ ≢ det q₂ (odd n); also used when the discriminants differ.
    DetClass,
    /// Hasse invariants disagree after the similarity-factor correction.
    Hasse,
    /// Signatures disagree at some real place.
    Signature,
    /// Witt classes disagree (over K or over K(√δ)).
    Witt,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SimilarityVerdict {
    Similar { detail: String },
    NotSimilar { reason: NotSimilarReason, detail: String },
    Inconclusive { detail: String },
    Unsupported { detail: String },
}

/// Inputs for one side of a similarity comparison.
pub struct FormData<'a> {
    pub field: &'a Field,
    pub diagonal: &'a [AlgebraicNumber],
    pub quasi_arithmetic: bool,
}

/// Decide similarity of two Vinberg forms of dimension n + 1 over the same field.
pub fn similarity_decision(q1: &FormData, q2: &FormData, n: usize) -> Result<SimilarityVerdict, BrauerError> {
    let (d1, d2) = (q1.diagonal, q2.diagonal);
    if d1.len() != d2.len() || d1.len() != n + 1 {
        return Err(BrauerError::DimensionMismatch(d1.len(), d2.len()));
    }
    let field = q1.field;
    if field.degree() != q2.field.degree() || !crate::algnum::fields_equal(field, q2.field) {
        return Err(BrauerError::FieldMismatch);
    }
    let to_k = |xs: &[AlgebraicNumber]| -> Result<Vec<AlgebraicNumber>, AlgError> {
        xs.iter().map(|x| x.coerce_to(field)).collect()
    };
    let (d1, d2) = (to_k(d1)?, to_k(d2)?);
    let det = |xs: &[AlgebraicNumber]| xs.iter().skip(1).fold(xs[0].clone(), |a, b| &a * b);
    let (det1, det2) = (det(&d1), det(&d2));
    let local_ok = LocalField::of(&det1).is_ok();

    if n % 2 == 0 {
        let lambda = det1.try_div(&det2)?;
        let scaled: Vec<AlgebraicNumber> = d2.iter().map(|x| x * &lambda).collect();
        let s1 = negative_counts(field, &d1);
        let s2 = negative_counts(field, &scaled);
        if s1 != s2 {
            return Ok(SimilarityVerdict::NotSimilar {
                reason: NotSimilarReason::Signature,
                detail: format!("negative counts per real embedding {s1:?} vs {s2:?} with λ = {lambda}"),
            });
        }
        if !local_ok {
            return Ok(SimilarityVerdict::Unsupported {
                detail: format!("Hasse invariants over {} are not implemented", field.describe()),
            });
        }
        let h1 = hasse_invariant(&d1)?;
        let mut h2 = hasse_invariant(&d2)?;
        if n % 4 == 2 {
            h2 = h2.add(&quaternion_class(&lambda, &AlgebraicNumber::from_int(-1))?);
        }
        return Ok(if h1 == h2 {
            SimilarityVerdict::Similar { detail: format!("λ = {lambda}; Hasse classes agree: {h1}") }
        } else {
            SimilarityVerdict::NotSimilar {
                reason: NotSimilarReason::Hasse,
                detail: format!("Hasse classes differ: {h1} vs {h2}"),
            }
        });
    }

    if !is_square_ratio(&det1, &det2) {
        return Ok(SimilarityVerdict::NotSimilar {
            reason: NotSimilarReason::DetClass,
            detail: format!("det ratio {} is not a square", det1.try_div(&det2)?),
        });
    }
    if !(q1.quasi_arithmetic && q2.quasi_arithmetic) {
        return Ok(SimilarityVerdict::Inconclusive {
            detail: "equal determinant classes; no complete invariant for these forms".into(),
        });
    }
    if !local_ok {
        return Ok(SimilarityVerdict::Unsupported {
            detail: format!("Witt classes over {} are not implemented", field.describe()),
        });
    }
    let sign = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
    let delta = det1.scale(&num_rational::BigRational::from_integer(BigInt::from(sign)));
    let c1 = witt_invariant(&d1)?;
    let c2 = witt_invariant(&d2)?;
    if delta.is_square().is_some() {
        return Ok(if c1 == c2 {
            SimilarityVerdict::Similar { detail: format!("δ is a square; Witt classes agree: {c1}") }
        } else {
            SimilarityVerdict::NotSimilar { reason: NotSimilarReason::Witt, detail: format!("Witt classes differ: {c1} vs {c2}") }
        });
    }
    let Some(dq) = delta.as_rational().filter(|_| field.is_rational()) else {
        return Ok(SimilarityVerdict::Unsupported {
            detail: format!("δ = {delta} is not a square and the field is not Q"),
        });
    };
    let (_, sf) = crate::algnum::field::square_part(&(dq.numer() * dq.denom()));
    let e1 = extend_to_quadratic(&c1, &sf);
    let e2 = extend_to_quadratic(&c2, &sf);
    Ok(if e1 == e2 {
        SimilarityVerdict::Similar { detail: format!("Witt classes over Q(sqrt({sf})) agree: {e1}") }
    } else {
        SimilarityVerdict::NotSimilar {
            reason: NotSimilarReason::Witt,
            detail: format!("Witt classes over Q(sqrt({sf})) differ: {e1} vs {e2}"),
        }
    })
}
