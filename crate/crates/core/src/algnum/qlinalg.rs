//! Incremental row echelon forms over ℚ, used for spans, dependencies and solves.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rows in echelon form with optional tracking of how each row was built
/// from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduce v against the rows; returns the residue and the combination of
    /// previously inserted vectors that was subtracted.
    pub fn reduce(&self, v: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut v = v.to_vec();
        let mut comb = vec![BigRational::zero(); self.inserted];
        for (piv, row, track) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone();
            for (a, b) in v.iter_mut().zip(row.iter()) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in comb.iter_mut().zip(track.iter()) {
                if !b.is_zero() {
                    *a += &f * b;
                }
            }
        }
        (v, comb)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Insert v; returns true if it increased the rank. Dependent vectors are
    /// still counted as inserted (their index is consumed) so that combinations
    /// refer to insertion order.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let (mut r, comb) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        for row in self.rows.iter_mut() {
            row.2.push(BigRational::zero());
        }
        let Some(piv) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &r[piv];
        for a in r.iter_mut() {
            *a *= &inv;
        }
        // track: r = v - Σ comb_j v_j, scaled by inv
        let mut track: Vec<BigRational> = comb.iter().map(|c| -c * &inv).collect();
        track.push(BigRational::zero());
        track[idx] = inv;
        // keep the rows reduced at the new pivot column
        for (_, row, tr) in self.rows.iter_mut() {
            if row[piv].is_zero() {
                continue;
            }
            let f = row[piv].clone();
            for (a, b) in row.iter_mut().zip(r.iter()) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in tr.iter_mut().zip(track.iter()) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((piv, r, track));
        true
    }

    /// Express v as a combination of inserted vectors, if it lies in their span.
    pub fn solve(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let (r, comb) = self.reduce(v);
        if r.iter().all(|x| x.is_zero()) {
            Some(comb)
        } else {
            None
        }
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut e = Echelon::new(rows[0].len());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
