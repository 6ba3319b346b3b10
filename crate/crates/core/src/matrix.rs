//! Dense matrices and polynomials with entries in a single number field.

use crate::algnum::{AlgError, AlgebraicNumber, Field};
use num_rational::BigRational;
use std::fmt;

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: Vec<Vec<AlgebraicNumber>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

impl PartialEq for Matrix {
    fn eq(&self, o: &Matrix) -> bool {
        self.rows.len() == o.rows.len()
            && self.rows.iter().zip(&o.rows).all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y))
    }
}

impl Matrix {
    /// Entries are coerced into `field`.
    pub fn from_rows(field: &Field, rows: Vec<Vec<AlgebraicNumber>>) -> Result<Matrix, AlgError> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.coerce_to(field)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { field: field.clone(), rows })
    }

    /// Rational matrix inside `field`.
    pub fn from_rationals(field: &Field, rows: &[Vec<BigRational>]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|x| AlgebraicNumber::constant(field, x.clone())).collect())
            .collect();
        Matrix { field: field.clone(), rows }
    }

    pub fn zeros(field: &Field, r: usize, c: usize) -> Matrix {
        Matrix { field: field.clone(), rows: vec![vec![AlgebraicNumber::zero_in(field); c]; r] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = AlgebraicNumber::one_in(field);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraicNumber {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: AlgebraicNumber) {
        self.rows[i][j] = x.coerce_to(&self.field).expect("entry lies in the matrix field");
    }

    pub fn rows(&self) -> &[Vec<AlgebraicNumber>] {
        &self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.nrows();
        n == self.ncols() && (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn transpose(&self) -> Matrix {
        let (r, c) = (self.nrows(), self.ncols());
        let rows = (0..c).map(|j| (0..r).map(|i| self.rows[i][j].clone()).collect()).collect();
        Matrix { field: self.field.clone(), rows }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), o.nrows());
        let mut out = Self::zeros(&self.field, self.nrows(), o.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.ncols() {
                    if o.rows[k][j].is_zero() {
                        continue;
                    }
                    out.rows[i][j] = &out.rows[i][j] + &(a * &o.rows[k][j]);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let rows = self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Matrix { field: self.field.clone(), rows }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let rows = self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
        Matrix { field: self.field.clone(), rows }
    }

    pub fn scale(&self, s: &AlgebraicNumber) -> Matrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        Matrix { field: self.field.clone(), rows }
    }

    pub fn trace(&self) -> AlgebraicNumber {
        (0..self.nrows()).fold(AlgebraicNumber::zero_in(&self.field), |acc, i| &acc + &self.rows[i][i])
    }

    /// Simultaneous permutation of rows and columns: entry (i, j) of the result
    /// is entry (perm[i], perm[j]) of self.
    pub fn permuted(&self, perm: &[usize]) -> Matrix {
        let rows = perm.iter().map(|&i| perm.iter().map(|&j| self.rows[i][j].clone()).collect()).collect();
        Matrix { field: self.field.clone(), rows }
    }

    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        self.permuted(idx)
    }

    /// det(tI − M) by the Faddeev–LeVerrier recurrence (division only by integers).
    pub fn char_poly(&self) -> FPoly {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        let f = &self.field;
        let mut c = vec![AlgebraicNumber::zero_in(f); n + 1];
        c[n] = AlgebraicNumber::one_in(f);
        let mut m = Self::zeros(f, n, n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·I
            let mut mk = self.mul(&m);
            for i in 0..n {
                mk.rows[i][i] = &mk.rows[i][i] + &c[n - k + 1];
            }
            let am = self.mul(&mk);
            c[n - k] = am.trace().scale(&BigRational::new((-1).into(), (k as i64).into()));
            m = mk;
        }
        FPoly::new(f, c)
    }

    /// Row echelon form by Gaussian elimination; returns (rank, det when square).
    fn eliminate(&self) -> (usize, AlgebraicNumber) {
        let mut a = self.rows.clone();
        let (r, c) = (self.nrows(), self.ncols());
        let mut det = AlgebraicNumber::one_in(&self.field);
        let mut rank = 0;
        for col in 0..c {
            let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else {
                det = AlgebraicNumber::zero_in(&self.field);
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                det = -det;
            }
            let piv = a[rank][col].clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("nonzero pivot");
            for i in rank + 1..r {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = &a[i][col] * &inv;
                for j in col..c {
                    let t = &f * &a[rank][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
            rank += 1;
        }
        if rank < r {
            det = AlgebraicNumber::zero_in(&self.field);
        }
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> AlgebraicNumber {
        assert_eq!(self.nrows(), self.ncols());
        if self.nrows() == 0 {
            return AlgebraicNumber::one_in(&self.field);
        }
        self.eliminate().1
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, AlgError> {
        let n = self.nrows();
        let mut a = self.rows.clone();
        let mut b = Self::identity(&self.field, n).rows;
        for col in 0..n {
            let p = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(AlgError::ZeroDivision)?;
            a.swap(p, col);
            b.swap(p, col);
            let inv = a[col][col].inverse()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &inv;
                b[col][j] = &b[col][j] * &inv;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[i][j] = &a[i][j] - &t;
                    let t = &f * &b[col][j];
                    b[i][j] = &b[i][j] - &t;
                }
            }
        }
        Ok(Matrix { field: self.field.clone(), rows: b })
    }

    /// Re-express every entry in another field containing them.
    pub fn coerce_to(&self, f: &Field) -> Result<Matrix, AlgError> {
        Self::from_rows(f, self.rows.clone())
    }
}

/// Polynomial with coefficients in one number field, ascending order.
#[derive(Clone)]
pub struct FPoly {
    field: Field,
    coeffs: Vec<AlgebraicNumber>,
}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coeffs.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

impl PartialEq for FPoly {
    fn eq(&self, o: &FPoly) -> bool {
        self.coeffs.len() == o.coeffs.len() && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a == b)
    }
}

impl FPoly {
    pub fn new(field: &Field, coeffs: Vec<AlgebraicNumber>) -> FPoly {
        let mut c: Vec<AlgebraicNumber> =
            coeffs.into_iter().map(|x| x.coerce_to(field).expect("coefficient lies in the field")).collect();
        while c.len() > 1 && c.last().unwrap().is_zero() {
            c.pop();
        }
        if c.is_empty() {
            c.push(AlgebraicNumber::zero_in(field));
        }
        FPoly { field: field.clone(), coeffs: c }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[AlgebraicNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> AlgebraicNumber {
        self.coeffs.get(i).cloned().unwrap_or_else(|| AlgebraicNumber::zero_in(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        let x = x.coerce_to(&self.field).expect("point lies in the field");
        let mut acc = AlgebraicNumber::zero_in(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> FPoly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, x)| x.scale(&BigRational::from_integer((i as i64).into()))).collect();
        FPoly::new(&self.field, c)
    }

    pub fn divrem(&self, d: &FPoly) -> (FPoly, FPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let f = &self.field;
        if self.degree() < d.degree() || self.is_zero() {
            return (FPoly::new(f, vec![]), self.clone());
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let inv = d.coeffs[dd].inverse().expect("nonzero leading coefficient");
        let mut quo = vec![AlgebraicNumber::zero_in(f); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                r[i + j] = &r[i + j] - &t;
            }
            quo[i] = c;
        }
        r.truncate(dd.max(1));
        (FPoly::new(f, quo), FPoly::new(f, r))
    }

    /// Number of leading-zero coefficients, i.e. the multiplicity of the root 0.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide out (t − a) as often as it divides exactly; returns (multiplicity, cofactor).
    pub fn strip_root(&self, a: &AlgebraicNumber) -> (usize, FPoly) {
        let lin = FPoly::new(&self.field, vec![-a, AlgebraicNumber::one_in(&self.field)]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.degree() > 0 {
            let (qu, r) = p.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            p = qu;
            k += 1;
        }
        (k, p)
    }

    /// Sign changes in the coefficient sequence under embedding `root`.
    pub fn sign_variations(&self, root: usize) -> usize {
        let signs: Vec<i32> = self.coeffs.iter().map(|c| c.sign_under(root)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Real roots in (a, ∞) under embedding `root`, counted without multiplicity.
    /// Requires p(a) ≠ 0.
    pub fn count_roots_above(&self, a: &BigRational, root: usize) -> usize {
        let f = &self.field;
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > 0 {
            let n = seq.len();
            let r = seq[n - 2].divrem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            let neg = FPoly::new(f, r.coeffs.iter().map(|c| -c).collect());
            seq.push(neg);
        }
        let av = AlgebraicNumber::constant(f, a.clone());
        let at_a: Vec<i32> = seq.iter().map(|p| p.eval(&av).sign_under(root)).collect();
        let at_inf: Vec<i32> = seq.iter().map(|p| p.coeffs.last().unwrap().sign_under(root)).collect();
        variations(&at_a) - variations(&at_inf)
    }

    pub fn mul(&self, o: &FPoly) -> FPoly {
        let f = &self.field;
        let mut out = vec![AlgebraicNumber::zero_in(f); self.degree() + o.degree() + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        FPoly::new(f, out)
    }

    pub fn as_rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    pub fn coerce_to(&self, f: &Field) -> Result<FPoly, AlgError> {
        let c = self.coeffs.iter().map(|x| x.coerce_to(f)).collect::<Result<Vec<_>, _>>()?;
        Ok(FPoly::new(f, c))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_expr()).collect()
    }
}

fn variations(s: &[i32]) -> usize {
    let nz: Vec<i32> = s.iter().copied().filter(|&x| x != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia (positive, negative, zero) of a symmetric matrix under the real
/// embedding `root` of its field. The characteristic polynomial of a symmetric
/// matrix is real-rooted, so Descartes' rule is exact.
pub fn signature(m: &Matrix, root: usize) -> (usize, usize, usize) {
    let chi = m.char_poly();
    signature_of_char_poly(&chi, root)
}

pub fn signature_of_char_poly(chi: &FPoly, root: usize) -> (usize, usize, usize) {
    let n = chi.degree();
    let z = chi.zero_root_multiplicity();
    let p = chi.sign_variations(root);
    (p, n - p - z, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::{adjoin_sqrt, rationals};
    use crate::algnum::poly::q;

    fn qm(rows: &[&[i64]]) -> Matrix {
        let r: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Matrix::from_rationals(&rationals(), &r)
    }

    #[test]
    fn char_poly_small() {
        let m = qm(&[&[2, 1], &[1, 2]]);
        let chi = m.char_poly();
        let c: Vec<BigRational> = chi.as_rational_coeffs().unwrap();
        assert_eq!(c, vec![q(3), q(-4), q(1)]);
        assert_eq!(m.det(), AlgebraicNumber::from_int(3));
    }

    #[test]
    fn inertia() {
        assert_eq!(signature(&qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 0), (3, 0, 0));
        assert_eq!(signature(&qm(&[&[1, 0], &[0, -1]]), 0), (1, 1, 0));
        assert_eq!(signature(&qm(&[&[1, 1], &[1, 1]]), 0), (1, 0, 1));
    }

    #[test]
    fn inverse_and_rank() {
        let m = qm(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&rationals(), 3));
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn sturm_over_quadratic_field() {
        // (t − √2)(t − 3)(t + 1) over ℚ(√2): two roots above 1 under √2 > 0, one under √2 < 0
        let (f, s2) = adjoin_sqrt(&AlgebraicNumber::from_int(2), true).unwrap();
        let one = AlgebraicNumber::one_in(&f);
        let lin = |a: AlgebraicNumber| FPoly::new(&f, vec![-a, one.clone()]);
        let p = lin(s2.clone());
        let p = p.mul(&lin(AlgebraicNumber::from_int(3))).mul(&lin(AlgebraicNumber::from_int(-1)));
        let id = f.designated();
        let other = 1 - id;
        assert_eq!(p.count_roots_above(&q(1), id), 2);
        assert_eq!(p.count_roots_above(&q(1), other), 1);
        let (k, rest) = p.strip_root(&AlgebraicNumber::from_int(3));
        assert_eq!((k, rest.degree()), (1, 2));
    }
}
