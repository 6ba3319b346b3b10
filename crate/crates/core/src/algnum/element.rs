//! Elements of number fields with exact arithmetic and sign determination.

use super::field::{
    adjoin_root, compositum, lcm_den, quadratic_field, rational_sqrt, rationals, square_part, Compositum,
    Field, NumberField,
};
use super::interval::Interval;
use super::poly::{q, QPoly};
use super::qlinalg::Echelon;
use super::AlgError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Field,
    coords: Vec<BigRational>,
}

impl AlgebraicNumber {
    pub fn new(field: &Field, mut coords: Vec<BigRational>) -> Self {
        assert!(coords.len() <= field.degree(), "too many coordinates");
        coords.resize(field.degree(), BigRational::zero());
        AlgebraicNumber { field: field.clone(), coords }
    }

    pub fn rational(r: BigRational) -> Self {
        AlgebraicNumber { field: rationals(), coords: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(q(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The rational r viewed inside `field`.
    pub fn constant(field: &Field, r: BigRational) -> Self {
        let mut c = vec![BigRational::zero(); field.degree()];
        c[0] = r;
        AlgebraicNumber { field: field.clone(), coords: c }
    }

    pub fn zero_in(field: &Field) -> Self {
        Self::constant(field, BigRational::zero())
    }

    pub fn one_in(field: &Field) -> Self {
        Self::constant(field, BigRational::one())
    }

    /// The generator θ of the field.
    pub fn generator(field: &Field) -> Self {
        let mut c = vec![BigRational::zero(); field.degree()];
        if field.degree() > 1 {
            c[1] = q(1);
        }
        AlgebraicNumber { field: field.clone(), coords: c }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Re-express the element inside a field that contains it.
    pub fn coerce_to(&self, target: &Field) -> Result<AlgebraicNumber, AlgError> {
        if NumberField::same(&self.field, target) {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::constant(target, r));
        }
        let c = compositum(&self.field, target)?;
        if !NumberField::same(&c.field, target) {
            return Err(AlgError::NotContained);
        }
        Ok(self.map_into(&c.field, &c.left))
    }

    /// Image under θ ↦ img, where img lies in `target`.
    pub fn map_into(&self, target: &Field, img: &[BigRational]) -> AlgebraicNumber {
        let mut acc = vec![BigRational::zero(); target.degree()];
        for c in self.coords.iter().rev() {
            acc = target.mul_coords(&acc, img);
            acc[0] += c;
        }
        AlgebraicNumber { field: target.clone(), coords: acc }
    }

    fn lift(&self, c: &Compositum, left: bool) -> AlgebraicNumber {
        if NumberField::same(&self.field, &c.field) {
            return self.clone();
        }
        self.map_into(&c.field, if left { &c.left } else { &c.right })
    }

    /// Bring two elements into one field.
    pub fn common(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<(AlgebraicNumber, AlgebraicNumber), AlgError> {
        if NumberField::same(&a.field, &b.field) {
            return Ok((a.clone(), b.clone()));
        }
        if let Some(r) = a.as_rational() {
            return Ok((Self::constant(&b.field, r), b.clone()));
        }
        if let Some(r) = b.as_rational() {
            return Ok((a.clone(), Self::constant(&a.field, r)));
        }
        let c = compositum(&a.field, &b.field)?;
        Ok((a.lift(&c, true), b.lift(&c, false)))
    }

    /// Bring a list of elements into one field (folding composita in a
    /// label-independent order: larger fields first).
    pub fn common_all(xs: &[AlgebraicNumber]) -> Result<(Field, Vec<AlgebraicNumber>), AlgError> {
        let mut fields: Vec<Field> = Vec::new();
        for x in xs {
            if x.as_rational().is_some() {
                continue;
            }
            if !fields.iter().any(|f| NumberField::same(f, &x.field)) {
                fields.push(x.field.clone());
            }
        }
        fields.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.describe().cmp(&b.describe())));
        let mut f = rationals();
        // images of each folded field's generator in the current f
        let mut imgs: Vec<(Field, Vec<BigRational>)> = Vec::new();
        for g in &fields {
            let c = compositum(&f, g)?;
            if !NumberField::same(&c.field, &f) {
                for (_, img) in imgs.iter_mut() {
                    *img = AlgebraicNumber { field: f.clone(), coords: img.clone() }.map_into(&c.field, &c.left).coords;
                }
            }
            imgs.push((g.clone(), c.right.clone()));
            f = c.field;
        }
        for (g, img) in imgs {
            if !NumberField::same(&g, &f) {
                super::field::register_embedding(&g, &f, img);
            }
        }
        let out = xs.iter().map(|x| x.coerce_to(&f)).collect::<Result<Vec<_>, _>>()?;
        Ok((f, out))
    }

    pub fn try_add(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgError> {
        let (a, b) = Self::common(self, o)?;
        let coords = a.coords.iter().zip(b.coords.iter()).map(|(x, y)| x + y).collect();
        Ok(AlgebraicNumber { field: a.field, coords })
    }

    pub fn try_sub(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgError> {
        let (a, b) = Self::common(self, o)?;
        let coords = a.coords.iter().zip(b.coords.iter()).map(|(x, y)| x - y).collect();
        Ok(AlgebraicNumber { field: a.field, coords })
    }

    pub fn try_mul(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgError> {
        let (a, b) = Self::common(self, o)?;
        let coords = a.field.mul_coords(&a.coords, &b.coords);
        Ok(AlgebraicNumber { field: a.field, coords })
    }

    pub fn try_div(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgError> {
        let inv = o.inverse()?;
        self.try_mul(&inv)
    }

    pub fn inverse(&self) -> Result<AlgebraicNumber, AlgError> {
        let c = self.field.inverse_coords(&self.coords).ok_or(AlgError::ZeroDivision)?;
        Ok(AlgebraicNumber { field: self.field.clone(), coords: c })
    }

    pub fn scale(&self, r: &BigRational) -> AlgebraicNumber {
        AlgebraicNumber { field: self.field.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, e: u32) -> AlgebraicNumber {
        let mut r = Self::one_in(&self.field);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Exact sign under the designated embedding.
    pub fn sign(&self) -> i32 {
        self.field.sign_at(&self.coords, self.field.designated())
    }

    /// Exact sign under the embedding sending θ to real root `root`.
    pub fn sign_under(&self, root: usize) -> i32 {
        self.field.sign_at(&self.coords, root)
    }

    pub fn approx(&self, bits: u32) -> Interval {
        self.field.eval_approx(&self.coords, self.field.designated(), bits)
    }

    pub fn approx_under(&self, root: usize, bits: u32) -> Interval {
        self.field.eval_approx(&self.coords, root, bits)
    }

    pub fn to_f64(&self) -> f64 {
        let i = self.approx(60);
        i.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_value(&self, o: &AlgebraicNumber) -> std::cmp::Ordering {
        match self.try_sub(o).expect("common field").sign() {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    /// Monic minimal polynomial over ℚ.
    pub fn minimal_polynomial(&self) -> QPoly {
        let d = self.field.degree();
        let mut ech = Echelon::new(d);
        let mut p = Self::one_in(&self.field);
        let mut powers = Vec::new();
        loop {
            if !ech.insert(&p.coords) {
                let comb = ech.solve(&p.coords).unwrap();
                let m = powers.len();
                let mut c: Vec<BigRational> = comb.into_iter().take(m).map(|x| -x).collect();
                c.push(q(1));
                return QPoly::new(c);
            }
            powers.push(p.clone());
            p = &p * self;
        }
    }

    pub fn is_algebraic_integer(&self) -> bool {
        if let Some(r) = self.as_rational() {
            return r.is_integer();
        }
        self.minimal_polynomial().has_integer_coeffs()
    }

    pub fn norm(&self) -> BigRational {
        let mp = self.minimal_polynomial();
        let m = mp.degree();
        let c0 = if m % 2 == 0 { mp.coeff(0) } else { -mp.coeff(0) };
        let k = (self.field.degree() / m) as u32;
        num_traits::pow(c0, k as usize)
    }

    pub fn trace(&self) -> BigRational {
        self.field.trace_coords(&self.coords)
    }

    /// A square root inside the same field, if one exists.
    pub fn is_square(&self) -> Option<AlgebraicNumber> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(r) = self.as_rational() {
            if self.field.is_rational() || self.field.degree() % 2 == 1 {
                return rational_sqrt(&r).map(|s| Self::constant(&self.field, s));
            }
        }
        if self.sign() < 0 {
            return None;
        }
        if rational_sqrt(&self.norm()).is_none() {
            return None;
        }
        let (f, y) = adjoin_sqrt(self, true).ok()?;
        if NumberField::same(&f, &self.field) {
            Some(y)
        } else {
            None
        }
    }

    /// Display as an expression in the input grammar where possible.
    pub fn to_expr(&self) -> String {
        if let Some(r) = self.as_rational() {
            return r.to_string();
        }
        if let Some(d) = self.field.quadratic_d() {
            let a = &self.coords[0];
            let b = &self.coords[1];
            let rad = format!("sqrt({})", d);
            let bpart = if b.is_one() {
                rad
            } else if *b == -BigRational::one() {
                format!("-{}", rad)
            } else {
                format!("{}*{}", b, rad)
            };
            if a.is_zero() {
                return bpart;
            }
            if b.is_negative() {
                let bp = bpart.trim_start_matches('-').to_string();
                return format!("{} - {}", a, bp);
            }
            return format!("{} + {}", a, bpart);
        }
        let terms: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        format!("[{}] in {}", terms.join(", "), self.field.describe())
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        if NumberField::same(&self.field, &other.field) {
            return self.coords == other.coords;
        }
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&AlgebraicNumber> for &AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, o: &AlgebraicNumber) -> AlgebraicNumber {
                self.$try(o).expect("arithmetic on algebraic numbers")
            }
        }
        impl $tr<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, o: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$try(&o).expect("arithmetic on algebraic numbers")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}

type SqrtKey = (String, Vec<BigRational>, bool);

fn sqrt_cache() -> &'static Mutex<HashMap<SqrtKey, (Field, AlgebraicNumber)>> {
    static C: OnceLock<Mutex<HashMap<SqrtKey, (Field, AlgebraicNumber)>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn field_tag(f: &Field) -> String {
    format!("{}|{}", f.minpoly(), f.designated())
}

/// Adjoin a real square root of x (x > 0 under the designated embedding). Returns the
/// field and the root with the requested sign; the field is x's own field when x is
/// already a square.
pub fn adjoin_sqrt(x: &AlgebraicNumber, positive: bool) -> Result<(Field, AlgebraicNumber), AlgError> {
    if x.is_zero() {
        return Ok((x.field.clone(), x.clone()));
    }
    if x.sign() < 0 {
        return Err(AlgError::NegativeRadicand);
    }
    let sgn = if positive { q(1) } else { q(-1) };
    if let Some(r) = x.as_rational() {
        if let Some(s) = rational_sqrt(&r) {
            return Ok((x.field.clone(), AlgebraicNumber::constant(&x.field, s * sgn)));
        }
        if x.field.is_rational() {
            let n = r.numer() * r.denom();
            let (s, d) = square_part(&n);
            let f = quadratic_field(&d);
            let c = BigRational::new(s, r.denom().clone()) * sgn;
            return Ok((f.clone(), AlgebraicNumber::new(&f, vec![BigRational::zero(), c])));
        }
    }
    let key = (field_tag(&x.field), x.coords.clone(), positive);
    if let Some(v) = sqrt_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let f = x.field.clone();
    let d = f.degree();
    let norm_square = rational_sqrt(&x.norm()).is_some();
    let mut g = vec![vec![BigRational::zero(); d]; 3];
    g[0] = x.coords.iter().map(|c| -c).collect();
    g[2][0] = q(1);
    let xc = x.clone();
    let enc = move |bits: u32| -> Interval {
        let mut b = bits + 4;
        loop {
            let xi = xc.approx(b);
            if xi.lo.is_positive() {
                let s = xi.sqrt(bits + 4);
                if s.width() <= BigRational::new(BigInt::one(), BigInt::one() << bits) {
                    return if positive { s } else { s.neg() };
                }
            }
            b += b / 2 + 8;
        }
    };
    let ext = adjoin_root(&f, &g, &enc, !norm_square, d)?;
    let root = AlgebraicNumber::new(&ext.field, ext.root.clone());
    if !NumberField::same(&ext.field, &f) {
        super::field::register_embedding(&f, &ext.field, ext.theta.clone());
    }
    let out = (ext.field.clone(), root);
    sqrt_cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Clear denominators of a rational scalar multiple: returns (c, x·c²) with integral
/// coordinates, so that √(x) = √(x·c²)/c.
pub fn integral_radicand(x: &AlgebraicNumber) -> (BigInt, AlgebraicNumber) {
    let den = lcm_den(&x.coords);
    let c = BigRational::from_integer(den.clone() * den.clone());
    (den, x.scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: i64) -> AlgebraicNumber {
        adjoin_sqrt(&AlgebraicNumber::from_int(n), true).unwrap().1
    }

    #[test]
    fn golden_ratio_norm() {
        let s5 = sqrt(5);
        let a = (&AlgebraicNumber::from_int(1) + &s5).scale(&BigRational::new(1.into(), 2.into()));
        let b = (&AlgebraicNumber::from_int(-1) + &s5).scale(&BigRational::new(1.into(), 2.into()));
        assert!((&a * &b).is_one());
    }

    #[test]
    fn sqrt2_plus_sqrt2() {
        let s = sqrt(2);
        let t = &s + &s;
        assert_eq!(t.field().degree(), 2);
        assert_eq!(t.coords(), &[q(0), q(2)]);
    }

    #[test]
    fn sqrt6_in_compositum() {
        let p = &sqrt(2) * &sqrt(3);
        assert_eq!(p.field().degree(), 4);
        assert_eq!(&p * &p, AlgebraicNumber::from_int(6));
        assert_eq!(p.sign(), 1);
    }

    #[test]
    fn square_detection() {
        assert_eq!(AlgebraicNumber::from_frac(9, 4).is_square().unwrap(), AlgebraicNumber::from_frac(3, 2));
        let five = AlgebraicNumber::constant(sqrt(5).field(), q(5));
        let r = five.is_square().unwrap();
        assert_eq!(&r * &r, five);
        let two = AlgebraicNumber::constant(sqrt(5).field(), q(2));
        assert!(two.is_square().is_none());
        // (1+√5)²/4 = (3+√5)/2
        let s5 = sqrt(5);
        let x = (&AlgebraicNumber::from_int(3) + &s5).scale(&BigRational::new(1.into(), 2.into()));
        let y = x.is_square().unwrap();
        assert_eq!(&y * &y, x);
    }

    #[test]
    fn signs_and_conjugates() {
        let s5 = sqrt(5);
        let a = &AlgebraicNumber::from_int(-1) + &(&s5 + &s5);
        assert_eq!(a.sign(), 1);
        let b = &AlgebraicNumber::from_int(3) + &s5;
        let other = 1 - s5.field().designated();
        assert_eq!(b.sign_under(other), 1);
        assert_eq!(AlgebraicNumber::zero_in(s5.field()).sign(), 0);
    }

    #[test]
    fn minimal_polynomials() {
        let s2 = sqrt(2);
        let h = s2.scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(h.minimal_polynomial(), QPoly::new(vec![BigRational::new((-1).into(), 2.into()), q(0), q(1)]));
        assert_eq!(AlgebraicNumber::from_int(5).minimal_polynomial(), QPoly::from_i64(&[-5, 1]));
        assert!((&AlgebraicNumber::from_int(3) + &sqrt(5)).is_algebraic_integer());
        assert!(!AlgebraicNumber::from_frac(1, 2).is_algebraic_integer());
    }

    #[test]
    fn nested_radical_degree_four() {
        let s5 = sqrt(5);
        let x = (&AlgebraicNumber::from_int(10) + &s5.scale(&q(3))).scale(&BigRational::new(1.into(), 11.into()));
        let (f, y) = adjoin_sqrt(&x, true).unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(&y * &y, x);
        assert!(y.sign() > 0);
    }
}
