//! Dense univariate polynomials over ℚ and ℤ, Sturm sequences and real root isolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial with rational coefficients, ascending order, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    c: Vec<BigRational>,
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        QPoly::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        QPoly { c: vec![] }
    }

    pub fn one() -> Self {
        QPoly { c: vec![BigRational::one()] }
    }

    pub fn x() -> Self {
        QPoly::from_i64(&[0, 1])
    }

    pub fn constant(a: BigRational) -> Self {
        QPoly::new(vec![a])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &BigRational) -> QPoly {
        QPoly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut r = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        QPoly::new(r)
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dl = d.lc();
        let dd = d.degree();
        let mut quo = vec![BigRational::zero(); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let f = &r[i + dd] / &dl;
            if f.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[i + j] -= &f * dc;
            }
            quo[i] = f;
        }
        r.truncate(dd);
        (QPoly::new(quo), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        self.scale(&(BigRational::one() / l))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Sign of p(x); avoids building the full rational when possible is not attempted.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sgn(&self.eval(x))
    }

    /// p(x) ↦ p(x + a).
    pub fn shift(&self, a: &BigRational) -> QPoly {
        let mut r = QPoly::zero();
        let lin = QPoly::new(vec![a.clone(), BigRational::one()]);
        for c in self.c.iter().rev() {
            r = r.mul(&lin).add(&QPoly::constant(c.clone()));
        }
        r
    }

    pub fn pow(&self, e: usize) -> QPoly {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = primitive_normalize(&r);
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Largest power of (t - 1) dividing the polynomial, and the quotient.
    pub fn strip_root(&self, r: &BigRational) -> (usize, QPoly) {
        let lin = QPoly::new(vec![-r.clone(), BigRational::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.divrem(&lin).0;
            k += 1;
        }
        (k, p)
    }

    /// Primitive integer polynomial with positive leading coefficient proportional to self.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let mut v: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| a.numer() * (&den / a.denom()))
            .collect();
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() {
            for x in v.iter_mut() {
                *x = &*x / &g;
            }
        }
        if v.last().is_some_and(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        v
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.c.iter().all(|a| a.is_integer())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(|a| a.to_string()).collect()
    }
}

pub fn sgn(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Divide by a positive rational so that the coefficients become coprime integers,
/// keeping the sign of every coefficient.
pub fn primitive_normalize(p: &QPoly) -> QPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut v = p.primitive_int();
    if sgn(&p.lc()) != sgn(&BigRational::from_integer(v.last().unwrap().clone())) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    QPoly::from_ints(&v)
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let abs = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{}", abs)?;
                } else {
                    write!(f, "({})", abs)?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", i)?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence of a polynomial (no squarefree assumption needed for counting
/// distinct real roots).
pub fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![primitive_normalize(p), primitive_normalize(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(primitive_normalize(&r.neg()));
    }
    seq
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

pub fn variations_at(seq: &[QPoly], x: &BigRational) -> usize {
    variations(seq.iter().map(|p| p.sign_at(x)))
}

pub fn variations_at_pos_inf(seq: &[QPoly]) -> usize {
    variations(seq.iter().map(|p| sgn(&p.lc())))
}

pub fn variations_at_neg_inf(seq: &[QPoly]) -> usize {
    variations(seq.iter().map(|p| {
        let s = sgn(&p.lc());
        if p.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots in (a, b].
pub fn count_roots(seq: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    variations_at(seq, a) - variations_at(seq, b)
}

pub fn count_real_roots(p: &QPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let s = sturm_sequence(p);
    variations_at_neg_inf(&s) - variations_at_pos_inf(&s)
}

/// Power of two strictly bounding the absolute value of every root.
pub fn root_bound(p: &QPoly) -> BigRational {
    let l = p.lc().abs();
    let mut m = BigRational::zero();
    for a in &p.c[..p.c.len() - 1] {
        let r = a.abs() / &l;
        if r > m {
            m = r;
        }
    }
    let b = m + BigRational::one();
    let mut t = BigRational::one();
    while t <= b {
        t *= q(2);
    }
    t
}

/// Isolating interval of a single real root: either exact (lo == hi) or
/// p(lo)·p(hi) < 0 with exactly one root in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Halve the interval using the sign of p at the midpoint.
    pub fn bisect(&mut self, p: &QPoly) {
        if self.is_exact() {
            return;
        }
        let m = (&self.lo + &self.hi) / q(2);
        let sm = p.sign_at(&m);
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        if sm == p.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    pub fn refine_to(&mut self, p: &QPoly, width: &BigRational) {
        while self.width() > *width {
            self.bisect(p);
        }
    }
}

/// All real roots of a squarefree polynomial, ascending.
pub fn isolate_real_roots(p: &QPoly) -> Vec<RootInterval> {
    if p.degree() == 0 {
        return vec![];
    }
    if p.degree() == 1 {
        let r = -p.coeff(0) / p.coeff(1);
        return vec![RootInterval { lo: r.clone(), hi: r }];
    }
    let seq = sturm_sequence(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, c)) = stack.pop() {
        let n = count_roots(&seq, &a, &c);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(normalize_isolating(p, &seq, a, c));
            continue;
        }
        let m = (&a + &c) / q(2);
        stack.push((a, m.clone()));
        stack.push((m, c));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Turn (a, b] containing exactly one root into a sign-change interval.
fn normalize_isolating(p: &QPoly, seq: &[QPoly], mut a: BigRational, mut b: BigRational) -> RootInterval {
    loop {
        if p.sign_at(&b) == 0 {
            return RootInterval { lo: b.clone(), hi: b };
        }
        if p.sign_at(&a) != 0 {
            return RootInterval { lo: a, hi: b };
        }
        let m = (&a + &b) / q(2);
        if count_roots(seq, &a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
}

/// Number of real roots in the open interval (a, b) for a squarefree polynomial.
pub fn count_roots_open(seq: &[QPoly], p: &QPoly, a: &BigRational, b: &BigRational) -> usize {
    let n = count_roots(seq, a, b);
    if p.sign_at(b) == 0 {
        n - 1
    } else {
        n
    }
}

/// Power sums s_k = Σ roots^k for k = 0..n, by Newton's identities (monic input).
pub fn power_sums(p: &QPoly, n: usize) -> Vec<BigRational> {
    let p = p.monic();
    let d = p.degree();
    let mut s = vec![BigRational::zero(); n + 1];
    s[0] = q(d as i64);
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=(k - 1).min(d) {
            acc += p.coeff(d - i) * &s[k - i];
        }
        if k <= d {
            acc += p.coeff(d - k) * q(k as i64);
        }
        s[k] = -acc;
    }
    s
}

/// Monic polynomial from its power sums s_1..s_n (Newton's identities).
pub fn from_power_sums(s: &[BigRational], n: usize) -> QPoly {
    // c_0 = 1, c_k = -(s_k + c_1 s_{k-1} + ... + c_{k-1} s_1)/k ; poly = Σ c_k t^{n-k}
    let mut c = vec![BigRational::one()];
    for k in 1..=n {
        let mut acc = s[k].clone();
        for i in 1..k {
            acc += &c[i] * &s[k - i];
        }
        c.push(-acc / q(k as i64));
    }
    c.reverse();
    QPoly::new(c)
}
