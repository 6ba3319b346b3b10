//! Local arithmetic over ℚ and real quadratic fields ℚ(√D): places, valuations,
//! residues and Hilbert symbols.

use crate::algnum::{AlgError, AlgebraicNumber};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// Distinct prime divisors of |n| (n ≠ 0), ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let m = n.abs();
    if m.is_zero() || m.is_one() {
        return Vec::new();
    }
    let u: BigUint = m.to_biguint().unwrap();
    num_prime::nt_funcs::factorize(u).into_keys().map(BigInt::from).collect()
}

/// v_p(n) for n ≠ 0.
pub fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

pub fn vp_rat(x: &BigRational, p: &BigInt) -> i64 {
    vp_int(x.numer(), p) - vp_int(x.denom(), p)
}

fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    modp(&e.x, m)
}

/// Legendre symbol (a/p) for odd prime p; 0 when p | a.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = modp(a, p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Kronecker symbol (d/2) for d ≡ 0, 1 mod 4 discriminants, and Legendre otherwise.
pub fn kronecker(d: &BigInt, p: &BigInt) -> i32 {
    if p == &BigInt::from(2) {
        if d.is_even() {
            return 0;
        }
        let r = modp(d, &BigInt::from(8)).to_u32().unwrap();
        return if r == 1 || r == 7 { 1 } else { -1 };
    }
    legendre(d, p)
}

/// A square root of a quadratic residue a modulo an odd prime p (Tonelli–Shanks).
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> BigInt {
    let a = modp(a, p);
    if a.is_zero() {
        return a;
    }
    assert_eq!(legendre(&a, p), 1);
    let one = BigInt::one();
    let mut q = p - 1u32;
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while legendre(&z, p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) / 2u32), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = &tt * &tt % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = &t * &c % p;
        r = &r * &b % p;
    }
    r
}

/// σ with σ² ≡ D mod p^k, σ ≡ s mod p, for odd p ∤ D (Newton lifting).
fn hensel_odd(d: &BigInt, s: &BigInt, p: &BigInt, k: u32) -> BigInt {
    let m = p.pow(k);
    let mut x = modp(s, &m);
    let mut prec = 1u32;
    while prec < k {
        prec = (prec * 2).min(k);
        let mk = p.pow(prec);
        let f = modp(&(&x * &x - d), &mk);
        let inv = inv_mod(&(BigInt::from(2) * &x), &mk);
        x = modp(&(&x - f * inv), &mk);
    }
    modp(&x, &m)
}

/// σ with σ² ≡ D mod 2^k and σ ≡ s mod 4, for D ≡ 1 mod 8, s ∈ {1, 3}.
fn hensel_two(d: &BigInt, s: u32, k: u32) -> BigInt {
    let mut x = BigInt::one();
    for j in 3..k + 1 {
        let mj = BigInt::one() << (j + 1);
        if !modp(&(&x * &x - d), &mj).is_zero() {
            x += BigInt::one() << (j - 1);
        }
    }
    let m = BigInt::one() << k;
    if s == 3 {
        x = -x;
    }
    modp(&x, &m)
}

/// How a rational prime sits in the base field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeKind {
    /// A prime of ℚ itself.
    Rational,
    Inert,
    Ramified,
    /// The prime of ℚ(√D) attached to the p-adic root σ of D with σ ≡ s (mod p),
    /// or σ ≡ s (mod 4) when p = 2.
    Split { s: BigInt },
}

/// A finite place: a prime ideal of the ring of integers of ℚ or ℚ(√D).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIdeal {
    pub p: BigInt,
    pub kind: PrimeKind,
    /// D of the quadratic field, or 1 over ℚ.
    pub d: BigInt,
}

impl PrimeIdeal {
    pub fn residue_degree(&self) -> u32 {
        if self.kind == PrimeKind::Inert {
            2
        } else {
            1
        }
    }

    /// Two generators in the usual notation; a single one when principal by a rational.
    pub fn generators(&self) -> String {
        let p = &self.p;
        let d = &self.d;
        match &self.kind {
            PrimeKind::Rational | PrimeKind::Inert => format!("({p})"),
            PrimeKind::Ramified => {
                if p == &BigInt::from(2) && modp(d, &BigInt::from(4)) == BigInt::from(3) {
                    format!("(2, 1+sqrt({d}))")
                } else {
                    format!("({p}, sqrt({d}))")
                }
            }
            PrimeKind::Split { s } => {
                if p == &BigInt::from(2) {
                    // ω = (1+√D)/2 ↦ (1+σ)/2 mod 2
                    let r = hensel_two(d, s.to_u32().unwrap(), 4);
                    let r = modp(&((r + 1u32) / 2u32), &BigInt::from(2));
                    format!("(2, (1+sqrt({d}))/2 - {r})")
                } else {
                    format!("({p}, sqrt({d}) - {s})")
                }
            }
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            PrimeKind::Rational => "",
            PrimeKind::Inert => " inert",
            PrimeKind::Ramified => " ramified",
            PrimeKind::Split { .. } => " split",
        };
        write!(f, "{}{}", self.generators(), tag)
    }
}

/// A place of ℚ or of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    /// Real place; `conj` marks √D ↦ −√D.
    Real { conj: bool },
    Finite(PrimeIdeal),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real { conj: false } => write!(f, "real"),
            Place::Real { conj: true } => write!(f, "real (conjugate)"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// ℚ (d = 1) or ℚ(√d) with d squarefree, d > 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalField {
    pub d: BigInt,
}

/// x = (a + b√D)/m with integers, m > 0 and gcd(a, b, m) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QElt {
    pub a: BigInt,
    pub b: BigInt,
    pub m: BigInt,
}

impl QElt {
    pub fn from_rationals(x: &BigRational, y: &BigRational) -> QElt {
        let m = x.denom().lcm(y.denom());
        let a = x.numer() * (&m / x.denom());
        let b = y.numer() * (&m / y.denom());
        QElt { a, b, m }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl LocalField {
    pub fn rationals() -> LocalField {
        LocalField { d: BigInt::one() }
    }

    pub fn quadratic(d: BigInt) -> LocalField {
        LocalField { d }
    }

    /// The local field matching the presentation of `x`'s field.
    pub fn of(x: &AlgebraicNumber) -> Result<LocalField, AlgError> {
        let f = x.field();
        if f.is_rational() {
            Ok(LocalField::rationals())
        } else if let Some(d) = f.quadratic_d() {
            Ok(LocalField::quadratic(d.clone()))
        } else {
            Err(AlgError::Internal(format!("local computations need degree ≤ 2, got {}", f.describe())))
        }
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_one()
    }

    pub fn elt(&self, x: &AlgebraicNumber) -> QElt {
        let c = x.coords();
        let zero = BigRational::zero();
        QElt::from_rationals(&c[0], c.get(1).unwrap_or(&zero))
    }

    pub fn discriminant(&self) -> BigInt {
        if modp(&self.d, &BigInt::from(4)).is_one() {
            self.d.clone()
        } else {
            &self.d * 4u32
        }
    }

    /// N(a + b√D) = a² − D b² (numerator part of the norm).
    fn num_norm(&self, x: &QElt) -> BigInt {
        if self.is_rational() {
            x.a.clone()
        } else {
            &x.a * &x.a - &self.d * &x.b * &x.b
        }
    }

    pub fn norm(&self, x: &QElt) -> BigRational {
        let m = if self.is_rational() { x.m.clone() } else { &x.m * &x.m };
        BigRational::new(self.num_norm(x), m)
    }

    pub fn real_places(&self) -> Vec<Place> {
        if self.is_rational() {
            vec![Place::Real { conj: false }]
        } else {
            vec![Place::Real { conj: false }, Place::Real { conj: true }]
        }
    }

    /// Prime ideals above the rational prime p.
    pub fn primes_above(&self, p: &BigInt) -> Vec<PrimeIdeal> {
        let mk = |kind| PrimeIdeal { p: p.clone(), kind, d: self.d.clone() };
        if self.is_rational() {
            return vec![mk(PrimeKind::Rational)];
        }
        match kronecker(&self.discriminant(), p) {
            0 => vec![mk(PrimeKind::Ramified)],
            -1 => vec![mk(PrimeKind::Inert)],
            _ => {
                if p == &BigInt::from(2) {
                    vec![mk(PrimeKind::Split { s: 1.into() }), mk(PrimeKind::Split { s: 3.into() })]
                } else {
                    let s = sqrt_mod_prime(&self.d, p);
                    let t = p - &s;
                    let (lo, hi) = if s < t { (s, t) } else { (t, s) };
                    vec![mk(PrimeKind::Split { s: lo }), mk(PrimeKind::Split { s: hi })]
                }
            }
        }
    }

    /// Sign of x under a real place.
    pub fn real_sign(&self, x: &QElt, conj: bool) -> i32 {
        let b = if conj { -&x.b } else { x.b.clone() };
        // sign of a + b√D
        let sa = x.a.sign();
        let sb = b.sign();
        let s = match (sa, sb) {
            (Sign::NoSign, s) | (s, Sign::NoSign) => s,
            (s1, s2) if s1 == s2 => s1,
            _ => {
                // compare a² with D b²
                let lhs = &x.a * &x.a;
                let rhs = &self.d * &b * &b;
                if lhs > rhs {
                    sa
                } else {
                    sb
                }
            }
        };
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::NoSign => 0,
        }
    }

    /// Image of the numerator a + b√D in ℤ_p / p^k for a split prime.
    fn split_image(&self, x: &QElt, pr: &PrimeIdeal, k: u32) -> BigInt {
        let PrimeKind::Split { s } = &pr.kind else { unreachable!() };
        let sigma = if pr.p == BigInt::from(2) {
            hensel_two(&self.d, s.to_u32().unwrap(), k + 1)
        } else {
            hensel_odd(&self.d, s, &pr.p, k)
        };
        modp(&(&x.a + &x.b * sigma), &pr.p.pow(k))
    }

    /// v_p(a + b√D) at a split prime.
    fn split_val_num(&self, x: &QElt, pr: &PrimeIdeal) -> i64 {
        let mut k = 8u32;
        loop {
            let img = self.split_image(x, pr, k);
            if !img.is_zero() {
                return vp_int(&img, &pr.p);
            }
            k *= 2;
        }
    }

    /// Normalized valuation v_𝔭(x), x ≠ 0.
    pub fn valuation(&self, x: &QElt, pr: &PrimeIdeal) -> i64 {
        assert!(!x.is_zero());
        let p = &pr.p;
        match &pr.kind {
            PrimeKind::Rational => vp_int(&x.a, p) - vp_int(&x.m, p),
            PrimeKind::Inert => vp_int(&self.num_norm(x), p) / 2 - vp_int(&x.m, p),
            PrimeKind::Ramified => vp_int(&self.num_norm(x), p) - 2 * vp_int(&x.m, p),
            PrimeKind::Split { .. } => self.split_val_num(x, pr) - vp_int(&x.m, p),
        }
    }

    /// Residue of a 𝔭-unit at an odd prime, as (c0, c1) meaning c0 + c1·√D in the
    /// residue field (c1 = 0 unless 𝔭 is inert).
    fn residue(&self, x: &QElt, pr: &PrimeIdeal) -> (BigInt, BigInt) {
        let p = &pr.p;
        debug_assert!(p != &BigInt::from(2));
        let k = vp_int(&x.m, p) as u32;
        let pk = p.pow(k);
        let minv = inv_mod(&(&x.m / &pk), p);
        match &pr.kind {
            PrimeKind::Rational => (modp(&(&x.a / &pk * &minv), p), BigInt::zero()),
            PrimeKind::Inert => (modp(&(&x.a / &pk * &minv), p), modp(&(&x.b / &pk * &minv), p)),
            PrimeKind::Ramified => (modp(&(&x.a / &pk * &minv), p), BigInt::zero()),
            PrimeKind::Split { .. } => {
                let img = self.split_image(x, pr, k + 1);
                debug_assert!((&img % &pk).is_zero());
                (modp(&(img / &pk * &minv), p), BigInt::zero())
            }
        }
    }

    /// Quadratic character of a nonzero residue.
    fn residue_character(&self, r: &(BigInt, BigInt), pr: &PrimeIdeal) -> i32 {
        let p = &pr.p;
        if pr.kind != PrimeKind::Inert {
            return legendre(&r.0, p);
        }
        // (c0 + c1 t)^((p²−1)/2) in F_p[t]/(t² − D)
        let mul = |u: &(BigInt, BigInt), v: &(BigInt, BigInt)| -> (BigInt, BigInt) {
            (
                modp(&(&u.0 * &v.0 + &self.d * &u.1 * &v.1), p),
                modp(&(&u.0 * &v.1 + &u.1 * &v.0), p),
            )
        };
        let mut e: BigInt = (p * p - 1u32) / 2u32;
        let mut base = r.clone();
        let mut acc = (BigInt::one(), BigInt::zero());
        while !e.is_zero() {
            if e.is_odd() {
                acc = mul(&acc, &base);
            }
            base = mul(&base, &base);
            e >>= 1;
        }
        debug_assert!(acc.1.is_zero());
        if acc.0.is_one() {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, x: &QElt, y: &QElt) -> QElt {
        let a = &x.a * &y.a + &self.d * &x.b * &y.b;
        let b = &x.a * &y.b + &x.b * &y.a;
        let m = &x.m * &y.m;
        normalize(a, b, m)
    }

    pub fn inv(&self, x: &QElt) -> QElt {
        // (a − b√D)·m / (a² − D b²)
        let n = &x.a * &x.a - &self.d * &x.b * &x.b;
        let (a, b, m) = (&x.a * &x.m, -&x.b * &x.m, n);
        if m.is_negative() {
            normalize(-a, -b, -m)
        } else {
            normalize(a, b, m)
        }
    }

    fn pow(&self, x: &QElt, e: i64) -> QElt {
        let base = if e < 0 { self.inv(x) } else { x.clone() };
        let mut acc = QElt { a: BigInt::one(), b: BigInt::zero(), m: BigInt::one() };
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// Hilbert symbol (x, y)_v.
    pub fn hilbert(&self, x: &QElt, y: &QElt, v: &Place) -> i32 {
        assert!(!x.is_zero() && !y.is_zero());
        match v {
            Place::Real { conj } => {
                if self.real_sign(x, *conj) < 0 && self.real_sign(y, *conj) < 0 {
                    -1
                } else {
                    1
                }
            }
            Place::Finite(pr) => {
                if pr.p == BigInt::from(2) {
                    self.hilbert_dyadic(x, y, pr)
                } else {
                    self.hilbert_tame(x, y, pr)
                }
            }
        }
    }

    fn hilbert_tame(&self, x: &QElt, y: &QElt, pr: &PrimeIdeal) -> i32 {
        let al = self.valuation(x, pr);
        let be = self.valuation(y, pr);
        if al == 0 && be == 0 {
            return 1;
        }
        // (−1)^{αβ} x^β / y^α is a 𝔭-unit
        let mut u = self.mul(&self.pow(x, be), &self.pow(y, -al));
        if (al * be) % 2 != 0 {
            u.a = -u.a;
            u.b = -u.b;
        }
        let r = self.residue(&u, pr);
        self.residue_character(&r, pr)
    }

    fn hilbert_dyadic(&self, x: &QElt, y: &QElt, pr: &PrimeIdeal) -> i32 {
        match &pr.kind {
            PrimeKind::Rational => {
                hilbert_q2(&BigRational::new(x.a.clone(), x.m.clone()), &BigRational::new(y.a.clone(), y.m.clone()))
            }
            PrimeKind::Split { .. } => {
                let xi = self.two_adic_image(x, pr);
                let yi = self.two_adic_image(y, pr);
                hilbert_q2(&xi, &yi)
            }
            // the only dyadic place: product formula over all other places
            PrimeKind::Inert | PrimeKind::Ramified => {
                let mut prod = 1;
                for v in self.symbol_places(x, y) {
                    if let Place::Finite(q) = &v {
                        if q.p == BigInt::from(2) {
                            continue;
                        }
                    }
                    prod *= self.hilbert(x, y, &v);
                }
                prod
            }
        }
    }

    /// A rational with the same 2-adic valuation and unit part mod 8 as the image
    /// of x in ℚ₂ under a split dyadic prime.
    fn two_adic_image(&self, x: &QElt, pr: &PrimeIdeal) -> BigRational {
        let two = BigInt::from(2);
        let v = self.split_val_num(x, pr);
        let img = self.split_image(x, pr, v as u32 + 3);
        debug_assert_eq!(vp_int(&img, &two), v);
        BigRational::new(img, x.m.clone())
    }

    /// Places where (x, y) can ramify: real places and primes above 2 and above
    /// every prime dividing a denominator or the norm of a numerator.
    pub fn symbol_places(&self, x: &QElt, y: &QElt) -> Vec<Place> {
        let mut ps: BTreeSet<BigInt> = BTreeSet::new();
        ps.insert(BigInt::from(2));
        for e in [x, y] {
            ps.extend(prime_divisors(&e.m));
            ps.extend(prime_divisors(&self.num_norm(e)));
        }
        let mut out = self.real_places();
        for p in ps {
            out.extend(self.primes_above(&p).into_iter().map(Place::Finite));
        }
        out
    }

    /// Places where the quaternion algebra (x, y) ramifies.
    pub fn symbol_ramification(&self, x: &QElt, y: &QElt) -> BTreeSet<Place> {
        self.symbol_places(x, y).into_iter().filter(|v| self.hilbert(x, y, v) == -1).collect()
    }

    /// Whether x is a square in the completion at a real or odd place; used by tests.
    pub fn is_local_square_odd(&self, x: &QElt, pr: &PrimeIdeal) -> bool {
        let v = self.valuation(x, pr);
        if v % 2 != 0 {
            return false;
        }
        let pi = self.uniformizer(pr);
        let u = self.mul(x, &self.pow(&pi, -v));
        let r = self.residue(&u, pr);
        self.residue_character(&r, pr) == 1
    }

    /// An element of valuation exactly 1 at 𝔭.
    pub fn uniformizer(&self, pr: &PrimeIdeal) -> QElt {
        let p = pr.p.clone();
        let one = BigInt::one();
        match &pr.kind {
            PrimeKind::Rational | PrimeKind::Inert => QElt { a: p, b: BigInt::zero(), m: one },
            PrimeKind::Ramified => {
                let e = if p == BigInt::from(2) && modp(&self.d, &BigInt::from(4)) == BigInt::from(3) {
                    QElt { a: one.clone(), b: one.clone(), m: one }
                } else {
                    QElt { a: BigInt::zero(), b: one.clone(), m: one }
                };
                debug_assert_eq!(self.valuation(&e, pr), 1);
                e
            }
            PrimeKind::Split { s } => {
                if p == BigInt::from(2) {
                    // 2 has valuation 1 at both dyadic split primes
                    QElt { a: p, b: BigInt::zero(), m: one }
                } else {
                    let mut c = QElt { a: -s.clone(), b: one.clone(), m: one.clone() };
                    if self.valuation(&c, pr) != 1 {
                        c.a -= &p;
                    }
                    debug_assert_eq!(self.valuation(&c, pr), 1);
                    c
                }
            }
        }
    }
}

fn normalize(a: BigInt, b: BigInt, m: BigInt) -> QElt {
    let g = a.gcd(&b).gcd(&m);
    if g.is_zero() {
        return QElt { a, b, m: BigInt::one() };
    }
    let mut g = g;
    if m.is_negative() {
        g = -g;
    }
    QElt { a: a / &g, b: b / &g, m: m / &g }
}

/// Hilbert symbol over ℚ₂.
pub fn hilbert_q2(x: &BigRational, y: &BigRational) -> i32 {
    let two = BigInt::from(2);
    let split = |r: &BigRational| -> (i64, u32) {
        let v = vp_rat(r, &two);
        // unit part mod 8
        let n = r.numer() / two.pow(vp_int(r.numer(), &two) as u32);
        let d = r.denom() / two.pow(vp_int(r.denom(), &two) as u32);
        let u = modp(&(n * inv_mod(&d, &BigInt::from(8))), &BigInt::from(8));
        (v, u.to_u32().unwrap())
    };
    let (a, u) = split(x);
    let (b, w) = split(y);
    let eps = |u: u32| ((u - 1) / 2) % 2;
    let omega = |u: u32| ((u * u - 1) / 8) % 2;
    let e = eps(u) * eps(w) + (a.rem_euclid(2) as u32) * omega(w) + (b.rem_euclid(2) as u32) * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Hilbert symbol over ℚ_p (p prime) or ℝ (p = None).
pub fn hilbert_q(x: &BigRational, y: &BigRational, p: Option<&BigInt>) -> i32 {
    let k = LocalField::rationals();
    let e = |r: &BigRational| QElt { a: r.numer().clone(), b: BigInt::zero(), m: r.denom().clone() };
    let place = match p {
        None => Place::Real { conj: false },
        Some(p) => Place::Finite(PrimeIdeal { p: p.clone(), kind: PrimeKind::Rational, d: BigInt::one() }),
    };
    k.hilbert(&e(x), &e(y), &place)
}
