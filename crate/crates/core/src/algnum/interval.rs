//! Closed rational intervals with outward dyadic rounding.

use super::poly::{q, QPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let s = BigInt::one() << bits;
    let n = (x.numer() * &s).div_floor(x.denom());
    BigRational::new(n, s)
}

fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let s = BigInt::one() << bits;
    let n = (x.numer() * &s).div_ceil(x.denom());
    BigRational::new(n, s)
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// +1 / -1 when the interval excludes zero, 0 when undecided.
    pub fn sign(&self) -> i32 {
        if self.lo.is_positive() {
            1
        } else if self.hi.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn round_out(&self, bits: u32) -> Interval {
        Interval {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, a: &BigRational) -> Interval {
        if a.is_negative() {
            Interval { lo: &self.hi * a, hi: &self.lo * a }
        } else {
            Interval { lo: &self.lo * a, hi: &self.hi * a }
        }
    }

    pub fn add_scalar(&self, a: &BigRational) -> Interval {
        Interval { lo: &self.lo + a, hi: &self.hi + a }
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn inside(&self, o: &Interval) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    /// Enclosure of √x for an interval with nonnegative lower end.
    pub fn sqrt(&self, bits: u32) -> Interval {
        Interval { lo: sqrt_floor(&self.lo, bits), hi: sqrt_ceil(&self.hi, bits) }
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / q(2)
    }
}

fn sqrt_floor(x: &BigRational, bits: u32) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    // floor(sqrt(x)·2^bits) / 2^bits
    let s = BigInt::one() << (2 * bits);
    let n = (x.numer() * &s).div_floor(x.denom());
    BigRational::new(n.sqrt(), BigInt::one() << bits)
}

fn sqrt_ceil(x: &BigRational, bits: u32) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let s = BigInt::one() << (2 * bits);
    let n = (x.numer() * &s).div_ceil(x.denom());
    let mut r = n.sqrt();
    if &r * &r < n {
        r += 1;
    }
    BigRational::new(r, BigInt::one() << bits)
}

/// Horner evaluation of a rational polynomial over an interval.
pub fn eval_poly(p: &QPoly, x: &Interval, bits: u32) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_scalar(c).round_out(bits);
    }
    acc
}

/// Evaluate Σ c_i x^i for coordinates c over an interval.
pub fn eval_coords(c: &[BigRational], x: &Interval, bits: u32) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for a in c.iter().rev() {
        acc = acc.mul(x).add_scalar(a).round_out(bits);
    }
    acc
}
