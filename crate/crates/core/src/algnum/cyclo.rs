//! Cyclotomic polynomials and exact values of cos(π/m).

use super::element::AlgebraicNumber;
use super::field::{quadratic_field, square_part, NumberField};
use super::poly::{q, qq, QPoly};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub fn totient(n: u64) -> u64 {
    let mut r = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> QPoly {
    static C: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    let cache = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut c = vec![BigRational::zero(); n as usize + 1];
    c[0] = q(-1);
    c[n as usize] = q(1);
    let mut p = QPoly::new(c);
    for d in 1..n {
        if n % d == 0 {
            p = p.divrem(&cyclotomic(d)).0;
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Minimal polynomial of 2cos(2π/n) (n ≥ 3), from the palindromic Φ_n via
/// x^i + x^{-i} = D_i(y).
pub fn real_cyclotomic(n: u64) -> QPoly {
    let phi = cyclotomic(n);
    let k = phi.degree() / 2;
    let mut dk = vec![QPoly::constant(q(2)), QPoly::x()];
    for i in 2..=k {
        let next = QPoly::x().mul(&dk[i - 1]).sub(&dk[i - 2]);
        dk.push(next);
    }
    let mut psi = QPoly::constant(phi.coeff(k));
    for i in 1..=k {
        psi = psi.add(&dk[i].scale(&phi.coeff(k + i)));
    }
    psi
}

/// Exact cos(π/m) for m ≥ 2, in ℚ(cos(π/m)).
pub fn cos_pi_over(m: u64) -> AlgebraicNumber {
    assert!(m >= 2, "cos(pi/m) needs m >= 2");
    match m {
        2 => return AlgebraicNumber::from_int(0),
        3 => return AlgebraicNumber::from_frac(1, 2),
        _ => {}
    }
    let psi = real_cyclotomic(2 * m);
    if psi.degree() == 2 {
        // 2cos(π/m) = (-b + √(b² - 4c))/2, the larger root
        let b = psi.coeff(1);
        let c = psi.coeff(0);
        let disc = &b * &b - q(4) * &c;
        let (s, d) = square_part(&disc.to_integer());
        let f = quadratic_field(&d);
        let half = qq(1, 2);
        let gen = AlgebraicNumber::new(&f, vec![-&b * &half, BigRational::from_integer(s) * &half]);
        return gen.scale(&half);
    }
    let n = psi.degree();
    let f = NumberField::with_designated(psi, n - 1);
    AlgebraicNumber::generator(&f).scale(&qq(1, 2))
}
