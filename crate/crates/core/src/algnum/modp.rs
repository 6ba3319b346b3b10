//! Polynomials over small prime fields and Cantor–Zassenhaus factorization.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(r)
}

pub fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut r = a.clone();
    let il = inv(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut qv = vec![0u64; a.len() - db];
    for i in (0..qv.len()).rev() {
        let f = mulmod(r[i + db], il, p);
        if f == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - mulmod(f, bc, p)) % p;
        }
        qv[i] = f;
    }
    r.truncate(db);
    (trim(qv), trim(r))
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g monic.
pub fn xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (qv, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&qv, &s1, p), p);
        let t = sub(&t0, &mul(&qv, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let l = inv(*r0.last().unwrap(), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mulmod(x, i as u64 % p, p))
            .collect(),
    )
}

pub fn powmod_poly(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

fn pow_big(base: &Fp, p: u64, k: usize, m: &Fp) -> Fp {
    // base^(p^k) mod m
    let mut r = base.clone();
    for _ in 0..k {
        r = powmod_poly(&r, p as u128, m, p);
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 && 2 * (d + 1) <= f.len() - 1 {
        d += 1;
        h = powmod_poly(&h, p as u128, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting (odd p) of a monic product of irreducibles of degree d.
pub fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let e = pow_u128(p, d).map(|v| (v - 1) / 2);
        let b = if let Some(e) = e {
            sub(&powmod_poly(&a, e, f, p), &vec![1], p)
        } else {
            // p^d too large for u128: compute a^((p^d-1)/2) via repeated Frobenius
            let t = half_power(&a, f, p, d);
            sub(&t, &vec![1], p)
        };
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn pow_u128(p: u64, d: usize) -> Option<u128> {
    let mut r: u128 = 1;
    for _ in 0..d {
        r = r.checked_mul(p as u128)?;
    }
    Some(r)
}

// a^((p^d - 1)/2) = ∏_{i<d} a^{p^i} raised appropriately: (p^d-1)/2 = (p-1)/2 · (1 + p + ... + p^{d-1})
fn half_power(a: &Fp, f: &Fp, p: u64, d: usize) -> Fp {
    let mut norm_like = vec![1u64];
    let mut cur = a.clone();
    for _ in 0..d {
        norm_like = rem(&mul(&norm_like, &cur, p), f, p);
        cur = pow_big(&cur, p, 1, f);
    }
    powmod_poly(&norm_like, ((p - 1) / 2) as u128, f, p)
}

/// Full factorization of a monic squarefree polynomial over F_p (p odd).
pub fn factor_squarefree(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_small() {
        let p = 13;
        // (x-1)(x-2)(x^2+2) mod 13; -2 is a non-residue mod 13
        let f = mul(&mul(&vec![12, 1], &vec![11, 1], p), &vec![2, 0, 1], p);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = factor_squarefree(&f, p, &mut rng);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1u64], |a, b| mul(&a, b, p));
        assert_eq!(prod, f);
    }

    #[test]
    fn xgcd_identity() {
        let p = 101;
        let a = vec![3, 0, 1];
        let b = vec![5, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}
