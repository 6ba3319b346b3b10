//! Factorization of squarefree integer polynomials (Zassenhaus: modular factorization,
//! quadratic Hensel lifting, subset recombination).

use super::modp::{self, Fp};
use super::poly::QPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn zmod(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn zsym(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    ztrim(r)
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn zreduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| zmod(x, m)).collect())
}

/// Division with remainder by a monic polynomial, coefficients reduced mod m.
fn zdivrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.last().is_some_and(|x| x.is_one()));
    let mut r = zreduce(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let mut qv = vec![BigInt::zero(); r.len() - db];
    for i in (0..qv.len()).rev() {
        let f = zmod(&r[i + db], m);
        if f.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] = zmod(&(&r[i + j] - &f * bc), m);
        }
        qv[i] = f;
    }
    r.truncate(db);
    (ztrim(qv), zreduce(&r, m))
}

fn to_fp(a: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut v: Fp = a.iter().map(|x| zmod(x, &pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn from_fp(a: &Fp) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Exact division over ℤ; None if not exact.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if a.len() < b.len() {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut qv = vec![BigInt::zero(); a.len() - db];
    for i in (0..qv.len()).rev() {
        let (f, rr) = r[i + db].div_rem(lb);
        if !rr.is_zero() {
            return None;
        }
        if f.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &f * bc;
        }
        qv[i] = f;
    }
    if r.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(ztrim(qv))
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn primitive(a: &ZPoly) -> ZPoly {
    let c = content(a);
    let mut v: ZPoly = a.iter().map(|x| x / &c).collect();
    if v.last().is_some_and(|x| x.is_negative()) {
        v = v.iter().map(|x| -x).collect();
    }
    v
}

fn norm2_ceil(a: &ZPoly) -> BigInt {
    let s: BigInt = a.iter().map(|x| x * x).sum();
    s.sqrt() + 1
}

/// One quadratic Hensel step: f ≡ g·h, s·g + t·h ≡ 1 (mod m), h monic.
/// Returns the lifted data modulo m².
fn hensel_step(f: &ZPoly, g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zreduce(&zsub(f, &zmul(g, h)), &m2);
    let (qv, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g2 = zreduce(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&qv, g)), &m2);
    let h2 = zreduce(&zadd(h, &r), &m2);
    let b = zreduce(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &vec![BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &m2);
    let s2 = zreduce(&zsub(s, &d), &m2);
    let t2 = zreduce(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lift a factorization f ≡ lc·∏ fs (mod p), fs monic, to modulus ≥ bound.
/// Returns monic lifted factors and the modulus.
fn multifactor_lift(f: &ZPoly, fs: &[Fp], p: u64, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let mut k = 1u32;
    let mut m = BigInt::from(p);
    while &m <= bound {
        m = &m * &m;
        k *= 2;
    }
    let _ = k;
    let mut out = Vec::new();
    lift_tree(f, fs, p, &m, &mut out);
    (out, m)
}

fn lift_tree(f: &ZPoly, fs: &[Fp], p: u64, target: &BigInt, out: &mut Vec<ZPoly>) {
    if fs.len() == 1 {
        // f ≡ lc·fs[0]: the monic lift is f·lc⁻¹ mod target
        let lc = f.last().unwrap();
        let il = lc.modinv(target).expect("leading coefficient invertible");
        out.push(zreduce(&f.iter().map(|x| x * &il).collect(), target));
        return;
    }
    let k = fs.len() / 2;
    let gp = fs[..k].iter().fold(vec![1u64], |a, b| modp::mul(&a, b, p));
    let hp = fs[k..].iter().fold(vec![1u64], |a, b| modp::mul(&a, b, p));
    let lcp = to_fp(&vec![f.last().unwrap().clone()], p)[0];
    let gp_lc = modp::scale(&gp, lcp, p);
    let (gg, s, t) = modp::xgcd(&gp_lc, &hp, p);
    debug_assert_eq!(gg, vec![1]);
    let mut g = from_fp(&gp_lc);
    let mut h = from_fp(&hp);
    let mut s = from_fp(&s);
    let mut t = from_fp(&t);
    let mut m = BigInt::from(p);
    while &m < target {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    let g = zreduce(&g, target);
    let h = zreduce(&h, target);
    // g carries the leading coefficient; its monic version factors further
    lift_tree(&g, &fs[..k], p, target, out);
    let _ = &h;
    lift_tree(&h, &fs[k..], p, target, out);
}

fn small_primes() -> impl Iterator<Item = u64> {
    (1000u64..).filter(|&n| modp::is_prime(n))
}

/// Irreducible factors over ℤ of a squarefree integer polynomial (primitive parts,
/// positive leading coefficients). `degree_multiple` prunes recombination: only
/// products whose degree is a multiple of it are tried.
pub fn factor_squarefree(f: &[BigInt], degree_multiple: usize) -> Vec<Vec<BigInt>> {
    let f = primitive(&ztrim(f.to_vec()));
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let dm = degree_multiple.max(1);
    if n == dm {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::monic(&to_fp(&f, p), p);
        if modp::gcd(&fp, &modp::derivative(&fp, p), p).len() > 1 {
            continue;
        }
        let fs = modp::factor_squarefree(&fp, p, &mut rng);
        if fs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 8 {
            break;
        }
    }
    let (p, fs) = best.unwrap();
    let bound = BigInt::from(2) * norm2_ceil(&f) * (BigInt::one() << n) * lc.abs();
    let (lifted, m) = multifactor_lift(&f, &fs, p, &bound);
    recombine(f, lifted, &m, dm)
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt, dm: usize) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut found = false;
        let mut subset: Vec<usize> = (0..s).collect();
        loop {
            let deg: usize = subset.iter().map(|&i| lifted[i].len() - 1).sum();
            if deg % dm == 0 {
                let lc = f.last().unwrap().clone();
                let f0 = f[0].clone();
                // constant-term test
                let mut c0 = lc.clone();
                for &i in &subset {
                    c0 = zmod(&(&c0 * &lifted[i][0]), m);
                }
                let c0 = zsym(&c0, m);
                let pass = if f0.is_zero() || c0.is_zero() {
                    true
                } else {
                    (&lc * &f0 % &c0).is_zero()
                };
                if pass {
                    let mut g = vec![lc.clone()];
                    for &i in &subset {
                        g = zreduce(&zmul(&g, &lifted[i]), m);
                    }
                    let g: ZPoly = ztrim(g.iter().map(|x| zsym(x, m)).collect());
                    let g = primitive(&g);
                    if let Some(qv) = zdiv_exact(&f, &g) {
                        out.push(g);
                        f = primitive(&qv);
                        let keep: Vec<ZPoly> = lifted
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| !subset.contains(i))
                            .map(|(_, x)| x.clone())
                            .collect();
                        lifted = keep;
                        found = true;
                    }
                }
            }
            if found || !next_subset(&mut subset, r) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factor a squarefree rational polynomial into monic irreducibles over ℚ.
pub fn factor_rational(p: &QPoly, degree_multiple: usize) -> Vec<QPoly> {
    factor_squarefree(&p.primitive_int(), degree_multiple)
        .into_iter()
        .map(|g| QPoly::from_ints(&g).monic())
        .collect()
}

/// Squarefreeness test modulo a few primes; a true answer is certain, a false one
/// only means no tested prime certified it.
pub fn squarefree_modular(p: &QPoly) -> bool {
    let f = p.primitive_int();
    let lc = f.last().unwrap().clone();
    for pr in small_primes().take(12) {
        if (&lc % BigInt::from(pr)).is_zero() {
            continue;
        }
        let fp = modp::monic(&to_fp(&f, pr), pr);
        if modp::gcd(&fp, &modp::derivative(&fp, pr), pr).len() == 1 {
            return true;
        }
    }
    false
}
