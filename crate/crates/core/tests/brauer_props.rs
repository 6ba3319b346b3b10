use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use vinbergkit::algnum::AlgebraicNumber;
use vinbergkit::brauer::{hasse_invariant, hilbert_q, LocalField, Place, QElt};

const PLACES: [Option<i64>; 6] = [None, Some(2), Some(3), Some(5), Some(7), Some(11)];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn nonzero() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-3000i64..-1, 1i64..3000], 1i64..200).prop_map(|(n, d)| rat(n, d))
}

fn sym(a: &BigRational, b: &BigRational, p: Option<i64>) -> i32 {
    let p = p.map(BigInt::from);
    hilbert_q(a, b, p.as_ref())
}

fn prime_factors(mut n: u64, out: &mut Vec<u64>) {
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn symbol_laws_over_q(a in nonzero(), b in nonzero(), c in nonzero()) {
        let one = rat(1, 1);
        for p in PLACES {
            prop_assert_eq!(sym(&a, &b, p), sym(&b, &a, p));
            prop_assert_eq!(sym(&a, &(&b * &c), p), sym(&a, &b, p) * sym(&a, &c, p));
            prop_assert_eq!(sym(&a, &-a.clone(), p), 1);
            if a != one {
                prop_assert_eq!(sym(&a, &(&one - &a), p), 1);
            }
            prop_assert_eq!(sym(&a, &(&b * &b), p), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn product_formula_over_q(a in nonzero(), b in nonzero()) {
        let mut ps = vec![2u64];
        for r in [&a, &b] {
            for n in [r.numer(), r.denom()] {
                prime_factors(n.magnitude().try_into().unwrap(), &mut ps);
            }
        }
        ps.sort();
        ps.dedup();
        let prod: i32 = ps.iter().map(|&p| sym(&a, &b, Some(p as i64))).product::<i32>() * sym(&a, &b, None);
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn ramification_has_even_size(a in nonzero(), b in nonzero(), c in nonzero()) {
        let diag: Vec<AlgebraicNumber> = [&a, &b, &c].iter().map(|r| AlgebraicNumber::rational((*r).clone())).collect();
        let s = hasse_invariant(&diag).unwrap();
        prop_assert_eq!(s.ram.len() % 2, 0);
    }

    #[test]
    fn scaling_rule_for_hasse(
        xs in proptest::collection::vec(prop_oneof![-40i64..-1, 1i64..40], 2..6),
        lam in prop_oneof![-40i64..-1, 1i64..40],
    ) {
        // s(λq) = s(q) + (λ, d)^{m−1} + (λ, −1)^{m(m−1)/2}, an identity of bilinearity
        let m = xs.len();
        let q: Vec<AlgebraicNumber> = xs.iter().map(|&x| AlgebraicNumber::from_int(x)).collect();
        let lq: Vec<AlgebraicNumber> = xs.iter().map(|&x| AlgebraicNumber::from_int(x * lam)).collect();
        let d: i64 = xs.iter().product();
        let lhs = hasse_invariant(&lq).unwrap();
        let mut rhs = hasse_invariant(&q).unwrap();
        let l = AlgebraicNumber::from_int(lam);
        if (m - 1) % 2 == 1 {
            rhs = rhs.add(&vinbergkit::brauer::quaternion_class(&l, &AlgebraicNumber::from_int(d)).unwrap());
        }
        if (m * (m - 1) / 2) % 2 == 1 {
            rhs = rhs.add(&vinbergkit::brauer::quaternion_class(&l, &AlgebraicNumber::from_int(-1)).unwrap());
        }
        prop_assert_eq!(lhs, rhs);
    }
}

/// z² = ax² + by² has a primitive solution mod p³ (odd p, a and b squarefree).
fn conic_solvable_mod(a: i64, b: i64, p: i64) -> bool {
    let m = p * p * p;
    let sq: Vec<i64> = (0..m).map(|z| z * z % m).collect();
    let mut is_sq_unit = vec![false; m as usize];
    let mut is_sq = vec![false; m as usize];
    for z in 0..m {
        is_sq[sq[z as usize] as usize] = true;
        if z % p != 0 {
            is_sq_unit[sq[z as usize] as usize] = true;
        }
    }
    for x in 0..m {
        for y in 0..m {
            let v = (a * sq[x as usize] + b * sq[y as usize]).rem_euclid(m) as usize;
            if x % p != 0 || y % p != 0 {
                if is_sq[v] {
                    return true;
                }
            } else if is_sq_unit[v] {
                return true;
            }
        }
    }
    false
}

#[test]
fn odd_symbols_match_exhaustive_search() {
    let sf: Vec<i64> = (-15i64..=15).filter(|&n| n != 0 && ![4, 8, 9, 12].contains(&n.abs())).collect();
    for p in [3i64, 5] {
        for &a in &sf {
            for &b in &sf {
                let expect = if conic_solvable_mod(a, b, p) { 1 } else { -1 };
                assert_eq!(sym(&rat(a, 1), &rat(b, 1), Some(p)), expect, "({a},{b})_{p}");
            }
        }
    }
}

#[test]
fn minus_one_minus_one_at_two() {
    // no primitive solution of z² + x² + y² ≡ 0 mod 8
    let solvable = (0..8i64).any(|x| {
        (0..8i64).any(|y| (0..8i64).any(|z| (x % 2 != 0 || y % 2 != 0 || z % 2 != 0) && (z * z + x * x + y * y) % 8 == 0))
    });
    assert!(!solvable);
    assert_eq!(sym(&rat(-1, 1), &rat(-1, 1), Some(2)), -1);
}

/// O_K / 2^k for K = ℚ(√d), basis (1, ω) with ω² = ω + 1 (d = 5) or ω² = d.
struct Dyadic {
    d: i64,
    k: u32,
}

impl Dyadic {
    fn modulus(&self) -> i64 {
        1 << self.k
    }
    fn mul(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let m = self.modulus();
        let (a, b) = x;
        let (c, e) = y;
        let (r0, r1) = if self.d == 5 {
            (a * c + b * e, a * e + b * c + b * e)
        } else {
            (a * c + self.d * b * e, a * e + b * c)
        };
        (r0.rem_euclid(m), r1.rem_euclid(m))
    }
    fn add(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let m = self.modulus();
        ((x.0 + y.0).rem_euclid(m), (x.1 + y.1).rem_euclid(m))
    }
    fn squares(&self) -> std::collections::HashSet<(i64, i64)> {
        let m = self.modulus();
        let mut s = std::collections::HashSet::new();
        for a in 0..m {
            for b in 0..m {
                s.insert(self.mul((a, b), (a, b)));
            }
        }
        s
    }
    /// For units x, y: a primitive solution has x- or y-coordinate a unit, so after
    /// scaling it is (1, t, z) or (t, 1, z); t only matters mod 2^{k−1}.
    fn solvable(&self, x: (i64, i64), y: (i64, i64), sq: &std::collections::HashSet<(i64, i64)>) -> bool {
        let h = self.modulus() / 2;
        for a in 0..h {
            for b in 0..h {
                let t2 = self.mul((a, b), (a, b));
                if sq.contains(&self.add(x, self.mul(y, t2))) || sq.contains(&self.add(y, self.mul(x, t2))) {
                    return true;
                }
            }
        }
        false
    }
    fn to_qelt(&self, x: (i64, i64)) -> QElt {
        if self.d == 5 {
            // p + qω = (2p + q + q√5)/2
            QElt::from_rationals(&rat(2 * x.0 + x.1, 2), &rat(x.1, 2))
        } else {
            QElt::from_rationals(&rat(x.0, 1), &rat(x.1, 1))
        }
    }
    fn is_unit(&self, x: (i64, i64)) -> bool {
        let (p, q) = x;
        match self.d {
            5 => (p * p + p * q - q * q) % 2 != 0,
            2 => p % 2 != 0,
            _ => (p + q) % 2 != 0,
        }
    }
}

fn dyadic_agreement(d: i64, k: u32, cases: usize, seed: u64) {
    use rand::{Rng, SeedableRng};
    let o = Dyadic { d, k };
    let sq = o.squares();
    let lf = LocalField::quadratic(d.into());
    let pr = lf.primes_above(&2.into()).remove(0);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut seen = [0usize; 2];
    let mut n = 0;
    while n < cases {
        let x = (rng.gen_range(-20i64..20), rng.gen_range(-20i64..20));
        let y = (rng.gen_range(-20i64..20), rng.gen_range(-20i64..20));
        if !o.is_unit(x) || !o.is_unit(y) {
            continue;
        }
        let m = o.modulus();
        let red = |v: (i64, i64)| (v.0.rem_euclid(m), v.1.rem_euclid(m));
        let expect = if o.solvable(red(x), red(y), &sq) { 1 } else { -1 };
        let got = lf.hilbert(&o.to_qelt(x), &o.to_qelt(y), &Place::Finite(pr.clone()));
        assert_eq!(got, expect, "d = {d}, {x:?}, {y:?}");
        seen[(got == 1) as usize] += 1;
        n += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn dyadic_symbols_match_search_sqrt5() {
    // 2 is inert, e = 1: precision 2^(2e+3+2)
    dyadic_agreement(5, 7, 100, 1);
}

#[test]
fn dyadic_symbols_match_search_ramified() {
    // e = 2: π^9 needs 2^5
    dyadic_agreement(2, 5, 100, 2);
    dyadic_agreement(3, 5, 100, 3);
}
