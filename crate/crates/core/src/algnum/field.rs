//! Number fields ℚ(θ) with a designated real root, and the primitive-element
//! construction used for square roots and composita.

use super::factor::{factor_rational, squarefree_modular};
use super::interval::{eval_coords, eval_poly, Interval};
use super::poly::{from_power_sums, isolate_real_roots, power_sums, q, QPoly, RootInterval};
use super::qlinalg::Echelon;
use super::AlgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(64);

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

/// Starting precision in bits for sign determination.
pub fn start_bits() -> u32 {
    static BITS: OnceLock<u32> = OnceLock::new();
    *BITS.get_or_init(|| {
        let digits = std::env::var("VINBERGKIT_PRECISION_DIGITS")
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .unwrap_or(20)
            .clamp(1, 100_000);
        digits * 10 / 3 + 1
    })
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct FieldKey {
    minpoly: Vec<BigRational>,
    designated: usize,
}

pub struct NumberField {
    key: FieldKey,
    minpoly: QPoly,
    degree: usize,
    designated: usize,
    roots: Mutex<Vec<RootInterval>>,
    reduction: Vec<Vec<BigRational>>,
    traces: Vec<BigRational>,
    quadratic: Option<BigInt>,
}

pub type Field = Arc<NumberField>;

fn registry() -> &'static Mutex<HashMap<FieldKey, Field>> {
    static R: OnceLock<Mutex<HashMap<FieldKey, Field>>> = OnceLock::new();
    R.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The field of rational numbers (θ = 0).
pub fn rationals() -> Field {
    static Q: OnceLock<Field> = OnceLock::new();
    Q.get_or_init(|| NumberField::intern(QPoly::x(), 0, vec![RootInterval { lo: q(0), hi: q(0) }]))
        .clone()
}

/// ℚ(√D) presented by t² − D with √D > 0 designated; D squarefree, D ≠ 1.
pub fn quadratic_field(d: &BigInt) -> Field {
    let p = QPoly::new(vec![BigRational::from_integer(-d.clone()), q(0), q(1)]);
    let roots = isolate_real_roots(&p);
    NumberField::intern(p, 1, roots)
}

impl NumberField {
    fn intern(minpoly: QPoly, designated: usize, roots: Vec<RootInterval>) -> Field {
        let key = FieldKey { minpoly: minpoly.coeffs().to_vec(), designated };
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&key) {
            return f.clone();
        }
        let degree = minpoly.degree();
        let mut reduction = Vec::new();
        if degree > 1 {
            // θ^d = -Σ a_i θ^i, then successive shifts
            let mut cur: Vec<BigRational> = (0..degree).map(|i| -minpoly.coeff(i)).collect();
            reduction.push(cur.clone());
            for _ in 1..degree - 1 {
                let top = cur[degree - 1].clone();
                let mut next = vec![BigRational::zero(); degree];
                for i in (1..degree).rev() {
                    next[i] = cur[i - 1].clone();
                }
                for i in 0..degree {
                    next[i] -= &top * minpoly.coeff(i);
                }
                cur = next;
                reduction.push(cur.clone());
            }
        }
        let traces = if degree == 1 {
            vec![q(1)]
        } else {
            power_sums(&minpoly, degree - 1)
        };
        let quadratic = if degree == 2 && minpoly.coeff(1).is_zero() && minpoly.coeff(0).is_integer() && designated == 1 {
            let d = -minpoly.coeff(0).to_integer();
            if d != BigInt::one() && is_squarefree_int(&d) {
                Some(d)
            } else {
                None
            }
        } else {
            None
        };
        let f = Arc::new(NumberField {
            key: key.clone(),
            minpoly,
            degree,
            designated,
            roots: Mutex::new(roots),
            reduction,
            traces,
            quadratic,
        });
        reg.insert(key, f.clone());
        f
    }

    /// Field generated by a root of an irreducible monic polynomial, the root being
    /// the one enclosed by `target` at every precision.
    pub fn from_root(minpoly: QPoly, target: &dyn Fn(u32) -> Interval) -> Field {
        let minpoly = minpoly.monic();
        if minpoly.degree() == 1 {
            return rationals();
        }
        let mut roots = isolate_real_roots(&minpoly);
        let idx = select_root(&minpoly, &mut roots, target);
        NumberField::intern(minpoly, idx, roots)
    }

    /// Field with an explicitly chosen real root index.
    pub fn with_designated(minpoly: QPoly, designated: usize) -> Field {
        let minpoly = minpoly.monic();
        if minpoly.degree() == 1 {
            return rationals();
        }
        let roots = isolate_real_roots(&minpoly);
        assert!(designated < roots.len(), "designated root index out of range");
        NumberField::intern(minpoly, designated, roots)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn designated(&self) -> usize {
        self.designated
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// Some(D) when presented as ℚ(√D) with √D > 0.
    pub fn quadratic_d(&self) -> Option<&BigInt> {
        self.quadratic.as_ref()
    }

    pub fn real_root_count(&self) -> usize {
        self.roots.lock().unwrap().len()
    }

    pub fn is_totally_real(&self) -> bool {
        self.real_root_count() == self.degree
    }

    pub fn root_intervals(&self) -> Vec<RootInterval> {
        self.roots.lock().unwrap().clone()
    }

    /// Enclosure of the given real root of width at most 2^-bits.
    pub fn root_approx(&self, idx: usize, bits: u32) -> Interval {
        let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let mut roots = self.roots.lock().unwrap();
        roots[idx].refine_to(&self.minpoly, &w);
        Interval::new(roots[idx].lo.clone(), roots[idx].hi.clone())
    }

    /// Enclosure of Σ c_i θ^i under root `idx`, of width at most 2^-bits.
    pub fn eval_approx(&self, coords: &[BigRational], idx: usize, bits: u32) -> Interval {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let mut b = bits + 4;
        loop {
            let th = self.root_approx(idx, b);
            let v = eval_coords(coords, &th, b + 8);
            if v.width() <= target {
                return v;
            }
            b += b / 2 + 8;
        }
    }

    /// Exact sign of Σ c_i θ^i under the real root `idx`.
    pub fn sign_at(&self, coords: &[BigRational], idx: usize) -> i32 {
        if coords.iter().all(|c| c.is_zero()) {
            return 0;
        }
        if self.degree == 1 {
            return super::poly::sgn(&coords[0]);
        }
        let mut bits = start_bits();
        loop {
            let th = self.root_approx(idx, bits);
            let v = eval_coords(coords, &th, bits + 16);
            let s = v.sign();
            if s != 0 {
                return s;
            }
            bits *= 2;
        }
    }

    pub(crate) fn mul_coords(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree;
        if d == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = prod[..d].to_vec();
        for k in d..2 * d - 1 {
            let c = &prod[k];
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(self.reduction[k - d].iter()) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    pub(crate) fn trace_coords(&self, a: &[BigRational]) -> BigRational {
        a.iter().zip(self.traces.iter()).map(|(x, t)| x * t).sum()
    }

    /// Reduce an arbitrary polynomial in θ to coordinates.
    pub(crate) fn reduce_poly(&self, p: &QPoly) -> Vec<BigRational> {
        let r = p.rem(&self.minpoly);
        (0..self.degree).map(|i| r.coeff(i)).collect()
    }

    pub(crate) fn inverse_coords(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let pa = QPoly::new(a.to_vec());
        if pa.is_zero() {
            return None;
        }
        // extended Euclid: u·a + v·f = 1
        let (mut r0, mut r1) = (self.minpoly.clone(), pa);
        let (mut u0, mut u1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (qv, r) = r0.divrem(&r1);
            let u = u0.sub(&qv.mul(&u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
        }
        if r0.degree() != 0 {
            return None;
        }
        let inv = BigRational::one() / r0.coeff(0);
        Some(self.reduce_poly(&u0.scale(&inv)))
    }

    pub fn same(a: &Field, b: &Field) -> bool {
        Arc::ptr_eq(a, b) || a.key == b.key
    }

    pub fn describe(&self) -> String {
        if self.degree == 1 {
            "Q".to_string()
        } else if let Some(d) = &self.quadratic {
            format!("Q(sqrt({}))", d)
        } else {
            format!("Q[t]/({}) root #{}", self.minpoly, self.designated)
        }
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn select_root(p: &QPoly, roots: &mut [RootInterval], target: &dyn Fn(u32) -> Interval) -> usize {
    let mut bits = 24u32;
    loop {
        let t = target(bits);
        let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let mut hits = Vec::new();
        for (i, r) in roots.iter_mut().enumerate() {
            r.refine_to(p, &w);
            let ri = Interval::new(r.lo.clone(), r.hi.clone());
            if ri.intersects(&t) {
                hits.push(i);
            }
        }
        if hits.len() == 1 {
            return hits[0];
        }
        assert!(bits < 1 << 16, "no root of the polynomial matches the target enclosure");
        bits *= 2;
    }
}

pub fn is_squarefree_int(n: &BigInt) -> bool {
    let n = n.abs();
    if n.is_zero() {
        return false;
    }
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            m /= &p;
            if (&m % &p).is_zero() {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Result of adjoining a root of a polynomial over F: the new field L with the
/// images of F's generator and of the root.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: Field,
    pub theta: Vec<BigRational>,
    pub root: Vec<BigRational>,
}

type Enclosure<'a> = &'a dyn Fn(u32) -> Interval;

/// Tensor algebra A = F[t]/(g) with g monic over F.
struct Tensor<'a> {
    f: &'a NumberField,
    g: Vec<Vec<BigRational>>,
    d: usize,
    e: usize,
}

impl Tensor<'_> {
    fn dim(&self) -> usize {
        self.d * self.e
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (d, e) = (self.d, self.e);
        let mut acc = vec![vec![BigRational::zero(); d]; 2 * e - 1];
        for j1 in 0..e {
            let x = &a[j1 * d..(j1 + 1) * d];
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            for j2 in 0..e {
                let y = &b[j2 * d..(j2 + 1) * d];
                if y.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let p = self.f.mul_coords(x, y);
                for (s, v) in acc[j1 + j2].iter_mut().zip(p) {
                    *s += v;
                }
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = std::mem::take(&mut acc[k]);
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            for j in 0..e {
                let p = self.f.mul_coords(&c, &self.g[j]);
                for (s, v) in acc[k - e + j].iter_mut().zip(p) {
                    *s -= v;
                }
            }
        }
        acc.into_iter().take(e).flatten().collect()
    }
}

/// Adjoin a real root of the monic polynomial g (coefficients in F, ascending) to F.
/// `target` encloses the wanted real root; `irreducible` asserts that g is irreducible
/// over F, which skips factoring.
pub fn adjoin_root(
    f: &Field,
    g: &[Vec<BigRational>],
    target: Enclosure,
    irreducible: bool,
    degree_multiple: usize,
) -> Result<Extension, AlgError> {
    let d = f.degree();
    let e = g.len() - 1;
    assert!(g[e].iter().enumerate().all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() }));
    let mut theta = vec![BigRational::zero(); d];
    if d > 1 {
        theta[1] = q(1);
    } else {
        theta[0] = q(0);
    }
    if e == 1 {
        let root: Vec<BigRational> = g[0].iter().map(|c| -c).collect();
        return Ok(Extension { field: f.clone(), theta, root });
    }
    if d * e > degree_cap() {
        return Err(AlgError::DegreeCap(d * e));
    }
    let ts = Tensor { f, g: g[..e].to_vec(), d, e };
    let dim = ts.dim();
    // power sums of the roots of g, as F-elements: P_j = Σ ρ^j
    let mut psums: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d]; e];
    psums[0][0] = q(e as i64);
    for k in 1..e {
        let mut acc = vec![BigRational::zero(); d];
        for i in 1..k {
            let p = f.mul_coords(&g[e - i], &psums[k - i]);
            for (s, v) in acc.iter_mut().zip(p) {
                *s += v;
            }
        }
        for (s, v) in acc.iter_mut().zip(g[e - k].iter()) {
            *s += v * q(k as i64);
        }
        psums[k] = acc.into_iter().map(|x| -x).collect();
    }
    let trace_a = |a: &[BigRational]| -> BigRational {
        let mut t = BigRational::zero();
        for j in 0..e {
            let x = &a[j * d..(j + 1) * d];
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            t += f.trace_coords(&f.mul_coords(x, &psums[j]));
        }
        t
    };
    let mut t_elt = vec![BigRational::zero(); dim];
    t_elt[d] = q(1);
    let mut th_elt = vec![BigRational::zero(); dim];
    th_elt[..d].clone_from_slice(&theta);
    for k in [0i64, 1, -1, 2, -2, 3, -3, 4, 5, 6, 7, 8, 9, 10] {
        let mut gamma = t_elt.clone();
        for i in 0..d {
            gamma[i] = &theta[i] * q(k);
        }
        let mut powers = Vec::with_capacity(dim + 1);
        let mut one = vec![BigRational::zero(); dim];
        one[0] = q(1);
        powers.push(one);
        let mut sums = vec![q(dim as i64)];
        for i in 1..=dim {
            let next = ts.mul(&powers[i - 1], &gamma);
            sums.push(trace_a(&next));
            powers.push(next);
        }
        let r = from_power_sums(&sums, dim);
        if !squarefree_modular(&r) {
            continue;
        }
        let factors = if irreducible { vec![r.clone()] } else { factor_rational(&r, degree_multiple.max(d)) };
        let gamma_enc = |bits: u32| -> Interval {
            let t = target(bits + 2);
            let th = if d == 1 { Interval::point(q(0)) } else { f.root_approx(f.designated(), bits + 8) };
            t.add(&th.scale(&q(k)))
        };
        let h = pick_factor(&factors, &gamma_enc);
        // express θ and t as polynomials in γ
        let mut ech = Echelon::new(dim);
        for p in powers.iter().take(dim) {
            ech.insert(p);
        }
        let p_theta = QPoly::new(ech.solve(&th_elt).expect("γ generates the algebra"));
        let p_t = QPoly::new(ech.solve(&t_elt).expect("γ generates the algebra"));
        let m = h.degree();
        if m == 1 {
            return Ok(Extension { field: f.clone(), theta, root: vec![-h.coeff(0)] });
        }
        if m == d {
            // root lies in F: rewrite through θ
            let th_l = p_theta.rem(&h);
            let z_in_theta = express_generator(&h, &th_l);
            let root_poly = compose_mod(&p_t, &z_in_theta, f.minpoly());
            let root = f.reduce_poly(&root_poly);
            return Ok(Extension { field: f.clone(), theta, root });
        }
        let field = NumberField::from_root(h.clone(), &gamma_enc);
        let pad = |p: QPoly| -> Vec<BigRational> {
            let r = p.rem(&h);
            (0..m).map(|i| r.coeff(i)).collect()
        };
        return Ok(Extension { field, theta: pad(p_theta), root: pad(p_t) });
    }
    Err(AlgError::Internal("no primitive element found".into()))
}

fn pick_factor(factors: &[QPoly], enc: &dyn Fn(u32) -> Interval) -> QPoly {
    if factors.len() == 1 {
        return factors[0].clone();
    }
    let mut bits = 32u32;
    loop {
        let x = enc(bits);
        let hits: Vec<&QPoly> = factors.iter().filter(|h| eval_poly(h, &x, bits + 32).contains_zero()).collect();
        if hits.len() == 1 {
            return hits[0].clone();
        }
        assert!(!hits.is_empty(), "enclosure lost the root");
        bits *= 2;
    }
}

/// In Q[z]/(h), with α = a(z) generating the same field, find Z with z = Z(α).
fn express_generator(h: &QPoly, a: &QPoly) -> QPoly {
    let m = h.degree();
    let mut ech = Echelon::new(m);
    let mut p = QPoly::one();
    for _ in 0..m {
        let v: Vec<BigRational> = (0..m).map(|i| p.coeff(i)).collect();
        ech.insert(&v);
        p = p.mul(a).rem(h);
    }
    let mut z = vec![BigRational::zero(); m];
    z[1] = q(1);
    QPoly::new(ech.solve(&z).expect("element generates the field"))
}

/// p(s(x)) mod f.
fn compose_mod(p: &QPoly, s: &QPoly, f: &QPoly) -> QPoly {
    let mut acc = QPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(s).add(&QPoly::constant(c.clone())).rem(f);
    }
    acc
}

/// Cached composita keyed by the two presentations.
#[derive(Clone, Debug)]
pub struct Compositum {
    pub field: Field,
    pub left: Vec<BigRational>,
    pub right: Vec<BigRational>,
}

fn comp_cache() -> &'static Mutex<HashMap<(FieldKey, FieldKey), Compositum>> {
    static C: OnceLock<Mutex<HashMap<(FieldKey, FieldKey), Compositum>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn generator_coords(f: &Field) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); f.degree()];
    if f.degree() > 1 {
        v[1] = q(1);
    }
    v
}

/// Smallest real field containing both (as subfields of ℝ via designated roots).
pub fn compositum(a: &Field, b: &Field) -> Result<Compositum, AlgError> {
    if NumberField::same(a, b) {
        let g = generator_coords(a);
        return Ok(Compositum { field: a.clone(), left: g.clone(), right: g });
    }
    if a.is_rational() {
        return Ok(Compositum { field: b.clone(), left: vec![BigRational::zero(); b.degree()], right: generator_coords(b) });
    }
    if b.is_rational() {
        return Ok(Compositum { field: a.clone(), left: generator_coords(a), right: vec![BigRational::zero(); a.degree()] });
    }
    let key = (a.key.clone(), b.key.clone());
    if let Some(c) = comp_cache().lock().unwrap().get(&key) {
        return Ok(c.clone());
    }
    let rkey = (b.key.clone(), a.key.clone());
    if let Some(c) = comp_cache().lock().unwrap().get(&rkey) {
        return Ok(Compositum { field: c.field.clone(), left: c.right.clone(), right: c.left.clone() });
    }
    let (big, small, swapped) = if a.degree() >= b.degree() { (a, b, false) } else { (b, a, true) };
    let d = big.degree();
    let g: Vec<Vec<BigRational>> = small
        .minpoly()
        .coeffs()
        .iter()
        .map(|c| {
            let mut v = vec![BigRational::zero(); d];
            v[0] = c.clone();
            v
        })
        .collect();
    let s2 = small.clone();
    let enc = move |bits: u32| s2.root_approx(s2.designated(), bits);
    let ext = adjoin_root(big, &g, &enc, false, d.lcm(&small.degree()))?;
    let (left, right) = if swapped { (ext.root, ext.theta) } else { (ext.theta, ext.root) };
    let c = Compositum { field: ext.field, left, right };
    comp_cache().lock().unwrap().insert(key, c.clone());
    Ok(c)
}

/// Record that `small` embeds into `big` with its generator sent to `img`.
pub(crate) fn register_embedding(small: &Field, big: &Field, img: Vec<BigRational>) {
    let c = Compositum { field: big.clone(), left: img, right: generator_coords(big) };
    comp_cache().lock().unwrap().insert((small.key.clone(), big.key.clone()), c);
}

/// Equality of two real number fields (as subsets of ℝ).
pub fn fields_equal(a: &Field, b: &Field) -> bool {
    if NumberField::same(a, b) {
        return true;
    }
    if a.degree() != b.degree() {
        return false;
    }
    if a.is_rational() {
        return true;
    }
    if let (Some(x), Some(y)) = (a.quadratic_d(), b.quadratic_d()) {
        return x == y;
    }
    match compositum(a, b) {
        Ok(c) => c.field.degree() == a.degree(),
        Err(_) => false,
    }
}

/// Whether `small` ⊆ `big` as real fields.
pub fn field_contains(big: &Field, small: &Field) -> bool {
    if small.is_rational() || NumberField::same(big, small) {
        return true;
    }
    if big.degree() % small.degree() != 0 {
        return false;
    }
    match compositum(big, small) {
        Ok(c) => c.field.degree() == big.degree(),
        Err(_) => false,
    }
}

/// Rational square root test: Some(r) with r ≥ 0 and r² = x.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let dd = x.denom().sqrt();
    if &n * &n == *x.numer() && &dd * &dd == *x.denom() {
        Some(BigRational::new(n, dd))
    } else {
        None
    }
}

/// Write an integer as s²·D with D squarefree and s > 0.
pub fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() { -1 } else { 1 };
    let m = n.abs();
    if m.is_zero() || m.is_one() {
        return (BigInt::one(), m * sign);
    }
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    for (p, e) in num_prime::nt_funcs::factorize(m.to_biguint().unwrap()) {
        let p = BigInt::from(p);
        s *= p.pow((e / 2) as u32);
        if e % 2 == 1 {
            d *= p;
        }
    }
    (s, d * sign)
}

pub(crate) fn lcm_den(c: &[BigRational]) -> BigInt {
    c.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()))
}
