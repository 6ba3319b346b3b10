//! Subfields generated by elements of a number field.

use super::element::AlgebraicNumber;
use super::field::{field_contains, fields_equal, quadratic_field, rationals, square_part, Field, NumberField};
use super::interval::Interval;
use super::poly::q;
use super::qlinalg::Echelon;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

/// A subfield K of a parent field F, presented by its own generator and the
/// image of that generator in F.
#[derive(Clone)]
pub struct Subfield {
    field: Field,
    parent: Field,
    gen_image: AlgebraicNumber,
    basis: Echelon,
}

impl std::fmt::Debug for Subfield {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} inside {}", self.field.describe(), self.parent.describe())
    }
}

impl Subfield {
    fn build(field: Field, parent: &Field, gen_image: AlgebraicNumber) -> Self {
        let m = field.degree();
        let mut basis = Echelon::new(parent.degree());
        let mut p = AlgebraicNumber::one_in(parent);
        for _ in 0..m {
            basis.insert(p.coords());
            p = &p * &gen_image;
        }
        Subfield { field, parent: parent.clone(), gen_image, basis }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn parent(&self) -> &Field {
        &self.parent
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn generator_image(&self) -> &AlgebraicNumber {
        &self.gen_image
    }

    /// Coordinates in K of a parent element, if it lies in K.
    pub fn to_sub(&self, x: &AlgebraicNumber) -> Option<AlgebraicNumber> {
        let x = x.coerce_to(&self.parent).ok()?;
        let c = self.basis.solve(x.coords())?;
        Some(AlgebraicNumber::new(&self.field, c))
    }

    pub fn contains_element(&self, x: &AlgebraicNumber) -> bool {
        self.to_sub(x).is_some()
    }

    pub fn to_parent(&self, y: &AlgebraicNumber) -> AlgebraicNumber {
        let y = y.coerce_to(&self.field).expect("element of the subfield");
        y.map_into(&self.parent, self.gen_image.coords())
    }

    /// Containment of another subfield (linear algebra when both share a parent,
    /// composita otherwise).
    pub fn contains(&self, other: &Subfield) -> bool {
        if NumberField::same(&self.parent, &other.parent) {
            return self.contains_element(&other.gen_image);
        }
        field_contains(&self.field, &other.field)
    }

    pub fn same_as(&self, other: &Subfield) -> bool {
        if NumberField::same(&self.parent, &other.parent) {
            return self.degree() == other.degree() && self.contains(other);
        }
        fields_equal(&self.field, &other.field)
    }

    /// Whether the embedding of the parent sending θ to real root `root`
    /// restricts to the identity on K.
    pub fn is_identity_under(&self, root: usize) -> bool {
        if self.field.is_rational() {
            return true;
        }
        let k_roots = self.field.root_intervals();
        let mut bits = 32u32;
        loop {
            let v = self.gen_image.approx_under(root, bits);
            let mut hits = Vec::new();
            for i in 0..k_roots.len() {
                let r = self.field.root_approx(i, bits);
                if r.intersects(&v) {
                    hits.push(i);
                }
            }
            if hits.len() == 1 {
                return hits[0] == self.field.designated();
            }
            if hits.is_empty() {
                // σ(γ) is a non-real conjugate cannot happen for a real embedding
                return false;
            }
            bits *= 2;
        }
    }
}

/// Smallest subfield of `parent` containing the given elements.
pub fn subfield_generated(parent: &Field, elements: &[AlgebraicNumber]) -> Subfield {
    let mut gens: Vec<AlgebraicNumber> = elements
        .iter()
        .map(|x| x.coerce_to(parent).expect("element lies in the parent field"))
        .filter(|x| x.as_rational().is_none())
        .collect();
    gens.sort_by(|a, b| a.coords().cmp(b.coords()));
    gens.dedup_by(|a, b| a.coords() == b.coords());
    if gens.is_empty() {
        let q = rationals();
        return Subfield::build(q, parent, AlgebraicNumber::zero_in(parent));
    }
    // ℚ-span closure under multiplication
    let d = parent.degree();
    let mut span = Echelon::new(d);
    let one = AlgebraicNumber::one_in(parent);
    span.insert(one.coords());
    let mut queue = vec![one];
    let mut idx = 0;
    while idx < queue.len() {
        let b = queue[idx].clone();
        idx += 1;
        for g in &gens {
            let p = &b * g;
            if span.insert(p.coords()) {
                queue.push(p);
            }
        }
    }
    let m = span.rank();
    let alpha = primitive_element(&gens, m);
    from_generator(parent, alpha, m)
}

fn primitive_element(gens: &[AlgebraicNumber], m: usize) -> AlgebraicNumber {
    for g in gens {
        if g.minimal_polynomial().degree() == m {
            return g.clone();
        }
    }
    for c in 1i64.. {
        let mut acc = gens[0].clone();
        let mut w = q(1);
        for g in &gens[1..] {
            w *= q(c);
            acc = &acc + &g.scale(&w);
        }
        if acc.minimal_polynomial().degree() == m {
            return acc;
        }
    }
    unreachable!()
}

fn from_generator(parent: &Field, alpha: AlgebraicNumber, m: usize) -> Subfield {
    let mp = alpha.minimal_polynomial();
    debug_assert_eq!(mp.degree(), m);
    if m == 1 {
        return Subfield::build(rationals(), parent, AlgebraicNumber::zero_in(parent));
    }
    if m == 2 {
        // t² + bt + c: √D = (2α + b)/r where b² - 4c = r²D
        let b = mp.coeff(1);
        let c = mp.coeff(0);
        let disc = &b * &b - q(4) * &c;
        let den = disc.denom().clone();
        let num = disc.numer() * &den;
        let (s, dd) = square_part(&num);
        let r = BigRational::new(s, den);
        let mut beta = (&alpha.scale(&q(2)) + &AlgebraicNumber::constant(parent, b)).scale(&(BigRational::one() / r));
        if beta.sign() < 0 {
            beta = -beta;
        }
        return Subfield::build(quadratic_field(&dd), parent, beta);
    }
    // scale α so that its minimal polynomial is integral
    let scale = (0..m).fold(BigInt::one(), |acc, i| acc.lcm(mp.coeff(i).denom()));
    let alpha = alpha.scale(&BigRational::from_integer(scale));
    let mp = alpha.minimal_polynomial();
    let a2 = alpha.clone();
    let field = NumberField::from_root(mp, &move |bits| -> Interval { a2.approx(bits) });
    Subfield::build(field, parent, alpha)
}

/// Field of a single element, as a subfield of its own field.
pub fn field_of(x: &AlgebraicNumber) -> Subfield {
    subfield_generated(x.field(), std::slice::from_ref(x))
}
