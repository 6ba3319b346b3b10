//! Literal grammar for real algebraic numbers.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := number | 'sqrt' '(' expr ')' | '(' expr ')'
//!         | 'cos' '(' 'pi' '/' integer ')'
//!         | 'root' '(' '[' frac (',' frac)* ']' ',' frac ',' frac ')'
//! number := digits ['.' digits]
//! frac   := ['-'] number ['/' digits]
//! ```
//!
//! `root([c0, ..., cn], lo, hi)` is the unique real root in (lo, hi) of
//! c0 + c1·t + ... + cn·tⁿ.

use crate::algnum::factor::factor_rational;
use crate::algnum::poly::{count_roots, isolate_real_roots, sturm_sequence, QPoly};
use crate::algnum::{adjoin_sqrt, cos_pi_over, AlgError, AlgebraicNumber, NumberField};
use crate::algnum::subfield::subfield_generated;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {col}: {msg}")]
pub struct ExprError {
    /// 1-based column within the parsed string.
    pub col: usize,
    pub msg: String,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { col: col + 1, msg: msg.into() })
}

fn alg(col: usize, e: AlgError) -> ExprError {
    ExprError { col: col + 1, msg: e.to_string() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let k = kw.as_bytes();
        if self.s[self.pos..].starts_with(k) {
            let next = self.s.get(self.pos + k.len()).copied();
            if !next.is_some_and(|c| c.is_ascii_alphanumeric()) {
                self.pos += k.len();
                return true;
            }
        }
        false
    }

    fn expr(&mut self) -> Result<AlgebraicNumber, ExprError> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.try_add(&t).map_err(|e| alg(at, e))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.try_sub(&t).map_err(|e| alg(at, e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraicNumber, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = acc.try_mul(&t).map_err(|e| alg(at, e))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = acc.try_div(&t).map_err(|e| alg(at, e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<AlgebraicNumber, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<AlgebraicNumber, ExprError> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(AlgebraicNumber::rational(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                if self.keyword("sqrt") {
                    self.expect(b'(')?;
                    let at = self.pos;
                    let v = self.expr()?;
                    self.expect(b')')?;
                    adjoin_sqrt(&v, true).map(|r| r.1).map_err(|e| alg(at, e))
                } else if self.keyword("cos") {
                    self.expect(b'(')?;
                    if !self.keyword("pi") {
                        return err(self.pos, "expected 'pi'");
                    }
                    self.expect(b'/')?;
                    let at = self.pos;
                    let m = self.number()?;
                    if !m.is_integer() || m < BigRational::from_integer(2.into()) {
                        return err(at, "cos(pi/m) needs an integer m >= 2");
                    }
                    self.expect(b')')?;
                    let m: u64 = m.to_integer().try_into().map_err(|_| ExprError { col: at + 1, msg: "m too large".into() })?;
                    Ok(cos_pi_over(m))
                } else if self.keyword("root") {
                    self.root()
                } else {
                    err(start, "unknown function")
                }
            }
            Some(_) => err(self.pos, "unexpected character"),
            None => err(self.pos, "unexpected end of input"),
        }
    }

    fn signed_number(&mut self) -> Result<BigRational, ExprError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let mut v = self.number()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.number()?;
            if d.is_zero() {
                return err(at, "division by zero");
            }
            v /= d;
        }
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Option<BigInt> {
        let st = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if st == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[st..self.pos]).ok()?.parse().ok()
    }

    /// digits ['.' digits] ['/' digits]; the fraction slash binds tighter than division.
    fn number(&mut self) -> Result<BigRational, ExprError> {
        self.skip_ws();
        let at = self.pos;
        let Some(int) = self.digits() else { return err(at, "expected a number") };
        let mut v = BigRational::from_integer(int);
        if self.s.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let fst = self.pos;
            let Some(frac) = self.digits() else { return err(self.pos, "expected digits after '.'") };
            let scale = num_traits::pow(BigInt::from(10), self.pos - fst);
            v += BigRational::new(frac, scale);
        }
        Ok(v)
    }

    fn root(&mut self) -> Result<AlgebraicNumber, ExprError> {
        let at = self.pos;
        self.expect(b'(')?;
        self.expect(b'[')?;
        let mut c = vec![self.signed_number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            c.push(self.signed_number()?);
        }
        self.expect(b']')?;
        self.expect(b',')?;
        let lo = self.signed_number()?;
        self.expect(b',')?;
        let hi = self.signed_number()?;
        self.expect(b')')?;
        root_in_interval(QPoly::new(c), &lo, &hi).map_err(|m| ExprError { col: at + 1, msg: m })
    }
}

/// The unique real root of p in the open interval (lo, hi).
pub fn root_in_interval(p: QPoly, lo: &BigRational, hi: &BigRational) -> Result<AlgebraicNumber, String> {
    if p.is_zero() || p.degree() == 0 {
        return Err("root() needs a nonconstant polynomial".into());
    }
    if lo >= hi {
        return Err("root() needs lo < hi".into());
    }
    let inside = |f: &QPoly| -> usize {
        let seq = sturm_sequence(f);
        let mut k = count_roots(&seq, lo, hi);
        if f.eval(hi).is_zero() {
            k -= 1;
        }
        k
    };
    let cands: Vec<QPoly> = factor_rational(&p.monic(), 1).into_iter().filter(|f| inside(f) > 0).collect();
    if cands.len() != 1 || inside(&cands[0]) != 1 {
        return Err("root() interval must isolate exactly one root".into());
    }
    let f = cands.into_iter().next().unwrap();
    if f.degree() == 1 {
        return Ok(AlgebraicNumber::rational(-f.coeff(0) / f.coeff(1)));
    }
    // f is irreducible of degree ≥ 2, so no root equals lo or hi
    let mut idx = None;
    for (i, mut r) in isolate_real_roots(&f).into_iter().enumerate() {
        loop {
            if r.hi <= *lo || r.lo >= *hi {
                break;
            }
            if r.lo > *lo && r.hi < *hi {
                idx = Some(i);
                break;
            }
            r.bisect(&f);
        }
        if idx.is_some() {
            break;
        }
    }
    let idx = idx.ok_or_else(|| "root() interval must isolate exactly one root".to_string())?;
    let field = NumberField::with_designated(f, idx);
    let g = AlgebraicNumber::generator(&field);
    // canonical presentation for quadratic generators
    if field.degree() == 2 {
        let k = subfield_generated(&field, std::slice::from_ref(&g));
        return Ok(k.to_sub(&g).expect("generator lies in its own field"));
    }
    Ok(g)
}

/// Parse and evaluate an expression.
pub fn parse_expr(s: &str) -> Result<AlgebraicNumber, ExprError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    Ok(v)
}
