//! Text syntax for algebras, their elements, `ZR` and Witt vectors.
//!
//! ```text
//! descriptor  := 'p=' int (',' factor | ',product=[' factor (';' factor)* ']')?
//! factor      := 'e=' int (',mod=' list)? | 'mod=' list
//! field_elem  := int | list | '(' field_elem (';' field_elem)* ')'
//! list        := '[' int (',' int)* ']'
//! element     := sign? term (('+' | '-') term)*
//! term        := (int '*')? '[' field_elem ']' | int
//! witt_vector := '(' field_elem (',' field_elem)* ')'
//! ```
//!
//! A bare integer `k` in an element denotes `k·[1]`. A prime-field factor is
//! written as a decimal in `[0, p)`, an extension factor as its coordinate
//! list, and an element of a product as a parenthesised tuple with one entry
//! per factor. Whitespace is allowed between tokens of every form except the
//! descriptor. Errors report the byte offset of the first offending character.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monoid_algebra::MonoidAlgebraElement;
use crate::perfect_algebra::{Algebra, AlgebraDescriptor, AlgebraElement, FactorSpec};
use crate::witt_core::WittVector;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        self.error_at(self.pos, msg)
    }

    fn error_at<T>(&self, offset: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(offset, msg))
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.unexpected(&format!("`{}`", c as char))
        }
    }

    fn expect_literal(&mut self, lit: &str) -> Result<()> {
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.error(format!("expected `{lit}`"))
        }
    }

    fn unexpected<T>(&mut self, wanted: &str) -> Result<T> {
        match self.peek() {
            None => self.error(format!("expected {wanted}, found end of input")),
            Some(_) => {
                let ch = self.src[self.pos..].chars().next().expect("not at end");
                self.error(format!("expected {wanted}, found `{ch}`"))
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.unexpected("end of input");
        }
        Ok(())
    }

    /// Unsigned decimal digits at the current position.
    fn digits(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.unexpected("a number");
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn big(&mut self) -> Result<BigInt> {
        let (_, s) = self.digits()?;
        Ok(s.parse().expect("decimal digits"))
    }

    fn small<T: std::str::FromStr>(&mut self) -> Result<T> {
        let (start, s) = self.digits()?;
        s.parse().or_else(|_| self.error_at(start, format!("number {s} is too large")))
    }

    fn residue(&mut self, p: u64) -> Result<u64> {
        let (start, s) = self.digits()?;
        match s.parse::<u64>() {
            Ok(v) if v < p => Ok(v),
            _ => self.error_at(start, format!("coefficient {s} is out of range for F_{p}")),
        }
    }

    fn list(&mut self, p: Option<u64>) -> Result<(usize, Vec<u64>)> {
        self.expect(b'[')?;
        let start = self.pos - 1;
        let mut out = Vec::new();
        loop {
            out.push(match p {
                Some(p) => self.residue(p)?,
                None => self.small()?,
            });
            if self.eat(b']') {
                return Ok((start, out));
            }
            if !self.eat(b',') {
                return self.unexpected("`,` or `]`");
            }
        }
    }

    fn factor_coords(&mut self, p: u64, degree: usize) -> Result<Vec<u64>> {
        if degree == 1 {
            if self.peek() == Some(b'[') {
                return self.error("a prime-field coordinate is written as a plain integer");
            }
            return Ok(vec![self.residue(p)?]);
        }
        if self.peek() != Some(b'[') {
            return self.unexpected(&format!("a coordinate list of length {degree}"));
        }
        let (start, coords) = self.list(Some(p))?;
        if coords.len() != degree {
            return self.error_at(
                start,
                format!("expected {degree} coordinates, found {}", coords.len()),
            );
        }
        Ok(coords)
    }

    fn field_element(&mut self, alg: &Algebra) -> Result<AlgebraElement> {
        let p = alg.characteristic();
        let factors = alg.factors();
        if factors.len() == 1 {
            let coords = self.factor_coords(p, factors[0].degree())?;
            return Ok(alg.element(&coords).expect("validated coordinates"));
        }
        self.skip_ws();
        let open = self.pos;
        self.expect(b'(')?;
        let mut parts = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            if i > 0 && !self.eat(b';') {
                if self.peek() == Some(b')') {
                    return self.error_at(open, format!("expected {} factors", factors.len()));
                }
                return self.unexpected("`;`");
            }
            parts.push(self.factor_coords(p, f.degree())?);
        }
        if !self.eat(b')') {
            if self.peek() == Some(b';') {
                return self.error_at(open, format!("expected {} factors", factors.len()));
            }
            return self.unexpected("`)`");
        }
        Ok(alg.element_from_factors(&parts).expect("validated coordinates"))
    }

    fn term(&mut self, alg: &Algebra) -> Result<MonoidAlgebraElement> {
        if self.eat(b'[') {
            let r = self.field_element(alg)?;
            self.expect(b']')?;
            return Ok(MonoidAlgebraElement::symbol(&r));
        }
        let k = self.big()?;
        if self.eat(b'*') {
            self.expect(b'[')?;
            let r = self.field_element(alg)?;
            self.expect(b']')?;
            Ok(MonoidAlgebraElement::monomial(k, &r))
        } else {
            Ok(MonoidAlgebraElement::integer(alg, k))
        }
    }

    fn element(&mut self, alg: &Algebra) -> Result<MonoidAlgebraElement> {
        let mut negate = self.eat(b'-');
        if !negate {
            self.eat(b'+');
        }
        let mut acc = MonoidAlgebraElement::zero(alg);
        loop {
            let t = self.term(alg)?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn witt_vector(&mut self, alg: &Algebra) -> Result<WittVector> {
        self.expect(b'(')?;
        let mut components = vec![self.field_element(alg)?];
        while self.eat(b',') {
            components.push(self.field_element(alg)?);
        }
        self.expect(b')')?;
        Ok(WittVector::new(alg, components).expect("components share the algebra"))
    }

    fn factor_spec(&mut self) -> Result<FactorSpec> {
        if self.src[self.pos..].starts_with("mod=") {
            self.pos += 4;
            let (_, m) = self.list(None)?;
            return Ok(FactorSpec::with_modulus(m));
        }
        self.expect_literal("e=")?;
        let e: usize = self.small()?;
        if self.src[self.pos..].starts_with(",mod=") {
            self.pos += 5;
            let (start, m) = self.list(None)?;
            if m.len() != e + 1 {
                return self.error_at(start, format!("a degree-{e} modulus has {} coefficients", e + 1));
            }
            return Ok(FactorSpec::with_modulus(m));
        }
        Ok(FactorSpec::degree(e))
    }

    fn descriptor(&mut self) -> Result<(u64, Vec<FactorSpec>)> {
        self.expect_literal("p=")?;
        let p: u64 = self.small()?;
        if self.pos == self.src.len() {
            return Ok((p, vec![FactorSpec::degree(1)]));
        }
        self.expect_literal(",")?;
        if self.src[self.pos..].starts_with("product=[") {
            self.pos += "product=[".len();
            let mut specs = vec![self.factor_spec()?];
            loop {
                self.skip_ws();
                if self.src[self.pos..].starts_with(']') {
                    self.pos += 1;
                    break;
                }
                self.expect_literal(";")?;
                self.skip_ws();
                specs.push(self.factor_spec()?);
            }
            return Ok((p, specs));
        }
        Ok((p, vec![self.factor_spec()?]))
    }
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Parser<'_>) -> Result<T>) -> Result<T> {
    let mut parser = Parser::new(src);
    let out = f(&mut parser)?;
    parser.finish()?;
    Ok(out)
}

/// An element of `R`.
pub fn parse_field_element(src: &str, algebra: &Algebra) -> Result<AlgebraElement> {
    whole(src, |p| p.field_element(algebra))
}

/// An element of `ZR`, e.g. `3*[1] - [0]`.
pub fn parse_element(src: &str, algebra: &Algebra) -> Result<MonoidAlgebraElement> {
    whole(src, |p| p.element(algebra))
}

/// A Witt vector `(r0, r1, ...)`.
pub fn parse_witt_vector(src: &str, algebra: &Algebra) -> Result<WittVector> {
    whole(src, |p| p.witt_vector(algebra))
}

/// A factor `e=<e>`, `e=<e>,mod=[...]` or `mod=[...]`.
pub fn parse_factor_spec(src: &str) -> Result<FactorSpec> {
    whole(src, |p| p.factor_spec())
}

/// A descriptor such as `p=5,e=2,mod=[2,1,1]`, `p=3` or
/// `p=2,product=[e=1; e=2]`, validated by [`AlgebraDescriptor::new`].
pub fn parse_descriptor(src: &str) -> Result<Algebra> {
    let (p, specs) = whole(src, |p| p.descriptor())?;
    AlgebraDescriptor::new(p, &specs)
}
