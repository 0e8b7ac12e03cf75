//! Line-based exchange format for [`WittPolynomialSet`]:
//!
//! ```text
//! witt-poly v1 p=2 n=2
//! S 0: 1 x0 ; 1 y0
//! S 1: 1 x1 ; 1 y1 ; -1 x0 y0
//! P 0: 1 x0 y0
//! P 1: ...
//! ```
//!
//! Terms are `<integer> <monomial>` separated by ` ; `, monomials are
//! products like `x0^3 y1`, or `1` for the constant monomial, and appear in
//! [`graded_order`](super::graded_order). The zero polynomial is written `0`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{
    build_witt_polynomials_with, variable_names, GenerationBounds, IntegerPolynomial, Monomial,
    WittOperation, WittPolynomialSet,
};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Cache file for `(p, n)`, e.g. `witt-poly-v1-p2-n3.txt`.
pub fn cache_file_name(p: u64, n: usize) -> String {
    format!("witt-poly-v{FORMAT_VERSION}-p{p}-n{n}.txt")
}

impl WittPolynomialSet {
    /// The set in exchange format, one line per polynomial plus the header,
    /// each terminated by a newline.
    pub fn to_exchange_string(&self) -> String {
        let names = variable_names(self.n);
        let mut out = format!("witt-poly v{FORMAT_VERSION} p={} n={}\n", self.p, self.n);
        for op in [WittOperation::Sum, WittOperation::Product] {
            for (i, f) in self.polynomials(op).iter().enumerate() {
                write!(out, "{op} {i}: ").expect("writing to a String");
                f.write_terms(&mut out, &names).expect("writing to a String");
                out.push('\n');
            }
        }
        out
    }
}

struct LineParser<'a> {
    src: &'a str,
    base: usize,
    pos: usize,
}

impl<'a> LineParser<'a> {
    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.base + self.pos, message: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.error(format!("expected `{lit}`"))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.error("expected digits");
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().or_else(|_| {
            self.pos = start;
            self.error("number out of range")
        })
    }

    fn at_end(&self) -> bool {
        self.pos == self.src.len()
    }
}

fn parse_header(line: &str) -> Result<(u64, usize)> {
    let mut lp = LineParser { src: line, base: 0, pos: 0 };
    lp.expect("witt-poly v")?;
    let v: u32 = lp.number()?;
    if v != FORMAT_VERSION {
        lp.pos = "witt-poly v".len();
        return lp.error(format!("unsupported format version {v}"));
    }
    lp.expect(" p=")?;
    let p = lp.number()?;
    lp.expect(" n=")?;
    let n = lp.number()?;
    if !lp.at_end() {
        return lp.error("trailing characters after header");
    }
    if n == 0 {
        return Err(Error::Parse { offset: line.len() - 1, message: "level must be at least 1".into() });
    }
    Ok((p, n))
}

fn parse_monomial_factor(lp: &mut LineParser<'_>, tok: &str, names: &[String], exps: &mut [u32]) -> Result<()> {
    let (name, exp) = match tok.split_once('^') {
        Some((name, e)) => (name, Some(e)),
        None => (tok, None),
    };
    let Some(v) = names.iter().position(|s| s == name) else {
        return lp.error(format!("unknown variable `{name}`"));
    };
    let e: u32 = match exp {
        None => 1,
        Some(e) if !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit()) => match e.parse() {
            Ok(e) if e >= 1 => e,
            _ => return lp.error(format!("bad exponent `{e}`")),
        },
        Some(e) => return lp.error(format!("bad exponent `{e}`")),
    };
    if exps[v] != 0 {
        return lp.error(format!("variable `{name}` repeated"));
    }
    exps[v] = e;
    Ok(())
}

fn parse_polynomial(lp: &mut LineParser<'_>, names: &[String]) -> Result<IntegerPolynomial> {
    let arity = names.len();
    if lp.rest() == "0" {
        lp.pos += 1;
        return Ok(IntegerPolynomial::zero(arity));
    }
    let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
    let mut seen = BTreeSet::new();
    loop {
        let term_end = lp.rest().find(" ; ").unwrap_or(lp.rest().len());
        let term = &lp.rest()[..term_end];
        let term_start = lp.pos;
        let mut tokens = term.split(' ');
        let coeff = tokens.next().unwrap_or("");
        let c: BigInt = match coeff.parse() {
            Ok(c) if !coeff.starts_with('+') => c,
            _ => return lp.error(format!("bad coefficient `{coeff}`")),
        };
        if c.is_zero() {
            return lp.error("zero coefficient");
        }
        let mut exps = vec![0u32; arity];
        let mut tok_pos = term_start + coeff.len() + 1;
        let mut factors = 0;
        for tok in tokens {
            lp.pos = tok_pos;
            if tok == "1" && factors == 0 {
                factors = usize::MAX;
            } else if factors == usize::MAX {
                return lp.error("constant monomial `1` must stand alone");
            } else {
                parse_monomial_factor(lp, tok, names, &mut exps)?;
                factors += 1;
            }
            tok_pos += tok.len() + 1;
        }
        if factors == 0 {
            lp.pos = term_start + coeff.len();
            return lp.error("missing monomial");
        }
        let m: Monomial = exps.into_boxed_slice();
        if !seen.insert(m.clone()) {
            lp.pos = term_start;
            return lp.error("repeated monomial");
        }
        terms.push((m, c));
        lp.pos = term_start + term_end;
        if lp.at_end() {
            break;
        }
        lp.expect(" ; ")?;
    }
    Ok(IntegerPolynomial::from_terms(arity, terms))
}

/// Parses a set in exchange format. Parse errors carry the byte offset into
/// `src`.
pub fn parse_set(src: &str) -> Result<WittPolynomialSet> {
    let mut offset = 0;
    let mut lines = src.split_inclusive('\n').map(|l| {
        let start = offset;
        offset += l.len();
        (start, l.strip_suffix('\n').unwrap_or(l))
    });
    let (_, header) = lines.next().ok_or(Error::Parse { offset: 0, message: "empty input".into() })?;
    let (p, n) = parse_header(header)?;
    let names = variable_names(n);
    let mut sums = Vec::with_capacity(n);
    let mut products = Vec::with_capacity(n);
    for op in [WittOperation::Sum, WittOperation::Product] {
        for i in 0..n {
            let Some((base, line)) = lines.next() else {
                return Err(Error::Parse { offset: src.len(), message: format!("missing line `{op} {i}`") });
            };
            let mut lp = LineParser { src: line, base, pos: 0 };
            lp.expect(&format!("{op} {i}: "))?;
            let f = parse_polynomial(&mut lp, &names)?;
            match op {
                WittOperation::Sum => sums.push(f),
                WittOperation::Product => products.push(f),
            }
        }
    }
    if let Some((base, line)) = lines.next() {
        if !line.is_empty() || lines.next().is_some() {
            return Err(Error::Parse { offset: base, message: "unexpected trailing content".into() });
        }
    }
    WittPolynomialSet::from_parts(p, n, sums, products)
}

/// The set for `(p, n)`: read from `cache_dir` when a cached file exists,
/// otherwise generated and, if a directory is given, written there.
///
/// The bounds are enforced even when a cached file exists.
pub fn load_or_build(
    p: u64,
    n: usize,
    bounds: &GenerationBounds,
    cache_dir: Option<&Path>,
) -> Result<WittPolynomialSet> {
    bounds.check(p, n)?;
    let Some(dir) = cache_dir else {
        return build_witt_polynomials_with(p, n, bounds);
    };
    let path = dir.join(cache_file_name(p, n));
    if let Ok(src) = fs::read_to_string(&path) {
        let set = parse_set(&src)?;
        if set.characteristic() != p || set.level() != n {
            return Err(Error::Io(format!("{} holds the set for p={}, n={}", path.display(), set.p, set.n)));
        }
        return Ok(set);
    }
    let set = build_witt_polynomials_with(p, n, bounds)?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{}.{}.tmp", cache_file_name(p, n), std::process::id()));
    fs::write(&tmp, set.to_exchange_string())?;
    fs::rename(&tmp, &path)?;
    Ok(set)
}
