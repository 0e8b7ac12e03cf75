//! Universal Witt addition and multiplication polynomials.
//!
//! With ghost components `w_i(X) = Σ_{j<=i} p^j X_j^{p^{i-j}}`, the
//! polynomials `S_i` and `P_i` are the unique solutions of
//!
//! ```text
//! w_i(S_0, ..., S_i) = w_i(X) + w_i(Y)
//! w_i(P_0, ..., P_i) = w_i(X) · w_i(Y)
//! ```
//!
//! They are solved for one index at a time over the rationals and every
//! coefficient is checked to be an integer. Reduced mod `p` and evaluated in a
//! perfect algebra they give a second implementation of `W_n(R)` arithmetic.
//!
//! Variables of a level-`n` set are ordered `x0, ..., x{n-1}, y0, ..., y{n-1}`.

mod exchange;
mod sparse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use exchange::{cache_file_name, load_or_build, parse_set, FORMAT_VERSION};
pub use sparse::{
    graded_order, Coefficient, IntegerPolynomial, Monomial, RationalPolynomial, SparsePolynomial,
};

use crate::error::{Error, Result};
use crate::perfect_algebra::{is_prime, AlgebraElement};
use crate::witt_core::WittVector;

/// `Σ_{j<=i} p^j F_j^{p^{i-j}}` for the family `F_0, ..., F_i`.
///
/// Panics if the family has fewer than `i + 1` members.
pub fn ghost<C: Coefficient>(p: u64, i: usize, family: &[SparsePolynomial<C>]) -> SparsePolynomial<C> {
    assert!(family.len() > i, "ghost component {i} needs {} polynomials", i + 1);
    let arity = family[0].arity();
    let mut acc = SparsePolynomial::zero(arity);
    let mut pj = BigInt::one();
    for (j, f) in family[..=i].iter().enumerate() {
        let e = BigInt::from(p).pow((i - j) as u32);
        let e = u64::try_from(e).expect("ghost exponent fits in u64");
        acc = acc.add(&f.pow(e).scale(&C::from(pj.clone())));
        pj *= p;
    }
    acc
}

/// `count` consecutive variables starting at `offset`, in `arity` variables.
pub fn variables<C: Coefficient>(arity: usize, offset: usize, count: usize) -> Vec<SparsePolynomial<C>> {
    (offset..offset + count).map(|i| SparsePolynomial::variable(arity, i)).collect()
}

/// Variable names of a level-`n` set.
pub fn variable_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).chain((0..n).map(|i| format!("y{i}"))).collect()
}

/// The two Witt operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WittOperation {
    Sum,
    Product,
}

impl WittOperation {
    pub fn tag(self) -> char {
        match self {
            WittOperation::Sum => 'S',
            WittOperation::Product => 'P',
        }
    }
}

impl fmt::Display for WittOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Largest level generated for each prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationBounds {
    limits: BTreeMap<u64, usize>,
    other: usize,
}

impl Default for GenerationBounds {
    fn default() -> Self {
        GenerationBounds { limits: [(2, 4), (3, 4), (5, 3), (7, 2)].into_iter().collect(), other: 1 }
    }
}

impl GenerationBounds {
    pub fn max_level(&self, p: u64) -> usize {
        self.limits.get(&p).copied().unwrap_or(self.other)
    }

    pub fn with_limit(mut self, p: u64, n: usize) -> Self {
        self.limits.insert(p, n);
        self
    }

    /// Every `(p, n)` with `1 <= n <= max_level(p)`, over the primes that
    /// have an explicit limit.
    pub fn configurations(&self) -> Vec<(u64, usize)> {
        self.limits.iter().flat_map(|(&p, &m)| (1..=m).map(move |n| (p, n))).collect()
    }

    pub fn check(&self, p: u64, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidLevel { n, min: 1 });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n > self.max_level(p) {
            return Err(Error::PolynomialBoundExceeded { p, n });
        }
        Ok(())
    }
}

/// `S_0, ..., S_{n-1}` and `P_0, ..., P_{n-1}` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittPolynomialSet {
    p: u64,
    n: usize,
    sums: Vec<IntegerPolynomial>,
    products: Vec<IntegerPolynomial>,
}

/// A ghost identity that does not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GhostIdentityFailure {
    pub operation: WittOperation,
    pub index: usize,
}

impl fmt::Display for GhostIdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.operation {
            WittOperation::Sum => "w(X) + w(Y)",
            WittOperation::Product => "w(X) * w(Y)",
        };
        write!(f, "w_{i}({t}_0..{t}_{i}) != {op} at index {i}", i = self.index, t = self.operation)
    }
}

fn divide_exactly(num: &IntegerPolynomial, d: &BigInt, name: String) -> Result<IntegerPolynomial> {
    let q = num.to_rational().scale(&BigRational::new(BigInt::one(), d.clone()));
    q.to_integer_polynomial()
        .map_err(|c| Error::IntegralityViolation { polynomial: name, coefficient: c.to_string() })
}

/// [`build_witt_polynomials_with`] under the default bounds.
pub fn build_witt_polynomials(p: u64, n: usize) -> Result<WittPolynomialSet> {
    build_witt_polynomials_with(p, n, &GenerationBounds::default())
}

/// Solves for `S_i`, `P_i`, `i < n`, and checks every coefficient is integral.
pub fn build_witt_polynomials_with(p: u64, n: usize, bounds: &GenerationBounds) -> Result<WittPolynomialSet> {
    bounds.check(p, n)?;
    let arity = 2 * n;
    let xs: Vec<IntegerPolynomial> = variables(arity, 0, n);
    let ys: Vec<IntegerPolynomial> = variables(arity, n, n);
    let mut sums: Vec<IntegerPolynomial> = Vec::with_capacity(n);
    let mut products: Vec<IntegerPolynomial> = Vec::with_capacity(n);
    let mut pi = BigInt::one();
    for i in 0..n {
        let wx = ghost(p, i, &xs);
        let wy = ghost(p, i, &ys);
        let mut num_s = wx.add(&wy);
        let mut num_p = wx.mul(&wy);
        let mut pj = BigInt::one();
        for j in 0..i {
            let e = u64::try_from(BigInt::from(p).pow((i - j) as u32)).expect("exponent fits");
            let c = pj.clone();
            num_s = num_s.sub(&sums[j].pow(e).scale(&c));
            num_p = num_p.sub(&products[j].pow(e).scale(&c));
            pj *= p;
        }
        sums.push(divide_exactly(&num_s, &pi, format!("S_{i}"))?);
        products.push(divide_exactly(&num_p, &pi, format!("P_{i}"))?);
        pi *= p;
    }
    Ok(WittPolynomialSet { p, n, sums, products })
}

impl WittPolynomialSet {
    /// Assembles a set from stored polynomials without checking the ghost
    /// identities; see [`WittPolynomialSet::verify_ghost_identities`].
    pub fn from_parts(
        p: u64,
        n: usize,
        sums: Vec<IntegerPolynomial>,
        products: Vec<IntegerPolynomial>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLevel { n, min: 1 });
        }
        if sums.len() != n || products.len() != n {
            return Err(Error::UnavailablePolynomialSet { have: sums.len().min(products.len()), need: n });
        }
        if let Some(f) = sums.iter().chain(&products).find(|f| f.arity() != 2 * n) {
            return Err(Error::ArityMismatch { expected: 2 * n, got: f.arity() });
        }
        Ok(WittPolynomialSet { p, n, sums, products })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn sums(&self) -> &[IntegerPolynomial] {
        &self.sums
    }

    pub fn products(&self) -> &[IntegerPolynomial] {
        &self.products
    }

    pub fn polynomials(&self, op: WittOperation) -> &[IntegerPolynomial] {
        match op {
            WittOperation::Sum => &self.sums,
            WittOperation::Product => &self.products,
        }
    }

    /// Number of stored terms over all polynomials.
    pub fn term_count(&self) -> usize {
        self.sums.iter().chain(&self.products).map(SparsePolynomial::len).sum()
    }

    /// Expands `w_i(S)` and `w_i(P)` symbolically and compares them with
    /// `w_i(X) + w_i(Y)` and `w_i(X) · w_i(Y)`, over the rationals.
    pub fn verify_ghost_identities(&self) -> std::result::Result<(), GhostIdentityFailure> {
        let arity = 2 * self.n;
        let xs: Vec<RationalPolynomial> = variables(arity, 0, self.n);
        let ys: Vec<RationalPolynomial> = variables(arity, self.n, self.n);
        let sums: Vec<RationalPolynomial> = self.sums.iter().map(IntegerPolynomial::to_rational).collect();
        let products: Vec<RationalPolynomial> =
            self.products.iter().map(IntegerPolynomial::to_rational).collect();
        for i in 0..self.n {
            let wx = ghost(self.p, i, &xs);
            let wy = ghost(self.p, i, &ys);
            if ghost(self.p, i, &sums) != wx.add(&wy) {
                return Err(GhostIdentityFailure { operation: WittOperation::Sum, index: i });
            }
            if ghost(self.p, i, &products) != wx.mul(&wy) {
                return Err(GhostIdentityFailure { operation: WittOperation::Product, index: i });
            }
        }
        Ok(())
    }

    fn evaluate_all(&self, op: WittOperation, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        a.check_compatible(b)?;
        let alg = a.algebra();
        if alg.characteristic() != self.p {
            return Err(Error::DescriptorMismatch);
        }
        let m = a.level();
        if m > self.n {
            return Err(Error::UnavailablePolynomialSet { have: self.n, need: m });
        }
        let mut assignment = vec![alg.zero(); 2 * self.n];
        for j in 0..m {
            assignment[j] = a.component(j).clone();
            assignment[self.n + j] = b.component(j).clone();
        }
        let components = self.polynomials(op)[..m]
            .iter()
            .map(|f| evaluate_mod_p(f, &assignment))
            .collect::<Result<Vec<_>>>()?;
        WittVector::new(alg, components)
    }

    /// Witt sum by evaluating `S_0, ..., S_{m-1}`, for vectors of level
    /// `m <= n`.
    pub fn add(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.evaluate_all(WittOperation::Sum, a, b)
    }

    /// Witt product by evaluating `P_0, ..., P_{m-1}`.
    pub fn mul(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.evaluate_all(WittOperation::Product, a, b)
    }
}

/// Reduces the coefficients mod `p` and evaluates at `assignment`, one
/// algebra element per variable.
pub fn evaluate_mod_p<C: Coefficient + fmt::Display>(
    poly: &SparsePolynomial<C>,
    assignment: &[AlgebraElement],
) -> Result<AlgebraElement> {
    if assignment.len() != poly.arity() || assignment.is_empty() {
        return Err(Error::ArityMismatch { expected: poly.arity(), got: assignment.len() });
    }
    let alg = assignment[0].algebra();
    let mut powers: Vec<Vec<AlgebraElement>> = assignment.iter().map(|a| vec![alg.one(), a.clone()]).collect();
    let mut acc = alg.zero();
    for (m, c) in poly.terms() {
        let k = c.to_integer().ok_or_else(|| Error::IntegralityViolation {
            polynomial: poly.to_string(),
            coefficient: c.to_string(),
        })?;
        let k = k % BigInt::from(alg.characteristic());
        if k.is_zero() {
            continue;
        }
        let mut t = alg.one();
        for (v, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[v].len() <= e as usize {
                let next = powers[v].last().expect("nonempty").try_mul(&assignment[v])?;
                powers[v].push(next);
            }
            t = t.try_mul(&powers[v][e as usize])?;
        }
        acc = acc.try_add(&t.scale(&k))?;
    }
    Ok(acc)
}

/// [`WittPolynomialSet::add`].
pub fn poly_backend_add(set: &WittPolynomialSet, a: &WittVector, b: &WittVector) -> Result<WittVector> {
    set.add(a, b)
}

/// [`WittPolynomialSet::mul`].
pub fn poly_backend_mul(set: &WittPolynomialSet, a: &WittVector, b: &WittVector) -> Result<WittVector> {
    set.mul(a, b)
}
