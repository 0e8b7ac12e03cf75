use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

/// Exponent vector of a monomial, one entry per variable.
pub type Monomial = Box<[u32]>;

/// Scalars a [`SparsePolynomial`] can carry.
pub trait Coefficient: Clone + Num + From<BigInt> + fmt::Debug + Send + Sync {
    /// The value as an integer, when it is one.
    fn to_integer(&self) -> Option<BigInt>;
}

impl Coefficient for BigInt {
    fn to_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Coefficient for BigRational {
    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

/// A multivariate polynomial stored as a map from exponent vectors to
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial<C> {
    arity: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type RationalPolynomial = SparsePolynomial<BigRational>;
pub type IntegerPolynomial = SparsePolynomial<BigInt>;

/// Total degree ascending, then exponent vectors in descending
/// lexicographic order.
pub fn graded_order(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl<C: Coefficient> SparsePolynomial<C> {
    pub fn zero(arity: usize) -> Self {
        SparsePolynomial { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity].into_boxed_slice(), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    /// The variable with index `i`.
    pub fn variable(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable {i} out of range for arity {arity}");
        let mut m = vec![0; arity];
        m[i] = 1;
        let mut p = Self::zero(arity);
        p.add_term(m.into_boxed_slice(), C::one());
        p
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    ///
    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(arity: usize, terms: I) -> Self {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.len(), arity, "exponent vector has the wrong arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> + '_ {
        self.terms.iter().map(|(m, c)| (&m[..], c))
    }

    /// Terms in [`graded_order`].
    pub fn graded_terms(&self) -> Vec<(&[u32], &C)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| graded_order(a.0, b.0));
        v
    }

    pub fn coefficient(&self, m: &[u32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.iter().map(|&e| e as u64).sum()).max()
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.arity, other.arity, "polynomials have different arities");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| C::zero() - c.clone())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.arity);
        }
        self.map_coefficients(|c| c.clone() * k.clone())
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparsePolynomial<D> {
        SparsePolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let d = f(c);
                    (!d.is_zero()).then(|| (m.clone(), d))
                })
                .collect(),
        }
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(a, b)| a + b).collect();
                let prod = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(c) => *c = c.clone() + prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        SparsePolynomial {
            arity: self.arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.arity);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The same polynomial viewed in more variables; new variables are
    /// appended after the existing ones.
    pub fn extend_arity(&self, arity: usize) -> Self {
        assert!(arity >= self.arity, "cannot shrink arity");
        SparsePolynomial {
            arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut v = m.to_vec();
                    v.resize(arity, 0);
                    (v.into_boxed_slice(), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn compose(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.arity, "one image per variable");
        let target = images.first().map_or(0, |p| p.arity);
        let mut out = Self::zero(target);
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(p.arity), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Every coefficient as an integer, or the first one that is not.
    pub fn to_integer_polynomial(&self) -> Result<IntegerPolynomial, C> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            match c.to_integer() {
                Some(k) => {
                    terms.insert(m.clone(), k);
                }
                None => return Err(c.clone()),
            }
        }
        Ok(SparsePolynomial { arity: self.arity, terms })
    }
}

impl IntegerPolynomial {
    pub fn to_rational(&self) -> RationalPolynomial {
        self.map_coefficients(|c| BigRational::from(c.clone()))
    }
}

impl<C: Coefficient + fmt::Display> SparsePolynomial<C> {
    /// Writes the polynomial as `c m ; c m ; ...` with monomials in
    /// [`graded_order`], using `names` for the variables.
    pub fn write_terms(&self, f: &mut impl fmt::Write, names: &[String]) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.graded_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{c}")?;
            let mut any = false;
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " {}", names[v])?,
                    _ => write!(f, " {}^{e}", names[v])?,
                }
                any |= e > 0;
            }
            if !any {
                f.write_str(" 1")?;
            }
        }
        Ok(())
    }
}

fn default_names(arity: usize) -> Vec<String> {
    (0..arity).map(|i| format!("v{i}")).collect()
}

impl<C: Coefficient + fmt::Display> fmt::Display for SparsePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, &default_names(self.arity))
    }
}

impl<C: Coefficient + fmt::Display> fmt::Debug for SparsePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
