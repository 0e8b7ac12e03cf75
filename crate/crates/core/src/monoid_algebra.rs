//! The monoid algebra `ZR` of a perfect algebra `R` under multiplication.
//!
//! Elements are finitely supported maps `R -> Z` with unbounded integer
//! coefficients. The basis symbol `[r]` multiplies by `[r][s] = [rs]`. Note
//! that `[0]` is a basis element and is distinct from the additive zero,
//! which has empty support.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::perfect_algebra::{Algebra, AlgebraDescriptor, AlgebraElement, Coords};

#[derive(Clone)]
pub struct MonoidAlgebraElement {
    algebra: Algebra,
    /// Never holds a zero coefficient.
    terms: BTreeMap<Coords, BigInt>,
}

impl MonoidAlgebraElement {
    /// The additive zero (empty support).
    pub fn zero(algebra: &Algebra) -> Self {
        MonoidAlgebraElement { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    /// `[1]`, the multiplicative identity.
    pub fn one(algebra: &Algebra) -> Self {
        Self::symbol(&algebra.one())
    }

    /// The Teichmüller symbol `[r]`.
    pub fn symbol(r: &AlgebraElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Coords::from(r.coords()), BigInt::one());
        MonoidAlgebraElement { algebra: r.algebra().clone(), terms }
    }

    /// `k[1]`.
    pub fn integer(algebra: &Algebra, k: impl Into<BigInt>) -> Self {
        Self::one(algebra).scale(&k.into())
    }

    /// `k[r]`.
    pub fn monomial(k: impl Into<BigInt>, r: &AlgebraElement) -> Self {
        Self::symbol(r).scale(&k.into())
    }

    /// Sums `k[r]` over the given pairs; repeated keys accumulate.
    pub fn from_terms<I>(algebra: &Algebra, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, AlgebraElement)>,
    {
        let mut map: BTreeMap<Coords, BigInt> = BTreeMap::new();
        for (k, r) in terms {
            if !AlgebraDescriptor::same(algebra, r.algebra()) {
                return Err(Error::DescriptorMismatch);
            }
            *map.entry(Coords::from(r.coords())).or_default() += k;
        }
        Ok(Self::normalized(algebra.clone(), map))
    }

    /// Random element with between 1 and `max_support` drawn basis symbols and
    /// coefficients uniform in `[-coeff_bound, coeff_bound]`. Colliding symbols
    /// accumulate, so the result may be smaller (or zero).
    pub fn random<G: Rng + ?Sized>(
        algebra: &Algebra,
        rng: &mut G,
        max_support: usize,
        coeff_bound: i64,
    ) -> Self {
        let len = rng.random_range(1..=max_support.max(1));
        let mut terms: BTreeMap<Coords, BigInt> = BTreeMap::new();
        for _ in 0..len {
            let r = algebra.random_element(rng);
            let c = rng.random_range(-coeff_bound..=coeff_bound);
            *terms.entry(Coords::from(r.coords())).or_default() += c;
        }
        Self::normalized(algebra.clone(), terms)
    }

    fn normalized(algebra: Algebra, mut terms: BTreeMap<Coords, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        MonoidAlgebraElement { algebra, terms }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// `(coefficient, basis element)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, AlgebraElement)> + '_ {
        self.terms.iter().map(|(k, c)| (c, self.algebra.element_from_raw(k.clone())))
    }

    pub fn coefficient(&self, r: &AlgebraElement) -> BigInt {
        self.terms.get(r.coords()).cloned().unwrap_or_default()
    }

    /// Largest absolute value of a coefficient, zero for the empty element.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if AlgebraDescriptor::same(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            *terms.entry(k.clone()).or_default() += c;
        }
        Ok(Self::normalized(self.algebra.clone(), terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            *terms.entry(k.clone()).or_default() -= c;
        }
        Ok(Self::normalized(self.algebra.clone(), terms))
    }

    /// Convolution: the bilinear extension of `[r][s] = [rs]`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let alg = &self.algebra;
        let mut terms: BTreeMap<Coords, BigInt> = BTreeMap::new();
        for (r, a) in &self.terms {
            for (s, b) in &other.terms {
                *terms.entry(alg.raw_mul(r, s)).or_default() += a * b;
            }
        }
        Ok(Self::normalized(alg.clone(), terms))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.algebra);
        }
        let terms = self.terms.iter().map(|(r, c)| (r.clone(), c * k)).collect();
        MonoidAlgebraElement { algebra: self.algebra.clone(), terms }
    }

    fn square(&self) -> Self {
        let alg = &self.algebra;
        let entries: Vec<(&Coords, &BigInt)> = self.terms.iter().collect();
        let mut terms: BTreeMap<Coords, BigInt> = BTreeMap::new();
        for (i, (r, a)) in entries.iter().enumerate() {
            *terms.entry(alg.raw_mul(r, r)).or_default() += *a * *a;
            for (s, b) in &entries[i + 1..] {
                let ab: BigInt = *a * *b;
                *terms.entry(alg.raw_mul(r, s)).or_default() += ab << 1;
            }
        }
        Self::normalized(alg.clone(), terms)
    }

    /// `x^k` by binary exponentiation; `x^0 = [1]`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc.unwrap_or_else(|| Self::one(&self.algebra))
    }

    /// Coefficients reduced into `[0, m)`; terms that become zero are dropped.
    pub fn reduce_coefficients(&self, m: &BigInt) -> Self {
        let terms = self.terms.iter().map(|(r, c)| (r.clone(), c.mod_floor(m))).collect();
        Self::normalized(self.algebra.clone(), terms)
    }

    /// The augmentation `π: ZR -> R`, `Σ n_r [r] ↦ Σ n_r r`.
    pub fn augmentation(&self) -> AlgebraElement {
        let alg = &self.algebra;
        let p = BigInt::from(alg.characteristic());
        let mut acc = alg.raw_zero();
        for (r, c) in &self.terms {
            let k = c.mod_floor(&p);
            if k.is_zero() {
                continue;
            }
            let k = u64::try_from(&k).expect("residue fits");
            acc = alg.raw_add(&acc, &alg.raw_scale(r, k));
        }
        alg.element_from_raw(acc)
    }

    /// `φ(Σ n_r [r]) = Σ n_r [r^p]`.
    pub fn phi(&self) -> Self {
        let alg = &self.algebra;
        let mut terms: BTreeMap<Coords, BigInt> = BTreeMap::new();
        for (r, c) in &self.terms {
            *terms.entry(alg.raw_frobenius(r)).or_default() += c;
        }
        Self::normalized(alg.clone(), terms)
    }

    /// The arithmetic derivation `δ(x) = (φ(x) - x^p) / p`.
    ///
    /// # Panics
    ///
    /// If some coefficient of `φ(x) - x^p` is not divisible by `p`. That
    /// cannot happen for a correct implementation of `φ` and the product.
    pub fn delta(&self) -> Self {
        let p_u = self.algebra.characteristic();
        let p = BigInt::from(p_u);
        let diff = &self.phi() - &self.pow(p_u);
        let terms = diff
            .terms
            .into_iter()
            .map(|(r, c)| {
                let (q, rem) = c.div_rem(&p);
                assert!(
                    rem.is_zero(),
                    "internal inconsistency: φ(x) - x^p has coefficient {c} not divisible by {p}"
                );
                (r, q)
            })
            .collect();
        MonoidAlgebraElement { algebra: self.algebra.clone(), terms }
    }
}

impl PartialEq for MonoidAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && AlgebraDescriptor::same(&self.algebra, &other.algebra)
    }
}

impl Eq for MonoidAlgebraElement {}

impl fmt::Debug for MonoidAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `0` for the empty element; otherwise `c*[r]` terms in canonical order,
/// with the coefficient omitted exactly when it is `+1`.
impl fmt::Display for MonoidAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, r)) in self.terms().enumerate() {
            let mag = if i == 0 {
                if c.is_one() {
                    None
                } else {
                    Some(c.clone())
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
                Some(-c)
            } else {
                f.write_str(" + ")?;
                if c.is_one() {
                    None
                } else {
                    Some(c.clone())
                }
            };
            match mag {
                Some(m) => write!(f, "{m}*[{r}]")?,
                None => write!(f, "[{r}]")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &MonoidAlgebraElement {
            type Output = MonoidAlgebraElement;
            fn $method(self, rhs: &MonoidAlgebraElement) -> MonoidAlgebraElement {
                self.$try(rhs).expect("algebra mismatch")
            }
        }
        impl $trait for MonoidAlgebraElement {
            type Output = MonoidAlgebraElement;
            fn $method(self, rhs: MonoidAlgebraElement) -> MonoidAlgebraElement {
                (&self).$try(&rhs).expect("algebra mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MonoidAlgebraElement {
    type Output = MonoidAlgebraElement;
    fn neg(self) -> MonoidAlgebraElement {
        let terms = self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect();
        MonoidAlgebraElement { algebra: self.algebra.clone(), terms }
    }
}

impl Neg for MonoidAlgebraElement {
    type Output = MonoidAlgebraElement;
    fn neg(self) -> MonoidAlgebraElement {
        -&self
    }
}
