use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::perfect_algebra::{Algebra, AlgebraDescriptor, AlgebraElement};

/// `prod_i Z[x]/(p^n, f_i)`, where each `f_i` is the field modulus of the
/// `i`-th factor read verbatim in `Z/p^n`.
/// Teichmüller lifts keyed by residue coordinates.
type LiftCache = RwLock<HashMap<Box<[u32]>, Box<[u64]>>>;

pub struct GaloisRing {
    algebra: Algebra,
    level: usize,
    modulus: u64,
    teichmuller_cache: LiftCache,
}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisRing")
            .field("algebra", &self.algebra.to_string())
            .field("level", &self.level)
            .finish()
    }
}

fn checked_prime_power(p: u64, n: usize) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q.checked_mul(p)?;
    }
    Some(q)
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl GaloisRing {
    pub fn new(algebra: &Algebra, level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidLevel { n: 0, min: 1 });
        }
        let p = algebra.characteristic();
        // headroom for the unreduced sums in `raw_mul`
        let modulus = checked_prime_power(p, level)
            .filter(|&q| q <= 1 << 62)
            .ok_or(Error::LevelTooLarge { p, n: level })?;
        Ok(GaloisRing {
            algebra: algebra.clone(),
            level,
            modulus,
            teichmuller_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `p^n`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn wrap(self: &Arc<Self>, coeffs: Box<[u64]>) -> GaloisRingElement {
        GaloisRingElement { ring: Arc::clone(self), coeffs }
    }

    pub fn zero(self: &Arc<Self>) -> GaloisRingElement {
        self.wrap(vec![0; self.algebra.width()].into_boxed_slice())
    }

    pub fn one(self: &Arc<Self>) -> GaloisRingElement {
        self.from_integer(&BigInt::from(1))
    }

    /// Image of an integer in the ring.
    pub fn from_integer(self: &Arc<Self>, k: &BigInt) -> GaloisRingElement {
        let r = k.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits");
        let mut c = vec![0u64; self.algebra.width()];
        for i in 0..self.algebra.factors().len() {
            c[self.algebra.factor_range(i).start] = r;
        }
        self.wrap(c.into_boxed_slice())
    }

    /// Element with the given flat coefficient vector, reduced mod `p^n`.
    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> Result<GaloisRingElement> {
        if coeffs.len() != self.algebra.width() {
            return Err(Error::DescriptorMismatch);
        }
        Ok(self.wrap(coeffs.iter().map(|c| c % self.modulus).collect()))
    }

    /// Any lift of `r`: its coordinates read as integers in `[0, p)`.
    pub fn naive_lift(self: &Arc<Self>, r: &AlgebraElement) -> GaloisRingElement {
        self.wrap(r.coords().iter().map(|&c| c as u64).collect())
    }

    pub(crate) fn raw_add(&self, a: &[u64], b: &[u64], m: u64) -> Box<[u64]> {
        a.iter().zip(b).map(|(&x, &y)| ((x as u128 + y as u128) % m as u128) as u64).collect()
    }

    pub(crate) fn raw_sub(&self, a: &[u64], b: &[u64], m: u64) -> Box<[u64]> {
        a.iter().zip(b).map(|(&x, &y)| ((x as u128 + m as u128 - (y % m) as u128) % m as u128) as u64).collect()
    }

    pub(crate) fn raw_mul(&self, a: &[u64], b: &[u64], m: u64) -> Box<[u64]> {
        let mut out = vec![0u64; a.len()];
        for (i, f) in self.algebra.factors().iter().enumerate() {
            let r = self.algebra.factor_range(i);
            let e = f.degree();
            let (fa, fb) = (&a[r.clone()], &b[r.clone()]);
            let mut prod = vec![0u64; 2 * e - 1];
            for (i, &x) in fa.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in fb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + mulmod(x, y, m)) % m;
                }
            }
            for top in (e..prod.len()).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                prod[top] = 0;
                for (k, &fk) in f.modulus()[..e].iter().enumerate() {
                    let idx = top - e + k;
                    prod[idx] = (prod[idx] + m - mulmod(c, fk, m)) % m;
                }
            }
            out[r].copy_from_slice(&prod[..e]);
        }
        out.into_boxed_slice()
    }

    fn raw_pow(&self, a: &[u64], mut exp: u64, m: u64) -> Box<[u64]> {
        let mut acc: Box<[u64]> = {
            let mut c = vec![0u64; a.len()];
            for i in 0..self.algebra.factors().len() {
                c[self.algebra.factor_range(i).start] = 1 % m;
            }
            c.into_boxed_slice()
        };
        let mut base: Box<[u64]> = a.into();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.raw_mul(&acc, &base, m);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.raw_mul(&base, &base, m);
            }
        }
        acc
    }

    /// Teichmüller coordinates of `r` at full precision.
    pub(crate) fn raw_teichmuller(&self, r: &AlgebraElement) -> Box<[u64]> {
        if let Some(t) = self.teichmuller_cache.read().expect("cache poisoned").get(r.coords()) {
            return t.clone();
        }
        let p = self.algebra.characteristic();
        let m = self.modulus;
        let mut t: Vec<u64> = r.coords().iter().map(|&c| c as u64).collect();
        // Each pass of t -> t^{p^e} gains at least one p-adic digit.
        for (i, f) in self.algebra.factors().iter().enumerate() {
            let range = self.algebra.factor_range(i);
            let mut part = vec![0u64; self.algebra.width()];
            part[range.clone()].copy_from_slice(&t[range.clone()]);
            for _ in 1..self.level {
                for _ in 0..f.degree() {
                    part = self.raw_pow(&part, p, m).into_vec();
                }
            }
            t[range.clone()].copy_from_slice(&part[range]);
        }
        let t = t.into_boxed_slice();
        self.teichmuller_cache
            .write()
            .expect("cache poisoned")
            .insert(r.coords().into(), t.clone());
        t
    }

    pub(crate) fn check_algebra(&self, r: &AlgebraElement) -> Result<()> {
        if AlgebraDescriptor::same(&self.algebra, r.algebra()) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }
}

/// An element of a [`GaloisRing`]; coefficients lie in `[0, p^n)`.
#[derive(Clone)]
pub struct GaloisRingElement {
    ring: Arc<GaloisRing>,
    coeffs: Box<[u64]>,
}

impl GaloisRingElement {
    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub(crate) fn from_raw(ring: &Arc<GaloisRing>, coeffs: Box<[u64]>) -> Self {
        ring.wrap(coeffs)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring)
            || (self.ring.level == other.ring.level
                && AlgebraDescriptor::same(&self.ring.algebra, &other.ring.algebra))
        {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ring.wrap(self.ring.raw_add(&self.coeffs, &other.coeffs, self.ring.modulus)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ring.wrap(self.ring.raw_sub(&self.coeffs, &other.coeffs, self.ring.modulus)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ring.wrap(self.ring.raw_mul(&self.coeffs, &other.coeffs, self.ring.modulus)))
    }

    pub fn neg(&self) -> Self {
        let m = self.ring.modulus;
        self.ring.wrap(self.coeffs.iter().map(|&c| (m - c) % m).collect())
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.ring.wrap(self.ring.raw_pow(&self.coeffs, exp, self.ring.modulus))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let m = self.ring.modulus;
        let k = k.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits");
        self.ring.wrap(self.coeffs.iter().map(|&c| mulmod(c, k, m)).collect())
    }

    /// Reduction mod `p`, as an element of the residue algebra.
    pub fn residue(&self) -> AlgebraElement {
        let p = self.ring.algebra.characteristic();
        let coords: Vec<u64> = self.coeffs.iter().map(|c| c % p).collect();
        self.ring.algebra.element(&coords).expect("reduced coordinates")
    }
}

impl PartialEq for GaloisRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl Eq for GaloisRingElement {}

impl fmt::Debug for GaloisRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.coeffs, self.ring.modulus)
    }
}
