//! Finite perfect `F_p`-algebras: finite fields `F_{p^e}` in a polynomial
//! basis and finite products of them.
//!
//! An [`AlgebraDescriptor`] is built once, verified, and shared behind an
//! [`Algebra`] handle. Elements store a flat coefficient vector that runs over
//! all factors in order; the derived lexicographic order on that vector is the
//! canonical order used for monoid-algebra keys and printing.

pub(crate) mod fp_poly;
mod moduli;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};

pub use moduli::default_modulus;

/// Shared handle to a verified algebra.
pub type Algebra = Arc<AlgebraDescriptor>;

/// Default cap on `|R|` for [`AlgebraDescriptor::enumerate`].
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 16;

/// Flat coefficient storage, factor-major.
pub(crate) type Coords = Box<[u32]>;

/// One field factor `F_p[g]/(modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldFactor {
    degree: usize,
    /// Monic, constant coefficient first, length `degree + 1`.
    modulus: Vec<u64>,
}

impl FieldFactor {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// Requested shape of one factor; the modulus falls back to the built-in table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    pub degree: usize,
    pub modulus: Option<Vec<u64>>,
}

impl FactorSpec {
    pub fn degree(degree: usize) -> Self {
        FactorSpec { degree, modulus: None }
    }

    pub fn with_modulus(modulus: Vec<u64>) -> Self {
        FactorSpec { degree: modulus.len().saturating_sub(1), modulus: Some(modulus) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    p: u64,
    factors: Vec<FieldFactor>,
    /// Start offset of each factor in the flat coordinate vector.
    offsets: Vec<usize>,
    width: usize,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl AlgebraDescriptor {
    /// Builds and verifies a product of fields of characteristic `p`.
    pub fn new(p: u64, specs: &[FactorSpec]) -> Result<Algebra> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if specs.is_empty() {
            return Err(Error::NoFactors);
        }
        let mut factors = Vec::with_capacity(specs.len());
        for spec in specs {
            if spec.degree == 0 {
                return Err(Error::ZeroDegree);
            }
            let modulus = match &spec.modulus {
                Some(m) => m.clone(),
                None => match default_modulus(p, spec.degree) {
                    Some(m) => m,
                    None if spec.degree == 1 => vec![0, 1],
                    None => return Err(Error::NoDefaultModulus { p, e: spec.degree }),
                },
            };
            if modulus.len() != spec.degree + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients for degree {}, got {}",
                    spec.degree + 1,
                    spec.degree,
                    modulus.len()
                )));
            }
            if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
                return Err(Error::InvalidModulus(format!("coefficient {c} is not reduced mod {p}")));
            }
            if modulus[spec.degree] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            if !fp_poly::is_irreducible(&modulus, p) {
                return Err(Error::NotIrreducible { p, modulus });
            }
            factors.push(FieldFactor { degree: spec.degree, modulus });
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut width = 0;
        for f in &factors {
            offsets.push(width);
            width += f.degree;
        }
        Ok(Arc::new(AlgebraDescriptor { p, factors, offsets, width }))
    }

    pub fn prime_field(p: u64) -> Result<Algebra> {
        Self::new(p, &[FactorSpec::degree(1)])
    }

    /// `F_{p^e}` with the built-in modulus.
    pub fn field(p: u64, e: usize) -> Result<Algebra> {
        Self::new(p, &[FactorSpec::degree(e)])
    }

    pub fn field_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Algebra> {
        Self::new(p, &[FactorSpec::with_modulus(modulus)])
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn factors(&self) -> &[FieldFactor] {
        &self.factors
    }

    /// Total number of `F_p` coordinates.
    pub fn width(&self) -> usize {
        self.width
    }

    /// `|R|`, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        (0..self.width).fold(1u128, |acc, _| acc.saturating_mul(self.p as u128))
    }

    pub fn is_field(&self) -> bool {
        self.factors.len() == 1
    }

    pub(crate) fn factor_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.factors[i].degree
    }

    // ---- raw coordinate arithmetic -------------------------------------

    pub(crate) fn raw_zero(&self) -> Coords {
        vec![0u32; self.width].into_boxed_slice()
    }

    pub(crate) fn raw_one(&self) -> Coords {
        let mut c = vec![0u32; self.width];
        for &o in &self.offsets {
            c[o] = 1;
        }
        c.into_boxed_slice()
    }

    pub(crate) fn raw_add(&self, a: &[u32], b: &[u32]) -> Coords {
        let p = self.p;
        a.iter().zip(b).map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32).collect()
    }

    pub(crate) fn raw_neg(&self, a: &[u32]) -> Coords {
        let p = self.p;
        a.iter().map(|&x| ((p - x as u64) % p) as u32).collect()
    }

    /// `k * a` for a residue `k` in `[0, p)`.
    pub(crate) fn raw_scale(&self, a: &[u32], k: u64) -> Coords {
        let p = self.p;
        a.iter().map(|&x| (x as u64 * k % p) as u32).collect()
    }

    pub(crate) fn raw_mul(&self, a: &[u32], b: &[u32]) -> Coords {
        let mut out = vec![0u32; self.width];
        for (i, f) in self.factors.iter().enumerate() {
            let r = self.factor_range(i);
            mul_in_factor(self.p, f, &a[r.clone()], &b[r.clone()], &mut out[r]);
        }
        out.into_boxed_slice()
    }

    pub(crate) fn raw_pow(&self, a: &[u32], mut exp: u64) -> Coords {
        let mut acc = self.raw_one();
        let mut base: Coords = a.into();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.raw_mul(&base, &base);
            }
        }
        acc
    }

    pub(crate) fn raw_frobenius(&self, a: &[u32]) -> Coords {
        self.raw_pow(a, self.p)
    }

    /// Inverse Frobenius, factorwise `a^{p^{e-1}}`.
    pub(crate) fn raw_frobenius_inv(&self, a: &[u32]) -> Coords {
        let mut out = vec![0u32; self.width];
        for (i, f) in self.factors.iter().enumerate() {
            let r = self.factor_range(i);
            let mut x: Vec<u32> = a[r.clone()].to_vec();
            for _ in 1..f.degree {
                x = pow_in_factor(self.p, f, &x, self.p);
            }
            out[r].copy_from_slice(&x);
        }
        out.into_boxed_slice()
    }

    /// Image of the integer `k` under `Z -> R`.
    pub(crate) fn raw_from_bigint(&self, k: &BigInt) -> Coords {
        let r = k.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits");
        self.raw_scale(&self.raw_one(), r)
    }

    fn wrap(self: &Arc<Self>, coords: Coords) -> AlgebraElement {
        AlgebraElement { algebra: Arc::clone(self), coords }
    }

    pub(crate) fn element_from_raw(self: &Arc<Self>, coords: Coords) -> AlgebraElement {
        debug_assert_eq!(coords.len(), self.width);
        self.wrap(coords)
    }

    // ---- element constructors ------------------------------------------

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        self.wrap(self.raw_zero())
    }

    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        self.wrap(self.raw_one())
    }

    /// The image of an integer under `Z -> R`.
    pub fn from_int(self: &Arc<Self>, k: i64) -> AlgebraElement {
        self.wrap(self.raw_from_bigint(&BigInt::from(k)))
    }

    /// Builds an element from its flat coordinate vector; every entry must
    /// already lie in `[0, p)`.
    pub fn element(self: &Arc<Self>, coords: &[u64]) -> Result<AlgebraElement> {
        if coords.len() != self.width {
            return Err(Error::DescriptorMismatch);
        }
        if coords.iter().any(|&c| c >= self.p) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(self.wrap(coords.iter().map(|&c| c as u32).collect()))
    }

    /// Builds an element from one coefficient vector per factor.
    pub fn element_from_factors(self: &Arc<Self>, parts: &[Vec<u64>]) -> Result<AlgebraElement> {
        if parts.len() != self.factors.len() {
            return Err(Error::DescriptorMismatch);
        }
        let flat: Vec<u64> = parts.iter().flatten().copied().collect();
        for (part, f) in parts.iter().zip(&self.factors) {
            if part.len() != f.degree {
                return Err(Error::DescriptorMismatch);
            }
        }
        self.element(&flat)
    }

    /// Primitive generator `g` of a single-field algebra of degree >= 2.
    pub fn generator(self: &Arc<Self>) -> AlgebraElement {
        let mut c = self.raw_zero();
        if self.width > 1 {
            c[1] = 1;
        } else {
            c[0] = 1;
        }
        self.wrap(c)
    }

    pub fn random_element<G: Rng + ?Sized>(self: &Arc<Self>, rng: &mut G) -> AlgebraElement {
        let p = self.p as u32;
        self.wrap((0..self.width).map(|_| rng.random_range(0..p)).collect())
    }

    /// Every element exactly once, in canonical order. Fails if `|R|` exceeds
    /// `bound`.
    pub fn enumerate_bounded(
        self: &Arc<Self>,
        bound: u128,
    ) -> Result<impl Iterator<Item = AlgebraElement> + use<>> {
        let size = self.cardinality();
        if size > bound {
            return Err(Error::EnumerationBound { size, bound });
        }
        Ok(Enumerate { algebra: Arc::clone(self), next: Some(self.raw_zero()) })
    }

    /// [`enumerate_bounded`](Self::enumerate_bounded) with
    /// [`DEFAULT_ENUMERATION_BOUND`].
    pub fn enumerate(self: &Arc<Self>) -> Result<impl Iterator<Item = AlgebraElement> + use<>> {
        self.enumerate_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    pub(crate) fn same(a: &Algebra, b: &Algebra) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

fn mul_in_factor(p: u64, f: &FieldFactor, a: &[u32], b: &[u32], out: &mut [u32]) {
    let e = f.degree;
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    // reduce by the monic modulus from the top down
    for top in (e..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for k in 0..e {
            let idx = top - e + k;
            prod[idx] = (prod[idx] + (p - c) * f.modulus[k]) % p;
        }
    }
    for (o, v) in out.iter_mut().zip(&prod) {
        *o = *v as u32;
    }
}

fn pow_in_factor(p: u64, f: &FieldFactor, a: &[u32], mut exp: u64) -> Vec<u32> {
    let mut acc = vec![0u32; f.degree];
    acc[0] = 1;
    let mut base = a.to_vec();
    let mut tmp = vec![0u32; f.degree];
    while exp > 0 {
        if exp & 1 == 1 {
            mul_in_factor(p, f, &acc, &base, &mut tmp);
            acc.copy_from_slice(&tmp);
        }
        exp >>= 1;
        if exp > 0 {
            mul_in_factor(p, f, &base, &base, &mut tmp);
            base.copy_from_slice(&tmp);
        }
    }
    acc
}

struct Enumerate {
    algebra: Algebra,
    next: Option<Coords>,
}

impl Iterator for Enumerate {
    type Item = AlgebraElement;

    fn next(&mut self) -> Option<AlgebraElement> {
        let current = self.next.take()?;
        let p = self.algebra.p as u32;
        let mut succ = current.clone();
        let mut carry = true;
        for c in succ.iter_mut().rev() {
            *c += 1;
            if *c == p {
                *c = 0;
            } else {
                carry = false;
                break;
            }
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(self.algebra.element_from_raw(current))
    }
}

/// An element of a perfect algebra.
///
/// The arithmetic operators panic when the operands come from different
/// algebras; the `try_*` methods report [`Error::DescriptorMismatch`] instead.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Algebra,
    coords: Coords,
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Flat coordinates, factor after factor.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Coordinates of the `i`-th factor.
    pub fn factor(&self, i: usize) -> &[u32] {
        &self.coords[self.algebra.factor_range(i)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        *self.coords == *self.algebra.raw_one()
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
        Ok(self.algebra.wrap(self.algebra.raw_add(&self.coords, &other.coords)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let neg = self.algebra.raw_neg(&other.coords);
        Ok(self.algebra.wrap(self.algebra.raw_add(&self.coords, &neg)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.algebra.wrap(self.algebra.raw_mul(&self.coords, &other.coords)))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.algebra.wrap(self.algebra.raw_pow(&self.coords, exp))
    }

    /// `a^p`.
    pub fn frobenius(&self) -> Self {
        self.algebra.wrap(self.algebra.raw_frobenius(&self.coords))
    }

    /// The unique `p`-th root.
    pub fn frobenius_inv(&self) -> Self {
        self.algebra.wrap(self.algebra.raw_frobenius_inv(&self.coords))
    }

    /// `φ^k` for any integer `k`; negative powers use the inverse.
    pub fn frobenius_pow(&self, k: i64) -> Self {
        let mut x = self.clone();
        if k >= 0 {
            for _ in 0..k {
                x = x.frobenius();
            }
        } else {
            for _ in 0..(-k) {
                x = x.frobenius_inv();
            }
        }
        x
    }

    /// `k * self` for an arbitrary integer `k`.
    pub fn scale(&self, k: &BigInt) -> Self {
        let r = k.mod_floor(&BigInt::from(self.algebra.p)).to_u64().expect("residue fits");
        self.algebra.wrap(self.algebra.raw_scale(&self.coords, r))
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && AlgebraDescriptor::same(&self.algebra, &other.algebra)
    }
}

impl Eq for AlgebraElement {}

impl Hash for AlgebraElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for AlgebraElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the flat coordinate vector. Only meaningful within one
/// algebra.
impl Ord for AlgebraElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prime-field factors print as decimals, extension factors as `[c0,c1,...]`,
/// and products as `(a; b; ...)`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.algebra.factors.len();
        if n > 1 {
            f.write_str("(")?;
        }
        for i in 0..n {
            if i > 0 {
                f.write_str("; ")?;
            }
            let c = self.factor(i);
            if c.len() == 1 {
                write!(f, "{}", c[0])?;
            } else {
                f.write_str("[")?;
                for (j, x) in c.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")?;
            }
        }
        if n > 1 {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, ff: &FieldFactor| {
            let m: Vec<String> = ff.modulus.iter().map(u64::to_string).collect();
            write!(f, "e={},mod=[{}]", ff.degree, m.join(","))
        };
        write!(f, "p={},", self.p)?;
        if self.factors.len() == 1 {
            factor(f, &self.factors[0])
        } else {
            f.write_str("product=[")?;
            for (i, ff) in self.factors.iter().enumerate() {
                if i > 0 {
                    f.write_str("; ")?;
                }
                factor(f, ff)?;
            }
            f.write_str("]")
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$try(rhs).expect("algebra mismatch")
            }
        }
        impl $trait for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$try(&rhs).expect("algebra mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.algebra.wrap(self.algebra.raw_neg(&self.coords))
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}
