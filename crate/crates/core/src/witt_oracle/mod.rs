//! Classical model of `W_n(R)` used as ground truth.
//!
//! For a field factor `F_{p^e} = F_p[x]/(f)` the ring `W_n(F_{p^e})` is the
//! Galois ring `Z[x]/(p^n, f)`. Witt coordinates are recovered from the
//! Teichmüller expansion `y = Σ p^k τ(d_k)` by setting `r_k = φ^k(d_k)`.
//! Products of fields are handled factorwise.
//!
//! This path never touches the arithmetic derivation, so it can be used to
//! check every formula built on it.

mod galois_ring;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

pub use galois_ring::{GaloisRing, GaloisRingElement};

use crate::error::Result;
use crate::monoid_algebra::MonoidAlgebraElement;
use crate::perfect_algebra::{Algebra, AlgebraDescriptor, AlgebraElement};
use crate::witt_core::WittVector;

/// `W_n(R)` realised as a Galois ring, with coordinate conversion.
#[derive(Clone, Debug)]
pub struct WittOracle {
    ring: Arc<GaloisRing>,
}

type OracleCache = Mutex<HashMap<(AlgebraDescriptor, usize), WittOracle>>;

fn shared_cache() -> &'static OracleCache {
    static CACHE: OnceLock<OracleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl WittOracle {
    pub fn new(algebra: &Algebra, n: usize) -> Result<Self> {
        Ok(WittOracle { ring: Arc::new(GaloisRing::new(algebra, n)?) })
    }

    /// Process-wide instance for `(R, n)`, so Teichmüller lifts are computed
    /// once per element.
    pub fn shared(algebra: &Algebra, n: usize) -> Result<Self> {
        let key = ((**algebra).clone(), n);
        let mut cache = shared_cache().lock().expect("oracle cache poisoned");
        if let Some(o) = cache.get(&key) {
            return Ok(o.clone());
        }
        let o = Self::new(algebra, n)?;
        cache.insert(key, o.clone());
        Ok(o)
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn level(&self) -> usize {
        self.ring.level()
    }

    pub fn algebra(&self) -> &Algebra {
        self.ring.algebra()
    }

    /// The Teichmüller lift `τ(r)`: the unique lift of `r` fixed by
    /// `t ↦ t^{p^e}` on each factor.
    pub fn teichmuller(&self, r: &AlgebraElement) -> Result<GaloisRingElement> {
        self.ring.check_algebra(r)?;
        Ok(GaloisRingElement::from_raw(&self.ring, self.ring.raw_teichmuller(r)))
    }

    /// Digits of `y = Σ p^k τ(φ^{-k}(r_k))`.
    pub fn to_witt_coordinates(&self, y: &GaloisRingElement) -> Result<WittVector> {
        let ring = &self.ring;
        let alg = ring.algebra();
        let p = alg.characteristic();
        let n = ring.level();
        if y.ring().level() != n {
            return Err(crate::Error::LevelMismatch(y.ring().level(), n));
        }
        if !AlgebraDescriptor::same(y.ring().algebra(), alg) {
            return Err(crate::Error::DescriptorMismatch);
        }
        let mut rest: Box<[u64]> = y.coeffs().into();
        let mut modulus = ring.modulus();
        let mut components = Vec::with_capacity(n);
        for k in 0..n {
            let digit_coords: Vec<u64> = rest.iter().map(|c| c % p).collect();
            let digit = alg.element(&digit_coords).expect("reduced coordinates");
            let tau = ring.raw_teichmuller(&digit);
            let diff = ring.raw_sub(&rest, &tau, modulus);
            modulus /= p;
            rest = diff
                .iter()
                .map(|&c| {
                    assert!(c % p == 0, "internal inconsistency: digit {k} leaves a unit remainder");
                    c / p
                })
                .collect();
            components.push(digit.frobenius_pow(k as i64));
        }
        debug_assert!(rest.iter().all(|c| c.is_zero()));
        Ok(WittVector::from_parts(alg, components))
    }

    /// `Σ p^k τ(φ^{-k}(r_k))`.
    pub fn from_witt_coordinates(&self, w: &WittVector) -> Result<GaloisRingElement> {
        let ring = &self.ring;
        if w.level() != ring.level() {
            return Err(crate::Error::LevelMismatch(w.level(), ring.level()));
        }
        let mut acc = ring.zero();
        let mut pk = num_bigint::BigInt::from(1);
        for (k, r) in w.components().iter().enumerate() {
            let t = self.teichmuller(&r.frobenius_pow(-(k as i64)))?;
            acc = acc.try_add(&t.scale(&pk))?;
            pk *= ring.algebra().characteristic();
        }
        Ok(acc)
    }

    /// The ring map `ZR -> W_n(R)` sending `[r]` to the Teichmüller
    /// representative.
    pub fn canonical_map(&self, x: &MonoidAlgebraElement) -> Result<WittVector> {
        let ring = &self.ring;
        if !AlgebraDescriptor::same(ring.algebra(), x.algebra()) {
            return Err(crate::Error::DescriptorMismatch);
        }
        let mut acc = ring.zero();
        for (c, r) in x.terms() {
            acc = acc.try_add(&self.teichmuller(&r)?.scale(c))?;
        }
        self.to_witt_coordinates(&acc)
    }

    pub fn witt_add(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        a.check_compatible(b)?;
        let s = self.from_witt_coordinates(a)?.try_add(&self.from_witt_coordinates(b)?)?;
        self.to_witt_coordinates(&s)
    }

    pub fn witt_mul(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        a.check_compatible(b)?;
        let s = self.from_witt_coordinates(a)?.try_mul(&self.from_witt_coordinates(b)?)?;
        self.to_witt_coordinates(&s)
    }

    pub fn witt_neg(&self, a: &WittVector) -> Result<WittVector> {
        self.to_witt_coordinates(&self.from_witt_coordinates(a)?.neg())
    }
}

/// [`WittOracle::canonical_map`] through the shared oracle for `(R, n)`.
pub fn canonical_map(x: &MonoidAlgebraElement, n: usize) -> Result<WittVector> {
    WittOracle::shared(x.algebra(), n)?.canonical_map(x)
}

pub fn witt_add(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    WittOracle::shared(a.algebra(), a.level())?.witt_add(a, b)
}

pub fn witt_mul(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    WittOracle::shared(a.algebra(), a.level())?.witt_mul(a, b)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::perfect_algebra::FactorSpec;

    fn prime(p: u64) -> Algebra {
        AlgebraDescriptor::prime_field(p).unwrap()
    }

    #[test]
    fn galois_ring_arithmetic() {
        let f2 = prime(2);
        let z4 = WittOracle::new(&f2, 2).unwrap();
        let one = z4.ring().one();
        assert_eq!(one.try_add(&one).unwrap().coeffs(), &[2]);

        let z9 = WittOracle::new(&prime(3), 2).unwrap();
        let five = z9.ring().from_integer(&BigInt::from(5));
        let two = z9.ring().from_integer(&BigInt::from(2));
        assert_eq!(five.try_mul(&two).unwrap().coeffs(), &[1]);

        // GR(4, 2) with f = x^2 + x + 1: x * x = -x - 1 = 3 + 3x
        let f4 = AlgebraDescriptor::field(2, 2).unwrap();
        let gr = WittOracle::new(&f4, 2).unwrap();
        let x = gr.ring().element(&[0, 1]).unwrap();
        assert_eq!(x.try_mul(&x).unwrap().coeffs(), &[3, 3]);
        assert_eq!(x.neg().coeffs(), &[0, 3]);
    }

    #[test]
    fn teichmuller_examples() {
        let f3 = prime(3);
        for n in 1..=4 {
            let o = WittOracle::new(&f3, n).unwrap();
            assert_eq!(o.teichmuller(&f3.one()).unwrap(), o.ring().one());
            assert_eq!(o.teichmuller(&f3.zero()).unwrap(), o.ring().zero());
        }
        let z9 = WittOracle::new(&f3, 2).unwrap();
        assert_eq!(z9.teichmuller(&f3.from_int(2)).unwrap().coeffs(), &[8]);
        let z27 = WittOracle::new(&f3, 3).unwrap();
        assert_eq!(z27.teichmuller(&f3.from_int(2)).unwrap().coeffs(), &[26]);
    }

    #[test]
    fn teichmuller_is_multiplicative_and_fixed() {
        let f9 = AlgebraDescriptor::field(3, 2).unwrap();
        let o = WittOracle::new(&f9, 3).unwrap();
        let all: Vec<_> = f9.enumerate().unwrap().collect();
        for r in &all {
            let t = o.teichmuller(r).unwrap();
            assert_eq!(t.pow(9), t);
            assert_eq!(&t.residue(), r);
            for s in &all {
                let ts = o.teichmuller(s).unwrap();
                assert_eq!(o.teichmuller(&(r * s)).unwrap(), t.try_mul(&ts).unwrap());
            }
        }
    }

    #[test]
    fn digit_extraction_examples() {
        let f2 = prime(2);
        let z4 = WittOracle::new(&f2, 2).unwrap();
        let three = z4.ring().from_integer(&BigInt::from(3));
        let w = z4.to_witt_coordinates(&three).unwrap();
        assert_eq!(w.to_string(), "(1, 1)");
        assert_eq!(z4.from_witt_coordinates(&w).unwrap(), three);

        let f3 = prime(3);
        let z9 = WittOracle::new(&f3, 2).unwrap();
        let five = z9.ring().from_integer(&BigInt::from(5));
        assert_eq!(z9.to_witt_coordinates(&five).unwrap().to_string(), "(2, 2)");
        let w01 = WittVector::new(&f3, vec![f3.zero(), f3.one()]).unwrap();
        assert_eq!(z9.from_witt_coordinates(&w01).unwrap().coeffs(), &[3]);

        let r = f3.from_int(2);
        let t = z9.teichmuller(&r).unwrap();
        assert_eq!(z9.to_witt_coordinates(&t).unwrap(), WittVector::teichmuller(&r, 2));
    }

    #[test]
    fn coordinates_are_a_bijection() {
        // exhaustive while p^{e n} <= 4096
        let configs: Vec<(Algebra, usize)> = vec![
            (prime(2), 4),
            (AlgebraDescriptor::field(2, 2).unwrap(), 3),
            (AlgebraDescriptor::field(2, 3).unwrap(), 3),
            (prime(3), 3),
            (AlgebraDescriptor::field(3, 2).unwrap(), 2),
            (prime(5), 3),
            (AlgebraDescriptor::new(2, &[FactorSpec::degree(1), FactorSpec::degree(2)]).unwrap(), 3),
        ];
        for (alg, n) in configs {
            let o = WittOracle::new(&alg, n).unwrap();
            let q = o.ring().modulus();
            let width = alg.width();
            let total = (q as u128).pow(width as u32);
            assert!(total <= 4096);
            let mut seen = std::collections::HashSet::new();
            for idx in 0..total as u64 {
                let mut coeffs = vec![0u64; width];
                let mut rest = idx;
                for c in coeffs.iter_mut() {
                    *c = rest % q;
                    rest /= q;
                }
                let y = o.ring().element(&coeffs).unwrap();
                let w = o.to_witt_coordinates(&y).unwrap();
                assert_eq!(o.from_witt_coordinates(&w).unwrap(), y);
                assert!(seen.insert(w.to_string()));
            }
        }
    }

    #[test]
    fn canonical_map_examples() {
        let f2 = prime(2);
        let x = MonoidAlgebraElement::integer(&f2, 3);
        assert_eq!(canonical_map(&x, 3).unwrap().to_string(), "(1, 1, 0)");
        let f4 = AlgebraDescriptor::field(2, 2).unwrap();
        let g = f4.generator();
        let w = canonical_map(&MonoidAlgebraElement::symbol(&g), 3).unwrap();
        assert_eq!(w, WittVector::teichmuller(&g, 3));
    }

    #[test]
    fn witt_operation_examples() {
        let f2 = prime(2);
        let one = WittVector::one(&f2, 2);
        let zero = WittVector::zero(&f2, 2);
        let w11 = WittVector::new(&f2, vec![f2.one(), f2.one()]).unwrap();
        assert_eq!(witt_add(&one, &one).unwrap().to_string(), "(0, 1)");
        assert!(witt_add(&one, &w11).unwrap().is_zero());
        assert_eq!(witt_add(&w11, &zero).unwrap(), w11);
        assert_eq!(witt_mul(&w11, &one).unwrap(), w11);
        let w3 = WittVector::one(&f2, 3);
        assert!(matches!(witt_add(&one, &w3), Err(crate::Error::LevelMismatch(2, 3))));
    }

    #[test]
    fn product_algebra_commutes_with_projection() {
        let prod = AlgebraDescriptor::new(2, &[FactorSpec::degree(1), FactorSpec::degree(2)]).unwrap();
        let f2 = prime(2);
        let f4 = AlgebraDescriptor::field(2, 2).unwrap();
        let x = MonoidAlgebraElement::from_terms(
            &prod,
            [
                (BigInt::from(3), prod.element(&[1, 0, 1]).unwrap()),
                (BigInt::from(-5), prod.element(&[1, 1, 1]).unwrap()),
                (BigInt::from(2), prod.element(&[0, 1, 0]).unwrap()),
            ],
        )
        .unwrap();
        let project = |factor: usize, alg: &Algebra| {
            MonoidAlgebraElement::from_terms(
                alg,
                x.terms().map(|(c, r)| {
                    let part: Vec<u64> = r.factor(factor).iter().map(|&v| v as u64).collect();
                    (c.clone(), alg.element(&part).unwrap())
                }),
            )
            .unwrap()
        };
        let w = canonical_map(&x, 3).unwrap();
        let w2 = canonical_map(&project(0, &f2), 3).unwrap();
        let w4 = canonical_map(&project(1, &f4), 3).unwrap();
        for k in 0..3 {
            let c = w.component(k);
            assert_eq!(c.factor(0), w2.component(k).coords());
            assert_eq!(c.factor(1), w4.component(k).coords());
        }
    }
}
