//! Witt coordinates on `ZR/I^n`.
//!
//! Every class of `ZR/I^n` has a unique representative
//! `Σ_{k<n} p^k [φ^{-k}(r_k)]`; the map back to the coordinates
//! `(r_0, ..., r_{n-1})` is computed here from the augmentation `π` and the
//! arithmetic derivation `δ`:
//!
//! * `n = 2`, every `p`: `(π(x), π(δ(x)))`.
//! * `n = 3`, every `p`: the third coordinate is
//!   `π(δ(δ(x - [r_0]) + (-1)^p [r_1]))`.
//! * `2 <= n <= p`: the accumulator recursion `a_0 = x`,
//!   `a_ν = δ(a_{ν-1} - [r_{ν-1}])`, `r_ν = π(a_ν)`.
//!
//! Congruence mod `I^n` is decided by the independent Galois-ring model in
//! [`crate::witt_oracle`], which covers every `(p, n)`.

mod vector;

use num_bigint::BigInt;
use rand::Rng;

pub use vector::WittVector;

use crate::error::{Error, Result};
use crate::monoid_algebra::MonoidAlgebraElement;
use crate::perfect_algebra::Algebra;
use crate::witt_oracle::canonical_map;

/// Sign in front of `[r_1]` in the third coordinate formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alpha3Sign {
    /// `(-1)^p`, correct for every prime.
    #[default]
    Alternating,
    /// Always `-1`. Only correct for odd `p`; kept as a negative control.
    AlwaysMinus,
}

/// `β_n(r_0, ..., r_{n-1}) = Σ p^k [φ^{-k}(r_k)]` as an (unreduced) element
/// of `ZR`.
pub fn beta(w: &WittVector) -> MonoidAlgebraElement {
    let alg = w.algebra();
    let p = alg.characteristic();
    let mut acc = MonoidAlgebraElement::zero(alg);
    let mut pk = BigInt::from(1);
    for (k, r) in w.components().iter().enumerate() {
        let root = r.frobenius_pow(-(k as i64));
        acc = &acc + &MonoidAlgebraElement::monomial(pk.clone(), &root);
        pk *= p;
    }
    acc
}

/// `(π(x), π(δ(x)))`, valid for every prime.
pub fn alpha_2(x: &MonoidAlgebraElement) -> WittVector {
    let r0 = x.augmentation();
    let r1 = x.delta().augmentation();
    WittVector::from_parts(x.algebra(), vec![r0, r1])
}

/// `(π(x), π(δ(x)), π(δ(δ(x - [π(x)]) + (-1)^p [π(δ(x))])))`.
pub fn alpha_3(x: &MonoidAlgebraElement) -> WittVector {
    alpha_3_with_sign(x, Alpha3Sign::Alternating)
}

pub fn alpha_3_with_sign(x: &MonoidAlgebraElement, sign: Alpha3Sign) -> WittVector {
    let alg = x.algebra();
    let r0 = x.augmentation();
    let r1 = x.delta().augmentation();
    let inner = (x - &MonoidAlgebraElement::symbol(&r0)).delta();
    let plus = sign == Alpha3Sign::Alternating && alg.characteristic().is_multiple_of(2);
    let r1_sym = MonoidAlgebraElement::symbol(&r1);
    let shifted = if plus { &inner + &r1_sym } else { &inner - &r1_sym };
    let r2 = shifted.delta().augmentation();
    WittVector::from_parts(alg, vec![r0, r1, r2])
}

/// The recursion `r_ν = π(δ(⋯δ(δ(x - [r_0]) - [r_1])⋯ - [r_{ν-1}]))`,
/// valid for `n <= p`.
///
/// Rejects `n > p` with [`Error::UnsupportedTruncation`].
pub fn alpha_recursive(x: &MonoidAlgebraElement, n: usize) -> Result<WittVector> {
    let p = x.algebra().characteristic();
    if n == 0 {
        return Err(Error::InvalidLevel { n, min: 1 });
    }
    if n as u64 > p {
        return Err(Error::UnsupportedTruncation { p, n });
    }
    let mut acc = x.clone();
    let mut components = Vec::with_capacity(n);
    components.push(acc.augmentation());
    for _ in 1..n {
        let last = components.last().expect("nonempty");
        acc = (&acc - &MonoidAlgebraElement::symbol(last)).delta();
        components.push(acc.augmentation());
    }
    Ok(WittVector::from_parts(x.algebra(), components))
}

/// [`alpha_recursive`] with the accumulator `a_ν` kept modulo `p^{n-ν}`.
///
/// If `a ≡ b mod p^{m+1}` then `δ(a) ≡ δ(b) mod p^m`, and `r_ν` only depends
/// on `a_ν mod p`, so the digits agree with the unreduced recursion while the
/// coefficients stay below `p^n`.
pub fn alpha_recursive_truncated(x: &MonoidAlgebraElement, n: usize) -> Result<WittVector> {
    let p = x.algebra().characteristic();
    if n == 0 {
        return Err(Error::InvalidLevel { n, min: 1 });
    }
    if n as u64 > p {
        return Err(Error::UnsupportedTruncation { p, n });
    }
    let pb = BigInt::from(p);
    let mut modulus = pb.pow(n as u32);
    let mut acc = x.reduce_coefficients(&modulus);
    let mut components = Vec::with_capacity(n);
    components.push(acc.augmentation());
    for _ in 1..n {
        let last = components.last().expect("nonempty");
        modulus /= &pb;
        acc = (&acc - &MonoidAlgebraElement::symbol(last)).delta().reduce_coefficients(&modulus);
        components.push(acc.augmentation());
    }
    Ok(WittVector::from_parts(x.algebra(), components))
}

/// The isomorphism `ZR/I^n -> W_n(R)` by closed formula.
///
/// `n = 1, 2, 3` work for every prime; `4 <= n <= p` uses
/// [`alpha_recursive_truncated`]. Anything else is [`Error::UnsupportedTruncation`];
/// use [`canonical_map`] for those cases.
pub fn alpha(x: &MonoidAlgebraElement, n: usize) -> Result<WittVector> {
    alpha_with(x, n, Alpha3Sign::Alternating)
}

/// [`alpha`] with a chosen sign rule for `n = 3`.
pub fn alpha_with(x: &MonoidAlgebraElement, n: usize, sign: Alpha3Sign) -> Result<WittVector> {
    match n {
        0 => Err(Error::InvalidLevel { n, min: 1 }),
        1 => Ok(WittVector::from_parts(x.algebra(), vec![x.augmentation()])),
        2 => Ok(alpha_2(x)),
        3 => Ok(alpha_3_with_sign(x, sign)),
        _ => alpha_recursive_truncated(x, n),
    }
}

/// Whether `alpha` has a closed formula for `(p, n)`.
pub fn alpha_supported(p: u64, n: usize) -> bool {
    n >= 1 && (n <= 3 || n as u64 <= p)
}

/// Coordinates of `x` in `W_n(R)`: the closed formula where one exists, the
/// Galois-ring model otherwise.
pub fn normal_form(x: &MonoidAlgebraElement, n: usize) -> Result<WittVector> {
    match alpha(x, n) {
        Err(Error::UnsupportedTruncation { .. }) => canonical_map(x, n),
        other => other,
    }
}

/// `x ≡ y mod I^n`. Decided through the Galois-ring model, so it holds for
/// every `(p, n)`; `I^0` is the whole ring.
pub fn congruent_mod_ideal_power(
    x: &MonoidAlgebraElement,
    y: &MonoidAlgebraElement,
    n: usize,
) -> Result<bool> {
    let diff = x.try_sub(y)?;
    if n == 0 {
        return Ok(true);
    }
    Ok(canonical_map(&diff, n)?.is_zero())
}

/// `x ∈ I^n`.
pub fn in_ideal_power(x: &MonoidAlgebraElement, n: usize) -> Result<bool> {
    congruent_mod_ideal_power(x, &MonoidAlgebraElement::zero(x.algebra()), n)
}

/// Shape of the elements produced by [`sample_ideal_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealSampleShape {
    /// Number of products summed (at least one).
    pub summands: usize,
    /// Support of the random `ZR` cofactor multiplied onto each product; zero
    /// disables the cofactor.
    pub cofactor_support: usize,
    pub cofactor_coeff_bound: i64,
}

impl Default for IdealSampleShape {
    fn default() -> Self {
        IdealSampleShape { summands: 2, cofactor_support: 2, cofactor_coeff_bound: 5 }
    }
}

/// `[r] + [s] - [r + s]`, a generator of the augmentation ideal.
pub fn ideal_generator(r: &crate::AlgebraElement, s: &crate::AlgebraElement) -> MonoidAlgebraElement {
    let sym = MonoidAlgebraElement::symbol;
    &(&sym(r) + &sym(s)) - &sym(&(r + s))
}

/// A random element of `I^n`: a sum of products of `n` generators
/// `[r_i] + [s_i] - [r_i + s_i]`, each product optionally times a random
/// element of `ZR`.
pub fn sample_ideal_power<G: Rng + ?Sized>(
    algebra: &Algebra,
    n: usize,
    rng: &mut G,
    shape: &IdealSampleShape,
) -> MonoidAlgebraElement {
    let mut acc = MonoidAlgebraElement::zero(algebra);
    for _ in 0..shape.summands.max(1) {
        let mut prod = MonoidAlgebraElement::one(algebra);
        for _ in 0..n {
            let r = algebra.random_element(rng);
            let s = algebra.random_element(rng);
            prod = &prod * &ideal_generator(&r, &s);
        }
        if shape.cofactor_support > 0 {
            let c = MonoidAlgebraElement::random(
                algebra,
                rng,
                shape.cofactor_support,
                shape.cofactor_coeff_bound,
            );
            prod = &prod * &c;
        }
        acc = &acc + &prod;
    }
    acc
}

/// Sum in `ZR/I^n`, computed on representatives.
pub fn quotient_add(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    a.check_compatible(b)?;
    normal_form(&(&beta(a) + &beta(b)), a.level())
}

/// Product in `ZR/I^n`, computed on representatives.
pub fn quotient_mul(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    a.check_compatible(b)?;
    normal_form(&(&beta(a) * &beta(b)), a.level())
}
