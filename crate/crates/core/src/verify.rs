//! Randomised and exhaustive property suites behind the `check` command.
//!
//! Every property draws from its own ChaCha8 stream derived from the run seed
//! and the property name, so results do not depend on scheduling and any
//! failure can be replayed from the seed alone. Reports are sorted by name.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::monoid_algebra::MonoidAlgebraElement as Z;
use crate::perfect_algebra::{Algebra, AlgebraDescriptor, AlgebraElement, FactorSpec};
use crate::text::{parse_element, parse_field_element, parse_witt_vector};
use crate::witt_core::{
    alpha_3_with_sign, alpha_recursive, alpha_with, beta, congruent_mod_ideal_power, in_ideal_power,
    quotient_add, quotient_mul, sample_ideal_power, Alpha3Sign, IdealSampleShape, WittVector,
};
use crate::witt_oracle::{canonical_map, WittOracle};
use crate::witt_polynomials::{load_or_build, GenerationBounds};

/// A named algebra used by the sweeps.
#[derive(Debug, Clone)]
pub struct Configuration {
    pub name: String,
    pub algebra: Algebra,
}

/// `F_2, F_4, F_8, F_2 × F_4, F_3, F_9, F_5, F_25, F_7`.
pub fn standard_configurations() -> Vec<Configuration> {
    let field = |name: &str, p, e| Configuration {
        name: name.to_string(),
        algebra: AlgebraDescriptor::field(p, e).expect("built-in field"),
    };
    vec![
        field("F2", 2, 1),
        field("F4", 2, 2),
        field("F8", 2, 3),
        Configuration {
            name: "F2xF4".to_string(),
            algebra: AlgebraDescriptor::new(2, &[FactorSpec::degree(1), FactorSpec::degree(2)])
                .expect("built-in product"),
        },
        field("F3", 3, 1),
        field("F9", 3, 2),
        field("F5", 5, 1),
        field("F25", 5, 2),
        field("F7", 7, 1),
    ]
}

/// Levels with a closed formula that the sweeps exercise: `1, 2, 3`, then
/// `4 <= n <= min(p, 5)`.
pub fn alpha_levels(p: u64) -> Vec<usize> {
    (1..=5).filter(|&n| n <= 3 || n as u64 <= p).collect()
}

/// Deliberate defects for testing the suites themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Use `-[r_1]` instead of `(-1)^p [r_1]` in the third coordinate.
    SignFlipAlpha3,
}

impl Mutation {
    pub const ALL: [Mutation; 1] = [Mutation::SignFlipAlpha3];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::SignFlipAlpha3 => "sign-flip-alpha3",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mutation `{s}` (known: sign-flip-alpha3)"))
    }
}

/// Parameters of a check run.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub seed: u64,
    /// Random inputs per property.
    pub samples: usize,
    pub mutation: Option<Mutation>,
    pub cache_dir: Option<PathBuf>,
    pub bounds: GenerationBounds,
    /// Algebras sampled by the sweeps.
    pub algebras: Vec<Configuration>,
    /// Only run properties whose name starts with this prefix.
    pub filter: Option<String>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            samples: 100,
            mutation: None,
            cache_dir: None,
            bounds: GenerationBounds::default(),
            algebras: standard_configurations(),
            filter: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub passed: bool,
    /// Random inputs tried.
    pub samples: usize,
    /// Fixed inputs swept.
    pub exhaustive: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub samples: usize,
    pub mutation: Option<Mutation>,
    pub passed: bool,
    pub properties: Vec<PropertyReport>,
}

impl CheckReport {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyReport> {
        self.properties.iter().filter(|p| !p.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            let status = if p.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} {} (samples={}, exhaustive={})", p.name, p.samples, p.exhaustive)?;
            if let Some(c) = &p.counterexample {
                write!(f, "\n     counterexample: {c}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} properties, {} failed, seed {}", self.properties.len(), failed, self.seed)
    }
}

type Check = std::result::Result<(), String>;

struct Ctx {
    rng: ChaCha8Rng,
    samples: usize,
    exhaustive: usize,
    sign: Alpha3Sign,
    configs: Vec<Configuration>,
    config: CheckConfig,
}

fn fail<T: fmt::Display>(what: T) -> Check {
    Err(what.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("unexpected error: {e}"))
}

impl Ctx {
    fn algebra(&mut self) -> Algebra {
        let i = self.rng.random_range(0..self.configs.len());
        self.configs[i].algebra.clone()
    }

    fn level(&mut self, p: u64) -> usize {
        let levels = alpha_levels(p);
        levels[self.rng.random_range(0..levels.len())]
    }

    fn element(&mut self, alg: &Algebra) -> Z {
        Z::random(alg, &mut self.rng, 5, 100)
    }

    fn small_element(&mut self, alg: &Algebra) -> Z {
        Z::random(alg, &mut self.rng, 4, 50)
    }

    fn witt_vector(&mut self, alg: &Algebra, n: usize) -> WittVector {
        let c = (0..n).map(|_| alg.random_element(&mut self.rng)).collect();
        WittVector::new(alg, c).expect("same algebra")
    }

    fn in_ideal(&mut self, alg: &Algebra, n: usize) -> Z {
        sample_ideal_power(alg, n, &mut self.rng, &IdealSampleShape::default())
    }

    fn alpha(&self, x: &Z, n: usize) -> std::result::Result<WittVector, String> {
        lib(alpha_with(x, n, self.sign))
    }

    /// Runs `check` on `samples` inputs from `gen`, shrinking the first
    /// failure with `shrink`.
    fn sweep<T: Clone + fmt::Debug>(
        &mut self,
        mut generate: impl FnMut(&mut Self) -> T,
        check: impl Fn(&Self, &T) -> Check,
        shrink: impl Fn(&T) -> Vec<T>,
    ) -> Check {
        for _ in 0..self.config.samples {
            let input = generate(self);
            self.samples += 1;
            if check(self, &input).is_err() {
                let minimal = minimise(input, |t| check(self, t).is_err(), &shrink);
                let msg = check(self, &minimal).expect_err("still failing");
                return Err(msg);
            }
        }
        Ok(())
    }
}

/// Greedy shrinking: accept any candidate that still fails until none does.
fn minimise<T: Clone>(mut input: T, fails: impl Fn(&T) -> bool, shrink: impl Fn(&T) -> Vec<T>) -> T {
    for _ in 0..500 {
        match shrink(&input).into_iter().find(|c| fails(c)) {
            Some(smaller) => input = smaller,
            None => break,
        }
    }
    input
}

/// Drop a term, or move one coefficient towards zero.
fn shrink_element(x: &Z) -> Vec<Z> {
    let terms: Vec<(BigInt, AlgebraElement)> = x.terms().map(|(c, r)| (c.clone(), r)).collect();
    let rebuild = |f: &dyn Fn(usize, &BigInt) -> Option<BigInt>| {
        let t = terms.iter().enumerate().filter_map(|(i, (c, r))| f(i, c).map(|c| (c, r.clone())));
        Z::from_terms(x.algebra(), t).expect("same algebra")
    };
    let mut out = Vec::new();
    for j in 0..terms.len() {
        out.push(rebuild(&|i, c| (i != j).then(|| c.clone())));
    }
    for (j, (c, _)) in terms.iter().enumerate() {
        let one = c.signum();
        for smaller in [one.clone(), c / 2, c - &one] {
            if smaller.abs() < c.abs() && !smaller.is_zero() {
                out.push(rebuild(&|i, d| Some(if i == j { smaller.clone() } else { d.clone() })));
            }
        }
    }
    out
}

fn shrink_pair(pair: &(Z, Z)) -> Vec<(Z, Z)> {
    let (x, y) = pair;
    let mut out: Vec<(Z, Z)> = shrink_element(x).into_iter().map(|s| (s, y.clone())).collect();
    out.extend(shrink_element(y).into_iter().map(|s| (x.clone(), s)));
    out
}

fn no_shrink<T>(_: &T) -> Vec<T> {
    Vec::new()
}

fn describe(x: &Z) -> String {
    format!("x = {x} over {}", x.algebra())
}

struct Property {
    name: &'static str,
    run: fn(&mut Ctx) -> Check,
}

fn properties() -> Vec<Property> {
    let mut v = vec![
        Property { name: "algebra.characteristic", run: algebra_characteristic },
        Property { name: "algebra.frobenius_bijective", run: algebra_frobenius_bijective },
        Property { name: "algebra.frobenius_ring_map", run: algebra_frobenius_ring_map },
        Property { name: "algebra.ring_axioms", run: algebra_ring_axioms },
        Property { name: "core.alpha_matches_oracle", run: core_alpha_matches_oracle },
        Property { name: "core.augmentation_shift", run: core_augmentation_shift },
        Property { name: "core.delta_ideal_sum", run: core_delta_ideal_sum },
        Property { name: "core.delta_lowers_ideal", run: core_delta_lowers_ideal },
        Property { name: "core.delta_congruence", run: core_delta_congruence },
        Property { name: "core.delta_split_product_ideal", run: core_delta_split_product_ideal },
        Property { name: "core.delta_of_p", run: core_delta_of_p },
        Property { name: "core.delta_of_p_multiple", run: core_delta_of_p_multiple },
        Property { name: "core.delta_congruent_sum", run: core_delta_congruent_sum },
        Property { name: "core.quotient_arithmetic", run: core_quotient_arithmetic },
        Property { name: "core.recursion_exact", run: core_recursion_exact },
        Property { name: "core.ring_homomorphism", run: core_ring_homomorphism },
        Property { name: "core.round_trip", run: core_round_trip },
        Property { name: "core.section", run: core_section },
        Property { name: "core.sign_necessity", run: core_sign_necessity },
        Property { name: "core.truncation", run: core_truncation },
        Property { name: "monoid.augmentation_frobenius", run: monoid_augmentation_frobenius },
        Property { name: "monoid.delta_n_fold_product", run: monoid_delta_n_fold_product },
        Property { name: "monoid.delta_product_rule", run: monoid_delta_product_rule },
        Property { name: "monoid.delta_sum_rule", run: monoid_delta_sum_rule },
        Property { name: "monoid.delta_teichmuller_constant", run: monoid_delta_teichmuller_constant },
        Property { name: "oracle.canonical_map_homomorphism", run: oracle_canonical_map_homomorphism },
        Property { name: "oracle.coordinates_bijection", run: oracle_coordinates_bijection },
        Property { name: "oracle.product_projection", run: oracle_product_projection },
        Property { name: "oracle.teichmuller", run: oracle_teichmuller },
        Property { name: "poly.backend_matches_oracle", run: poly_backend_matches_oracle },
        Property { name: "poly.ghost_identities", run: poly_ghost_identities },
        Property { name: "text.round_trip", run: text_round_trip },
    ];
    v.sort_by_key(|p| p.name);
    v
}

/// Names of every property, sorted.
pub fn property_names() -> Vec<&'static str> {
    properties().into_iter().map(|p| p.name).collect()
}

fn stream_for(name: &str) -> u64 {
    // FNV-1a, fixed so streams are stable across toolchains
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn run_one(p: &Property, config: &CheckConfig) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream_for(p.name));
    let sign = match config.mutation {
        Some(Mutation::SignFlipAlpha3) => Alpha3Sign::AlwaysMinus,
        None => Alpha3Sign::Alternating,
    };
    let mut ctx = Ctx { rng, samples: 0, exhaustive: 0, sign, configs: config.algebras.clone(), config: config.clone() };
    let outcome = (p.run)(&mut ctx);
    PropertyReport {
        name: p.name.to_string(),
        passed: outcome.is_ok(),
        samples: ctx.samples,
        exhaustive: ctx.exhaustive,
        counterexample: outcome.err(),
    }
}

/// Runs every selected property in parallel.
pub fn run_check(config: &CheckConfig) -> CheckReport {
    let selected: Vec<Property> = properties()
        .into_iter()
        .filter(|p| config.filter.as_deref().is_none_or(|f| p.name.starts_with(f)))
        .collect();
    let mut reports: Vec<PropertyReport> = selected.par_iter().map(|p| run_one(p, config)).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    CheckReport {
        seed: config.seed,
        samples: config.samples,
        mutation: config.mutation,
        passed: reports.iter().all(|r| r.passed),
        properties: reports,
    }
}

// ---------------------------------------------------------------- algebra

fn algebra_characteristic(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            alg.random_element(&mut c.rng)
        },
        |_, a| {
            let p = BigInt::from(a.algebra().characteristic());
            ensure(a.scale(&p).is_zero(), || format!("p * {a} != 0 in {}", a.algebra()))
        },
        no_shrink,
    )
}

fn algebra_frobenius_bijective(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            alg.random_element(&mut c.rng)
        },
        |_, a| {
            ensure(a.frobenius().frobenius_inv() == *a && a.frobenius_inv().frobenius() == *a, || {
                format!("φ and φ^-1 are not inverse at {a} in {}", a.algebra())
            })
        },
        no_shrink,
    )
}

fn algebra_frobenius_ring_map(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            (alg.random_element(&mut c.rng), alg.random_element(&mut c.rng))
        },
        |_, (a, b)| {
            ensure((a + b).frobenius() == &a.frobenius() + &b.frobenius(), || format!("φ({a} + {b})"))?;
            ensure((a * b).frobenius() == &a.frobenius() * &b.frobenius(), || format!("φ({a} * {b})"))
        },
        no_shrink,
    )
}

fn algebra_ring_axioms(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            (alg.random_element(&mut c.rng), alg.random_element(&mut c.rng), alg.random_element(&mut c.rng))
        },
        |_, (a, b, c)| {
            let alg = a.algebra();
            let at = || format!("a = {a}, b = {b}, c = {c} in {alg}");
            ensure(&(a * b) * c == a * &(b * c), || format!("associativity fails at {}", at()))?;
            ensure(&(a + b) + c == a + &(b + c), || format!("additive associativity fails at {}", at()))?;
            ensure(a * b == b * a && a + b == b + a, || format!("commutativity fails at {}", at()))?;
            ensure(a * &(b + c) == &(a * b) + &(a * c), || format!("distributivity fails at {}", at()))?;
            ensure(a * &alg.one() == *a && a + &alg.zero() == *a, || format!("identities fail at {}", at()))?;
            ensure((a + &(-a)).is_zero(), || format!("negation fails at {}", at()))
        },
        no_shrink,
    )
}

// ---------------------------------------------------------------- monoid

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `δ(x + y) = δ(x) + δ(y) - Σ_{0<k<p} (C(p,k)/p) x^k y^{p-k}`.
pub fn delta_sum_rule_holds(x: &Z, y: &Z) -> bool {
    let p = x.algebra().characteristic();
    let mut cross = Z::zero(x.algebra());
    for k in 1..p {
        let (c, rem) = binomial(p, k).div_rem(&BigInt::from(p));
        assert!(rem.is_zero(), "C(p, k) divisible by p");
        cross = &cross + &(&x.pow(k) * &y.pow(p - k)).scale(&c);
    }
    (x + y).delta() == &(&x.delta() + &y.delta()) - &cross
}

/// `δ(xy) = δ(x) φ(y) + x^p δ(y)`.
pub fn delta_product_rule_holds(x: &Z, y: &Z) -> bool {
    let p = x.algebra().characteristic();
    (x * y).delta() == &(&x.delta() * &y.phi()) + &(&x.pow(p) * &y.delta())
}

/// `δ(x_1 ⋯ x_m) = Σ_k x_1^p ⋯ x_{k-1}^p δ(x_k) φ(x_{k+1}) ⋯ φ(x_m)`.
pub fn delta_n_fold_rule_holds(xs: &[Z]) -> bool {
    let alg = xs[0].algebra();
    let p = alg.characteristic();
    let product = xs.iter().fold(Z::one(alg), |acc, x| &acc * x);
    let mut rhs = Z::zero(alg);
    for k in 0..xs.len() {
        let mut t = Z::one(alg);
        for (j, x) in xs.iter().enumerate() {
            let f = match j.cmp(&k) {
                std::cmp::Ordering::Less => x.pow(p),
                std::cmp::Ordering::Equal => x.delta(),
                std::cmp::Ordering::Greater => x.phi(),
            };
            t = &t * &f;
        }
        rhs = &rhs + &t;
    }
    product.delta() == rhs
}

fn monoid_delta_sum_rule(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            (c.small_element(&alg), c.small_element(&alg))
        },
        |_, (x, y)| ensure(delta_sum_rule_holds(x, y), || format!("x = {x}, y = {y} over {}", x.algebra())),
        shrink_pair,
    )
}

fn monoid_delta_product_rule(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            (c.small_element(&alg), c.small_element(&alg))
        },
        |_, (x, y)| ensure(delta_product_rule_holds(x, y), || format!("x = {x}, y = {y} over {}", x.algebra())),
        shrink_pair,
    )
}

fn monoid_delta_n_fold_product(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let m = c.rng.random_range(3..=4);
            (0..m).map(|_| Z::random(&alg, &mut c.rng, 3, 20)).collect::<Vec<_>>()
        },
        |_, xs| {
            ensure(delta_n_fold_rule_holds(xs), || {
                let list: Vec<String> = xs.iter().map(ToString::to_string).collect();
                format!("factors [{}] over {}", list.join("; "), xs[0].algebra())
            })
        },
        no_shrink,
    )
}

fn monoid_delta_teichmuller_constant(ctx: &mut Ctx) -> Check {
    for cfg in ctx.configs.clone() {
        for r in cfg.algebra.enumerate().expect("small algebra") {
            ctx.exhaustive += 1;
            ensure(Z::symbol(&r).delta().is_zero(), || format!("δ([{r}]) != 0 over {}", cfg.algebra))?;
        }
    }
    Ok(())
}

fn monoid_augmentation_frobenius(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            c.element(&alg)
        },
        |_, x| ensure(x.phi().augmentation() == x.augmentation().frobenius(), || describe(x)),
        shrink_element,
    )
}

// ---------------------------------------------------------------- core

fn level_and_element(c: &mut Ctx) -> (usize, Z) {
    let alg = c.algebra();
    let n = c.level(alg.characteristic());
    (n, c.element(&alg))
}

fn shrink_at_level(t: &(usize, Z)) -> Vec<(usize, Z)> {
    shrink_element(&t.1).into_iter().map(|x| (t.0, x)).collect()
}

fn core_alpha_matches_oracle(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        level_and_element,
        |c, (n, x)| {
            let a = c.alpha(x, *n)?;
            let o = lib(canonical_map(x, *n))?;
            ensure(a == o, || format!("{} at n = {n}: alpha = {a}, oracle = {o}", describe(x)))
        },
        shrink_at_level,
    )
}

fn core_recursion_exact(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let p = alg.characteristic();
            let n = c.rng.random_range(2..=(p as usize).clamp(2, 5));
            (n, c.element(&alg))
        },
        |_, (n, x)| {
            let a = lib(alpha_recursive(x, *n))?;
            let o = lib(canonical_map(x, *n))?;
            ensure(a == o, || format!("{} at n = {n}: recursion = {a}, oracle = {o}", describe(x)))
        },
        shrink_at_level,
    )
}

fn core_round_trip(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.level(alg.characteristic());
            c.witt_vector(&alg, n)
        },
        |c, w| {
            let back = c.alpha(&beta(w), w.level())?;
            ensure(back == *w, || format!("w = {w} over {}: alpha(beta(w)) = {back}", w.algebra()))
        },
        no_shrink,
    )
}

fn core_section(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        level_and_element,
        |c, (n, x)| {
            let b = beta(&c.alpha(x, *n)?);
            ensure(lib(congruent_mod_ideal_power(&b, x, *n))?, || {
                format!("{} at n = {n}: beta(alpha(x)) = {b} is not congruent to x", describe(x))
            })
        },
        shrink_at_level,
    )
}

fn core_ring_homomorphism(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.level(alg.characteristic());
            (n, (c.element(&alg), c.element(&alg)))
        },
        |c, (n, (x, y))| {
            let oracle = lib(WittOracle::shared(x.algebra(), *n))?;
            let (ax, ay) = (c.alpha(x, *n)?, c.alpha(y, *n)?);
            let sum = c.alpha(&(x + y), *n)?;
            let prod = c.alpha(&(x * y), *n)?;
            let at = || format!("x = {x}, y = {y} over {} at n = {n}", x.algebra());
            ensure(sum == lib(oracle.witt_add(&ax, &ay))?, || format!("alpha(x + y) differs: {}", at()))?;
            ensure(prod == lib(oracle.witt_mul(&ax, &ay))?, || format!("alpha(x * y) differs: {}", at()))
        },
        |(n, pair)| shrink_pair(pair).into_iter().map(|p| (*n, p)).collect(),
    )
}

fn core_truncation(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        level_and_element,
        |c, (n, x)| {
            if *n < 2 {
                return Ok(());
            }
            let full = c.alpha(x, *n)?;
            let lower = c.alpha(x, n - 1)?;
            ensure(lib(full.truncate(n - 1))? == lower, || {
                format!("{} at n = {n}: alpha_n = {full}, alpha_(n-1) = {lower}", describe(x))
            })
        },
        shrink_at_level,
    )
}

fn core_augmentation_shift(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            c.element(&alg)
        },
        |_, x| {
            let shifted = x - &Z::symbol(&x.augmentation());
            ensure(x.delta().augmentation() == shifted.delta().augmentation(), || describe(x))
        },
        shrink_element,
    )
}

fn core_quotient_arithmetic(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.rng.random_range(1..=4);
            (c.witt_vector(&alg, n), c.witt_vector(&alg, n))
        },
        |_, (a, b)| {
            let oracle = lib(WittOracle::shared(a.algebra(), a.level()))?;
            let at = || format!("a = {a}, b = {b} over {}", a.algebra());
            ensure(lib(quotient_add(a, b))? == lib(oracle.witt_add(a, b))?, || format!("sum differs: {}", at()))?;
            ensure(lib(quotient_mul(a, b))? == lib(oracle.witt_mul(a, b))?, || format!("product differs: {}", at()))
        },
        no_shrink,
    )
}

fn ideal_level(c: &mut Ctx) -> (Algebra, usize) {
    let alg = c.algebra();
    let n = c.rng.random_range(2..=5);
    (alg, n)
}

/// `x ≡ y mod I^n ⇒ δ(x) ≡ δ(y) mod I^{n-1}`.
fn core_delta_congruence(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let (alg, n) = ideal_level(c);
            let y = c.element(&alg);
            let x = &y + &c.in_ideal(&alg, n);
            (n, (x, y))
        },
        |_, (n, (x, y))| {
            ensure(lib(congruent_mod_ideal_power(&x.delta(), &y.delta(), n - 1))?, || {
                format!("x = {x}, y = {y} over {} at n = {n}", x.algebra())
            })
        },
        no_shrink,
    )
}

/// `a ≡ b + c mod I^n`, `c ∈ I^{n-1}` ⇒ `δ(a) ≡ δ(b) + δ(c) mod I^{n-1}`.
fn core_delta_congruent_sum(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let (alg, n) = ideal_level(c);
            let b = c.element(&alg);
            let cc = c.in_ideal(&alg, n - 1);
            let a = &(&b + &cc) + &c.in_ideal(&alg, n);
            (n, (a, b, cc))
        },
        |_, (n, (a, b, c))| {
            ensure(lib(congruent_mod_ideal_power(&a.delta(), &(&b.delta() + &c.delta()), n - 1))?, || {
                format!("a = {a}, b = {b}, c = {c} over {} at n = {n}", a.algebra())
            })
        },
        no_shrink,
    )
}

/// `ab ∈ I^n ⇒ δ(a + b) ≡ δ(a) + δ(b) mod I^n`, with `a ∈ I^j`, `b ∈ I^{n-j}`.
fn core_delta_split_product_ideal(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.rng.random_range(1..=4);
            let j = c.rng.random_range(0..=n);
            let a = if j == 0 { c.element(&alg) } else { c.in_ideal(&alg, j) };
            let b = if j == n { c.element(&alg) } else { c.in_ideal(&alg, n - j) };
            (n, (a, b))
        },
        |_, (n, (a, b))| {
            ensure(lib(congruent_mod_ideal_power(&(a + b).delta(), &(&a.delta() + &b.delta()), *n))?, || {
                format!("a = {a}, b = {b} over {} at n = {n}", a.algebra())
            })
        },
        no_shrink,
    )
}

/// `δ(p) ≡ 1 mod I^{p-1}`.
fn core_delta_of_p(ctx: &mut Ctx) -> Check {
    for cfg in ctx.configs.clone() {
        let alg = &cfg.algebra;
        let p = alg.characteristic();
        let lhs = Z::integer(alg, p).delta();
        for k in 1..p as usize {
            ctx.exhaustive += 1;
            ensure(lib(congruent_mod_ideal_power(&lhs, &Z::one(alg), k))?, || {
                format!("δ({p}) = {lhs} is not 1 mod I^{k} over {alg}")
            })?;
        }
    }
    Ok(())
}

/// `δ(pa) ≡ φ(a) mod I^k` for `0 < k < p`.
fn core_delta_of_p_multiple(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let p = alg.characteristic() as usize;
            let k = c.rng.random_range(1..p.max(2));
            (k, c.element(&alg))
        },
        |_, (k, a)| {
            let p = BigInt::from(a.algebra().characteristic());
            ensure(lib(congruent_mod_ideal_power(&a.scale(&p).delta(), &a.phi(), *k))?, || {
                format!("a = {a} over {} at k = {k}", a.algebra())
            })
        },
        shrink_at_level,
    )
}

/// `y ∈ I^n ⇒ δ(x + y) ≡ δ(x) + δ(y) mod I^n`.
fn core_delta_ideal_sum(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.rng.random_range(1..=4);
            let x = c.element(&alg);
            (n, (x, c.in_ideal(&alg, n)))
        },
        |_, (n, (x, y))| {
            ensure(lib(congruent_mod_ideal_power(&(x + y).delta(), &(&x.delta() + &y.delta()), *n))?, || {
                format!("x = {x}, y = {y} over {} at n = {n}", x.algebra())
            })
        },
        no_shrink,
    )
}

/// `δ(I^n) ⊂ I^{n-1}`.
fn core_delta_lowers_ideal(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let (alg, n) = ideal_level(c);
            (n, c.in_ideal(&alg, n))
        },
        |_, (n, x)| {
            ensure(lib(in_ideal_power(x, *n))?, || format!("sample {x} is not in I^{n}"))?;
            ensure(lib(in_ideal_power(&x.delta(), n - 1))?, || {
                format!("x = {x} over {} in I^{n} but δ(x) not in I^{}", x.algebra(), n - 1)
            })
        },
        no_shrink,
    )
}

/// At `p = 2`, the minus-sign variant of the third coordinate must disagree
/// with the oracle somewhere on `k[1]`, `|k| <= 8`, while the `(-1)^p`
/// formula agrees everywhere.
fn core_sign_necessity(ctx: &mut Ctx) -> Check {
    let f2 = AlgebraDescriptor::prime_field(2).expect("F_2");
    let mut ks: Vec<i64> = (-8..=8).collect();
    ks.sort_by_key(|k| (k.abs(), *k < 0));
    let mut witness = None;
    for k in ks {
        ctx.exhaustive += 1;
        let x = Z::integer(&f2, k);
        let oracle = lib(canonical_map(&x, 3))?;
        let formula = alpha_3_with_sign(&x, ctx.sign);
        if formula != oracle {
            return fail(format!("x = {x} over F_2: alpha_3 = {formula}, oracle = {oracle}"));
        }
        if witness.is_none() && alpha_3_with_sign(&x, Alpha3Sign::AlwaysMinus) != oracle {
            witness = Some(k);
        }
    }
    if witness.is_none() {
        return fail("the minus-sign variant agrees with the oracle on every k[1], |k| <= 8");
    }
    ctx.sweep(
        |c| c.element(&f2),
        |c, x| {
            let formula = alpha_3_with_sign(x, c.sign);
            let oracle = lib(canonical_map(x, 3))?;
            ensure(formula == oracle, || format!("{}: alpha_3 = {formula}, oracle = {oracle}", describe(x)))
        },
        shrink_element,
    )
}

// ---------------------------------------------------------------- oracle

fn oracle_coordinates_bijection(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.rng.random_range(1..=5);
            let w = c.witt_vector(&alg, n);
            let oracle = WittOracle::shared(&alg, n).expect("small level");
            let m = oracle.ring().modulus();
            let coeffs: Vec<u64> = (0..alg.width()).map(|_| c.rng.random_range(0..m)).collect();
            (w, coeffs)
        },
        |_, (w, coeffs)| {
            let oracle = lib(WittOracle::shared(w.algebra(), w.level()))?;
            let back = lib(oracle.to_witt_coordinates(&lib(oracle.from_witt_coordinates(w))?))?;
            ensure(back == *w, || format!("w = {w} over {} does not survive the round trip", w.algebra()))?;
            let y = lib(oracle.ring().element(coeffs))?;
            let again = lib(oracle.from_witt_coordinates(&lib(oracle.to_witt_coordinates(&y))?))?;
            ensure(again == y, || format!("ring element {coeffs:?} does not survive the round trip"))
        },
        no_shrink,
    )
}

fn lcm_degree(alg: &Algebra) -> u32 {
    alg.factors().iter().fold(1usize, |acc, f| acc.lcm(&f.degree())) as u32
}

fn oracle_teichmuller(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.rng.random_range(1..=5);
            (n, (alg.random_element(&mut c.rng), alg.random_element(&mut c.rng)))
        },
        |_, (n, (r, s))| {
            let alg = r.algebra();
            let oracle = lib(WittOracle::shared(alg, *n))?;
            let (tr, ts) = (lib(oracle.teichmuller(r))?, lib(oracle.teichmuller(s))?);
            let trs = lib(oracle.teichmuller(&(r * s)))?;
            ensure(trs == lib(tr.try_mul(&ts))?, || format!("τ({r} * {s}) != τ({r}) τ({s}) over {alg} at n = {n}"))?;
            let q = alg.characteristic().pow(lcm_degree(alg));
            ensure(tr.pow(q) == tr, || format!("τ({r})^{q} != τ({r}) over {alg} at n = {n}"))?;
            ensure(tr.residue() == *r, || format!("τ({r}) does not reduce to {r}"))
        },
        no_shrink,
    )
}

fn oracle_canonical_map_homomorphism(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.rng.random_range(1..=5);
            (n, (c.element(&alg), c.element(&alg)))
        },
        |_, (n, (x, y))| {
            let oracle = lib(WittOracle::shared(x.algebra(), *n))?;
            let (cx, cy) = (lib(oracle.canonical_map(x))?, lib(oracle.canonical_map(y))?);
            let at = || format!("x = {x}, y = {y} over {} at n = {n}", x.algebra());
            ensure(lib(oracle.canonical_map(&(x + y)))? == lib(oracle.witt_add(&cx, &cy))?, || format!("sum: {}", at()))?;
            ensure(lib(oracle.canonical_map(&(x * y)))? == lib(oracle.witt_mul(&cx, &cy))?, || format!("product: {}", at()))
        },
        |(n, pair)| shrink_pair(pair).into_iter().map(|p| (*n, p)).collect(),
    )
}

fn factor_algebras(alg: &Algebra) -> Vec<Algebra> {
    alg.factors()
        .iter()
        .map(|f| AlgebraDescriptor::field_with_modulus(alg.characteristic(), f.modulus().to_vec()).expect("valid factor"))
        .collect()
}

fn project(r: &AlgebraElement, i: usize, target: &Algebra) -> AlgebraElement {
    let coords: Vec<u64> = r.factor(i).iter().map(|&c| c as u64).collect();
    target.element(&coords).expect("factor coordinates")
}

fn project_element(x: &Z, i: usize, target: &Algebra) -> Z {
    Z::from_terms(target, x.terms().map(|(c, r)| (c.clone(), project(&r, i, target)))).expect("same algebra")
}

fn oracle_product_projection(ctx: &mut Ctx) -> Check {
    let products: Vec<Algebra> =
        ctx.configs.iter().filter(|c| c.algebra.factors().len() > 1).map(|c| c.algebra.clone()).collect();
    if products.is_empty() {
        return Ok(());
    }
    ctx.sweep(
        |c| {
            let alg = products[c.rng.random_range(0..products.len())].clone();
            let n = c.rng.random_range(1..=4);
            (n, (c.element(&alg), c.element(&alg)))
        },
        |_, (n, (x, y))| {
            let alg = x.algebra();
            let whole = lib(canonical_map(x, *n))?;
            let oracle = lib(WittOracle::shared(alg, *n))?;
            let sum = lib(oracle.witt_add(&whole, &lib(canonical_map(y, *n))?))?;
            for (i, fa) in factor_algebras(alg).iter().enumerate() {
                let (xi, yi) = (project_element(x, i, fa), project_element(y, i, fa));
                let part = lib(canonical_map(&xi, *n))?;
                let projected: Vec<AlgebraElement> = whole.components().iter().map(|r| project(r, i, fa)).collect();
                ensure(part.components() == projected.as_slice(), || {
                    format!("x = {x} over {alg} at n = {n}: factor {i} gives {part}, whole gives {whole}")
                })?;
                let fo = lib(WittOracle::shared(fa, *n))?;
                let part_sum = lib(fo.witt_add(&part, &lib(canonical_map(&yi, *n))?))?;
                let projected: Vec<AlgebraElement> = sum.components().iter().map(|r| project(r, i, fa)).collect();
                ensure(part_sum.components() == projected.as_slice(), || {
                    format!("x = {x}, y = {y} over {alg} at n = {n}: sums disagree on factor {i}")
                })?;
            }
            Ok(())
        },
        no_shrink,
    )
}

// ---------------------------------------------------------------- poly

fn poly_ghost_identities(ctx: &mut Ctx) -> Check {
    for (p, n) in ctx.config.bounds.configurations() {
        ctx.exhaustive += 1;
        let set = lib(load_or_build(p, n, &ctx.config.bounds, ctx.config.cache_dir.as_deref()))?;
        set.verify_ghost_identities().map_err(|f| format!("p = {p}, n = {n}: {f}"))?;
    }
    Ok(())
}

fn poly_backend_matches_oracle(ctx: &mut Ctx) -> Check {
    let bounds = ctx.config.bounds.clone();
    let cache = ctx.config.cache_dir.clone();
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let max = bounds.max_level(alg.characteristic()).min(4);
            let n = c.rng.random_range(1..=max.max(1));
            (c.witt_vector(&alg, n), c.witt_vector(&alg, n))
        },
        |_, (a, b)| {
            let p = a.algebra().characteristic();
            let set = lib(load_or_build(p, a.level(), &bounds, cache.as_deref()))?;
            let oracle = lib(WittOracle::shared(a.algebra(), a.level()))?;
            let at = || format!("a = {a}, b = {b} over {}", a.algebra());
            ensure(lib(set.add(a, b))? == lib(oracle.witt_add(a, b))?, || format!("sum differs: {}", at()))?;
            ensure(lib(set.mul(a, b))? == lib(oracle.witt_mul(a, b))?, || format!("product differs: {}", at()))
        },
        no_shrink,
    )
}

// ---------------------------------------------------------------- text

fn text_round_trip(ctx: &mut Ctx) -> Check {
    ctx.sweep(
        |c| {
            let alg = c.algebra();
            let n = c.rng.random_range(1..=5);
            (c.element(&alg), c.witt_vector(&alg, n))
        },
        |_, (x, w)| {
            let alg = x.algebra();
            let back = lib(parse_element(&x.to_string(), alg))?;
            ensure(back == *x, || format!("{x} reparses as {back}"))?;
            let back = lib(parse_witt_vector(&w.to_string(), alg))?;
            ensure(back == *w, || format!("{w} reparses as {back}"))?;
            for r in w.components() {
                ensure(lib(parse_field_element(&r.to_string(), alg))? == *r, || format!("{r} does not reparse"))?;
            }
            Ok(())
        },
        no_shrink,
    )
}
