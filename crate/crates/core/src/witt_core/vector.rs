use std::fmt;

use crate::error::{Error, Result};
use crate::perfect_algebra::{Algebra, AlgebraDescriptor, AlgebraElement};

/// A truncated Witt vector `(r_0, ..., r_{n-1})` over a perfect algebra.
///
/// The same tuple is the normal form of a class in `ZR/I^n`: two elements of
/// `ZR` are congruent mod `I^n` exactly when their coordinate tuples agree.
#[derive(Clone, PartialEq, Eq)]
pub struct WittVector {
    algebra: Algebra,
    components: Vec<AlgebraElement>,
}

impl WittVector {
    pub fn new(algebra: &Algebra, components: Vec<AlgebraElement>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidLevel { n: 0, min: 1 });
        }
        if components.iter().any(|c| !AlgebraDescriptor::same(algebra, c.algebra())) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(WittVector { algebra: algebra.clone(), components })
    }

    pub(crate) fn from_parts(algebra: &Algebra, components: Vec<AlgebraElement>) -> Self {
        debug_assert!(!components.is_empty());
        WittVector { algebra: algebra.clone(), components }
    }

    pub fn zero(algebra: &Algebra, n: usize) -> Self {
        Self::from_parts(algebra, vec![algebra.zero(); n.max(1)])
    }

    /// `(r, 0, ..., 0)`.
    pub fn teichmuller(r: &AlgebraElement, n: usize) -> Self {
        let alg = r.algebra();
        let mut c = vec![alg.zero(); n.max(1)];
        c[0] = r.clone();
        Self::from_parts(alg, c)
    }

    pub fn one(algebra: &Algebra, n: usize) -> Self {
        Self::teichmuller(&algebra.one(), n)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[AlgebraElement] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &AlgebraElement {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(AlgebraElement::is_zero)
    }

    /// The image in `W_m` for `m <= n`: the first `m` components.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.level() {
            return Err(Error::InvalidLevel { n: m, min: 1 });
        }
        Ok(Self::from_parts(&self.algebra, self.components[..m].to_vec()))
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if !AlgebraDescriptor::same(&self.algebra, &other.algebra) {
            return Err(Error::DescriptorMismatch);
        }
        if self.level() != other.level() {
            return Err(Error::LevelMismatch(self.level(), other.level()));
        }
        Ok(())
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
