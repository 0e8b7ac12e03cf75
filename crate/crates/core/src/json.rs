//! JSON encodings.
//!
//! Algebra elements are carried as strings in the text syntax of
//! [`crate::text`], so arbitrarily large integers and extension-field
//! coordinates survive any JSON reader unchanged.
//!
//! ```json
//! {"p": 2, "n": 3, "algebra": "p=2,e=1,mod=[1,1]", "components": ["1", "1", "0"]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid_algebra::MonoidAlgebraElement;
use crate::perfect_algebra::AlgebraDescriptor;
use crate::text::{parse_descriptor, parse_element, parse_field_element};
use crate::witt_core::WittVector;

/// A Witt vector, or the normal form of a class in `ZR/I^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittVectorJson {
    pub p: u64,
    pub n: usize,
    pub algebra: String,
    pub components: Vec<String>,
}

/// One term `c·[r]` of an element of `ZR`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub symbol: String,
}

/// An element of `ZR`: its text form and its terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub p: u64,
    pub algebra: String,
    pub text: String,
    pub terms: Vec<TermJson>,
}

impl From<&WittVector> for WittVectorJson {
    fn from(w: &WittVector) -> Self {
        WittVectorJson {
            p: w.algebra().characteristic(),
            n: w.level(),
            algebra: w.algebra().to_string(),
            components: w.components().iter().map(ToString::to_string).collect(),
        }
    }
}

impl From<&MonoidAlgebraElement> for ElementJson {
    fn from(x: &MonoidAlgebraElement) -> Self {
        ElementJson {
            p: x.algebra().characteristic(),
            algebra: x.algebra().to_string(),
            text: x.to_string(),
            terms: x
                .terms()
                .map(|(c, r)| TermJson { coefficient: c.to_string(), symbol: r.to_string() })
                .collect(),
        }
    }
}

fn mismatch(what: &str) -> Error {
    Error::parse(0, format!("inconsistent JSON: {what}"))
}

impl WittVectorJson {
    pub fn decode(&self) -> Result<WittVector> {
        let alg = parse_descriptor(&self.algebra)?;
        if alg.characteristic() != self.p {
            return Err(mismatch("`p` disagrees with `algebra`"));
        }
        if self.components.len() != self.n {
            return Err(mismatch("`n` disagrees with the number of components"));
        }
        let components =
            self.components.iter().map(|c| parse_field_element(c, &alg)).collect::<Result<Vec<_>>>()?;
        WittVector::new(&alg, components)
    }
}

impl ElementJson {
    pub fn decode(&self) -> Result<MonoidAlgebraElement> {
        let alg = parse_descriptor(&self.algebra)?;
        if alg.characteristic() != self.p {
            return Err(mismatch("`p` disagrees with `algebra`"));
        }
        let x = parse_element(&self.text, &alg)?;
        let mut from_terms = MonoidAlgebraElement::zero(&alg);
        for t in &self.terms {
            let c: num_bigint::BigInt =
                t.coefficient.parse().map_err(|_| mismatch("coefficient is not an integer"))?;
            let r = parse_field_element(&t.symbol, &alg)?;
            from_terms = &from_terms + &MonoidAlgebraElement::monomial(c, &r);
        }
        if from_terms != x {
            return Err(mismatch("`terms` disagree with `text`"));
        }
        Ok(x)
    }
}

pub fn witt_vector_to_json(w: &WittVector) -> serde_json::Value {
    serde_json::to_value(WittVectorJson::from(w)).expect("serialisable")
}

pub fn witt_vector_from_json(v: &serde_json::Value) -> Result<WittVector> {
    let j: WittVectorJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::parse(0, e.to_string()))?;
    j.decode()
}

pub fn element_to_json(x: &MonoidAlgebraElement) -> serde_json::Value {
    serde_json::to_value(ElementJson::from(x)).expect("serialisable")
}

pub fn element_from_json(v: &serde_json::Value) -> Result<MonoidAlgebraElement> {
    let j: ElementJson = serde_json::from_value(v.clone()).map_err(|e| Error::parse(0, e.to_string()))?;
    j.decode()
}

/// The descriptor string used in every JSON document.
pub fn algebra_to_json(alg: &AlgebraDescriptor) -> serde_json::Value {
    serde_json::Value::String(alg.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfect_algebra::FactorSpec;

    #[test]
    fn witt_vector_shape() {
        let f2 = AlgebraDescriptor::prime_field(2).unwrap();
        let w = crate::alpha(&MonoidAlgebraElement::integer(&f2, 3), 3).unwrap();
        let v = witt_vector_to_json(&w);
        assert_eq!(
            v,
            serde_json::json!({"p": 2, "n": 3, "algebra": "p=2,e=1,mod=[1,1]", "components": ["1", "1", "0"]})
        );
        assert_eq!(witt_vector_from_json(&v).unwrap(), w);
    }

    #[test]
    fn round_trips() {
        let alg = AlgebraDescriptor::new(2, &[FactorSpec::degree(1), FactorSpec::degree(2)]).unwrap();
        let r = alg.element_from_factors(&[vec![1], vec![0, 1]]).unwrap();
        let x = &MonoidAlgebraElement::monomial(-7, &r) + &MonoidAlgebraElement::symbol(&alg.zero());
        let v = element_to_json(&x);
        assert_eq!(element_from_json(&v).unwrap(), x);
        let w = crate::witt_oracle::canonical_map(&x, 3).unwrap();
        assert_eq!(witt_vector_from_json(&witt_vector_to_json(&w)).unwrap(), w);
    }

    #[test]
    fn inconsistent_documents_are_rejected() {
        let bad = serde_json::json!({"p": 3, "n": 1, "algebra": "p=2,e=1,mod=[1,1]", "components": ["1"]});
        assert!(witt_vector_from_json(&bad).is_err());
        let bad = serde_json::json!({"p": 2, "n": 2, "algebra": "p=2,e=1,mod=[1,1]", "components": ["1"]});
        assert!(witt_vector_from_json(&bad).is_err());
        let bad = serde_json::json!({"p": 2, "algebra": "p=2", "text": "[1]", "terms": []});
        assert!(element_from_json(&bad).is_err());
    }
}
