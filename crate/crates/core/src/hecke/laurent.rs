//! `H(1, z)` as the Laurent polynomial ring in one variable.
//!
//! At rank 1 every basis vector is a power of the rotation, and the
//! exponent recorded for `T_w` is its Ω-degree (so `T_t ↦ x⁻¹`).

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Field;
use crate::weyl::AffinePerm;

use super::{HeckeConfig, HeckeElement, HeckeError};

/// A sparse Laurent polynomial `Σ c_k x^k`; no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly<C: Field> {
    terms: BTreeMap<i64, C>,
}

impl<C: Field> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (k, c)| acc.add(&Self::monomial(k, c)))
    }

    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let sum = terms.get(k).map_or_else(|| c.clone(), |a| a.add(c));
            if sum.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, sum);
            }
        }
        LaurentPoly { terms }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out = out.add(&Self::monomial(i + j, a.mul(b)));
            }
        }
        out
    }
}

impl<C: Field> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*x^{k}")?;
        }
        Ok(())
    }
}

/// The image of a rank-1 element in the Laurent ring.
pub fn laurent_form<C: Field>(a: &HeckeElement<C>) -> Result<LaurentPoly<C>, HeckeError> {
    if a.config().rank() != 1 {
        return Err(HeckeError::RankMismatch {
            expected: 1,
            found: a.config().rank(),
        });
    }
    Ok(LaurentPoly {
        terms: a
            .terms()
            .iter()
            .map(|(w, c)| (w.omega_degree(), c.clone()))
            .collect(),
    })
}

/// Inverse of [`laurent_form`].
pub fn from_laurent<C: Field>(
    config: &HeckeConfig<C>,
    p: &LaurentPoly<C>,
) -> Result<HeckeElement<C>, HeckeError> {
    if config.rank() != 1 {
        return Err(HeckeError::RankMismatch {
            expected: 1,
            found: config.rank(),
        });
    }
    HeckeElement::from_terms(
        config,
        p.terms()
            .iter()
            .map(|(k, c)| (AffinePerm::rotation_power(1, -k), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, RatFunc};
    use crate::weyl::Generator;

    #[test]
    fn generator_and_unit() {
        let c = HeckeConfig::symbolic(1).unwrap();
        let t = HeckeElement::gen(&c, Generator::T).unwrap();
        assert_eq!(
            laurent_form(&t).unwrap(),
            LaurentPoly::monomial(-1, RatFunc::one())
        );
        assert_eq!(
            laurent_form(&HeckeElement::unit(&c)).unwrap(),
            LaurentPoly::monomial(0, RatFunc::one())
        );
    }

    #[test]
    fn wrong_rank_rejected() {
        let c = HeckeConfig::numeric(2, Rat::from_int(2)).unwrap();
        assert!(matches!(
            laurent_form(&HeckeElement::unit(&c)),
            Err(HeckeError::RankMismatch { .. })
        ));
    }

    #[test]
    fn convolution() {
        let p = LaurentPoly::from_terms([(-1, Rat::from_int(2)), (1, Rat::one())]);
        let q = LaurentPoly::from_terms([(1, Rat::from_int(3)), (-1, Rat::from_int(-1))]);
        // (2x⁻¹ + x)(3x - x⁻¹) = 6 - 2x⁻² + 3x² - 1
        let expect = LaurentPoly::from_terms([
            (0, Rat::from_int(5)),
            (-2, Rat::from_int(-2)),
            (2, Rat::from_int(3)),
        ]);
        assert_eq!(p.mul(&q), expect);
    }
}
