//! Tensor products `H(r_1, z_1) ⊗ ... ⊗ H(r_l, z_l)`.

use std::collections::BTreeMap;

use crate::coeff::Field;
use crate::weyl::AffinePerm;

use super::{HeckeConfig, HeckeElement, HeckeError};

/// A finite combination of pure tensors `T_{x_1} ⊗ ... ⊗ T_{x_l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement<C: Field> {
    factors: Vec<HeckeConfig<C>>,
    terms: BTreeMap<Vec<AffinePerm>, C>,
}

impl<C: Field> TensorElement<C> {
    pub fn zero(factors: &[HeckeConfig<C>]) -> Self {
        TensorElement {
            factors: factors.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(factors: &[HeckeConfig<C>]) -> Self {
        let key = factors
            .iter()
            .map(|c| AffinePerm::identity(c.rank()))
            .collect();
        TensorElement {
            factors: factors.to_vec(),
            terms: BTreeMap::from([(key, C::one())]),
        }
    }

    /// `a_1 ⊗ ... ⊗ a_l`.
    pub fn pure(parts: &[HeckeElement<C>]) -> Self {
        let factors: Vec<_> = parts.iter().map(|p| p.config().clone()).collect();
        let mut terms: BTreeMap<Vec<AffinePerm>, C> = BTreeMap::from([(Vec::new(), C::one())]);
        for part in parts {
            let mut next = BTreeMap::new();
            for (key, c) in &terms {
                for (w, d) in part.terms() {
                    let mut k = key.clone();
                    k.push(w.clone());
                    add_term(&mut next, k, c.mul(d));
                }
            }
            terms = next;
        }
        TensorElement { factors, terms }
    }

    /// `1 ⊗ ... ⊗ a ⊗ ... ⊗ 1` with `a` in slot `slot`.
    pub fn embed(
        factors: &[HeckeConfig<C>],
        slot: usize,
        a: &HeckeElement<C>,
    ) -> Result<Self, HeckeError> {
        if factors.get(slot) != Some(a.config()) {
            return Err(HeckeError::ConfigMismatch(format!(
                "slot {slot} does not hold {}",
                a.config()
            )));
        }
        let parts: Vec<_> = factors
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == slot {
                    a.clone()
                } else {
                    HeckeElement::unit(c)
                }
            })
            .collect();
        Ok(Self::pure(&parts))
    }

    pub fn factors(&self) -> &[HeckeConfig<C>] {
        &self.factors
    }

    pub fn terms(&self) -> &BTreeMap<Vec<AffinePerm>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<(), HeckeError> {
        if self.factors == other.factors {
            Ok(())
        } else {
            Err(HeckeError::ConfigMismatch(
                "tensor factor lists differ".into(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_term(&mut terms, k.clone(), c.clone());
        }
        Ok(TensorElement {
            factors: self.factors.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HeckeError> {
        let neg = TensorElement {
            factors: other.factors.clone(),
            terms: other
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        };
        self.add(&neg)
    }

    /// Componentwise product, expanded bilinearly.
    pub fn mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_same(other)?;
        let mut out = BTreeMap::new();
        for (xs, c) in &self.terms {
            for (ys, d) in &other.terms {
                let parts = xs
                    .iter()
                    .zip(ys)
                    .zip(&self.factors)
                    .map(|((x, y), cfg)| {
                        HeckeElement::basis(cfg, x.clone())?
                            .mul(&HeckeElement::basis(cfg, y.clone())?)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let scale = c.mul(d);
                for (k, e) in Self::pure(&parts).terms {
                    add_term(&mut out, k, e.mul(&scale));
                }
            }
        }
        Ok(TensorElement {
            factors: self.factors.clone(),
            terms: out,
        })
    }
}

fn add_term<C: Field>(terms: &mut BTreeMap<Vec<AffinePerm>, C>, key: Vec<AffinePerm>, c: C) {
    if c.is_zero() {
        return;
    }
    let sum = terms.get(&key).map_or_else(|| c.clone(), |a| a.add(&c));
    if sum.is_zero() {
        terms.remove(&key);
    } else {
        terms.insert(key, sum);
    }
}
