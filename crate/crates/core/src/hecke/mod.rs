//! The affine Hecke algebra `H(r, z)` in its T-basis realization.
//!
//! Elements are finite linear combinations of basis vectors `T_w` indexed by
//! the extended affine Weyl group. Multiplication uses
//!
//! * `T_x T_ω = T_{xω}` for length-zero `ω` (powers of `t`),
//! * `T_x T_{s_i} = T_{x s_i}` when `ℓ(x s_i) > ℓ(x)`,
//! * `T_x T_{s_i} = z T_{x s_i} + (z - 1) T_x` otherwise,
//!
//! the last being the quadratic relation `(T_s + 1)(T_s - z) = 0`.

mod laurent;
mod relations;
mod tensor;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coeff::{CoeffError, Field, Rat, RatFunc};
use crate::weyl::{self, AffinePerm, Generator, WeylError};

pub use laurent::{from_laurent, laurent_form, LaurentPoly};
pub use relations::{relation_check, RelationFailure, RelationOutcome, RelationReport};
pub use tensor::TensorElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Rank and parameter of `H(r, z)`. The coefficient field is the type
/// parameter: `Rat` for a numeric parameter, `RatFunc` when `z = v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeckeConfig<C: Field> {
    rank: usize,
    param: C,
}

impl<C: Field> HeckeConfig<C> {
    pub fn new(rank: usize, param: C) -> Result<Self, HeckeError> {
        if rank == 0 {
            return Err(HeckeError::InvalidConfig("rank must be at least 1".into()));
        }
        if param.is_zero() {
            return Err(HeckeError::InvalidConfig(
                "parameter must be nonzero".into(),
            ));
        }
        Ok(HeckeConfig { rank, param })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn param(&self) -> &C {
        &self.param
    }

    fn check_same(&self, other: &Self) -> Result<(), HeckeError> {
        if self == other {
            Ok(())
        } else {
            Err(HeckeError::ConfigMismatch(format!(
                "H({}, {}) vs H({}, {})",
                self.rank, self.param, other.rank, other.param
            )))
        }
    }
}

impl HeckeConfig<RatFunc> {
    /// `H(r, v)` with `v` the indeterminate.
    pub fn symbolic(rank: usize) -> Result<Self, HeckeError> {
        HeckeConfig::new(rank, RatFunc::var())
    }
}

impl HeckeConfig<Rat> {
    pub fn numeric(rank: usize, z: Rat) -> Result<Self, HeckeError> {
        HeckeConfig::new(rank, z)
    }
}

impl<C: Field> fmt::Display for HeckeConfig<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({}, {})", self.rank, self.param)
    }
}

/// An element of `H(r, z)`. No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement<C: Field> {
    config: HeckeConfig<C>,
    terms: BTreeMap<AffinePerm, C>,
}

type Accum<C> = HashMap<AffinePerm, C>;

fn accumulate<C: Field>(acc: &mut Accum<C>, key: AffinePerm, c: C) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let sum = e.get().add(&c);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

type LazyAccum<C> = HashMap<AffinePerm, <C as Field>::Acc>;

fn lazy_accumulate<C: Field>(acc: &mut LazyAccum<C>, key: AffinePerm, c: C::Acc) {
    match acc.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => C::acc_add(e.get_mut(), c),
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl<C: Field> HeckeElement<C> {
    pub fn zero(config: &HeckeConfig<C>) -> Self {
        HeckeElement {
            config: config.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `T_id`.
    pub fn unit(config: &HeckeConfig<C>) -> Self {
        Self::basis(config, AffinePerm::identity(config.rank))
            .expect("identity has the config rank")
    }

    /// `T_w`.
    pub fn basis(config: &HeckeConfig<C>, w: AffinePerm) -> Result<Self, HeckeError> {
        Self::monomial(config, w, C::one())
    }

    /// `c · T_w`.
    pub fn monomial(config: &HeckeConfig<C>, w: AffinePerm, c: C) -> Result<Self, HeckeError> {
        if w.rank() != config.rank {
            return Err(HeckeError::RankMismatch {
                expected: config.rank,
                found: w.rank(),
            });
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Ok(HeckeElement {
            config: config.clone(),
            terms,
        })
    }

    /// `c · T_id`.
    pub fn scalar(config: &HeckeConfig<C>, c: C) -> Self {
        Self::monomial(config, AffinePerm::identity(config.rank), c).expect("identity rank")
    }

    /// The algebra generator `T_{s_i}`, `T_t` or `T_{t⁻¹}`. `T_{s_0}` is
    /// computed as the product `T_t · T_{s_1} · T_{t⁻¹}`.
    pub fn gen(config: &HeckeConfig<C>, which: Generator) -> Result<Self, HeckeError> {
        match which {
            Generator::S(0) => {
                if config.rank < 2 {
                    return Err(WeylError::IndexOutOfRange {
                        index: 0,
                        rank: config.rank,
                    }
                    .into());
                }
                let t = Self::gen(config, Generator::T)?;
                let s1 = Self::gen(config, Generator::S(1))?;
                let ti = Self::gen(config, Generator::Tinv)?;
                t.mul(&s1)?.mul(&ti)
            }
            _ => Self::basis(config, weyl::generator(config.rank, which)?),
        }
    }

    /// Builds an element from `(window, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        config: &HeckeConfig<C>,
        terms: impl IntoIterator<Item = (AffinePerm, C)>,
    ) -> Result<Self, HeckeError> {
        let mut acc = Accum::new();
        for (w, c) in terms {
            if w.rank() != config.rank {
                return Err(HeckeError::RankMismatch {
                    expected: config.rank,
                    found: w.rank(),
                });
            }
            accumulate(&mut acc, w, c);
        }
        Ok(Self::from_accum(config, acc))
    }

    fn from_accum(config: &HeckeConfig<C>, acc: Accum<C>) -> Self {
        HeckeElement {
            config: config.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn config(&self) -> &HeckeConfig<C> {
        &self.config
    }

    pub fn terms(&self) -> &BTreeMap<AffinePerm, C> {
        &self.terms
    }

    pub fn coeff(&self, w: &AffinePerm) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest Coxeter length in the support (0 for the zero element).
    pub fn max_length(&self) -> u64 {
        self.terms.keys().map(AffinePerm::length).max().unwrap_or(0)
    }

    /// `Some(c)` when the element is `c · T_id`.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_identity().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.config.check_same(&other.config)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let sum = match terms.get(w) {
                Some(a) => a.add(c),
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(w);
            } else {
                terms.insert(w.clone(), sum);
            }
        }
        Ok(HeckeElement {
            config: self.config.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        HeckeElement {
            config: self.config.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.config);
        }
        HeckeElement {
            config: self.config.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// `Σ_x c_x T_x · T_y`, unnormalized.
    fn mul_basis(&self, y: &AffinePerm, z: &C, zm1: &C) -> LazyAccum<C> {
        let dec = y.reduced_decomposition();
        let mut cur: LazyAccum<C> = self
            .terms
            .iter()
            .map(|(x, c)| (x.times_rotation(dec.omega_power), C::acc_from(c)))
            .collect();
        for &i in &dec.word {
            let mut next = LazyAccum::<C>::with_capacity(cur.len() * 2);
            for (x, mut c) in cur {
                let xs = x.times_simple(i);
                if x.has_right_descent(i) {
                    let mut cz = c.clone();
                    C::acc_scale(&mut cz, z);
                    C::acc_scale(&mut c, zm1);
                    lazy_accumulate::<C>(&mut next, xs, cz);
                    lazy_accumulate::<C>(&mut next, x, c);
                } else {
                    lazy_accumulate::<C>(&mut next, xs, c);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.config.check_same(&other.config)?;
        let z = &self.config.param;
        let zm1 = z.sub(&C::one());
        let mut acc = LazyAccum::<C>::new();
        for (y, d) in &other.terms {
            for (w, mut c) in self.mul_basis(y, z, &zm1) {
                C::acc_scale(&mut c, d);
                lazy_accumulate::<C>(&mut acc, w, c);
            }
        }
        Ok(Self::from_lazy(&self.config, acc))
    }

    /// `Σ c_i · e_i`.
    pub fn linear_combination<'a>(
        config: &HeckeConfig<C>,
        parts: impl IntoIterator<Item = (&'a C, &'a Self)>,
    ) -> Result<Self, HeckeError> {
        let mut acc = LazyAccum::<C>::new();
        for (c, e) in parts {
            config.check_same(&e.config)?;
            for (w, a) in &e.terms {
                let mut a = C::acc_from(a);
                C::acc_scale(&mut a, c);
                lazy_accumulate::<C>(&mut acc, w.clone(), a);
            }
        }
        Ok(Self::from_lazy(config, acc))
    }

    fn from_lazy(config: &HeckeConfig<C>, acc: LazyAccum<C>) -> Self {
        HeckeElement {
            config: config.clone(),
            terms: acc
                .into_iter()
                .map(|(w, a)| (w, C::acc_finish(a)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Inverse of a single-term length-zero element `c · T_{t^k}`.
    pub fn inverse_unit(&self) -> Result<Self, HeckeError> {
        if self.terms.len() == 1 {
            let (w, c) = self.terms.iter().next().unwrap();
            if w.length() == 0 {
                return Self::monomial(&self.config, w.inverse(), c.inv()?);
            }
        }
        Err(HeckeError::NotInvertible(crate::parser::pretty(self)))
    }

    /// Integer power; negative exponents require [`inverse_unit`](Self::inverse_unit)
    /// to succeed.
    pub fn pow(&self, exp: i64) -> Result<Self, HeckeError> {
        let base = if exp < 0 {
            self.inverse_unit()?
        } else {
            self.clone()
        };
        let mut acc = Self::unit(&self.config);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

impl HeckeElement<RatFunc> {
    /// Evaluates every coefficient and the parameter at `v = z`.
    pub fn specialize(&self, z: &Rat) -> Result<HeckeElement<Rat>, HeckeError> {
        let config = HeckeConfig::new(self.config.rank, self.config.param.eval(z)?)?;
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let value = c.eval(z)?;
            if !value.is_zero() {
                terms.insert(w.clone(), value);
            }
        }
        Ok(HeckeElement { config, terms })
    }
}

impl<C: Field> fmt::Display for HeckeElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::pretty(self))
    }
}

struct TermJson<'a, C: Field>(&'a AffinePerm, &'a C);

impl<C: Field> Serialize for TermJson<'_, C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Term", 2)?;
        st.serialize_field("window", self.0.window())?;
        st.serialize_field("coeff", &self.1.to_string())?;
        st.end()
    }
}

impl<C: Field> Serialize for HeckeElement<C> {
    /// A list of `{"window": [...], "coeff": "..."}` ordered lexicographically
    /// by window.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&TermJson(w, c))?;
        }
        seq.end()
    }
}
