//! Exact coefficient arithmetic: rationals and rational functions in one
//! central indeterminate `v`.

mod poly;
mod rat;
mod ratfunc;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use thiserror::Error;

pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at v = {0}")]
    PoleAtPoint(Rat),
    #[error("invalid rational literal {0:?}")]
    InvalidLiteral(String),
}

/// The operations the algebra modules need from a coefficient field.
///
/// Implemented by [`Rat`] (numeric mode) and [`RatFunc`] (symbolic mode).
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short name used in reports: `"numeric"` or `"symbolic"`.
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, CoeffError>;
    fn from_rat(r: Rat) -> Self;

    /// The central indeterminate `v`, when the field has one.
    fn indeterminate() -> Option<Self>;

    /// Whether the printed form would start with a minus sign.
    fn prints_negative(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_int(n))
    }

    fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    /// An unnormalized value supporting addition and scaling; normalization
    /// is deferred until [`Field::acc_finish`].
    type Acc: Clone + fmt::Debug;

    fn acc_from(c: &Self) -> Self::Acc;
    fn acc_add(acc: &mut Self::Acc, other: Self::Acc);
    fn acc_scale(acc: &mut Self::Acc, c: &Self);
    fn acc_finish(acc: Self::Acc) -> Self;
}

impl Field for Rat {
    type Acc = Rat;

    fn acc_from(c: &Rat) -> Rat {
        c.clone()
    }

    fn acc_add(acc: &mut Rat, other: Rat) {
        *acc = Rat::add(acc, &other);
    }

    fn acc_scale(acc: &mut Rat, c: &Rat) {
        *acc = Rat::mul(acc, c);
    }

    fn acc_finish(acc: Rat) -> Rat {
        acc
    }

    const MODE: &'static str = "numeric";

    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        Rat::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat::mul(self, other)
    }
    fn neg(&self) -> Self {
        Rat::neg(self)
    }
    fn inv(&self) -> Result<Self, CoeffError> {
        Rat::inv(self)
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn indeterminate() -> Option<Self> {
        None
    }
    fn prints_negative(&self) -> bool {
        self.is_negative()
    }
}

impl Field for RatFunc {
    type Acc = ratfunc::LazySum;

    fn acc_from(c: &RatFunc) -> ratfunc::LazySum {
        ratfunc::LazySum::from(c)
    }

    fn acc_add(acc: &mut ratfunc::LazySum, other: ratfunc::LazySum) {
        acc.absorb(other);
    }

    fn acc_scale(acc: &mut ratfunc::LazySum, c: &RatFunc) {
        acc.scale(c);
    }

    fn acc_finish(acc: ratfunc::LazySum) -> RatFunc {
        acc.finish()
    }

    const MODE: &'static str = "symbolic";

    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self, CoeffError> {
        RatFunc::inv(self)
    }
    fn from_rat(r: Rat) -> Self {
        RatFunc::from_rat(r)
    }
    fn indeterminate() -> Option<Self> {
        Some(RatFunc::var())
    }
    fn prints_negative(&self) -> bool {
        self.leading_negative()
    }
}

/// How the Hecke parameter is supplied: a nonzero rational, or the
/// indeterminate `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffMode {
    Numeric(Rat),
    Symbolic,
}

impl fmt::Display for CoeffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffMode::Numeric(z) => write!(f, "{z}"),
            CoeffMode::Symbolic => write!(f, "v"),
        }
    }
}

impl FromStr for CoeffMode {
    type Err = CoeffError;

    /// `"v"` selects symbolic mode; anything else must be a rational literal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "v" || t == "symbolic" {
            Ok(CoeffMode::Symbolic)
        } else {
            Ok(CoeffMode::Numeric(t.parse()?))
        }
    }
}
