//! The rational-function field `Q(v)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::poly::{content, render_int_poly};
use super::{CoeffError, Poly, Rat};

/// A reduced fraction `num/den` of polynomials in `v` with `den` monic.
/// Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    /// The indeterminate `v`.
    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// Reduces `num/den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        Ok(Self::normalize_lead(num, den))
    }

    /// Makes `den` monic; assumes `num/den` already coprime.
    fn normalize_lead(num: Poly, den: Poly) -> Self {
        let lc = den.leading();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.leading())
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            return RatFunc::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            // Coprime denominators: the cross-multiplied sum is already reduced.
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                num,
                den: self.den.mul(&other.den),
            };
        }
        let a = self.den.div_exact(&g);
        let b = other.den.div_exact(&g);
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        RatFunc::new(num, a.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        // Cross-cancel so the product comes out reduced.
        let g1 = if other.den.is_one() {
            Poly::one()
        } else {
            self.num.gcd(&other.den)
        };
        let g2 = if self.den.is_one() {
            Poly::one()
        } else {
            other.num.gcd(&self.den)
        };
        let num = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        Self::normalize_lead(num, den)
    }

    pub fn inv(&self) -> Result<RatFunc, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, exp: i64) -> Result<RatFunc, CoeffError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, at: &Rat) -> Result<Rat, CoeffError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(CoeffError::PoleAtPoint(at.clone()));
        }
        self.num.eval(at).div(&d)
    }

    /// Numerator and denominator scaled to coprime integer coefficients,
    /// denominator with positive leading coefficient.
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let l = Rat::denom_lcm(self.num.coeffs()).lcm(&Rat::denom_lcm(self.den.coeffs()));
        let scale = |p: &Poly| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        };
        let mut n = scale(&self.num);
        let mut d = scale(&self.den);
        let g = content(&n).gcd(&content(&d));
        if !g.is_one() {
            n.iter_mut().for_each(|c| *c = &*c / &g);
            d.iter_mut().for_each(|c| *c = &*c / &g);
        }
        (n, d)
    }

    /// True when the rendered numerator starts with a minus sign.
    pub fn leading_negative(&self) -> bool {
        self.num.leading().is_negative()
    }
}

fn is_single_term(ints: &[BigInt]) -> bool {
    ints.iter()
        .filter(|c| !num_traits::Zero::is_zero(*c))
        .count()
        <= 1
}

/// A sum of fractions kept as unreduced numerators grouped by (monic)
/// denominator.
#[derive(Debug, Clone, Default)]
pub struct LazySum {
    groups: HashMap<Poly, Poly>,
}

impl LazySum {
    pub fn from(c: &RatFunc) -> Self {
        let mut groups = HashMap::new();
        if !c.is_zero() {
            groups.insert(c.den.clone(), c.num.clone());
        }
        LazySum { groups }
    }

    fn insert(&mut self, den: Poly, num: Poly) {
        match self.groups.get_mut(&den) {
            Some(n) => *n = n.add(&num),
            None => {
                self.groups.insert(den, num);
            }
        }
    }

    pub fn absorb(&mut self, other: LazySum) {
        for (den, num) in other.groups {
            self.insert(den, num);
        }
    }

    pub fn scale(&mut self, c: &RatFunc) {
        if c.is_zero() {
            self.groups.clear();
        } else if c.den.is_one() {
            if !c.num.is_one() {
                for num in self.groups.values_mut() {
                    *num = num.mul(&c.num);
                }
            }
        } else {
            let old = std::mem::take(&mut self.groups);
            for (den, num) in old {
                self.insert(den.mul(&c.den), num.mul(&c.num));
            }
        }
    }

    pub fn finish(self) -> RatFunc {
        let mut parts = self.groups.into_iter().filter(|(_, n)| !n.is_zero());
        let Some((mut den, mut num)) = parts.next() else {
            return RatFunc::zero();
        };
        for (d, n) in parts {
            let g = den.gcd(&d);
            let a = den.div_exact(&g);
            num = num.mul(&d.div_exact(&g)).add(&n.mul(&a));
            den = a.mul(&d);
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl fmt::Display for RatFunc {
    /// `p(v)/q(v)` with integer coefficients, descending degree. The
    /// denominator is omitted when it is 1; multi-term parts are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_parts();
        let num = render_int_poly(&n);
        if d.len() == 1 && d[0].is_one() {
            return write!(f, "{num}");
        }
        let den = render_int_poly(&d);
        let num = if is_single_term(&n) {
            num
        } else {
            format!("({num})")
        };
        let den = if is_single_term(&d) && d.len() == 1 {
            den
        } else {
            format!("({den})")
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn add_examples() {
        // (v-1) + 2 = v+1
        assert_eq!(rf(&[-1, 1], &[1]).add(&rf(&[2], &[1])), rf(&[1, 1], &[1]));
        let x = rf(&[3, 1], &[1, 0, 2]);
        assert_eq!(x.add(&RatFunc::zero()), x);
        // (v+1)/2 + (v-1)/2 = v
        assert_eq!(rf(&[1, 1], &[2]).add(&rf(&[-1, 1], &[2])), RatFunc::var());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(rf(&[1, 1], &[2]).mul(&rf(&[2], &[1, 1])), RatFunc::one());
        // (v^2-1)/(v-1) built by multiplying (v^2-1) by 1/(v-1)
        let built = rf(&[-1, 0, 1], &[1]).mul(&rf(&[1], &[-1, 1]));
        assert_eq!(built, rf(&[1, 1], &[1]));
        assert!(built.is_polynomial());
        // ((v+1)/2)^2 (v-1) = (v^3+v^2-v-1)/4
        let half = rf(&[1, 1], &[2]);
        let prod = half.mul(&half).mul(&rf(&[-1, 1], &[1]));
        assert_eq!(prod, rf(&[-1, -1, 1, 1], &[4]));
        for at in [2, 3, 5] {
            let at = Rat::from_int(at);
            let lhs = prod.eval(&at).unwrap();
            let h = half.eval(&at).unwrap();
            let rhs = h.mul(&h).mul(&at.sub(&Rat::one()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inv_examples() {
        assert_eq!(rf(&[1, 1], &[2]).inv().unwrap(), rf(&[2], &[1, 1]));
        assert_eq!(RatFunc::one().inv().unwrap(), RatFunc::one());
        let x = rf(&[-3, 3], &[2, 1]);
        let inv = x.inv().unwrap();
        assert_eq!(inv, rf(&[2, 1], &[-3, 3]));
        assert!(inv.denom().leading().is_one());
        assert_eq!(RatFunc::zero().inv(), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            rf(&[-1, 1], &[1]).eval(&Rat::from_int(4)).unwrap(),
            Rat::from_int(3)
        );
        assert_eq!(rf(&[1, 1], &[2]).eval(&Rat::one()).unwrap(), Rat::one());
        assert_eq!(
            rf(&[2], &[1, 1]).eval(&Rat::from_int(-1)),
            Err(CoeffError::PoleAtPoint(Rat::from_int(-1)))
        );
    }

    #[test]
    fn canonical_form_invariants() {
        let x = rf(&[0, 2, 2], &[0, 0, 4]);
        // (2v^2+2v)/(4v^2) = (v+1)/(2v)
        assert_eq!(x.denom(), &p(&[0, 1]));
        assert_eq!(x.numer(), &Poly::from_coeffs(vec![q(1, 2), q(1, 2)]));
        let again = RatFunc::new(x.numer().clone(), x.denom().clone()).unwrap();
        assert_eq!(again, x);
        assert_eq!(rf(&[0], &[5, 1]), RatFunc::zero());
        assert_eq!(RatFunc::zero().denom(), &Poly::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[-1, 1], &[1]).to_string(), "v-1");
        assert_eq!(rf(&[1, 1], &[2]).to_string(), "(v+1)/2");
        assert_eq!(rf(&[2], &[1, 1]).to_string(), "2/(v+1)");
        assert_eq!(rf(&[2, 1], &[-3, 3]).to_string(), "(v+2)/(3*v-3)");
        assert_eq!(rf(&[-1], &[2]).to_string(), "-1/2");
        assert_eq!(rf(&[0, 0, 3], &[1]).to_string(), "3*v^2");
        assert_eq!(rf(&[0, 3], &[0, 0, 2]).to_string(), "3/(2*v)");
    }
}
