//! Dense univariate polynomials in `v` over [`Rat`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Coefficients stored low degree first, with no trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The indeterminate `v`.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integer coefficients, low degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add(c);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(Rat::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor
            .leading()
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = rem[k + j].sub(&c.mul(d));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Runs a primitive pseudo-remainder sequence over the integers, which
    /// avoids the coefficient growth of Euclid over the rationals.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_constant() && !self.is_zero() || other.is_constant() && !other.is_zero() {
            return Poly::one();
        }
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = primitive_part(self.clear_denominators().0);
        let mut b = primitive_part(other.clear_denominators().0);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        Poly::from_coeffs(a.into_iter().map(Rat::from_bigint).collect()).monic()
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// Multiplies through by the least common denominator, returning the
    /// integer coefficients (low degree first) and the multiplier used.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let l = Rat::denom_lcm(&self.coeffs);
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (ints, l)
    }
}

/// Content (gcd of the absolute values) of an integer coefficient vector.
pub(crate) fn content(ints: &[BigInt]) -> BigInt {
    ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divides out the content and trims; the zero polynomial becomes empty.
fn primitive_part(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    let g = content(&ints);
    if !g.is_zero() && !g.is_one() {
        for c in &mut ints {
            *c /= &g;
        }
    }
    ints
}

/// Remainder of `lc(b)^(deg a - deg b + 1) · a` by `b`; `b` nonempty and trimmed.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let lr = r[top].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = top - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// Renders integer coefficients (low degree first) as `3*v^2-v+1`.
pub(crate) fn render_int_poly(ints: &[BigInt]) -> String {
    let mut out = String::new();
    for (deg, c) in ints.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = mag.is_one();
        match deg {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push('v');
                if deg > 1 {
                    out.push('^');
                    out.push_str(&deg.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    /// Rational coefficients are shown as `(int poly)/L` when not integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ints, l) = self.clear_denominators();
        let body = render_int_poly(&ints);
        if l.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{l}")
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
