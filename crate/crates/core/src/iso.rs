//! The isomorphism `H(2, z) ≅ H(2, 1)` for `z ≠ -1`.
//!
//! `phi` sends `T_s ∈ H(2, z)` to `s' = ((z+1)/2)·T_s + (z-1)/2 ∈ H(2, 1)`
//! and fixes `T_t`; `s'` satisfies `(s' + 1)(s' - z) = 0` because `T_s² = 1`
//! in `H(2, 1)`. `psi` is its inverse, `T_s ↦ (2·T_s - (z-1))/(z+1)`.
//!
//! Both are extended to basis vectors along reduced decompositions
//! `T_w = T_t^k · T_{s_{i_1}} ··· T_{s_{i_m}}`, with `T_{s_0}` routed through
//! `T_t · T_{s_1} · T_{t⁻¹}`. Multiplicativity of the extension is checked,
//! not assumed.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::{CoeffMode, Field, Rat, RatFunc};
use crate::hecke::{HeckeConfig, HeckeElement, HeckeError};
use crate::weyl::{self, AffinePerm, Generator, WeylError};

pub const DIRECTION_NOTE: &str = "phi: H(2,z) -> H(2,1), s |-> ((z+1)/2)s + (z-1)/2, t |-> t; \
psi: H(2,1) -> H(2,z), s |-> (2s - (z-1))/(z+1), t |-> t. \
The element ((z+1)/2)s + (z-1)/2 of H(2,1) satisfies the z-quadratic, \
so s |-> that element defines the map out of H(2,z); both directions are provided and checked.";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator images fail the defining relations: {0}")]
    BadAssignment(String),
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

impl From<WeylError> for IsoError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::ResourceLimit(m) => IsoError::ResourceLimit(m),
            other => IsoError::Hecke(other.into()),
        }
    }
}

/// Images of `T_s` and `T_t` defining a homomorphism between rank-2 algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAssignment<C: Field> {
    source: HeckeConfig<C>,
    target: HeckeConfig<C>,
    image_of_s: HeckeElement<C>,
    image_of_t: HeckeElement<C>,
    image_of_tinv: HeckeElement<C>,
    image_of_s0: HeckeElement<C>,
}

impl<C: Field> GeneratorAssignment<C> {
    /// Checks that `image_of_t` is `T_t` and that `image_of_s` satisfies the
    /// source's quadratic relation in the target.
    pub fn new(
        source: HeckeConfig<C>,
        target: HeckeConfig<C>,
        image_of_s: HeckeElement<C>,
        image_of_t: HeckeElement<C>,
    ) -> Result<Self, IsoError> {
        if source.rank() != 2 || target.rank() != 2 {
            return Err(IsoError::ConfigMismatch(
                "assignments are between rank-2 algebras".into(),
            ));
        }
        if image_of_s.config() != &target || image_of_t.config() != &target {
            return Err(IsoError::ConfigMismatch(
                "images must live in the target".into(),
            ));
        }
        let t = HeckeElement::gen(&target, Generator::T)?;
        if image_of_t != t {
            return Err(IsoError::BadAssignment(format!(
                "image of t must be T_t, got {image_of_t}"
            )));
        }
        let z = source.param();
        let sq = image_of_s.mul(&image_of_s)?;
        let expect = image_of_s
            .scale(&z.sub(&C::one()))
            .add(&HeckeElement::scalar(&target, z.clone()))?;
        if sq != expect {
            return Err(IsoError::BadAssignment(format!(
                "image of s squares to {sq}, expected {expect}"
            )));
        }
        let image_of_tinv = HeckeElement::gen(&target, Generator::Tinv)?;
        let image_of_s0 = image_of_t.mul(&image_of_s)?.mul(&image_of_tinv)?;
        Ok(GeneratorAssignment {
            source,
            target,
            image_of_s,
            image_of_t,
            image_of_tinv,
            image_of_s0,
        })
    }

    pub fn source(&self) -> &HeckeConfig<C> {
        &self.source
    }

    pub fn target(&self) -> &HeckeConfig<C> {
        &self.target
    }

    pub fn image_of_s(&self) -> &HeckeElement<C> {
        &self.image_of_s
    }

    pub fn image_of_t(&self) -> &HeckeElement<C> {
        &self.image_of_t
    }

    /// Image of a single basis vector `T_w` of the source.
    pub fn image_of_basis(&self, w: &AffinePerm) -> Result<HeckeElement<C>, IsoError> {
        let dec = w.reduced_decomposition();
        let rot = if dec.omega_power >= 0 {
            &self.image_of_t
        } else {
            &self.image_of_tinv
        };
        let mut acc = HeckeElement::unit(&self.target);
        for _ in 0..dec.omega_power.unsigned_abs() {
            acc = acc.mul(rot)?;
        }
        for &i in &dec.word {
            let img = if i == 0 {
                &self.image_of_s0
            } else {
                &self.image_of_s
            };
            acc = acc.mul(img)?;
        }
        Ok(acc)
    }

    /// Linear extension to the whole source algebra.
    pub fn apply(&self, x: &HeckeElement<C>) -> Result<HeckeElement<C>, IsoError> {
        let mut cache = HashMap::new();
        self.apply_cached(x, &mut cache)
    }

    fn apply_cached(
        &self,
        x: &HeckeElement<C>,
        cache: &mut HashMap<AffinePerm, HeckeElement<C>>,
    ) -> Result<HeckeElement<C>, IsoError> {
        if x.config() != &self.source {
            return Err(IsoError::ConfigMismatch(format!(
                "element of {} passed to a map out of {}",
                x.config(),
                self.source
            )));
        }
        for w in x.terms().keys() {
            if !cache.contains_key(w) {
                let img = self.image_of_basis(w)?;
                cache.insert(w.clone(), img);
            }
        }
        Ok(HeckeElement::linear_combination(
            &self.target,
            x.terms().iter().map(|(w, c)| (c, &cache[w])),
        )?)
    }
}

fn check_param<C: Field>(z: &C) -> Result<(), IsoError> {
    if z.add(&C::one()).is_zero() {
        return Err(IsoError::InvalidParameter(
            "the isomorphism requires z + 1 ≠ 0".into(),
        ));
    }
    if z.is_zero() {
        return Err(IsoError::InvalidParameter("z must be nonzero".into()));
    }
    Ok(())
}

fn configs<C: Field>(z: &C) -> Result<(HeckeConfig<C>, HeckeConfig<C>), IsoError> {
    Ok((
        HeckeConfig::new(2, z.clone())?,
        HeckeConfig::new(2, C::one())?,
    ))
}

/// `H(2, z) → H(2, 1)`.
pub fn phi<C: Field>(z: &C) -> Result<GeneratorAssignment<C>, IsoError> {
    check_param(z)?;
    let (hz, h1) = configs(z)?;
    let two = C::from_int(2);
    let s = HeckeElement::gen(&h1, Generator::S(1))?;
    let plus = z.add(&C::one()).div(&two).expect("2 is invertible");
    let minus = z.sub(&C::one()).div(&two).expect("2 is invertible");
    let image = s.scale(&plus).add(&HeckeElement::scalar(&h1, minus))?;
    let t = HeckeElement::gen(&h1, Generator::T)?;
    GeneratorAssignment::new(hz, h1, image, t)
}

/// `H(2, 1) → H(2, z)`.
pub fn psi<C: Field>(z: &C) -> Result<GeneratorAssignment<C>, IsoError> {
    check_param(z)?;
    let (hz, h1) = configs(z)?;
    let s = HeckeElement::gen(&hz, Generator::S(1))?;
    let inv = z.add(&C::one()).inv().map_err(HeckeError::from)?;
    let numer = s
        .scale(&C::from_int(2))
        .sub(&HeckeElement::scalar(&hz, z.sub(&C::one())))?;
    let image = numer.scale(&inv);
    let t = HeckeElement::gen(&hz, Generator::T)?;
    GeneratorAssignment::new(h1, hz, image, t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub direction: String,
    pub param: String,
    pub mode: String,
    pub max_len: u32,
    pub ball_size: usize,
    pub quadratic_checks_passed: bool,
    pub checked_pairs: usize,
    pub round_trips_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

const MAX_REPORTED_FAILURES: usize = 20;

fn check_multiplicative<C: Field>(
    name: &str,
    map: &GeneratorAssignment<C>,
    ball: &[AffinePerm],
    failures: &mut Vec<String>,
) -> Result<usize, IsoError> {
    let mut cache = HashMap::new();
    let images: Vec<HeckeElement<C>> = ball
        .iter()
        .map(|w| {
            let img = map.image_of_basis(w)?;
            cache.insert(w.clone(), img.clone());
            Ok(img)
        })
        .collect::<Result<_, IsoError>>()?;
    let basis: Vec<HeckeElement<C>> = ball
        .iter()
        .map(|w| HeckeElement::basis(map.source(), w.clone()))
        .collect::<Result<_, _>>()?;
    let mut count = 0;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let lhs = map.apply_cached(&x.mul(y)?, &mut cache)?;
            let rhs = images[i].mul(&images[j])?;
            count += 1;
            if lhs != rhs && failures.len() < MAX_REPORTED_FAILURES {
                failures.push(format!(
                    "{name}: image of {} * {} differs by {}",
                    ball[i],
                    ball[j],
                    lhs.sub(&rhs)?
                ));
            }
        }
    }
    Ok(count)
}

/// Multiplicativity of `phi` and `psi` on all pairs of basis vectors in the
/// length-`max_len` ball, and `psi∘phi = id`, `phi∘psi = id` on the ball.
pub fn verify_isomorphism_with<C: Field>(
    z: &C,
    max_len: u32,
    len_limit: u32,
) -> Result<IsoReport, IsoError> {
    let forward = phi(z)?;
    let backward = psi(z)?;
    let ball: Vec<AffinePerm> = weyl::bfs_ball_with_limit(2, max_len, len_limit)?
        .into_keys()
        .collect();

    let mut failures = Vec::new();
    let mut checked_pairs = 0;
    checked_pairs += check_multiplicative("phi", &forward, &ball, &mut failures)?;
    checked_pairs += check_multiplicative("psi", &backward, &ball, &mut failures)?;

    let mut round_trips = 0;
    for w in &ball {
        for (first, second) in [(&forward, &backward), (&backward, &forward)] {
            let x = HeckeElement::basis(first.source(), w.clone())?;
            let back = second.apply(&first.apply(&x)?)?;
            round_trips += 1;
            if back != x && failures.len() < MAX_REPORTED_FAILURES {
                failures.push(format!("round trip of {w} returned {back}"));
            }
        }
    }

    Ok(IsoReport {
        direction: DIRECTION_NOTE.to_string(),
        param: z.to_string(),
        mode: C::MODE.to_string(),
        max_len,
        ball_size: ball.len(),
        quadratic_checks_passed: true,
        checked_pairs,
        round_trips_checked: round_trips,
        passed: failures.is_empty(),
        failures,
    })
}

/// Mode-dispatching entry point with the default length cap.
pub fn verify_isomorphism(z: &CoeffMode, max_len: u32) -> Result<IsoReport, IsoError> {
    verify_isomorphism_limited(z, max_len, weyl::DEFAULT_MAX_LEN)
}

pub fn verify_isomorphism_limited(
    z: &CoeffMode,
    max_len: u32,
    len_limit: u32,
) -> Result<IsoReport, IsoError> {
    match z {
        CoeffMode::Symbolic => verify_isomorphism_with(&RatFunc::var(), max_len, len_limit),
        CoeffMode::Numeric(q) => verify_isomorphism_with::<Rat>(q, max_len, len_limit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Poly;
    use crate::parser::eval_str;

    fn v() -> RatFunc {
        RatFunc::var()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn phi_image_squares_correctly() {
        let f = phi(&v()).unwrap();
        let s = f.image_of_s();
        let sq = s.mul(s).unwrap();
        // ((v²−1)/2)·T_s + ((v²+1)/2)·T_id
        let h1 = f.target().clone();
        let expect = eval_str("(v^2-1)/2*s1 + (v^2+1)/2", &h1).unwrap();
        assert_eq!(sq, expect);
        let rhs = s
            .scale(&v().sub(&RatFunc::one()))
            .add(&HeckeElement::scalar(&h1, v()))
            .unwrap();
        assert_eq!(sq, rhs);
        assert_eq!(
            sq.coeff(&AffinePerm::identity(2)),
            RatFunc::from_poly(Poly::from_coeffs(vec![q(1, 2), Rat::zero(), q(1, 2)]))
        );
    }

    #[test]
    fn z_one_is_identity_assignment() {
        for f in [phi(&Rat::one()).unwrap(), psi(&Rat::one()).unwrap()] {
            let s = HeckeElement::gen(f.target(), Generator::S(1)).unwrap();
            assert_eq!(f.image_of_s(), &s);
        }
    }

    #[test]
    fn minus_one_rejected() {
        assert!(matches!(
            phi(&Rat::from_int(-1)),
            Err(IsoError::InvalidParameter(_))
        ));
        assert!(matches!(
            psi(&Rat::from_int(-1)),
            Err(IsoError::InvalidParameter(_))
        ));
        assert!(matches!(
            verify_isomorphism(&CoeffMode::Numeric(Rat::from_int(-1)), 2),
            Err(IsoError::InvalidParameter(_))
        ));
    }

    #[test]
    fn psi_image_squares_to_one() {
        let g = psi(&v()).unwrap();
        let s = g.image_of_s();
        assert_eq!(s.mul(s).unwrap(), HeckeElement::unit(g.target()));
        assert_eq!(s, &eval_str("(2*s1 - (v-1))/(v+1)", g.target()).unwrap());
    }

    #[test]
    fn composing_generator_images() {
        let f = phi(&v()).unwrap();
        let g = psi(&v()).unwrap();
        assert_eq!(
            f.apply(g.image_of_s()).unwrap(),
            HeckeElement::gen(f.target(), Generator::S(1)).unwrap()
        );
        assert_eq!(
            g.apply(f.image_of_s()).unwrap(),
            HeckeElement::gen(g.target(), Generator::S(1)).unwrap()
        );
    }

    #[test]
    fn apply_examples() {
        let f = phi(&v()).unwrap();
        let src = f.source().clone();
        for k in -3..=3 {
            let tk = HeckeElement::gen(&src, Generator::T)
                .unwrap()
                .pow(k)
                .unwrap();
            let img = HeckeElement::gen(f.target(), Generator::T)
                .unwrap()
                .pow(k)
                .unwrap();
            assert_eq!(f.apply(&tk).unwrap(), img);
        }
        let s1 = HeckeElement::gen(&src, Generator::S(1)).unwrap();
        assert_eq!(&f.apply(&s1).unwrap(), f.image_of_s());
        let s0 = HeckeElement::gen(&src, Generator::S(0)).unwrap();
        let lhs = f.apply(&s1.mul(&s0).unwrap()).unwrap();
        let rhs = f.apply(&s1).unwrap().mul(&f.apply(&s0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            f.apply(&HeckeElement::unit(&src)).unwrap(),
            HeckeElement::unit(f.target())
        );
        assert!(matches!(
            f.apply(&HeckeElement::unit(f.target())),
            Err(IsoError::ConfigMismatch(_))
        ));
    }

    #[test]
    fn bad_assignment_rejected() {
        let h1 = HeckeConfig::new(2, Rat::one()).unwrap();
        let hz = HeckeConfig::new(2, Rat::from_int(3)).unwrap();
        let s = HeckeElement::gen(&h1, Generator::S(1)).unwrap();
        let t = HeckeElement::gen(&h1, Generator::T).unwrap();
        // T_s does not satisfy the z = 3 quadratic inside H(2, 1).
        assert!(matches!(
            GeneratorAssignment::new(hz, h1.clone(), s.clone(), t),
            Err(IsoError::BadAssignment(_))
        ));
        let hz = HeckeConfig::new(2, Rat::from_int(3)).unwrap();
        assert!(matches!(
            GeneratorAssignment::new(hz, h1, s.clone(), s),
            Err(IsoError::BadAssignment(_))
        ));
    }

    #[test]
    fn small_verifications_pass() {
        let rep = verify_isomorphism(&CoeffMode::Symbolic, 2).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
        assert_eq!(rep.checked_pairs, 2 * rep.ball_size * rep.ball_size);
        let rep = verify_isomorphism(&CoeffMode::Numeric(Rat::from_int(9)), 3).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
        assert!(matches!(
            verify_isomorphism(&CoeffMode::Symbolic, 9),
            Err(IsoError::ResourceLimit(_))
        ));
    }
}
