#![allow(dead_code)]

use hecke::coeff::{Field, Poly, Rat, RatFunc};
use hecke::hecke::{HeckeConfig, HeckeElement};
use hecke::weyl::{AffinePerm, ReducedDecomposition};
use rand::Rng;

pub trait RandomCoeff: Field {
    fn random(rng: &mut impl Rng) -> Self;
}

impl RandomCoeff for Rat {
    fn random(rng: &mut impl Rng) -> Self {
        Rat::new(rng.gen_range(-5..=5), rng.gen_range(1..=4)).unwrap()
    }
}

impl RandomCoeff for RatFunc {
    /// `(a + b v) / den` with `den` either 1 or `v + k`, k > 0, so no
    /// positive specialization hits a pole.
    fn random(rng: &mut impl Rng) -> Self {
        let num = Poly::from_ints(&[rng.gen_range(-3..=3), rng.gen_range(-2..=2)]);
        let den = if rng.gen_bool(0.5) {
            Poly::one()
        } else {
            Poly::from_ints(&[rng.gen_range(1..=3), 1])
        };
        RatFunc::new(num, den).unwrap()
    }
}

/// `t^k` times a random word in the simple reflections; not necessarily reduced.
pub fn random_perm(rng: &mut impl Rng, rank: usize, max_word: usize) -> AffinePerm {
    let word = if rank >= 2 {
        let n = rng.gen_range(0..=max_word);
        (0..n).map(|_| rng.gen_range(0..rank)).collect()
    } else {
        Vec::new()
    };
    let dec = ReducedDecomposition {
        omega_power: rng.gen_range(-2..=2),
        word,
    };
    AffinePerm::from_decomposition(rank, &dec)
}

pub fn random_element<C: RandomCoeff>(
    rng: &mut impl Rng,
    config: &HeckeConfig<C>,
    max_terms: usize,
    max_word: usize,
) -> HeckeElement<C> {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| (random_perm(rng, config.rank(), max_word), C::random(rng)))
        .collect();
    HeckeElement::from_terms(config, terms).unwrap()
}

pub fn fixture(rel: &str) -> String {
    let path = format!("{}/tests/fixtures/{rel}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
