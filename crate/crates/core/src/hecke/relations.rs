//! Checks that the T-basis realization satisfies the defining relations
//! of `H(r, z)`:
//!
//! * R0: `t t⁻¹ = 1 = t⁻¹ t`
//! * R1: `(s_i + 1)(s_i - z) = 0` for `1 <= i <= r-1`
//! * R2: `t² s_1 = s_{r-1} t²`
//! * R3: `t s_i = s_{i-1} t` for `2 <= i <= r-1`
//! * R4: `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}` for `1 <= i <= r-2`
//! * R5: `s_i s_j = s_j s_i` for `|i - j| >= 2`

use serde::Serialize;

use crate::coeff::Field;
use crate::weyl::{Generator, MAX_ENUM_RANK};

use super::{HeckeConfig, HeckeElement, HeckeError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub instance: String,
    /// `lhs - rhs`, pretty-printed.
    pub difference: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub name: String,
    pub statement: String,
    pub instances: usize,
    pub vacuous: bool,
    pub passed: bool,
    pub failures: Vec<RelationFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub rank: usize,
    pub param: String,
    pub mode: String,
    pub all_passed: bool,
    pub relations: Vec<RelationOutcome>,
    pub notes: Vec<String>,
}

struct Gens<C: Field> {
    config: HeckeConfig<C>,
    t: HeckeElement<C>,
    tinv: HeckeElement<C>,
}

impl<C: Field> Gens<C> {
    fn s(&self, i: usize) -> Result<HeckeElement<C>, HeckeError> {
        HeckeElement::gen(&self.config, Generator::S(i))
    }

    fn one(&self) -> HeckeElement<C> {
        HeckeElement::unit(&self.config)
    }

    fn prod(&self, xs: &[&HeckeElement<C>]) -> Result<HeckeElement<C>, HeckeError> {
        xs.iter().try_fold(self.one(), |acc, x| acc.mul(x))
    }
}

fn outcome<C: Field>(
    name: &str,
    statement: &str,
    instances: Vec<(String, HeckeElement<C>, HeckeElement<C>)>,
) -> Result<RelationOutcome, HeckeError> {
    let mut failures = Vec::new();
    let count = instances.len();
    for (instance, lhs, rhs) in instances {
        let diff = lhs.sub(&rhs)?;
        if !diff.is_zero() {
            failures.push(RelationFailure {
                instance,
                difference: diff.to_string(),
            });
        }
    }
    Ok(RelationOutcome {
        name: name.to_string(),
        statement: statement.to_string(),
        instances: count,
        vacuous: count == 0,
        passed: failures.is_empty(),
        failures,
    })
}

/// Evaluates every instance of R0–R5 at the given rank.
pub fn relation_check<C: Field>(config: &HeckeConfig<C>) -> Result<RelationReport, HeckeError> {
    let r = config.rank();
    if r > MAX_ENUM_RANK {
        return Err(HeckeError::ResourceLimit(format!(
            "relation check supports rank <= {MAX_ENUM_RANK}, got {r}"
        )));
    }
    let g = Gens {
        config: config.clone(),
        t: HeckeElement::gen(config, Generator::T)?,
        tinv: HeckeElement::gen(config, Generator::Tinv)?,
    };
    let z = config.param().clone();
    let one = g.one();
    let mut relations = Vec::new();

    relations.push(outcome(
        "R0",
        "t·t⁻¹ = 1 = t⁻¹·t",
        vec![
            ("t·t⁻¹".into(), g.t.mul(&g.tinv)?, one.clone()),
            ("t⁻¹·t".into(), g.tinv.mul(&g.t)?, one.clone()),
        ],
    )?);

    let mut r1 = Vec::new();
    for i in 1..r {
        let s = g.s(i)?;
        let lhs = s
            .add(&one)?
            .mul(&s.sub(&HeckeElement::scalar(config, z.clone()))?)?;
        r1.push((format!("i={i}"), lhs, HeckeElement::zero(config)));
    }
    relations.push(outcome("R1", "(s_i + 1)·(s_i − z) = 0", r1)?);

    let mut r2 = Vec::new();
    if r >= 2 {
        let t2 = g.t.mul(&g.t)?;
        let s1 = g.s(1)?;
        let slast = g.s(r - 1)?;
        r2.push((
            format!("s_{}", r - 1),
            g.prod(&[&t2, &s1])?,
            g.prod(&[&slast, &t2])?,
        ));
    }
    relations.push(outcome("R2", "t²·s_1 = s_{r−1}·t²", r2)?);

    let mut r3 = Vec::new();
    for i in 2..r {
        r3.push((
            format!("i={i}"),
            g.prod(&[&g.t, &g.s(i)?])?,
            g.prod(&[&g.s(i - 1)?, &g.t])?,
        ));
    }
    relations.push(outcome("R3", "t·s_i = s_{i−1}·t", r3)?);

    let mut r4 = Vec::new();
    for i in 1..r.saturating_sub(1) {
        let a = g.s(i)?;
        let b = g.s(i + 1)?;
        r4.push((
            format!("i={i}"),
            g.prod(&[&a, &b, &a])?,
            g.prod(&[&b, &a, &b])?,
        ));
    }
    relations.push(outcome("R4", "s_i·s_{i+1}·s_i = s_{i+1}·s_i·s_{i+1}", r4)?);

    let mut r5 = Vec::new();
    for i in 1..r {
        for j in i + 2..r {
            let a = g.s(i)?;
            let b = g.s(j)?;
            r5.push((format!("i={i}, j={j}"), a.mul(&b)?, b.mul(&a)?));
        }
    }
    relations.push(outcome("R5", "s_i·s_j = s_j·s_i for |i−j| ≥ 2", r5)?);

    let mut notes = Vec::new();
    let vacuous: Vec<_> = relations
        .iter()
        .filter(|o| o.vacuous)
        .map(|o| o.name.clone())
        .collect();
    if !vacuous.is_empty() {
        notes.push(format!("vacuous at rank {r}: {}", vacuous.join(", ")));
    }
    if r >= 2 {
        notes.push("R2 is read with s_{r−1} on the right-hand side".into());
    }
    Ok(RelationReport {
        rank: r,
        param: z.to_string(),
        mode: C::MODE.to_string(),
        all_passed: relations.iter().all(|o| o.passed),
        relations,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, RatFunc};

    #[test]
    fn rank_one_only_r0() {
        let rep = relation_check(&HeckeConfig::symbolic(1).unwrap()).unwrap();
        assert!(rep.all_passed);
        assert_eq!(rep.relations[0].instances, 2);
        assert!(rep.relations[1..].iter().all(|o| o.vacuous));
    }

    #[test]
    fn rank_two_r3_to_r5_vacuous() {
        let rep = relation_check(&HeckeConfig::symbolic(2).unwrap()).unwrap();
        assert!(rep.all_passed);
        let vac: Vec<bool> = rep.relations.iter().map(|o| o.vacuous).collect();
        assert_eq!(vac, vec![false, false, false, true, true, true]);
    }

    #[test]
    fn rank_four_all_pass() {
        let rep = relation_check(&HeckeConfig::symbolic(4).unwrap()).unwrap();
        assert!(rep.all_passed, "{rep:?}");
        assert!(rep.relations.iter().all(|o| !o.vacuous));
        let rep = relation_check(&HeckeConfig::numeric(4, Rat::from_int(9)).unwrap()).unwrap();
        assert!(rep.all_passed);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            relation_check(&HeckeConfig::new(7, RatFunc::var()).unwrap()),
            Err(HeckeError::ResourceLimit(_))
        ));
    }
}
