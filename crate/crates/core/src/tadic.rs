//! Irreducible representations of `GL_2(D)` built from cuspidal data:
//! the reducibility test for `σ_1 × σ_2`, kinds I–IV, and the labels
//! `St(σ)` / `Sp(σ)` of the constituents at a reducibility point.
//!
//! A twisted cuspidal `σ ⊗ |·|^{r/d} ⊗ χ_θ` is stored by its label, the real
//! exponent `r` and the angle `θ ∈ [0, 1)` of its unitary unramified part.
//! Twisting by an unramified character of order dividing the torsion
//! number `n` fixes `σ`, so angles only matter modulo `1/n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bernstein::{CuspidalFactor, RatLiteral};
use crate::coeff::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TadicError {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    #[error("the induced representation is reducible; choose the sub or the quotient constituent")]
    AmbiguousConstituent,
    #[error("the induced representation is irreducible")]
    NotReducible,
    #[error("reducibility number {s} of {label:?} does not equal its segment length {a}")]
    ReducibilityMismatch { label: String, s: Rat, a: u32 },
    #[error("schema violation: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedCuspidalD {
    label: String,
    a: u32,
    torsion: u32,
    twist_r: Rat,
    twist_theta: Rat,
}

impl TwistedCuspidalD {
    pub fn new(
        label: &str,
        a: u32,
        torsion: u32,
        twist_r: Rat,
        twist_theta: Rat,
    ) -> Result<Self, TadicError> {
        if a == 0 {
            return Err(TadicError::InvalidDescriptor(format!(
                "{label:?}: a must be >= 1"
            )));
        }
        if torsion == 0 {
            return Err(TadicError::InvalidDescriptor(format!(
                "{label:?}: torsion must be >= 1"
            )));
        }
        if twist_theta.is_negative() || twist_theta >= Rat::one() {
            return Err(TadicError::InvalidDescriptor(format!(
                "{label:?}: theta = {twist_theta} outside [0, 1)"
            )));
        }
        Ok(TwistedCuspidalD {
            label: label.to_string(),
            a,
            torsion,
            twist_r,
            twist_theta,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn torsion(&self) -> u32 {
        self.torsion
    }

    pub fn twist_r(&self) -> &Rat {
        &self.twist_r
    }

    pub fn twist_theta(&self) -> &Rat {
        &self.twist_theta
    }
}

impl fmt::Display for TwistedCuspidalD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|.|^({})", self.label, self.twist_r)?;
        if !self.twist_theta.is_zero() {
            write!(f, "*chi({})", self.twist_theta)?;
        }
        Ok(())
    }
}

/// Equal labels must carry equal `(a, torsion)`.
pub fn check_pair(s1: &TwistedCuspidalD, s2: &TwistedCuspidalD) -> Result<(), TadicError> {
    if s1.label == s2.label && (s1.a, s1.torsion) != (s2.a, s2.torsion) {
        return Err(TadicError::InconsistentLabels(format!(
            "label {:?} has (a, n) = ({}, {}) and ({}, {})",
            s1.label, s1.a, s1.torsion, s2.a, s2.torsion
        )));
    }
    Ok(())
}

pub fn equivalent(s1: &TwistedCuspidalD, s2: &TwistedCuspidalD) -> bool {
    s1.label == s2.label
        && (s1.a, s1.torsion) == (s2.a, s2.torsion)
        && s1.twist_r == s2.twist_r
        && s1
            .twist_theta
            .sub(&s2.twist_theta)
            .mul(&Rat::from_int(s1.torsion as i64))
            .is_integer()
}

/// `σ ↦ σ ⊗ |·|^{x/d}`.
pub fn twist(s: &TwistedCuspidalD, x: &Rat) -> TwistedCuspidalD {
    TwistedCuspidalD {
        twist_r: s.twist_r.add(x),
        ..s.clone()
    }
}

/// `σ_2 ≃ σ_1 ⊗ |·|^{±a(σ_1)/d}`.
pub fn reducibility(s1: &TwistedCuspidalD, s2: &TwistedCuspidalD) -> bool {
    branch(s1, s2).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

impl Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn branch(s1: &TwistedCuspidalD, s2: &TwistedCuspidalD) -> Option<Branch> {
    let a = Rat::from_int(s1.a as i64);
    if equivalent(s2, &twist(s1, &a)) {
        Some(Branch::Plus)
    } else if equivalent(s2, &twist(s1, &a.neg())) {
        Some(Branch::Minus)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Gl2RepDescriptor {
    Cuspidal(String),
    Induced {
        sigma1: TwistedCuspidalD,
        sigma2: TwistedCuspidalD,
    },
    OneDimensional(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstituentChoice {
    Sub,
    Quotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    I,
    II,
    III,
    IvSt,
    IvSp,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::I => "I",
            Kind::II => "II",
            Kind::III => "III",
            Kind::IvSt => "IV-St",
            Kind::IvSp => "IV-Sp",
        })
    }
}

/// For a reducible `σ_1 × σ_2`, the quotient is `St` when `σ_1` sits below
/// `σ_2` (plus branch) and `Sp` otherwise; the sub is the other one.
pub fn classify_kind(
    rep: &Gl2RepDescriptor,
    choice: Option<ConstituentChoice>,
) -> Result<Kind, TadicError> {
    match rep {
        Gl2RepDescriptor::Cuspidal(_) => Ok(Kind::I),
        Gl2RepDescriptor::OneDimensional(_) => Ok(Kind::III),
        Gl2RepDescriptor::Induced { sigma1, sigma2 } => {
            check_pair(sigma1, sigma2)?;
            match (branch(sigma1, sigma2), choice) {
                (None, _) => Ok(Kind::II),
                (Some(_), None) => Err(TadicError::AmbiguousConstituent),
                (Some(b), Some(c)) => Ok(match (b, c) {
                    (Branch::Plus, ConstituentChoice::Quotient)
                    | (Branch::Minus, ConstituentChoice::Sub) => Kind::IvSt,
                    _ => Kind::IvSp,
                }),
            }
        }
    }
}

/// `St(σ_0)` and `Sp(σ_0)` for the midpoint `σ_0` of a reducible pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituents {
    pub midpoint: TwistedCuspidalD,
    pub branch: Branch,
}

impl Constituents {
    pub fn st(&self) -> String {
        format!("St({})", self.midpoint)
    }

    pub fn sp(&self) -> String {
        format!("Sp({})", self.midpoint)
    }
}

pub fn constituents(
    s1: &TwistedCuspidalD,
    s2: &TwistedCuspidalD,
) -> Result<Constituents, TadicError> {
    check_pair(s1, s2)?;
    let b = branch(s1, s2).ok_or(TadicError::NotReducible)?;
    let half = Rat::new(s1.a as i64, 2).expect("nonzero denominator");
    let shift = match b {
        Branch::Plus => half,
        Branch::Minus => half.neg(),
    };
    Ok(Constituents {
        midpoint: twist(s1, &shift),
        branch: b,
    })
}

/// When a twisted cuspidal and a cuspidal factor describe the same label,
/// the reducibility number must equal the segment length.
pub fn check_against_factor(
    sigma: &TwistedCuspidalD,
    factor: &CuspidalFactor,
) -> Result<(), TadicError> {
    if sigma.label != factor.label {
        return Ok(());
    }
    if factor.torsion != sigma.torsion {
        return Err(TadicError::InconsistentLabels(format!(
            "label {:?} has torsion {} here and {} in the Bernstein descriptor",
            sigma.label, sigma.torsion, factor.torsion
        )));
    }
    if factor.reducibility != Rat::from_int(sigma.a as i64) {
        return Err(TadicError::ReducibilityMismatch {
            label: sigma.label.clone(),
            s: factor.reducibility.clone(),
            a: sigma.a,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaJson {
    pub label: String,
    pub a: u32,
    pub torsion: u32,
    pub r: String,
    pub theta: String,
}

impl From<&TwistedCuspidalD> for SigmaJson {
    fn from(s: &TwistedCuspidalD) -> Self {
        SigmaJson {
            label: s.label.clone(),
            a: s.a,
            torsion: s.torsion,
            r: s.twist_r.to_string(),
            theta: s.twist_theta.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SigmaInput {
    label: String,
    a: u32,
    torsion: u32,
    r: RatLiteral,
    theta: RatLiteral,
}

impl SigmaInput {
    fn build(&self) -> Result<TwistedCuspidalD, TadicError> {
        TwistedCuspidalD::new(
            &self.label,
            self.a,
            self.torsion,
            self.r.to_rat().map_err(TadicError::Schema)?,
            self.theta.to_rat().map_err(TadicError::Schema)?,
        )
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassifyInput {
    d: u32,
    sigma1: Option<SigmaInput>,
    sigma2: Option<SigmaInput>,
    cuspidal: Option<String>,
    one_dimensional: Option<String>,
    constituent: Option<String>,
}

/// A parsed `tadic classify` request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyRequest {
    pub d: u32,
    pub rep: Gl2RepDescriptor,
    pub choice: Option<ConstituentChoice>,
}

impl ClassifyRequest {
    pub fn from_json(text: &str) -> Result<Self, TadicError> {
        let raw: ClassifyInput =
            serde_json::from_str(text).map_err(|e| TadicError::Schema(e.to_string()))?;
        if raw.d == 0 {
            return Err(TadicError::Schema("d must be >= 1".into()));
        }
        let choice = match raw.constituent.as_deref() {
            None => None,
            Some("sub") => Some(ConstituentChoice::Sub),
            Some("quotient") => Some(ConstituentChoice::Quotient),
            Some(other) => {
                return Err(TadicError::Schema(format!(
                    "constituent must be \"sub\" or \"quotient\", got {other:?}"
                )))
            }
        };
        let rep = match (raw.sigma1, raw.sigma2, raw.cuspidal, raw.one_dimensional) {
            (Some(a), Some(b), None, None) => Gl2RepDescriptor::Induced {
                sigma1: a.build()?,
                sigma2: b.build()?,
            },
            (None, None, Some(label), None) => Gl2RepDescriptor::Cuspidal(label),
            (None, None, None, Some(label)) => Gl2RepDescriptor::OneDimensional(label),
            _ => {
                return Err(TadicError::Schema(
                    "give exactly one of: sigma1 and sigma2, cuspidal, one_dimensional".into(),
                ))
            }
        };
        Ok(ClassifyRequest {
            d: raw.d,
            rep,
            choice,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstituentsJson {
    #[serde(rename = "St")]
    pub st: String,
    #[serde(rename = "Sp")]
    pub sp: String,
    pub midpoint: SigmaJson,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reducible: Option<bool>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constituents: Option<ConstituentsJson>,
}

/// Reducible pairs without a constituent choice report kind `"IV"` together
/// with both constituents.
pub fn classify_report(req: &ClassifyRequest) -> Result<ClassifyReport, TadicError> {
    let (reducible, cons) = match &req.rep {
        Gl2RepDescriptor::Induced { sigma1, sigma2 } => {
            check_pair(sigma1, sigma2)?;
            let red = reducibility(sigma1, sigma2);
            let cons = if red {
                let c = constituents(sigma1, sigma2)?;
                Some(ConstituentsJson {
                    st: c.st(),
                    sp: c.sp(),
                    midpoint: (&c.midpoint).into(),
                    branch: c.branch,
                })
            } else {
                None
            };
            (Some(red), cons)
        }
        _ => (None, None),
    };
    let kind = match classify_kind(&req.rep, req.choice) {
        Ok(k) => k.to_string(),
        Err(TadicError::AmbiguousConstituent) => "IV".to_string(),
        Err(e) => return Err(e),
    };
    Ok(ClassifyReport {
        d: req.d,
        reducible,
        kind,
        constituents: cons,
    })
}
