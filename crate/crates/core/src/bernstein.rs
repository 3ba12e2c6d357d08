//! Descriptor-level bookkeeping for Bernstein blocks of `GL_N(D)`.
//!
//! An inertial class is described by a Levi partition of `N` together with
//! opaque labels and numerical invariants (torsion number `n`, reducibility
//! number `s`) for each cuspidal factor. From that data this module computes
//! the grouping into equivalence classes, the tensor decomposition
//! `⊗ H(r_i, q^{f_i})` with `f_i = n·s`, the `GL_2` trichotomy, explicit
//! presentations, and Morita fingerprints.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Rat;

pub const MULTIPLICITY: &str = "countably-infinite";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BernsteinError {
    #[error("invalid division algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    #[error("n*s = {f} for label {label:?} is not a positive integer (use --allow-nonintegral-f to permit)")]
    NonIntegralF { label: String, f: Rat },
    #[error("expected N = 2, got N = {0}")]
    NotRankTwo(u32),
    #[error("schema violation: {0}")]
    Schema(String),
}

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return Some((q, 1));
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisionAlgebra {
    q: u64,
    d: u32,
}

impl DivisionAlgebra {
    pub fn new(q: u64, d: u32) -> Result<Self, BernsteinError> {
        if prime_power(q).is_none() {
            return Err(BernsteinError::InvalidAlgebra(format!(
                "residue cardinality {q} is not a prime power"
            )));
        }
        if d == 0 {
            return Err(BernsteinError::InvalidAlgebra(
                "index d must be at least 1".into(),
            ));
        }
        Ok(DivisionAlgebra { q, d })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn d(&self) -> u32 {
        self.d
    }
}

impl fmt::Display for DivisionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, d={})", self.q, self.d)
    }
}

/// A positive real `p^e` with `p` prime and `e` rational; exact when `e` is
/// an integer, and still exactly comparable otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZParam {
    prime: u64,
    exponent: Rat,
}

fn int_pow(base: u64, exp: &BigInt) -> Rat {
    let k: u32 = u32::try_from(exp.magnitude().clone()).expect("exponent fits in u32");
    let value = Rat::from_bigint(Pow::pow(BigInt::from(base), k));
    if exp.sign() == num_bigint::Sign::Minus {
        value.inv().expect("prime power is nonzero")
    } else {
        value
    }
}

impl ZParam {
    pub fn new(prime: u64, exponent: Rat) -> Self {
        if exponent.is_zero() {
            return ZParam { prime: 2, exponent };
        }
        ZParam { prime, exponent }
    }

    /// `q^f` for a prime power `q`.
    pub fn from_power(q: u64, f: &Rat) -> Self {
        let (p, e) = prime_power(q).expect("validated prime power");
        ZParam::new(p, f.mul(&Rat::from_int(e as i64)))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> &Rat {
        &self.exponent
    }

    /// The exact value when the exponent is an integer.
    pub fn as_rat(&self) -> Option<Rat> {
        self.exponent
            .is_integer()
            .then(|| int_pow(self.prime, &self.exponent.numer()))
    }

    pub fn inv(&self) -> Self {
        ZParam::new(self.prime, self.exponent.neg())
    }

    /// `min(z, 1/z)`.
    pub fn class(&self) -> Self {
        ZParam::new(self.prime, self.exponent.abs().neg())
    }
}

impl Ord for ZParam {
    fn cmp(&self, other: &Self) -> Ordering {
        // p^(a/b) vs p'^(a'/b'): raise both to the power b·b' > 0.
        let e1 = self.exponent.numer() * other.exponent.denom();
        let e2 = other.exponent.numer() * self.exponent.denom();
        int_pow(self.prime, &e1)
            .cmp(&int_pow(other.prime, &e2))
            .then_with(|| self.prime.cmp(&other.prime))
    }
}

impl PartialOrd for ZParam {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rat() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}^({})", self.prime, self.exponent),
        }
    }
}

impl Serialize for ZParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CuspidalFactor {
    pub label: String,
    pub m: u32,
    pub torsion: u32,
    pub reducibility: Rat,
}

impl CuspidalFactor {
    pub fn new(
        label: &str,
        m: u32,
        torsion: u32,
        reducibility: Rat,
    ) -> Result<Self, BernsteinError> {
        if m == 0 {
            return Err(BernsteinError::InvalidDescriptor(format!(
                "factor {label:?}: m must be >= 1"
            )));
        }
        if torsion == 0 {
            return Err(BernsteinError::InvalidDescriptor(format!(
                "factor {label:?}: torsion number must be >= 1"
            )));
        }
        if !reducibility.is_positive() {
            return Err(BernsteinError::InvalidDescriptor(format!(
                "factor {label:?}: reducibility number must be positive"
            )));
        }
        Ok(CuspidalFactor {
            label: label.to_string(),
            m,
            torsion,
            reducibility,
        })
    }

    /// `f = n·s`.
    pub fn f(&self) -> Rat {
        Rat::from_int(self.torsion as i64).mul(&self.reducibility)
    }

    fn invariants(&self) -> (u32, u32, &Rat) {
        (self.m, self.torsion, &self.reducibility)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InertialClassDescriptor {
    algebra: DivisionAlgebra,
    n: u32,
    levi: Vec<u32>,
    factors: Vec<CuspidalFactor>,
}

impl InertialClassDescriptor {
    /// Checks `Σ levi = N`, arity, and `factor_i.m = levi_i`. Label
    /// consistency is checked by [`group_factors`].
    pub fn new(
        algebra: DivisionAlgebra,
        n: u32,
        levi: Vec<u32>,
        factors: Vec<CuspidalFactor>,
    ) -> Result<Self, BernsteinError> {
        if n == 0 {
            return Err(BernsteinError::InvalidDescriptor("N must be >= 1".into()));
        }
        if levi.is_empty() || levi.contains(&0) {
            return Err(BernsteinError::InvalidDescriptor(
                "levi must be a nonempty list of positive parts".into(),
            ));
        }
        let total: u64 = levi.iter().map(|&x| x as u64).sum();
        if total != n as u64 {
            return Err(BernsteinError::InvalidDescriptor(format!(
                "levi parts sum to {total}, expected N = {n}"
            )));
        }
        if factors.len() != levi.len() {
            return Err(BernsteinError::InvalidDescriptor(format!(
                "{} factors for {} levi blocks",
                factors.len(),
                levi.len()
            )));
        }
        for (i, (f, &m)) in factors.iter().zip(&levi).enumerate() {
            if f.m != m {
                return Err(BernsteinError::InvalidDescriptor(format!(
                    "factor {} has m = {} but levi block is {m}",
                    i + 1,
                    f.m
                )));
            }
        }
        Ok(InertialClassDescriptor {
            algebra,
            n,
            levi,
            factors,
        })
    }

    pub fn algebra(&self) -> DivisionAlgebra {
        self.algebra
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn levi(&self) -> &[u32] {
        &self.levi
    }

    pub fn factors(&self) -> &[CuspidalFactor] {
        &self.factors
    }

    pub fn is_cuspidal(&self) -> bool {
        self.levi.len() == 1
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub allow_nonintegral_f: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SsClass {
    pub label: String,
    /// 1-based positions of the factors in this class.
    pub indices: Vec<usize>,
    pub r: usize,
    pub f: Rat,
    pub z: ZParam,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SsDecomposition {
    pub classes: Vec<SsClass>,
}

/// Groups factors into classes of equal `(m, label)`, in order of first
/// appearance.
pub fn group_factors(
    desc: &InertialClassDescriptor,
    opts: Options,
) -> Result<SsDecomposition, BernsteinError> {
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, f) in desc.factors.iter().enumerate() {
        match classes
            .iter_mut()
            .find(|(rep, _)| desc.factors[*rep].label == f.label)
        {
            Some((rep, members)) => {
                let first = &desc.factors[*rep];
                if first.invariants() != f.invariants() {
                    return Err(BernsteinError::InconsistentLabels(format!(
                        "label {:?} carries (m, n, s) = ({}, {}, {}) at factor {} but ({}, {}, {}) at factor {}",
                        f.label,
                        first.m,
                        first.torsion,
                        first.reducibility,
                        *rep + 1,
                        f.m,
                        f.torsion,
                        f.reducibility,
                        i + 1
                    )));
                }
                members.push(i + 1);
            }
            None => classes.push((i, vec![i + 1])),
        }
    }
    let q = desc.algebra.q;
    let classes = classes
        .into_iter()
        .map(|(rep, indices)| {
            let factor = &desc.factors[rep];
            let f = factor.f();
            if !f.is_integer() && !opts.allow_nonintegral_f {
                return Err(BernsteinError::NonIntegralF {
                    label: factor.label.clone(),
                    f,
                });
            }
            Ok(SsClass {
                label: factor.label.clone(),
                r: indices.len(),
                indices,
                z: ZParam::from_power(q, &f),
                f,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(SsDecomposition { classes })
}

/// The tensor factors `(r_i, z_i)`, sorted by `(r, z)`.
pub fn ss_decompose(
    desc: &InertialClassDescriptor,
    opts: Options,
) -> Result<Vec<(usize, ZParam)>, BernsteinError> {
    let mut out: Vec<_> = group_factors(desc, opts)?
        .classes
        .into_iter()
        .map(|c| (c.r, c.z))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Trichotomy {
    Cusp,
    Neqv,
    Eqv,
}

impl fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trichotomy::Cusp => "Cusp",
            Trichotomy::Neqv => "Neqv",
            Trichotomy::Eqv => "Eqv",
        })
    }
}

pub fn gl2_classify(desc: &InertialClassDescriptor) -> Result<Trichotomy, BernsteinError> {
    if desc.n != 2 {
        return Err(BernsteinError::NotRankTwo(desc.n));
    }
    Ok(match desc.factors.as_slice() {
        [_] => Trichotomy::Cusp,
        [a, b] if a.label != b.label => Trichotomy::Neqv,
        _ => Trichotomy::Eqv,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraPresentation {
    LaurentPoly { num_vars: u8 },
    DihedralQuotient,
    TensorAffine(Vec<(usize, ZParam)>),
}

impl AlgebraPresentation {
    pub fn kind(&self) -> String {
        match self {
            AlgebraPresentation::LaurentPoly { num_vars } => format!("LaurentPoly({num_vars})"),
            AlgebraPresentation::DihedralQuotient => "DihedralQuotient".into(),
            AlgebraPresentation::TensorAffine(_) => "TensorAffine".into(),
        }
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraPresentation::LaurentPoly { num_vars: 1 } => f.write_str("C[x,x^-1]"),
            AlgebraPresentation::LaurentPoly { num_vars: 2 } => f.write_str("C[y,z,y^-1,z^-1]"),
            AlgebraPresentation::LaurentPoly { num_vars } => {
                let xs: Vec<String> = (1..=*num_vars).map(|i| format!("x{i}")).collect();
                let inv: Vec<String> = xs.iter().map(|x| format!("{x}^-1")).collect();
                write!(f, "C[{},{}]", xs.join(","), inv.join(","))
            }
            AlgebraPresentation::DihedralQuotient => {
                f.write_str("C~[s,t,t^-1]/<s^2-1, t^2*s-s*t^2>")
            }
            AlgebraPresentation::TensorAffine(parts) => {
                let ps: Vec<String> = parts.iter().map(|(r, z)| format!("H({r}, {z})")).collect();
                f.write_str(&ps.join(" ⊗ "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationOutcome {
    pub presentation: AlgebraPresentation,
    pub normalized: bool,
    pub note: Option<String>,
}

pub const NO_NORMALIZED_PRESENTATION: &str = "no normalized presentation";

pub fn presentation_of(
    desc: &InertialClassDescriptor,
    opts: Options,
) -> Result<PresentationOutcome, BernsteinError> {
    let normalized = |p| PresentationOutcome {
        presentation: p,
        normalized: true,
        note: None,
    };
    if desc.is_cuspidal() {
        group_factors(desc, opts)?;
        return Ok(normalized(AlgebraPresentation::LaurentPoly { num_vars: 1 }));
    }
    if desc.n == 2 {
        group_factors(desc, opts)?;
        return Ok(normalized(match gl2_classify(desc)? {
            Trichotomy::Cusp => AlgebraPresentation::LaurentPoly { num_vars: 1 },
            Trichotomy::Neqv => AlgebraPresentation::LaurentPoly { num_vars: 2 },
            Trichotomy::Eqv => AlgebraPresentation::DihedralQuotient,
        }));
    }
    Ok(PresentationOutcome {
        presentation: AlgebraPresentation::TensorAffine(ss_decompose(desc, opts)?),
        normalized: false,
        note: Some(NO_NORMALIZED_PRESENTATION.into()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorTag {
    A1,
    A2Generic,
    Ar { r: usize, zclass: ZParam },
}

impl fmt::Display for FactorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorTag::A1 => f.write_str("A1"),
            FactorTag::A2Generic => f.write_str("A2generic"),
            FactorTag::Ar { r, zclass } => write!(f, "Ar({r}, {zclass})"),
        }
    }
}

/// Sorted multiset of factor tags.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoritaTag(Vec<FactorTag>);

impl MoritaTag {
    pub fn new(mut tags: Vec<FactorTag>) -> Self {
        tags.sort();
        MoritaTag(tags)
    }

    pub fn factors(&self) -> &[FactorTag] {
        &self.0
    }

    pub fn strings(&self) -> Vec<String> {
        self.0.iter().map(|t| t.to_string()).collect()
    }
}

impl fmt::Display for MoritaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.strings().join(", "))
    }
}

/// The tag of one tensor factor `H(r, z)`.
pub fn factor_tag(r: usize, z: &ZParam) -> FactorTag {
    match r {
        1 => FactorTag::A1,
        // z = q^f is positive, so z + 1 ≠ 0 and the parameter can be erased.
        2 => FactorTag::A2Generic,
        _ => FactorTag::Ar {
            r,
            zclass: z.class(),
        },
    }
}

pub fn morita_tag(
    desc: &InertialClassDescriptor,
    opts: Options,
) -> Result<MoritaTag, BernsteinError> {
    Ok(MoritaTag::new(
        ss_decompose(desc, opts)?
            .iter()
            .map(|(r, z)| factor_tag(*r, z))
            .collect(),
    ))
}

/// An inertial class with the division algebra left open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassShape {
    pub name: String,
    pub levi: Vec<u32>,
    pub labels: Vec<String>,
    pub torsion: Vec<u32>,
    #[serde(with = "rat_strings")]
    pub reducibility: Vec<Rat>,
}

impl ClassShape {
    pub fn n(&self) -> u32 {
        self.levi.iter().sum()
    }

    /// `N <= 2` or cuspidal.
    pub fn is_supported(&self) -> bool {
        self.levi.len() == 1 || self.n() <= 2
    }

    pub fn instantiate(
        &self,
        algebra: DivisionAlgebra,
    ) -> Result<InertialClassDescriptor, BernsteinError> {
        let k = self.levi.len();
        if self.labels.len() != k || self.torsion.len() != k || self.reducibility.len() != k {
            return Err(BernsteinError::InvalidDescriptor(format!(
                "shape {:?}: per-factor lists must have {k} entries",
                self.name
            )));
        }
        let factors = (0..k)
            .map(|i| {
                CuspidalFactor::new(
                    &self.labels[i],
                    self.levi[i],
                    self.torsion[i],
                    self.reducibility[i].clone(),
                )
            })
            .collect::<Result<_, _>>()?;
        InertialClassDescriptor::new(algebra, self.n(), self.levi.clone(), factors)
    }
}

mod rat_strings {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::RatLiteral;
    use crate::coeff::Rat;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<RatLiteral>::deserialize(d)?
            .into_iter()
            .map(|l| l.to_rat().map_err(serde::de::Error::custom))
            .collect()
    }
}

fn shape(name: String, levi: &[u32], labels: &[&str], ns: &[(u32, u32)]) -> ClassShape {
    ClassShape {
        name,
        levi: levi.to_vec(),
        labels: labels.iter().map(|s| s.to_string()).collect(),
        torsion: ns.iter().map(|p| p.0).collect(),
        reducibility: ns.iter().map(|p| Rat::from_int(p.1 as i64)).collect(),
    }
}

/// `{Cusp, Neqv, Eqv} × (n, s) ∈ values²`; the two factors of a `Neqv`
/// shape range independently.
pub fn gl2_shape_grid(values: &[u32]) -> Vec<ClassShape> {
    let pairs: Vec<(u32, u32)> = values
        .iter()
        .flat_map(|&n| values.iter().map(move |&s| (n, s)))
        .collect();
    let mut out = Vec::new();
    for &(n, s) in &pairs {
        out.push(shape(format!("cusp[n={n},s={s}]"), &[2], &["A"], &[(n, s)]));
    }
    for &(n1, s1) in &pairs {
        for &(n2, s2) in &pairs {
            out.push(shape(
                format!("neqv[n={n1},s={s1};n={n2},s={s2}]"),
                &[1, 1],
                &["A", "B"],
                &[(n1, s1), (n2, s2)],
            ));
        }
    }
    for &(n, s) in &pairs {
        out.push(shape(
            format!("eqv[n={n},s={s}]"),
            &[1, 1],
            &["A", "A"],
            &[(n, s), (n, s)],
        ));
    }
    out
}

/// Cuspidal shapes `levi = (N)` for each `N` in `ranks`.
pub fn cuspidal_shapes(ranks: &[u32], values: &[u32]) -> Vec<ClassShape> {
    let mut out = Vec::new();
    for &n in ranks {
        for &t in values {
            for &s in values {
                out.push(shape(
                    format!("cusp{n}[n={t},s={s}]"),
                    &[n],
                    &["A"],
                    &[(t, s)],
                ));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeStatus {
    Equal,
    Differ,
    UnsupportedShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub shape: String,
    pub tag_a: Vec<String>,
    pub tag_b: Vec<String>,
    pub status: ShapeStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub algebra_a: DivisionAlgebra,
    pub algebra_b: DivisionAlgebra,
    pub rows: Vec<CensusRow>,
    pub tags_a: BTreeSet<String>,
    pub tags_b: BTreeSet<String>,
    pub warnings: Vec<String>,
    pub verdict: String,
    pub multiplicity: String,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

/// Compares Morita tags shape by shape under two division algebras.
/// Non-cuspidal shapes with `N >= 3` are reported but excluded.
pub fn census_compare(
    shapes: &[ClassShape],
    alg_a: DivisionAlgebra,
    alg_b: DivisionAlgebra,
    opts: Options,
) -> Result<CensusReport, BernsteinError> {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut tags_a = BTreeSet::new();
    let mut tags_b = BTreeSet::new();
    for sh in shapes {
        let ta = morita_tag(&sh.instantiate(alg_a)?, opts)?;
        let tb = morita_tag(&sh.instantiate(alg_b)?, opts)?;
        let status = if !sh.is_supported() {
            warnings.push(format!(
                "UnsupportedShape: {} (non-cuspidal, N = {}) excluded from the verdict",
                sh.name,
                sh.n()
            ));
            ShapeStatus::UnsupportedShape
        } else {
            tags_a.insert(ta.to_string());
            tags_b.insert(tb.to_string());
            if ta == tb {
                ShapeStatus::Equal
            } else {
                ShapeStatus::Differ
            }
        };
        rows.push(CensusRow {
            shape: sh.name.clone(),
            tag_a: ta.strings(),
            tag_b: tb.strings(),
            status,
        });
    }
    let pass = tags_a == tags_b && rows.iter().all(|r| r.status != ShapeStatus::Differ);
    Ok(CensusReport {
        algebra_a: alg_a,
        algebra_b: alg_b,
        rows,
        tags_a,
        tags_b,
        warnings,
        verdict: if pass { "PASS" } else { "FAIL" }.into(),
        multiplicity: MULTIPLICITY.into(),
    })
}

/// A rational given either as a JSON integer or as an `"a/b"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub(crate) enum RatLiteral {
    Int(i64),
    Text(String),
}

impl RatLiteral {
    pub(crate) fn to_rat(&self) -> Result<Rat, String> {
        match self {
            RatLiteral::Int(n) => Ok(Rat::from_int(*n)),
            RatLiteral::Text(s) => s.parse::<Rat>().map_err(|e| format!("{s:?}: {e}")),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    q: u64,
    d: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorJson {
    label: String,
    m: u32,
    torsion: u32,
    reducibility: RatLiteral,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorJson {
    algebra: AlgebraJson,
    #[serde(rename = "N")]
    n: u32,
    levi: Vec<u32>,
    factors: Vec<FactorJson>,
}

impl InertialClassDescriptor {
    pub fn from_json(text: &str) -> Result<Self, BernsteinError> {
        let raw: DescriptorJson =
            serde_json::from_str(text).map_err(|e| BernsteinError::Schema(e.to_string()))?;
        let algebra = DivisionAlgebra::new(raw.algebra.q, raw.algebra.d)?;
        let factors = raw
            .factors
            .iter()
            .map(|f| {
                let s = f.reducibility.to_rat().map_err(BernsteinError::Schema)?;
                CuspidalFactor::new(&f.label, f.m, f.torsion, s)
            })
            .collect::<Result<_, _>>()?;
        InertialClassDescriptor::new(algebra, raw.n, raw.levi, factors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposeReport {
    pub trichotomy: Option<Trichotomy>,
    pub ss: Vec<SsClass>,
    pub presentation: String,
    pub presentation_algebra: String,
    pub normalized: bool,
    pub notes: Vec<String>,
    pub morita_tag: Vec<String>,
    pub multiplicity: String,
}

pub fn decompose_report(
    desc: &InertialClassDescriptor,
    opts: Options,
) -> Result<DecomposeReport, BernsteinError> {
    let ss = group_factors(desc, opts)?;
    let pres = presentation_of(desc, opts)?;
    let trichotomy = if desc.n == 2 {
        Some(gl2_classify(desc)?)
    } else {
        None
    };
    let mut classes = ss.classes;
    classes.sort_by(|a, b| (a.r, &a.z).cmp(&(b.r, &b.z)));
    Ok(DecomposeReport {
        trichotomy,
        ss: classes,
        presentation: pres.presentation.kind(),
        presentation_algebra: pres.presentation.to_string(),
        normalized: pres.normalized,
        notes: pres.note.into_iter().collect(),
        morita_tag: morita_tag(desc, opts)?.strings(),
        multiplicity: MULTIPLICITY.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FingerprintReport {
    pub morita_tag: Vec<String>,
    pub multiplicity: String,
}

pub fn fingerprint_report(
    desc: &InertialClassDescriptor,
    opts: Options,
) -> Result<FingerprintReport, BernsteinError> {
    Ok(FingerprintReport {
        morita_tag: morita_tag(desc, opts)?.strings(),
        multiplicity: MULTIPLICITY.into(),
    })
}
