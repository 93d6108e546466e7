//! Isomorphism decisions between invariant profiles.

use crate::exact::{self, format_rational};
use crate::seqspec::{AlgebraType, DensityType, InvariantProfile, Sigma, SymmetryType};
use crate::supernat::{primes, Supernatural};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("same-type comparison called with types {0} and {1}")]
    TypeMismatch(AlgebraType, AlgebraType),
    #[error("characteristics differ: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),
}

/// Conditions checked by the classifier, in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    /// Type A against O or S: the type A side must be two-sided symmetric and
    /// `2^∞` must divide the other side's `Π(S)`.
    T51i,
    /// O against S: `2^∞` must divide both `Π(S)`.
    T51ii,
    /// Different types in characteristic 2 are never isomorphic.
    T51iii,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Isomorphic,
    NotIsomorphic,
    Undetermined,
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Decision::Isomorphic => s.serialize_bool(true),
            Decision::NotIsomorphic => s.serialize_bool(false),
            Decision::Undetermined => s.serialize_str("undetermined"),
        }
    }
}

impl<'de> Deserialize<'de> for Decision {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Bool(true) => Ok(Decision::Isomorphic),
            serde_json::Value::Bool(false) => Ok(Decision::NotIsomorphic),
            serde_json::Value::String(s) if s == "undetermined" => Ok(Decision::Undetermined),
            other => Err(serde::de::Error::custom(format!("bad decision {other}"))),
        }
    }
}

/// Outcome of a comparison. `failed` names the first condition that failed,
/// or for an undetermined verdict the condition that could not be decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub isomorphic: Decision,
    pub failed: Option<Condition>,
    #[serde(with = "exact::opt", default)]
    pub alpha: Option<BigRational>,
    #[serde(with = "exact::opt", default)]
    pub beta: Option<BigRational>,
}

impl Verdict {
    fn fail(c: Condition) -> Self {
        Self { isomorphic: Decision::NotIsomorphic, failed: Some(c), alpha: None, beta: None }
    }

    fn undetermined(c: Condition) -> Self {
        Self { isomorphic: Decision::Undetermined, failed: Some(c), alpha: None, beta: None }
    }

    fn success(alpha: BigRational, beta: Option<BigRational>) -> Self {
        Self { isomorphic: Decision::Isomorphic, failed: None, alpha: Some(alpha), beta }
    }

    pub fn is_isomorphic(&self) -> bool {
        self.isomorphic == Decision::Isomorphic
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.isomorphic {
            Decision::Isomorphic => f.write_str("isomorphic")?,
            Decision::NotIsomorphic => f.write_str("not isomorphic")?,
            Decision::Undetermined => f.write_str("undetermined")?,
        }
        if let Some(c) = self.failed {
            write!(f, " ({c})")?;
        }
        if let Some(a) = &self.alpha {
            write!(f, " alpha={}", format_rational(a))?;
        }
        if let Some(b) = &self.beta {
            write!(f, " beta={}", format_rational(b))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Declares that opaque symmetry indices of the two profiles are equal.
    pub sigma_equal: bool,
}

fn check_char(p: &InvariantProfile, q: &InvariantProfile) -> Result<(), ClassifyError> {
    if p.characteristic != q.characteristic {
        return Err(ClassifyError::CharacteristicMismatch(p.characteristic, q.characteristic));
    }
    Ok(())
}

/// Checks A1–A3 and returns the `α ∈ Π(S)/Π(S')` fixed by them
/// (`α = δ/δ'` for dense and pure sequences).
fn density_conditions(p: &InvariantProfile, q: &InvariantProfile) -> Result<BigRational, Condition> {
    if p.density_type != q.density_type {
        return Err(Condition::A1);
    }
    let Some(witness) = Supernatural::ratio_witness(&p.pi_s, &q.pi_s) else {
        return Err(Condition::A2);
    };
    if p.density_type == DensityType::D1 {
        return Ok(witness);
    }
    let alpha = &p.delta / &q.delta;
    match Supernatural::rational_ratio_member(&alpha, &p.pi_s, &q.pi_s) {
        Ok(true) => Ok(alpha),
        _ => Err(Condition::A3),
    }
}

/// `σ/σ'` when it can be determined.
fn sigma_ratio(p: &InvariantProfile, q: &InvariantProfile, opts: ClassifyOptions) -> Option<BigRational> {
    match (p.sigma.as_ref()?, q.sigma.as_ref()?) {
        (Sigma::Exact(a), Sigma::Exact(b)) if !b.is_zero() => Some(a / b),
        (Sigma::Exact(_), Sigma::Exact(_)) => None,
        _ if opts.sigma_equal => Some(BigRational::one()),
        _ => None,
    }
}

/// Splits a positive rational `t = u / v` with `u` supported on `left` and
/// `v` on `right`, returning `u`. `None` when `t` has a prime outside both.
fn split_over(t: &BigRational, left: &BTreeSet<u64>, right: &BTreeSet<u64>) -> Option<BigRational> {
    let mut num = t.numer().magnitude().clone();
    let mut den = t.denom().magnitude().clone();
    let mut u = BigRational::one();
    for &p in left.union(right) {
        let (en, rn) = primes::strip_prime(&num, p);
        let (ed, rd) = primes::strip_prime(&den, p);
        num = rn;
        den = rd;
        if left.contains(&p) {
            let bp = BigInt::from(p);
            u *= BigRational::new(bp.pow(en as u32), bp.pow(ed as u32));
        }
    }
    (num.is_one() && den.is_one()).then_some(u)
}

/// Same-type decision: A1, A2, A3, then for type A B1, B2, B3.
pub fn isomorphic_same_type(
    p: &InvariantProfile,
    q: &InvariantProfile,
    opts: ClassifyOptions,
) -> Result<Verdict, ClassifyError> {
    if p.algebra_type != q.algebra_type {
        return Err(ClassifyError::TypeMismatch(p.algebra_type, q.algebra_type));
    }
    check_char(p, q)?;
    let alpha = match density_conditions(p, q) {
        Ok(a) => a,
        Err(c) => return Ok(Verdict::fail(c)),
    };
    if p.algebra_type != AlgebraType::A {
        return Ok(Verdict::success(alpha, None));
    }
    let (Some(sym), Some(sym_q)) = (p.symmetry_type, q.symmetry_type) else {
        return Ok(Verdict::fail(Condition::B1));
    };
    if sym != sym_q {
        return Ok(Verdict::fail(Condition::B1));
    }
    let pi_c = |x: &InvariantProfile| x.pi_c.clone().unwrap_or_default();
    let (pc, qc) = (pi_c(p), pi_c(q));
    match sym {
        SymmetryType::S2 => Ok(Verdict::success(alpha, None)),
        SymmetryType::S1 => {
            // Π(C) = σ·Π(S) for one-sided sequences, so β = α·σ/σ' always lies
            // in Π(C)/Π(C').
            let beta = sigma_ratio(p, q, opts).map(|r| &alpha * r);
            Ok(Verdict::success(alpha, beta))
        }
        SymmetryType::S3 => match Supernatural::ratio_witness(&pc, &qc) {
            Some(beta) => Ok(Verdict::success(alpha, Some(beta))),
            None => Ok(Verdict::fail(Condition::B2)),
        },
        SymmetryType::S4 => {
            let Some(qc_witness) = Supernatural::ratio_witness(&pc, &qc) else {
                return Ok(Verdict::fail(Condition::B2));
            };
            let Some(rho) = sigma_ratio(p, q, opts) else {
                return Ok(Verdict::undetermined(Condition::B3));
            };
            if p.density_type != DensityType::D1 {
                let beta = &alpha * &rho;
                return Ok(match Supernatural::rational_ratio_member(&beta, &pc, &qc) {
                    Ok(true) => Verdict::success(alpha, Some(beta)),
                    _ => Verdict::fail(Condition::B3),
                });
            }
            // Candidates are α = q0·u with u supported on the infinite primes
            // of Π(S); α·ρ must equal qC·v with v supported on those of Π(C).
            let t = qc_witness / (&alpha * &rho);
            match split_over(&t, p.pi_s.infinite_primes(), pc.infinite_primes()) {
                Some(u) => {
                    let alpha = alpha * u;
                    let beta = &alpha * &rho;
                    Ok(Verdict::success(alpha, Some(beta)))
                }
                None => Ok(Verdict::fail(Condition::B3)),
            }
        }
    }
}

/// General decision, including pairs of different types.
pub fn isomorphic(
    p: &InvariantProfile,
    q: &InvariantProfile,
    opts: ClassifyOptions,
) -> Result<Verdict, ClassifyError> {
    check_char(p, q)?;
    if p.algebra_type == q.algebra_type {
        return isomorphic_same_type(p, q, opts);
    }
    if p.characteristic == 2 {
        return Ok(Verdict::fail(Condition::T51iii));
    }
    let two_inf = |x: &InvariantProfile| x.pi_s.has_infinite(2);
    let structural = match (p.algebra_type, q.algebra_type) {
        (AlgebraType::A, _) => (p.symmetry_type == Some(SymmetryType::S2) && two_inf(q), Condition::T51i),
        (_, AlgebraType::A) => (q.symmetry_type == Some(SymmetryType::S2) && two_inf(p), Condition::T51i),
        _ => (two_inf(p) && two_inf(q), Condition::T51ii),
    };
    if !structural.0 {
        return Ok(Verdict::fail(structural.1));
    }
    Ok(match density_conditions(p, q) {
        Ok(alpha) => Verdict::success(alpha, None),
        Err(c) => Verdict::fail(c),
    })
}
