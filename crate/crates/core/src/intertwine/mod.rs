//! Intertwiner certificates: explicit zig-zag diagrams of embeddings between
//! two presented direct limits.

mod bridge;
mod certificate;
mod diagram;
mod zigzag;

pub use bridge::{bridge_from_type_a, bridge_to_type_a, verify_bridge, Bridge};
pub use certificate::{certify, verify_certificate, Certificate, Presented};
pub use diagram::{build_diagram, verify_diagram, DiagramOptions, IntertwinerDiagram};
pub use zigzag::{default_scan_cap, zigzag_step, StepInput, StepMode, ZigzagStep};

use crate::exact::natural;
use crate::seqspec::{AlgebraType, SeqError, Triple, TripleSequence};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntertwineError {
    #[error("no embedding with the required signature: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    ContractViolation(String),
    #[error("no admissible index within {cap} steps after index {from}")]
    DepthExceeded { from: usize, cap: usize },
    #[error("certificate check failed: {0}")]
    VerificationFailed(String),
    #[error("the algebras are not isomorphic ({0})")]
    NotIsomorphic(String),
    #[error(transparent)]
    Sequence(#[from] SeqError),
}

/// Signature `(l, r, z)` of an embedding. Components are unbounded because
/// composite legs grow quickly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub l: BigUint,
    pub r: BigUint,
    pub z: BigUint,
}

impl Signature {
    pub fn new(l: impl Into<BigUint>, r: impl Into<BigUint>, z: impl Into<BigUint>) -> Self {
        Self { l: l.into(), r: r.into(), z: z.into() }
    }

    pub fn identity() -> Self {
        Self::new(1u8, 0u8, 0u8)
    }

    pub fn sum(&self) -> BigUint {
        &self.l + &self.r
    }

    pub fn diff(&self) -> BigInt {
        BigInt::from(self.l.clone()) - BigInt::from(self.r.clone())
    }

    /// Target degree for a source of degree `n`.
    pub fn target_degree(&self, n: &BigUint) -> BigUint {
        self.sum() * n + &self.z
    }
}

impl From<Triple> for Signature {
    fn from(t: Triple) -> Self {
        Self::new(t.l, t.r, t.z)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.r, self.z)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            natural::Nat(self.l.clone()),
            natural::Nat(self.r.clone()),
            natural::Nat(self.z.clone()),
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [l, r, z] = <[natural::Nat; 3]>::deserialize(d)?;
        Ok(Self { l: l.0, r: r.0, z: z.0 })
    }
}

/// Signature of `second ∘ first`.
pub fn compose_signatures(first: &Signature, second: &Signature) -> Signature {
    Signature {
        l: &first.l * &second.l + &first.r * &second.r,
        r: &first.r * &second.l + &first.l * &second.r,
        z: &first.z * second.sum() + &second.z,
    }
}

/// Composition when the source algebra has type `source`. For types O and
/// S the natural module is its own partner, so the two multiplicities merge.
pub fn compose_signatures_from(first: &Signature, second: &Signature, source: AlgebraType) -> Signature {
    let sig = compose_signatures(first, second);
    match source {
        AlgebraType::A => sig,
        _ => Signature { l: &sig.l + &sig.r, r: BigUint::zero(), z: sig.z },
    }
}

/// Signature of the path `A_i → A_k` of a sequence (identity when `i = k`).
pub fn path_signature(seq: &TripleSequence, i: usize, k: usize) -> Signature {
    (i..k).fold(Signature::identity(), |acc, m| compose_signatures(&acc, &seq.triple(m).into()))
}

/// Solves for the second leg `(l2, r2, z2)` of a factorization
/// `total = second ∘ first` through degrees `n1 → n2 → n3`.
///
/// When `first` has `l = r` the difference equation gives no information
/// on the second leg; the solution with `r2 = 0` is returned.
pub fn factor_embedding(
    total: &Signature,
    first: &Signature,
    n1: &BigUint,
    n2: &BigUint,
    n3: &BigUint,
) -> Result<Signature, IntertwineError> {
    let infeasible = |m: String| Err(IntertwineError::Infeasible(m));
    if first.target_degree(n1) != *n2 {
        return infeasible(format!("first leg {first} does not map degree {n1} to {n2}"));
    }
    if total.target_degree(n1) != *n3 {
        return infeasible(format!("total {total} does not map degree {n1} to {n3}"));
    }
    let (s, s1) = (total.sum(), first.sum());
    if s1.is_zero() || !s.is_multiple_of(&s1) {
        return infeasible(format!("sum {s1} does not divide {s}"));
    }
    let s2 = BigInt::from(&s / &s1);
    let (c, c1) = (total.diff(), first.diff());
    let c2 = if c1.is_zero() {
        if !c.is_zero() {
            return infeasible(format!("difference 0 cannot produce {c}"));
        }
        s2.clone()
    } else {
        if !c.is_multiple_of(&c1) {
            return infeasible(format!("difference {c1} does not divide {c}"));
        }
        &c / &c1
    };
    if (&s2 - &c2).is_odd() || c2.abs() > s2 {
        return infeasible(format!("sum {s2} and difference {c2} are incompatible"));
    }
    let two = BigInt::from(2);
    let l2 = (&s2 + &c2) / &two;
    let r2 = (&s2 - &c2) / &two;
    let used = BigInt::from(n2.clone()) * &s2;
    let n3 = BigInt::from(n3.clone());
    if used > n3 {
        return infeasible(format!("degree {n3} is smaller than {used}"));
    }
    let to_nat = |v: BigInt| v.to_biguint().expect("nonnegative");
    Ok(Signature { l: to_nat(l2), r: to_nat(r2), z: to_nat(n3 - used) })
}
