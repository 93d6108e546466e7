//! One step of the zig-zag: given a matched pair of indices, find the next
//! index on one side together with the multiplicities of the new leg.

use super::IntertwineError;
use crate::exact::from_uint;
use crate::seqspec::TripleSequence;
use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// How the partner multiplicity of a leg is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    /// Types O and S: legs are `(a, 0, u)`.
    Simple,
    /// Two-sided symmetric type A: legs are `(a/2, a/2, u)` with `a` even.
    Symmetric,
    /// Non-symmetric type A: legs are `((a+b)/2, (a-b)/2, u)`.
    NonSymmetric,
}

/// Result of a step: the new index `k` and the multiplicities `a'`, `b'`.
///
/// `b` equals `a` in simple mode and 0 in symmetric mode, so the leg is
/// always `((a+b)/2, (a-b)/2, u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagStep {
    pub k: usize,
    pub a: BigUint,
    pub b: BigUint,
}

/// Default number of indices scanned past the start: ten periods' worth,
/// at least 64.
pub fn default_scan_cap(seq: &TripleSequence) -> usize {
    (10 * (seq.prefix().len() + seq.period().len())).max(64)
}

/// Ratio data and the current position of a step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepInput<'a> {
    pub alpha: &'a BigRational,
    /// Required in non-symmetric mode.
    pub beta: Option<&'a BigRational>,
    pub i: usize,
    pub j: usize,
    pub a: &'a BigUint,
    pub b: &'a BigUint,
}

/// Finds the least `k > i` such that `a' = s_i^k / a` is an integer,
/// `n_k ≥ a'·n'_j`, and the partner condition of `mode` holds for
/// `b' = c_i^k / b`.
///
/// `seq` is the side where `k` is searched and `other` the side carrying
/// `j`. The preconditions `α·s'_1⋯s'_{j-1} = a·s_1⋯s_{i-1}` (and the same
/// with `β`, differences and `b` in non-symmetric mode) are checked exactly.
pub fn zigzag_step(
    seq: &TripleSequence,
    other: &TripleSequence,
    input: &StepInput<'_>,
    mode: StepMode,
    cap: usize,
) -> Result<ZigzagStep, IntertwineError> {
    let StepInput { alpha, beta, i, j, a, b } = *input;
    if i == 0 || j == 0 {
        return Err(IntertwineError::ContractViolation("indices start at 1".into()));
    }
    if a.is_zero() {
        return Err(IntertwineError::ContractViolation("multiplicity a must be positive".into()));
    }
    let lhs = alpha * from_uint(&other.sum_product(1, j));
    let rhs = from_uint(a) * from_uint(&seq.sum_product(1, i));
    if lhs != rhs {
        return Err(IntertwineError::ContractViolation(format!(
            "sum condition fails at i = {i}, j = {j}, a = {a}"
        )));
    }
    if mode == StepMode::NonSymmetric {
        let Some(beta) = beta else {
            return Err(IntertwineError::ContractViolation("non-symmetric step needs beta".into()));
        };
        if b.is_zero() {
            return Err(IntertwineError::ContractViolation("multiplicity b must be positive".into()));
        }
        let lhs = beta * from_uint(&other.diff_product(1, j));
        let rhs = from_uint(b) * from_uint(&seq.diff_product(1, i));
        if lhs != rhs {
            return Err(IntertwineError::ContractViolation(format!(
                "difference condition fails at i = {i}, j = {j}, b = {b}"
            )));
        }
    }

    let n_other = other.degrees(j).pop().expect("j >= 1");
    let mut n = seq.degrees(i).pop().expect("i >= 1");
    let mut sums = BigUint::from(1u8);
    let mut diffs = BigUint::from(1u8);
    for k in i + 1..=i + cap {
        let t = seq.triple(k - 1);
        sums *= t.sum();
        diffs *= t.diff();
        n = n * t.sum() + t.z;
        let (a_new, rem) = sums.div_rem(a);
        if !rem.is_zero() {
            continue;
        }
        let b_new = match mode {
            StepMode::Simple => a_new.clone(),
            StepMode::Symmetric => {
                if a_new.is_odd() || !diffs.is_zero() {
                    continue;
                }
                BigUint::zero()
            }
            StepMode::NonSymmetric => {
                let (b_new, rem) = diffs.div_rem(b);
                if !rem.is_zero() || a_new.is_odd() != b_new.is_odd() || b_new > a_new {
                    continue;
                }
                b_new
            }
        };
        if n >= &a_new * &n_other {
            return Ok(ZigzagStep { k, a: a_new, b: b_new });
        }
    }
    Err(IntertwineError::DepthExceeded { from: i, cap })
}
