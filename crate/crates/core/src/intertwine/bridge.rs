//! Rewriting a sequence of one type as an isomorphic sequence of another by
//! factoring block embeddings through an intermediate algebra.
//!
//! From types O and S: a block `A_{j_k} → A_{j_{k+1}}` of signature
//! `(L, 0, Z)` with `L` even factors as `(L/2, 0, 0)` into a type A algebra
//! `D_k`, followed by `(1, 1, Z)`. The chain `D_0 → D_1 → …` presents the same
//! limit.
//!
//! From two-sided symmetric type A: a block of signature `(L, L, Z)` factors
//! as `(L, L, 0)` into a type O or S algebra `E_k`, followed by a corner
//! embedding `(1, 0, Z)`.

use super::{compose_signatures_from, path_signature, IntertwineError, Signature};
use crate::seqspec::{AlgebraType, SeqError, Triple, TripleSequence};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A rewritten sequence with the legs relating it to the original.
///
/// `source_indices` are block boundaries `j_0 < j_1 < …` in `source`; the
/// intermediate algebra of block `k` sits at `target_indices[k]` in
/// `sequence`, with `first_legs[k]` into it and `second_legs[k]` out of it to
/// `A_{j_{k+1}}`. The lists cover the non-repeating blocks and one period of
/// blocks; later blocks repeat that period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub source_type: AlgebraType,
    pub target_type: AlgebraType,
    pub source: TripleSequence,
    pub sequence: TripleSequence,
    pub source_indices: Vec<usize>,
    pub target_indices: Vec<usize>,
    pub first_legs: Vec<Signature>,
    pub second_legs: Vec<Signature>,
}

struct Block {
    start: usize,
    end: usize,
    sig: Signature,
}

/// Greedy blocks from index 1: each block is the shortest path whose
/// signature satisfies `accept`. Blocks repeat once their start position
/// within the period repeats. Returns the blocks up to and including the
/// first repeated one, with the index of the block it repeats.
fn blocks(seq: &TripleSequence, accept: impl Fn(&Signature) -> bool) -> (Vec<Block>, usize) {
    let (pre, per) = (seq.prefix().len(), seq.period().len());
    let mut out: Vec<Block> = Vec::new();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut start = 1;
    loop {
        let mut repeats = None;
        if start > pre {
            let state = (start - 1 - pre) % per;
            repeats = seen.get(&state).copied();
            seen.insert(state, out.len());
        }
        let mut end = start + 1;
        let mut sig = Signature::from(seq.triple(start));
        while !accept(&sig) {
            sig = super::compose_signatures(&sig, &seq.triple(end).into());
            end += 1;
        }
        out.push(Block { start, end, sig });
        if let Some(m) = repeats {
            return (out, m);
        }
        start = end;
    }
}

fn small(v: &BigUint) -> Result<u64, IntertwineError> {
    v.to_u64().ok_or_else(|| SeqError::DegreeOverflow(v.clone()).into())
}

fn triple(l: &BigUint, r: &BigUint, z: &BigUint) -> Result<Triple, IntertwineError> {
    let t = Triple::new(small(l)?, small(r)?, small(z)?);
    Ok(t.expect("positive multiplicity"))
}

fn assemble(triples: Vec<Triple>, repeat_from: usize) -> Result<(TripleSequence, usize), IntertwineError> {
    // `triples[0]` leaves degree 1; an identity there is dropped.
    let drop = usize::from(triples[0] == Triple { l: 1, r: 0, z: 0 });
    let prefix = triples[drop..=repeat_from].to_vec();
    let period = triples[repeat_from + 1..].to_vec();
    Ok((TripleSequence::new(prefix, period)?, drop))
}

/// Rewrites a type O or S sequence as a type A sequence.
pub fn bridge_to_type_a(seq: &TripleSequence, kind: AlgebraType) -> Result<Bridge, IntertwineError> {
    if kind == AlgebraType::A {
        return Err(IntertwineError::ContractViolation("source must have type O or S".into()));
    }
    seq.validate_for(kind)?;
    if seq.period().iter().all(|t| t.sum() % 2 == 1) {
        return Err(IntertwineError::Infeasible("no block has an even multiplicity".into()));
    }
    let two = BigUint::from(2u8);
    let (blocks, m) = blocks(seq, |s| (&s.l % &two).is_zero());
    let mut triples = Vec::with_capacity(blocks.len());
    let half = |b: &Block| &b.sig.l / &two;
    triples.push(triple(&half(&blocks[0]), &BigUint::zero(), &BigUint::zero())?);
    for w in blocks.windows(2) {
        let h = half(&w[1]);
        triples.push(triple(&h, &h, &(&w[0].sig.z * &h))?);
    }
    let (sequence, drop) = assemble(triples, m)?;
    Ok(Bridge {
        source_type: kind,
        target_type: AlgebraType::A,
        source: seq.clone(),
        sequence,
        source_indices: blocks.iter().map(|b| b.start).chain(blocks.last().map(|b| b.end)).collect(),
        target_indices: (0..blocks.len()).map(|k| k + 2 - drop).collect(),
        first_legs: blocks.iter().map(|b| Signature::new(half(b), 0u8, 0u8)).collect(),
        second_legs: blocks.iter().map(|b| Signature::new(1u8, 1u8, b.sig.z.clone())).collect(),
    })
}

/// Rewrites a two-sided symmetric type A sequence as a sequence of type
/// `target` (O or S).
pub fn bridge_from_type_a(seq: &TripleSequence, target: AlgebraType) -> Result<Bridge, IntertwineError> {
    if target == AlgebraType::A {
        return Err(IntertwineError::ContractViolation("target must have type O or S".into()));
    }
    if !seq.is_symmetric() {
        return Err(IntertwineError::Infeasible("sequence is not two-sided symmetric".into()));
    }
    let (blocks, m) = blocks(seq, |s| s.l == s.r);
    let two = BigUint::from(2u8);
    let mut triples = Vec::with_capacity(blocks.len());
    triples.push(triple(&(&two * &blocks[0].sig.l), &BigUint::zero(), &BigUint::zero())?);
    for w in blocks.windows(2) {
        let d = &two * &w[1].sig.l;
        triples.push(triple(&d, &BigUint::zero(), &(&d * &w[0].sig.z))?);
    }
    let (sequence, drop) = assemble(triples, m)?;
    sequence.validate_for(target)?;
    Ok(Bridge {
        source_type: AlgebraType::A,
        target_type: target,
        source: seq.clone(),
        sequence,
        source_indices: blocks.iter().map(|b| b.start).chain(blocks.last().map(|b| b.end)).collect(),
        target_indices: (0..blocks.len()).map(|k| k + 2 - drop).collect(),
        first_legs: blocks.iter().map(|b| Signature::new(b.sig.l.clone(), b.sig.l.clone(), 0u8)).collect(),
        second_legs: blocks.iter().map(|b| Signature::new(1u8, 0u8, b.sig.z.clone())).collect(),
    })
}

/// Checks that every triangle between the two sequences commutes and that
/// every leg has the right degrees.
pub fn verify_bridge(b: &Bridge) -> Result<(), IntertwineError> {
    let fail = |m: String| Err(IntertwineError::VerificationFailed(m));
    let count = b.first_legs.len();
    if b.second_legs.len() != count || b.target_indices.len() != count || b.source_indices.len() != count + 1 {
        return fail("list lengths disagree".into());
    }
    let top = *b.source_indices.last().unwrap_or(&1);
    let n = b.source.degrees(top);
    let top_target = b.target_indices.last().map_or(1, |&t| t);
    let n_target = b.sequence.degrees(top_target);
    for k in 0..count {
        let (j, j_next, d) = (b.source_indices[k], b.source_indices[k + 1], b.target_indices[k]);
        let (eta, zeta) = (&b.first_legs[k], &b.second_legs[k]);
        if eta.target_degree(&n[j - 1]) != n_target[d - 1] {
            return fail(format!("block {k}: {eta} does not reach degree {}", n_target[d - 1]));
        }
        if zeta.target_degree(&n_target[d - 1]) != n[j_next - 1] {
            return fail(format!("block {k}: {zeta} does not reach degree {}", n[j_next - 1]));
        }
        let path = path_signature(&b.source, j, j_next);
        let composite = compose_signatures_from(eta, zeta, b.source_type);
        if composite != path {
            return fail(format!("block {k}: {eta} then {zeta} is {composite}, path is {path}"));
        }
        if k + 1 < count {
            let path = path_signature(&b.sequence, d, b.target_indices[k + 1]);
            let composite = compose_signatures_from(zeta, &b.first_legs[k + 1], b.target_type);
            if composite != path {
                return fail(format!("block {k}: {zeta} then next leg is {composite}, path is {path}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(prefix: &[(u64, u64, u64)], period: &[(u64, u64, u64)]) -> TripleSequence {
        TripleSequence::from_tuples(prefix, period)
    }

    #[test]
    fn orthogonal_doubling_becomes_symmetric() {
        let b = bridge_to_type_a(&seq(&[], &[(2, 0, 0)]), AlgebraType::O).unwrap();
        assert_eq!(b.sequence.period(), &[Triple { l: 1, r: 1, z: 0 }]);
        assert_eq!(b.first_legs[0], Signature::new(1u8, 0u8, 0u8));
        assert_eq!(b.second_legs[0], Signature::new(1u8, 1u8, 0u8));
        verify_bridge(&b).unwrap();
    }

    #[test]
    fn odd_sums_are_rejected() {
        let err = bridge_to_type_a(&seq(&[], &[(3, 0, 0)]), AlgebraType::O);
        assert!(matches!(err, Err(IntertwineError::Infeasible(_))));
    }

    #[test]
    fn symplectic_quadrupling() {
        let b = bridge_to_type_a(&seq(&[], &[(4, 0, 0)]), AlgebraType::S).unwrap();
        assert_eq!(b.first_legs[0], Signature::new(2u8, 0u8, 0u8));
        verify_bridge(&b).unwrap();
    }

    #[test]
    fn blocks_span_odd_terms() {
        let t = seq(&[(3, 0, 1)], &[(3, 0, 0), (2, 0, 1), (5, 0, 2)]);
        let b = bridge_to_type_a(&t, AlgebraType::O).unwrap();
        verify_bridge(&b).unwrap();
        assert!(b.sequence.is_symmetric());
        let back = bridge_from_type_a(&b.sequence, AlgebraType::O).unwrap();
        verify_bridge(&back).unwrap();
    }

    #[test]
    fn symmetric_to_orthogonal_and_symplectic() {
        let t = seq(&[(2, 1, 0)], &[(1, 1, 1), (3, 0, 2)]);
        for kind in [AlgebraType::O, AlgebraType::S] {
            let b = bridge_from_type_a(&t, kind).unwrap();
            verify_bridge(&b).unwrap();
            b.sequence.validate_for(kind).unwrap();
        }
        let err = bridge_from_type_a(&seq(&[], &[(2, 1, 0)]), AlgebraType::O);
        assert!(matches!(err, Err(IntertwineError::Infeasible(_))));
    }

    #[test]
    fn bridged_profiles_agree() {
        use crate::classify::{isomorphic, ClassifyOptions};
        let t = seq(&[(2, 0, 0)], &[(2, 0, 1), (3, 0, 0)]);
        let b = bridge_to_type_a(&t, AlgebraType::O).unwrap();
        let p = t.invariant_profile(AlgebraType::O, 0).unwrap();
        let q = b.sequence.invariant_profile(AlgebraType::A, 0).unwrap();
        assert_eq!(p.delta, q.delta);
        assert!(isomorphic(&p, &q, ClassifyOptions::default()).unwrap().is_isomorphic());
    }
}
