//! End-to-end certificates: classify, bridge through type A when the types
//! differ, then build the zig-zag.

use super::bridge::{bridge_to_type_a, verify_bridge, Bridge};
use super::diagram::{build_diagram, verify_diagram, DiagramOptions, IntertwinerDiagram};
use super::IntertwineError;
use crate::classify::{isomorphic, ClassifyOptions, Verdict};
use crate::seqspec::{AlgebraType, TripleSequence};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    /// Present when the first algebra was rewritten as type A.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_bridge: Option<Bridge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_bridge: Option<Bridge>,
    pub diagram: IntertwinerDiagram,
}

/// A presented algebra: a sequence with its type.
#[derive(Debug, Clone, Copy)]
pub struct Presented<'a> {
    pub sequence: &'a TripleSequence,
    pub kind: AlgebraType,
}

fn to_type_a(p: Presented<'_>) -> Result<(TripleSequence, Option<Bridge>), IntertwineError> {
    if p.kind == AlgebraType::A {
        return Ok((p.sequence.prepared_for(AlgebraType::A)?, None));
    }
    let bridge = bridge_to_type_a(p.sequence, p.kind)?;
    Ok((bridge.sequence.clone(), Some(bridge)))
}

/// Decides isomorphism and, when it holds, builds a checkable certificate.
pub fn certify(
    first: Presented<'_>,
    second: Presented<'_>,
    characteristic: u64,
    classify_opts: ClassifyOptions,
    opts: &DiagramOptions,
) -> Result<Certificate, IntertwineError> {
    let p = first.sequence.invariant_profile(first.kind, characteristic)?;
    let q = second.sequence.invariant_profile(second.kind, characteristic)?;
    let verdict = isomorphic(&p, &q, classify_opts)
        .map_err(|e| IntertwineError::ContractViolation(e.to_string()))?;
    if !verdict.is_isomorphic() {
        return Err(IntertwineError::NotIsomorphic(verdict.to_string()));
    }
    if first.kind == second.kind {
        let diagram = build_diagram(first.sequence, second.sequence, first.kind, &verdict, opts)?;
        return Ok(Certificate { verdict, first_bridge: None, second_bridge: None, diagram });
    }
    let (a, first_bridge) = to_type_a(first)?;
    let (b, second_bridge) = to_type_a(second)?;
    let pa = a.invariant_profile(AlgebraType::A, characteristic)?;
    let pb = b.invariant_profile(AlgebraType::A, characteristic)?;
    let inner = isomorphic(&pa, &pb, classify_opts)
        .map_err(|e| IntertwineError::ContractViolation(e.to_string()))?;
    if !inner.is_isomorphic() {
        return Err(IntertwineError::ContractViolation(format!(
            "rewritten sequences are not isomorphic: {inner}"
        )));
    }
    let diagram = build_diagram(&a, &b, AlgebraType::A, &inner, opts)?;
    Ok(Certificate { verdict, first_bridge, second_bridge, diagram })
}

pub fn verify_certificate(c: &Certificate) -> Result<(), IntertwineError> {
    for b in c.first_bridge.iter().chain(&c.second_bridge) {
        verify_bridge(b)?;
    }
    verify_diagram(&c.diagram)
}
