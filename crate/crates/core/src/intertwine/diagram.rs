//! Zig-zag diagrams `A_{i_1} → A'_{j_1} → A_{i_2} → A'_{j_2} → …` whose
//! triangles commute with the connecting maps of both sequences.

use super::zigzag::{default_scan_cap, zigzag_step, StepInput, StepMode};
use super::{compose_signatures, path_signature, IntertwineError, Signature};
use crate::classify::Verdict;
use crate::exact::{self, as_positive_integer, from_uint};
use crate::seqspec::{AlgebraType, SymmetryType, TripleSequence};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramOptions {
    /// Number of completed zig-zag steps.
    pub depth: usize,
    /// Overrides [`default_scan_cap`] for both sequences.
    pub scan_cap: Option<usize>,
}

impl Default for DiagramOptions {
    fn default() -> Self {
        Self { depth: 4, scan_cap: None }
    }
}

/// A finite piece of an intertwining diagram.
///
/// `down_maps[k]` goes from `A_{down_indices[k]}` to `A'_{up_indices[k]}` and
/// `up_maps[k]` from `A'_{up_indices[k]}` to `A_{down_indices[k+1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerDiagram {
    #[serde(rename = "type")]
    pub algebra_type: AlgebraType,
    pub mode: StepMode,
    #[serde(with = "exact")]
    pub alpha: BigRational,
    #[serde(with = "exact::opt", default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BigRational>,
    pub first: TripleSequence,
    pub second: TripleSequence,
    pub start_index: usize,
    pub down_indices: Vec<usize>,
    pub up_indices: Vec<usize>,
    pub down_maps: Vec<Signature>,
    pub up_maps: Vec<Signature>,
    pub depth: usize,
}

fn degree(seq: &TripleSequence, i: usize) -> BigUint {
    seq.degrees(i).pop().expect("index >= 1")
}

fn leg(a: &BigUint, b: &BigUint, n_source: &BigUint, n_target: &BigUint) -> Signature {
    let two = BigUint::from(2u8);
    Signature {
        l: (a + b) / &two,
        r: (a - b) / &two,
        z: n_target - a * n_source,
    }
}

fn step_mode(first: &TripleSequence, second: &TripleSequence, kind: AlgebraType) -> Result<StepMode, IntertwineError> {
    if kind != AlgebraType::A {
        return Ok(StepMode::Simple);
    }
    let (sym, sym2) = (first.symmetry_profile().0, second.symmetry_profile().0);
    if sym != sym2 {
        return Err(IntertwineError::ContractViolation(format!(
            "symmetry types differ ({sym} and {sym2})"
        )));
    }
    Ok(if sym == SymmetryType::S2 { StepMode::Symmetric } else { StepMode::NonSymmetric })
}

/// `x·num/den` as a positive integer, if it is one.
fn scaled_integer(x: &BigRational, num: &BigUint, den: &BigUint) -> Option<BigUint> {
    as_positive_integer(&(x * from_uint(num) / from_uint(den)))
}

/// Builds the zig-zag from a positive verdict for two sequences of the same
/// type. Each step takes the least admissible index.
pub fn build_diagram(
    first: &TripleSequence,
    second: &TripleSequence,
    kind: AlgebraType,
    verdict: &Verdict,
    opts: &DiagramOptions,
) -> Result<IntertwinerDiagram, IntertwineError> {
    if !verdict.is_isomorphic() {
        return Err(IntertwineError::NotIsomorphic(verdict.to_string()));
    }
    if opts.depth == 0 {
        return Err(IntertwineError::ContractViolation("depth must be positive".into()));
    }
    let alpha = verdict
        .alpha
        .clone()
        .ok_or_else(|| IntertwineError::ContractViolation("verdict carries no alpha".into()))?;
    let first = first.prepared_for(kind)?;
    let second = second.prepared_for(kind)?;
    let mode = step_mode(&first, &second, kind)?;
    let beta = match mode {
        StepMode::NonSymmetric => Some(verdict.beta.clone().ok_or_else(|| {
            IntertwineError::ContractViolation("verdict carries no beta".into())
        })?),
        _ => None,
    };
    let alpha_inv = alpha.recip();
    let beta_inv = beta.as_ref().map(BigRational::recip);
    let cap_first = opts.scan_cap.unwrap_or_else(|| default_scan_cap(&first));
    let cap_second = opts.scan_cap.unwrap_or_else(|| default_scan_cap(&second));

    // Degree 1 is not a symplectic degree, so type S starts at index 2.
    let start = if kind == AlgebraType::S { 2 } else { 1 };
    let start_sums = second.sum_product(1, start);
    let start_diffs = second.diff_product(1, start);
    let mut found = None;
    for i in start..start + cap_first {
        let Some(a) = scaled_integer(&alpha_inv, &first.sum_product(1, i), &start_sums) else {
            continue;
        };
        let b = match (mode, &beta_inv) {
            (StepMode::Simple, _) => a.clone(),
            (StepMode::Symmetric, _) => BigUint::default(),
            (StepMode::NonSymmetric, Some(bi)) => {
                match scaled_integer(bi, &first.diff_product(1, i), &start_diffs) {
                    Some(b) => b,
                    None => continue,
                }
            }
            (StepMode::NonSymmetric, None) => unreachable!("beta is set in non-symmetric mode"),
        };
        found = Some((i, a, b));
        break;
    }
    let Some((i1, mut a, mut b)) = found else {
        return Err(IntertwineError::DepthExceeded { from: start, cap: cap_first });
    };

    let mut down_indices = vec![i1];
    let mut up_indices = Vec::with_capacity(opts.depth);
    let mut down_maps = Vec::with_capacity(opts.depth);
    let mut up_maps = Vec::with_capacity(opts.depth);
    let mut j_prev = start;
    for _ in 0..opts.depth {
        let i = *down_indices.last().expect("nonempty");
        let input = StepInput { alpha: &alpha_inv, beta: beta_inv.as_ref(), i: j_prev, j: i, a: &a, b: &b };
        let down = zigzag_step(&second, &first, &input, mode, cap_second)?;
        let j = down.k;
        let (n_i, n_j) = (degree(&first, i), degree(&second, j));
        down_maps.push(leg(&down.a, &down.b, &n_i, &n_j));
        up_indices.push(j);

        let input = StepInput { alpha: &alpha, beta: beta.as_ref(), i, j, a: &down.a, b: &down.b };
        let up = zigzag_step(&first, &second, &input, mode, cap_first)?;
        let n_next = degree(&first, up.k);
        up_maps.push(leg(&up.a, &up.b, &n_j, &n_next));
        down_indices.push(up.k);
        a = up.a;
        b = up.b;
        j_prev = j;
    }

    Ok(IntertwinerDiagram {
        algebra_type: kind,
        mode,
        alpha,
        beta,
        first,
        second,
        start_index: start,
        down_indices,
        up_indices,
        down_maps,
        up_maps,
        depth: opts.depth,
    })
}

/// Replays the composition identities of every triangle and the degree
/// bookkeeping of every leg.
pub fn verify_diagram(d: &IntertwinerDiagram) -> Result<(), IntertwineError> {
    let fail = |m: String| Err(IntertwineError::VerificationFailed(m));
    if d.down_indices.len() != d.depth + 1
        || d.up_indices.len() != d.depth
        || d.down_maps.len() != d.depth
        || d.up_maps.len() != d.depth
    {
        return fail("list lengths do not match the depth".into());
    }
    let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
    if !increasing(&d.down_indices) || !increasing(&d.up_indices) {
        return fail("indices are not strictly increasing".into());
    }
    if d.up_indices.first().is_some_and(|&j| j <= d.start_index) {
        return fail("first up index does not pass the start index".into());
    }
    for (k, (down, up)) in d.down_maps.iter().zip(&d.up_maps).enumerate() {
        let (i, j, i_next) = (d.down_indices[k], d.up_indices[k], d.down_indices[k + 1]);
        if d.algebra_type != AlgebraType::A && !(down.r == BigUint::default() && up.r == BigUint::default()) {
            return fail(format!("step {}: partner multiplicity on a type {} leg", k + 1, d.algebra_type));
        }
        let (n_i, n_j, n_next) = (degree(&d.first, i), degree(&d.second, j), degree(&d.first, i_next));
        if down.target_degree(&n_i) != n_j {
            return fail(format!("step {}: down leg {down} does not map degree {n_i} to {n_j}", k + 1));
        }
        if up.target_degree(&n_j) != n_next {
            return fail(format!("step {}: up leg {up} does not map degree {n_j} to {n_next}", k + 1));
        }
        let path = path_signature(&d.first, i, i_next);
        if compose_signatures(down, up) != path {
            return fail(format!("step {}: {down} then {up} differs from the path {path}", k + 1));
        }
        if let (Some(next_down), Some(&j_next)) = (d.down_maps.get(k + 1), d.up_indices.get(k + 1)) {
            let path = path_signature(&d.second, j, j_next);
            if compose_signatures(up, next_down) != path {
                return fail(format!("step {}: {up} then {next_down} differs from the path {path}", k + 1));
            }
        }
    }
    Ok(())
}

impl IntertwinerDiagram {
    /// Largest degree of any algebra touched by the diagram.
    pub fn max_degree(&self) -> BigUint {
        let last_first = *self.down_indices.last().unwrap_or(&1);
        let last_second = *self.up_indices.last().unwrap_or(&1);
        let a = degree(&self.first, last_first);
        let b = degree(&self.second, last_second);
        a.max(b).max(BigUint::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{isomorphic, ClassifyOptions};

    fn seq(prefix: &[(u64, u64, u64)], period: &[(u64, u64, u64)]) -> TripleSequence {
        TripleSequence::from_tuples(prefix, period)
    }

    fn sig(l: u64, r: u64, z: u64) -> Signature {
        Signature::new(l, r, z)
    }

    fn diagram(t: &TripleSequence, t2: &TripleSequence, kind: AlgebraType, depth: usize) -> IntertwinerDiagram {
        let p = t.invariant_profile(kind, 0).unwrap();
        let q = t2.invariant_profile(kind, 0).unwrap();
        let v = isomorphic(&p, &q, ClassifyOptions::default()).unwrap();
        let d = build_diagram(t, t2, kind, &v, &DiagramOptions { depth, scan_cap: None }).unwrap();
        verify_diagram(&d).unwrap();
        d
    }

    #[test]
    fn glimm_pair() {
        let d = diagram(&seq(&[], &[(2, 0, 0)]), &seq(&[], &[(4, 0, 0)]), AlgebraType::O, 2);
        assert_eq!(d.down_indices, vec![1, 3, 5]);
        assert_eq!(d.up_indices, vec![2, 3]);
        assert_eq!(d.down_maps, vec![sig(4, 0, 0), sig(4, 0, 0)]);
        assert_eq!(d.up_maps, vec![sig(1, 0, 0), sig(1, 0, 0)]);
    }

    #[test]
    fn hand_built_doubling_diagram_verifies() {
        let t = seq(&[], &[(2, 0, 0)]);
        let t4 = seq(&[], &[(4, 0, 0)]);
        let d = IntertwinerDiagram {
            algebra_type: AlgebraType::O,
            mode: StepMode::Simple,
            alpha: BigRational::one(),
            beta: None,
            first: t,
            second: t4,
            start_index: 1,
            down_indices: vec![2, 4, 6],
            up_indices: vec![2, 3],
            down_maps: vec![sig(2, 0, 0), sig(2, 0, 0)],
            up_maps: vec![sig(2, 0, 0), sig(2, 0, 0)],
            depth: 2,
        };
        verify_diagram(&d).unwrap();
        let mut bad = d.clone();
        bad.up_maps[1] = sig(1, 0, 0);
        assert!(matches!(verify_diagram(&bad), Err(IntertwineError::VerificationFailed(_))));
    }

    #[test]
    fn self_intertwining() {
        let t = seq(&[(3, 0, 1)], &[(2, 0, 1), (3, 0, 0)]);
        let d = diagram(&t, &t, AlgebraType::O, 3);
        assert!(d.up_maps.iter().all(|s| *s == Signature::identity()));
        for (k, down) in d.down_maps.iter().enumerate() {
            assert_eq!(*down, path_signature(&t, d.down_indices[k], d.up_indices[k]));
        }
    }

    #[test]
    fn symmetric_legs() {
        let d = diagram(&seq(&[], &[(1, 1, 0)]), &seq(&[], &[(2, 2, 0)]), AlgebraType::A, 2);
        for s in d.down_maps.iter().chain(&d.up_maps) {
            assert_eq!(s.l, s.r);
        }
        assert_eq!(d.down_maps[0], sig(2, 2, 0));
        assert_eq!(d.up_maps[0], sig(1, 1, 0));
    }

    #[test]
    fn nonsymmetric_and_sparse() {
        let t = seq(&[(2, 1, 0)], &[(2, 1, 1)]);
        let t2 = t.unroll_period();
        diagram(&t, &t2, AlgebraType::A, 4);
        let sparse = seq(&[(2, 0, 0)], &[(1, 0, 1)]);
        let sparse2 = seq(&[(4, 0, 0)], &[(1, 0, 3)]);
        diagram(&sparse, &sparse2, AlgebraType::O, 4);
    }

    #[test]
    fn symplectic_starts_at_two() {
        let d = diagram(&seq(&[], &[(2, 0, 0)]), &seq(&[(4, 0, 0)], &[(2, 0, 0)]), AlgebraType::S, 3);
        assert_eq!(d.start_index, 2);
        assert!(d.down_indices[0] >= 2);
    }

    #[test]
    fn negative_verdict_is_rejected() {
        let t = seq(&[], &[(2, 0, 0)]);
        let t3 = seq(&[], &[(3, 0, 0)]);
        let p = t.invariant_profile(AlgebraType::O, 0).unwrap();
        let q = t3.invariant_profile(AlgebraType::O, 0).unwrap();
        let v = isomorphic(&p, &q, ClassifyOptions::default()).unwrap();
        let err = build_diagram(&t, &t3, AlgebraType::O, &v, &DiagramOptions::default());
        assert!(matches!(err, Err(IntertwineError::NotIsomorphic(_))));
    }

    #[test]
    fn json_round_trip() {
        let d = diagram(&seq(&[], &[(2, 0, 0)]), &seq(&[], &[(4, 0, 0)]), AlgebraType::O, 1);
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("\"down_maps\":[[4,0,0]]"));
        let back: IntertwinerDiagram = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
}
