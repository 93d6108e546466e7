//! Realizes an intertwiner diagram by explicit matrix embeddings and checks
//! that every triangle commutes entry by entry.
//!
//! Each leg is a canonical embedding followed by conjugation with a
//! permutation that preserves the target form. The permutation is read off
//! by matching the block layout of the composite against the connecting map
//! of the sequence.

use super::algebra::InvolutionAlgebra;
use super::embedding::{canonical_embedding, compose, Embedding};
use super::field::ExactField;
use super::MatrixLabError;
use crate::intertwine::{IntertwinerDiagram, Signature};
use crate::seqspec::{AlgebraType, TripleSequence};
use num_traits::ToPrimitive;

/// Diagrams touching larger degrees are not replayed.
pub const REPLAY_DEGREE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub field: ExactField,
    /// Commuting triangles checked.
    pub triangles: usize,
    /// Legs realized and checked.
    pub legs: usize,
}

fn degree(seq: &TripleSequence, i: usize) -> Result<usize, MatrixLabError> {
    let n = seq.degrees(i).pop().expect("index at least 1");
    n.to_usize()
        .filter(|&v| v <= REPLAY_DEGREE_LIMIT)
        .ok_or_else(|| MatrixLabError::Unsupported(format!("degree {n} is above {REPLAY_DEGREE_LIMIT}")))
}

struct Realizer<'a> {
    field: ExactField,
    kind: AlgebraType,
    seq: &'a TripleSequence,
}

impl Realizer<'_> {
    fn algebra(&self, i: usize) -> Result<InvolutionAlgebra, MatrixLabError> {
        InvolutionAlgebra::canonical(self.field, self.kind, degree(self.seq, i)?)
    }

    /// Composite of the canonical connecting maps `A_i → A_k`.
    fn path(&self, i: usize, k: usize) -> Result<Embedding, MatrixLabError> {
        let start = self.algebra(i)?;
        let mut map = canonical_embedding(&Signature::identity(), &start, &start)?;
        for m in i..k {
            let step = canonical_embedding(&self.seq.triple(m).into(), &self.algebra(m)?, &self.algebra(m + 1)?)?;
            map = compose(&map, &step)?;
        }
        Ok(map)
    }
}

/// Position of every target basis vector: `Some((component, copy, index))`
/// for positions covered by a copy of the source, `None` for the zero part.
/// Copies are numbered by their first position.
fn layout(e: &Embedding) -> Result<Vec<Option<(usize, usize, usize)>>, MatrixLabError> {
    let (n, m) = (e.source().degree(), e.target().degree());
    let not_block = |what: &str| MatrixLabError::ReplayFailed(format!("map is not a permuted block embedding ({what})"));
    let mut labels = vec![None; m];
    for c in 0..e.source().components() {
        let anchor = &e.images()[e.source().basis_index(c, 0, 0)].0[0];
        let mut anchors: Vec<usize> = anchor.nonzeros().map(|(i, j, _)| if i == j { Ok(i) } else { Err(()) })
            .collect::<Result<_, _>>()
            .map_err(|_| not_block("off-diagonal anchor"))?;
        anchors.sort_unstable();
        for (copy, &t0) in anchors.iter().enumerate() {
            for i in 0..n {
                let column: Vec<usize> = e.images()[e.source().basis_index(c, i, 0)].0[0]
                    .nonzeros()
                    .filter(|&(_, j, _)| j == t0)
                    .map(|(p, _, _)| p)
                    .collect();
                let [p] = column[..] else {
                    return Err(not_block("column of a matrix unit"));
                };
                if labels[p].is_some() {
                    return Err(not_block("overlapping copies"));
                }
                labels[p] = Some((c, copy, i));
            }
        }
    }
    Ok(labels)
}

/// Permutation `perm` with `Ad(T_perm) ∘ actual = wanted`, matching copies
/// of each component in order and zero positions in order.
fn matching_permutation(actual: &Embedding, wanted: &Embedding) -> Result<Vec<usize>, MatrixLabError> {
    let (from, to) = (layout(actual)?, layout(wanted)?);
    let zeros = |l: &[Option<(usize, usize, usize)>]| -> Vec<usize> {
        l.iter().enumerate().filter(|(_, x)| x.is_none()).map(|(p, _)| p).collect()
    };
    let (zero_from, zero_to) = (zeros(&from), zeros(&to));
    if zero_from.len() != zero_to.len() {
        return Err(MatrixLabError::ReplayFailed("zero blocks have different sizes".into()));
    }
    let mut perm = vec![usize::MAX; from.len()];
    for (p, q) in zero_from.into_iter().zip(zero_to) {
        perm[p] = q;
    }
    for (p, label) in from.iter().enumerate() {
        if let Some(label) = label {
            let q = to.iter().position(|x| x.as_ref() == Some(label));
            perm[p] = q.ok_or_else(|| MatrixLabError::ReplayFailed("copy counts differ".into()))?;
        }
    }
    Ok(perm)
}

/// Realizes `canonical(sig)` after `previous`, conjugated so that the
/// composite equals `wanted` exactly.
fn aligned_leg(
    previous: &Embedding,
    sig: &Signature,
    target: &InvolutionAlgebra,
    wanted: &Embedding,
) -> Result<Embedding, MatrixLabError> {
    let canonical = canonical_embedding(sig, previous.target(), target)?;
    let composite = compose(previous, &canonical)?;
    let perm = matching_permutation(&composite, wanted)?;
    let leg = canonical.conjugated(&perm);
    if compose(previous, &leg)?.images() != wanted.images() {
        return Err(MatrixLabError::ReplayFailed("aligned composite differs from the connecting map".into()));
    }
    Ok(leg)
}

fn check_leg(leg: &Embedding, sig: &Signature, what: &str) -> Result<(), MatrixLabError> {
    leg.check_involution()?;
    let got = leg.extract_signature()?;
    if got != *sig {
        return Err(MatrixLabError::ReplayFailed(format!("{what} has signature {got}, expected {sig}")));
    }
    Ok(())
}

/// Builds every leg of `d` as a matrix embedding over `field` and checks
/// involution compatibility, the homomorphism property, the signature of
/// each leg, and literal commutativity of every triangle.
pub fn replay_diagram(d: &IntertwinerDiagram, field: ExactField) -> Result<ReplayReport, MatrixLabError> {
    let limit = d.max_degree().to_usize().unwrap_or(usize::MAX);
    if limit > REPLAY_DEGREE_LIMIT {
        return Err(MatrixLabError::Unsupported(format!("degree {limit} is above {REPLAY_DEGREE_LIMIT}")));
    }
    if d.down_maps.is_empty() {
        return Ok(ReplayReport { field, triangles: 0, legs: 0 });
    }
    let first = Realizer { field, kind: d.algebra_type, seq: &d.first };
    let second = Realizer { field, kind: d.algebra_type, seq: &d.second };
    let mut report = ReplayReport { field, triangles: 0, legs: 0 };

    let mut down = canonical_embedding(
        &d.down_maps[0],
        &first.algebra(d.down_indices[0])?,
        &second.algebra(d.up_indices[0])?,
    )?;
    check_leg(&down, &d.down_maps[0], "down leg 1")?;
    report.legs += 1;
    for k in 0..d.depth {
        let (i, i_next) = (d.down_indices[k], d.down_indices[k + 1]);
        let wanted = first.path(i, i_next)?;
        let up = aligned_leg(&down, &d.up_maps[k], &first.algebra(i_next)?, &wanted)?;
        check_leg(&up, &d.up_maps[k], &format!("up leg {}", k + 1))?;
        report.legs += 1;
        report.triangles += 1;
        if k + 1 < d.depth {
            let (j, j_next) = (d.up_indices[k], d.up_indices[k + 1]);
            let wanted = second.path(j, j_next)?;
            down = aligned_leg(&up, &d.down_maps[k + 1], &second.algebra(j_next)?, &wanted)?;
            check_leg(&down, &d.down_maps[k + 1], &format!("down leg {}", k + 2))?;
            report.legs += 1;
            report.triangles += 1;
        }
    }
    Ok(report)
}
