//! Bratteli diagrams of the unitalized limit algebra and the presentation of
//! its dimension group as a direct limit of integer lattices.
//!
//! Levels are numbered by sequence index. A unital presentation (every
//! period `z` is 0) starts after the last prefix term with `z > 0`, where
//! the identity has stabilized; a non-unital one starts at index 1 and
//! carries an extra one-dimensional vertex per level for the adjoined
//! identity.

use crate::exact::natural;
use crate::seqspec::{AlgebraType, SeqError, Triple, TripleSequence};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BratteliError {
    #[error("vector has {got} coordinates, level {level} has rank {expected}")]
    DimensionMismatch { level: usize, expected: usize, got: usize },
    #[error("level {level} is outside {first}..={last}")]
    LevelOutOfRange { level: usize, first: usize, last: usize },
    #[error("cannot transport from level {from} back to level {to}")]
    Backwards { from: usize, to: usize },
    #[error(transparent)]
    Sequence(#[from] SeqError),
}

/// The four diagram shapes. Types O and S share the single-row shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    #[serde(rename = "S-unital")]
    SingleUnital,
    #[serde(rename = "S-nonunital")]
    SingleNonunital,
    #[serde(rename = "A-unital")]
    PairUnital,
    #[serde(rename = "A-nonunital")]
    PairNonunital,
}

impl Shape {
    pub fn of(seq: &TripleSequence, kind: AlgebraType) -> Self {
        match (kind == AlgebraType::A, is_unital(seq)) {
            (false, true) => Self::SingleUnital,
            (false, false) => Self::SingleNonunital,
            (true, true) => Self::PairUnital,
            (true, false) => Self::PairNonunital,
        }
    }

    /// Simple components per level, the adjoined identity included.
    pub fn rank(self) -> usize {
        match self {
            Self::SingleUnital => 1,
            Self::SingleNonunital | Self::PairUnital => 2,
            Self::PairNonunital => 3,
        }
    }

    pub fn is_unital(self) -> bool {
        matches!(self, Self::SingleUnital | Self::PairUnital)
    }

    /// Whether the last vertex of a level is the adjoined identity.
    fn has_trivial(self) -> bool {
        !self.is_unital()
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::SingleUnital => "S-unital",
            Self::SingleNonunital => "S-nonunital",
            Self::PairUnital => "A-unital",
            Self::PairNonunital => "A-nonunital",
        }
    }

    /// Multiplicity matrix of one level: entry `[q][j]` is the number of
    /// copies of component `j` in component `q` of the next level, so
    /// columns are images of minimal idempotent classes.
    pub fn level_matrix(self, t: &Triple) -> Vec<Vec<u64>> {
        match self {
            Self::SingleUnital => vec![vec![t.l]],
            Self::SingleNonunital => vec![vec![t.l, t.z], vec![0, 1]],
            Self::PairUnital => vec![vec![t.l, t.r], vec![t.r, t.l]],
            Self::PairNonunital => vec![vec![t.l, t.r, t.z], vec![t.r, t.l, t.z], vec![0, 0, 1]],
        }
    }
}

/// Unital iff the periodic tail has `z = 0` throughout.
pub fn is_unital(seq: &TripleSequence) -> bool {
    seq.period().iter().all(|t| t.z == 0)
}

/// First level of the presentation.
pub fn first_level(seq: &TripleSequence) -> usize {
    if !is_unital(seq) {
        return 1;
    }
    seq.prefix().iter().rposition(|t| t.z > 0).map_or(1, |p| p + 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    #[serde(with = "natural")]
    pub dimension: BigUint,
    /// The one-dimensional component of the adjoined identity.
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub index: usize,
    pub vertices: Vec<Vertex>,
    /// Edges to the next level; empty on the last level.
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliDiagram {
    #[serde(rename = "type")]
    pub algebra_type: AlgebraType,
    pub shape: Shape,
    pub levels: Vec<Level>,
}

fn vertex_name(level: usize, j: usize) -> String {
    format!("L{level}V{j}")
}

/// The diagram truncated to `steps` embeddings (`steps + 1` vertex levels;
/// no levels at all when `steps` is 0).
pub fn build(seq: &TripleSequence, kind: AlgebraType, steps: usize) -> Result<BratteliDiagram, BratteliError> {
    seq.validate_for(kind)?;
    let shape = Shape::of(seq, kind);
    let first = first_level(seq);
    let mut levels = Vec::new();
    if steps > 0 {
        let degrees = seq.degrees(first + steps);
        for i in first..=first + steps {
            let n = &degrees[i - 1];
            let vertices = (1..=shape.rank())
                .map(|j| {
                    let trivial = shape.has_trivial() && j == shape.rank();
                    let dimension = if trivial { BigUint::from(1u8) } else { n.clone() };
                    Vertex { name: vertex_name(i, j), dimension, trivial }
                })
                .collect();
            let mut edges = Vec::new();
            if i < first + steps {
                let m = shape.level_matrix(&seq.triple(i));
                for (q, row) in m.iter().enumerate() {
                    for (j, &mult) in row.iter().enumerate() {
                        if mult > 0 {
                            edges.push(Edge {
                                from: vertex_name(i, j + 1),
                                to: vertex_name(i + 1, q + 1),
                                multiplicity: mult,
                            });
                        }
                    }
                }
                edges.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
            }
            levels.push(Level { index: i, vertices, edges });
        }
    }
    Ok(BratteliDiagram { algebra_type: kind, shape, levels })
}

impl BratteliDiagram {
    /// `(Σ_j m^{jq}·n^j, n^q)` for each component `q` of the limit algebra
    /// itself (the adjoined identity left out) at the level after
    /// `levels[k]`. Equality everywhere means the embedding is unital.
    pub fn fill(&self, k: usize) -> Vec<(BigUint, BigUint)> {
        let (here, next) = (&self.levels[k], &self.levels[k + 1]);
        next.vertices
            .iter()
            .filter(|v| !v.trivial)
            .map(|target| {
                let used = here
                    .edges
                    .iter()
                    .filter(|e| e.to == target.name)
                    .filter_map(|e| {
                        let source = here.vertices.iter().find(|v| v.name == e.from)?;
                        (!source.trivial).then(|| &source.dimension * e.multiplicity)
                    })
                    .sum();
                (used, target.dimension.clone())
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bratteli {\n  rankdir=LR;\n");
        for level in &self.levels {
            for v in &level.vertices {
                let _ = writeln!(out, "  {} [label=\"{}\"];", v.name, v.dimension);
            }
        }
        for level in &self.levels {
            for e in &level.edges {
                let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, e.multiplicity);
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// `K₀` of the unitalized algebra as `ℤ^{k} → ℤ^{k} → …` with the order
/// unit at each level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionGroupPresentation {
    #[serde(rename = "type")]
    pub algebra_type: AlgebraType,
    pub shape: Shape,
    pub first_level: usize,
    pub ranks: Vec<usize>,
    /// `matrices[k]` maps level `first_level + k` to the next one.
    pub matrices: Vec<Vec<Vec<u64>>>,
    pub order_units: Vec<Vec<natural::Nat>>,
}

/// Class of the identity at level `i`: `(n)`, `(n, 1)`, `(n, n)` or
/// `(n, n, 1)` by shape.
pub fn order_unit(seq: &TripleSequence, kind: AlgebraType, level: usize) -> Vec<BigUint> {
    let n = seq.degrees(level.max(1)).pop().expect("level at least 1");
    let one = BigUint::from(1u8);
    match Shape::of(seq, kind) {
        Shape::SingleUnital => vec![n],
        Shape::SingleNonunital => vec![n, one],
        Shape::PairUnital => vec![n.clone(), n],
        Shape::PairNonunital => vec![n.clone(), n, one],
    }
}

pub fn k0_presentation(
    seq: &TripleSequence,
    kind: AlgebraType,
    steps: usize,
) -> Result<DimensionGroupPresentation, BratteliError> {
    seq.validate_for(kind)?;
    let shape = Shape::of(seq, kind);
    let first = first_level(seq);
    Ok(DimensionGroupPresentation {
        algebra_type: kind,
        shape,
        first_level: first,
        ranks: vec![shape.rank(); steps + 1],
        matrices: (first..first + steps).map(|i| shape.level_matrix(&seq.triple(i))).collect(),
        order_units: (first..=first + steps)
            .map(|i| order_unit(seq, kind, i).into_iter().map(natural::Nat).collect())
            .collect(),
    })
}

impl DimensionGroupPresentation {
    pub fn last_level(&self) -> usize {
        self.first_level + self.matrices.len()
    }

    fn position(&self, level: usize) -> Result<usize, BratteliError> {
        if level < self.first_level || level > self.last_level() {
            return Err(BratteliError::LevelOutOfRange { level, first: self.first_level, last: self.last_level() });
        }
        Ok(level - self.first_level)
    }

    /// Pushes `v` from level `from` to level `to` through the level matrices.
    pub fn transport(&self, v: &[BigInt], from: usize, to: usize) -> Result<Vec<BigInt>, BratteliError> {
        if to < from {
            return Err(BratteliError::Backwards { from, to });
        }
        let (a, b) = (self.position(from)?, self.position(to)?);
        if v.len() != self.ranks[a] {
            return Err(BratteliError::DimensionMismatch { level: from, expected: self.ranks[a], got: v.len() });
        }
        let mut current = v.to_vec();
        for m in &self.matrices[a..b] {
            current = m
                .iter()
                .map(|row| row.iter().zip(&current).map(|(&x, c)| BigInt::from(x) * c).sum())
                .collect();
        }
        Ok(current)
    }

    /// First level in `from..=from + horizon` (capped at the last level)
    /// where the transported `v` is nonnegative, if any.
    pub fn positive_within(&self, v: &[BigInt], from: usize, horizon: usize) -> Result<Option<usize>, BratteliError> {
        let last = self.last_level().min(from + horizon);
        for level in from..=last {
            if positive_at_level(&self.transport(v, from, level)?) {
                return Ok(Some(level));
            }
        }
        Ok(None)
    }
}

/// Membership in the cone `ℤ₊^k` of a finite level.
pub fn positive_at_level(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// Eight periods' worth of levels.
pub fn default_horizon(seq: &TripleSequence) -> usize {
    8 * seq.period().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(prefix: &[(u64, u64, u64)], period: &[(u64, u64, u64)]) -> TripleSequence {
        TripleSequence::from_tuples(prefix, period)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn shapes() {
        assert_eq!(Shape::of(&seq(&[], &[(2, 0, 0)]), AlgebraType::O), Shape::SingleUnital);
        assert_eq!(Shape::of(&seq(&[], &[(2, 0, 1)]), AlgebraType::O), Shape::SingleNonunital);
        assert_eq!(Shape::of(&seq(&[], &[(1, 1, 0)]), AlgebraType::A), Shape::PairUnital);
        assert_eq!(Shape::of(&seq(&[], &[(1, 1, 1)]), AlgebraType::A), Shape::PairNonunital);
        assert_eq!(Shape::of(&seq(&[(2, 0, 1)], &[(2, 0, 0)]), AlgebraType::S), Shape::SingleUnital);
    }

    #[test]
    fn glimm_chain() {
        let d = build(&seq(&[], &[(2, 0, 0)]), AlgebraType::O, 1).unwrap();
        assert_eq!(d.levels.len(), 2);
        assert_eq!(d.levels[0].edges, vec![Edge { from: "L1V1".into(), to: "L2V1".into(), multiplicity: 2 }]);
        assert_eq!(d.to_dot(), "digraph bratteli {\n  rankdir=LR;\n  L1V1 [label=\"1\"];\n  L2V1 [label=\"2\"];\n  L1V1 -> L2V1 [label=\"2\"];\n}\n");
    }

    #[test]
    fn slanted_corner_edges() {
        let d = build(&seq(&[], &[(2, 0, 1)]), AlgebraType::O, 2).unwrap();
        let edges: Vec<(&str, &str, u64)> =
            d.levels[0].edges.iter().map(|e| (e.from.as_str(), e.to.as_str(), e.multiplicity)).collect();
        assert_eq!(edges, vec![("L1V1", "L2V1", 2), ("L1V2", "L2V1", 1), ("L1V2", "L2V2", 1)]);
        assert!(d.levels[1].vertices[1].trivial);
    }

    #[test]
    fn most_general_shape() {
        let d = build(&seq(&[], &[(1, 1, 1)]), AlgebraType::A, 1).unwrap();
        assert_eq!(d.levels[0].vertices.len(), 3);
        assert_eq!(d.levels[0].edges.len(), 7);
    }

    #[test]
    fn empty_diagram() {
        let d = build(&seq(&[], &[(2, 0, 0)]), AlgebraType::O, 0).unwrap();
        assert!(d.levels.is_empty());
        assert_eq!(d.to_dot(), "digraph bratteli {\n  rankdir=LR;\n}\n");
    }

    #[test]
    fn unital_presentation_starts_after_prefix_corners() {
        let t = seq(&[(2, 0, 1), (3, 0, 0)], &[(2, 0, 0)]);
        assert_eq!(first_level(&t), 2);
        let d = build(&t, AlgebraType::O, 2).unwrap();
        assert_eq!(d.levels[0].index, 2);
        assert_eq!(d.levels[0].vertices[0].dimension, BigUint::from(3u8));
    }

    #[test]
    fn level_matrices() {
        let t = Triple { l: 2, r: 1, z: 1 };
        assert_eq!(Shape::PairNonunital.level_matrix(&t), vec![vec![2, 1, 1], vec![1, 2, 1], vec![0, 0, 1]]);
        assert_eq!(Shape::SingleUnital.level_matrix(&Triple { l: 5, r: 0, z: 0 }), vec![vec![5]]);
        let p = k0_presentation(&seq(&[], &[(1, 1, 0)]), AlgebraType::A, 1).unwrap();
        assert_eq!(p.matrices[0], vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn transport_examples() {
        let p = k0_presentation(&seq(&[], &[(2, 1, 1)]), AlgebraType::A, 3).unwrap();
        assert_eq!(p.transport(&ints(&[1, 0, 0]), 1, 2).unwrap(), ints(&[2, 1, 0]));
        assert_eq!(p.transport(&ints(&[0, 0, 1]), 1, 2).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(p.transport(&ints(&[0, 0, 0]), 1, 4).unwrap(), ints(&[0, 0, 0]));
        let err = p.transport(&ints(&[1, 0]), 1, 2).unwrap_err();
        assert_eq!(err, BratteliError::DimensionMismatch { level: 1, expected: 3, got: 2 });
        assert!(matches!(p.transport(&ints(&[1, 0, 0]), 3, 2), Err(BratteliError::Backwards { .. })));
    }

    #[test]
    fn order_units_are_transported() {
        let t = seq(&[(3, 0, 0)], &[(2, 1, 1)]);
        let p = k0_presentation(&t, AlgebraType::A, 4).unwrap();
        for level in 1..4 {
            let unit: Vec<BigInt> = order_unit(&t, AlgebraType::A, level).into_iter().map(BigInt::from).collect();
            let next: Vec<BigInt> = order_unit(&t, AlgebraType::A, level + 1).into_iter().map(BigInt::from).collect();
            assert_eq!(p.transport(&unit, level, level + 1).unwrap(), next);
        }
        assert_eq!(order_unit(&seq(&[(1, 0, 2)], &[(1, 1, 1)]), AlgebraType::A, 2), vec![3u8.into(), 3u8.into(), 1u8.into()]);
    }

    #[test]
    fn eventual_positivity() {
        let p = k0_presentation(&seq(&[], &[(2, 1, 0)]), AlgebraType::A, 4).unwrap();
        assert!(positive_at_level(&ints(&[1, 0])));
        assert!(!positive_at_level(&ints(&[-1, 2])));
        assert_eq!(p.positive_within(&ints(&[-1, 2]), 1, 8).unwrap(), Some(2));
        assert_eq!(p.positive_within(&ints(&[-1, 0]), 1, 8).unwrap(), None);
    }

    #[test]
    fn fill_is_tight_exactly_without_corners() {
        let d = build(&seq(&[(2, 0, 0)], &[(2, 0, 1)]), AlgebraType::O, 3).unwrap();
        let (used, n) = d.fill(0)[0].clone();
        assert_eq!(used, n);
        let (used, n) = d.fill(1)[0].clone();
        assert!(used < n);
    }

    #[test]
    fn json_names() {
        let d = build(&seq(&[], &[(1, 1, 1)]), AlgebraType::A, 1).unwrap();
        let v = d.to_json();
        assert_eq!(v["shape"], "A-nonunital");
        assert_eq!(v["levels"][1]["vertices"][2]["name"], "L2V3");
    }
}
