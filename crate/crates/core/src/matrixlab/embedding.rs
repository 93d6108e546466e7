//! Homomorphisms between involution algebras, stored as the images of the
//! matrix units of the source.

use super::algebra::{split_form, Element, InvolutionAlgebra};
use super::field::ExactField;
use super::matrix::Matrix;
use super::MatrixLabError;
use crate::intertwine::Signature;
use crate::seqspec::AlgebraType;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// One diagonal block of a canonical embedding, read in the first target
/// component. In the second component of a type A target the roles of
/// `Source` and `Partner` are exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    /// A copy of the first source component.
    Source,
    /// A copy of the second source component (type A sources only).
    Partner,
    /// A zero block of the given size.
    Zero(usize),
}

/// Pairs of basis indices checked exhaustively below this count; above it a
/// seeded sample of this size is used.
const FULL_HOMOMORPHISM_CHECK: usize = 16_384;
const SAMPLE_SEED: u64 = 0x5_eed0_fe3b;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: InvolutionAlgebra,
    target: InvolutionAlgebra,
    images: Vec<Element>,
    block_plan: Option<Vec<Slot>>,
}

fn small(v: &num_bigint::BigUint) -> Result<usize, MatrixLabError> {
    v.to_usize().ok_or_else(|| MatrixLabError::DegreeMismatch(format!("{v} is too large")))
}

impl Embedding {
    /// A map given by the images of the source matrix units, in the order
    /// of [`InvolutionAlgebra::basis_element`].
    pub fn from_images(
        source: InvolutionAlgebra,
        target: InvolutionAlgebra,
        images: Vec<Element>,
    ) -> Result<Self, MatrixLabError> {
        if source.field() != target.field() {
            return Err(MatrixLabError::TypeMismatch("source and target fields differ".into()));
        }
        if images.len() != source.basis_len() {
            return Err(MatrixLabError::DegreeMismatch(format!(
                "{} images for {} basis elements",
                images.len(),
                source.basis_len()
            )));
        }
        let m = target.degree();
        let shaped = |x: &Element| {
            x.0.len() == target.components() && x.0.iter().all(|c| c.rows() == m && c.cols() == m)
        };
        if !images.iter().all(shaped) {
            return Err(MatrixLabError::DegreeMismatch("image has the wrong shape".into()));
        }
        Ok(Self { source, target, images, block_plan: None })
    }

    pub fn source(&self) -> &InvolutionAlgebra {
        &self.source
    }

    pub fn target(&self) -> &InvolutionAlgebra {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn block_plan(&self) -> Option<&[Slot]> {
        self.block_plan.as_deref()
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut out = self.target.zero();
        for (c, m) in x.0.iter().enumerate() {
            for (i, j, v) in m.nonzeros() {
                let image = &self.images[self.source.basis_index(c, i, j)];
                out = out.add(&image.scale(v));
            }
        }
        out
    }

    /// `Ad(T) ∘ self` for the permutation matrix `T e_p = e_{perm[p]}`,
    /// applied to every target component.
    pub fn conjugated(&self, perm: &[usize]) -> Self {
        let m = self.target.degree();
        assert_eq!(perm.len(), m, "permutation size");
        let field = self.target.field();
        let images = self
            .images
            .iter()
            .map(|x| {
                Element(
                    x.0.iter()
                        .map(|c| {
                            let mut out = Matrix::zeros(field, m, m);
                            for (i, j, v) in c.nonzeros() {
                                out.set(perm[i], perm[j], v.clone());
                            }
                            out
                        })
                        .collect(),
                )
            })
            .collect();
        Self { source: self.source.clone(), target: self.target.clone(), images, block_plan: None }
    }

    /// Checks `ε(xy) = ε(x)ε(y)` on pairs of matrix units: all pairs for
    /// small sources, a fixed-seed sample otherwise.
    pub fn check_homomorphism(&self) -> Result<(), MatrixLabError> {
        let count = self.images.len();
        let n = self.source.degree();
        let check = |a: usize, b: usize| -> Result<(), MatrixLabError> {
            let product = self.images[a].mul(&self.images[b]);
            let (ca, ra) = (a / (n * n), a % (n * n));
            let (cb, rb) = (b / (n * n), b % (n * n));
            let expected = if ca == cb && ra % n == rb / n {
                self.images[self.source.basis_index(ca, ra / n, rb % n)].clone()
            } else {
                self.target.zero()
            };
            if product != expected {
                return Err(MatrixLabError::NotHomomorphism(format!("basis elements {a} and {b}")));
            }
            Ok(())
        };
        if count * count <= FULL_HOMOMORPHISM_CHECK {
            for a in 0..count {
                for b in 0..count {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            for s in 0..FULL_HOMOMORPHISM_CHECK {
                let a = rng.gen_range(0..count);
                // Half of the sample uses composable pairs, which are rare.
                let b = if s % 2 == 0 {
                    let (c, r) = (a / (n * n), a % (n * n));
                    self.source.basis_index(c, r % n, rng.gen_range(0..n))
                } else {
                    rng.gen_range(0..count)
                };
                check(a, b)?;
            }
        }
        Ok(())
    }

    /// Checks `ε(x*) = ε(x)*` on every matrix unit.
    pub fn check_involution(&self) -> Result<(), MatrixLabError> {
        for (k, image) in self.images.iter().enumerate() {
            let lhs = self.apply(&self.source.star(&self.source.basis_element(k)));
            if lhs != self.target.star(image) {
                return Err(MatrixLabError::NotInvolutive(format!("basis element {k}")));
            }
        }
        Ok(())
    }

    /// Reads `(l, r, z)` off exact ranks: `l` and `r` are the ranks of the
    /// images of `E₀₀` in the two source components, measured in the first
    /// target component. A spot check of the homomorphism property runs
    /// first.
    pub fn extract_signature(&self) -> Result<Signature, MatrixLabError> {
        self.check_homomorphism()?;
        let first = &self.images[self.source.basis_index(0, 0, 0)];
        let l = first.0[0].rank();
        let r = if self.source.components() == 2 {
            self.images[self.source.basis_index(1, 0, 0)].0[0].rank()
        } else {
            0
        };
        let (n, m) = (self.source.degree(), self.target.degree());
        let used = (l + r) * n;
        if used > m {
            return Err(MatrixLabError::NotHomomorphism(format!("ranks {l}, {r} do not fit in degree {m}")));
        }
        Ok(Signature::new(l as u64, r as u64, (m - used) as u64))
    }

    /// Row-major JSON of the signature and block plan, or of the matrix-unit
    /// images when the map has no plan.
    pub fn to_json(&self) -> Result<serde_json::Value, MatrixLabError> {
        let sig = self.extract_signature()?;
        let mut out = serde_json::json!({ "signature": sig });
        match &self.block_plan {
            Some(plan) => out["block_plan"] = serde_json::to_value(plan).expect("plain enum"),
            None => {
                out["images"] = self
                    .images
                    .iter()
                    .map(|x| serde_json::Value::Array(x.0.iter().map(Matrix::to_json).collect()))
                    .collect();
            }
        }
        Ok(out)
    }
}

fn plan_for(sig_l: usize, sig_r: usize, z: usize) -> Vec<Slot> {
    let mut plan = vec![Slot::Source; sig_l];
    plan.extend(std::iter::repeat_n(Slot::Partner, sig_r));
    if z > 0 {
        plan.push(Slot::Zero(z));
    }
    plan
}

/// The block-diagonal embedding of signature `sig`: `X ↦ diag(X, …, X, 0)`
/// for types O and S, and for type A `(X₁, X₂) ↦ (diag(X₁ ×l, X₂ ×r, 0),
/// diag(X₂ ×l, X₁ ×r, 0))`. Source and target should be canonical
/// realizations (or realizations whose forms are block sums compatible
/// with the plan); [`Embedding::check_involution`] confirms this.
pub fn canonical_embedding(
    sig: &Signature,
    source: &InvolutionAlgebra,
    target: &InvolutionAlgebra,
) -> Result<Embedding, MatrixLabError> {
    if source.algebra_type() != target.algebra_type() {
        return Err(MatrixLabError::TypeMismatch(format!(
            "canonical embeddings keep the type, got {} into {}",
            source.algebra_type(),
            target.algebra_type()
        )));
    }
    if source.field() != target.field() {
        return Err(MatrixLabError::TypeMismatch("source and target fields differ".into()));
    }
    let (l, r, z) = (small(&sig.l)?, small(&sig.r)?, small(&sig.z)?);
    if r > 0 && source.algebra_type() != AlgebraType::A {
        return Err(MatrixLabError::PartnerOnSimpleType);
    }
    let n = source.degree();
    if (l + r) * n + z != target.degree() {
        return Err(MatrixLabError::DegreeMismatch(format!(
            "{sig} maps degree {n} to {}, not {}",
            (l + r) * n + z,
            target.degree()
        )));
    }
    let plan = plan_for(l, r, z);
    let field = source.field();
    let m = target.degree();
    let mut images = Vec::with_capacity(source.basis_len());
    for k in 0..source.basis_len() {
        let (c, rest) = (k / (n * n), k % (n * n));
        let (i, j) = (rest / n, rest % n);
        let mut comps = vec![Matrix::zeros(field, m, m); target.components()];
        let mut offset = 0;
        for slot in &plan {
            let size = match slot {
                Slot::Zero(s) => *s,
                _ => n,
            };
            for (t, comp) in comps.iter_mut().enumerate() {
                // Which source component this slot copies in target component t.
                let copied = match (slot, t) {
                    (Slot::Source, 0) | (Slot::Partner, 1) => Some(0),
                    (Slot::Partner, 0) | (Slot::Source, 1) => Some(1),
                    _ => None,
                };
                if copied == Some(c) {
                    comp.set(offset + i, offset + j, field.one());
                }
            }
            offset += size;
        }
        images.push(Element(comps));
    }
    let mut e = Embedding::from_images(source.clone(), target.clone(), images)?;
    e.block_plan = Some(plan);
    Ok(e)
}

/// `second ∘ first`.
pub fn compose(first: &Embedding, second: &Embedding) -> Result<Embedding, MatrixLabError> {
    if first.target != second.source {
        return Err(MatrixLabError::TypeMismatch("target of the first map is not the source of the second".into()));
    }
    let images = first.images.iter().map(|x| second.apply(x)).collect();
    Embedding::from_images(first.source.clone(), second.target.clone(), images)
}

/// Embedding of an O or S algebra `D` (any involution `α`) into a type A
/// algebra of at least its degree: `Z ↦ (Z̄, ((Z^α)ᵗ)‾)` where the bar pads
/// with zeros. Its signature is `(1, 0, m - n)`.
pub fn corner_embedding(source: &InvolutionAlgebra, target: &InvolutionAlgebra) -> Result<Embedding, MatrixLabError> {
    if source.algebra_type() == AlgebraType::A || target.algebra_type() != AlgebraType::A {
        return Err(MatrixLabError::TypeMismatch("corner embeddings go from type O or S into type A".into()));
    }
    let (n, m) = (source.degree(), target.degree());
    if n > m {
        return Err(MatrixLabError::DegreeMismatch(format!("degree {n} does not fit in {m}")));
    }
    let field = source.field();
    let pad = |x: &Matrix| {
        let mut out = Matrix::zeros(field, m, m);
        out.place(x, 0, 0);
        out
    };
    let images = (0..source.basis_len())
        .map(|k| {
            let z = source.basis_element(k);
            let twisted = source.star(&z).0[0].transpose();
            Element(vec![pad(&z.0[0]), pad(&twisted)])
        })
        .collect();
    let mut e = Embedding::from_images(source.clone(), target.clone(), images)?;
    e.block_plan = Some(plan_for(1, 0, m - n));
    Ok(e)
}

/// `(X₁, X₂) ↦ diag(X₁, X₂)` from a type A algebra of degree `n` into
/// `M_{2n}` with the adjoint involution of `[[0, I], [±I, 0]]`.
pub fn hyperbolic_embedding(source: &InvolutionAlgebra, sign: i64) -> Result<Embedding, MatrixLabError> {
    if source.algebra_type() != AlgebraType::A {
        return Err(MatrixLabError::TypeMismatch("hyperbolic embeddings start from type A".into()));
    }
    let (n, field): (usize, ExactField) = (source.degree(), source.field());
    let target = InvolutionAlgebra::with_gram(split_form(field, n, sign))?;
    let images = (0..source.basis_len())
        .map(|k| {
            let x = source.basis_element(k);
            Element(vec![Matrix::block_diagonal(field, &[x.0[0].clone(), x.0[1].clone()])])
        })
        .collect();
    let mut e = Embedding::from_images(source.clone(), target, images)?;
    e.block_plan = Some(vec![Slot::Source, Slot::Partner]);
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixlab::algebra::symplectic_form;

    const Q: ExactField = ExactField::Rationals;

    fn alg(kind: AlgebraType, n: usize) -> InvolutionAlgebra {
        InvolutionAlgebra::canonical(Q, kind, n).unwrap()
    }

    fn sig(l: u64, r: u64, z: u64) -> Signature {
        Signature::new(l, r, z)
    }

    #[test]
    fn orthogonal_block_shape() {
        let e = canonical_embedding(&sig(2, 0, 1), &alg(AlgebraType::O, 2), &alg(AlgebraType::O, 5)).unwrap();
        let m = Matrix::from_rows(Q, &[vec![1, 2], vec![3, 4]]);
        let image = e.apply(&Element(vec![m.clone()]));
        let expected = Matrix::block_diagonal(Q, &[m.clone(), m, Matrix::zeros(Q, 1, 1)]);
        assert_eq!(image, Element(vec![expected]));
        assert_eq!(e.extract_signature(), Ok(sig(2, 0, 1)));
        e.check_involution().unwrap();
    }

    #[test]
    fn partner_block_shape() {
        let e = canonical_embedding(&sig(1, 1, 0), &alg(AlgebraType::A, 1), &alg(AlgebraType::A, 2)).unwrap();
        let x = Element(vec![Matrix::diagonal(Q, &[3]), Matrix::diagonal(Q, &[5])]);
        let expected = Element(vec![Matrix::diagonal(Q, &[3, 5]), Matrix::diagonal(Q, &[5, 3])]);
        assert_eq!(e.apply(&x), expected);
        e.check_involution().unwrap();
    }

    #[test]
    fn identity_embedding() {
        let a = alg(AlgebraType::S, 4);
        let e = canonical_embedding(&sig(1, 0, 0), &a, &a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = a.random_element(&mut rng, 4);
        assert_eq!(e.apply(&x), x);
    }

    #[test]
    fn composition_counts_blocks() {
        let (a1, a2, a3) = (alg(AlgebraType::A, 1), alg(AlgebraType::A, 4), alg(AlgebraType::A, 10));
        let e1 = canonical_embedding(&sig(2, 1, 1), &a1, &a2).unwrap();
        let e2 = canonical_embedding(&sig(1, 1, 2), &a2, &a3).unwrap();
        let c = compose(&e1, &e2).unwrap();
        assert_eq!(c.extract_signature(), Ok(sig(3, 3, 4)));
        c.check_involution().unwrap();
        let (b1, b2) = (alg(AlgebraType::A, 4), alg(AlgebraType::A, 8));
        let e = canonical_embedding(&sig(1, 1, 0), &b1, &b2).unwrap();
        let c = compose(&e1, &e).unwrap();
        assert_eq!(c.extract_signature(), Ok(sig(3, 3, 2)));
    }

    #[test]
    fn zero_padding_only() {
        let e = canonical_embedding(&sig(1, 0, 3), &alg(AlgebraType::O, 1), &alg(AlgebraType::O, 4)).unwrap();
        assert_eq!(e.extract_signature(), Ok(sig(1, 0, 3)));
    }

    #[test]
    fn bad_requests() {
        let (o1, o3) = (alg(AlgebraType::O, 1), alg(AlgebraType::O, 3));
        assert_eq!(canonical_embedding(&sig(1, 1, 1), &o1, &o3).unwrap_err(), MatrixLabError::PartnerOnSimpleType);
        assert!(matches!(canonical_embedding(&sig(2, 0, 0), &o1, &o3), Err(MatrixLabError::DegreeMismatch(_))));
        assert!(matches!(canonical_embedding(&sig(3, 0, 0), &o1, &alg(AlgebraType::A, 3)), Err(MatrixLabError::TypeMismatch(_))));
    }

    #[test]
    fn broken_map_is_rejected() {
        let (o1, o2) = (alg(AlgebraType::O, 1), alg(AlgebraType::O, 2));
        let doubled = Element(vec![Matrix::diagonal(Q, &[2, 0])]);
        let e = Embedding::from_images(o1, o2, vec![doubled]).unwrap();
        assert!(matches!(e.extract_signature(), Err(MatrixLabError::NotHomomorphism(_))));
    }

    #[test]
    fn corner_signatures() {
        let theta_minus = InvolutionAlgebra::with_gram(split_form(Q, 1, -1)).unwrap();
        let e = corner_embedding(&theta_minus, &alg(AlgebraType::A, 2)).unwrap();
        assert_eq!(e.extract_signature(), Ok(sig(1, 0, 0)));
        e.check_involution().unwrap();
        let e = corner_embedding(&theta_minus, &alg(AlgebraType::A, 3)).unwrap();
        assert_eq!(e.extract_signature(), Ok(sig(1, 0, 1)));
        e.check_involution().unwrap();
        let j = InvolutionAlgebra::with_gram(symplectic_form(Q, 2)).unwrap();
        corner_embedding(&j, &alg(AlgebraType::A, 2)).unwrap().check_involution().unwrap();
    }

    #[test]
    fn corner_of_symmetric_matrix() {
        let o = alg(AlgebraType::O, 2);
        let e = corner_embedding(&o, &alg(AlgebraType::A, 2)).unwrap();
        let z = Matrix::from_rows(Q, &[vec![1, 2], vec![2, 5]]);
        assert_eq!(e.apply(&Element(vec![z.clone()])), Element(vec![z.clone(), z]));
    }

    #[test]
    fn hyperbolic_gives_equal_multiplicities() {
        for sign in [1, -1] {
            let e = hyperbolic_embedding(&alg(AlgebraType::A, 2), sign).unwrap();
            e.check_involution().unwrap();
            assert_eq!(e.extract_signature(), Ok(sig(1, 1, 0)));
        }
    }

    #[test]
    fn conjugation_by_permutation() {
        let e = canonical_embedding(&sig(1, 0, 1), &alg(AlgebraType::O, 1), &alg(AlgebraType::O, 2)).unwrap();
        let swapped = e.conjugated(&[1, 0]);
        assert_eq!(swapped.images()[0], Element(vec![Matrix::diagonal(Q, &[0, 1])]));
        swapped.check_involution().unwrap();
    }
}
