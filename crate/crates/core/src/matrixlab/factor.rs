//! Idempotent splittings and factorizations through type A algebras.

use super::algebra::{Element, InvolutionAlgebra, InvolutionKind};
use super::embedding::{canonical_embedding, compose, Embedding};
use super::matrix::Matrix;
use super::MatrixLabError;
use crate::intertwine::Signature;
use crate::seqspec::AlgebraType;
use num_traits::ToPrimitive;

/// Idempotents `f`, `g` with `f + g = 1`, `fg = gf = 0` and `f* = g`.
///
/// Type A uses the component identities. Types O and S use
/// `f = diag(1, 0, 1, 0, …)`, which works for the symplectic form and for
/// the orthogonal form `diag([[0,1],[1,0]], …)`; other realizations are
/// rejected. Type O in characteristic 2 has no such pair.
pub fn fg_idempotents(algebra: &InvolutionAlgebra) -> Result<(Element, Element), MatrixLabError> {
    let field = algebra.field();
    let n = algebra.degree();
    let (f, g) = match algebra.algebra_type() {
        AlgebraType::A => {
            let (one, zero) = (Matrix::identity(field, n), Matrix::zeros(field, n, n));
            (Element(vec![one.clone(), zero.clone()]), Element(vec![zero, one]))
        }
        kind => {
            if kind == AlgebraType::O && field.characteristic() == 2 {
                return Err(MatrixLabError::Unsupported("type O in characteristic 2 has no f, g pair".into()));
            }
            if n % 2 == 1 {
                return Err(MatrixLabError::OddDegree(n));
            }
            let pattern: Vec<i64> = (0..n).map(|k| i64::from(k % 2 == 0)).collect();
            let f = Matrix::diagonal(field, &pattern);
            let g = Matrix::identity(field, n).sub(&f);
            (Element(vec![f]), Element(vec![g]))
        }
    };
    let one = algebra.one();
    let ok = f.add(&g) == one
        && f.mul(&g).is_zero()
        && g.mul(&f).is_zero()
        && f.mul(&f) == f
        && algebra.star(&f) == g;
    if !ok {
        return Err(MatrixLabError::Unsupported(format!(
            "diagonal idempotents are not swapped by this {:?} involution",
            algebra.kind()
        )));
    }
    Ok((f, g))
}

/// `ε = ζ ∘ η` with `η` of signature `(l/2, 0, 0)` into the type A algebra
/// `intermediate` and `ζ` of signature `(1, 1, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeAFactorization {
    pub intermediate: InvolutionAlgebra,
    /// `M_m` with the adjoint involution of `[[0,K],[K,0]] ⊕ C`, where
    /// `K = I ⊗ B` repeats the source form `B` and `C` is `I` (type O) or the
    /// symplectic form (type S).
    pub target: InvolutionAlgebra,
    pub embedding: Embedding,
    pub first: Embedding,
    pub second: Embedding,
}

/// Factors the block embedding of signature `(l, 0, z)`, `l` even, of an O
/// or S algebra through a type A algebra of degree `(l/2)·n`. All three maps
/// are checked for involution compatibility and `ε = ζ ∘ η` is checked
/// entry by entry on the matrix units.
pub fn factor_through_type_a(
    source: &InvolutionAlgebra,
    sig: &Signature,
) -> Result<TypeAFactorization, MatrixLabError> {
    let kind = source.algebra_type();
    if kind == AlgebraType::A {
        return Err(MatrixLabError::TypeMismatch("source must have type O or S".into()));
    }
    let too_big = || MatrixLabError::DegreeMismatch(format!("{sig} is too large"));
    let (l, r, z) = (
        sig.l.to_usize().ok_or_else(too_big)?,
        sig.r.to_usize().ok_or_else(too_big)?,
        sig.z.to_usize().ok_or_else(too_big)?,
    );
    if r > 0 {
        return Err(MatrixLabError::PartnerOnSimpleType);
    }
    if l % 2 == 1 {
        return Err(MatrixLabError::OddMultiplicity(l as u64));
    }
    let field = source.field();
    if kind == AlgebraType::O && field.characteristic() == 2 {
        return Err(MatrixLabError::Unsupported("type O does not factor through type A in characteristic 2".into()));
    }
    if kind == AlgebraType::S && z % 2 == 1 {
        return Err(MatrixLabError::OddDegree(z));
    }
    let n = source.degree();
    let (h, m) = ((l / 2) * n, l * n + z);
    let form = match source.kind() {
        InvolutionKind::Transpose => Matrix::identity(field, n),
        _ => source.gram().expect("form present").clone(),
    };
    let k = Matrix::identity(field, l / 2).kron(&form);
    let k_inv = k.inverse().ok_or(MatrixLabError::SingularGram)?;
    let mut gram = Matrix::zeros(field, m, m);
    gram.place(&k, 0, h);
    gram.place(&k, h, 0);
    if z > 0 {
        let tail = InvolutionAlgebra::canonical(field, kind, z)?;
        let c = tail.gram().cloned().unwrap_or_else(|| Matrix::identity(field, z));
        gram.place(&c, 2 * h, 2 * h);
    }
    let target = InvolutionAlgebra::with_gram(gram)?;
    if target.algebra_type() != kind {
        return Err(MatrixLabError::TypeMismatch(format!("target realization has type {}", target.algebra_type())));
    }
    let intermediate = InvolutionAlgebra::canonical(field, AlgebraType::A, h)?;

    let repeat = Matrix::identity(field, l / 2);
    let first_images = (0..source.basis_len())
        .map(|b| {
            let x = repeat.kron(&source.basis_element(b).0[0]);
            let twisted = k.mul(&x).mul(&k_inv);
            Element(vec![x, twisted])
        })
        .collect();
    let first = Embedding::from_images(source.clone(), intermediate.clone(), first_images)?;

    let second_images = (0..intermediate.basis_len())
        .map(|b| {
            let u = intermediate.basis_element(b);
            let mut y = Matrix::zeros(field, m, m);
            y.place(&u.0[0], 0, 0);
            y.place(&k_inv.mul(&u.0[1]).mul(&k), h, h);
            Element(vec![y])
        })
        .collect();
    let second = Embedding::from_images(intermediate.clone(), target.clone(), second_images)?;

    let embedding = canonical_embedding(sig, source, &target)?;
    for map in [&embedding, &first, &second] {
        map.check_involution()?;
        map.check_homomorphism()?;
    }
    if compose(&first, &second)?.images() != embedding.images() {
        return Err(MatrixLabError::NotHomomorphism("ζ ∘ η differs from ε".into()));
    }
    Ok(TypeAFactorization { intermediate, target, embedding, first, second })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixlab::algebra::hyperbolic_form;
    use crate::matrixlab::field::ExactField;

    const Q: ExactField = ExactField::Rationals;

    #[test]
    fn symplectic_idempotents() {
        let s = InvolutionAlgebra::canonical(Q, AlgebraType::S, 4).unwrap();
        let (f, g) = fg_idempotents(&s).unwrap();
        assert_eq!(f, Element(vec![Matrix::diagonal(Q, &[1, 0, 1, 0])]));
        assert_eq!(g, Element(vec![Matrix::diagonal(Q, &[0, 1, 0, 1])]));
    }

    #[test]
    fn type_a_idempotents() {
        let a = InvolutionAlgebra::canonical(Q, AlgebraType::A, 3).unwrap();
        let (f, g) = fg_idempotents(&a).unwrap();
        assert_eq!(f.0[0], Matrix::identity(Q, 3));
        assert!(g.0[0].is_zero());
    }

    #[test]
    fn orthogonal_needs_hyperbolic_form() {
        let o = InvolutionAlgebra::with_gram(hyperbolic_form(Q, 2)).unwrap();
        let (f, _) = fg_idempotents(&o).unwrap();
        assert_eq!(f, Element(vec![Matrix::diagonal(Q, &[1, 0])]));
        let t = InvolutionAlgebra::canonical(Q, AlgebraType::O, 2).unwrap();
        assert!(matches!(fg_idempotents(&t), Err(MatrixLabError::Unsupported(_))));
        let f2 = ExactField::prime(2).unwrap();
        let t2 = InvolutionAlgebra::canonical(f2, AlgebraType::O, 2).unwrap();
        assert!(matches!(fg_idempotents(&t2), Err(MatrixLabError::Unsupported(_))));
    }

    #[test]
    fn orthogonal_doubling_factors() {
        let o = InvolutionAlgebra::canonical(Q, AlgebraType::O, 1).unwrap();
        let f = factor_through_type_a(&o, &Signature::new(2u8, 0u8, 0u8)).unwrap();
        assert_eq!(f.intermediate.degree(), 1);
        assert_eq!(f.first.extract_signature(), Ok(Signature::new(1u8, 0u8, 0u8)));
        assert_eq!(f.second.extract_signature(), Ok(Signature::new(1u8, 1u8, 0u8)));
    }

    #[test]
    fn symplectic_factorization_over_both_fields() {
        for field in [Q, ExactField::prime(2).unwrap(), ExactField::prime(3).unwrap()] {
            let s = InvolutionAlgebra::canonical(field, AlgebraType::S, 2).unwrap();
            let f = factor_through_type_a(&s, &Signature::new(4u8, 0u8, 2u8)).unwrap();
            assert_eq!(f.first.extract_signature(), Ok(Signature::new(2u8, 0u8, 0u8)));
            assert_eq!(f.second.extract_signature(), Ok(Signature::new(1u8, 1u8, 2u8)));
            assert_eq!(f.target.algebra_type(), AlgebraType::S);
        }
    }

    #[test]
    fn odd_and_characteristic_two_rejected() {
        let o = InvolutionAlgebra::canonical(Q, AlgebraType::O, 1).unwrap();
        let odd = factor_through_type_a(&o, &Signature::new(3u8, 0u8, 0u8));
        assert_eq!(odd.unwrap_err(), MatrixLabError::OddMultiplicity(3));
        let o2 = InvolutionAlgebra::canonical(ExactField::prime(2).unwrap(), AlgebraType::O, 1).unwrap();
        let err = factor_through_type_a(&o2, &Signature::new(2u8, 0u8, 0u8));
        assert!(matches!(err, Err(MatrixLabError::Unsupported(_))));
    }
}
