//! Matrix algebras with an involution: `M_n` with an adjoint involution of a
//! nondegenerate form (types O and S) or `M_n ⊕ M_n` with the swap-transpose
//! (type A).

use super::field::{ExactField, Scalar};
use super::matrix::Matrix;
use super::MatrixLabError;
use crate::seqspec::AlgebraType;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionKind {
    /// `X ↦ Xᵗ`.
    Transpose,
    /// `X ↦ -J Xᵗ J` with `J` the 2×2 symplectic blocks.
    SymplecticTranspose,
    /// `(X₁, X₂) ↦ (X₂ᵗ, X₁ᵗ)`.
    SwapTranspose,
    /// `X ↦ B⁻¹ Xᵗ B` for a Gram matrix `B`.
    Adjoint,
}

/// `diag([[0,1],[-1,0]], …)` of size `n` (even).
pub fn symplectic_form(field: ExactField, n: usize) -> Matrix {
    paired_form(field, n, -1)
}

/// `diag([[0,1],[1,0]], …)` of size `n` (even).
pub fn hyperbolic_form(field: ExactField, n: usize) -> Matrix {
    paired_form(field, n, 1)
}

fn paired_form(field: ExactField, n: usize, sign: i64) -> Matrix {
    assert!(n.is_multiple_of(2), "form needs even size");
    let mut m = Matrix::zeros(field, n, n);
    for k in (0..n).step_by(2) {
        m.set(k, k + 1, field.one());
        m.set(k + 1, k, field.from_i64(sign));
    }
    m
}

/// `[[0, I], [±I, 0]]` of size `2m`.
pub fn split_form(field: ExactField, m: usize, sign: i64) -> Matrix {
    let mut q = Matrix::zeros(field, 2 * m, 2 * m);
    for k in 0..m {
        q.set(k, m + k, field.one());
        q.set(m + k, k, field.from_i64(sign));
    }
    q
}

/// Type of the adjoint involution of a nondegenerate form: S iff the form is
/// alternating. In characteristic 2 that means a zero diagonal; otherwise it
/// means skew-symmetric.
pub fn involution_type(gram: &Matrix) -> Result<AlgebraType, MatrixLabError> {
    let symmetric = gram.is_symmetric();
    let skew = gram.is_skew_symmetric();
    if !symmetric && !skew {
        return Err(MatrixLabError::NotSymmetricForm);
    }
    let alternating = if gram.field().characteristic() == 2 {
        (0..gram.rows()).all(|i| gram.get(i, i).is_zero())
    } else {
        skew
    };
    Ok(if alternating { AlgebraType::S } else { AlgebraType::O })
}

/// A finite dimensional involution simple algebra realized by matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionAlgebra {
    field: ExactField,
    algebra_type: AlgebraType,
    degree: usize,
    kind: InvolutionKind,
    /// `(B, B⁻¹)` for symplectic and adjoint involutions.
    gram: Option<(Matrix, Matrix)>,
}

/// An element: one matrix for types O and S, a pair for type A.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<Matrix>);

impl Element {
    pub fn components(&self) -> &[Matrix] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self(self.0.iter().map(|a| a.scale(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Matrix::is_zero)
    }
}

impl InvolutionAlgebra {
    /// The canonical realization: transpose (O), symplectic transpose (S) or
    /// swap-transpose (A).
    pub fn canonical(field: ExactField, algebra_type: AlgebraType, degree: usize) -> Result<Self, MatrixLabError> {
        if degree == 0 {
            return Err(MatrixLabError::DegreeMismatch("degree must be positive".into()));
        }
        Ok(match algebra_type {
            AlgebraType::O => Self { field, algebra_type, degree, kind: InvolutionKind::Transpose, gram: None },
            AlgebraType::A => Self { field, algebra_type, degree, kind: InvolutionKind::SwapTranspose, gram: None },
            AlgebraType::S => {
                if degree % 2 == 1 {
                    return Err(MatrixLabError::OddDegree(degree));
                }
                let j = symplectic_form(field, degree);
                let j_inv = j.neg();
                Self { field, algebra_type, degree, kind: InvolutionKind::SymplecticTranspose, gram: Some((j, j_inv)) }
            }
        })
    }

    /// `M_n` with the adjoint involution of `gram`.
    pub fn with_gram(gram: Matrix) -> Result<Self, MatrixLabError> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(MatrixLabError::DegreeMismatch("Gram matrix must be square".into()));
        }
        let algebra_type = involution_type(&gram)?;
        let inv = gram.inverse().ok_or(MatrixLabError::SingularGram)?;
        Ok(Self {
            field: gram.field(),
            algebra_type,
            degree: gram.rows(),
            kind: InvolutionKind::Adjoint,
            gram: Some((gram, inv)),
        })
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn algebra_type(&self) -> AlgebraType {
        self.algebra_type
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    /// Gram matrix of the form; the identity for the transpose.
    pub fn gram(&self) -> Option<&Matrix> {
        self.gram.as_ref().map(|(g, _)| g)
    }

    pub fn components(&self) -> usize {
        if self.algebra_type == AlgebraType::A {
            2
        } else {
            1
        }
    }

    pub fn zero(&self) -> Element {
        Element(vec![Matrix::zeros(self.field, self.degree, self.degree); self.components()])
    }

    pub fn one(&self) -> Element {
        Element(vec![Matrix::identity(self.field, self.degree); self.components()])
    }

    /// Number of matrix units.
    pub fn basis_len(&self) -> usize {
        self.components() * self.degree * self.degree
    }

    /// Matrix unit number `index`: component `c`, entry `(i, j)` with
    /// `index = c·n² + i·n + j`.
    pub fn basis_element(&self, index: usize) -> Element {
        let n = self.degree;
        let (c, rest) = (index / (n * n), index % (n * n));
        let mut e = self.zero();
        e.0[c] = Matrix::unit(self.field, n, rest / n, rest % n);
        e
    }

    pub fn basis_index(&self, component: usize, i: usize, j: usize) -> usize {
        component * self.degree * self.degree + i * self.degree + j
    }

    pub fn star(&self, x: &Element) -> Element {
        match self.kind {
            InvolutionKind::Transpose => Element(vec![x.0[0].transpose()]),
            InvolutionKind::SwapTranspose => Element(vec![x.0[1].transpose(), x.0[0].transpose()]),
            InvolutionKind::SymplecticTranspose | InvolutionKind::Adjoint => {
                let (g, g_inv) = self.gram.as_ref().expect("form present");
                Element(vec![g_inv.mul(&x.0[0].transpose()).mul(g)])
            }
        }
    }

    /// Element with entries drawn from `-bound..=bound`.
    pub fn random_element<R: Rng>(&self, rng: &mut R, bound: i64) -> Element {
        let n = self.degree;
        Element(
            (0..self.components())
                .map(|_| {
                    let mut m = Matrix::zeros(self.field, n, n);
                    for i in 0..n {
                        for j in 0..n {
                            m.set(i, j, self.field.from_i64(rng.gen_range(-bound..=bound)));
                        }
                    }
                    m
                })
                .collect(),
        )
    }

    /// Checks `(x*)* = x` and `(xy)* = y*x*` on `trials` random pairs.
    pub fn check_involution_axioms<R: Rng>(&self, rng: &mut R, trials: usize) -> Result<(), MatrixLabError> {
        for _ in 0..trials {
            let x = self.random_element(rng, 3);
            let y = self.random_element(rng, 3);
            if self.star(&self.star(&x)) != x {
                return Err(MatrixLabError::NotInvolutive("applying the involution twice is not the identity".into()));
            }
            if self.star(&x.mul(&y)) != self.star(&y).mul(&self.star(&x)) {
                return Err(MatrixLabError::NotInvolutive("the involution is not anti-multiplicative".into()));
            }
        }
        Ok(())
    }
}
