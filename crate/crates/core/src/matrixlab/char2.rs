//! Over `GF(2)`: a symmetric invertible form whose adjoint involution swaps
//! an idempotent `f` with `1 - f` is alternating. The check enumerates
//! idempotents, solves the linear conditions on the form, and inspects every
//! invertible solution.

use super::field::ExactField;
use super::matrix::Matrix;
use super::MatrixLabError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solution spaces up to this dimension are enumerated completely.
const FULL_SOLUTION_DIM: usize = 12;
const SAMPLED_SOLUTIONS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Char2Report {
    pub degree: usize,
    pub idempotents: usize,
    /// Invertible symmetric forms found and inspected.
    pub forms: usize,
    /// A symmetric form with a nonzero diagonal entry, if any was found.
    pub counterexample: Option<Matrix>,
}

impl Char2Report {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn gf2() -> ExactField {
    ExactField::Prime(2)
}

fn from_bits(n: usize, bits: u64) -> Matrix {
    let mut m = Matrix::zeros(gf2(), n, n);
    for i in 0..n {
        for j in 0..n {
            if bits >> (i * n + j) & 1 == 1 {
                m.set(i, j, gf2().one());
            }
        }
    }
    m
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    from_bits(n, rng.gen::<u64>() & ((1u64 << (n * n)) - 1))
}

/// Conditions `fᵗB + Bf + B = 0` (that is `B⁻¹fᵗB = 1 - f`) on a symmetric
/// `B`, returned as a basis of solutions.
fn compatible_forms(f: &Matrix) -> Vec<Matrix> {
    let n = f.rows();
    let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let position = |i: usize, j: usize| unknowns.iter().position(|&p| p == (i.min(j), i.max(j))).expect("listed");
    let mut system = Matrix::zeros(gf2(), n * n, unknowns.len());
    let mut toggle = |row: usize, col: usize| {
        let v = system.get(row, col).add(&gf2().one());
        system.set(row, col, v);
    };
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                if !f.get(k, i).is_zero() {
                    toggle(row, position(k, j));
                }
                if !f.get(k, j).is_zero() {
                    toggle(row, position(i, k));
                }
            }
            toggle(row, position(i, j));
        }
    }
    system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut b = Matrix::zeros(gf2(), n, n);
            for (&(i, j), x) in unknowns.iter().zip(&v) {
                b.set(i, j, x.clone());
                b.set(j, i, x.clone());
            }
            b
        })
        .collect()
}

/// Inspects the invertible forms compatible with `f`; returns how many there
/// were and the first non-alternating one.
fn inspect<R: Rng>(f: &Matrix, rng: &mut R) -> (usize, Option<Matrix>) {
    let basis = compatible_forms(f);
    let n = f.rows();
    let combos: Vec<u64> = if basis.len() <= FULL_SOLUTION_DIM {
        (1..1u64 << basis.len()).collect()
    } else {
        (0..SAMPLED_SOLUTIONS).map(|_| rng.gen::<u64>() & ((1u64 << basis.len()) - 1)).collect()
    };
    let mut forms = 0;
    for mask in combos {
        let b = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .fold(Matrix::zeros(gf2(), n, n), |acc, (_, m)| acc.add(m));
        if b.rank() < n {
            continue;
        }
        forms += 1;
        if (0..n).any(|i| !b.get(i, i).is_zero()) {
            return (forms, Some(b));
        }
    }
    (forms, None)
}

/// Runs the check at even degree `n`. With `trials == 0` every idempotent
/// of `M_n(GF(2))` is tried (feasible for `n ≤ 4`); otherwise `trials`
/// random idempotents of rank `n/2` are drawn from a ChaCha stream seeded
/// with `seed`.
pub fn char2_alternating_check(n: usize, trials: usize, seed: u64) -> Result<Char2Report, MatrixLabError> {
    if n == 0 || n % 2 == 1 {
        return Err(MatrixLabError::OddDegree(n));
    }
    if n > 8 || (trials == 0 && n > 4) {
        return Err(MatrixLabError::Unsupported(format!("degree {n} is too large for this search")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Char2Report { degree: n, idempotents: 0, forms: 0, counterexample: None };
    let visit = |f: Matrix, rng: &mut ChaCha8Rng, report: &mut Char2Report| {
        report.idempotents += 1;
        let (forms, bad) = inspect(&f, rng);
        report.forms += forms;
        if report.counterexample.is_none() {
            report.counterexample = bad;
        }
    };
    if trials == 0 {
        for bits in 0..1u64 << (n * n) {
            let f = from_bits(n, bits);
            if f.mul(&f) == f {
                visit(f, &mut rng, &mut report);
            }
        }
    } else {
        let half: Vec<i64> = (0..n).map(|k| i64::from(k < n / 2)).collect();
        let projection = Matrix::diagonal(gf2(), &half);
        for _ in 0..trials {
            let (p, p_inv) = loop {
                let p = random_matrix(&mut rng, n);
                if let Some(inv) = p.inverse() {
                    break (p, inv);
                }
            };
            visit(p.mul(&projection).mul(&p_inv), &mut rng, &mut report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_degree_two() {
        let report = char2_alternating_check(2, 0, 0).unwrap();
        assert!(report.holds());
        // 0, 1, and the six rank-one idempotents of M_2(GF(2)).
        assert_eq!(report.idempotents, 8);
        assert!(report.forms > 0);
    }

    #[test]
    fn diagonal_split_forces_hyperbolic_form() {
        let f = Matrix::diagonal(gf2(), &[1, 0]);
        let forms = compatible_forms(&f);
        assert_eq!(forms, vec![Matrix::from_rows(gf2(), &[vec![0, 1], vec![1, 0]])]);
    }

    #[test]
    fn random_degree_four() {
        let report = char2_alternating_check(4, 50, 7).unwrap();
        assert!(report.holds());
        assert_eq!(report.idempotents, 50);
        assert!(report.forms >= 50);
    }

    #[test]
    fn bad_degrees() {
        assert_eq!(char2_alternating_check(3, 1, 0).unwrap_err(), MatrixLabError::OddDegree(3));
        assert!(char2_alternating_check(6, 0, 0).is_err());
    }
}
