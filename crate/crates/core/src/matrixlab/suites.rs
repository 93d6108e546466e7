//! Brute-force oracle suites shared by the self-test command and the
//! acceptance tests.

use super::algebra::{hyperbolic_form, split_form, symplectic_form, InvolutionAlgebra};
use super::char2::char2_alternating_check;
use super::embedding::{canonical_embedding, compose, hyperbolic_embedding};
use super::factor::factor_through_type_a;
use super::field::ExactField;
use super::matrix::Matrix;
use super::MatrixLabError;
use crate::intertwine::{compose_signatures_from, Signature};
use crate::seqspec::AlgebraType;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

pub const DEFAULT_SEED: u64 = 0x1a2b_3c4d;

const TYPES: [AlgebraType; 3] = [AlgebraType::O, AlgebraType::S, AlgebraType::A];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    fn record(&mut self, what: impl FnOnce() -> String, outcome: Result<bool, MatrixLabError>) {
        self.checked += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(what()),
            Err(e) => self.failures.push(format!("{}: {e}", what())),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {status} ({} checks", self.name, self.checked)?;
        if !self.failures.is_empty() {
            write!(f, ", {} failures; first: {}", self.failures.len(), self.failures[0])?;
        }
        write!(f, ")")
    }
}

fn base_degree(kind: AlgebraType) -> usize {
    if kind == AlgebraType::S {
        2
    } else {
        1
    }
}

/// Admissible signatures of a type with entries at most `max_entry`.
fn signatures(kind: AlgebraType, max_entry: u64) -> Vec<Signature> {
    let mut out = Vec::new();
    let max_r = if kind == AlgebraType::A { max_entry } else { 0 };
    for l in 0..=max_entry {
        for r in 0..=max_r {
            for z in 0..=max_entry {
                if l + r > 0 && (kind != AlgebraType::S || z % 2 == 0) {
                    out.push(Signature::new(l, r, z));
                }
            }
        }
    }
    out
}

fn target(sig: &Signature, n: usize) -> usize {
    let v = sig.target_degree(&n.into());
    usize::try_from(v).unwrap_or(usize::MAX)
}

/// Every pair of signatures with entries at most `max_entry` whose composite
/// stays within `max_degree`: the signature extracted from the composed
/// matrix maps must equal the composition law.
pub fn composition_oracle(field: ExactField, max_entry: u64, max_degree: usize) -> SuiteReport {
    let mut report = SuiteReport::new(format!("composition law over {field}"));
    for kind in TYPES {
        let n0 = base_degree(kind);
        let sigs = signatures(kind, max_entry);
        for s1 in &sigs {
            let n1 = target(s1, n0);
            if n1 > max_degree {
                continue;
            }
            for s2 in &sigs {
                let n2 = target(s2, n1);
                if n2 > max_degree {
                    continue;
                }
                let outcome = (|| {
                    let algebra = |n| InvolutionAlgebra::canonical(field, kind, n);
                    let (a0, a1, a2) = (algebra(n0)?, algebra(n1)?, algebra(n2)?);
                    let e = compose(&canonical_embedding(s1, &a0, &a1)?, &canonical_embedding(s2, &a1, &a2)?)?;
                    Ok(e.extract_signature()? == compose_signatures_from(s1, s2, kind))
                })();
                report.record(|| format!("type {kind}: {s1} then {s2}"), outcome);
            }
        }
    }
    report
}

/// `count` random admissible signatures: extraction recovers the signature
/// and the embedding commutes with the involutions on every matrix unit.
pub fn round_trip(field: ExactField, count: usize, max_degree: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(format!("canonical round trip over {field}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while report.checked < count {
        let kind = TYPES[rng.gen_range(0..3)];
        let n = base_degree(kind) * rng.gen_range(1..=3);
        let l = rng.gen_range(0..=4u64);
        let r = if kind == AlgebraType::A { rng.gen_range(0..=4u64) } else { 0 };
        let z = rng.gen_range(0..=4u64) & if kind == AlgebraType::S { !1 } else { !0 };
        let sig = Signature::new(l, r, z);
        let m = target(&sig, n);
        if l + r == 0 || m > max_degree {
            continue;
        }
        let outcome = (|| {
            let source = InvolutionAlgebra::canonical(field, kind, n)?;
            let e = canonical_embedding(&sig, &source, &InvolutionAlgebra::canonical(field, kind, m)?)?;
            e.check_involution()?;
            Ok(e.extract_signature()? == sig)
        })();
        report.record(|| format!("type {kind}, degree {n}, {sig}"), outcome);
    }
    report
}

/// `(x*)* = x` and `(xy)* = y*x*` for the canonical realizations and the
/// alternative forms.
pub fn involution_axioms(field: ExactField, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(format!("involution axioms over {field}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut algebras: Vec<Result<InvolutionAlgebra, MatrixLabError>> = Vec::new();
    for kind in TYPES {
        for n in [2, 4] {
            algebras.push(InvolutionAlgebra::canonical(field, kind, n));
        }
    }
    for gram in [
        Matrix::identity(field, 3),
        symplectic_form(field, 4),
        hyperbolic_form(field, 4),
        split_form(field, 2, 1),
        split_form(field, 2, -1),
    ] {
        algebras.push(InvolutionAlgebra::with_gram(gram));
    }
    for (k, algebra) in algebras.into_iter().enumerate() {
        let outcome = algebra.and_then(|a| a.check_involution_axioms(&mut rng, 8)).map(|()| true);
        report.record(|| format!("algebra {k}"), outcome);
    }
    report
}

/// Type A sources mapped into O/S algebras (through the hyperbolic forms
/// `[[0,I],[±I,0]]` after a canonical type A embedding) have `l = r`.
pub fn type_a_source_ranks(field: ExactField, max_degree: usize) -> SuiteReport {
    let mut report = SuiteReport::new(format!("type A sources into O/S over {field}"));
    for n in 1..=3usize {
        for sig in signatures(AlgebraType::A, 2) {
            let m = target(&sig, n);
            if 2 * m > max_degree {
                continue;
            }
            for sign in [1, -1] {
                let outcome = (|| {
                    let source = InvolutionAlgebra::canonical(field, AlgebraType::A, n)?;
                    let middle = InvolutionAlgebra::canonical(field, AlgebraType::A, m)?;
                    let e = compose(&canonical_embedding(&sig, &source, &middle)?, &hyperbolic_embedding(&middle, sign)?)?;
                    e.check_involution()?;
                    let got = e.extract_signature()?;
                    Ok(got.l == got.r && got.l == sig.sum())
                })();
                report.record(|| format!("degree {n}, {sig}, sign {sign}"), outcome);
            }
        }
    }
    report
}

/// Block embeddings of O and S algebras with even `l` factor through type A
/// as literal matrix maps.
pub fn type_a_factorizations(field: ExactField, max_degree: usize) -> SuiteReport {
    let mut report = SuiteReport::new(format!("factorizations through type A over {field}"));
    for kind in [AlgebraType::O, AlgebraType::S] {
        if kind == AlgebraType::O && field.characteristic() == 2 {
            continue;
        }
        for n in [base_degree(kind), 2 * base_degree(kind)] {
            for l in [2u64, 4] {
                for z in [0u64, 2] {
                    let sig = Signature::new(l, 0u8, z);
                    if target(&sig, n) > max_degree {
                        continue;
                    }
                    let outcome = (|| {
                        let f = factor_through_type_a(&InvolutionAlgebra::canonical(field, kind, n)?, &sig)?;
                        Ok(f.first.extract_signature()? == Signature::new(l / 2, 0u8, 0u8)
                            && f.second.extract_signature()? == Signature::new(1u8, 1u8, z))
                    })();
                    report.record(|| format!("type {kind}, degree {n}, {sig}"), outcome);
                }
            }
        }
    }
    report
}

/// Alternating-form check over `GF(2)`: exhaustive at degree 2 (and 4 when
/// `exhaustive_four`), `trials` random idempotents at each larger degree.
pub fn char2_forms(degrees: &[usize], trials: usize, exhaustive_four: bool, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("alternating forms in characteristic 2");
    let mut run = |n: usize, t: usize| {
        let outcome = char2_alternating_check(n, t, seed).map(|r| r.holds() && r.forms > 0);
        let label = if t == 0 { "exhaustive".to_string() } else { format!("{t} random trials") };
        report.record(|| format!("degree {n}, {label}"), outcome);
    };
    run(2, 0);
    if exhaustive_four {
        run(4, 0);
    }
    for &n in degrees {
        run(n, trials);
    }
    report
}

/// The suites run by the self-test, sized by `max_degree`.
pub fn standard_suites(seed: u64, max_degree: usize) -> Vec<SuiteReport> {
    let q = ExactField::Rationals;
    let gf2 = ExactField::Prime(2);
    let gf3 = ExactField::Prime(3);
    let char2_degrees: Vec<usize> = [4, 6].into_iter().filter(|&n| n <= max_degree).collect();
    vec![
        involution_axioms(q, seed),
        involution_axioms(gf2, seed),
        composition_oracle(q, 3, max_degree),
        composition_oracle(gf2, 3, max_degree),
        round_trip(q, 200, max_degree, seed),
        round_trip(gf3, 100, max_degree, seed),
        type_a_source_ranks(gf2, max_degree),
        type_a_factorizations(q, max_degree),
        type_a_factorizations(gf2, max_degree),
        char2_forms(&char2_degrees, 50, false, seed),
    ]
}
