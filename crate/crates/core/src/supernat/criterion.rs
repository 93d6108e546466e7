//! Bounded two-sided divisibility test on partial products.
//!
//! `q ∈ Π(S)/Π(S')` holds iff every partial product `s_1⋯s_i` divides some
//! `q·s'_1⋯s'_j` and every `q·s'_1⋯s'_k` divides some `s_1⋯s_l`. This module
//! checks those statements for `i, k ≤ horizon` by direct search over
//! integers. It works on the raw sequences and never builds exponent maps,
//! which makes it usable as an oracle for [`Supernatural::rational_ratio_member`].
//!
//! [`Supernatural::rational_ratio_member`]: super::Supernatural::rational_ratio_member

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Factor by which the witness search may run past the horizon.
const SEARCH_STRETCH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub prefix: Vec<u64>,
    pub period: Vec<u64>,
}

impl EventuallyPeriodic {
    pub fn new(prefix: Vec<u64>, period: Vec<u64>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        Self { prefix, period }
    }

    /// The 1-based term `s_i`.
    pub fn term(&self, i: usize) -> u64 {
        assert!(i >= 1);
        let k = i - 1;
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.period[(k - self.prefix.len()) % self.period.len()]
        }
    }

    fn period_product(&self) -> BigUint {
        self.period.iter().map(|&v| BigUint::from(v)).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriterionError {
    #[error("ratio must be positive")]
    NonPositiveRatio,
    #[error("no witness index found within the search limit {0}")]
    HorizonExhausted(usize),
}

/// One direction of the criterion: for each `i ≤ horizon`, look for `j` with
/// `num·P_i | den·P'_j`. Returns `Ok(false)` when some `i` provably has no
/// witness: once `j` is past the prefix, the leftover part of `num·P_i` must
/// divide a power of the period product of `S'`.
fn one_direction(
    lhs: &EventuallyPeriodic,
    num: &BigUint,
    rhs: &EventuallyPeriodic,
    den: &BigUint,
    horizon: usize,
) -> Result<bool, CriterionError> {
    let limit = horizon.max(1) * SEARCH_STRETCH + rhs.prefix.len();
    let rhs_period = rhs.period_product();
    let mut target = num.clone();
    let mut partial = den.clone();
    let mut j = 0usize;
    for i in 1..=horizon {
        target *= lhs.term(i);
        loop {
            if (&partial % &target).is_zero() {
                break;
            }
            if j >= rhs.prefix.len() && !divides_power_of(&residual(&target, &partial), &rhs_period) {
                return Ok(false);
            }
            if j >= limit {
                return Err(CriterionError::HorizonExhausted(limit));
            }
            j += 1;
            partial *= rhs.term(j);
        }
    }
    Ok(true)
}

fn residual(target: &BigUint, partial: &BigUint) -> BigUint {
    target / target.gcd(partial)
}

/// True iff every prime of `r` divides `base`.
fn divides_power_of(r: &BigUint, base: &BigUint) -> bool {
    let mut r = r.clone();
    loop {
        if r.is_one() {
            return true;
        }
        let g = r.gcd(base);
        if g.is_one() {
            return false;
        }
        while (&r % &g).is_zero() {
            r /= &g;
        }
    }
}

/// Checks `q ∈ Π(S)/Π(S')` through partial products up to `horizon`.
///
/// `Ok(true)` means every index up to the horizon found its witness,
/// `Ok(false)` is a proof of failure, and `HorizonExhausted` means the search
/// was cut off before either happened.
pub fn product_divisibility_criterion(
    s: &EventuallyPeriodic,
    s_prime: &EventuallyPeriodic,
    q: &BigRational,
    horizon: usize,
) -> Result<bool, CriterionError> {
    if !q.is_positive() {
        return Err(CriterionError::NonPositiveRatio);
    }
    let m = q.numer().magnitude().clone();
    let n = q.denom().magnitude().clone();
    // s_1⋯s_i | (m/n)·s'_1⋯s'_j  ⇔  n·P_i | m·P'_j
    if !one_direction(s, &n, s_prime, &m, horizon)? {
        return Ok(false);
    }
    // (m/n)·s'_1⋯s'_k | s_1⋯s_l  ⇔  m·P'_k | n·P_l
    one_direction(s_prime, &m, s, &n, horizon)
}

/// Outcome of comparing the bounded criterion with the exact membership
/// test on random instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub instances: usize,
    /// Instances where the bounded criterion reached a verdict.
    pub conclusive: usize,
    pub members: usize,
    /// `(S, S', q)` where the two tests disagree.
    pub disagreements: Vec<(EventuallyPeriodic, EventuallyPeriodic, BigRational)>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn random_sequence<R: Rng>(rng: &mut R, terms: &[u64]) -> EventuallyPeriodic {
    let pick = |rng: &mut R| terms[rng.gen_range(0..terms.len())];
    let prefix = (0..rng.gen_range(0..=2)).map(|_| pick(rng)).collect();
    let period = (0..rng.gen_range(1..=2)).map(|_| pick(rng)).collect();
    EventuallyPeriodic::new(prefix, period)
}

/// Draws `count` instances `(S, S', q)` from small terms and compares
/// [`product_divisibility_criterion`] with
/// [`Supernatural::rational_ratio_member`]. Half of the ratios are built
/// from the exact witness so that members are well represented.
///
/// [`Supernatural::rational_ratio_member`]: super::Supernatural::rational_ratio_member
pub fn agreement_check(count: usize, horizon: usize, seed: u64) -> AgreementReport {
    use super::Supernatural;
    const TERMS: [u64; 9] = [1, 2, 3, 4, 5, 6, 8, 9, 12];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AgreementReport { instances: 0, conclusive: 0, members: 0, disagreements: Vec::new() };
    while report.instances < count {
        let s = random_sequence(&mut rng, &TERMS);
        let t = if rng.gen_bool(0.5) {
            // Same infinite primes with a reshuffled prefix.
            let mut t = random_sequence(&mut rng, &TERMS);
            t.period = s.period.iter().rev().cloned().collect();
            t
        } else {
            random_sequence(&mut rng, &TERMS)
        };
        let a = Supernatural::from_eventually_periodic_product(&s.prefix, &s.period).expect("positive terms");
        let b = Supernatural::from_eventually_periodic_product(&t.prefix, &t.period).expect("positive terms");
        let small = |rng: &mut ChaCha8Rng| BigInt::from(TERMS[rng.gen_range(1..TERMS.len())]);
        let q = match Supernatural::ratio_witness(&a, &b) {
            Some(w) if rng.gen_bool(0.5) => {
                let nudge = BigRational::new(small(&mut rng), small(&mut rng));
                if rng.gen_bool(0.5) { w * nudge } else { w }
            }
            _ => BigRational::new(small(&mut rng), small(&mut rng)),
        };
        report.instances += 1;
        let exact = Supernatural::rational_ratio_member(&q, &a, &b).expect("positive ratio");
        report.members += usize::from(exact);
        if let Ok(bounded) = product_divisibility_criterion(&s, &t, &q, horizon) {
            report.conclusive += 1;
            if bounded != exact {
                report.disagreements.push((s, t, q));
            }
        }
    }
    report
}
