//! Supernatural (Steinitz) numbers: formal products of primes with exponents
//! in `{0, 1, 2, …, ∞}`, stored as a finite exponent map plus a set of primes
//! carrying an infinite exponent.

mod criterion;
pub mod primes;

pub use criterion::{
    agreement_check, product_divisibility_criterion, AgreementReport, CriterionError, EventuallyPeriodic,
};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SupernatError {
    #[error("expected a positive integer, got {0}")]
    NonPositive(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime key {0} exceeds the 64-bit range")]
    PrimeTooLarge(String),
    #[error("cofactor {0} cannot be factored with the 64-bit method")]
    Unfactorable(BigUint),
    #[error("ratio must be positive, got {0}")]
    NonPositiveRatio(String),
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("prime {0} has both a finite and an infinite exponent")]
    Overlap(u64),
    #[error("prime {0} has exponent zero")]
    ZeroExponent(u64),
    #[error("malformed supernatural number {0:?}")]
    Parse(String),
}

/// Exponent of a single prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Supernatural {
    finite: BTreeMap<u64, u64>,
    infinite: BTreeSet<u64>,
}

impl Supernatural {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a value from raw parts, validating primality, disjointness and
    /// nonzero exponents.
    pub fn from_parts(
        finite: BTreeMap<u64, u64>,
        infinite: BTreeSet<u64>,
    ) -> Result<Self, SupernatError> {
        for (&p, &e) in &finite {
            if !primes::is_prime(p) {
                return Err(SupernatError::NotPrime(p));
            }
            if e == 0 {
                return Err(SupernatError::ZeroExponent(p));
            }
            if infinite.contains(&p) {
                return Err(SupernatError::Overlap(p));
            }
        }
        if let Some(&p) = infinite.iter().find(|&&p| !primes::is_prime(p)) {
            return Err(SupernatError::NotPrime(p));
        }
        Ok(Self { finite, infinite })
    }

    pub fn from_factored_integer(n: &BigInt) -> Result<Self, SupernatError> {
        if !n.is_positive() {
            return Err(SupernatError::NonPositive(n.to_string()));
        }
        let n = n.magnitude();
        let finite = primes::factor_biguint(n).map_err(SupernatError::Unfactorable)?;
        Ok(Self { finite, infinite: BTreeSet::new() })
    }

    pub fn from_u64(n: u64) -> Result<Self, SupernatError> {
        Self::from_factored_integer(&BigInt::from(n))
    }

    /// `Π` of an eventually periodic sequence: primes of the period become
    /// infinite, every other prime keeps the exponent accumulated in the prefix.
    pub fn from_eventually_periodic_product(
        prefix: &[u64],
        period: &[u64],
    ) -> Result<Self, SupernatError> {
        if period.is_empty() {
            return Err(SupernatError::EmptyPeriod);
        }
        if let Some(&bad) = prefix.iter().chain(period).find(|&&v| v == 0) {
            return Err(SupernatError::NonPositive(bad.to_string()));
        }
        let infinite: BTreeSet<u64> = period
            .iter()
            .flat_map(|&v| primes::factor_u64(v).into_keys())
            .collect();
        let mut finite = BTreeMap::new();
        for &v in prefix {
            for (p, e) in primes::factor_u64(v) {
                if !infinite.contains(&p) {
                    *finite.entry(p).or_insert(0) += e;
                }
            }
        }
        Ok(Self { finite, infinite })
    }

    pub fn finite_exponents(&self) -> &BTreeMap<u64, u64> {
        &self.finite
    }

    pub fn infinite_primes(&self) -> &BTreeSet<u64> {
        &self.infinite
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        if self.infinite.contains(&p) {
            Exponent::Infinite
        } else {
            Exponent::Finite(self.finite.get(&p).copied().unwrap_or(0))
        }
    }

    pub fn is_one(&self) -> bool {
        self.finite.is_empty() && self.infinite.is_empty()
    }

    /// True when `p^∞` divides the number.
    pub fn has_infinite(&self, p: u64) -> bool {
        self.infinite.contains(&p)
    }

    /// The value as an ordinary integer when every exponent is finite.
    pub fn to_integer(&self) -> Option<BigUint> {
        if !self.infinite.is_empty() {
            return None;
        }
        Some(
            self.finite
                .iter()
                .map(|(&p, &e)| BigUint::from(p).pow(e as u32))
                .product(),
        )
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let infinite: BTreeSet<u64> = self.infinite.union(&other.infinite).copied().collect();
        let mut finite = BTreeMap::new();
        for (&p, &e) in self.finite.iter().chain(&other.finite) {
            if !infinite.contains(&p) {
                *finite.entry(p).or_insert(0) += e;
            }
        }
        Self { finite, infinite }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.infinite.iter().all(|p| other.infinite.contains(p))
            && self
                .finite
                .iter()
                .all(|(&p, &e)| other.exponent(p) >= Exponent::Finite(e))
    }

    /// Decides `self = q · other`, i.e. `n·self = m·other` for `q = m/n`.
    ///
    /// No factorization of `m` or `n` is needed: strip the primes of both
    /// supports, and the leftover cofactors must be 1 because a prime outside
    /// both supports would appear on exactly one side.
    pub fn rational_ratio_member(
        q: &BigRational,
        a: &Self,
        b: &Self,
    ) -> Result<bool, SupernatError> {
        if !q.is_positive() {
            return Err(SupernatError::NonPositiveRatio(crate::exact::format_rational(q)));
        }
        let mut m = q.numer().magnitude().clone();
        let mut n = q.denom().magnitude().clone();
        let support: BTreeSet<u64> = a.support().chain(b.support()).collect();
        for p in support {
            let (em, rest_m) = primes::strip_prime(&m, p);
            let (en, rest_n) = primes::strip_prime(&n, p);
            m = rest_m;
            n = rest_n;
            let ok = match (a.exponent(p), b.exponent(p)) {
                (Exponent::Infinite, Exponent::Infinite) => true,
                (Exponent::Finite(ea), Exponent::Finite(eb)) => en + ea == em + eb,
                _ => false,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(m.is_one() && n.is_one())
    }

    /// Two numbers are Q-equivalent iff their infinite-prime sets agree; the
    /// finite parts always differ at only finitely many primes.
    pub fn q_equivalent(a: &Self, b: &Self) -> bool {
        a.infinite == b.infinite
    }

    /// A positive rational `q` with `a = q·b`, if one exists. The witness is
    /// the product of finite-exponent discrepancies.
    pub fn ratio_witness(a: &Self, b: &Self) -> Option<BigRational> {
        if !Self::q_equivalent(a, b) {
            return None;
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        let primes: BTreeSet<u64> = a.finite.keys().chain(b.finite.keys()).copied().collect();
        for p in primes {
            let ea = a.finite.get(&p).copied().unwrap_or(0);
            let eb = b.finite.get(&p).copied().unwrap_or(0);
            if ea > eb {
                num *= BigUint::from(p).pow((ea - eb) as u32);
            } else if eb > ea {
                den *= BigUint::from(p).pow((eb - ea) as u32);
            }
        }
        Some(BigRational::new(num.into(), den.into()))
    }

    fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.finite.keys().chain(self.infinite.iter()).copied()
    }
}

impl fmt::Display for Supernatural {
    /// Renders `2^inf * 3^2 * 5`, primes ascending; `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut primes: Vec<u64> = self.support().collect();
        primes.sort_unstable();
        let parts: Vec<String> = primes
            .into_iter()
            .map(|p| match self.exponent(p) {
                Exponent::Infinite => format!("{p}^inf"),
                Exponent::Finite(1) => p.to_string(),
                Exponent::Finite(e) => format!("{p}^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

impl FromStr for Supernatural {
    type Err = SupernatError;

    /// Parses the text form. Repeated primes multiply; bare integers are
    /// accepted as factors and factored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SupernatError::Parse(s.to_string());
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad());
        }
        let mut acc = Supernatural::one();
        for factor in trimmed.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b.trim(), Some(e.trim())),
                None => (factor, None),
            };
            let base: u64 = base.parse().map_err(|_| bad())?;
            let term = match exp {
                Some(e) if e.eq_ignore_ascii_case("inf") => {
                    if !primes::is_prime(base) {
                        return Err(SupernatError::NotPrime(base));
                    }
                    Supernatural { finite: BTreeMap::new(), infinite: BTreeSet::from([base]) }
                }
                Some(e) => {
                    let e: u32 = e.parse().map_err(|_| bad())?;
                    let n = BigInt::from(base).pow(e);
                    Supernatural::from_factored_integer(&n)?
                }
                None => Supernatural::from_u64(base)?,
            };
            acc = acc.multiply(&term);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonForm {
    #[serde(default)]
    finite: BTreeMap<String, u64>,
    #[serde(default)]
    infinite: Vec<u64>,
}

impl Serialize for Supernatural {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonForm {
            finite: self.finite.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
            infinite: self.infinite.iter().copied().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Supernatural {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Json(JsonForm),
        }
        use serde::de::Error;
        match Repr::deserialize(d)? {
            Repr::Text(t) => t.parse().map_err(D::Error::custom),
            Repr::Json(j) => {
                let mut finite = BTreeMap::new();
                for (k, e) in j.finite {
                    let p: BigUint = k
                        .trim()
                        .parse()
                        .map_err(|_| D::Error::custom(format!("bad prime key {k:?}")))?;
                    let p = p
                        .to_u64()
                        .ok_or_else(|| D::Error::custom(SupernatError::PrimeTooLarge(k.clone())))?;
                    finite.insert(p, e);
                }
                // Zero exponents mean absence; drop them rather than reject.
                finite.retain(|_, e| !e.is_zero());
                Supernatural::from_parts(finite, j.infinite.into_iter().collect())
                    .map_err(D::Error::custom)
            }
        }
    }
}
