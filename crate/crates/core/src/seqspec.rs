//! Triple sequences `(l_i, r_i, z_i)` given as prefix + repeating period,
//! their degrees, and the density/symmetry invariants.

use crate::exact::{self, from_uint};
use crate::supernat::{primes, EventuallyPeriodic, SupernatError, Supernatural};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("triple {0} has l + r = 0")]
    ZeroTriple(usize),
    #[error("type {kind} does not allow r > 0 (triple {index})")]
    PartnerMultiplicity { kind: AlgebraType, index: usize },
    #[error("type S needs even degrees from the second term on; degree n_{index} = {degree} is odd")]
    OddSymplecticDegree { index: usize, degree: BigUint },
    #[error("first_convention requires the first triple to have r = z = 0")]
    FirstConvention,
    #[error("characteristic must be 0 or a prime, got {0}")]
    BadCharacteristic(u64),
    #[error("degree {0} does not fit in 64 bits")]
    DegreeOverflow(BigUint),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error(transparent)]
    Supernat(#[from] SupernatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraType {
    A,
    O,
    S,
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraType::A => "A",
            AlgebraType::O => "O",
            AlgebraType::S => "S",
        })
    }
}

/// Ground field characteristic: 0 or a prime.
pub fn check_characteristic(p: u64) -> Result<u64, SeqError> {
    if p == 0 || primes::is_prime(p) {
        Ok(p)
    } else {
        Err(SeqError::BadCharacteristic(p))
    }
}

/// One embedding step: multiplicities of the natural module, its partner and
/// the trivial module. Always stored with `l ≥ r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub l: u64,
    pub r: u64,
    pub z: u64,
}

impl Triple {
    /// Builds a triple, swapping `l` and `r` when `l < r`; swapping the two
    /// components of a type A target realizes the same limit.
    pub fn new(l: u64, r: u64, z: u64) -> Option<Self> {
        if l + r == 0 {
            return None;
        }
        let (l, r) = if l >= r { (l, r) } else { (r, l) };
        Some(Self { l, r, z })
    }

    pub fn sum(&self) -> u64 {
        self.l + self.r
    }

    pub fn diff(&self) -> u64 {
        self.l - self.r
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.r, self.z)
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.l, self.r, self.z].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [l, r, z] = <[u64; 3]>::deserialize(d)?;
        Triple::new(l, r, z).ok_or_else(|| serde::de::Error::custom("triple with l + r = 0"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TripleSequence {
    prefix: Vec<Triple>,
    period: Vec<Triple>,
    first_convention: bool,
}

#[derive(Deserialize)]
struct RawSequence {
    #[serde(default)]
    prefix: Vec<Triple>,
    period: Vec<Triple>,
    #[serde(default)]
    first_convention: bool,
}

impl<'de> Deserialize<'de> for TripleSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSequence::deserialize(d)?;
        TripleSequence::with_convention(raw.prefix, raw.period, raw.first_convention)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DensityType {
    D1,
    D2,
    D3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryType {
    S1,
    S2,
    S3,
    S4,
}

impl fmt::Display for DensityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TripleSequence {
    pub fn new(prefix: Vec<Triple>, period: Vec<Triple>) -> Result<Self, SeqError> {
        Self::with_convention(prefix, period, false)
    }

    pub fn with_convention(
        prefix: Vec<Triple>,
        period: Vec<Triple>,
        first_convention: bool,
    ) -> Result<Self, SeqError> {
        if period.is_empty() {
            return Err(SeqError::EmptyPeriod);
        }
        if let Some(k) = prefix.iter().chain(&period).position(|t| t.sum() == 0) {
            return Err(SeqError::ZeroTriple(k + 1));
        }
        if first_convention {
            let first = prefix.first().unwrap_or(&period[0]);
            if first.r != 0 || first.z != 0 {
                return Err(SeqError::FirstConvention);
            }
        }
        Ok(Self { prefix, period, first_convention })
    }

    /// Convenience constructor from `(l, r, z)` tuples; panics on `l + r = 0`.
    pub fn from_tuples(prefix: &[(u64, u64, u64)], period: &[(u64, u64, u64)]) -> Self {
        let conv = |v: &[(u64, u64, u64)]| {
            v.iter()
                .map(|&(l, r, z)| Triple::new(l, r, z).expect("l + r must be positive"))
                .collect()
        };
        Self::new(conv(prefix), conv(period)).expect("period must be nonempty")
    }

    pub fn prefix(&self) -> &[Triple] {
        &self.prefix
    }

    pub fn period(&self) -> &[Triple] {
        &self.period
    }

    pub fn first_convention(&self) -> bool {
        self.first_convention
    }

    /// The 1-based triple `(l_i, r_i, z_i)`.
    pub fn triple(&self, i: usize) -> Triple {
        assert!(i >= 1, "triple indices start at 1");
        let k = i - 1;
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.period[(k - self.prefix.len()) % self.period.len()]
        }
    }

    /// Moves one copy of the period into the prefix; the sequence itself is
    /// unchanged.
    pub fn unroll_period(&self) -> Self {
        let mut prefix = self.prefix.clone();
        prefix.extend_from_slice(&self.period);
        Self { prefix, period: self.period.clone(), first_convention: self.first_convention }
    }

    /// `n_1, …, n_k` from `n_1 = 1`, `n_{i+1} = s_i n_i + z_i`.
    pub fn degrees(&self, k: usize) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(k);
        let mut n = BigUint::one();
        for i in 1..=k {
            if i > 1 {
                let t = self.triple(i - 1);
                n = n * t.sum() + t.z;
            }
            out.push(n.clone());
        }
        out
    }

    pub fn sums_and_differences(&self, k: usize) -> (Vec<u64>, Vec<u64>) {
        (1..=k).map(|i| {
            let t = self.triple(i);
            (t.sum(), t.diff())
        })
        .unzip()
    }

    /// `s_i^k = s_i ⋯ s_{k-1}` (empty product when `k ≤ i`).
    pub fn sum_product(&self, i: usize, k: usize) -> BigUint {
        (i..k).map(|m| BigUint::from(self.triple(m).sum())).product()
    }

    /// `c_i^k = c_i ⋯ c_{k-1}`.
    pub fn diff_product(&self, i: usize, k: usize) -> BigUint {
        (i..k).map(|m| BigUint::from(self.triple(m).diff())).product()
    }

    /// Partial density `δ_i = s_1^i / n_i`, for `i ≥ 1`.
    pub fn partial_density(&self, i: usize) -> BigRational {
        let n = self.degrees(i).pop().expect("i >= 1");
        BigRational::new(self.sum_product(1, i).into(), n.into())
    }

    /// Partial symmetry `σ_i = c_1⋯c_i / s_1⋯s_i`.
    pub fn partial_symmetry(&self, i: usize) -> BigRational {
        BigRational::new(self.diff_product(1, i + 1).into(), self.sum_product(1, i + 1).into())
    }

    pub fn sum_sequence(&self) -> EventuallyPeriodic {
        EventuallyPeriodic::new(
            self.prefix.iter().map(Triple::sum).collect(),
            self.period.iter().map(Triple::sum).collect(),
        )
    }

    pub fn diff_sequence(&self) -> EventuallyPeriodic {
        EventuallyPeriodic::new(
            self.prefix.iter().map(Triple::diff).collect(),
            self.period.iter().map(Triple::diff).collect(),
        )
    }

    /// Density type and exact `δ`.
    ///
    /// `n_{i+1}/s_1^{i+1} = n_i/s_1^i + z_i/s_1^{i+1}`, so
    /// `1/δ = 1 + Σ_i z_i / (s_1⋯s_i)`. Over the period the terms form a
    /// geometric series with ratio `1/Q`, `Q` the period sum-product.
    pub fn density_profile(&self) -> (DensityType, BigRational) {
        let mut inv = BigRational::one();
        let mut prod = BigUint::one();
        for t in &self.prefix {
            prod *= t.sum();
            inv += BigRational::new(t.z.into(), prod.clone().into());
        }
        let mut tail = BigRational::zero();
        let mut q = BigUint::one();
        for t in &self.period {
            q *= t.sum();
            tail += BigRational::new(t.z.into(), q.clone().into());
        }
        if tail.is_zero() {
            return (DensityType::D3, inv.recip());
        }
        if q.is_one() {
            return (DensityType::D1, BigRational::zero());
        }
        let q = from_uint(&q);
        inv += tail * &q / (from_uint(&prod) * (&q - BigRational::one()));
        (DensityType::D2, inv.recip())
    }

    /// Symmetry type and `σ` of the sequence as given (no normalization).
    pub fn symmetry_profile(&self) -> (SymmetryType, BigRational) {
        if self.period.iter().all(|t| t.r == 0) {
            let sigma = self
                .prefix
                .iter()
                .map(|t| BigRational::new(t.diff().into(), t.sum().into()))
                .product();
            (SymmetryType::S1, sigma)
        } else if self.period.iter().any(|t| t.l == t.r) {
            (SymmetryType::S2, BigRational::zero())
        } else {
            (SymmetryType::S3, BigRational::zero())
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.period.iter().any(|t| t.l == t.r)
    }

    /// For a non-symmetric sequence, drops every term up to the last one with
    /// `c_i = 0`, replacing them by a single `(n_{i0+1}, 0, 0)` step from
    /// degree 1. The limit algebra is unchanged and every `c_i` becomes
    /// positive. Symmetric sequences and sequences without zero differences
    /// are returned as is.
    pub fn normalize_nonsymmetric(&self) -> Result<Self, SeqError> {
        if self.is_symmetric() {
            return Ok(self.clone());
        }
        let Some(last) = self.prefix.iter().rposition(|t| t.l == t.r) else {
            return Ok(self.clone());
        };
        let cut = last + 1;
        let n = self.degrees(cut + 1).pop().expect("nonempty");
        let n64 = n.to_u64().ok_or(SeqError::DegreeOverflow(n))?;
        let mut prefix = vec![Triple { l: n64, r: 0, z: 0 }];
        prefix.extend_from_slice(&self.prefix[cut..]);
        Self::with_convention(prefix, self.period.clone(), true)
    }

    /// Rejects sequences that cannot present an algebra of type `kind`.
    pub fn validate_for(&self, kind: AlgebraType) -> Result<(), SeqError> {
        if kind != AlgebraType::A {
            if let Some(k) = self.prefix.iter().chain(&self.period).position(|t| t.r > 0) {
                return Err(SeqError::PartnerMultiplicity { kind, index: k + 1 });
            }
        }
        if kind == AlgebraType::S {
            // n_1 = 1 is a placeholder; every later degree must be even, which
            // holds iff n_2 is even and z_i is even for i ≥ 2.
            let first = self.triple(1);
            let n2 = first.sum() + first.z;
            if n2 % 2 == 1 {
                return Err(SeqError::OddSymplecticDegree { index: 2, degree: n2.into() });
            }
            let span = self.prefix.len() + self.period.len();
            for i in 2..=span + 1 {
                if self.triple(i).z % 2 == 1 {
                    let degree = self.degrees(i + 1).pop().expect("nonempty");
                    return Err(SeqError::OddSymplecticDegree { index: i + 1, degree });
                }
            }
        }
        Ok(())
    }

    /// The sequence on which invariants and certificates are computed for an
    /// algebra of type `kind`.
    pub fn prepared_for(&self, kind: AlgebraType) -> Result<Self, SeqError> {
        self.validate_for(kind)?;
        if kind == AlgebraType::A {
            self.normalize_nonsymmetric()
        } else {
            Ok(self.clone())
        }
    }

    pub fn invariant_profile(
        &self,
        kind: AlgebraType,
        characteristic: u64,
    ) -> Result<InvariantProfile, SeqError> {
        check_characteristic(characteristic)?;
        let seq = self.prepared_for(kind)?;
        let (density_type, delta) = seq.density_profile();
        let s = seq.sum_sequence();
        let pi_s = Supernatural::from_eventually_periodic_product(&s.prefix, &s.period)?;
        let (symmetry_type, sigma, pi_c) = if kind == AlgebraType::A {
            let (sym, sigma) = seq.symmetry_profile();
            let pi_c = if sym == SymmetryType::S2 {
                None
            } else {
                let c = seq.diff_sequence();
                Some(Supernatural::from_eventually_periodic_product(&c.prefix, &c.period)?)
            };
            (Some(sym), Some(Sigma::Exact(sigma)), pi_c)
        } else {
            (None, None, None)
        };
        Ok(InvariantProfile {
            algebra_type: kind,
            characteristic,
            density_type,
            symmetry_type,
            delta,
            sigma,
            pi_s,
            pi_c,
        })
    }
}

/// Symmetry index: an exact rational, or a named limit that is only known to
/// be nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sigma {
    Exact(BigRational),
    Opaque(String),
}

impl Serialize for Sigma {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct OpaqueForm<'a> {
            opaque: &'a str,
        }
        match self {
            Sigma::Exact(q) => exact::serialize(q, s),
            Sigma::Opaque(name) => OpaqueForm { opaque: name }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Sigma {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
            Opaque { opaque: String },
        }
        Ok(match Repr::deserialize(d)? {
            Repr::Text(t) => {
                Sigma::Exact(exact::parse_rational(&t).map_err(serde::de::Error::custom)?)
            }
            Repr::Int(i) => Sigma::Exact(BigRational::from_integer(i.into())),
            Repr::Opaque { opaque } => Sigma::Opaque(opaque),
        })
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Exact(q) => f.write_str(&exact::format_rational(q)),
            Sigma::Opaque(name) => write!(f, "<{name}>"),
        }
    }
}

/// The complete classification tuple of a presented algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantProfile {
    #[serde(alias = "type")]
    pub algebra_type: AlgebraType,
    #[serde(alias = "char", default)]
    pub characteristic: u64,
    pub density_type: DensityType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_type: Option<SymmetryType>,
    #[serde(with = "exact")]
    pub delta: BigRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Sigma>,
    pub pi_s: Supernatural,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_c: Option<Supernatural>,
}

impl InvariantProfile {
    /// Checks the internal consistency rules a user-supplied profile must meet.
    pub fn validate(&self) -> Result<(), SeqError> {
        let bad = |m: &str| Err(SeqError::InvalidProfile(m.to_string()));
        check_characteristic(self.characteristic)?;
        let zero = BigRational::zero();
        let one = BigRational::one();
        if self.delta < zero || self.delta > one {
            return bad("delta must lie in [0, 1]");
        }
        if (self.density_type == DensityType::D1) != self.delta.is_zero() {
            return bad("density type D1 must coincide with delta = 0");
        }
        match (self.algebra_type, self.symmetry_type) {
            (AlgebraType::A, None) => return bad("type A profiles need a symmetry type"),
            (AlgebraType::O | AlgebraType::S, Some(_)) => {
                return bad("symmetry type is only defined for type A")
            }
            _ => {}
        }
        if let Some(Sigma::Exact(s)) = &self.sigma {
            if s.is_negative() || *s > one {
                return bad("sigma must lie in [0, 1]");
            }
        }
        if let Some(sym) = self.symmetry_type {
            let sigma = self.sigma.as_ref();
            let sigma_zero = matches!(sigma, Some(Sigma::Exact(s)) if s.is_zero());
            if matches!(sigma, Some(Sigma::Opaque(_))) && sym != SymmetryType::S4 {
                return bad("an opaque sigma is only allowed for type S4");
            }
            match sym {
                SymmetryType::S1 | SymmetryType::S4 if sigma.is_none() || sigma_zero => {
                    return bad("types S1 and S4 need a nonzero sigma")
                }
                SymmetryType::S3 if !sigma_zero && sigma.is_some() => {
                    return bad("type S3 has sigma = 0")
                }
                _ => {}
            }
            if sym != SymmetryType::S2 && self.pi_c.is_none() {
                return bad("non-symmetric profiles need pi_c");
            }
        }
        Ok(())
    }
}

/// One algebra in an input document: a presented sequence or a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecEntry {
    Profile {
        profile: InvariantProfile,
    },
    Presented {
        #[serde(rename = "type")]
        algebra_type: AlgebraType,
        #[serde(rename = "char", default)]
        characteristic: u64,
        #[serde(flatten)]
        sequence: TripleSequence,
    },
}

impl SpecEntry {
    pub fn algebra_type(&self) -> AlgebraType {
        match self {
            SpecEntry::Profile { profile } => profile.algebra_type,
            SpecEntry::Presented { algebra_type, .. } => *algebra_type,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            SpecEntry::Profile { profile } => profile.characteristic,
            SpecEntry::Presented { characteristic, .. } => *characteristic,
        }
    }

    pub fn sequence(&self) -> Option<&TripleSequence> {
        match self {
            SpecEntry::Profile { .. } => None,
            SpecEntry::Presented { sequence, .. } => Some(sequence),
        }
    }

    pub fn profile(&self) -> Result<InvariantProfile, SeqError> {
        match self {
            SpecEntry::Profile { profile } => {
                profile.validate()?;
                Ok(profile.clone())
            }
            SpecEntry::Presented { algebra_type, characteristic, sequence } => {
                sequence.invariant_profile(*algebra_type, *characteristic)
            }
        }
    }
}
