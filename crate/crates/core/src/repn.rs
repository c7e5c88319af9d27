//! Representations of `SL(n, ℂ)` as the quotient `Schur_n / (e_n ∼ 1)`.
//!
//! Every value is kept in canonical form: all highest weights have at most
//! `n − 1` rows. Canonical representatives are unique, so containment is
//! the coefficientwise order on them.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial;
use crate::partition::Partition;
use crate::schur::SchurElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    element: SchurElement,
}

impl Representation {
    /// Reduces every key modulo full columns and merges collisions.
    pub fn canonicalize(f: &SchurElement) -> Result<Representation> {
        Ok(Self::canonicalize_reporting(f)?.0)
    }

    /// Like [`canonicalize`](Self::canonicalize), also reporting whether the
    /// input was already canonical.
    pub fn canonicalize_reporting(f: &SchurElement) -> Result<(Representation, bool)> {
        let n = f.n();
        if n < 2 {
            return Err(Error::InvalidVariableCount(n));
        }
        let mut was_canonical = true;
        let mut reduced = Vec::with_capacity(f.terms().len());
        for (lambda, c) in f.terms() {
            if lambda.len() >= n {
                was_canonical = false;
            }
            reduced.push((lambda.reduce_mod_determinant(n)?, c.clone()));
        }
        let element = SchurElement::from_terms(n, reduced)?;
        Ok((Representation { element }, was_canonical))
    }

    pub fn zero(n: usize) -> Result<Representation> {
        Self::canonicalize(&SchurElement::zero(n))
    }

    pub fn trivial(n: usize) -> Result<Representation> {
        Self::canonicalize(&SchurElement::one(n))
    }

    /// The irreducible representation with highest weight `λ`.
    pub fn irrep(lambda: Partition, n: usize) -> Result<Representation> {
        Self::canonicalize(&SchurElement::schur(lambda, n)?)
    }

    pub fn standard(n: usize) -> Result<Representation> {
        Self::irrep(Partition::row(1), n)
    }

    /// `u = 1 + e_1`, trivial plus standard.
    pub fn power_universal(n: usize) -> Result<Representation> {
        Self::trivial(n)?.direct_sum(&Self::standard(n)?)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Partition, BigUint)>) -> Result<Representation> {
        Self::canonicalize(&SchurElement::from_terms(n, terms)?)
    }

    pub fn n(&self) -> usize {
        self.element.n()
    }

    pub fn element(&self) -> &SchurElement {
        &self.element
    }

    pub fn terms(&self) -> &std::collections::BTreeMap<Partition, BigUint> {
        self.element.terms()
    }

    pub fn mult(&self, lambda: &Partition) -> BigUint {
        self.element.coeff(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        Self::canonicalize(&self.element.multiply(&other.element)?)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        Self::canonicalize(&self.element.add(&other.element)?)
    }

    pub fn tensor_power(&self, k: u32) -> Representation {
        let mut acc = Self::trivial(self.n()).expect("n ≥ 2");
        for _ in 0..k {
            acc = acc.tensor(self).expect("same n");
        }
        acc
    }

    /// `self ↪ other`.
    pub fn is_contained_in(&self, other: &Representation) -> Result<bool> {
        self.element.leq(&other.element)
    }

    /// Sum over components of multiplicity times the number of
    /// semistandard tableaux, i.e. the character at the identity.
    pub fn dimension(&self) -> BigUint {
        self.terms()
            .iter()
            .map(|(lambda, c)| c * monomial::ssyt_count(lambda, self.n()))
            .sum()
    }

    /// Contains both the trivial and the standard representation.
    pub fn is_generic(&self) -> bool {
        !self.mult(&Partition::empty()).is_zero() && !self.mult(&Partition::row(1)).is_zero()
    }

    /// Smallest `k_upper` with `self ↪ u^k_upper` and smallest `k_lower` with
    /// `1 ↪ self ⊗ u^k_lower`, where `u = 1 + e_1`.
    pub fn power_universality_witness(&self) -> Result<PowerUniversalityWitness> {
        if self.is_zero() {
            return Err(Error::ZeroRepresentation);
        }
        let n = self.n();
        let u = Self::power_universal(n)?;
        let trivial = Self::trivial(n)?;

        let upper_bound = self.upper_exponent_bound();
        let lower_bound = self.lower_exponent_bound();

        let mut u_pow = trivial.clone();
        let mut k_upper = None;
        for k in 0..=upper_bound {
            if self.is_contained_in(&u_pow)? {
                k_upper = Some(k);
                break;
            }
            u_pow = u_pow.tensor(&u)?;
        }
        let k_upper = k_upper.ok_or_else(|| {
            Error::Inconsistency(format!("no k ≤ {upper_bound} with ρ ↪ u^k for ρ = {}", self.describe()))
        })?;

        let mut shifted = self.clone();
        let mut k_lower = None;
        for k in 0..=lower_bound {
            if trivial.is_contained_in(&shifted)? {
                k_lower = Some(k);
                break;
            }
            shifted = shifted.tensor(&u)?;
        }
        let k_lower = k_lower.ok_or_else(|| {
            Error::Inconsistency(format!("no k ≤ {lower_bound} with 1 ↪ ρ ⊗ u^k for ρ = {}", self.describe()))
        })?;

        Ok(PowerUniversalityWitness { k_upper, k_lower, upper_bound, lower_bound })
    }

    /// `max |λ| + n·⌈log₂ Σ mult⌉`: each `s_λ ≤ u^|λ|`, and `2 ≤ u^n`
    /// absorbs multiplicities.
    fn upper_exponent_bound(&self) -> u32 {
        let total = self.element.total_multiplicity();
        let log2 = if total <= BigUint::one() { 0 } else { (total - 1u32).bits() as u32 };
        self.element.max_size() + self.n() as u32 * log2
    }

    /// `min over the support of n·λ_1 − |λ|`: filling `λ` to an `n × λ_1`
    /// rectangle one box at a time reaches `e_n^{λ_1} ∼ 1`.
    fn lower_exponent_bound(&self) -> u32 {
        let n = self.n() as u32;
        self.terms().keys().map(|l| n * l.first() - l.size()).min().unwrap_or(0)
    }

    /// Short human-readable form such as `2·s(1) + s(2,1)`.
    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .iter()
            .map(|(l, c)| if c.is_one() { format!("s{l}") } else { format!("{c}·s{l}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerUniversalityWitness {
    pub k_upper: u32,
    pub k_lower: u32,
    pub upper_bound: u32,
    pub lower_bound: u32,
}

/// Weyl's dimension formula `∏_{i<j} (λ_i − λ_j + j − i)/(j − i)`.
pub fn weyl_dimension(lambda: &Partition, n: usize) -> BigUint {
    if lambda.len() > n {
        return BigUint::zero();
    }
    let parts = lambda.padded(n);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigUint::from(parts[i] - parts[j] + (j - i) as u32);
            den *= BigUint::from((j - i) as u32);
        }
    }
    num / den
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.element.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let element = SchurElement::deserialize(d)?;
        Representation::canonicalize(&element).map_err(serde::de::Error::custom)
    }
}
