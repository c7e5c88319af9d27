//! The preordered semiring `Schur_n` of Schur-positive symmetric
//! polynomials in `n` variables, stored in the Schur basis.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::{TermWire, ElementWire};
use crate::lr;
use crate::partition::Partition;

/// A finitely supported `ℕ`-combination `Σ p_λ s_λ` with every `ℓ(λ) ≤ n`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchurElement {
    n: usize,
    terms: BTreeMap<Partition, BigUint>,
}

// products with at least this many term pairs are split across threads
const PARALLEL_PAIRS: usize = 64;

impl SchurElement {
    pub fn zero(n: usize) -> Self {
        SchurElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        SchurElement { n, terms: BTreeMap::from([(Partition::empty(), BigUint::one())]) }
    }

    pub fn schur(lambda: Partition, n: usize) -> Result<Self> {
        Self::from_terms(n, [(lambda, BigUint::one())])
    }

    /// `e_j = s_(1^j)` for `0 ≤ j ≤ n`.
    pub fn elementary(j: usize, n: usize) -> Result<Self> {
        if j > n {
            return Err(Error::ElementaryIndex { j, n });
        }
        Self::schur(Partition::column(j), n)
    }

    /// Merges duplicate keys and drops zero coefficients.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Partition, BigUint)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidVariableCount(n));
        }
        let mut map: BTreeMap<Partition, BigUint> = BTreeMap::new();
        for (lambda, c) in terms {
            if lambda.len() > n {
                return Err(Error::LengthExceeds { length: lambda.len(), n });
            }
            if !c.is_zero() {
                *map.entry(lambda).or_default() += c;
            }
        }
        Ok(SchurElement { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigUint> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, BigUint> {
        self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> BigUint {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|λ|` in the support (0 for the zero element).
    pub fn max_size(&self) -> u32 {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    /// Sum of all coefficients.
    pub fn total_multiplicity(&self) -> BigUint {
        self.terms.values().sum()
    }

    fn check_n(&self, other: &SchurElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_n(other)?;
        let mut terms = self.terms.clone();
        for (lambda, c) in &other.terms {
            *terms.entry(lambda.clone()).or_default() += c;
        }
        Ok(SchurElement { n: self.n, terms })
    }

    pub fn scale(&self, k: &BigUint) -> SchurElement {
        if k.is_zero() {
            return SchurElement::zero(self.n);
        }
        let terms = self.terms.iter().map(|(l, c)| (l.clone(), c * k)).collect();
        SchurElement { n: self.n, terms }
    }

    /// Bilinear extension of `s_μ s_ν = Σ c^λ_{μν} s_λ`, dropping `ℓ(λ) > n`.
    pub fn multiply(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_n(other)?;
        let n = self.n;
        let pairs: Vec<(&Partition, &BigUint, &Partition, &BigUint)> = self
            .terms
            .iter()
            .flat_map(|(mu, a)| other.terms.iter().map(move |(nu, b)| (mu, a, nu, b)))
            .collect();
        let accumulate = |mut acc: BTreeMap<Partition, BigUint>, (mu, a, nu, b): (&Partition, &BigUint, &Partition, &BigUint)| {
            let ab = a * b;
            for (lambda, c) in lr::schur_product(mu, nu, n).iter() {
                *acc.entry(lambda.clone()).or_default() += c * &ab;
            }
            acc
        };
        let terms = if pairs.len() >= PARALLEL_PAIRS {
            pairs
                .into_par_iter()
                .fold(BTreeMap::new, accumulate)
                .reduce(BTreeMap::new, merge)
        } else {
            pairs.into_iter().fold(BTreeMap::new(), accumulate)
        };
        Ok(SchurElement { n, terms })
    }

    /// Coefficientwise order: `self ≤ other` iff `other − self` is Schur positive.
    pub fn leq(&self, other: &SchurElement) -> Result<bool> {
        self.check_n(other)?;
        Ok(self.terms.iter().all(|(lambda, c)| other.terms.get(lambda).is_some_and(|d| c <= d)))
    }

    pub fn power(&self, k: u32) -> SchurElement {
        let mut acc = SchurElement::one(self.n);
        for _ in 0..k {
            acc = acc.multiply(self).expect("same n");
        }
        acc
    }

    /// `s_μ · e_j` by adding `j` boxes in distinct rows.
    pub fn pieri_e(mu: &Partition, j: usize, n: usize) -> Result<SchurElement> {
        if j > n {
            return Err(Error::ElementaryIndex { j, n });
        }
        if mu.len() > n {
            return Err(Error::LengthExceeds { length: mu.len(), n });
        }
        let base = mu.padded(n);
        let mut out = Vec::new();
        let mut chosen = vec![false; n];
        fn rec(base: &[u32], j: usize, row: usize, chosen: &mut Vec<bool>, out: &mut Vec<Partition>) {
            if j == 0 {
                let parts: Vec<u32> = base.iter().zip(chosen.iter()).map(|(&p, &c)| p + c as u32).collect();
                if let Ok(lambda) = Partition::from_padded(parts) {
                    out.push(lambda);
                }
                return;
            }
            if row == base.len() || base.len() - row < j {
                return;
            }
            // a box may go in `row` unless it would overhang the row above
            let allowed = row == 0 || chosen[row - 1] || base[row - 1] > base[row];
            if allowed {
                chosen[row] = true;
                rec(base, j - 1, row + 1, chosen, out);
                chosen[row] = false;
            }
            rec(base, j, row + 1, chosen, out);
        }
        rec(&base, j, 0, &mut chosen, &mut out);
        SchurElement::from_terms(n, out.into_iter().map(|l| (l, BigUint::one())))
    }
}

fn merge(mut a: BTreeMap<Partition, BigUint>, b: BTreeMap<Partition, BigUint>) -> BTreeMap<Partition, BigUint> {
    for (lambda, c) in b {
        *a.entry(lambda).or_default() += c;
    }
    a
}

impl Serialize for SchurElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementWire {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermWire { partition: l.clone(), mult: c.clone().into() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchurElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ElementWire::deserialize(d)?;
        SchurElement::from_terms(wire.n, wire.terms.into_iter().map(|t| (t.partition, t.mult.0)))
            .map_err(serde::de::Error::custom)
    }
}
