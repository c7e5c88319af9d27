//! Monomial expansions of Schur elements by summing over semistandard
//! Young tableaux, plus the greedy re-decomposition back into the Schur
//! basis. None of this touches the Littlewood–Richardson code, so it serves
//! as an independent oracle for products, characters and tropical values.
//!
//! Tableaux are enumerated letter by letter: the cells holding entries `≤ m`
//! form a shape `μ ⊆ λ`, and the cells holding `m` form the horizontal strip
//! `λ/μ`, so a tableau is a chain of interlacing shapes.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{self, Rational};
use crate::schur::SchurElement;

pub type Exponent = Vec<u32>;

/// A symmetric polynomial `Σ p_α x^α` with natural coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialExpansion {
    n: usize,
    terms: BTreeMap<Exponent, BigUint>,
}

impl MonomialExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigUint> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &[u32]) -> BigUint {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    /// Ordinary polynomial multiplication.
    pub fn product(&self, other: &MonomialExpansion) -> Result<MonomialExpansion> {
        if self.n != other.n {
            return Err(Error::VariableMismatch { left: self.n, right: other.n });
        }
        let mut terms: BTreeMap<Exponent, BigUint> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_default() += ca * cb;
            }
        }
        Ok(MonomialExpansion { n: self.n, terms })
    }

    /// Greedy re-decomposition: repeatedly strip the lex-greatest monomial
    /// `x^λ` together with `p_λ · s_λ`. Fails when the polynomial is not
    /// Schur positive or not symmetric.
    pub fn to_schur(&self) -> Result<SchurElement> {
        let mut rest: BTreeMap<Exponent, BigInt> =
            self.terms.iter().map(|(e, c)| (e.clone(), BigInt::from(c.clone()))).collect();
        let mut out = Vec::new();
        while let Some((alpha, c)) = rest.iter().next_back().map(|(a, c)| (a.clone(), c.clone())) {
            if c.is_negative() {
                return Err(Error::Inconsistency(format!("negative Schur coefficient at {alpha:?}")));
            }
            let lambda = Partition::from_padded(alpha.clone())
                .map_err(|_| Error::Inconsistency(format!("leading exponent {alpha:?} is not a partition")))?;
            let c = c.to_biguint().expect("checked nonnegative");
            for (beta, k) in schur_monomials(&lambda, self.n).iter() {
                let entry = rest.entry(beta.clone()).or_default();
                *entry -= BigInt::from(k * &c);
                if entry.is_zero() {
                    rest.remove(beta);
                }
            }
            out.push((lambda, c));
        }
        SchurElement::from_terms(self.n, out)
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (alpha, c) in &self.terms {
            let mut term = rational::from_biguint(c);
            for (xi, &a) in x.iter().zip(alpha) {
                term *= num_traits::pow(xi.clone(), a as usize);
            }
            total += term;
        }
        total
    }

    /// `max ⟨α, y⟩` over the support; `None` for the zero polynomial.
    pub fn support_max(&self, y: &[Rational]) -> Option<Rational> {
        self.terms
            .keys()
            .map(|alpha| {
                alpha
                    .iter()
                    .zip(y)
                    .fold(Rational::zero(), |acc, (&a, yi)| acc + rational::int(a as i64) * yi)
            })
            .max()
    }
}

/// Shapes `μ` with `λ/μ` a horizontal strip and at most `m − 1` rows, where
/// `λ` has at most `m` rows.
pub fn interlacing(lambda: &Partition, m: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut cur = Vec::with_capacity(m - 1);
    fn rec(lambda: &Partition, m: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let i = cur.len();
        if i == m - 1 {
            out.push(Partition::from_padded(cur.clone()).expect("interlacing shapes are partitions"));
            return;
        }
        for v in lambda.part(i + 1)..=lambda.part(i) {
            cur.push(v);
            rec(lambda, m, cur, out);
            cur.pop();
        }
    }
    rec(lambda, m, &mut cur, &mut out);
    out
}

/// Monomial expansion of `s_λ` in `n` variables (empty when `ℓ(λ) > n`).
pub fn schur_monomials(lambda: &Partition, n: usize) -> BTreeMap<Exponent, BigUint> {
    let mut memo = HashMap::new();
    expand(lambda, n, &mut memo)
}

fn expand(
    lambda: &Partition,
    m: usize,
    memo: &mut HashMap<(Partition, usize), BTreeMap<Exponent, BigUint>>,
) -> BTreeMap<Exponent, BigUint> {
    if lambda.len() > m {
        return BTreeMap::new();
    }
    if m == 0 {
        return BTreeMap::from([(Vec::new(), BigUint::from(1u32))]);
    }
    if let Some(hit) = memo.get(&(lambda.clone(), m)) {
        return hit.clone();
    }
    let mut out: BTreeMap<Exponent, BigUint> = BTreeMap::new();
    for mu in interlacing(lambda, m) {
        let strip = lambda.size() - mu.size();
        for (alpha, c) in expand(&mu, m - 1, memo) {
            let mut e = alpha;
            e.push(strip);
            *out.entry(e).or_default() += c;
        }
    }
    memo.insert((lambda.clone(), m), out.clone());
    out
}

/// Number of semistandard tableaux of shape `λ` with entries in `1..=n`.
pub fn ssyt_count(lambda: &Partition, n: usize) -> BigUint {
    let mut memo = HashMap::new();
    count(lambda, n, &mut memo)
}

fn count(lambda: &Partition, m: usize, memo: &mut HashMap<(Partition, usize), BigUint>) -> BigUint {
    if lambda.len() > m {
        return BigUint::zero();
    }
    if m == 0 || lambda.is_empty() {
        return BigUint::from(1u32);
    }
    if let Some(hit) = memo.get(&(lambda.clone(), m)) {
        return hit.clone();
    }
    let total = interlacing(lambda, m).iter().map(|mu| count(mu, m - 1, memo)).sum::<BigUint>();
    memo.insert((lambda.clone(), m), total.clone());
    total
}

pub fn monomial_expansion(f: &SchurElement) -> MonomialExpansion {
    let mut terms: BTreeMap<Exponent, BigUint> = BTreeMap::new();
    for (lambda, c) in f.terms() {
        for (alpha, k) in schur_monomials(lambda, f.n()) {
            *terms.entry(alpha).or_default() += k * c;
        }
    }
    MonomialExpansion { n: f.n(), terms }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn big(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn expansion_examples() {
        let f = SchurElement::schur(p(&[2, 1]), 2).unwrap();
        let m = monomial_expansion(&f);
        assert_eq!(m.terms(), &BTreeMap::from([(vec![2, 1], big(1)), (vec![1, 2], big(1))]));

        let m = monomial_expansion(&SchurElement::schur(p(&[1]), 2).unwrap());
        assert_eq!(m.terms(), &BTreeMap::from([(vec![1, 0], big(1)), (vec![0, 1], big(1))]));

        let m = monomial_expansion(&SchurElement::one(3));
        assert_eq!(m.terms(), &BTreeMap::from([(vec![0, 0, 0], big(1))]));
    }

    #[test]
    fn too_long_shape_vanishes() {
        assert!(schur_monomials(&p(&[1, 1, 1]), 2).is_empty());
        assert!(ssyt_count(&p(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn counts_match_expansion_totals() {
        for n in 1..=4 {
            for l in crate::partition::partitions_up_to(6, n) {
                let total: BigUint = schur_monomials(&l, n).values().sum();
                assert_eq!(total, ssyt_count(&l, n), "{l} n={n}");
            }
        }
        assert_eq!(ssyt_count(&p(&[2, 1]), 3), big(8));
    }

    #[test]
    fn redecomposition_round_trip() {
        let f = SchurElement::from_terms(3, vec![(p(&[2, 1]), big(2)), (p(&[3]), big(1)), (p(&[]), big(4))]).unwrap();
        assert_eq!(monomial_expansion(&f).to_schur().unwrap(), f);
    }

    #[test]
    fn redecomposition_rejects_non_schur_positive() {
        // x1^2 + x2^2 = s_(2) - s_(1,1)
        let m = MonomialExpansion {
            n: 2,
            terms: BTreeMap::from([(vec![2, 0], big(1)), (vec![0, 2], big(1))]),
        };
        assert!(m.to_schur().is_err());
    }
}
