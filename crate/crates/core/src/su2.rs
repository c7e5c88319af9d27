//! `SU(2)`: multiplicity maps, the character difference as an integer
//! polynomial in `t = e^α`, and exact positivity certificates on `[1, ∞)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{self, Rational};
use crate::repn::Representation;

/// Irrep dimension `d ≥ 1` to multiplicity; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityMap {
    mult: BTreeMap<u64, BigUint>,
}

impl MultiplicityMap {
    pub fn new(entries: impl IntoIterator<Item = (u64, BigUint)>) -> Result<MultiplicityMap> {
        let mut mult = BTreeMap::new();
        for (d, m) in entries {
            if d == 0 {
                return Err(Error::InvalidDimension(d));
            }
            if !m.is_zero() {
                *mult.entry(d).or_insert_with(BigUint::zero) += m;
            }
        }
        Ok(MultiplicityMap { mult })
    }

    pub fn get(&self, d: u64) -> BigUint {
        self.mult.get(&d).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<u64, BigUint> {
        &self.mult
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn max_dimension(&self) -> Option<u64> {
        self.mult.keys().next_back().copied()
    }

    pub fn to_representation(&self) -> Representation {
        let terms = self.mult.iter().map(|(&d, m)| (Partition::row((d - 1) as u32), m.clone()));
        Representation::from_terms(2, terms).expect("rows fit in two variables")
    }
}

pub fn from_representation(rho: &Representation) -> Result<MultiplicityMap> {
    if rho.n() != 2 {
        return Err(Error::NotSu2(rho.n()));
    }
    MultiplicityMap::new(rho.terms().iter().map(|(l, m)| (l.first() as u64 + 1, m.clone())))
}

/// Dense integer polynomial, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    #[serde(serialize_with = "ser_coeffs")]
    coeffs: Vec<BigInt>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(c.len()))?;
    for v in c {
        let num: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&num)?;
    }
    seq.end()
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    fn to_q(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial used for Euclidean steps.
#[derive(Clone, Debug)]
struct QPoly(Vec<Rational>);

impl QPoly {
    fn new(mut c: Vec<Rational>) -> QPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dl = d.0.last().expect("division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (QPoly(Vec::new()), QPoly::new(r));
        }
        let mut q = vec![Rational::zero(); r.len() - d.0.len() + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + d.0.len() - 1] / dl;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.truncate(d.0.len() - 1);
        (QPoly::new(q), QPoly::new(r))
    }

    /// Positive rescaling to coprime integer coefficients; signs are kept.
    fn primitive(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        QPoly(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    fn derivative(&self) -> QPoly {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * rational::int(i as i64)).collect())
    }

    fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.primitive();
            a = b;
            b = r;
        }
        a
    }
}

/// `t^D (χ_σ(t) − χ_ρ(t))` with `D` the largest supported dimension minus one.
pub fn char_diff_polynomial(m_rho: &MultiplicityMap, m_sigma: &MultiplicityMap) -> IntPolynomial {
    let top = m_rho.max_dimension().into_iter().chain(m_sigma.max_dimension()).max();
    let Some(top) = top else {
        return IntPolynomial::new(Vec::new());
    };
    let dd = (top - 1) as usize;
    let mut coeffs = vec![BigInt::zero(); 2 * dd + 1];
    for (map, sign) in [(m_sigma, 1), (m_rho, -1)] {
        for (&d, m) in map.entries() {
            let m = BigInt::from(m.clone()) * sign;
            let d = d as usize;
            // t^{d−1−2j} shifted by D
            for j in 0..d {
                coeffs[dd + d - 1 - 2 * j] += &m;
            }
        }
    }
    IntPolynomial::new(coeffs)
}

/// Strict tropical comparison of the top dimensions.
pub fn su2_tropical_check(m_rho: &MultiplicityMap, m_sigma: &MultiplicityMap) -> Result<bool> {
    match (m_rho.max_dimension(), m_sigma.max_dimension()) {
        (Some(a), Some(b)) => Ok(a < b),
        _ => Err(Error::ZeroRepresentation),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `g > 0` on all of `[1, ∞)`.
    Certified,
    /// A rational `t ≥ 1` with `g(t) ≤ 0`.
    NotPositive { witness: Rational },
    /// `g ≥ 0` on `[1, ∞)` but it vanishes at an irrational point of
    /// `(lo, hi]`, so no rational witness exists.
    TouchesZero { lo: Rational, hi: Rational },
    ZeroPolynomial,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certificate::Certified => "certified",
            Certificate::NotPositive { .. } => "not_positive",
            Certificate::TouchesZero { .. } => "touches_zero",
            Certificate::ZeroPolynomial => "zero_polynomial",
        }
    }
}

/// Sturm chain with positive content removal at every step.
pub struct SturmSequence {
    chain: Vec<QPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> SturmSequence {
        let mut chain = vec![p.to_q().primitive()];
        if chain[0].is_zero() {
            return SturmSequence { chain };
        }
        let d = chain[0].derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let k = chain.len();
            let r = chain[k - 2].div_rem(&chain[k - 1]).1;
            if r.is_zero() {
                break;
            }
            let neg = QPoly(r.0.into_iter().map(|c| -c).collect());
            chain.push(neg.primitive());
        }
        SturmSequence { chain }
    }

    pub fn variations(&self, t: &Rational) -> usize {
        let signs: Vec<bool> = self
            .chain
            .iter()
            .map(|p| p.eval(t))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(a, b]`, valid for a square-free chain head
    /// not vanishing at `a`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// `g / gcd(g, g')` as a primitive integer polynomial.
pub fn square_free_part(g: &IntPolynomial) -> IntPolynomial {
    let q = g.to_q();
    if q.is_zero() || q.0.len() == 1 {
        return IntPolynomial::new(q.primitive().0.into_iter().map(|c| c.to_integer()).collect());
    }
    let d = q.gcd(&q.derivative());
    let h = q.div_rem(&d).0.primitive();
    IntPolynomial::new(h.0.into_iter().map(|c| c.to_integer()).collect())
}

/// An integer strictly above every root's absolute value.
pub fn cauchy_bound(g: &IntPolynomial) -> Rational {
    let lc = g.leading().expect("nonzero polynomial").abs();
    let mx = g.coeffs[..g.coeffs.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    (Rational::new(mx, lc) + Rational::one()).ceil() + Rational::one()
}

/// Decides `g(t) > 0` for all `t ≥ 1`.
pub fn certify_strict_positive_on_ray(g: &IntPolynomial) -> Certificate {
    if g.is_zero() {
        return Certificate::ZeroPolynomial;
    }
    let one = Rational::one();
    if !g.eval(&one).is_positive() {
        return Certificate::NotPositive { witness: one };
    }
    let h = square_free_part(g);
    let sturm = SturmSequence::new(&h);
    let bound = cauchy_bound(&h);
    let roots = sturm.count(&one, &bound);
    if roots == 0 {
        if g.leading().is_some_and(Signed::is_positive) {
            return Certificate::Certified;
        }
        // cannot happen: g(1) > 0 with no root beyond 1 forces a positive leading term
        let mut t = bound.clone();
        while g.eval(&t).is_positive() {
            t *= rational::int(2);
        }
        return Certificate::NotPositive { witness: t };
    }

    let mut intervals = Vec::new();
    isolate(&sturm, one, bound, roots, &mut intervals);
    let lc = h.leading().expect("nonzero").abs();
    // rationals with denominators dividing lc are 1/lc² apart
    let width = Rational::new(BigInt::one(), BigInt::from(2) * &lc * &lc);
    let mut first_touch = None;
    for (lo, hi) in intervals {
        let (lo, hi) = refine(&sturm, &h, lo, hi, &width);
        let cand = if h.eval(&hi).is_zero() { hi.clone() } else { rational::simplest_in(&lo, &hi) };
        if g.eval(&cand).is_zero() {
            return Certificate::NotPositive { witness: cand };
        }
        if !g.eval(&hi).is_positive() {
            return Certificate::NotPositive { witness: hi };
        }
        first_touch.get_or_insert((lo, hi));
    }
    let (lo, hi) = first_touch.expect("at least one root was isolated");
    Certificate::TouchesZero { lo, hi }
}

fn isolate(s: &SturmSequence, lo: Rational, hi: Rational, count: usize, out: &mut Vec<(Rational, Rational)>) {
    match count {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = (&lo + &hi) / rational::int(2);
            let left = s.count(&lo, &mid);
            isolate(s, lo, mid.clone(), left, out);
            isolate(s, mid, hi, count - left, out);
        }
    }
}

/// Shrinks `(lo, hi]` around its single root until narrower than `width`;
/// stops early when the root is hit exactly, leaving it at `hi`.
fn refine(s: &SturmSequence, h: &IntPolynomial, mut lo: Rational, mut hi: Rational, width: &Rational) -> (Rational, Rational) {
    while &hi - &lo >= *width && !h.eval(&hi).is_zero() {
        let mid = (&lo + &hi) / rational::int(2);
        if s.count(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}
