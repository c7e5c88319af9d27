//! Tropical evaluations `ψ_y`: maximization of `⟨α, y⟩` over the Newton
//! polytope of a Schur-positive element.
//!
//! On a basis element the maximum is attained by the tableau whose `i`-th
//! row is filled with `i`s once `y` is sorted decreasingly, which gives the
//! closed form `ψ_y(s_λ) = Σ λ_i y↓_i`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{self, Rational};
use crate::repn::Representation;
use crate::schur::SchurElement;

/// An element of the tropical reals `(ℝ ∪ {−∞}, max, +)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropicalValue {
    NegInfinity,
    Finite(Rational),
}

impl TropicalValue {
    /// Tropical addition.
    pub fn max(self, other: TropicalValue) -> TropicalValue {
        std::cmp::max(self, other)
    }

    /// Tropical multiplication.
    pub fn plus(&self, other: &TropicalValue) -> TropicalValue {
        match (self, other) {
            (TropicalValue::Finite(a), TropicalValue::Finite(b)) => TropicalValue::Finite(a + b),
            _ => TropicalValue::NegInfinity,
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropicalValue::Finite(v) => Some(v),
            TropicalValue::NegInfinity => None,
        }
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::NegInfinity => write!(f, "-inf"),
            TropicalValue::Finite(v) => write!(f, "{}", rational::format_rational(v)),
        }
    }
}

impl Serialize for TropicalValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A direction `y ∈ ℚ^n`; `sl_constraint` records `Σ y_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    y: Vec<Rational>,
    sl_constraint: bool,
}

impl Direction {
    pub fn new(y: Vec<Rational>) -> Direction {
        let sl_constraint = y.iter().sum::<Rational>().is_zero();
        Direction { y, sl_constraint }
    }

    /// A direction in the sum-zero hyperplane.
    pub fn sum_zero(y: Vec<Rational>) -> Result<Direction> {
        let d = Direction::new(y);
        if !d.sl_constraint {
            let s: Rational = d.y.iter().sum();
            return Err(Error::NotSumZero(rational::format_rational(&s)));
        }
        Ok(d)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn is_sum_zero(&self) -> bool {
        self.sl_constraint
    }

    fn sorted_decreasing(&self) -> Vec<Rational> {
        let mut v = self.y.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

/// `ψ_y(s_λ) = Σ λ_i y↓_i`.
pub fn trop_eval_schur(lambda: &Partition, y: &Direction) -> Result<Rational> {
    if lambda.len() > y.n() {
        return Err(Error::LengthExceeds { length: lambda.len(), n: y.n() });
    }
    Ok(dot_sorted(lambda, &y.sorted_decreasing()))
}

fn dot_sorted(lambda: &Partition, sorted: &[Rational]) -> Rational {
    lambda
        .parts()
        .iter()
        .zip(sorted)
        .map(|(&l, yi)| rational::int(l as i64) * yi)
        .sum()
}

/// `ψ_y(f)`: the maximum over the support, `−∞` for `f = 0`.
pub fn trop_eval(f: &SchurElement, y: &Direction) -> Result<TropicalValue> {
    if f.n() != y.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), got: y.n() });
    }
    let sorted = y.sorted_decreasing();
    Ok(f.terms()
        .keys()
        .map(|lambda| TropicalValue::Finite(dot_sorted(lambda, &sorted)))
        .max()
        .unwrap_or(TropicalValue::NegInfinity))
}

/// `ψ_y(ρ)` for a representation; only sum-zero directions descend to the
/// quotient by `e_n ∼ 1`.
pub fn trop_eval_rep(rho: &Representation, y: &Direction) -> Result<TropicalValue> {
    if !y.is_sum_zero() {
        let s: Rational = y.coords().iter().sum();
        return Err(Error::NotSumZero(rational::format_rational(&s)));
    }
    trop_eval(rho.element(), y)
}

/// Strict comparison `ψ_y(ρ) < ψ_y(σ)`.
pub fn strictly_below(rho: &Representation, sigma: &Representation, y: &Direction) -> Result<bool> {
    Ok(trop_eval_rep(rho, y)?.cmp(&trop_eval_rep(sigma, y)?) == Ordering::Less)
}
