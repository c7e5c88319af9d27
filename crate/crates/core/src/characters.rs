//! Evaluation of Schur polynomials and `SL(n)` characters at positive real
//! points, and a numeric search for points where `χ_ρ ≥ χ_σ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{self, Exponent};
use crate::partition::Partition;
use crate::rational::{self, Rational};
use crate::repn::Representation;

/// Shapes up to this size are evaluated through their monomial expansion;
/// larger ones through the Jacobi–Trudi determinant.
pub const MONOMIAL_ROUTE_MAX: u32 = 8;

/// Denominator cap when snapping float coordinates to rationals.
const SNAP_DENOMINATOR: u64 = 1 << 20;

/// A point of the positive real torus, optionally asserted to lie on the
/// slice `x_1 ⋯ x_n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusPoint {
    #[serde(with = "crate::json::rational_vec")]
    coords: Vec<Rational>,
    sl_constraint: bool,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Result<TorusPoint> {
        if coords.is_empty() {
            return Err(Error::InvalidVariableCount(0));
        }
        if coords.iter().any(|c| *c <= Rational::zero()) {
            return Err(Error::NonPositiveCoordinate);
        }
        Ok(TorusPoint { coords, sl_constraint: false })
    }

    /// A point with exact coordinate product 1.
    pub fn on_slice(coords: Vec<Rational>) -> Result<TorusPoint> {
        let mut p = Self::new(coords)?;
        let prod: Rational = p.coords.iter().product();
        if !prod.is_one() {
            return Err(Error::NotOnSlice(rational::format_rational(&prod)));
        }
        p.sl_constraint = true;
        Ok(p)
    }

    pub fn identity(n: usize) -> TorusPoint {
        TorusPoint { coords: vec![Rational::one(); n], sl_constraint: true }
    }

    /// Snaps `exp(t_i)` to rationals for the first `n − 1` coordinates and
    /// closes the product with the last one, so the result lies exactly on
    /// the slice.
    pub fn from_log_coords(t: &[f64]) -> TorusPoint {
        let mut coords: Vec<Rational> = t.iter().map(|&ti| snap_positive(ti.exp())).collect();
        let prod: Rational = coords.iter().product();
        coords.push(prod.recip());
        TorusPoint { coords, sl_constraint: true }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn is_on_slice(&self) -> bool {
        self.sl_constraint
    }

    /// Natural logarithms of the first `n − 1` coordinates.
    pub fn log_coords(&self) -> Vec<f64> {
        self.coords[..self.n() - 1].iter().map(|c| rational::to_f64(c).ln()).collect()
    }
}

fn snap_positive(v: f64) -> Rational {
    let q = rational::approximate(v, SNAP_DENOMINATOR);
    if q > Rational::zero() {
        q
    } else {
        Rational::new(1.into(), (SNAP_DENOMINATOR as i64).into())
    }
}

/// `s_λ(x)` exactly.
pub fn eval_schur(lambda: &Partition, x: &TorusPoint) -> Result<Rational> {
    let n = x.n();
    if lambda.len() > n {
        return Err(Error::LengthExceeds { length: lambda.len(), n });
    }
    if lambda.size() <= MONOMIAL_ROUTE_MAX {
        Ok(eval_via_monomials(&monomial::schur_monomials(lambda, n), x.coords()))
    } else {
        Ok(jacobi_trudi(lambda, x.coords()))
    }
}

fn eval_via_monomials(terms: &BTreeMap<Exponent, num_bigint::BigUint>, x: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (alpha, c) in terms {
        let mut term = rational::from_biguint(c);
        for (xi, &a) in x.iter().zip(alpha) {
            term *= num_traits::pow(xi.clone(), a as usize);
        }
        total += term;
    }
    total
}

/// Complete homogeneous `h_0(x), …, h_k(x)`.
fn complete_homogeneous(x: &[Rational], k: usize) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); k + 1];
    h[0] = Rational::one();
    for xi in x {
        for d in 1..=k {
            let prev = h[d - 1].clone();
            h[d] += prev * xi;
        }
    }
    h
}

/// `s_λ = det(h_{λ_i − i + j})`.
pub fn jacobi_trudi(lambda: &Partition, x: &[Rational]) -> Rational {
    let l = lambda.len();
    if l == 0 {
        return Rational::one();
    }
    let h = complete_homogeneous(x, lambda.first() as usize + l);
    let entry = |i: usize, j: usize| -> Rational {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            Rational::zero()
        } else {
            h[idx as usize].clone()
        }
    };
    let mut m: Vec<Vec<Rational>> = (0..l).map(|i| (0..l).map(|j| entry(i, j)).collect()).collect();
    determinant(&mut m)
}

fn determinant(m: &mut [Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// A representation prepared for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Character {
    n: usize,
    /// `(λ, mult, monomials)`; monomials only for the small-shape route
    components: Vec<(Partition, Rational, Option<BTreeMap<Exponent, num_bigint::BigUint>>)>,
    /// full monomial expansion as floats, for the scan
    float_terms: Vec<(Vec<f64>, f64)>,
}

impl Character {
    pub fn new(rho: &Representation) -> Character {
        let n = rho.n();
        let mut components = Vec::new();
        let mut all: BTreeMap<Exponent, num_bigint::BigUint> = BTreeMap::new();
        for (lambda, c) in rho.terms() {
            let monos = monomial::schur_monomials(lambda, n);
            for (alpha, k) in &monos {
                *all.entry(alpha.clone()).or_default() += k * c;
            }
            let small = (lambda.size() <= MONOMIAL_ROUTE_MAX).then_some(monos);
            components.push((lambda.clone(), rational::from_biguint(c), small));
        }
        // on the slice only differences of exponents matter
        let float_terms = all
            .into_iter()
            .map(|(alpha, c)| {
                let last = *alpha.last().unwrap_or(&0) as f64;
                let e = alpha[..n - 1].iter().map(|&a| a as f64 - last).collect();
                (e, rational::to_f64(&rational::from_biguint(&c)))
            })
            .collect();
        Character { n, components, float_terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exact `χ(x)` on the slice `∏ x_i = 1`.
    pub fn eval(&self, x: &TorusPoint) -> Result<Rational> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.n() });
        }
        let prod: Rational = x.coords().iter().product();
        if !prod.is_one() {
            return Err(Error::NotOnSlice(rational::format_rational(&prod)));
        }
        let mut total = Rational::zero();
        for (lambda, c, monos) in &self.components {
            let v = match monos {
                Some(m) => eval_via_monomials(m, x.coords()),
                None => jacobi_trudi(lambda, x.coords()),
            };
            total += c * v;
        }
        Ok(total)
    }

    /// Largest exponent `⟨α, t⟩` over the support at log coordinates `t`.
    pub fn max_log_term(&self, t: &[f64]) -> f64 {
        self.float_terms
            .iter()
            .map(|(e, _)| dot(e, t))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `χ(exp t) · exp(−shift)` in floating point.
    pub fn eval_scaled(&self, t: &[f64], shift: f64) -> f64 {
        self.float_terms.iter().map(|(e, c)| c * (dot(e, t) - shift).exp()).sum()
    }

    /// `ln χ(exp t)`, overflow-free.
    pub fn log_eval(&self, t: &[f64]) -> f64 {
        let m = self.max_log_term(t);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + self.eval_scaled(t, m).ln()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `χ_ρ(x)` for `x` on the slice.
pub fn eval_char(rho: &Representation, x: &TorusPoint) -> Result<Rational> {
    Character::new(rho).eval(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    /// grid points per log-coordinate axis
    pub grid_depth: usize,
    /// coordinate-descent rounds per refined candidate
    pub descent_iters: usize,
    /// half-width `L` of the log-coordinate box `[−L, L]^{n−1}`
    pub log_bound: f64,
    /// number of local minima refined by descent
    pub refine_candidates: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { grid_depth: 33, descent_iters: 50, log_bound: 8.0, refine_candidates: 8 }
    }
}

/// Normalized gap `(χ_σ − χ_ρ)/(χ_σ + χ_ρ)` at log coordinates `t`.
fn normalized_gap(rho: &Character, sigma: &Character, t: &[f64]) -> f64 {
    let shift = rho.max_log_term(t).max(sigma.max_log_term(t));
    let a = rho.eval_scaled(t, shift);
    let b = sigma.eval_scaled(t, shift);
    if a + b == 0.0 {
        return 0.0;
    }
    (b - a) / (a + b)
}

fn exact_violation(rho: &Character, sigma: &Character, x: &TorusPoint) -> bool {
    match (rho.eval(x), sigma.eval(x)) {
        (Ok(a), Ok(b)) => a >= b,
        _ => false,
    }
}

// float gaps at or below this are re-checked exactly
const CANDIDATE_GAP: f64 = 1e-9;

/// Result of a violation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// an exactly verified point with `χ_ρ(x) ≥ χ_σ(x)`
    pub violation: Option<TorusPoint>,
    /// refined local minima of the gap, i.e. the points of near-equality
    pub closest: Vec<TorusPoint>,
}

/// Looks for `x` on the slice with `χ_ρ(x) ≥ χ_σ(x)`. A returned point is
/// an exactly verified violation; `None` proves nothing.
pub fn search_violation(rho: &Representation, sigma: &Representation, params: &SearchParams) -> Result<Option<TorusPoint>> {
    Ok(search(rho, sigma, params)?.violation)
}

/// The identity is tried first, then a row-major grid over the
/// log-coordinate box, then coordinate descent from the best local minima
/// of the normalized gap.
pub fn search(rho: &Representation, sigma: &Representation, params: &SearchParams) -> Result<SearchOutcome> {
    if rho.n() != sigma.n() {
        return Err(Error::VariableMismatch { left: rho.n(), right: sigma.n() });
    }
    let n = rho.n();
    let (cr, cs) = (Character::new(rho), Character::new(sigma));
    let identity = TorusPoint::identity(n);
    let found = |x: TorusPoint| Ok(SearchOutcome { violation: Some(x), closest: Vec::new() });
    if exact_violation(&cr, &cs, &identity) {
        return found(identity);
    }

    let dim = n - 1;
    let depth = params.grid_depth.max(2);
    let total = depth.checked_pow(dim as u32).expect("grid too large");
    let spacing = 2.0 * params.log_bound / (depth - 1) as f64;
    let coord = |i: usize| -params.log_bound + spacing * i as f64;
    let point_of = |mut idx: usize| -> Vec<f64> {
        let mut t = vec![0.0; dim];
        for axis in (0..dim).rev() {
            t[axis] = coord(idx % depth);
            idx /= depth;
        }
        t
    };

    let gaps: Vec<f64> = (0..total).into_par_iter().map(|i| normalized_gap(&cr, &cs, &point_of(i))).collect();

    for (i, &g) in gaps.iter().enumerate() {
        if g <= CANDIDATE_GAP {
            let x = TorusPoint::from_log_coords(&point_of(i));
            if exact_violation(&cr, &cs, &x) {
                return found(x);
            }
        }
    }

    // local minima over axis neighbours, best first
    let strides: Vec<usize> = (0..dim).map(|a| depth.pow((dim - 1 - a) as u32)).collect();
    let mut minima: Vec<usize> = (0..total)
        .filter(|&i| {
            strides.iter().all(|&s| {
                let pos = (i / s) % depth;
                (pos == 0 || gaps[i - s] >= gaps[i]) && (pos + 1 == depth || gaps[i + s] >= gaps[i])
            })
        })
        .collect();
    minima.sort_by(|&a, &b| gaps[a].total_cmp(&gaps[b]).then(a.cmp(&b)));
    minima.truncate(params.refine_candidates);

    let refined: Vec<Vec<f64>> = minima
        .par_iter()
        .map(|&i| descend(&cr, &cs, point_of(i), spacing / 2.0, params))
        .collect();
    let mut closest = Vec::with_capacity(refined.len());
    for t in refined {
        let x = TorusPoint::from_log_coords(&t);
        if exact_violation(&cr, &cs, &x) {
            return found(x);
        }
        closest.push(x);
    }
    Ok(SearchOutcome { violation: None, closest })
}

fn descend(rho: &Character, sigma: &Character, mut t: Vec<f64>, mut step: f64, params: &SearchParams) -> Vec<f64> {
    let mut best = normalized_gap(rho, sigma, &t);
    for _ in 0..params.descent_iters {
        let mut improved = false;
        for axis in 0..t.len() {
            for dir in [-1.0, 1.0] {
                let mut trial = t.clone();
                trial[axis] = (trial[axis] + dir * step).clamp(-params.log_bound, params.log_bound);
                let g = normalized_gap(rho, sigma, &trial);
                if g < best {
                    best = g;
                    t = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    t
}
