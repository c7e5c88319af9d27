//! Weight polytopes in the sum-zero hyperplane and exact membership tests.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{LpProblem, LpResult};
use crate::partition::Partition;
use crate::rational::{self, Rational};
use crate::repn::Representation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightPolytope {
    n: usize,
    #[serde(serialize_with = "ser_points")]
    generators: Vec<Vec<Rational>>,
    #[serde(skip)]
    vertices: Vec<Vec<Rational>>,
}

fn ser_points<S: serde::Serializer>(pts: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(pts.iter().map(|p| p.iter().map(rational::format_rational).collect::<Vec<_>>()))
}

/// Membership of a point, with the optimal margin `ε*` when feasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub inside_relint: bool,
    pub inside_closed: bool,
    pub epsilon: Option<Rational>,
}

/// The zero-padded exponent vector of `λ` minus its mean.
pub fn project(lambda: &Partition, n: usize) -> Vec<Rational> {
    let mean = rational::ratio(lambda.size() as i64, n as i64);
    lambda.padded(n).into_iter().map(|v| rational::int(v as i64) - &mean).collect()
}

/// All distinct rearrangements of `v`, in increasing lexicographic order.
pub fn distinct_permutations(v: &[Rational]) -> Vec<Vec<Rational>> {
    let mut cur = v.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

impl WeightPolytope {
    /// The orbit hull of one point of the sum-zero hyperplane.
    pub fn single_orbit(generator: Vec<Rational>) -> WeightPolytope {
        let vertices = distinct_permutations(&generator);
        let mut g = generator;
        g.sort_by(|a, b| b.cmp(a));
        WeightPolytope { n: g.len(), generators: vec![g], vertices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Dimension of the affine hull of the vertices.
    pub fn affine_dimension(&self) -> usize {
        let Some(base) = self.vertices.first() else {
            return 0;
        };
        let rows: Vec<Vec<Rational>> =
            self.vertices[1..].iter().map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        rank(rows)
    }

    /// Is the hull full-dimensional inside the sum-zero hyperplane?
    pub fn is_full(&self) -> bool {
        self.affine_dimension() + 1 == self.n
    }
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &f * pv;
            }
        }
        r += 1;
    }
    r
}

pub fn weight_polytope(rho: &Representation) -> Result<WeightPolytope> {
    if rho.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let n = rho.n();
    let generators: Vec<Vec<Rational>> = rho.terms().keys().map(|l| project(l, n)).collect();
    let vertices: BTreeSet<Vec<Rational>> = generators.iter().flat_map(|g| distinct_permutations(g)).collect();
    Ok(WeightPolytope { n, generators, vertices: vertices.into_iter().collect() })
}

/// Solves `max ε` subject to `Σ c_v v = p`, `Σ c_v = 1`, `c_v ≥ ε`.
pub fn lp_relint_membership(p: &[Rational], poly: &WeightPolytope) -> Result<Membership> {
    let n = poly.n;
    if p.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.len() });
    }
    let total: Rational = p.iter().sum();
    if !total.is_zero() {
        return Err(Error::NotSumZero(rational::format_rational(&total)));
    }
    let verts = &poly.vertices;
    let m = verts.len();
    // variables: d_v = c_v − ε ≥ 0, then ε⁺, ε⁻; the last coordinate row is implied by the sum-zero condition
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n - 1 {
        let mut row: Vec<Rational> = verts.iter().map(|v| v[k].clone()).collect();
        let s: Rational = verts.iter().map(|v| &v[k]).sum();
        row.push(s.clone());
        row.push(-s);
        a.push(row);
        b.push(p[k].clone());
    }
    let mut ones = vec![Rational::one(); m];
    ones.push(rational::int(m as i64));
    ones.push(-rational::int(m as i64));
    a.push(ones);
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); m];
    c.push(Rational::one());
    c.push(-Rational::one());

    match (LpProblem { a, b, c }).solve()? {
        LpResult::Optimal(sol) => Ok(Membership {
            inside_relint: sol.value.is_positive(),
            inside_closed: !sol.value.is_negative(),
            epsilon: Some(sol.value),
        }),
        LpResult::Infeasible => Ok(Membership { inside_relint: false, inside_closed: false, epsilon: None }),
        LpResult::Unbounded => Err(Error::Inconsistency("membership LP reported unbounded".into())),
    }
}

fn check_pair(rho: &Representation, sigma: &Representation) -> Result<(WeightPolytope, WeightPolytope)> {
    if rho.n() != sigma.n() {
        return Err(Error::VariableMismatch { left: rho.n(), right: sigma.n() });
    }
    Ok((weight_polytope(rho)?, weight_polytope(sigma)?))
}

fn all_generators<F>(inner: &WeightPolytope, outer: &WeightPolytope, test: F) -> Result<bool>
where
    F: Fn(&Membership) -> bool + Sync,
{
    let verdicts: Vec<Result<bool>> = inner
        .generators
        .par_iter()
        .map(|g| lp_relint_membership(g, outer).map(|m| test(&m)))
        .collect();
    verdicts.into_iter().try_fold(true, |acc, v| Ok(acc && v?))
}

/// `WP(ρ)` inside the relative interior of `WP(σ)`, the latter full-dimensional.
pub fn wp_strict_containment(rho: &Representation, sigma: &Representation) -> Result<bool> {
    let (inner, outer) = check_pair(rho, sigma)?;
    if !outer.is_full() {
        return Ok(false);
    }
    all_generators(&inner, &outer, |m| m.inside_relint)
}

/// `WP(ρ) ⊆ WP(σ)`.
pub fn wp_containment(rho: &Representation, sigma: &Representation) -> Result<bool> {
    let (inner, outer) = check_pair(rho, sigma)?;
    all_generators(&inner, &outer, |m| m.inside_closed)
}

/// Majorization test against the orbit hull of a single sorted generator.
/// Returns `(inside_relint, inside_closed)`.
pub fn majorization_membership(p: &[Rational], generator: &[Rational]) -> (bool, bool) {
    let mut ps = p.to_vec();
    ps.sort_by(|a, b| b.cmp(a));
    let mut gs = generator.to_vec();
    gs.sort_by(|a, b| b.cmp(a));
    let (mut sp, mut sg) = (Rational::zero(), Rational::zero());
    let (mut closed, mut strict) = (true, true);
    for i in 0..ps.len() {
        sp += &ps[i];
        sg += &gs[i];
        if i + 1 == ps.len() {
            closed &= sp == sg;
        } else {
            closed &= sp <= sg;
            strict &= sp < sg;
        }
    }
    // the orbit of the zero vector is a point, whose relative interior is itself
    let degenerate = gs.iter().all(Zero::is_zero);
    let relint = if degenerate { ps.iter().all(Zero::is_zero) } else { closed && strict };
    (relint, closed)
}
