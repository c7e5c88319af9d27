//! The containment pipeline: strict conditions, brute-force searches for
//! asymptotic exponents and catalysts, and the non-strict converse checks.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{self, Character, SearchParams, TorusPoint};
use crate::error::{Error, Result};
use crate::partition;
use crate::polytope;
use crate::rational::{self, Rational};
use crate::repn::Representation;
use crate::su2::{self, Certificate};

/// Status of the character inequality `χ_ρ < χ_σ` on the positive torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RealCondition {
    /// proved for every point (`n = 2` only)
    CertifiedStrict,
    NoViolationFound,
    ViolatedAt { point: TorusPoint },
    /// equality at an irrational point of the `SU(2)` ray `t ∈ (lo, hi]`
    TouchesZero {
        #[serde(with = "crate::json::rational_str")]
        lo: Rational,
        #[serde(with = "crate::json::rational_str")]
        hi: Rational,
    },
}

impl RealCondition {
    pub fn holds(&self) -> bool {
        matches!(self, RealCondition::CertifiedStrict | RealCondition::NoViolationFound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    #[serde(serialize_with = "ser_big")]
    pub rho: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub sigma: BigUint,
    pub strict: bool,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::json::BigNat(v.clone()).serialize(s)
}

/// Conditions only, without any witness search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub condition_real: RealCondition,
    pub condition_tropical: bool,
    pub dimensions: DimensionCheck,
    #[serde(skip)]
    pub near_equality: Vec<TorusPoint>,
}

impl Conditions {
    pub fn both_hold(&self) -> bool {
        self.condition_real.holds() && self.condition_tropical
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticExponent {
    pub minimal_n: u32,
    /// containment holds for every `k` from `minimal_n` through the bound
    pub all_good_up_to_n_max: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticReport {
    pub checked_up_to: u32,
    pub minimal_n: Option<u32>,
    pub all_good_up_to_n_max: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Catalyst { eta: Representation },
    Exponent { k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConverseReport {
    pub witness: Witness,
    pub witness_verified: bool,
    pub wp_containment: bool,
    pub character_points_checked: usize,
    pub dimension_non_strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: usize,
    pub rho: Representation,
    pub sigma: Representation,
    pub condition_real: RealCondition,
    pub condition_tropical: bool,
    pub dimensions: DimensionCheck,
    pub sigma_generic: bool,
    /// both conditions hold and `σ` is generic
    pub asymptotic_guaranteed: bool,
    pub asymptotic: Option<AsymptoticReport>,
    pub catalyst: Option<Representation>,
    pub converse_report: Vec<ConverseReport>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisParams {
    pub search: SearchParams,
    pub n_max: u32,
    pub catalyst_boxes: u32,
    pub catalyst_terms: u32,
    pub converse_samples: usize,
    pub seed: u64,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            search: SearchParams::default(),
            n_max: 12,
            catalyst_boxes: 6,
            catalyst_terms: 4,
            converse_samples: 200,
            seed: 0x5eed,
        }
    }
}

fn check_pair(rho: &Representation, sigma: &Representation) -> Result<()> {
    if rho.n() != sigma.n() {
        return Err(Error::VariableMismatch { left: rho.n(), right: sigma.n() });
    }
    if rho.is_zero() || sigma.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    Ok(())
}

fn confirm_violation(rho: &Representation, sigma: &Representation, x: &TorusPoint) -> Result<()> {
    if characters::eval_char(rho, x)? < characters::eval_char(sigma, x)? {
        return Err(Error::Inconsistency("reported character violation does not verify".into()));
    }
    Ok(())
}

/// Exact `SU(2)` decision of the character inequality.
fn su2_condition(rho: &Representation, sigma: &Representation) -> Result<RealCondition> {
    let g = su2::char_diff_polynomial(&su2::from_representation(rho)?, &su2::from_representation(sigma)?);
    Ok(match su2::certify_strict_positive_on_ray(&g) {
        Certificate::Certified => RealCondition::CertifiedStrict,
        Certificate::ZeroPolynomial => RealCondition::ViolatedAt { point: TorusPoint::identity(2) },
        Certificate::NotPositive { witness } => {
            let inv = witness.recip();
            RealCondition::ViolatedAt { point: TorusPoint::on_slice(vec![witness, inv])? }
        }
        Certificate::TouchesZero { lo, hi } => RealCondition::TouchesZero { lo, hi },
    })
}

pub fn check_conditions(rho: &Representation, sigma: &Representation, params: &SearchParams) -> Result<Conditions> {
    check_pair(rho, sigma)?;
    let condition_tropical = polytope::wp_strict_containment(rho, sigma)?;
    let (dr, ds) = (rho.dimension(), sigma.dimension());
    let dimensions = DimensionCheck { strict: dr < ds, rho: dr, sigma: ds };
    let mut near_equality = Vec::new();
    let condition_real = if rho.n() == 2 {
        su2_condition(rho, sigma)?
    } else {
        let out = characters::search(rho, sigma, params)?;
        near_equality = out.closest;
        match out.violation {
            Some(point) => RealCondition::ViolatedAt { point },
            None => RealCondition::NoViolationFound,
        }
    };
    if let RealCondition::ViolatedAt { point } = &condition_real {
        confirm_violation(rho, sigma, point)?;
    }
    if condition_real == RealCondition::CertifiedStrict && !dimensions.strict {
        return Err(Error::Inconsistency("certified character gap but dim ρ ≥ dim σ".into()));
    }
    Ok(Conditions { condition_real, condition_tropical, dimensions, near_equality })
}

/// Least `k ≤ n_max` with `ρ^⊗k ↪ σ^⊗k`, and whether every later `k` up to
/// `n_max` works too.
pub fn find_asymptotic_exponent(rho: &Representation, sigma: &Representation, n_max: u32) -> Result<Option<AsymptoticExponent>> {
    if rho.n() != sigma.n() {
        return Err(Error::VariableMismatch { left: rho.n(), right: sigma.n() });
    }
    // dimensions multiply, so a larger ρ can never fit
    if rho.dimension() > sigma.dimension() {
        return Ok(None);
    }
    let (mut pr, mut ps) = (Representation::trivial(rho.n())?, Representation::trivial(rho.n())?);
    let mut minimal = None;
    let mut all_good = true;
    for k in 1..=n_max {
        let (a, b) = rayon::join(|| pr.tensor(rho), || ps.tensor(sigma));
        pr = a?;
        ps = b?;
        let ok = pr.is_contained_in(&ps)?;
        match (minimal, ok) {
            (None, true) => minimal = Some(k),
            (Some(_), false) => all_good = false,
            _ => {}
        }
    }
    Ok(minimal.map(|minimal_n| AsymptoticExponent { minimal_n, all_good_up_to_n_max: all_good }))
}

/// `ρ ⊗ η ↪ σ ⊗ η` with `η ≠ 0`.
pub fn is_catalyst(rho: &Representation, sigma: &Representation, eta: &Representation) -> Result<bool> {
    if eta.is_zero() {
        return Ok(false);
    }
    rho.tensor(eta)?.is_contained_in(&sigma.tensor(eta)?)
}

/// Candidate catalysts in search order: powers of `σ`, partial sums of
/// those powers, irreducibles by size, then sums of up to `max_terms`
/// irreducibles. Duplicates are dropped.
pub fn catalyst_candidates(sigma: &Representation, max_boxes: u32, max_terms: u32) -> Result<Vec<Representation>> {
    let n = sigma.n();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |r: Representation, out: &mut Vec<Representation>| {
        if seen.insert(r.clone()) {
            out.push(r);
        }
    };
    let mut powers = vec![Representation::trivial(n)?];
    for k in 1..=max_boxes as usize {
        let next = powers[k - 1].tensor(sigma)?;
        powers.push(next);
    }
    for p in &powers {
        push(p.clone(), &mut out);
    }
    let mut acc = powers[0].clone();
    for p in &powers[1..] {
        acc = acc.direct_sum(p)?;
        push(acc.clone(), &mut out);
    }
    let irreps: Vec<Representation> = partition::partitions_up_to(max_boxes, n - 1)
        .into_iter()
        .map(|l| Representation::irrep(l, n))
        .collect::<Result<_>>()?;
    for r in &irreps {
        push(r.clone(), &mut out);
    }
    for size in 2..=max_terms as usize {
        for combo in multisets(irreps.len(), size) {
            let mut sum = Representation::zero(n)?;
            for i in combo {
                sum = sum.direct_sum(&irreps[i])?;
            }
            push(sum, &mut out);
        }
    }
    Ok(out)
}

/// Non-decreasing index tuples of length `k` over `0..m`, lexicographic.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut cur = vec![0; k];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] + 1 < m) else {
            return out;
        };
        let v = cur[i] + 1;
        for c in cur.iter_mut().skip(i) {
            *c = v;
        }
    }
}

/// The first catalyst in [`catalyst_candidates`] order.
pub fn find_catalyst(rho: &Representation, sigma: &Representation, max_boxes: u32, max_terms: u32) -> Result<Option<Representation>> {
    if rho.n() != sigma.n() {
        return Err(Error::VariableMismatch { left: rho.n(), right: sigma.n() });
    }
    // necessary conditions: dimensions multiply and weight polytopes cancel
    if rho.is_zero() {
        return Ok(Some(Representation::trivial(rho.n())?));
    }
    if sigma.is_zero() || rho.dimension() > sigma.dimension() || !polytope::wp_containment(rho, sigma)? {
        return Ok(None);
    }
    let candidates = catalyst_candidates(sigma, max_boxes, max_terms)?;
    let hit = candidates
        .par_iter()
        .map(|eta| is_catalyst(rho, sigma, eta))
        .position_first(|r| !matches!(r, Ok(false)));
    match hit {
        None => Ok(None),
        Some(i) => match is_catalyst(rho, sigma, &candidates[i])? {
            true => Ok(Some(candidates[i].clone())),
            false => Err(Error::Inconsistency("catalyst check is not deterministic".into())),
        },
    }
}

/// Deterministic sample of points on the slice, log coordinates uniform in
/// `[−range, range]`.
pub fn sample_points(n: usize, count: usize, range: f64, seed: u64) -> Vec<TorusPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-range..=range)).collect();
            TorusPoint::from_log_coords(&t)
        })
        .collect()
}

// log-coordinate range of the converse sample
const SAMPLE_RANGE: f64 = 3.0;

/// Checks the non-strict consequences of a witness. Any failure is an
/// [`Error::Inconsistency`].
pub fn verify_converse(
    rho: &Representation,
    sigma: &Representation,
    witness: &Witness,
    extra_points: &[TorusPoint],
    samples: usize,
    seed: u64,
) -> Result<ConverseReport> {
    let fail = |what: String| Err(Error::Inconsistency(format!("converse check failed: {what}")));
    check_pair(rho, sigma)?;
    let witness_verified = match witness {
        Witness::Catalyst { eta } => is_catalyst(rho, sigma, eta)?,
        Witness::Exponent { k } => *k >= 1 && rho.tensor_power(*k).is_contained_in(&sigma.tensor_power(*k))?,
    };
    if !witness_verified {
        return fail("witness does not verify".into());
    }
    if !polytope::wp_containment(rho, sigma)? {
        return fail("WP(ρ) ⊄ WP(σ)".into());
    }
    let (cr, cs) = (Character::new(rho), Character::new(sigma));
    let mut points = vec![TorusPoint::identity(rho.n())];
    points.extend(extra_points.iter().cloned());
    points.extend(sample_points(rho.n(), samples, SAMPLE_RANGE, seed));
    let bad: Vec<Result<Option<usize>>> = points
        .par_iter()
        .enumerate()
        .map(|(i, x)| Ok((cr.eval(x)? > cs.eval(x)?).then_some(i)))
        .collect();
    for b in bad {
        if let Some(i) = b? {
            let coords: Vec<String> = points[i].coords().iter().map(rational::format_rational).collect();
            return fail(format!("χ_ρ > χ_σ at ({})", coords.join(", ")));
        }
    }
    Ok(ConverseReport {
        witness: witness.clone(),
        witness_verified,
        wp_containment: true,
        character_points_checked: points.len(),
        dimension_non_strict: rho.dimension() <= sigma.dimension(),
    })
}

/// Conditions, witness searches when both conditions hold, and converse
/// checks on every witness found.
pub fn analyze(rho: &Representation, sigma: &Representation, params: &AnalysisParams) -> Result<Verdict> {
    let cond = check_conditions(rho, sigma, &params.search)?;
    let sigma_generic = sigma.is_generic();
    let mut asymptotic = None;
    let mut catalyst = None;
    let mut converse_report = Vec::new();
    if cond.both_hold() {
        let (exp, cat) = rayon::join(
            || find_asymptotic_exponent(rho, sigma, params.n_max),
            || find_catalyst(rho, sigma, params.catalyst_boxes, params.catalyst_terms),
        );
        let exp = exp?;
        catalyst = cat?;
        asymptotic = Some(AsymptoticReport {
            checked_up_to: params.n_max,
            minimal_n: exp.map(|e| e.minimal_n),
            all_good_up_to_n_max: exp.is_some_and(|e| e.all_good_up_to_n_max),
        });
        let mut witnesses = Vec::new();
        if let Some(e) = exp {
            witnesses.push(Witness::Exponent { k: e.minimal_n });
        }
        if let Some(eta) = &catalyst {
            witnesses.push(Witness::Catalyst { eta: eta.clone() });
        }
        for w in &witnesses {
            converse_report.push(verify_converse(
                rho,
                sigma,
                w,
                &cond.near_equality,
                params.converse_samples,
                params.seed,
            )?);
        }
    }
    Ok(Verdict {
        n: rho.n(),
        rho: rho.clone(),
        sigma: sigma.clone(),
        asymptotic_guaranteed: cond.both_hold() && sigma_generic,
        condition_real: cond.condition_real,
        condition_tropical: cond.condition_tropical,
        dimensions: cond.dimensions,
        sigma_generic,
        asymptotic,
        catalyst,
        converse_report,
    })
}
