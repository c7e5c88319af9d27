//! Cross-checks of every fast algorithm against an independent slow one.
//!
//! The Schur product is passed in so a deliberately broken product can be
//! shown to trip the harness.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{self, CorpusPair};
use crate::decision::{self, AnalysisParams};
use crate::error::Result;
use crate::monomial;
use crate::partition;
use crate::polytope::{self, WeightPolytope};
use crate::rational::{self, Rational};
use crate::repn;
use crate::schur::SchurElement;
use crate::su2::{self, Certificate, IntPolynomial};
use crate::tropical::{self, Direction};

pub type ProductFn = dyn Fn(&SchurElement, &SchurElement) -> Result<SchurElement> + Sync;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    /// first few failing cases
    pub failures: Vec<String>,
    pub passed: bool,
}

// failing cases kept per check
const MAX_REPORTED: usize = 5;

impl CheckOutcome {
    fn from_cases(name: &str, cases: usize, mut failures: Vec<String>) -> CheckOutcome {
        let passed = failures.is_empty();
        failures.truncate(MAX_REPORTED);
        CheckOutcome { name: name.to_string(), cases, failures, passed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckOutcome>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SelftestConfig {
    pub lr_max_n: usize,
    pub lr_max_boxes: u32,
    pub trop_max_n: usize,
    pub trop_max_boxes: u32,
    pub trop_directions: usize,
    pub lp_max_n: usize,
    pub lp_points: usize,
    pub sturm_polys: usize,
    pub sturm_max_degree: usize,
    pub dim_max_n: usize,
    pub dim_max_boxes: u32,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            lr_max_n: 4,
            lr_max_boxes: 5,
            trop_max_n: 4,
            trop_max_boxes: 6,
            trop_directions: 20,
            lp_max_n: 4,
            lp_points: 100,
            sturm_polys: 200,
            sturm_max_degree: 12,
            dim_max_n: 5,
            dim_max_boxes: 6,
            seed: 7,
        }
    }
}

/// Schur products against monomial multiplication followed by greedy
/// re-decomposition.
pub fn lr_vs_monomial(max_n: usize, max_boxes: u32, product: &ProductFn) -> CheckOutcome {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        let parts = partition::partitions_up_to(max_boxes, n);
        for mu in &parts {
            for nu in &parts {
                cases.push((n, mu.clone(), nu.clone()));
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(n, mu, nu)| {
            let a = SchurElement::schur(mu.clone(), *n).ok()?;
            let b = SchurElement::schur(nu.clone(), *n).ok()?;
            let fast = product(&a, &b);
            let slow = monomial::monomial_expansion(&a).product(&monomial::monomial_expansion(&b)).and_then(|m| m.to_schur());
            match (fast, slow) {
                (Ok(f), Ok(s)) if f == s => None,
                _ => Some(format!("n={n} s{mu}·s{nu}")),
            }
        })
        .collect();
    CheckOutcome::from_cases("lr_vs_monomial", cases.len(), failures)
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rational {
    rational::ratio(rng.gen_range(-bound * max_den..=bound * max_den), rng.gen_range(1..=max_den))
}

/// `Σ λ_i y↓_i` against the maximum over the monomial support.
pub fn trop_closed_form(max_n: usize, max_boxes: u32, directions: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for n in 1..=max_n {
        let ys: Vec<Vec<Rational>> =
            (0..directions).map(|_| (0..n).map(|_| random_rational(&mut rng, 3, 4)).collect()).collect();
        for lambda in partition::partitions_up_to(max_boxes, n) {
            cases.push((n, lambda, ys.clone()));
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|(n, lambda, ys)| {
            let m = monomial::monomial_expansion(&SchurElement::schur(lambda.clone(), *n).expect("length fits"));
            ys.iter()
                .filter_map(|y| {
                    let closed = tropical::trop_eval_schur(lambda, &Direction::new(y.clone())).ok();
                    (closed != m.support_max(y)).then(|| format!("n={n} λ={lambda}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    CheckOutcome::from_cases("trop_closed_form_vs_support_max", cases.len() * directions, failures)
}

/// A point of the sum-zero hyperplane: half the time a random convex
/// combination of the vertices (often on the boundary), otherwise a random
/// point of a box around the polytope.
fn random_point(rng: &mut ChaCha8Rng, vertices: &[Vec<Rational>], scale: i64) -> Vec<Rational> {
    let n = vertices[0].len();
    if rng.gen_bool(0.5) {
        let weights: Vec<i64> = vertices.iter().map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(1..4) }).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            return vertices[rng.gen_range(0..vertices.len())].clone();
        }
        (0..n)
            .map(|k| vertices.iter().zip(&weights).map(|(v, &w)| &v[k] * rational::int(w)).sum::<Rational>() / rational::int(total))
            .collect()
    } else {
        let mut p: Vec<Rational> = (0..n - 1).map(|_| random_rational(rng, scale, 6)).collect();
        let s: Rational = p.iter().sum();
        p.push(-s);
        p
    }
}

/// LP membership against the majorization criterion on single orbits.
pub fn lp_vs_majorization(n: usize, count: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
    let shapes = partition::partitions_up_to(6, n);
    let instances: Vec<(Vec<Rational>, Vec<Rational>)> = (0..count)
        .map(|_| {
            let lambda = &shapes[rng.gen_range(0..shapes.len())];
            let g = polytope::project(lambda, n);
            let verts = polytope::distinct_permutations(&g);
            let p = random_point(&mut rng, &verts, lambda.first().max(1) as i64);
            (g, p)
        })
        .collect();
    let failures: Vec<String> = instances
        .par_iter()
        .filter_map(|(g, p)| {
            let poly = WeightPolytope::single_orbit(g.clone());
            let show = |v: &[Rational]| v.iter().map(rational::format_rational).collect::<Vec<_>>().join(",");
            let case = || format!("n={n} generator=({}) point=({})", show(g), show(p));
            match polytope::lp_relint_membership(p, &poly) {
                Ok(lp) => ((lp.inside_relint, lp.inside_closed) != polytope::majorization_membership(p, g)).then(case),
                Err(e) => Some(format!("{}: {e}", case())),
            }
        })
        .collect();
    CheckOutcome::from_cases(&format!("lp_vs_majorization_n{n}"), count, failures)
}

/// Random polynomials with a controlled mix of roots above 1: simple
/// rational roots, double roots, positive quadratic factors.
pub fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::from(rng.gen_range(1..4))];
    let mul = |c: &Vec<BigInt>, f: &[i64]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); c.len() + f.len() - 1];
        for (i, a) in c.iter().enumerate() {
            for (j, &b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    while coeffs.len() <= max_degree {
        let room = max_degree + 1 - coeffs.len();
        match rng.gen_range(0..5) {
            0 => {
                // q·t − p, root p/q, usually above 1
                let q = rng.gen_range(1..4);
                let p = rng.gen_range(0..4 * q + 1);
                coeffs = mul(&coeffs, &[-p, q]);
            }
            1 if room >= 2 => {
                let q = rng.gen_range(1..3);
                let p = rng.gen_range(q..4 * q);
                coeffs = mul(&coeffs, &[-p, q]);
                coeffs = mul(&coeffs, &[-p, q]);
            }
            2 if room >= 2 => {
                // t² − b t + c with small discriminant, possibly complex roots
                let b = rng.gen_range(0..7);
                let c = rng.gen_range(0..10);
                coeffs = mul(&coeffs, &[c, -b, 1]);
            }
            3 => coeffs = mul(&coeffs, &[rng.gen_range(-3..4), rng.gen_range(-3..4)]),
            _ => break,
        }
        if coeffs.iter().all(Zero::is_zero) {
            coeffs = vec![BigInt::from(1)];
        }
    }
    IntPolynomial::new(coeffs)
}

/// Dense sample of `[1, B]`: fine steps near 1, then geometric.
fn ray_samples(bound: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..=400).map(|j| rational::int(1) + rational::ratio(j, 100)).collect();
    let mut t = rational::int(5);
    while &t <= bound {
        out.push(t.clone());
        t = &t * rational::ratio(21, 20);
    }
    out
}

/// Sturm certificates against sign sampling.
pub fn sturm_vs_sampling(count: usize, max_degree: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<IntPolynomial> = (0..count).map(|_| random_polynomial(&mut rng, max_degree)).collect();
    let failures: Vec<String> = polys
        .par_iter()
        .filter_map(|g| {
            let cert = su2::certify_strict_positive_on_ray(g);
            let ok = match &cert {
                Certificate::ZeroPolynomial => g.is_zero(),
                Certificate::NotPositive { witness } => *witness >= rational::int(1) && !g.eval(witness).is_positive(),
                Certificate::Certified | Certificate::TouchesZero { .. } => {
                    let samples = ray_samples(&su2::cauchy_bound(g));
                    let all_positive = samples.iter().all(|t| g.eval(t).is_positive());
                    let touch_ok = match &cert {
                        Certificate::TouchesZero { lo, hi } => lo < hi && *lo >= rational::int(1),
                        _ => true,
                    };
                    all_positive && touch_ok && g.leading().is_some_and(Signed::is_positive)
                }
            };
            (!ok).then(|| format!("g = {g}: {}", cert.label()))
        })
        .collect();
    CheckOutcome::from_cases("sturm_vs_sampling", count, failures)
}

/// Tableau counts against the Weyl product formula.
pub fn dimension_ssyt_vs_weyl(max_n: usize, max_boxes: u32) -> CheckOutcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        for lambda in partition::partitions_up_to(max_boxes, n) {
            cases += 1;
            if monomial::ssyt_count(&lambda, n) != repn::weyl_dimension(&lambda, n) {
                failures.push(format!("n={n} λ={lambda}"));
            }
        }
    }
    CheckOutcome::from_cases("dimension_ssyt_vs_weyl", cases, failures)
}

/// Forward direction on curated pairs: conditions hold, both witnesses are
/// found, and the converse checks pass.
pub fn corpus_check(pairs: &[CorpusPair], params: &AnalysisParams) -> CheckOutcome {
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|pair| {
            let v = match decision::analyze(&pair.rho, &pair.sigma, params) {
                Ok(v) => v,
                Err(e) => return Some(format!("{}: {e}", pair.name)),
            };
            let found = v.asymptotic.is_some_and(|a| a.minimal_n.is_some()) && v.catalyst.is_some();
            let ok = v.asymptotic_guaranteed && found && v.converse_report.len() == 2;
            (!ok).then(|| format!("{}: no witness", pair.name))
        })
        .collect();
    CheckOutcome::from_cases("corpus_forward_direction", pairs.len(), failures)
}

pub fn run(config: &SelftestConfig, product: &ProductFn, corpus: Option<&Path>, params: &AnalysisParams) -> SelftestReport {
    let mut checks = vec![
        lr_vs_monomial(config.lr_max_n, config.lr_max_boxes, product),
        trop_closed_form(config.trop_max_n, config.trop_max_boxes, config.trop_directions, config.seed),
    ];
    for n in 2..=config.lp_max_n {
        checks.push(lp_vs_majorization(n, config.lp_points, config.seed));
    }
    checks.push(sturm_vs_sampling(config.sturm_polys, config.sturm_max_degree, config.seed));
    checks.push(dimension_ssyt_vs_weyl(config.dim_max_n, config.dim_max_boxes));

    let mut warnings = Vec::new();
    if let Some(dir) = corpus {
        match cli::load_corpus_dir(dir) {
            Ok(pairs) if pairs.is_empty() => warnings.push(format!("{}: no corpus pairs, corpus checks skipped", dir.display())),
            Ok(pairs) => checks.push(corpus_check(&pairs, params)),
            Err(e) => checks.push(CheckOutcome::from_cases("corpus_load", 1, vec![e.to_string()])),
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    SelftestReport { checks, warnings, passed }
}

/// The product under test in a normal build.
pub fn default_product(a: &SchurElement, b: &SchurElement) -> Result<SchurElement> {
    a.multiply(b)
}
