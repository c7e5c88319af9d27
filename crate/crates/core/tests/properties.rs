use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

use repcontain::characters::{eval_char, TorusPoint};
use repcontain::monomial::monomial_expansion;
use repcontain::polytope::{self, lp_relint_membership, majorization_membership, WeightPolytope};
use repcontain::rational::{self, Rational};
use repcontain::repn::Representation;
use repcontain::schur::SchurElement;
use repcontain::selftest;
use repcontain::su2::{self, MultiplicityMap};
use repcontain::tropical::{self, Direction, TropicalValue};
use repcontain::Partition;

fn partition(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_padded(v).unwrap()
    })
}

/// Small Schur-positive elements in `n` variables.
fn element(n: usize, max_part: u32) -> impl Strategy<Value = SchurElement> {
    prop::collection::vec((partition(n, max_part), 1u32..=3), 0..=3).prop_map(move |terms| {
        SchurElement::from_terms(n, terms.into_iter().map(|(l, c)| (l, BigUint::from(c)))).unwrap()
    })
}

fn nonzero_rep(n: usize, max_part: u32) -> impl Strategy<Value = Representation> {
    prop::collection::vec((partition(n - 1, max_part), 1u32..=3), 1..=3).prop_map(move |terms| {
        Representation::from_terms(n, terms.into_iter().map(|(l, c)| (l, BigUint::from(c)))).unwrap()
    })
}

fn rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| rational::ratio(p, q))
}

fn direction(n: usize) -> impl Strategy<Value = Direction> {
    prop::collection::vec(rat(), n).prop_map(Direction::new)
}

fn sum_zero(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rat(), n - 1).prop_map(|mut v| {
        let s: Rational = v.iter().sum();
        v.push(-s);
        v
    })
}

fn su2_map() -> impl Strategy<Value = MultiplicityMap> {
    prop::collection::btree_map(1u64..=7, 1u32..=4, 1..=4)
        .prop_map(|m| MultiplicityMap::new(m.into_iter().map(|(d, c)| (d, BigUint::from(c)))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(l in partition(6, 6)) {
        let c = l.conjugate();
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(c.len() as u32, l.first());
        prop_assert_eq!(c.conjugate(), l);
    }

    #[test]
    fn determinant_reduction_is_canonical(l in partition(4, 5), n in 1usize..=4) {
        prop_assume!(l.len() <= n);
        let r = l.reduce_mod_determinant(n).unwrap();
        prop_assert!(r.len() < n || (n == 1 && r.is_empty()));
        prop_assert_eq!(r.reduce_mod_determinant(n).unwrap(), r.clone());
        // removing full columns is adding a multiple of (1^n)
        let k = l.part(n - 1);
        prop_assert_eq!(r.size() + k * n as u32, l.size());
    }

    #[test]
    fn dominance_is_a_partial_order(a in partition(4, 4), b in partition(4, 4)) {
        prop_assume!(a.size() == b.size());
        prop_assert!(a.dominated_by(&a).unwrap());
        if a.dominated_by(&b).unwrap() && b.dominated_by(&a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn semiring_laws((n, a, b, c) in (1usize..=3).prop_flat_map(|n| (Just(n), element(n, 2), element(n, 2), element(n, 2)))) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.multiply(&b).unwrap().multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.multiply(&b.add(&c).unwrap()).unwrap(),
            a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.multiply(&SchurElement::one(n)).unwrap(), a.clone());
        prop_assert!(a.multiply(&SchurElement::zero(n)).unwrap().is_zero());
        // the order is compatible with both operations
        let ab = a.add(&b).unwrap();
        prop_assert!(a.leq(&ab).unwrap());
        prop_assert!(a.multiply(&c).unwrap().leq(&ab.multiply(&c).unwrap()).unwrap());
    }

    #[test]
    fn product_matches_monomial_oracle((a, b) in (1usize..=3).prop_flat_map(|n| (element(n, 2), element(n, 2)))) {
        let oracle = monomial_expansion(&a).product(&monomial_expansion(&b)).unwrap().to_schur().unwrap();
        prop_assert_eq!(a.multiply(&b).unwrap(), oracle);
    }

    #[test]
    fn tropicalization_is_a_homomorphism(a in element(3, 3), b in element(3, 3), y in direction(3)) {
        let ta = tropical::trop_eval(&a, &y).unwrap();
        let tb = tropical::trop_eval(&b, &y).unwrap();
        prop_assert_eq!(tropical::trop_eval(&a.multiply(&b).unwrap(), &y).unwrap(), ta.plus(&tb));
        prop_assert_eq!(tropical::trop_eval(&a.add(&b).unwrap(), &y).unwrap(), ta.clone().max(tb));
        if a.is_zero() {
            prop_assert_eq!(ta, TropicalValue::NegInfinity);
        }
    }

    #[test]
    fn tropical_value_is_support_maximum(a in element(3, 3), y in direction(3)) {
        let by_support = monomial_expansion(&a).support_max(y.coords());
        let value = tropical::trop_eval(&a, &y).unwrap();
        prop_assert_eq!(value.finite().cloned(), by_support);
    }

    #[test]
    fn tropical_value_is_monotone_in_dominance(a in partition(3, 4), b in partition(3, 4), y in direction(3)) {
        prop_assume!(a.size() == b.size() && a.dominated_by(&b).unwrap());
        let mut sorted = y.coords().to_vec();
        sorted.sort_by(|u, v| v.cmp(u));
        let y = Direction::new(sorted);
        prop_assert!(tropical::trop_eval_schur(&a, &y).unwrap() <= tropical::trop_eval_schur(&b, &y).unwrap());
    }

    #[test]
    fn tropical_value_is_additive_in_shapes(a in partition(3, 4), b in partition(3, 4), y in direction(3)) {
        let lhs = tropical::trop_eval_schur(&a.add(&b), &y).unwrap();
        let rhs = tropical::trop_eval_schur(&a, &y).unwrap() + tropical::trop_eval_schur(&b, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_is_a_semiring_map(r in nonzero_rep(3, 3), s in nonzero_rep(3, 3)) {
        prop_assert_eq!(r.tensor(&s).unwrap().dimension(), r.dimension() * s.dimension());
        prop_assert_eq!(r.direct_sum(&s).unwrap().dimension(), r.dimension() + s.dimension());
    }

    #[test]
    fn dimension_is_character_at_identity(r in nonzero_rep(4, 3)) {
        let at_one = eval_char(&r, &TorusPoint::identity(4)).unwrap();
        prop_assert_eq!(at_one, rational::from_biguint(&r.dimension()));
    }

    #[test]
    fn character_matches_monomial_sum(l in partition(2, 5), x in prop::collection::vec(1i64..=5, 2), q in 1i64..=3) {
        // shapes up to 10 boxes exercise both evaluation routes
        let rep = Representation::irrep(l, 3).unwrap();
        let a = rational::ratio(x[0], q);
        let b = rational::ratio(x[1], q);
        let c = Rational::one() / (&a * &b);
        let coords = vec![a, b, c];
        let exact = eval_char(&rep, &TorusPoint::on_slice(coords.clone()).unwrap()).unwrap();
        prop_assert_eq!(exact, monomial_expansion(rep.element()).eval(&coords));
    }

    #[test]
    fn character_is_a_semiring_map(r in nonzero_rep(3, 2), s in nonzero_rep(3, 2), p in 1i64..=4, q in 1i64..=4) {
        let x = TorusPoint::on_slice(vec![rational::ratio(p, q), rational::ratio(q, 2), rational::ratio(2, p)]).unwrap();
        let (cr, cs) = (eval_char(&r, &x).unwrap(), eval_char(&s, &x).unwrap());
        prop_assert_eq!(eval_char(&r.tensor(&s).unwrap(), &x).unwrap(), &cr * &cs);
        prop_assert_eq!(eval_char(&r.direct_sum(&s).unwrap(), &x).unwrap(), cr + cs);
    }

    #[test]
    fn lp_membership_matches_majorization(n in 2usize..=4, g in partition(4, 4), p in sum_zero(4)) {
        prop_assume!(g.len() <= n);
        let gen = polytope::project(&g, n);
        let point: Vec<Rational> = {
            let mut v = p[..n - 1].to_vec();
            let s: Rational = v.iter().sum();
            v.push(-s);
            v.into_iter().map(|c| c / rational::int(2)).collect()
        };
        let lp = lp_relint_membership(&point, &WeightPolytope::single_orbit(gen.clone())).unwrap();
        let (relint, closed) = majorization_membership(&point, &gen);
        prop_assert_eq!(lp.inside_relint, relint);
        prop_assert_eq!(lp.inside_closed, closed);
        prop_assert_eq!(lp.epsilon.is_some_and(|e| e >= Rational::zero()), closed);
    }

    #[test]
    fn generators_lie_in_their_polytope(r in nonzero_rep(3, 3)) {
        let wp = polytope::weight_polytope(&r).unwrap();
        for g in wp.generators() {
            let m = lp_relint_membership(g, &wp).unwrap();
            prop_assert!(m.inside_closed);
        }
        prop_assert!(polytope::wp_containment(&r, &r).unwrap());
    }

    #[test]
    fn su2_difference_polynomial_matches_characters(rho in su2_map(), sigma in su2_map(), p in 1i64..=9, q in 1i64..=9) {
        let g = su2::char_diff_polynomial(&rho, &sigma);
        let t = rational::ratio(p, q);
        let x = TorusPoint::on_slice(vec![t.clone(), Rational::one() / &t]).unwrap();
        let diff = eval_char(&sigma.to_representation(), &x).unwrap() - eval_char(&rho.to_representation(), &x).unwrap();
        let d = rho.max_dimension().max(sigma.max_dimension()).unwrap() - 1;
        let scale: Rational = (0..d).map(|_| t.clone()).product();
        prop_assert_eq!(g.eval(&t), diff * scale);
    }

    #[test]
    fn su2_tropical_check_matches_polytopes(rho in su2_map(), sigma in su2_map()) {
        let strict = polytope::wp_strict_containment(&rho.to_representation(), &sigma.to_representation()).unwrap();
        prop_assert_eq!(su2::su2_tropical_check(&rho, &sigma).unwrap(), strict);
    }

    #[test]
    fn su2_certificate_is_sound(rho in su2_map(), sigma in su2_map()) {
        let g = su2::char_diff_polynomial(&rho, &sigma);
        match su2::certify_strict_positive_on_ray(&g) {
            su2::Certificate::NotPositive { witness } => {
                prop_assert!(witness >= Rational::one());
                prop_assert!(g.eval(&witness) <= Rational::zero());
            }
            su2::Certificate::Certified => {
                for k in 0..40 {
                    let t = Rational::one() + rational::ratio(k * k, 7);
                    prop_assert!(g.eval(&t) > Rational::zero());
                }
            }
            su2::Certificate::TouchesZero { lo, hi } => {
                prop_assert!(lo >= Rational::one() && lo < hi);
                prop_assert!(g.eval(&lo) > Rational::zero() && g.eval(&hi) > Rational::zero());
            }
            su2::Certificate::ZeroPolynomial => prop_assert!(g.is_zero()),
        }
    }

    #[test]
    fn representations_survive_json(r in nonzero_rep(4, 4)) {
        let text = serde_json::to_string(&r).unwrap();
        let back: Representation = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn multiplicity_map_round_trips(m in su2_map()) {
        prop_assert_eq!(su2::from_representation(&m.to_representation()).unwrap(), m);
    }
}

#[test]
fn sturm_counts_match_sampling() {
    let out = selftest::sturm_vs_sampling(1000, 12, 2024);
    assert!(out.passed, "{:?}", out.failures);
    assert_eq!(out.cases, 1000);
}

#[test]
fn huge_multiplicities_survive_json() {
    let big: BigUint = "123456789012345678901234567890".parse().unwrap();
    let r = Representation::from_terms(3, [(Partition::new(vec![2, 1]).unwrap(), big.clone())]).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains("123456789012345678901234567890"));
    let back: Representation = serde_json::from_str(&text).unwrap();
    assert_eq!(back.mult(&Partition::new(vec![2, 1]).unwrap()), big);
}
