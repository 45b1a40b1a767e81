use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use tbb_core::linalg::rank_of;
use tbb_core::projection::NormalFormCache;
use tbb_core::region::is_connected_to_one;
use tbb_core::{parse_poly, run, Field, LaurentPoly, Monomial, MonomialRegion, Outcome, Scalar, SolverConfig};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::GF32003), Just(Field::Prime(7))]
}

fn monomial(n: usize, r: i32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-r..=r, n).prop_map(|v| Monomial::new(&v))
}

fn scalar(f: Field) -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=6).prop_map(move |(a, b)| f.from_ratio(&BigInt::from(a), &BigInt::from(b)).unwrap())
}

fn poly(f: Field, n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(n, 3), scalar(f)), 0..6).prop_map(move |terms| {
        let mut p = LaurentPoly::zero(n);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    })
}

proptest! {
    #[test]
    fn text_round_trip((f, p) in field().prop_flat_map(|f| (Just(f), poly(f, 3)))) {
        prop_assume!(!p.is_zero());
        let text = p.to_string();
        let back = parse_poly(&text, 3, f).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn order_refines_degree(a in monomial(3, 4), b in monomial(3, 4)) {
        if a.degree() < b.degree() {
            prop_assert!(a < b);
        }
        prop_assert_eq!(a == b, a.cmp(&b) == std::cmp::Ordering::Equal);
    }

    #[test]
    fn rank_ignores_row_order_and_scaling(
        rows in prop::collection::vec(poly(Field::GF32003, 2), 1..6),
        scales in prop::collection::vec(1i64..32003, 6),
        rot in 0usize..6,
    ) {
        let base = rank_of(2, &rows);
        let mut moved: Vec<LaurentPoly> = rows
            .iter()
            .zip(&scales)
            .map(|(p, &s)| p.scale(&Field::GF32003.from_i64(s)))
            .collect();
        let k = rot % moved.len();
        moved.rotate_left(k);
        prop_assert_eq!(rank_of(2, &moved), base);
        let mut doubled = rows.clone();
        doubled.push(rows[0].clone());
        prop_assert_eq!(rank_of(2, &doubled), base);
    }

    #[test]
    fn carving_keeps_connected_to_one(apexes in prop::collection::vec(monomial(2, 3), 1..5)) {
        let mut region = MonomialRegion::full(2);
        for a in apexes.iter().filter(|a| !a.is_one()) {
            region = region.remove_cone(a).unwrap();
        }
        let t: BTreeSet<Monomial> = region.truncate(6);
        prop_assert!(t.contains(&Monomial::one(2)));
        prop_assert!(is_connected_to_one(&t));
        for a in apexes.iter().filter(|a| !a.is_one()) {
            prop_assert!(!region.contains(a));
        }
    }
}

/// A fixed zero-dimensional system for the normal-form properties.
fn solved() -> tbb_core::Projection {
    let sys = tbb_core::parse_system("x1 + x2 - 3\nx1*x2^-1 - 2 + x2^-1", Field::Rational).unwrap();
    let r = run(&sys.polys, &SolverConfig::default()).unwrap();
    assert!(matches!(r.outcome, Outcome::BorderBasis { .. }));
    // the rules are complete, so sigma is defined at any degree
    r.projection.unwrap().with_degree(12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_linear_and_idempotent(p in poly(Field::Rational, 2), q in poly(Field::Rational, 2)) {
        let proj = solved();
        let mut nf = NormalFormCache::new(&proj);
        let sp = nf.sigma(&p).unwrap();
        let sq = nf.sigma(&q).unwrap();
        prop_assert_eq!(nf.sigma(&p.add(&q)).unwrap(), sp.add(&sq));
        prop_assert_eq!(nf.sigma(&sp).unwrap(), sp.clone());
        prop_assert!(sp.support().all(|m| proj.in_b(m)));
    }

    #[test]
    fn ideal_elements_reduce_to_zero(h in poly(Field::Rational, 2), which in 0usize..8) {
        let proj = solved();
        let rules = proj.rule_polynomials();
        let f = &rules[which % rules.len()];
        let mut nf = NormalFormCache::new(&proj);
        prop_assert!(nf.sigma(&h.mul(f)).unwrap().is_zero());
    }
}
