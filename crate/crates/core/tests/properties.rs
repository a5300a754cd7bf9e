mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use artinsum::grobner::{groebner_basis, normal_form, GbConfig, IdealPresentation};
use artinsum::polycore::parse_polynomial;
use artinsum::quotient::build_algebra;
use artinsum::resolution::SeriesTrunc;
use artinsum::sums::apolar_algebra;
use artinsum::{Field, Monomial, PolyRing, Polynomial, TermOrder};

use common::*;

fn ring() -> Arc<PolyRing> {
    PolyRing::new(gf(), names("X", 3))
}

fn qq_ring() -> Arc<PolyRing> {
    PolyRing::new(Field::Rationals, names("X", 3))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, 3).prop_map(|e| Monomial::from_exponents(&e).unwrap())
}

fn terms() -> impl Strategy<Value = Vec<(Monomial, i64)>> {
    prop::collection::vec((monomial(), -50i64..50), 0..6)
}

fn poly_in(r: &Arc<PolyRing>, t: &[(Monomial, i64)]) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(r, t.iter().map(|(m, c)| (m.clone(), f.from_i64(*c))))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    terms().prop_map(|t| poly_in(&ring(), &t))
}

fn order() -> impl Strategy<Value = TermOrder> {
    prop_oneof![
        Just(TermOrder::Grevlex),
        Just(TermOrder::Lex),
        Just(TermOrder::block(vec![0], vec![1, 2], 3).unwrap()),
        Just(TermOrder::block(vec![2, 0], vec![1], 3).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(a.ring()), a.clone());
    }

    #[test]
    fn orders_are_total_and_multiplicative(o in order(), a in monomial(), b in monomial(), c in monomial()) {
        let ab = o.compare(&a, &b);
        prop_assert_eq!(ab, o.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
        prop_assert_ne!(o.compare(&a.mul(&c), &a), Ordering::Less);
        if o.compare(&a, &b) != Ordering::Greater && o.compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(o.compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn display_parses_back(t in terms()) {
        for r in [ring(), qq_ring()] {
            let f = poly_in(&r, &t);
            let g = parse_polynomial(&f.to_string(), &r).unwrap();
            prop_assert_eq!(g, f);
        }
    }

    #[test]
    fn groebner_membership_and_idempotence(o in order(), g in prop::collection::vec(poly(), 1..3), h in poly()) {
        let cfg = GbConfig::default();
        let Ok(gb) = groebner_basis(&g, &o, &cfg) else { return Ok(()); };
        for f in &g {
            prop_assert!(normal_form(f, &gb, &o).unwrap().is_zero());
        }
        let combo = &(&h * &g[0]) + g.last().unwrap();
        prop_assert!(normal_form(&combo, &gb, &o).unwrap().is_zero());
        let again = groebner_basis(&gb, &o, &cfg).unwrap();
        prop_assert_eq!(&again, &gb);
        let nf = normal_form(&h, &gb, &o).unwrap();
        prop_assert_eq!(normal_form(&nf, &gb, &o).unwrap(), nf.clone());
        prop_assert!(normal_form(&(&h - &nf), &gb, &o).unwrap().is_zero());
    }

    #[test]
    fn gorenstein_duality(seed in any::<u64>(), n in 1usize..=3, d in 2u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = apolar_algebra(&random_dual(&mut rng, n, d)).unwrap();
        prop_assert!(a.is_gorenstein());
        prop_assert_eq!(a.loewy_length(), d as usize);
        let len = a.length();
        for i in 0..=a.loewy_length() {
            let w = a.power(i);
            prop_assert_eq!(a.colon(&w).dim(), len - w.dim());
            prop_assert_eq!(a.colon(&a.colon(&w)), w);
        }
    }

    #[test]
    fn graded_gorenstein_is_symmetric(seed in any::<u64>(), n in 1usize..=3, d in 2u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = PolyRing::new(gf(), names("u", n));
        let f = random_form(&mut rng, &r, d);
        let a = apolar_algebra(&artinsum::sums::DualPolynomial::new(f).unwrap()).unwrap();
        let h = a.hilbert_function();
        let rev: Vec<usize> = h.iter().rev().copied().collect();
        prop_assert_eq!(h, rev);
    }

    #[test]
    fn series_reciprocal(c in prop::collection::vec(-9i64..9, 1..8), n in 1usize..10) {
        let mut c = c;
        c[0] = 1 + c[0].abs();
        let s = SeriesTrunc::from_ints(c, n);
        let inv = s.reciprocal().unwrap();
        prop_assert_eq!(s.mul(&inv), SeriesTrunc::one(n));
        prop_assert_eq!(inv.reciprocal().unwrap(), s);
    }

    #[test]
    fn quotient_length_matches_standard_monomials(o in 2u32..5, extra in poly()) {
        let r = ring();
        let mut gens: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&r, i).pow(o)).collect();
        gens.push(extra);
        let a = build_algebra(&IdealPresentation::new(&r, gens).unwrap());
        if let Ok(a) = a {
            prop_assert!(a.length() <= (o as usize).pow(3));
            prop_assert_eq!(a.hilbert_function().iter().sum::<usize>(), a.length());
        }
    }
}
