use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

use qdiff::covariant::{curvature, pure_gauge, Connection};
use qdiff::deformation::{ConjugationPolynomial, EpsScalar};
use qdiff::graded_matrix::{d_q, d_q_closed_form, d_q_iterated, Differential, GradedMatrix};
use qdiff::parse::parse_form;
use qdiff::random::{self, TestRng};
use qdiff::scalars::{q_binomial, q_binomial_row, CycScalar, Mode, Rational, Ring};

fn rng(seed: u64) -> TestRng {
    random::rng(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_inverse(seed: u64, n in 2u32..=12) {
        let mode = Mode::root(n);
        let a = random::nonzero_scalar(&mut rng(seed), mode);
        let inv = a.inverse().unwrap();
        prop_assert!(a.times(&inv).is_one());
        prop_assert!(inv.inverse().unwrap() == a);
    }

    #[test]
    fn scalar_ring_laws(seed: u64, n in 2u32..=12) {
        let mode = Mode::root(n);
        let r = &mut rng(seed);
        let (a, b, c) = (random::scalar(r, mode), random::scalar(r, mode), random::scalar(r, mode));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero());
    }

    #[test]
    fn products_agree_past_i64(seed: u64, n in 2u32..=12, shift in 40u32..=90) {
        let mode = Mode::root(n);
        let r = &mut rng(seed);
        let (a, b) = (random::scalar(r, mode), random::scalar(r, mode));
        let big = Rational::new(BigInt::from(3).pow(shift), BigInt::from(7).pow(shift / 2));
        prop_assert_eq!(a.scale_rational(&big).times(&b), a.times(&b).scale_rational(&big));
    }

    #[test]
    fn q_has_order_n(n in 2u32..=24) {
        let mode = Mode::root(n);
        prop_assert!(CycScalar::q_pow(mode, n as i64).is_one());
        for e in 1..n {
            prop_assert!(!CycScalar::q_pow(mode, e as i64).is_one());
        }
    }

    #[test]
    fn binomials_vanish_at_the_root(n in 2u32..=16) {
        let mode = Mode::root(n);
        for k in 1..n {
            prop_assert!(q_binomial(n, k, mode).is_zero());
        }
        prop_assert!(q_binomial(n, 0, mode).is_one());
        prop_assert!(q_binomial(n, n, mode).is_one());
    }

    #[test]
    fn binomial_row_is_symmetric(n in 0u32..=10) {
        let row = q_binomial_row(n, Mode::Generic);
        let rev: Vec<_> = row.iter().rev().cloned().collect();
        prop_assert_eq!(row, rev);
    }

    #[test]
    fn d_q_is_nilpotent(seed: u64, n in 2usize..=6) {
        let b = random::matrix(&mut rng(seed), n);
        prop_assert!(d_q_iterated(&b, n).is_zero());
    }

    #[test]
    fn d_k_is_nilpotent(seed: u64, n in 2usize..=6) {
        let r = &mut rng(seed);
        let b = random::matrix(r, n);
        let k = r.gen_range(1..=n);
        prop_assert!(Differential::Partial(k).apply_n(&b, n).unwrap().is_zero());
    }

    #[test]
    fn closed_form_matches_iteration(seed: u64, n in 2usize..=6) {
        let r = &mut rng(seed);
        let deg = r.gen_range(0..n);
        let b = random::homogeneous(r, n, deg);
        for m in 1..=n {
            prop_assert_eq!(d_q_closed_form(&b, m).unwrap(), d_q_iterated(&b, m));
        }
    }

    #[test]
    fn d_q_raises_degree(seed: u64, n in 2usize..=6) {
        let r = &mut rng(seed);
        let deg = r.gen_range(0..n);
        let db = d_q(&random::homogeneous(r, n, deg));
        if !db.is_zero() {
            prop_assert_eq!(db.degree(), Some((deg + 1) % n));
        }
    }

    #[test]
    fn covariant_power_reduces_to_curvature(seed: u64, n in 2usize..=5) {
        let r = &mut rng(seed);
        let a = Connection::new(random::homogeneous(r, n, 1), Differential::Q).unwrap();
        let phi = random::matrix(r, n);
        prop_assert_eq!(a.apply_n(&phi, n).unwrap(), curvature(&a).omega.mul(&phi));
    }

    #[test]
    fn pure_gauge_is_flat(seed: u64, n in 2usize..=5) {
        let s = random::invertible_diagonal(&mut rng(seed), n);
        prop_assert!(curvature(&pure_gauge(&s, Differential::Q).unwrap()).is_flat());
    }

    #[test]
    fn decomposition_sums_back(seed: u64, n in 2usize..=6) {
        let b = random::matrix(&mut rng(seed), n);
        let sum = b
            .decompose()
            .into_iter()
            .fold(GradedMatrix::zero(n), |acc, (deg, part)| {
                assert_eq!(part.degree(), Some(deg));
                acc.add(&part)
            });
        prop_assert_eq!(sum, b);
    }

    #[test]
    fn form_d_is_nilpotent(seed: u64, n in 2u32..=4, dim in 1u32..=3) {
        let w = random::form(&mut rng(seed), n, dim, 3);
        prop_assert!(w.d_n(n as usize).is_zero());
    }

    #[test]
    fn form_products_are_associative(seed: u64, n in 2u32..=4, dim in 1u32..=2) {
        let r = &mut rng(seed);
        let (a, b, c) = (random::form(r, n, dim, 2), random::form(r, n, dim, 2), random::form(r, n, dim, 2));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn parser_round_trip(seed: u64, n in 2u32..=5, dim in 1u32..=3) {
        let w = random::form(&mut rng(seed), n, dim, 3);
        let text = w.to_string();
        let back = parse_form(&text, n, dim).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, w);
    }

    #[test]
    fn eps_ring_laws(seed: u64, n in 2u32..=6) {
        let mode = Mode::root(n);
        let r = &mut rng(seed);
        let mut eps = || {
            let len = r.gen_range(0..4);
            EpsScalar::from_coeffs(mode, (0..len).map(|_| random::scalar(r, mode)).collect())
        };
        let (a, b, c) = (eps(), eps(), eps());
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.times(&EpsScalar::one(mode)), a.clone());
    }

    #[test]
    fn eigenprojectors_are_orthogonal_idempotents(n in 2usize..=8) {
        let projectors: Vec<_> = (0..n).map(|s| ConjugationPolynomial::eigenprojector(n, s)).collect();
        let mut total = ConjugationPolynomial::zero(n);
        for (s, p) in projectors.iter().enumerate() {
            prop_assert!(p.is_idempotent());
            for (t, other) in projectors.iter().enumerate() {
                if s != t {
                    prop_assert!(p.compose(other).is_zero());
                }
            }
            total = total.add(p);
        }
        prop_assert_eq!(total, ConjugationPolynomial::identity(n));
    }
}
