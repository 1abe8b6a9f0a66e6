//! Generalized Grassmann forms in the generators `d^m ξ^k` (1 ≤ m ≤ N−1).
//!
//! Products of total degree below N are free, above N they vanish, and at
//! degree N moving a leading block of degree p to the tail costs q^p.

mod curvature;
mod form;
mod monomial;

pub use curvature::{
    connection_form, covariant_d_form, curvature_form, curvature_report, linear_part,
    read_off_field_strength, twisted_derivative, BlockCheck, CurvatureReport,
};
pub use form::FormExpression;
pub use monomial::{canonicalize, CommutationRule, FormMonomial, Gen};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::scalars::{CycScalar, DiffRing, JetPoly, Mode, Ring, VarPoly};

    type Form = FormExpression<VarPoly>;

    fn gen(n: u32, dim: u32, m: u32, k: u32) -> Form {
        Form::generator(n, dim, m, k).unwrap()
    }

    fn x(n: u32, k: u32) -> VarPoly {
        VarPoly::coordinate(Mode::root(n), k)
    }

    fn coeff(n: u32, dim: u32, c: VarPoly) -> Form {
        Form::coefficient(n, dim, c)
    }

    #[test]
    fn unit_and_truncation() {
        let (n, dim) = (3, 4);
        let a = gen(n, dim, 1, 1).mul(&gen(n, dim, 2, 2));
        assert_eq!(a.mul(&Form::one(n, dim)), a);
        let four = gen(n, dim, 1, 1).mul(&gen(n, dim, 1, 2)).mul(&gen(n, dim, 1, 3).mul(&gen(n, dim, 1, 4)));
        assert!(four.is_zero());
        assert!(gen(n, dim, 2, 1).mul(&gen(n, dim, 2, 2)).is_zero());
        assert!(gen(n, dim, 3, 1).is_zero());
        assert!(Form::generator(n, dim, 1, 5).is_err());
    }

    #[test]
    fn eq32_relation() {
        let (n, dim) = (3, 2);
        let q = CycScalar::q(Mode::root(n));
        let lhs = gen(n, dim, 1, 1).mul(&gen(n, dim, 2, 2));
        let rhs = gen(n, dim, 2, 2).mul(&gen(n, dim, 1, 1)).scale_scalar(&q);
        assert_eq!(lhs, rhs);
        // d²ξ^k dξ^i − j² dξ^i d²ξ^k = 0
        let q2 = CycScalar::q_pow(Mode::root(n), 2);
        let rel = gen(n, dim, 2, 2)
            .mul(&gen(n, dim, 1, 1))
            .sub(&gen(n, dim, 1, 1).mul(&gen(n, dim, 2, 2)).scale_scalar(&q2));
        assert!(rel.is_zero());
    }

    #[test]
    fn ternary_cyclic_sum_vanishes() {
        let (n, dim) = (3, 3);
        let g = |k| gen(n, dim, 1, k);
        for (i, k, m) in [(1, 2, 3), (1, 1, 2), (2, 3, 3)] {
            let s = g(m).mul(&g(k)).mul(&g(i)).add(&g(k).mul(&g(i)).mul(&g(m))).add(&g(i).mul(&g(m)).mul(&g(k)));
            assert!(s.is_zero(), "({i},{k},{m})");
        }
    }

    #[test]
    fn exterior_d_examples() {
        let (n, dim) = (3, 2);
        let xx = coeff(n, dim, x(n, 1).times(&x(n, 2)));
        let expected = coeff(n, dim, x(n, 1))
            .mul(&gen(n, dim, 1, 2))
            .add(&coeff(n, dim, x(n, 2)).mul(&gen(n, dim, 1, 1)));
        assert_eq!(xx.d(), expected);

        // d²f = Σ (∂_k∂_i f) dξ^k dξ^i + (∂_i f) d²ξ^i
        let mode = Mode::root(n);
        let f = x(n, 1).times(&x(n, 1)).times(&x(n, 2)).plus(&x(n, 2).scale(&CycScalar::q(mode)));
        let mut expected = Form::zero(n, dim);
        for i in 1..=dim {
            expected = expected.add(&coeff(n, dim, f.partial(i)).mul(&gen(n, dim, 2, i)));
            for k in 1..=dim {
                let c = f.partial(i).partial(k);
                expected = expected.add(&coeff(n, dim, c).mul(&gen(n, dim, 1, k)).mul(&gen(n, dim, 1, i)));
            }
        }
        assert_eq!(coeff(n, dim, f).d_n(2), expected);
    }

    #[test]
    fn d_nilpotent_on_functions_and_forms() {
        let mut r = random::rng(21);
        for n in 3..=4 {
            let mode = Mode::root(n);
            for dim in 1..=3 {
                let f = random::var_poly(&mut r, mode, dim, n + 1, 4);
                assert!(coeff(n, dim, f.clone()).d_n(n as usize).is_zero());
                let w = coeff(n, dim, f).mul(&gen(n, dim, 1, 1));
                assert!(w.d_n(n as usize).is_zero());
            }
        }
    }

    #[test]
    fn graded_leibniz_on_generators() {
        let (n, dim) = (4, 2);
        let mode = Mode::root(n);
        let a = gen(n, dim, 1, 1).mul(&gen(n, dim, 1, 2));
        let b = gen(n, dim, 1, 2);
        let lhs = a.mul(&b).d();
        let rhs = a.d().mul(&b).add(&a.mul(&b.d()).scale_scalar(&CycScalar::q_pow(mode, 2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_rotation_orbits_are_consistent() {
        use itertools::Itertools;
        for n in 2..=4u32 {
            let mode = Mode::root(n);
            for dim in 1..=3u32 {
                let gens: Vec<Gen> = (1..n).flat_map(|m| (1..=dim).map(move |k| Gen::new(m, k))).collect();
                for len in 1..=n as usize {
                    for word in (0..len).map(|_| gens.iter().copied()).multi_cartesian_product() {
                        let w = FormMonomial::new(word);
                        if w.degree() != n {
                            continue;
                        }
                        let Some((ph, rep)) = canonicalize(&w, n, CommutationRule::BlockRotation) else {
                            continue;
                        };
                        let again = canonicalize(&rep, n, CommutationRule::BlockRotation).unwrap();
                        assert!(again.0.is_one() && again.1 == rep);
                        // moving any leading block in one step agrees with the stepwise path
                        for cut in 1..len {
                            let p: u32 = w.gens()[..cut].iter().map(|g| g.m).sum();
                            let (ph2, rep2) = canonicalize(&w.rotate(cut), n, CommutationRule::BlockRotation).unwrap();
                            assert_eq!(rep2, rep);
                            assert_eq!(ph, CycScalar::q_pow(mode, p as i64).times(&ph2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn associativity() {
        let mut r = random::rng(22);
        let (n, dim) = (4, 2);
        let mode = Mode::root(n);
        let rand_form = |r: &mut random::TestRng| {
            let mut f = Form::zero(n, dim);
            for m in 1..n {
                for k in 1..=dim {
                    f = f.add(&coeff(n, dim, random::var_poly(r, mode, dim, 1, 2)).mul(&gen(n, dim, m, k)));
                }
            }
            f
        };
        for _ in 0..5 {
            let (a, b, c) = (rand_form(&mut r), rand_form(&mut r), rand_form(&mut r));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn covariant_d_of_unit_and_connection() {
        let (n, dim) = (3, 2);
        let mode = Mode::root(n);
        let a = connection_form(n, dim);
        let one = FormExpression::<JetPoly>::one(n, dim);
        assert_eq!(covariant_d_form(&a, &one).unwrap(), a);
        // D(A) = dA + A·A, with dA = Σ (∂_j A_i) dξ^j dξ^i + A_i d²ξ^i
        let mut da = FormExpression::<JetPoly>::zero(n, dim);
        for i in 1..=dim {
            let ai = JetPoly::field(mode, i);
            let g2 = FormExpression::<JetPoly>::generator(n, dim, 2, i).unwrap();
            da = da.add(&g2.left_mul_coeff(&ai));
            for j in 1..=dim {
                let w = FormExpression::<JetPoly>::generator(n, dim, 1, j)
                    .unwrap()
                    .mul(&FormExpression::generator(n, dim, 1, i).unwrap());
                da = da.add(&w.left_mul_coeff(&ai.partial(j)));
            }
        }
        assert_eq!(covariant_d_form(&a, &a).unwrap(), da.add(&a.mul(&a)));
        let omega = curvature_form(&a);
        let d3 = (0..3).fold(one, |acc, _| covariant_d_form(&a, &acc).unwrap());
        assert_eq!(d3, omega);
    }

    #[test]
    fn covariant_power_on_functions() {
        for n in [3, 4] {
            let dim = 2;
            let mode = Mode::root(n);
            let a = connection_form(n, dim);
            let omega = curvature_form(&a);
            let power = |phi: &FormExpression<JetPoly>| {
                (0..n).fold(phi.clone(), |acc, _| covariant_d_form(&a, &acc).unwrap())
            };
            let c = FormExpression::coefficient(n, dim, JetPoly::from_scalar(CycScalar::from_int(mode, 5)));
            assert_eq!(power(&c), omega.mul(&c));
            // a field-dependent φ leaves first-derivative terms behind
            let phi = FormExpression::coefficient(n, dim, JetPoly::field(mode, 1));
            assert!(!power(&phi).sub(&omega.mul(&phi)).is_zero());
        }
    }

    #[test]
    fn zero_connection_is_flat() {
        let a = FormExpression::<JetPoly>::zero(3, 2);
        assert!(curvature_form(&a).is_zero());
    }

    #[test]
    fn curvature_blocks() {
        let r3 = curvature_report(3, 2).unwrap();
        assert!(r3.exhausted);
        assert!(r3.blocks[0].literal_match);
        let cubic = &r3.blocks[1];
        assert!(!cubic.literal_match);
        assert_eq!(cubic.full_match.as_deref(), Some("constant=q^2, twist=q"));
        assert_eq!(cubic.linear_match.as_deref(), Some("constant=q^2, normalization=1/3"));

        let r4 = curvature_report(4, 2).unwrap();
        assert!(r4.exhausted);
        assert!(r4.blocks[1].literal_match, "F~ = (i/2) F");
        assert_eq!(r4.blocks[2].linear_match.as_deref(), Some("constant=q, normalization=1/1"));
        assert_eq!(r4.blocks[3].linear_match.as_deref(), Some("constant=q^3, normalization=1/2"));
        assert!(curvature_report(5, 2).is_err());
    }
}
