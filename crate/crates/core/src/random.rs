//! Seeded generators for random scalars, matrices and polynomials.
//!
//! Coefficients are small rationals: numerators in `-9..=9`, denominators in `1..=3`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graded_matrix::GradedMatrix;
use crate::grassmann::{FormExpression, FormMonomial, Gen};
use crate::scalars::{rat_frac, CycScalar, Mode, QPolynomial, Ring, VarPoly};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a named check so that adding a check
/// does not shift the values drawn by the others.
pub fn sub_rng(seed: u64, label: &str) -> TestRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn small_rational(rng: &mut TestRng) -> crate::scalars::Rational {
    let num = rng.gen_range(-9i64..=9);
    let den = if rng.gen_bool(0.75) { 1 } else { rng.gen_range(2i64..=3) };
    rat_frac(num, den)
}

/// A random element of the field; every power of q below deg Φ_N may appear.
pub fn scalar(rng: &mut TestRng, mode: Mode) -> CycScalar {
    let len = match mode {
        Mode::Generic => 4,
        Mode::PrimitiveRoot(n) => crate::scalars::totient(n) as usize,
    };
    let coeffs = (0..len)
        .map(|_| {
            if rng.gen_bool(0.6) {
                small_rational(rng)
            } else {
                rat_frac(0, 1)
            }
        })
        .collect();
    CycScalar::new(mode, QPolynomial::from_coeffs(coeffs))
}

pub fn nonzero_scalar(rng: &mut TestRng, mode: Mode) -> CycScalar {
    loop {
        let s = scalar(rng, mode);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn matrix(rng: &mut TestRng, n: usize) -> GradedMatrix {
    let mode = Mode::root(n as u32);
    GradedMatrix::from_fn(n, |_, _| scalar(rng, mode))
}

pub fn homogeneous(rng: &mut TestRng, n: usize, b: usize) -> GradedMatrix {
    let mode = Mode::root(n as u32);
    GradedMatrix::off_diagonal(b, (0..n).map(|_| scalar(rng, mode)).collect())
}

pub fn invertible_diagonal(rng: &mut TestRng, n: usize) -> GradedMatrix {
    let mode = Mode::root(n as u32);
    GradedMatrix::diagonal((0..n).map(|_| nonzero_scalar(rng, mode)).collect())
}

/// Random polynomial in the coordinates `x1..x{dim}` of total degree ≤ `max_deg`.
pub fn var_poly(rng: &mut TestRng, mode: Mode, dim: u32, max_deg: u32, terms: usize) -> VarPoly {
    let mut p = VarPoly::zero(mode);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let mut mon = VarPoly::one(mode);
        for _ in 0..deg {
            mon = mon.times(&VarPoly::coordinate(mode, rng.gen_range(1..=dim)));
        }
        p = p.plus(&mon.scale(&nonzero_scalar(rng, mode)));
    }
    p
}

/// Random form of total degree ≤ N with polynomial coefficients; monomials are
/// drawn factor by factor, so degree-N words exercise the rotation rules.
pub fn form(rng: &mut TestRng, n: u32, dim: u32, terms: usize) -> FormExpression<VarPoly> {
    let mode = Mode::root(n);
    let mut out = FormExpression::zero(n, dim);
    for _ in 0..terms {
        let mut gens = Vec::new();
        let mut deg = 0;
        let target = rng.gen_range(0..=n);
        while deg < target {
            let m = rng.gen_range(1..=(target - deg).min(n - 1));
            gens.push(Gen::new(m, rng.gen_range(1..=dim)));
            deg += m;
        }
        let count = rng.gen_range(1..=2);
        let c = var_poly(rng, mode, dim, 2, count);
        out.add_monomial(FormMonomial::new(gens), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mode = Mode::root(5);
        let a: Vec<_> = (0..5).map(|_| scalar(&mut rng(3), mode)).collect();
        let b: Vec<_> = (0..5).map(|_| scalar(&mut rng(3), mode)).collect();
        assert_eq!(a, b);
        let mut x = sub_rng(1, "alpha");
        let mut y = sub_rng(1, "beta");
        assert_ne!(x.gen::<u64>(), y.gen::<u64>());
    }

    #[test]
    fn homogeneous_has_degree() {
        let mut r = rng(11);
        for b in 0..4 {
            assert_eq!(homogeneous(&mut r, 4, b).degree(), Some(b));
        }
    }
}
