//! Exact scalars in ℚ[q] or in the cyclotomic field ℚ[q]/(Φ_N).

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::qpoly::{cyclotomic_polynomial, rat, small_numerators, QPolynomial, Rational};
use super::Ring;
use crate::error::{Error, Result};

/// Where `q` lives: a free indeterminate, or a primitive N-th root of unity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Mode {
    Generic,
    PrimitiveRoot(u32),
}

impl Mode {
    pub fn root(n: u32) -> Self {
        assert!(n >= 2, "primitive root mode needs N >= 2");
        Mode::PrimitiveRoot(n)
    }

    /// The grading order, if any.
    pub fn order(&self) -> Option<u32> {
        match self {
            Mode::Generic => None,
            Mode::PrimitiveRoot(n) => Some(*n),
        }
    }

    fn check(self, other: Mode) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModeMismatch(self, other))
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Generic => write!(f, "generic"),
            Mode::PrimitiveRoot(n) => write!(f, "root:{n}"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "generic" {
            return Ok(Mode::Generic);
        }
        let n = s
            .strip_prefix("root:")
            .and_then(|n| n.parse::<u32>().ok())
            .ok_or_else(|| format!("expected `generic` or `root:N`, got `{s}`"))?;
        if n < 2 {
            return Err("root:N needs N >= 2".into());
        }
        Ok(Mode::PrimitiveRoot(n))
    }
}

/// Reduction data for ℚ[q]/(Φ_N): Φ_N itself and q^e mod Φ_N for 0 <= e < N.
#[derive(Debug)]
struct RootContext {
    n: usize,
    phi_deg: usize,
    phi: QPolynomial,
    /// `powers[e]` holds the integer coefficients of q^e mod Φ_N, length `phi_deg`.
    powers: Vec<Vec<i64>>,
}

impl RootContext {
    fn build(n: u32) -> Self {
        let phi = cyclotomic_polynomial(n);
        let phi_deg = phi.degree().unwrap();
        let phi_int: Vec<i64> = phi
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c.numer().clone()).expect("Φ_N coefficient fits in i64"))
            .collect();
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi_deg];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by q, then subtract top * Φ_N (monic)
            let top = cur[phi_deg - 1];
            let mut next = vec![0i64; phi_deg];
            for i in (1..phi_deg).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..phi_deg {
                next[i] -= top * phi_int[i];
            }
            cur = next;
        }
        Self {
            n: n as usize,
            phi_deg,
            phi,
            powers,
        }
    }

    fn reduce(&self, coeffs: &[Rational]) -> QPolynomial {
        if coeffs.len() <= self.phi_deg {
            return QPolynomial::from_coeffs(coeffs.to_vec());
        }
        let mut folded = vec![Rational::zero(); self.n];
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                folded[e % self.n] += c;
            }
        }
        let mut out: Vec<Rational> = folded[..self.phi_deg].to_vec();
        for (e, c) in folded.iter().enumerate().skip(self.phi_deg) {
            if c.is_zero() {
                continue;
            }
            for (i, &p) in self.powers[e].iter().enumerate() {
                match p {
                    0 => {}
                    1 => out[i] += c,
                    -1 => out[i] -= c,
                    _ => out[i] += c * rat(p),
                }
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

impl RootContext {
    /// Product reduced mod Φ_N with i128 numerators; `None` on overflow.
    fn mul_small(&self, a: &QPolynomial, b: &QPolynomial) -> Option<QPolynomial> {
        let (a, da) = small_numerators(a.coeffs())?;
        let (b, db) = small_numerators(b.coeffs())?;
        let den = da.checked_mul(db)?;
        let mut folded = vec![0i128; self.n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let e = (i + j) % self.n;
                folded[e] = folded[e].checked_add(x.checked_mul(y)?)?;
            }
        }
        let mut out = folded[..self.phi_deg].to_vec();
        for (e, &c) in folded.iter().enumerate().skip(self.phi_deg) {
            if c == 0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.powers[e]) {
                *o = o.checked_add(c.checked_mul(i128::from(p))?)?;
            }
        }
        Some(QPolynomial::from_scaled(out, den))
    }
}

const CACHED_ORDERS: usize = 65;

static CONTEXTS: [OnceLock<Arc<RootContext>>; CACHED_ORDERS] =
    [const { OnceLock::new() }; CACHED_ORDERS];

fn context(n: u32) -> Arc<RootContext> {
    match CONTEXTS.get(n as usize) {
        Some(cell) => cell.get_or_init(|| Arc::new(RootContext::build(n))).clone(),
        None => Arc::new(RootContext::build(n)),
    }
}

/// An exact scalar. In `PrimitiveRoot(N)` mode the stored polynomial always has
/// degree below deg Φ_N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    mode: Mode,
    value: QPolynomial,
}

impl CycScalar {
    /// Builds the scalar, reducing modulo Φ_N in root mode.
    pub fn new(mode: Mode, value: QPolynomial) -> Self {
        let value = match mode {
            Mode::Generic => value,
            Mode::PrimitiveRoot(n) => context(n).reduce(value.coeffs()),
        };
        Self { mode, value }
    }

    pub fn zero(mode: Mode) -> Self {
        Self {
            mode,
            value: QPolynomial::zero(),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Self {
            mode,
            value: QPolynomial::one(),
        }
    }

    pub fn from_int(mode: Mode, n: i64) -> Self {
        Self::from_rational(mode, rat(n))
    }

    pub fn from_rational(mode: Mode, r: Rational) -> Self {
        Self {
            mode,
            value: QPolynomial::constant(r),
        }
    }

    pub fn q(mode: Mode) -> Self {
        Self::q_pow(mode, 1)
    }

    /// q^e. Negative exponents need root mode, where q^{-1} = q^{N-1}.
    pub fn q_pow(mode: Mode, e: i64) -> Self {
        match mode {
            Mode::Generic => {
                assert!(e >= 0, "q^{e} is not in ℚ[q]");
                Self::new(mode, QPolynomial::monomial(Rational::one(), e as usize))
            }
            Mode::PrimitiveRoot(n) => {
                let e = e.rem_euclid(n as i64) as usize;
                let ctx = context(n);
                let coeffs = ctx.powers[e].iter().map(|&c| rat(c)).collect();
                Self {
                    mode,
                    value: QPolynomial::from_coeffs(coeffs),
                }
            }
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn value(&self) -> &QPolynomial {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    /// The rational value, when the scalar is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.value.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.mode.check(rhs.mode)?;
        Ok(Self {
            mode: self.mode,
            value: self.value.add(&rhs.value),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.mode.check(rhs.mode)?;
        Ok(Self {
            mode: self.mode,
            value: self.value.sub(&rhs.value),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.mode.check(rhs.mode)?;
        if let Mode::PrimitiveRoot(n) = self.mode {
            if self.is_zero() || rhs.is_zero() {
                return Ok(Self::zero(self.mode));
            }
            if let Some(value) = context(n).mul_small(&self.value, &rhs.value) {
                return Ok(Self { mode: self.mode, value });
            }
        }
        Ok(Self::new(self.mode, self.value.mul(&rhs.value)))
    }

    pub fn neg(&self) -> Self {
        Self {
            mode: self.mode,
            value: self.value.neg(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self {
            mode: self.mode,
            value: self.value.scale(r),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.mode);
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    /// Field inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inverse(&self) -> Result<Self> {
        let Mode::PrimitiveRoot(n) = self.mode else {
            return Err(Error::GenericInverse);
        };
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let phi = &context(n).phi;
        let (g, s, _) = self.value.ext_gcd(phi);
        debug_assert!(g.is_one(), "Φ_N is irreducible");
        Ok(Self::new(self.mode, s))
    }

    /// Reinterpret a generic-mode value in another mode.
    pub fn reduce_into(&self, mode: Mode) -> Self {
        Self::new(mode, self.value.clone())
    }
}

impl Ring for CycScalar {
    fn zero(mode: Mode) -> Self {
        CycScalar::zero(mode)
    }

    fn from_scalar(s: CycScalar) -> Self {
        s
    }

    fn mode(&self) -> Mode {
        self.mode
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn negate(&self) -> Self {
        self.neg()
    }

    fn scale(&self, s: &CycScalar) -> Self {
        self.times(s)
    }
}

/// Mode-checked addition.
pub fn scalar_add(a: &CycScalar, b: &CycScalar) -> Result<CycScalar> {
    a.checked_add(b)
}

/// Mode-checked multiplication.
pub fn scalar_mul(a: &CycScalar, b: &CycScalar) -> Result<CycScalar> {
    a.checked_mul(b)
}

pub fn scalar_neg(a: &CycScalar) -> CycScalar {
    a.neg()
}

pub fn scalar_inverse(a: &CycScalar) -> Result<CycScalar> {
    a.inverse()
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.mode, self.value)
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $call:ident) => {
        impl std::ops::$tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                Ring::$call(self, rhs)
            }
        }
        impl std::ops::$tr for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                Ring::$call(&self, &rhs)
            }
        }
    };
}

forward_op!(Add, add, plus);
forward_op!(Sub, sub, minus);
forward_op!(Mul, mul, times);

impl std::ops::Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(&self)
    }
}

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::qpoly::rat_frac;

    fn poly(mode: Mode, c: &[i64]) -> CycScalar {
        CycScalar::new(mode, QPolynomial::from_ints(c))
    }

    #[test]
    fn q_squared_is_one_at_n2() {
        let m = Mode::root(2);
        let q = CycScalar::q(m);
        assert!((&q * &q).is_one());
        assert_eq!(q, CycScalar::from_int(m, -1));
    }

    #[test]
    fn additive_inverse() {
        let m = Mode::Generic;
        assert!((poly(m, &[1, 1]) + poly(m, &[-1, -1])).is_zero());
    }

    #[test]
    fn q_cubed_reduces_to_one() {
        let m = Mode::root(3);
        let q = CycScalar::q(m);
        let q2 = CycScalar::q_pow(m, 2);
        assert!((q * q2).is_one());
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = CycScalar::one(Mode::Generic);
        let b = CycScalar::one(Mode::root(3));
        assert!(matches!(
            scalar_add(&a, &b),
            Err(Error::ModeMismatch(Mode::Generic, Mode::PrimitiveRoot(3)))
        ));
        assert!(scalar_mul(&a, &b).is_err());
    }

    #[test]
    fn inverse_examples() {
        let m = Mode::root(4);
        assert!(CycScalar::one(m).inverse().unwrap().is_one());
        for n in 2..9 {
            let m = Mode::root(n);
            let inv = CycScalar::q(m).inverse().unwrap();
            assert_eq!(inv, CycScalar::q_pow(m, n as i64 - 1));
        }
        let inv = poly(m, &[1, 1]).inverse().unwrap();
        let expected = CycScalar::new(m, QPolynomial::from_coeffs(vec![rat_frac(1, 2), rat_frac(-1, 2)]));
        assert_eq!(inv, expected);
    }

    #[test]
    fn inverse_errors() {
        assert_eq!(CycScalar::zero(Mode::root(5)).inverse(), Err(Error::ZeroInverse));
        assert_eq!(CycScalar::q(Mode::Generic).inverse(), Err(Error::GenericInverse));
    }

    #[test]
    fn primitive_order() {
        for n in 2..=12u32 {
            let m = Mode::root(n);
            let q = CycScalar::q(m);
            assert!(q.pow(n).is_one());
            for k in 1..n {
                assert!(!q.pow(k).is_one(), "q^{k} = 1 at N = {n}");
            }
        }
    }

    #[test]
    fn large_order_uncached() {
        let m = Mode::root(70);
        assert!(CycScalar::q(m).pow(70).is_one());
        assert!(!CycScalar::q(m).pow(35).is_one());
    }

    #[test]
    fn mode_parse() {
        assert_eq!("generic".parse::<Mode>().unwrap(), Mode::Generic);
        assert_eq!("root:4".parse::<Mode>().unwrap(), Mode::root(4));
        assert!("root:1".parse::<Mode>().is_err());
        assert!("root".parse::<Mode>().is_err());
    }
}
