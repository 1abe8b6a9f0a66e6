//! Dense univariate polynomials over ℚ in the indeterminate `q`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer numerators over the lcm of the denominators, if everything fits in i64.
pub(crate) fn small_numerators(coeffs: &[Rational]) -> Option<(Vec<i128>, i128)> {
    let mut den: i128 = 1;
    for c in coeffs {
        let d = i128::from(i64::try_from(c.denom()).ok()?);
        den = num_integer::lcm(den, d);
        if den > i128::from(i64::MAX) {
            return None;
        }
    }
    coeffs
        .iter()
        .map(|c| {
            let n = i128::from(i64::try_from(c.numer()).ok()?);
            let d = i128::from(i64::try_from(c.denom()).ok()?);
            n.checked_mul(den / d)
        })
        .collect::<Option<Vec<_>>>()
        .map(|v| (v, den))
}

/// Render a rational as `p` or `p/r`.
pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Polynomial `c0 + c1*q + c2*q^2 + ...` with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^e`
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `q^e`, zero past the degree.
    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(p) = self.mul_small(rhs) {
            return p;
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Product over a common denominator in i128; `None` on overflow.
    fn mul_small(&self, rhs: &Self) -> Option<Self> {
        let (a, da) = small_numerators(&self.coeffs)?;
        let (b, db) = small_numerators(&rhs.coeffs)?;
        let den = da.checked_mul(db)?;
        let mut out = vec![0i128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
            }
        }
        Some(Self::from_scaled(out, den))
    }

    /// The polynomial with coefficients `nums[i] / den`.
    pub(crate) fn from_scaled(nums: Vec<i128>, den: i128) -> Self {
        let coeffs = nums
            .into_iter()
            .map(|c| {
                let g = num_integer::gcd(c, den);
                Rational::new_raw(BigInt::from(c / g), BigInt::from(den / g))
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic (or zero).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (quo, rem) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, rem);
            let s2 = s0.sub(&quo.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&quo.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if let Some(lead) = r0.leading().cloned() {
            let inv = lead.recip();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        } else {
            (r0, s0, t0)
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for QPolynomial {
    /// `c0 + c1*q + c2*q^2`, negative coefficients rendered with `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

/// Φ_n(q), obtained by dividing `q^n - 1` by every Φ_d with d a proper divisor of n.
pub fn cyclotomic_polynomial(n: u32) -> QPolynomial {
    assert!(n >= 1, "cyclotomic_polynomial needs n >= 1");
    let mut num = QPolynomial::monomial(Rational::one(), n as usize);
    num = num.sub(&QPolynomial::one());
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (quo, rem) = num.div_rem(&cyclotomic_polynomial(d));
            debug_assert!(rem.is_zero());
            num = quo;
        }
    }
    num
}

/// Euler's totient, the degree of Φ_n.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), QPolynomial::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), QPolynomial::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), QPolynomial::from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), QPolynomial::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), QPolynomial::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn phi4_by_hand_division() {
        // (q^4 - 1) / ((q - 1)(q + 1)) = q^2 + 1
        let num = QPolynomial::from_ints(&[-1, 0, 0, 0, 1]);
        let den = QPolynomial::from_ints(&[-1, 1]).mul(&QPolynomial::from_ints(&[1, 1]));
        let (quo, rem) = num.div_rem(&den);
        assert!(rem.is_zero());
        assert_eq!(quo, cyclotomic_polynomial(4));
    }

    #[test]
    fn cyclotomics_divide_q_n_minus_one() {
        for n in 1..=24 {
            let phi = cyclotomic_polynomial(n);
            assert!(phi.is_integral());
            assert_eq!(phi.leading(), Some(&Rational::one()));
            assert_eq!(phi.degree(), Some(totient(n) as usize));
            let target = QPolynomial::monomial(Rational::one(), n as usize).sub(&QPolynomial::one());
            let (_, rem) = target.div_rem(&phi);
            assert!(rem.is_zero(), "Φ_{n} does not divide q^{n}-1");
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = QPolynomial::from_ints(&[1, 1]);
        let b = cyclotomic_polynomial(4);
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn display() {
        let p = QPolynomial::from_coeffs(vec![rat(1), rat(-2), rat_frac(1, 3)]);
        assert_eq!(p.to_string(), "1 - 2*q + 1/3*q^2");
        assert_eq!(QPolynomial::from_ints(&[0, -1]).to_string(), "-q");
        assert_eq!(QPolynomial::zero().to_string(), "0");
    }
}
