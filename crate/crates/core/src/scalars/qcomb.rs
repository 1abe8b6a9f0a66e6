//! q-integers, q-factorials and Gaussian binomials.
//!
//! [k]_q = 1 + q + ... + q^{k-1}. Binomials come from the Pascal-type
//! recurrence [n+1, k+1] = [n, k] + q^{k+1} [n, k+1], which needs no division
//! and therefore works in ℚ[q] as well as in the cyclotomic field.

use super::{CycScalar, Mode, Ring};

pub fn q_integer(k: u32, mode: Mode) -> CycScalar {
    let mut acc = CycScalar::zero(mode);
    for e in 0..k {
        acc = acc.plus(&CycScalar::q_pow(mode, e as i64));
    }
    acc
}

pub fn q_factorial(k: u32, mode: Mode) -> CycScalar {
    (1..=k).fold(CycScalar::one(mode), |acc, i| acc.times(&q_integer(i, mode)))
}

/// Gaussian binomial; zero when `k > n`.
pub fn q_binomial(n: u32, k: u32, mode: Mode) -> CycScalar {
    if k > n {
        return CycScalar::zero(mode);
    }
    q_binomial_row(n, mode).swap_remove(k as usize)
}

/// Row `n` of the Gaussian triangle: `[n, 0], ..., [n, n]`.
pub fn q_binomial_row(n: u32, mode: Mode) -> Vec<CycScalar> {
    let mut row = vec![CycScalar::one(mode)];
    for m in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(CycScalar::one(mode));
        for k in 0..m as usize {
            // [m+1, k+1] = [m, k] + q^{k+1} [m, k+1]
            let shifted = CycScalar::q_pow(mode, k as i64 + 1).times(&row[k + 1]);
            next.push(row[k].plus(&shifted));
        }
        next.push(CycScalar::one(mode));
        row = next;
    }
    row
}

/// Upper limit of the sum defining `[k]_q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QIntegerConvention {
    /// `1 + q + ... + q^{k-1}`.
    Standard,
    /// `1 + q + ... + q^k`.
    Shifted,
}

impl QIntegerConvention {
    pub fn q_integer(self, k: u32, mode: Mode) -> CycScalar {
        match self {
            QIntegerConvention::Standard => q_integer(k, mode),
            QIntegerConvention::Shifted => q_integer(k + 1, mode),
        }
    }

    /// `[n]! / ([k]! [n-k]!)` under this convention; needs the q-integers up
    /// to `n` to be invertible in `mode`.
    pub fn quotient_binomial(self, n: u32, k: u32, mode: Mode) -> Option<CycScalar> {
        let fact = |m: u32| (1..=m).fold(CycScalar::one(mode), |acc, i| acc.times(&self.q_integer(i, mode)));
        let den = fact(k).times(&fact(n - k));
        Some(fact(n).times(&den.inverse().ok()?))
    }

    /// First `(n, k)` with `q^{k+1}[n, k+1] + [n, k] ≠ [n+1, k+1]` for the
    /// quotient binomials, searched over `n < n_max`.
    pub fn recurrence_counterexample(self, n_max: u32, mode: Mode) -> Option<(u32, u32)> {
        for n in 0..n_max {
            for k in 0..n {
                let lhs = CycScalar::q_pow(mode, k as i64 + 1)
                    .times(&self.quotient_binomial(n, k + 1, mode)?)
                    .plus(&self.quotient_binomial(n, k, mode)?);
                if Some(lhs) != self.quotient_binomial(n + 1, k + 1, mode) {
                    return Some((n, k));
                }
            }
        }
        None
    }
}
