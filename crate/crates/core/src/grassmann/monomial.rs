use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::scalars::{CycScalar, Mode, Ring};

/// The generator `d^m ξ^k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gen {
    pub m: u32,
    pub k: u32,
}

impl Gen {
    pub fn new(m: u32, k: u32) -> Self {
        Self { m, k }
    }
}

impl Ord for Gen {
    /// Higher powers of d first, then coordinates ascending.
    fn cmp(&self, other: &Self) -> Ordering {
        (Reverse(self.m), self.k).cmp(&(Reverse(other.m), other.k))
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "d(x{})", self.k)
        } else {
            write!(f, "d^{}(x{})", self.m, self.k)
        }
    }
}

/// An ordered product of generators; the empty product is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FormMonomial(Vec<Gen>);

impl FormMonomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn new(gens: Vec<Gen>) -> Self {
        Self(gens)
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|g| g.m).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Self(v)
    }

    /// The multiset of d-powers, sorted descending: identifies the block of a monomial.
    pub fn profile(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.0.iter().map(|g| g.m).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// Moves the first `len` factors to the end.
    pub fn rotate(&self, len: usize) -> Self {
        let mut v = self.0.clone();
        v.rotate_left(len);
        Self(v)
    }
}

impl Ord for FormMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FormMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FormMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Phase picked up when a leading block of total degree p is moved to the tail
/// of a monomial of total degree N.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum CommutationRule {
    /// `q^p`.
    #[default]
    BlockRotation,
    /// `q^{p(N-p)}`.
    SymmetricExponent,
}

impl CommutationRule {
    pub fn phase(&self, mode: Mode, n: u32, p: u32) -> CycScalar {
        let e = match self {
            CommutationRule::BlockRotation => p as i64,
            CommutationRule::SymmetricExponent => (p * (n - p)) as i64,
        };
        CycScalar::q_pow(mode, e)
    }
}

/// `mon = phase · representative`, or `None` when the monomial vanishes.
///
/// Below total degree N monomials are free; above it they vanish. At degree N
/// the rotation orbit is walked one factor at a time; a rotation that returns
/// to the starting word with a phase other than 1 forces zero.
pub fn canonicalize(mon: &FormMonomial, n: u32, rule: CommutationRule) -> Option<(CycScalar, FormMonomial)> {
    let mode = Mode::root(n);
    let deg = mon.degree();
    if mon.gens().iter().any(|g| g.m == 0 || g.m >= n) {
        return None;
    }
    if deg < n {
        return Some((CycScalar::one(mode), mon.clone()));
    }
    if deg > n {
        return None;
    }
    let len = mon.gens().len();
    let mut best = (CycScalar::one(mode), mon.clone());
    let mut phase = CycScalar::one(mode);
    let mut cur = mon.clone();
    for step in 1..=len {
        // cur = w_{step-1}, mon = phase · cur
        let p = cur.gens()[0].m;
        phase = phase.times(&rule.phase(mode, n, p));
        cur = cur.rotate(1);
        if cur == *mon {
            if !phase.is_one() {
                return None;
            }
            if step < len {
                break;
            }
        }
        if cur < best.1 {
            best = (phase.clone(), cur.clone());
        }
    }
    Some(best)
}
