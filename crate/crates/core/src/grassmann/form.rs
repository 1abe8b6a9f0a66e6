use std::collections::BTreeMap;
use std::fmt;

use super::monomial::{canonicalize, CommutationRule, FormMonomial, Gen};
use crate::error::{Error, Result};
use crate::scalars::{CycScalar, DiffRing, Mode};

/// A finite sum `Σ c · w` of canonical monomials with central coefficients.
#[derive(Clone, PartialEq)]
pub struct FormExpression<C> {
    n: u32,
    dim: u32,
    rule: CommutationRule,
    terms: BTreeMap<FormMonomial, C>,
}

impl<C: DiffRing> FormExpression<C> {
    pub fn zero(n: u32, dim: u32) -> Self {
        Self::zero_with_rule(n, dim, CommutationRule::BlockRotation)
    }

    pub fn zero_with_rule(n: u32, dim: u32, rule: CommutationRule) -> Self {
        Self {
            n,
            dim,
            rule,
            terms: BTreeMap::new(),
        }
    }

    pub fn coefficient(n: u32, dim: u32, c: C) -> Self {
        let mut out = Self::zero(n, dim);
        out.add_term(FormMonomial::unit(), c);
        out
    }

    pub fn one(n: u32, dim: u32) -> Self {
        Self::coefficient(n, dim, C::one(Mode::root(n)))
    }

    /// `d^m ξ^k`; `m = N` gives zero.
    pub fn generator(n: u32, dim: u32, m: u32, k: u32) -> Result<Self> {
        if k == 0 || k > dim {
            return Err(Error::IndexOutOfRange {
                index: k as usize,
                max: dim as usize,
            });
        }
        if m == 0 || m > n {
            return Err(Error::IndexOutOfRange {
                index: m as usize,
                max: n as usize - 1,
            });
        }
        let mut out = Self::zero(n, dim);
        out.add_monomial(FormMonomial::new(vec![Gen::new(m, k)]), C::one(Mode::root(n)));
        Ok(out)
    }

    pub fn with_rule(mut self, rule: CommutationRule) -> Self {
        let terms = std::mem::take(&mut self.terms);
        self.rule = rule;
        for (w, c) in terms {
            self.add_monomial(w, c);
        }
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn rule(&self) -> CommutationRule {
        self.rule
    }

    pub fn mode(&self) -> Mode {
        Mode::root(self.n)
    }

    pub fn terms(&self) -> &BTreeMap<FormMonomial, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, w: &FormMonomial) -> C {
        self.terms.get(w).cloned().unwrap_or_else(|| C::zero(self.mode()))
    }

    /// Adds `c · w` for an already-canonical `w`.
    fn add_term(&mut self, w: FormMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let sum = old.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    /// Adds `c · w`, rewriting `w` to normal form first.
    pub fn add_monomial(&mut self, w: FormMonomial, c: C) {
        if let Some((phase, rep)) = canonicalize(&w, self.n, self.rule) {
            self.add_term(rep, c.scale(&phase));
        }
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if (self.n, self.dim, self.rule) == (rhs.n, rhs.dim, rhs.rule) {
            Ok(())
        } else {
            Err(Error::FormMismatch(format!(
                "({}, {}, {:?}) vs ({}, {}, {:?})",
                self.n, self.dim, self.rule, rhs.n, rhs.dim, rhs.rule
            )))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Panics on mismatched (N, D, rule); see [`FormExpression::try_add`].
    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("compatible forms")
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negate())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale_scalar(&self, s: &CycScalar) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Multiplies every coefficient on the left by `c`.
    pub fn left_mul_coeff(&self, c: &C) -> Self {
        self.map_coeffs(|x| c.times(x))
    }

    fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero_with_rule(self.n, self.dim, self.rule);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&FormMonomial) -> bool) -> Self {
        let mut out = Self::zero_with_rule(self.n, self.dim, self.rule);
        for (w, c) in &self.terms {
            if keep(w) {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// The part whose monomials have the given d-power profile (sorted descending).
    pub fn block(&self, profile: &[u32]) -> Self {
        self.filter(|w| w.profile() == profile)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        self.filter(|w| w.degree() == degree)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = Self::zero_with_rule(self.n, self.dim, self.rule);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                if w1.degree() + w2.degree() > self.n {
                    continue;
                }
                out.add_monomial(w1.concat(w2), c1.times(c2));
            }
        }
        Ok(out)
    }

    /// Panics on mismatched (N, D, rule); see [`FormExpression::try_mul`].
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("compatible forms")
    }

    /// The exterior differential: `d(c w) = Σ_i (∂_i c) dξ^i w + c d(w)`, where
    /// d raises one factor `d^m ξ^k → d^{m+1} ξ^k` with phase q^{deg(prefix)}.
    pub fn d(&self) -> Self {
        let mode = self.mode();
        let mut out = Self::zero_with_rule(self.n, self.dim, self.rule);
        for (w, c) in &self.terms {
            if w.degree() >= self.n {
                continue;
            }
            for i in 1..=self.dim {
                let dc = c.partial(i);
                if !dc.is_zero() {
                    let lead = FormMonomial::new(vec![Gen::new(1, i)]);
                    out.add_monomial(lead.concat(w), dc);
                }
            }
            let mut prefix = 0;
            for (pos, g) in w.gens().iter().enumerate() {
                if g.m + 1 < self.n {
                    let mut gens = w.gens().to_vec();
                    gens[pos] = Gen::new(g.m + 1, g.k);
                    out.add_monomial(FormMonomial::new(gens), c.scale(&CycScalar::q_pow(mode, prefix as i64)));
                }
                prefix += g.m;
            }
        }
        out
    }

    pub fn d_n(&self, times: usize) -> Self {
        (0..times).fold(self.clone(), |acc, _| acc.d())
    }

    /// Applies `f` to every coefficient, keeping monomials.
    pub fn map<D: DiffRing>(&self, f: impl Fn(&C) -> D) -> FormExpression<D> {
        let mut out = FormExpression::zero_with_rule(self.n, self.dim, self.rule);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

impl<C: DiffRing> fmt::Display for FormExpression<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::scalars::join_terms(f, self.terms.iter().map(|(w, c)| render_form_term(c, w)))
    }
}

impl<C: DiffRing> fmt::Debug for FormExpression<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[N={}, D={}]({self})", self.n, self.dim)
    }
}

/// Renders `c · w`; multi-term coefficients are parenthesised.
fn render_form_term<C: DiffRing>(c: &C, w: &FormMonomial) -> (bool, String) {
    let coeff = c.to_string();
    let form = if w.is_unit() { String::new() } else { w.to_string() };
    let single = !coeff.contains(" + ") && !coeff.contains(" - ");
    if single && !coeff.starts_with('(') {
        let (neg, body) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coeff),
        };
        if form.is_empty() {
            (neg, body)
        } else if body == "1" {
            (neg, form)
        } else {
            (neg, format!("{body}*{form}"))
        }
    } else if form.is_empty() {
        (false, format!("({coeff})"))
    } else {
        (false, format!("({coeff})*{form}"))
    }
}
