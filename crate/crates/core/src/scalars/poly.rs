//! Sparse polynomials over [`CycScalar`] with pluggable monomials.
//!
//! Two monomial families are provided: commuting variables ([`VarMonomial`],
//! used for coordinates ξ^k and for symbolic matrix entries) and words in jet
//! symbols ([`JetWord`], noncommuting, for gauge-field components and their
//! derivatives).

use std::collections::BTreeMap;
use std::fmt;

use super::{CycScalar, DiffRing, Mode, Ring};

pub trait Monomial: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn unit() -> Self;
    fn is_unit(&self) -> bool;
    fn times(&self, rhs: &Self) -> Self;
    /// ∂_coord of the monomial as a list of (multiplicity, monomial).
    fn partial(&self, coord: u32) -> Vec<(u32, Self)>;
}

/// Name of the coordinate variable ξ^k in coefficient polynomials.
pub fn coord_name(k: u32) -> String {
    format!("x{k}")
}

/// Product of commuting variables, sorted by name, exponents positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct VarMonomial(Vec<(String, u32)>);

impl VarMonomial {
    pub fn var(name: impl Into<String>) -> Self {
        Self(vec![(name.into(), 1)])
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }
}

impl Monomial for VarMonomial {
    fn unit() -> Self {
        Self(Vec::new())
    }

    fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut map: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &rhs.0 {
            *map.entry(v.clone()).or_default() += e;
        }
        Self(map.into_iter().collect())
    }

    fn partial(&self, coord: u32) -> Vec<(u32, Self)> {
        let name = coord_name(coord);
        let Some(pos) = self.0.iter().position(|(v, _)| *v == name) else {
            return Vec::new();
        };
        let mut out = self.0.clone();
        let e = out[pos].1;
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        vec![(e, Self(out))]
    }
}

impl fmt::Display for VarMonomial {
    /// `x1*x1*x2`: powers are written out so the rendering stays within the
    /// expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            for _ in 0..*e {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// A gauge-field component `A_field` differentiated along `derivs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct JetSymbol {
    pub field: u32,
    derivs: Vec<u32>,
}

impl JetSymbol {
    pub fn new(field: u32, mut derivs: Vec<u32>) -> Self {
        derivs.sort_unstable();
        Self { field, derivs }
    }

    pub fn derivs(&self) -> &[u32] {
        &self.derivs
    }

    pub fn differentiate(&self, coord: u32) -> Self {
        let mut d = self.derivs.clone();
        d.push(coord);
        Self::new(self.field, d)
    }
}

impl fmt::Display for JetSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.field)?;
        if !self.derivs.is_empty() {
            let parts: Vec<String> = self.derivs.iter().map(|d| d.to_string()).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

/// Noncommuting word in jet symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct JetWord(Vec<JetSymbol>);

impl JetWord {
    pub fn symbol(s: JetSymbol) -> Self {
        Self(vec![s])
    }

    pub fn letters(&self) -> &[JetSymbol] {
        &self.0
    }
}

impl Monomial for JetWord {
    fn unit() -> Self {
        Self(Vec::new())
    }

    fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut w = self.0.clone();
        w.extend(rhs.0.iter().cloned());
        Self(w)
    }

    fn partial(&self, coord: u32) -> Vec<(u32, Self)> {
        (0..self.0.len())
            .map(|i| {
                let mut w = self.0.clone();
                w[i] = w[i].differentiate(coord);
                (1, Self(w))
            })
            .collect()
    }
}

impl fmt::Display for JetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Finite sum of `coefficient * monomial`, zero coefficients pruned.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    mode: Mode,
    terms: BTreeMap<M, CycScalar>,
}

/// Commutative polynomials in named variables.
pub type VarPoly = Poly<VarMonomial>;
/// Noncommutative polynomials in jet symbols.
pub type JetPoly = Poly<JetWord>;

impl<M: Monomial> Poly<M> {
    pub fn term(mode: Mode, mon: M, c: CycScalar) -> Self {
        let mut p = Self {
            mode,
            terms: BTreeMap::new(),
        };
        p.add_term(mon, c);
        p
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::term(c.mode(), M::unit(), c)
    }

    pub fn terms(&self) -> &BTreeMap<M, CycScalar> {
        &self.terms
    }

    pub fn add_term(&mut self, mon: M, c: CycScalar) {
        assert_eq!(c.mode(), self.mode, "coefficient mode mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// The constant term.
    pub fn constant_part(&self) -> CycScalar {
        self.terms
            .get(&M::unit())
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.mode))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }
}

impl VarPoly {
    pub fn var(mode: Mode, name: &str) -> Self {
        Self::term(mode, VarMonomial::var(name), CycScalar::one(mode))
    }

    pub fn coordinate(mode: Mode, k: u32) -> Self {
        Self::var(mode, &coord_name(k))
    }
}

impl JetPoly {
    /// The undifferentiated field component `A_field`.
    pub fn field(mode: Mode, field: u32) -> Self {
        Self::term(
            mode,
            JetWord::symbol(JetSymbol::new(field, Vec::new())),
            CycScalar::one(mode),
        )
    }
}

impl<M: Monomial> Ring for Poly<M> {
    fn zero(mode: Mode) -> Self {
        Self {
            mode,
            terms: BTreeMap::new(),
        }
    }

    fn from_scalar(s: CycScalar) -> Self {
        Self::constant(s)
    }

    fn mode(&self) -> Mode {
        self.mode
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.mode);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1.times(c2));
            }
        }
        out
    }

    fn negate(&self) -> Self {
        Self {
            mode: self.mode,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn scale(&self, s: &CycScalar) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.times(s));
        }
        out
    }
}

impl<M: Monomial> DiffRing for Poly<M> {
    fn partial(&self, coord: u32) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, c) in &self.terms {
            for (mult, dm) in m.partial(coord) {
                out.add_term(dm, c.scale_rational(&super::qpoly::rat(mult as i64)));
            }
        }
        out
    }
}

/// Sign and body of `coefficient * factors`, where `factors` is empty for a
/// bare coefficient. Multi-term coefficients are parenthesised.
pub(crate) fn render_term(c: &CycScalar, factors: &str) -> (bool, String) {
    let coeffs = c.value().coeffs();
    let nonzero: Vec<usize> = (0..coeffs.len()).filter(|&i| !num_traits::Zero::is_zero(&coeffs[i])).collect();
    if nonzero.len() == 1 {
        let e = nonzero[0];
        let r = &coeffs[e];
        let negative = num_traits::Signed::is_negative(r);
        let mag = num_traits::Signed::abs(r);
        let mut parts = Vec::new();
        let unit = num_traits::One::is_one(&mag);
        if !unit || (e == 0 && factors.is_empty()) {
            parts.push(super::qpoly::fmt_rational(&mag));
        }
        match e {
            0 => {}
            1 => parts.push("q".to_string()),
            _ => parts.push(format!("q^{e}")),
        }
        if !factors.is_empty() {
            parts.push(factors.to_string());
        }
        (negative, parts.join("*"))
    } else if factors.is_empty() {
        (false, format!("({c})"))
    } else {
        (false, format!("({c})*{factors}"))
    }
}

/// Joins signed terms into `a + b - c`, or `0` when empty.
pub(crate) fn join_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (bool, String)>) -> fmt::Result {
    let mut first = true;
    for (neg, body) in terms {
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write!(f, "{body}")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(
            f,
            self.terms.iter().map(|(m, c)| {
                let factors = if m.is_unit() { String::new() } else { m.to_string() };
                render_term(c, &factors)
            }),
        )
    }
}

impl<M: Monomial> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partials_commute_on_var_polys() {
        let m = Mode::root(3);
        let x1 = VarPoly::coordinate(m, 1);
        let x2 = VarPoly::coordinate(m, 2);
        let f = x1.times(&x1).times(&x2).plus(&x2.scale(&CycScalar::q(m)));
        assert_eq!(f.partial(1).partial(2), f.partial(2).partial(1));
        // ∂1 (x1^2 x2) = 2 x1 x2
        assert_eq!(
            f.partial(1),
            x1.times(&x2).scale(&CycScalar::from_int(m, 2))
        );
    }

    #[test]
    fn jet_words_do_not_commute() {
        let m = Mode::root(3);
        let a1 = JetPoly::field(m, 1);
        let a2 = JetPoly::field(m, 2);
        assert_ne!(a1.times(&a2), a2.times(&a1));
        // Leibniz along the word
        let d = a1.times(&a2).partial(3);
        let expected = a1.partial(3).times(&a2).plus(&a1.times(&a2.partial(3)));
        assert_eq!(d, expected);
        assert_eq!(a1.partial(2).partial(3), a1.partial(3).partial(2));
    }

    #[test]
    fn rendering() {
        let m = Mode::root(3);
        let x1 = VarPoly::coordinate(m, 1);
        let p = x1
            .times(&x1)
            .scale(&CycScalar::from_int(m, -2))
            .plus(&VarPoly::constant(CycScalar::q(m).plus(&CycScalar::one(m))));
        assert_eq!(p.to_string(), "(1 + q) - 2*x1*x1");
    }
}
