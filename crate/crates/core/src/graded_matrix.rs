//! The N×N matrix realization of the Z_N-graded algebra.
//!
//! A matrix is homogeneous of degree b when its nonzero entries sit on the
//! cyclic off-diagonal `(i, i + b mod N)`; this is the same as
//! `U^{-1} M U = q^b M` for the grading matrix `U = diag(q, ..., q^N)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{q_binomial_row, CycScalar, Mode, Ring};

#[derive(Clone, PartialEq)]
pub struct GradedMatrix<R = CycScalar> {
    n: usize,
    mode: Mode,
    entries: Vec<R>,
}

impl<R: Ring> GradedMatrix<R> {
    pub fn zero(n: usize) -> Self {
        let mode = Mode::root(n as u32);
        Self {
            n,
            mode,
            entries: vec![R::zero(mode); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mode = Mode::root(n as u32);
        Self::from_fn(n, |i, j| if i == j { R::one(mode) } else { R::zero(mode) })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mode = Mode::root(n as u32);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                assert_eq!(e.mode(), mode, "entry mode must be root:{n}");
                entries.push(e);
            }
        }
        Self { n, mode, entries }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::UnsupportedN(n as u32));
        }
        let mode = Mode::root(n as u32);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for e in row {
                if e.mode() != mode {
                    return Err(Error::ModeMismatch(e.mode(), mode));
                }
            }
        }
        Ok(Self {
            n,
            mode,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: Vec<R>) -> Self {
        let n = entries.len();
        let mode = Mode::root(n as u32);
        let mut m = Self::zero(n);
        for (i, e) in entries.into_iter().enumerate() {
            assert_eq!(e.mode(), mode);
            m.entries[i * n + i] = e;
        }
        m
    }

    /// Degree-b matrix with `entries[i]` at position `(i, i + b mod N)`.
    pub fn off_diagonal(b: usize, entries: Vec<R>) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n);
        for (i, e) in entries.into_iter().enumerate() {
            m.entries[i * n + (i + b) % n] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        assert_eq!(v.mode(), self.mode);
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> GradedMatrix<S> {
        GradedMatrix {
            n: self.n,
            mode: self.mode,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.n == rhs.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, rhs.n))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(self.zip(rhs, R::plus))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(self.mul(rhs))
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        Self {
            n: self.n,
            mode: self.mode,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Panics on a dimension mismatch; see [`GradedMatrix::try_add`].
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        self.zip(rhs, R::plus)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        self.zip(rhs, R::minus)
    }

    pub fn neg(&self) -> Self {
        self.map(R::negate)
    }

    /// Panics on a dimension mismatch; see [`GradedMatrix::try_mul`].
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = vec![R::zero(self.mode); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        let t = a.times(b);
                        out[i * n + j] = out[i * n + j].plus(&t);
                    }
                }
            }
        }
        Self {
            n,
            mode: self.mode,
            entries: out,
        }
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|e| s.times(e))
    }

    pub fn scale_scalar(&self, s: &CycScalar) -> Self {
        self.map(|e| e.scale(s))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// `Some(c)` when the matrix equals `c * 1`.
    pub fn scalar_part(&self) -> Option<R> {
        let c = self.get(0, 0).clone();
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                let ok = if i == j { *e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// The degree-b part: entries on the cyclic off-diagonal `(i, i + b)`.
    pub fn component(&self, b: usize) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| {
            if (j + n - i) % n == b % n {
                self.get(i, j).clone()
            } else {
                R::zero(self.mode)
            }
        })
    }

    /// Degree in `0..N`, `None` if inhomogeneous. The zero matrix has degree 0.
    pub fn degree(&self) -> Option<usize> {
        let n = self.n;
        let mut found = None;
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j).is_zero() {
                    continue;
                }
                let b = (j + n - i) % n;
                match found {
                    None => found = Some(b),
                    Some(f) if f != b => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(0))
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn decompose(&self) -> BTreeMap<usize, Self> {
        (0..self.n)
            .map(|b| (b, self.component(b)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl GradedMatrix<CycScalar> {
    pub fn lift<S: Ring>(&self) -> GradedMatrix<S> {
        self.map(|e| S::from_scalar(e.clone()))
    }

    /// Inverse of an invertible diagonal (degree 0) matrix.
    pub fn inverse_diagonal(&self) -> Result<Self> {
        if self.degree() != Some(0) {
            return Err(Error::WrongDegree {
                expected: 0,
                found: self.degree(),
            });
        }
        let mut d = Vec::with_capacity(self.n);
        for i in 0..self.n {
            d.push(self.get(i, i).inverse().map_err(|_| Error::Singular)?);
        }
        Ok(Self::diagonal(d))
    }
}

impl<R: Ring> fmt::Debug for GradedMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.render())
    }
}

impl<R: Ring> fmt::Display for GradedMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .render()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<R: Ring> Serialize for GradedMatrix<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.render().serialize(s)
    }
}

/// `U = diag(q, q^2, ..., q^N)`.
pub fn grading_matrix(n: usize) -> GradedMatrix {
    let mode = Mode::root(n as u32);
    GradedMatrix::diagonal((1..=n).map(|i| CycScalar::q_pow(mode, i as i64)).collect())
}

/// The cyclic shift with ones above the diagonal and in the lower-left corner.
pub fn eta(n: usize) -> GradedMatrix {
    let mode = Mode::root(n as u32);
    GradedMatrix::off_diagonal(1, vec![CycScalar::one(mode); n])
}

/// η_k: superdiagonal `q^k, q^{2k}, ..., q^{(N-1)k}`, corner entry 1.
pub fn eta_k(n: usize, k: usize) -> Result<GradedMatrix> {
    if !(1..=n).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let mode = Mode::root(n as u32);
    let entries = (1..=n)
        .map(|i| {
            if i == n {
                CycScalar::one(mode)
            } else {
                CycScalar::q_pow(mode, (i * k) as i64)
            }
        })
        .collect();
    Ok(GradedMatrix::off_diagonal(1, entries))
}

pub fn degree_of<R: Ring>(m: &GradedMatrix<R>) -> Result<usize> {
    m.degree().ok_or(Error::NotHomogeneous)
}

pub fn homogeneous_decompose<R: Ring>(m: &GradedMatrix<R>) -> BTreeMap<usize, GradedMatrix<R>> {
    m.decompose()
}

/// `Σ_b gen·M_b − factor(b)·M_b·gen` over the homogeneous parts `M_b` of `m`.
pub fn twisted_commutator<R: Ring>(
    gen: &GradedMatrix<R>,
    m: &GradedMatrix<R>,
    factor: impl Fn(usize) -> R,
) -> GradedMatrix<R> {
    let n = m.dim();
    let factors: Vec<R> = (0..n).map(&factor).collect();
    // Entry (i, k) of m lies in the degree (k - i) mod N part.
    let scaled = GradedMatrix::from_fn(n, |i, k| {
        let e = m.get(i, k);
        if e.is_zero() {
            e.clone()
        } else {
            factors[(k + n - i) % n].times(e)
        }
    });
    gen.mul(m).sub(&scaled.mul(gen))
}

/// Which degree-1 generator defines the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Differential {
    /// d_q, built from η.
    Q,
    /// d_k, built from η_k (1-based).
    Partial(usize),
}

impl Differential {
    pub fn generator(&self, n: usize) -> Result<GradedMatrix> {
        match *self {
            Differential::Q => Ok(eta(n)),
            Differential::Partial(k) => eta_k(n, k),
        }
    }

    pub fn apply<R: Ring>(&self, m: &GradedMatrix<R>) -> Result<GradedMatrix<R>> {
        let gen = self.generator(m.dim())?.lift::<R>();
        Ok(twisted_commutator(&gen, m, |b| {
            R::from_scalar(CycScalar::q_pow(m.mode(), b as i64))
        }))
    }

    pub fn apply_n<R: Ring>(&self, m: &GradedMatrix<R>, times: usize) -> Result<GradedMatrix<R>> {
        let gen = self.generator(m.dim())?.lift::<R>();
        let mode = m.mode();
        let mut cur = m.clone();
        for _ in 0..times {
            cur = twisted_commutator(&gen, &cur, |b| R::from_scalar(CycScalar::q_pow(mode, b as i64)));
        }
        Ok(cur)
    }
}

/// `d_q B = ηB − q^b Bη`, extended additively.
pub fn d_q<R: Ring>(m: &GradedMatrix<R>) -> GradedMatrix<R> {
    Differential::Q.apply(m).expect("d_q is defined for every N")
}

pub fn d_q_iterated<R: Ring>(m: &GradedMatrix<R>, n: usize) -> GradedMatrix<R> {
    Differential::Q.apply_n(m, n).expect("d_q is defined for every N")
}

/// `Σ_{k=0}^{n} (−1)^k q^{kb + k(k−1)/2} [n k]_q η^{n−k} M η^k` for homogeneous M.
pub fn d_q_closed_form<R: Ring>(m: &GradedMatrix<R>, n: usize) -> Result<GradedMatrix<R>> {
    let b = degree_of(m)?;
    let mode = m.mode();
    let binom = q_binomial_row(n as u32, mode);
    let e = eta(m.dim()).lift::<R>();
    let mut out = GradedMatrix::zero(m.dim());
    for (k, coeff) in binom.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let exp = (k * b + k * k.saturating_sub(1) / 2) as i64;
        let mut c = CycScalar::q_pow(mode, exp).times(coeff);
        if k % 2 == 1 {
            c = c.neg();
        }
        let term = e.pow((n - k) as u32).mul(m).mul(&e.pow(k as u32));
        out = out.add(&term.scale_scalar(&c));
    }
    Ok(out)
}

/// `d_k B = η_k B − q^{deg B} B η_k`.
pub fn d_k<R: Ring>(m: &GradedMatrix<R>, k: usize) -> Result<GradedMatrix<R>> {
    Differential::Partial(k).apply(m)
}

/// Distinct arrangements of a multiset, in lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur: Vec<T> = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Sum over distinct orderings of the index multiset of `d_{k1} ... d_{kN} M`.
/// Vanishes whenever the multiset has N elements.
pub fn symmetrized_diff<R: Ring>(indices: &[usize], m: &GradedMatrix<R>) -> Result<GradedMatrix<R>> {
    let n = m.dim();
    if indices.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            got: indices.len(),
        });
    }
    let mut out = GradedMatrix::zero(n);
    for word in distinct_permutations(indices) {
        let mut cur = m.clone();
        // rightmost differential acts first
        for &k in word.iter().rev() {
            cur = d_k(&cur, k)?;
        }
        out = out.add(&cur);
    }
    Ok(out)
}

/// Sum over distinct orderings of the products `η_{k1} ... η_{kN}`; always a
/// multiple of the identity, zero unless Σk ≡ 0 (mod N) and sometimes even then.
pub fn symmetrized_generator_product(n: usize, indices: &[usize]) -> Result<GradedMatrix> {
    if indices.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            got: indices.len(),
        });
    }
    let mut out = GradedMatrix::zero(n);
    for word in distinct_permutations(indices) {
        let mut prod = GradedMatrix::identity(n);
        for &k in &word {
            prod = prod.mul(&eta_k(n, k)?);
        }
        out = out.add(&prod);
    }
    Ok(out)
}
