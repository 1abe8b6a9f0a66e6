//! Deformations `q → q + δ` of the q-differential, with δ an exact polynomial
//! in a formal parameter ε.
//!
//! A composition of N deformed differentials acting on a homogeneous matrix is
//! a polynomial in `L = η·` and `·η`; since the total power of η is N it acts as
//! a polynomial in the conjugation `X: B ↦ η B η^{-1}`. [`ConjugationPolynomial`]
//! stores that operator and is used to read off projectors.

use std::fmt;

use serde::Serialize;

use crate::covariant::Connection;
use crate::error::{Error, Result};
use crate::graded_matrix::{eta, twisted_commutator, GradedMatrix};
use crate::scalars::{join_terms, render_term, CycScalar, Mode, Ring};

/// `Σ c_k ε^k` with exact cyclotomic coefficients.
#[derive(Clone, PartialEq)]
pub struct EpsScalar {
    mode: Mode,
    coeffs: Vec<CycScalar>,
}

impl EpsScalar {
    pub fn from_coeffs(mode: Mode, mut coeffs: Vec<CycScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { mode, coeffs }
    }

    /// `c · ε`.
    pub fn eps(c: CycScalar) -> Self {
        let mode = c.mode();
        Self::from_coeffs(mode, vec![CycScalar::zero(mode), c])
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| CycScalar::zero(self.mode))
    }

    /// Highest power of ε present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of ε present; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn at_zero(&self) -> CycScalar {
        self.coeff(0)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.mode), |acc, _| acc.times(self))
    }
}

impl Ring for EpsScalar {
    fn zero(mode: Mode) -> Self {
        Self { mode, coeffs: Vec::new() }
    }

    fn from_scalar(s: CycScalar) -> Self {
        let mode = s.mode();
        Self::from_coeffs(mode, vec![s])
    }

    fn mode(&self) -> Mode {
        self.mode
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(self.mode, rhs.mode, "mode mismatch");
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs(self.mode, (0..len).map(|k| self.coeff(k).plus(&rhs.coeff(k))).collect())
    }

    fn times(&self, rhs: &Self) -> Self {
        assert_eq!(self.mode, rhs.mode, "mode mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.mode);
        }
        let mut out = vec![CycScalar::zero(self.mode); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(self.mode, out)
    }

    fn negate(&self) -> Self {
        Self::from_coeffs(self.mode, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    fn scale(&self, s: &CycScalar) -> Self {
        Self::from_coeffs(self.mode, self.coeffs.iter().map(|c| c.times(s)).collect())
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(
            f,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
                let factor = match k {
                    0 => String::new(),
                    1 => "eps".to_string(),
                    _ => format!("eps^{k}"),
                };
                render_term(c, &factor)
            }),
        )
    }
}

impl fmt::Debug for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Eps[{}]({self})", self.mode)
    }
}

/// `d_{q+δ} B = η B − (q+δ)^{deg B} B η`, extended additively.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedDifferential {
    pub shift: EpsScalar,
}

impl DeformedDifferential {
    pub fn new(shift: EpsScalar) -> Self {
        Self { shift }
    }

    fn base(&self) -> EpsScalar {
        EpsScalar::from_scalar(CycScalar::q(self.shift.mode())).plus(&self.shift)
    }

    pub fn apply(&self, b: &GradedMatrix<EpsScalar>) -> GradedMatrix<EpsScalar> {
        let base = self.base();
        let e = eta(b.dim()).lift::<EpsScalar>();
        twisted_commutator(&e, b, |deg| base.pow(deg as u32))
    }
}

/// `δ_k = q^k ε` for k = 1..N; these sum to zero.
pub fn canonical_deltas(n: usize) -> Vec<EpsScalar> {
    let mode = Mode::root(n as u32);
    (1..=n).map(|k| EpsScalar::eps(CycScalar::q_pow(mode, k as i64))).collect()
}

/// `(1, q, q², ...)`, the weights of the cyclic commutator.
pub fn commutator_weights(n: usize) -> Vec<CycScalar> {
    let mode = Mode::root(n as u32);
    (0..n).map(|a| CycScalar::q_pow(mode, a as i64)).collect()
}

pub fn unit_weights(n: usize) -> Vec<CycScalar> {
    vec![CycScalar::one(Mode::root(n as u32)); n]
}

/// The α-th cyclic order `(α+1, α+2, ..., α)` as 0-based slot indices,
/// written left to right; the rightmost differential acts first.
pub fn cyclic_order(count: usize, alpha: usize) -> Vec<usize> {
    (0..count).map(|i| (alpha + i) % count).collect()
}

fn check_deltas(deltas: &[EpsScalar], weights: &[CycScalar]) -> Result<Mode> {
    let mode = deltas.first().map(|d| d.mode()).ok_or(Error::WrongCount { expected: 1, got: 0 })?;
    if weights.len() != deltas.len() {
        return Err(Error::WrongCount {
            expected: deltas.len(),
            got: weights.len(),
        });
    }
    let sum = deltas.iter().fold(EpsScalar::zero(mode), |acc, d| acc.plus(d));
    if !sum.is_zero() {
        return Err(Error::NonzeroDeltaSum);
    }
    Ok(mode)
}

/// `Σ_α w_α · d_{α+1} d_{α+2} ⋯ B` over the cyclic orders of the deltas.
pub fn cyclic_combination(
    deltas: &[EpsScalar],
    weights: &[CycScalar],
    b: &GradedMatrix<EpsScalar>,
) -> Result<GradedMatrix<EpsScalar>> {
    check_deltas(deltas, weights)?;
    let diffs: Vec<DeformedDifferential> = deltas.iter().cloned().map(DeformedDifferential::new).collect();
    let mut out = GradedMatrix::zero(b.dim());
    for (alpha, w) in weights.iter().enumerate() {
        let mut cur = b.clone();
        for &slot in cyclic_order(diffs.len(), alpha).iter().rev() {
            cur = diffs[slot].apply(&cur);
        }
        out = out.add(&cur.scale_scalar(w));
    }
    Ok(out)
}

/// `Σ_a c_a X^a` with `X B = η B η^{-1}` and `X^N = 1`.
#[derive(Clone, PartialEq)]
pub struct ConjugationPolynomial<R: Ring = CycScalar> {
    coeffs: Vec<R>,
}

pub type Projector = ConjugationPolynomial<CycScalar>;

impl<R: Ring> ConjugationPolynomial<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(coeffs.len() >= 2, "N >= 2");
        Self { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn mode(&self) -> Mode {
        Mode::root(self.n() as u32)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![R::zero(Mode::root(n as u32)); n])
    }

    pub fn identity(n: usize) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[0] = R::one(p.mode());
        p
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.plus(b)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.minus(b)).collect())
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Operator composition; X commutes with itself so the order is immaterial.
    pub fn compose(&self, rhs: &Self) -> Self {
        let n = self.n();
        let mut out = vec![R::zero(self.mode()); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[(i + j) % n] = out[(i + j) % n].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn apply(&self, b: &GradedMatrix<R>) -> GradedMatrix<R> {
        let n = self.n();
        let e = eta(n).lift::<R>();
        let e_inv = e.transpose();
        let mut out = GradedMatrix::zero(n);
        let mut conj = b.clone();
        for c in &self.coeffs {
            if !c.is_zero() {
                out = out.add(&conj.scale(c));
            }
            conj = e.mul(&conj).mul(&e_inv);
        }
        out
    }
}

impl ConjugationPolynomial<CycScalar> {
    /// Projector onto the X-eigenspace with eigenvalue q^s: `(1/N) Σ_a q^{-sa} X^a`.
    pub fn eigenprojector(n: usize, s: usize) -> Self {
        let mode = Mode::root(n as u32);
        let inv_n = CycScalar::from_int(mode, n as i64).inverse().expect("N != 0");
        Self::new(
            (0..n)
                .map(|a| CycScalar::q_pow(mode, -((s * a) as i64)).times(&inv_n))
                .collect(),
        )
    }

    /// Value of the polynomial at X = q^s.
    pub fn eigenvalue(&self, s: usize) -> CycScalar {
        let mode = self.mode();
        self.coeffs
            .iter()
            .enumerate()
            .fold(CycScalar::zero(mode), |acc, (a, c)| acc.plus(&c.times(&CycScalar::q_pow(mode, (s * a) as i64))))
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// `Some(λ)` with `T∘T = λT`, λ ≠ 0.
    pub fn idempotent_scale(&self) -> Option<CycScalar> {
        let sq = self.compose(self);
        let (i, c) = self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())?;
        let lambda = sq.coeffs[i].times(&c.inverse().ok()?);
        (!lambda.is_zero() && sq == self.scale(&lambda)).then_some(lambda)
    }
}

impl<R: Ring> fmt::Display for ConjugationPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                let power = |e: usize| if e == 1 { "eta".to_string() } else { format!("eta^{e}") };
                let op = if a == 0 { "B".to_string() } else { format!("{} B {}", power(a), power(n - a)) };
                format!("({c})*[{op}]")
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<R: Ring> fmt::Debug for ConjugationPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> Serialize for ConjugationPolynomial<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The operator `Σ_α w_α ∏ (L − (q+δ)^{deg} R)` on degree-`degree` matrices,
/// expanded symbolically and mapped to a polynomial in X.
pub fn cyclic_operator(
    deltas: &[EpsScalar],
    weights: &[CycScalar],
    degree: usize,
) -> Result<ConjugationPolynomial<EpsScalar>> {
    let mode = check_deltas(deltas, weights)?;
    let n = deltas.len();
    if mode != Mode::root(n as u32) {
        return Err(Error::WrongCount {
            expected: mode.order().unwrap_or(0) as usize,
            got: n,
        });
    }
    let q = EpsScalar::from_scalar(CycScalar::q(mode));
    let mut total = ConjugationPolynomial::<EpsScalar>::zero(n);
    for (alpha, w) in weights.iter().enumerate() {
        // lr[a] is the coefficient of L^a R^{steps-a}
        let mut lr = vec![EpsScalar::one(mode)];
        for (deg, &slot) in (degree..).zip(cyclic_order(n, alpha).iter().rev()) {
            let r_coeff = q.plus(&deltas[slot]).pow((deg % n) as u32).negate();
            let mut next = vec![EpsScalar::zero(mode); lr.len() + 1];
            for (a, c) in lr.iter().enumerate() {
                next[a + 1] = next[a + 1].plus(c);
                next[a] = next[a].plus(&c.times(&r_coeff));
            }
            lr = next;
        }
        // L^a R^{N-a} B = η^a B η^{N-a} = X^a B
        let mut poly = ConjugationPolynomial::<EpsScalar>::zero(n);
        for (a, c) in lr.into_iter().enumerate() {
            let slot = a % n;
            poly.coeffs[slot] = poly.coeffs[slot].plus(&c);
        }
        total = total.add(&poly.scale(w));
    }
    Ok(total)
}

/// Coefficient of ε^k as an operator over the field.
pub fn eps_coefficient(op: &ConjugationPolynomial<EpsScalar>, k: usize) -> Projector {
    Projector::new(op.coeffs().iter().map(|c| c.coeff(k)).collect())
}

/// Lowest ε-order at which the operator is nonzero.
pub fn leading_order(op: &ConjugationPolynomial<EpsScalar>) -> Option<usize> {
    op.coeffs().iter().filter_map(|c| c.order()).min()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralProjector {
    /// Eigenvalue of the leading operator on this subspace.
    pub eigenvalue: CycScalar,
    /// The exponents s with X = q^s on the subspace.
    pub conjugation_eigenvalues: Vec<usize>,
    pub projector: Projector,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectorExtraction {
    #[serde(rename = "N")]
    pub n: usize,
    pub degree: usize,
    pub weights: Vec<String>,
    /// Exact expansion: ε-power → operator.
    pub expansion: Vec<(usize, Projector)>,
    pub leading_order: usize,
    pub leading: Projector,
    /// λ with `T∘T = λT` for the leading operator T, when it exists.
    pub idempotent_scale: Option<CycScalar>,
    /// `T/λ` when T is proportional to an idempotent.
    pub normalized: Option<Projector>,
    /// Eigenprojectors of T grouped by nonzero eigenvalue.
    pub family: Vec<SpectralProjector>,
    /// Projector onto the kernel of T.
    pub kernel: Projector,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
}

/// Reads off projectors from the lowest nonvanishing ε-order of the weighted
/// cyclic combination with the canonical deltas.
pub fn extract_projector(n: usize, weights: &[CycScalar], degree: usize) -> Result<ProjectorExtraction> {
    let op = cyclic_operator(&canonical_deltas(n), weights, degree)?;
    let order = leading_order(&op).ok_or(Error::ZeroCombination)?;
    let max_order = op.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(order);
    let expansion: Vec<(usize, Projector)> = (order..=max_order)
        .map(|k| (k, eps_coefficient(&op, k)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let leading = eps_coefficient(&op, order);
    let idempotent_scale = leading.idempotent_scale();
    let normalized = idempotent_scale
        .as_ref()
        .map(|l| leading.scale(&l.inverse().expect("nonzero")));

    let mode = Mode::root(n as u32);
    let mut groups: Vec<(CycScalar, Vec<usize>)> = Vec::new();
    let mut kernel_roots = Vec::new();
    for s in 0..n {
        let ev = leading.eigenvalue(s);
        if ev.is_zero() {
            kernel_roots.push(s);
        } else if let Some(g) = groups.iter_mut().find(|(v, _)| *v == ev) {
            g.1.push(s);
        } else {
            groups.push((ev, vec![s]));
        }
    }
    let sum_of = |roots: &[usize]| {
        roots
            .iter()
            .fold(Projector::zero(n), |acc, &s| acc.add(&Projector::eigenprojector(n, s)))
    };
    let family: Vec<SpectralProjector> = groups
        .into_iter()
        .map(|(eigenvalue, roots)| SpectralProjector {
            eigenvalue,
            projector: sum_of(&roots),
            conjugation_eigenvalues: roots,
        })
        .collect();
    let kernel = sum_of(&kernel_roots);

    let mut all: Vec<&Projector> = family.iter().map(|p| &p.projector).collect();
    if !kernel.is_zero() {
        all.push(&kernel);
    }
    let idempotent = all.iter().all(|p| p.is_idempotent());
    let orthogonal = all
        .iter()
        .enumerate()
        .all(|(i, a)| all.iter().enumerate().all(|(j, b)| i == j || a.compose(b).is_zero()));
    let complete = all.iter().fold(Projector::zero(n), |acc, p| acc.add(p)) == Projector::identity(n);
    // T = Σ λ_k P_k on the nose
    debug_assert_eq!(
        family
            .iter()
            .fold(Projector::zero(n), |acc, p| acc.add(&p.projector.scale(&p.eigenvalue))),
        leading
    );
    let _ = mode;
    Ok(ProjectorExtraction {
        n,
        degree,
        weights: weights.iter().map(|w| w.to_string()).collect(),
        expansion,
        leading_order: order,
        leading,
        idempotent_scale,
        normalized,
        family,
        kernel,
        idempotent,
        orthogonal,
        complete,
    })
}

/// `D̃_{q+δ} B = d_{q+δ} B + A B + δ Λ B`; with Λ = 0 this is `D_{q+δ}`.
pub fn deformed_covariant(
    a: &Connection<EpsScalar>,
    lambda: &GradedMatrix<EpsScalar>,
    delta: &EpsScalar,
    b: &GradedMatrix<EpsScalar>,
) -> GradedMatrix<EpsScalar> {
    let d = DeformedDifferential::new(delta.clone()).apply(b);
    d.add(&a.matrix().mul(b)).add(&lambda.mul(b).scale(delta))
}

/// The two products `D_{q+ε} D̃_{q−ε} B` and `D_{q−ε} D̃_{q+ε} B`.
pub fn deformed_covariant_pair(
    a: &Connection<EpsScalar>,
    lambda: &GradedMatrix<EpsScalar>,
    b: &GradedMatrix<EpsScalar>,
) -> (GradedMatrix<EpsScalar>, GradedMatrix<EpsScalar>) {
    let mode = b.mode();
    let plus = EpsScalar::eps(CycScalar::one(mode));
    let minus = plus.negate();
    let zero = GradedMatrix::zero(b.dim());
    let first = deformed_covariant(a, &zero, &plus, &deformed_covariant(a, lambda, &minus, b));
    let second = deformed_covariant(a, &zero, &minus, &deformed_covariant(a, lambda, &plus, b));
    (first, second)
}

/// Coefficient of ε^k in every entry.
pub fn matrix_eps_coefficient(m: &GradedMatrix<EpsScalar>, k: usize) -> GradedMatrix {
    m.map(|e| e.coeff(k))
}

#[derive(Clone, Debug, Serialize)]
pub struct CovariantDeformationCheck {
    /// ε-linear coefficient of the symmetrized product vanishes.
    pub symmetric_linear_vanishes: bool,
    /// ε⁰ coefficient of the symmetrized product equals `D_q² B`.
    pub symmetric_constant_is_curvature: bool,
    /// ε⁰ coefficient of the antisymmetrized product vanishes.
    pub antisymmetric_constant_vanishes: bool,
    /// ε-linear coefficient of the antisymmetrized product, rendered.
    pub antisymmetric_linear: GradedMatrix,
    /// It equals `2(D_q(J B) − J(D_q B) − D_q(Λ B))` with `J B = B_odd η`.
    pub matches_commutator_form: bool,
    /// It equals `(D_q B)η + (D_q Λ)B`.
    pub matches_right_eta: bool,
    /// It equals `D_q(Bη) + (D_q Λ)B`.
    pub matches_inner_eta: bool,
}

/// N = 2 checks on `D_{q±ε} D̃_{q∓ε}` for constant A, Λ and B.
pub fn covariant_symmetric_part_check(a: &Connection, lambda: &GradedMatrix, b: &GradedMatrix) -> CovariantDeformationCheck {
    let lift = |m: &GradedMatrix| m.lift::<EpsScalar>();
    let a_eps = Connection::new(lift(a.matrix()), a.differential()).expect("degree-1 connection");
    let (first, second) = deformed_covariant_pair(&a_eps, &lift(lambda), &lift(b));
    let sym = first.add(&second);
    let anti = first.sub(&second);
    let d2 = a.apply_n(b, 2).expect("same size");
    let two = CycScalar::from_int(b.mode(), 2);
    let anti1 = matrix_eps_coefficient(&anti, 1);
    let e = eta(b.dim());
    let d_lambda = a.apply(lambda).expect("same size");
    let right_eta = a.apply(b).expect("same size").mul(&e).add(&d_lambda.mul(b));
    let inner_eta = a.apply(&b.mul(&e)).expect("same size").add(&d_lambda.mul(b));
    let d = |m: &GradedMatrix| a.apply(m).expect("same size");
    let j = |m: &GradedMatrix| m.component(1).mul(&e);
    let commutator_form = d(&j(b)).sub(&j(&d(b))).sub(&d(&lambda.mul(b))).scale_scalar(&two);
    CovariantDeformationCheck {
        symmetric_linear_vanishes: matrix_eps_coefficient(&sym, 1).is_zero(),
        symmetric_constant_is_curvature: matrix_eps_coefficient(&sym, 0) == d2.scale_scalar(&two),
        antisymmetric_constant_vanishes: matrix_eps_coefficient(&anti, 0).is_zero(),
        matches_commutator_form: anti1 == commutator_form,
        matches_right_eta: anti1 == right_eta,
        matches_inner_eta: anti1 == inner_eta,
        antisymmetric_linear: anti1,
    }
}
