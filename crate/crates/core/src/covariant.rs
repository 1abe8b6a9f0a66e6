//! Covariant differentials `DΦ = dΦ + AΦ` on the algebra acting on itself,
//! their powers, curvature and gauge transformations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded_matrix::{distinct_permutations, Differential, GradedMatrix};
use crate::scalars::{q_binomial_row, CycScalar, Mode, Ring, VarPoly};

/// A degree-1 matrix paired with the differential it deforms.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<R: Ring = CycScalar> {
    matrix: GradedMatrix<R>,
    diff: Differential,
}

impl<R: Ring> Connection<R> {
    pub fn new(matrix: GradedMatrix<R>, diff: Differential) -> Result<Self> {
        match matrix.degree() {
            Some(1) => {}
            Some(0) if matrix.is_zero() => {}
            found => return Err(Error::WrongDegree { expected: 1, found }),
        }
        if let Differential::Partial(k) = diff {
            if !(1..=matrix.dim()).contains(&k) {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    max: matrix.dim(),
                });
            }
        }
        Ok(Self { matrix, diff })
    }

    pub fn zero(n: usize, diff: Differential) -> Self {
        Self {
            matrix: GradedMatrix::zero(n),
            diff,
        }
    }

    /// `A = η·diag(α_1, ..., α_N)` read row-wise: `α_i` sits at `(i, i+1 mod N)`.
    pub fn cyclic(alphas: Vec<R>) -> Self {
        Self {
            matrix: GradedMatrix::off_diagonal(1, alphas),
            diff: Differential::Q,
        }
    }

    /// One connection per partial differential: `matrices[k-1]` is paired with `d_k`.
    pub fn partial_family(matrices: Vec<GradedMatrix<R>>) -> Result<Vec<Self>> {
        let n = matrices.len();
        matrices
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                if m.dim() != n {
                    return Err(Error::WrongCount {
                        expected: m.dim(),
                        got: n,
                    });
                }
                Self::new(m, Differential::Partial(i + 1))
            })
            .collect()
    }

    pub fn matrix(&self) -> &GradedMatrix<R> {
        &self.matrix
    }

    pub fn differential(&self) -> Differential {
        self.diff
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn mode(&self) -> Mode {
        self.matrix.mode()
    }

    fn check(&self, phi: &GradedMatrix<R>) -> Result<()> {
        if phi.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim(), phi.dim()))
        }
    }

    /// The bare differential `dΦ`.
    pub fn d(&self, phi: &GradedMatrix<R>) -> Result<GradedMatrix<R>> {
        self.check(phi)?;
        self.diff.apply(phi)
    }

    /// `DΦ = dΦ + AΦ`.
    pub fn apply(&self, phi: &GradedMatrix<R>) -> Result<GradedMatrix<R>> {
        Ok(self.d(phi)?.add(&self.matrix.mul(phi)))
    }

    pub fn apply_n(&self, phi: &GradedMatrix<R>, n: usize) -> Result<GradedMatrix<R>> {
        let mut cur = phi.clone();
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// `D^n Φ = d^n Φ + Σ_{k=1}^{n} [n k]_q (D^{k-1}A) d^{n-k} Φ`.
    pub fn power_recurrence(&self, phi: &GradedMatrix<R>, n: usize) -> Result<GradedMatrix<R>> {
        self.check(phi)?;
        let binom = q_binomial_row(n as u32, self.mode());
        let mut d_phi = Vec::with_capacity(n + 1);
        d_phi.push(phi.clone());
        for m in 1..=n {
            d_phi.push(self.diff.apply(&d_phi[m - 1])?);
        }
        let mut out = d_phi[n].clone();
        let mut da = self.matrix.clone();
        for k in 1..=n {
            if !binom[k].is_zero() {
                out = out.add(&da.mul(&d_phi[n - k]).scale_scalar(&binom[k]));
            }
            if k < n {
                da = self.apply(&da)?;
            }
        }
        Ok(out)
    }
}

/// `Ω = D^{N-1}A`; `scalar_part` is set when `Ω = c·1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curvature<R: Ring = CycScalar> {
    pub omega: GradedMatrix<R>,
    pub scalar_part: Option<R>,
}

impl<R: Ring> Curvature<R> {
    fn from_omega(omega: GradedMatrix<R>) -> Self {
        let scalar_part = omega.scalar_part();
        Self { omega, scalar_part }
    }

    pub fn is_flat(&self) -> bool {
        self.omega.is_zero()
    }
}

pub fn curvature<R: Ring>(conn: &Connection<R>) -> Curvature<R> {
    let omega = conn
        .apply_n(conn.matrix(), conn.dim() - 1)
        .expect("connection acts on matrices of its own size");
    Curvature::from_omega(omega)
}

/// Standard matrix units `E_ij`.
pub fn matrix_basis<R: Ring>(n: usize) -> impl Iterator<Item = (usize, usize, GradedMatrix<R>)> {
    let mode = Mode::root(n as u32);
    (0..n).flat_map(move |i| {
        (0..n).map(move |j| {
            let e = GradedMatrix::from_fn(n, |a, b| {
                if (a, b) == (i, j) {
                    R::one(mode)
                } else {
                    R::zero(mode)
                }
            });
            (i, j, e)
        })
    })
}

/// First basis element `E_ij` with `D^N E_ij != Ω E_ij`, if any.
pub fn curvature_basis_failure<R: Ring>(conn: &Connection<R>, curv: &Curvature<R>) -> Option<(usize, usize)> {
    let n = conn.dim();
    matrix_basis::<R>(n)
        .find(|(_, _, e)| conn.apply_n(e, n).ok().as_ref() != Some(&curv.omega.mul(e)))
        .map(|(i, j, _)| (i, j))
}

/// `A = S^{-1} dS` for an invertible diagonal S.
pub fn pure_gauge(s: &GradedMatrix, diff: Differential) -> Result<Connection> {
    let inv = s.inverse_diagonal()?;
    let ds = diff.apply(s)?;
    Connection::new(inv.mul(&ds), diff)
}

/// `Σ_{k=0}^{n} [n k]_q S^{-1}(d^k S)(d^{n-k} Φ)`, the expansion of `D^n Φ` for a pure gauge.
pub fn pure_gauge_expansion(s: &GradedMatrix, phi: &GradedMatrix, n: usize, diff: Differential) -> Result<GradedMatrix> {
    if s.dim() != phi.dim() {
        return Err(Error::DimensionMismatch(s.dim(), phi.dim()));
    }
    let inv = s.inverse_diagonal()?;
    let binom = q_binomial_row(n as u32, s.mode());
    let mut out = GradedMatrix::zero(s.dim());
    for (k, c) in binom.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = inv.mul(&diff.apply_n(s, k)?).mul(&diff.apply_n(phi, n - k)?);
        out = out.add(&term.scale_scalar(c));
    }
    Ok(out)
}

fn check_slots<R: Ring>(conns: &[Connection<R>], indices: &[usize]) -> Result<usize> {
    let n = conns.first().map(|c| c.dim()).ok_or(Error::WrongCount { expected: 1, got: 0 })?;
    if indices.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            got: indices.len(),
        });
    }
    if let Some(&bad) = indices.iter().find(|&&k| k == 0 || k > conns.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            max: conns.len(),
        });
    }
    Ok(n)
}

/// `Σ D_{w_1} ... D_{w_N} Φ` over the distinct orderings `w` of the 1-based slot multiset.
pub fn symmetrized_covariant<R: Ring>(
    conns: &[Connection<R>],
    indices: &[usize],
    phi: &GradedMatrix<R>,
) -> Result<GradedMatrix<R>> {
    let n = check_slots(conns, indices)?;
    let mut out = GradedMatrix::zero(n);
    for word in distinct_permutations(indices) {
        let mut cur = phi.clone();
        for &k in word.iter().rev() {
            cur = conns[k - 1].apply(&cur)?;
        }
        out = out.add(&cur);
    }
    Ok(out)
}

/// The multi-connection curvature: the symmetrized product applied to the unit.
pub fn multi_curvature<R: Ring>(conns: &[Connection<R>], indices: &[usize]) -> Result<Curvature<R>> {
    let n = check_slots(conns, indices)?;
    let omega = symmetrized_covariant(conns, indices, &GradedMatrix::identity(n))?;
    Ok(Curvature::from_omega(omega))
}

pub fn multi_curvature_basis_failure<R: Ring>(
    conns: &[Connection<R>],
    indices: &[usize],
    curv: &Curvature<R>,
) -> Result<Option<(usize, usize)>> {
    let n = check_slots(conns, indices)?;
    for (i, j, e) in matrix_basis::<R>(n) {
        if symmetrized_covariant(conns, indices, &e)? != curv.omega.mul(&e) {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

/// `Ã = U^{-1} A U + U^{-1} dU` for an invertible diagonal U.
pub fn gauge_transform<R: Ring>(conn: &Connection<R>, u: &GradedMatrix) -> Result<Connection<R>> {
    if u.dim() != conn.dim() {
        return Err(Error::DimensionMismatch(conn.dim(), u.dim()));
    }
    let inv = u.inverse_diagonal()?;
    let du = conn.differential().apply(u)?;
    let shift = inv.mul(&du).lift::<R>();
    let conj = inv.lift::<R>().mul(conn.matrix()).mul(&u.lift::<R>());
    Connection::new(conj.add(&shift), conn.differential())
}

/// Whether `Σ_j M[k][j] A_j = U^{-1} A_k U + U^{-1} d_k U` for every slot k.
pub fn is_symmetric_connection<R: Ring>(m: &[Vec<CycScalar>], u: &GradedMatrix, conns: &[Connection<R>]) -> Result<bool> {
    let count = conns.len();
    if m.len() != count {
        return Err(Error::WrongCount {
            expected: count,
            got: m.len(),
        });
    }
    for (k, row) in m.iter().enumerate() {
        if row.len() != count {
            return Err(Error::WrongCount {
                expected: count,
                got: row.len(),
            });
        }
        let n = conns[k].dim();
        let mut lhs = GradedMatrix::<R>::zero(n);
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                lhs = lhs.add(&conns[j].matrix().scale_scalar(c));
            }
        }
        if &lhs != gauge_transform(&conns[k], u)?.matrix() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A slot permutation and diagonal gauge matrix satisfying the symmetry condition.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricInstance {
    pub permutation: Vec<usize>,
    pub u: GradedMatrix,
}

impl SymmetricInstance {
    pub fn map_matrix(&self) -> Vec<Vec<CycScalar>> {
        let count = self.permutation.len();
        let mode = self.u.mode();
        (0..count)
            .map(|k| {
                (0..count)
                    .map(|j| {
                        if self.permutation[k] == j {
                            CycScalar::one(mode)
                        } else {
                            CycScalar::zero(mode)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Brute-force search over slot permutations and diagonal U with entries drawn
/// from `candidates`. With `skip_trivial`, pairs where U is a multiple of the
/// identity and the permutation fixes every slot are not returned.
pub fn find_symmetric_gauge<R: Ring>(
    conns: &[Connection<R>],
    candidates: &[CycScalar],
    skip_trivial: bool,
) -> Result<Option<SymmetricInstance>> {
    use itertools::Itertools;
    let Some(first) = conns.first() else {
        return Ok(None);
    };
    let n = first.dim();
    let nonzero: Vec<&CycScalar> = candidates.iter().filter(|c| !c.is_zero()).collect();
    for diag in (0..n).map(|_| nonzero.iter().copied()).multi_cartesian_product() {
        let u = GradedMatrix::diagonal(diag.into_iter().cloned().collect());
        let scalar_u = u.scalar_part().is_some();
        for perm in (0..conns.len()).permutations(conns.len()) {
            let identity_perm = perm.iter().enumerate().all(|(i, &p)| i == p);
            if skip_trivial && scalar_u && identity_perm {
                continue;
            }
            let inst = SymmetricInstance { permutation: perm, u: u.clone() };
            if is_symmetric_connection(&inst.map_matrix(), &inst.u, conns)? {
                return Ok(Some(inst));
            }
        }
    }
    Ok(None)
}

/// The cyclic connection with symbolic entries `a1..aN`.
pub fn symbolic_cyclic_connection(n: usize) -> Connection<VarPoly> {
    let mode = Mode::root(n as u32);
    Connection::cyclic((1..=n).map(|i| VarPoly::var(mode, &format!("a{i}"))).collect())
}

/// `Π (1 + a_i) − 1` in the variables of [`symbolic_cyclic_connection`].
pub fn cyclic_product_minus_one(n: usize) -> VarPoly {
    let mode = Mode::root(n as u32);
    let one = VarPoly::one(mode);
    (1..=n)
        .fold(one.clone(), |acc, i| acc.times(&one.plus(&VarPoly::var(mode, &format!("a{i}")))))
        .minus(&one)
}

/// The N=2 pair `A_k = [[0, a_k], [b_k, 0]]` paired with `d_1, d_2`.
pub fn symbolic_pair_n2() -> Vec<Connection<VarPoly>> {
    let mode = Mode::root(2);
    let mats = (1..=2)
        .map(|k| {
            GradedMatrix::off_diagonal(
                1,
                vec![VarPoly::var(mode, &format!("a{k}")), VarPoly::var(mode, &format!("b{k}"))],
            )
        })
        .collect();
    Connection::partial_family(mats).expect("degree-1 matrices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_matrix::{eta_k, grading_matrix};
    use crate::random;

    fn var(mode: Mode, name: &str) -> VarPoly {
        VarPoly::var(mode, name)
    }

    #[test]
    fn trivial_cases() {
        let mut r = random::rng(1);
        for n in 2..=4 {
            let phi = random::matrix(&mut r, n);
            let zero = Connection::<CycScalar>::zero(n, Differential::Q);
            assert_eq!(zero.apply(&phi).unwrap(), zero.d(&phi).unwrap());
            let a = Connection::new(random::homogeneous(&mut r, n, 1), Differential::Q).unwrap();
            assert_eq!(a.apply(&GradedMatrix::identity(n)).unwrap(), *a.matrix());
            assert!(curvature(&zero).is_flat());
        }
        assert!(Connection::new(grading_matrix(3), Differential::Q).is_err());
        let a = Connection::<CycScalar>::zero(3, Differential::Q);
        assert_eq!(
            a.apply(&GradedMatrix::identity(2)),
            Err(Error::DimensionMismatch(3, 2))
        );
    }

    #[test]
    fn second_power_formula() {
        let mut r = random::rng(2);
        for n in 2..=5 {
            let mode = Mode::root(n as u32);
            let a = Connection::new(random::homogeneous(&mut r, n, 1), Differential::Q).unwrap();
            let phi = random::matrix(&mut r, n);
            let d = |m: &GradedMatrix| a.d(m).unwrap();
            let one_plus_q = CycScalar::one(mode).plus(&CycScalar::q(mode));
            let da = a.apply(a.matrix()).unwrap();
            let expected = d(&d(&phi))
                .add(&a.matrix().mul(&d(&phi)).scale_scalar(&one_plus_q))
                .add(&da.mul(&phi));
            assert_eq!(a.apply_n(&phi, 2).unwrap(), expected);
        }
    }

    #[test]
    fn recurrence_matches_iteration() {
        let mut r = random::rng(3);
        for n in 2..=5 {
            for diff in [Differential::Q, Differential::Partial(1)] {
                let a = Connection::new(random::homogeneous(&mut r, n, 1), diff).unwrap();
                let phi = random::matrix(&mut r, n);
                for k in 1..=n {
                    assert_eq!(a.power_recurrence(&phi, k).unwrap(), a.apply_n(&phi, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn top_power_is_curvature() {
        let mut r = random::rng(4);
        for n in 2..=5 {
            let a = Connection::new(random::homogeneous(&mut r, n, 1), Differential::Q).unwrap();
            let curv = curvature(&a);
            assert!(curv.scalar_part.is_some());
            assert_eq!(curvature_basis_failure(&a, &curv), None);
            let phi = random::matrix(&mut r, n);
            assert_eq!(a.apply_n(&phi, n).unwrap(), curv.omega.mul(&phi));
        }
    }

    #[test]
    fn n2_curvature_is_da() {
        let mut r = random::rng(5);
        let a = Connection::new(random::homogeneous(&mut r, 2, 1), Differential::Q).unwrap();
        let phi = random::matrix(&mut r, 2);
        let da = a.apply(a.matrix()).unwrap();
        assert_eq!(a.apply_n(&phi, 2).unwrap(), da.mul(&phi));
    }

    #[test]
    fn pure_gauge_examples() {
        let mode = Mode::root(2);
        let a = CycScalar::from_int(mode, 2);
        let b = CycScalar::from_int(mode, 6);
        let s = GradedMatrix::diagonal(vec![a.clone(), b.clone()]);
        let conn = pure_gauge(&s, Differential::Q).unwrap();
        // α = b/a − 1 = 2, ω = a/b − 1 = −2/3
        assert_eq!(*conn.matrix().get(0, 1), CycScalar::from_int(mode, 2));
        let w = CycScalar::from_rational(mode, crate::scalars::rat_frac(-2, 3));
        assert_eq!(*conn.matrix().get(1, 0), w);
        assert!(curvature(&conn).is_flat());
        let id = pure_gauge(&GradedMatrix::identity(3), Differential::Q).unwrap();
        assert!(id.matrix().is_zero());
        let singular = GradedMatrix::diagonal(vec![CycScalar::one(mode), CycScalar::zero(mode)]);
        assert_eq!(pure_gauge(&singular, Differential::Q), Err(Error::Singular));
    }

    #[test]
    fn pure_gauge_flat_and_expansion() {
        let mut r = random::rng(6);
        for n in 2..=5 {
            let s = random::invertible_diagonal(&mut r, n);
            for diff in [Differential::Q, Differential::Partial(n - 1)] {
                let conn = pure_gauge(&s, diff).unwrap();
                assert!(curvature(&conn).is_flat());
                let phi = random::matrix(&mut r, n);
                for k in 1..=n {
                    let rhs = pure_gauge_expansion(&s, &phi, k, diff).unwrap();
                    assert_eq!(conn.apply_n(&phi, k).unwrap(), rhs);
                }
                assert!(pure_gauge_expansion(&s, &phi, n, diff).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn pure_gauge_expansion_n2_shape() {
        let mut r = random::rng(7);
        let n = 3;
        let mode = Mode::root(3);
        let s = random::invertible_diagonal(&mut r, n);
        let phi = random::matrix(&mut r, n);
        let inv = s.inverse_diagonal().unwrap();
        let d = |m: &GradedMatrix| Differential::Q.apply(m).unwrap();
        let one_plus_q = CycScalar::one(mode).plus(&CycScalar::q(mode));
        let expected = d(&d(&phi))
            .add(&inv.mul(&d(&d(&s))).mul(&phi))
            .add(&inv.mul(&d(&s)).mul(&d(&phi)).scale_scalar(&one_plus_q));
        assert_eq!(pure_gauge_expansion(&s, &phi, 2, Differential::Q).unwrap(), expected);
        let id = GradedMatrix::identity(n);
        assert_eq!(
            pure_gauge_expansion(&id, &phi, 2, Differential::Q).unwrap(),
            d(&d(&phi))
        );
    }

    #[test]
    fn cyclic_family_scalar_part() {
        for n in 2..=4 {
            let conn = symbolic_cyclic_connection(n);
            let curv = curvature(&conn);
            assert_eq!(curv.scalar_part, Some(cyclic_product_minus_one(n)), "N={n}");
        }
    }

    #[test]
    fn multi_curvature_n2_table() {
        let mode = Mode::root(2);
        let conns = symbolic_pair_n2();
        let [a1, a2, b1, b2] = ["a1", "a2", "b1", "b2"].map(|v| var(mode, v));
        let o11 = multi_curvature(&conns, &[1, 1]).unwrap().scalar_part.unwrap();
        let o22 = multi_curvature(&conns, &[2, 2]).unwrap().scalar_part.unwrap();
        let o12 = multi_curvature(&conns, &[1, 2]).unwrap().scalar_part.unwrap();
        let o21 = multi_curvature(&conns, &[2, 1]).unwrap().scalar_part.unwrap();
        assert_eq!(o12, o21);
        let expected12 = a1
            .plus(&a2)
            .plus(&b1)
            .minus(&b2)
            .plus(&a1.times(&b2))
            .plus(&a2.times(&b1));
        assert_eq!(o12, expected12);
        assert_eq!(o11, a1.minus(&b1).plus(&a1.times(&b1)));
        assert_eq!(o22, a2.plus(&b2).plus(&a2.times(&b2)));
        for idx in [[1, 1], [1, 2], [2, 2]] {
            let c = multi_curvature(&conns, &idx).unwrap();
            assert_eq!(multi_curvature_basis_failure(&conns, &idx, &c).unwrap(), None);
        }
        assert!(multi_curvature(&conns, &[1]).is_err());
        assert!(multi_curvature(&conns, &[1, 3]).is_err());
    }

    #[test]
    fn multi_curvature_zero_and_n3() {
        let zero = Connection::partial_family(vec![GradedMatrix::<CycScalar>::zero(3); 3]).unwrap();
        assert!(multi_curvature(&zero, &[1, 2, 3]).unwrap().is_flat());
        let mut r = random::rng(8);
        let conns = Connection::partial_family((0..3).map(|_| random::homogeneous(&mut r, 3, 1)).collect()).unwrap();
        for idx in [[1, 2, 3], [1, 1, 2], [3, 3, 3]] {
            let c = multi_curvature(&conns, &idx).unwrap();
            assert!(c.scalar_part.is_some());
            assert_eq!(multi_curvature_basis_failure(&conns, &idx, &c).unwrap(), None);
        }
    }

    #[test]
    fn gauge_invariance() {
        let mut r = random::rng(9);
        for n in 2..=3 {
            let conns = Connection::partial_family((0..n).map(|_| random::homogeneous(&mut r, n, 1)).collect()).unwrap();
            let u = random::invertible_diagonal(&mut r, n);
            let moved: Vec<_> = conns.iter().map(|c| gauge_transform(c, &u).unwrap()).collect();
            for c in &conns {
                assert_eq!(curvature(c).scalar_part, curvature(&gauge_transform(c, &u).unwrap()).scalar_part);
            }
            let idx: Vec<usize> = (1..=n).collect();
            assert_eq!(
                multi_curvature(&conns, &idx).unwrap().scalar_part,
                multi_curvature(&moved, &idx).unwrap().scalar_part
            );
            let id = GradedMatrix::identity(n);
            assert_eq!(gauge_transform(&conns[0], &id).unwrap(), conns[0]);
            let flat = gauge_transform(&Connection::<CycScalar>::zero(n, Differential::Q), &u).unwrap();
            assert!(curvature(&flat).is_flat());
        }
    }

    #[test]
    fn symmetric_connections() {
        let n = 3;
        let mode = Mode::root(3);
        let mut r = random::rng(10);
        let conns = Connection::partial_family((0..n).map(|_| random::homogeneous(&mut r, n, 1)).collect()).unwrap();
        let id_map: Vec<Vec<CycScalar>> = (0..n)
            .map(|k| (0..n).map(|j| CycScalar::from_int(mode, (j == k) as i64)).collect())
            .collect();
        assert!(is_symmetric_connection(&id_map, &GradedMatrix::identity(n), &conns).unwrap());
        assert!(!is_symmetric_connection(&id_map, &grading_matrix(n), &conns).unwrap());

        // A_k = −η_k is fixed by every diagonal gauge transformation
        let fixed = Connection::partial_family((1..=n).map(|k| eta_k(n, k).unwrap().neg()).collect()).unwrap();
        let candidates = [CycScalar::one(mode), CycScalar::from_int(mode, 2)];
        let inst = find_symmetric_gauge(&fixed, &candidates, true).unwrap().unwrap();
        assert!(inst.u.scalar_part().is_none());
        assert!(is_symmetric_connection(&inst.map_matrix(), &inst.u, &fixed).unwrap());

        // pure gauge in every slot from a common S
        let s = random::invertible_diagonal(&mut r, n);
        let pure: Vec<_> = (1..=n).map(|k| pure_gauge(&s, Differential::Partial(k)).unwrap()).collect();
        let inst = find_symmetric_gauge(&pure, &candidates, false).unwrap().unwrap();
        assert!(is_symmetric_connection(&inst.map_matrix(), &inst.u, &pure).unwrap());
    }
}
