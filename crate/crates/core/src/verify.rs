//! Randomized identity suites behind `qdiff verify`.

use rayon::prelude::*;

use crate::covariant::{curvature, pure_gauge, Connection};
use crate::graded_matrix::{d_q, d_q_closed_form, d_q_iterated, Differential, GradedMatrix};
use crate::parse::parse_form;
use crate::random::{self, TestRng};
use crate::report::Check;
use crate::scalars::{q_binomial, CycScalar, Mode, QIntegerConvention, Ring};

/// Orders below this bound are checked for the q-integer convention.
const CONVENTION_ROWS: u32 = 6;
const CONVENTION_MODULUS: u32 = 11;

#[derive(Clone, Copy, Debug)]
pub struct VerifyParams {
    pub n: usize,
    pub dim: u32,
    pub trials: usize,
    pub seed: u64,
}

type Suite = fn(&VerifyParams, &mut TestRng) -> Option<String>;

const SUITES: &[(&str, Suite)] = &[
    ("binomial_vanishing", binomial_vanishing),
    ("q_integer_convention", q_integer_convention),
    ("d_q_nilpotent", d_q_nilpotent),
    ("d_k_nilpotent", d_k_nilpotent),
    ("closed_form", closed_form),
    ("q_leibniz", q_leibniz),
    ("covariant_reduction", covariant_reduction),
    ("covariant_recurrence", covariant_recurrence),
    ("pure_gauge_flat", pure_gauge_flat),
    ("cyclic_scalar_part", cyclic_scalar_part),
    ("grassmann_d_nilpotent", grassmann_d_nilpotent),
    ("parser_round_trip", parser_round_trip),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _)| *name).collect()
}

/// Runs every suite at one N; check names are prefixed with `N=<n>/`.
pub fn verify(params: &VerifyParams) -> Vec<Check> {
    SUITES
        .par_iter()
        .map(|(name, suite)| {
            let label = format!("N={}/{name}", params.n);
            let mut rng = random::sub_rng(params.seed, &label);
            Check::from_search(label, suite(params, &mut rng))
        })
        .collect()
}

fn mode(p: &VerifyParams) -> Mode {
    Mode::root(p.n as u32)
}

/// First trial index for which `f` reports a counterexample.
fn search(trials: usize, mut f: impl FnMut() -> Option<String>) -> Option<String> {
    (0..trials).find_map(|_| f())
}

fn binomial_vanishing(p: &VerifyParams, _: &mut TestRng) -> Option<String> {
    (1..p.n as u32)
        .find(|&k| !q_binomial(p.n as u32, k, mode(p)).is_zero())
        .map(|k| format!("[{} {k}]_q = {}", p.n, q_binomial(p.n as u32, k, mode(p))))
}

/// The recurrence `q^{k+1}[n, k+1] + [n, k] = [n+1, k+1]` for quotient binomials
/// built from `[k]_q = 1 + ... + q^{k-1}`.
fn q_integer_convention(_: &VerifyParams, _: &mut TestRng) -> Option<String> {
    QIntegerConvention::Standard
        .recurrence_counterexample(CONVENTION_ROWS, Mode::root(CONVENTION_MODULUS))
        .map(|(n, k)| format!("recurrence fails at n = {n}, k = {k}"))
}

/// The alternative convention's first recurrence failure, for the report.
pub fn shifted_convention_counterexample() -> Option<(u32, u32)> {
    QIntegerConvention::Shifted.recurrence_counterexample(CONVENTION_ROWS, Mode::root(CONVENTION_MODULUS))
}

fn d_q_nilpotent(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    search(p.trials, || {
        let b = random::matrix(r, p.n);
        (!d_q_iterated(&b, p.n).is_zero()).then(|| format!("B = {b}"))
    })
}

fn d_k_nilpotent(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    use rand::Rng;
    search(p.trials, || {
        let b = random::matrix(r, p.n);
        let k = r.gen_range(1..=p.n);
        let out = Differential::Partial(k).apply_n(&b, p.n).expect("k in range");
        (!out.is_zero()).then(|| format!("k = {k}, B = {b}"))
    })
}

fn closed_form(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    use rand::Rng;
    search(p.trials, || {
        let deg = r.gen_range(0..p.n);
        let b = random::homogeneous(r, p.n, deg);
        (1..=p.n)
            .find(|&m| d_q_closed_form(&b, m).expect("homogeneous") != d_q_iterated(&b, m))
            .map(|m| format!("power {m}, B = {b}"))
    })
}

fn q_leibniz(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    use rand::Rng;
    search(p.trials, || {
        let a_deg = r.gen_range(0..p.n);
        let a = random::homogeneous(r, p.n, a_deg);
        let b = random::matrix(r, p.n);
        let lhs = d_q(&a.mul(&b));
        let rhs = d_q(&a)
            .mul(&b)
            .add(&a.mul(&d_q(&b)).scale_scalar(&CycScalar::q_pow(mode(p), a_deg as i64)));
        (lhs != rhs).then(|| format!("A = {a}, B = {b}"))
    })
}

fn random_connection(p: &VerifyParams, r: &mut TestRng) -> Connection {
    Connection::new(random::homogeneous(r, p.n, 1), Differential::Q).expect("degree 1")
}

fn covariant_reduction(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    search(p.trials, || {
        let a = random_connection(p, r);
        let phi = random::matrix(r, p.n);
        let omega = curvature(&a).omega;
        let lhs = a.apply_n(&phi, p.n).expect("same size");
        (lhs != omega.mul(&phi)).then(|| format!("A = {}, Phi = {phi}", a.matrix()))
    })
}

fn covariant_recurrence(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    search(p.trials, || {
        let a = random_connection(p, r);
        let phi = random::matrix(r, p.n);
        let mut iterated = phi.clone();
        for m in 1..=p.n {
            iterated = a.apply(&iterated).expect("same size");
            if a.power_recurrence(&phi, m).expect("same size") != iterated {
                return Some(format!("power {m}, A = {}, Phi = {phi}", a.matrix()));
            }
        }
        None
    })
}

fn pure_gauge_flat(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    search(p.trials, || {
        let s = random::invertible_diagonal(r, p.n);
        let a = pure_gauge(&s, Differential::Q).expect("invertible diagonal");
        (!curvature(&a).is_flat()).then(|| format!("S = {s}"))
    })
}

/// For `A = off_diagonal(1, α)`, `Ω = (Π(1 + α_i) − 1)·1`.
fn cyclic_scalar_part(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    search(p.trials, || {
        let alphas: Vec<CycScalar> = (0..p.n).map(|_| random::scalar(r, mode(p))).collect();
        let prod = alphas
            .iter()
            .fold(CycScalar::one(mode(p)), |acc, a| acc.times(&a.plus(&CycScalar::one(mode(p)))));
        let expected = GradedMatrix::identity(p.n).scale_scalar(&prod.minus(&CycScalar::one(mode(p))));
        let omega = curvature(&Connection::cyclic(alphas.clone())).omega;
        (omega != expected).then(|| {
            let parts: Vec<String> = alphas.iter().map(|a| a.to_string()).collect();
            format!("alpha = [{}]", parts.join(", "))
        })
    })
}

fn grassmann_d_nilpotent(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    search(p.trials, || {
        let w = random::form(r, p.n as u32, p.dim, 3);
        (!w.d_n(p.n).is_zero()).then(|| format!("omega = {w}"))
    })
}

fn parser_round_trip(p: &VerifyParams, r: &mut TestRng) -> Option<String> {
    search(p.trials, || {
        let w = random::form(r, p.n as u32, p.dim, 3);
        let text = w.to_string();
        match parse_form(&text, p.n as u32, p.dim) {
            Ok(back) if back == w => None,
            Ok(back) => Some(format!("{text} reparsed as {back}")),
            Err(e) => Some(format!("{text}: {e}")),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_small() {
        for n in 2..=4 {
            let checks = verify(&VerifyParams {
                n,
                dim: 2,
                trials: 5,
                seed: 1,
            });
            assert_eq!(checks.len(), SUITES.len());
            for c in checks {
                assert!(c.passed(), "{c:?}");
            }
        }
        assert_eq!(shifted_convention_counterexample(), Some((1, 0)));
    }

    #[test]
    fn deterministic() {
        let p = VerifyParams {
            n: 3,
            dim: 2,
            trials: 3,
            seed: 9,
        };
        assert_eq!(verify(&p), verify(&p));
    }
}
