//! Spectral criteria and entanglement measures.
//!
//! Everything except the concurrence is a function of the eigenvalues of
//! the partially transposed state: the PPT test in its smallest-eigenvalue
//! and product forms, the CSYWO steering test, the steering functional
//! `S(mu) = (1 + mu) L4 (1 - (32/9) L2) + L3^2` over the elementary
//! symmetric functions `L1..L4` of the spectrum, and the geometric steering
//! bound for the generalized Werner family.
//!
//! Each criterion recomputes the PT spectrum from the state; spectrum-level
//! variants are provided so sweeps can reuse one eigensolve per grid point.

use num_complex::Complex64;

use crate::qmat::{DensityMatrix, Matrix4, Spectrum};
use crate::{Error, Result};

use std::f64::consts::FRAC_PI_2;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Verdicts use a strict margin so separable boundary states are not
/// flagged from roundoff; the raw value is always reported alongside.
pub const DETECTION_EPS: f64 = 1e-12;

/// Elementary symmetric functions `L1..L4` of a four-point spectrum:
/// the coefficients (up to sign) of its characteristic polynomial
/// `l^4 - L1 l^3 + L2 l^2 - L3 l + L4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymFns {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
}

/// Elementary symmetric functions of the four eigenvalues.
pub fn sym_fns(s: &Spectrum) -> SymFns {
    let [a, b, c, d] = s.values();
    SymFns {
        l1: a + b + c + d,
        l2: a * b + a * c + a * d + b * c + b * d + c * d,
        l3: a * b * c + a * b * d + a * c * d + b * c * d,
        l4: a * b * c * d,
    }
}

/// Smallest PT eigenvalue; negative exactly when the state is entangled.
pub fn ppt_value(rho: &DensityMatrix) -> f64 {
    rho.pt_spectrum().min()
}

/// Product of all four PT eigenvalues (`L4`): the permutation-symmetric
/// form of the PPT test. For two qubits at most one PT eigenvalue is
/// negative, so the sign agrees with [`ppt_value`].
pub fn ppt_sym_value(rho: &DensityMatrix) -> f64 {
    sym_fns(&rho.pt_spectrum()).l4
}

/// CSYWO steering test `l1 + l2 - (l1 - l2)^2` on the two smallest PT
/// eigenvalues; negative is sufficient (not necessary) for steerability.
pub fn csywo(rho: &DensityMatrix) -> f64 {
    csywo_spectrum(&rho.pt_spectrum())
}

/// [`csywo`] on a precomputed PT spectrum.
pub fn csywo_spectrum(s: &Spectrum) -> f64 {
    let d = s[0] - s[1];
    s[0] + s[1] - d * d
}

/// How `mu` is validated. `Strict` is the documented domain `(0, 2]`;
/// `Figure` additionally admits `mu = 0`, the limit used when reproducing
/// the published sweep figures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MuPolicy {
    #[default]
    Strict,
    Figure,
}

pub fn validate_mu(mu: f64, policy: MuPolicy) -> Result<()> {
    let lo_ok = match policy {
        MuPolicy::Strict => mu > 0.0,
        MuPolicy::Figure => mu >= 0.0,
    };
    if mu.is_finite() && lo_ok && mu <= 2.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "mu",
            value: mu,
            lo: 0.0,
            hi: 2.0,
        })
    }
}

/// The steering functional `(1 + mu) L4 (1 - (32/9) L2) + L3^2` without
/// any range check on `mu`; the checked entry points below wrap it.
pub fn steering_functional(f: &SymFns, mu: f64) -> f64 {
    (1.0 + mu) * f.l4 * (1.0 - 32.0 / 9.0 * f.l2) + f.l3 * f.l3
}

/// Steering test on the PT spectrum: negative signals steerability. The
/// test is necessary and sufficient on Werner, pure, and rank-2 states
/// for every `mu` in `(0, 2]`.
pub fn peres_steering(rho: &DensityMatrix, mu: f64) -> Result<f64> {
    peres_steering_spectrum(&rho.pt_spectrum(), mu)
}

/// [`peres_steering`] on a precomputed PT spectrum.
pub fn peres_steering_spectrum(s: &Spectrum, mu: f64) -> Result<f64> {
    validate_mu(mu, MuPolicy::Strict)?;
    Ok(steering_functional(&sym_fns(s), mu))
}

/// Wootters concurrence: `max(0, l1 - l2 - l3 - l4)` where the `l` are the
/// decreasing square roots of the eigenvalues of
/// `rho (sy x sy) rho* (sy x sy)`.
///
/// Implementation: factor `rho = B B^dagger` with a diagonally pivoted
/// rank-revealing Cholesky, then the `l` are the singular values of the
/// complex symmetric matrix `B^T (sy x sy) B`, computed by one-sided
/// Jacobi. Working on the factor keeps the near-zero Wootters eigenvalues
/// of low-rank states at machine scale instead of sqrt(machine) scale.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let l = wootters_lambdas(rho);
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Decreasing Wootters spectrum, padded with zeros to length four.
pub(crate) fn wootters_lambdas(rho: &DensityMatrix) -> [f64; 4] {
    let cols = psd_factor_columns(rho.matrix());
    let k = cols.len();

    // M = B^T Y B with Y = sy x sy; complex symmetric, k x k.
    let mut m = vec![vec![ZERO; k]; k];
    for (c_idx, col) in cols.iter().enumerate() {
        let y = spin_flip(col);
        for (r_idx, row_col) in cols.iter().enumerate() {
            m[r_idx][c_idx] = (0..4).map(|i| row_col[i] * y[i]).sum();
        }
    }

    let mut sv = singular_values(&mut m);
    sv.resize(4, 0.0);
    [sv[0], sv[1], sv[2], sv[3]]
}

/// `(sy x sy) v` for real sign pattern `antidiag(-1, 1, 1, -1)`.
fn spin_flip(v: &[Complex64; 4]) -> [Complex64; 4] {
    [-v[3], v[2], v[1], -v[0]]
}

/// Columns of a factor `B` with `rho ~= B B^dagger`, via outer-product
/// Cholesky with diagonal pivoting. Stops once every remaining diagonal
/// falls below `1e-12 * max_diag`, which truncates roundoff-level residue
/// of rank-deficient states instead of amplifying it.
fn psd_factor_columns(m: &Matrix4) -> Vec<[Complex64; 4]> {
    let mut a = *m;
    let scale = (0..4).map(|i| a[(i, i)].re).fold(0.0f64, f64::max);
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);

    let mut cols = Vec::with_capacity(4);
    let mut used = [false; 4];
    for _ in 0..4 {
        let mut pivot = None;
        let mut best = tol;
        for j in 0..4 {
            if !used[j] && a[(j, j)].re > best {
                best = a[(j, j)].re;
                pivot = Some(j);
            }
        }
        let Some(j) = pivot else { break };
        used[j] = true;
        let inv = 1.0 / best.sqrt();
        let col = [
            a[(0, j)] * inv,
            a[(1, j)] * inv,
            a[(2, j)] * inv,
            a[(3, j)] * inv,
        ];
        a = Matrix4::from_fn(|r, c| a[(r, c)] - col[r] * col[c].conj());
        cols.push(col);
    }
    cols
}

/// Singular values of a small complex matrix by one-sided Jacobi:
/// unitary plane rotations orthogonalize the columns; the singular values
/// are the final column norms. Descending order.
fn singular_values(m: &mut [Vec<Complex64>]) -> Vec<f64> {
    let k = m.len();
    for _ in 0..60 {
        let mut converged = true;
        for p in 0..k {
            for q in (p + 1)..k {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = ZERO;
                for row in m.iter() {
                    app += row[p].norm_sqr();
                    aqq += row[q].norm_sqr();
                    apq += row[p].conj() * row[q];
                }
                let r = apq.norm();
                if r <= 1e-15 * (app * aqq).sqrt() + f64::MIN_POSITIVE {
                    continue;
                }
                converged = false;
                let u = apq / r;
                let tau = (aqq - app) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for row in m.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = vp * c - vq * (u.conj() * s);
                    row[q] = vp * (u * s) + vq * c;
                }
            }
        }
        if converged {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..k)
        .map(|j| m.iter().map(|row| row[j].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Which test a [`CriterionReport`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionKind {
    Ppt,
    PptSym,
    Csywo,
    Peres,
    Concurrence,
    Geometric,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 6] = [
        CriterionKind::Ppt,
        CriterionKind::PptSym,
        CriterionKind::Csywo,
        CriterionKind::Peres,
        CriterionKind::Concurrence,
        CriterionKind::Geometric,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Ppt => "ppt",
            Self::PptSym => "ppt_sym",
            Self::Csywo => "csywo",
            Self::Peres => "peres",
            Self::Concurrence => "concurrence",
            Self::Geometric => "geometric",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Unsupported(format!("unknown criterion `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Detected,
    NotDetected,
}

/// One evaluated criterion: the raw value, the verdict derived from it,
/// and the `mu` used (steering functional only).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriterionReport {
    pub criterion: CriterionKind,
    pub value: f64,
    pub verdict: Verdict,
    pub mu: Option<f64>,
}

impl CriterionReport {
    /// Applies the detection rule for `kind`: spectral criteria and the
    /// geometric margin detect on `value < -DETECTION_EPS`, concurrence on
    /// `value > DETECTION_EPS`.
    pub fn new(criterion: CriterionKind, value: f64, mu: Option<f64>) -> Self {
        let detected = match criterion {
            CriterionKind::Concurrence => value > DETECTION_EPS,
            _ => value < -DETECTION_EPS,
        };
        Self {
            criterion,
            value,
            verdict: if detected {
                Verdict::Detected
            } else {
                Verdict::NotDetected
            },
            mu,
        }
    }
}

/// Geometric sufficient steering bound for the generalized Werner state:
/// steerable when `V > 3 / (2 (1 + 2 sin^2 alpha))`. The reported value is
/// the margin `threshold - V`, so `Detected` keeps the uniform
/// `value < 0` convention of the spectral criteria.
pub fn geometric_gw(v: f64, alpha: f64) -> Result<CriterionReport> {
    if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
        return Err(Error::OutOfRange {
            name: "V",
            value: v,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if !(alpha.is_finite() && (0.0..=FRAC_PI_2).contains(&alpha)) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: FRAC_PI_2,
        });
    }
    let sin2 = alpha.sin().powi(2);
    let threshold = 3.0 / (2.0 * (1.0 + 2.0 * sin2));
    Ok(CriterionReport::new(
        CriterionKind::Geometric,
        threshold - v,
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::Spectrum;
    use crate::states;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn sym_fns_basics() {
        let f = sym_fns(&Spectrum::from_values([1.0, 0.0, 0.0, 0.0]));
        assert_eq!((f.l1, f.l2, f.l3, f.l4), (1.0, 0.0, 0.0, 0.0));

        // Werner PT spectrum: product of the closed-form eigenvalues.
        for k in 0..=20 {
            let v = k as f64 / 20.0;
            let f = sym_fns(&states::werner(v).unwrap().pt_spectrum());
            let expect = (1.0 - 3.0 * v) / 4.0 * ((1.0 + v) / 4.0).powi(3);
            assert!((f.l4 - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn sym_fns_match_newton_identities() {
        // Independent oracle: rebuild e1..e4 from power sums p1..p4.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let lam: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
            let p = |k: i32| lam.iter().map(|x| x.powi(k)).sum::<f64>();
            let (p1, p2, p3, p4) = (p(1), p(2), p(3), p(4));
            let e1 = p1;
            let e2 = (e1 * p1 - p2) / 2.0;
            let e3 = (e2 * p1 - e1 * p2 + p3) / 3.0;
            let e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4.0;

            let f = sym_fns(&Spectrum::from_values(lam));
            assert!((f.l1 - e1).abs() < 1e-12);
            assert!((f.l2 - e2).abs() < 1e-12);
            assert!((f.l3 - e3).abs() < 1e-12);
            assert!((f.l4 - e4).abs() < 1e-12);
        }
    }

    #[test]
    fn ppt_closed_forms() {
        for k in 0..=20 {
            let v = k as f64 / 20.0;
            let got = ppt_value(&states::werner(v).unwrap());
            assert!((got - (1.0 - 3.0 * v) / 4.0).abs() < 1e-12);

            let theta = k as f64 / 20.0 * FRAC_PI_2;
            let got = ppt_value(&states::pure(theta).unwrap());
            assert!((got + theta.sin() * theta.cos()).abs() < 1e-12);
            let got = ppt_sym_value(&states::pure(theta).unwrap());
            assert!((got + (theta.sin() * theta.cos()).powi(4)).abs() < 1e-12);
        }
        let got = ppt_sym_value(&states::werner(1.0).unwrap());
        assert!((got + 1.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn csywo_closed_forms() {
        for k in 0..=100 {
            let v = k as f64 / 100.0;
            let got = csywo(&states::werner(v).unwrap());
            let expect = -0.5 * (2.0 * v - 1.0) * (1.0 + v);
            assert!((got - expect).abs() < 1e-12);
        }
        for k in 0..=45 {
            let theta = k as f64 / 45.0 * FRAC_PI_4;
            let got = csywo(&states::pure(theta).unwrap());
            let s2 = (2.0 * theta).sin();
            let expect = -0.5 * s2 * (1.0 + 2.0 * theta.sin().powi(2));
            assert!((got - expect).abs() < 1e-12);
        }
        // The rank-2 state CSYWO misses: value 3/8 - sqrt(2)/4 > 0.
        let rho = states::rank2(&states::failing_rank2()).unwrap();
        let got = csywo(&rho);
        assert!((got - (0.375 - SQRT_2 / 4.0)).abs() < 1e-12);
        assert!(got > 0.0);
    }

    #[test]
    fn steering_on_pure_states() {
        for &mu in &[0.1, 1.0, 2.0] {
            for k in 1..=89 {
                let theta = k as f64 / 90.0 * FRAC_PI_2;
                let got = peres_steering(&states::pure(theta).unwrap(), mu).unwrap();
                let expect = -mu * (theta.sin() * theta.cos()).powi(4);
                assert!((got - expect).abs() < 1e-12);
                assert!(got < 0.0);
            }
            for theta in [0.0, FRAC_PI_2] {
                let got = peres_steering(&states::pure(theta).unwrap(), mu).unwrap();
                assert!(got.abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn steering_mu_domain() {
        let rho = states::werner(0.8).unwrap();
        assert!(peres_steering(&rho, 0.0).is_err());
        assert!(peres_steering(&rho, -0.5).is_err());
        assert!(peres_steering(&rho, 2.5).is_err());
        assert!(peres_steering(&rho, 2.0).is_ok());
        assert!(peres_steering(&rho, 1e-6).is_ok());

        assert!(validate_mu(0.0, MuPolicy::Figure).is_ok());
        assert!(validate_mu(-1e-9, MuPolicy::Figure).is_err());
    }

    #[test]
    fn steering_detects_werner_above_half() {
        for &mu in &[0.1, 1.0, 2.0] {
            let below = peres_steering(&states::werner(0.4).unwrap(), mu).unwrap();
            let above = peres_steering(&states::werner(0.6).unwrap(), mu).unwrap();
            assert!(below > 0.0);
            assert!(above < 0.0);
        }
    }

    #[test]
    fn steering_is_necessary_and_sufficient_on_rank2() {
        // Entangled rank-2 draws must be flagged for every admissible mu.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let mut entangled = 0;
        while entangled < 1000 {
            let p = crate::states::Rank2Params::sample(&mut rng);
            if crate::rank2::concurrence_closed(&p) <= 1e-6 {
                continue;
            }
            entangled += 1;
            let rho = crate::states::rank2(&p).unwrap();
            for &mu in &[0.1, 1.0, 2.0] {
                let s = peres_steering(&rho, mu).unwrap();
                assert!(s < 0.0, "mu={mu}: S = {s:e} for {p:?}");
            }
        }
    }

    #[test]
    fn concurrence_known_values() {
        // AVN family: C = |nu1 - nu2| sin(2 theta).
        for i in 0..=10 {
            for j in 0..=10 {
                let theta = i as f64 / 10.0 * FRAC_PI_2;
                let nu1 = j as f64 / 10.0;
                let got = concurrence(&states::avn(theta, nu1).unwrap());
                let expect = (2.0 * nu1 - 1.0).abs() * (2.0 * theta).sin();
                assert!(
                    (got - expect).abs() < 1e-10,
                    "theta={theta} nu1={nu1}: {got} vs {expect}"
                );
            }
        }

        // Werner: C = max(0, (3V - 1)/2).
        for k in 0..=20 {
            let v = k as f64 / 20.0;
            let got = concurrence(&states::werner(v).unwrap());
            let expect = ((3.0 * v - 1.0) / 2.0).max(0.0);
            assert!((got - expect).abs() < 1e-10);
        }

        // The CSYWO-failure preset has concurrence exactly 1/2.
        let rho = states::rank2(&states::failing_rank2()).unwrap();
        assert!((concurrence(&rho) - 0.5).abs() < 1e-12);

        // Product states are separable.
        let prod = states::random_separable(11, 1).unwrap();
        assert!(concurrence(&prod) <= 1e-10);
        assert_eq!(concurrence(&states::pure(0.0).unwrap()), 0.0);
    }

    #[test]
    fn geometric_bound_cases() {
        let r = geometric_gw(0.51, FRAC_PI_2).unwrap();
        assert_eq!(r.verdict, Verdict::Detected);

        // sin^2(pi/6) = 1/4 puts the threshold at exactly 1.
        for k in 0..=20 {
            let v = k as f64 / 20.0;
            let r = geometric_gw(v, std::f64::consts::FRAC_PI_6).unwrap();
            assert_eq!(r.verdict, Verdict::NotDetected);
        }
        let r = geometric_gw(1.0, 0.0).unwrap();
        assert_eq!(r.verdict, Verdict::NotDetected);
        assert!((r.value - 0.5).abs() < 1e-15);

        assert!(geometric_gw(1.5, 0.3).is_err());
        assert!(geometric_gw(0.5, 2.0).is_err());
    }

    #[test]
    fn criterion_kind_parsing() {
        assert_eq!(CriterionKind::parse("ppt").unwrap(), CriterionKind::Ppt);
        assert_eq!(
            CriterionKind::parse("ppt-sym").unwrap(),
            CriterionKind::PptSym
        );
        assert_eq!(CriterionKind::parse("PERES").unwrap(), CriterionKind::Peres);
        assert!(CriterionKind::parse("chsh").is_err());
    }

    proptest! {
        #[test]
        fn pt_spectrum_sym_fns_are_constrained(seed in 0u64..300) {
            let rho = states::random_density(1 + (seed % 4) as usize, seed)?;
            let f = sym_fns(&rho.pt_spectrum());
            prop_assert!((f.l1 - 1.0).abs() <= 1e-10);
            prop_assert!(f.l2 <= 0.375 + 1e-10);
            prop_assert!(f.l3 * f.l3 >= 8.0 / 3.0 * f.l4 * f.l2 - 1e-9);
        }

        #[test]
        fn spectrum_and_matrix_paths_agree(seed in 0u64..200) {
            let rho = states::random_density(1 + (seed % 4) as usize, seed)?;
            let s = rho.pt_spectrum();
            prop_assert!((ppt_value(&rho) - s.min()).abs() <= 1e-12);
            prop_assert!((csywo(&rho) - csywo_spectrum(&s)).abs() <= 1e-12);
            let mu = 0.7;
            let a = peres_steering(&rho, mu)?;
            let b = peres_steering_spectrum(&s, mu)?;
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}
