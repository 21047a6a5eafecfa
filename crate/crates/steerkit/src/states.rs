//! Constructors for the two-qubit state families evaluated by the
//! criteria, plus seeded random samplers used in property suites.
//!
//! All constructors validate parameter ranges and return states that pass
//! [`DensityMatrix::new`] validation. Samplers are deterministic in their
//! seed; distinct seeds give independent streams.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmat::{kron, DensityMatrix, Matrix2, Matrix4};
use crate::{Error, Result};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            lo,
            hi,
        })
    }
}

/// Werner state: `V |Psi><Psi| + (1 - V) I/4` with
/// `|Psi> = (|00> + |11>)/sqrt(2)`.
pub fn werner(v: f64) -> Result<DensityMatrix> {
    check("V", v, 0.0, 1.0)?;
    DensityMatrix::new(Matrix4::from_real([
        [(1.0 + v) / 4.0, 0.0, 0.0, v / 2.0],
        [0.0, (1.0 - v) / 4.0, 0.0, 0.0],
        [0.0, 0.0, (1.0 - v) / 4.0, 0.0],
        [v / 2.0, 0.0, 0.0, (1.0 + v) / 4.0],
    ]))
}

/// Pure state `|Psi(theta)> = cos(theta)|00> + sin(theta)|11>`.
pub fn pure(theta: f64) -> Result<DensityMatrix> {
    check("theta", theta, 0.0, FRAC_PI_2)?;
    let (s, c) = theta.sin_cos();
    DensityMatrix::new(Matrix4::from_real([
        [c * c, 0.0, 0.0, s * c],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [s * c, 0.0, 0.0, s * s],
    ]))
}

/// All-versus-nothing state: the rank-2 mixture
/// `nu1 |psi(theta)><psi(theta)| + nu2 |chi(theta)><chi(theta)|` with
/// `psi = cos(theta)|00> + sin(theta)|11>`,
/// `chi = sin(theta)|01> + cos(theta)|10>`, `nu2 = 1 - nu1`.
pub fn avn(theta: f64, nu1: f64) -> Result<DensityMatrix> {
    check("theta", theta, 0.0, FRAC_PI_2)?;
    check("nu1", nu1, 0.0, 1.0)?;
    let nu2 = 1.0 - nu1;
    let (s, c) = theta.sin_cos();
    let sc = s * c;
    DensityMatrix::new(Matrix4::from_real([
        [nu1 * c * c, 0.0, 0.0, nu1 * sc],
        [0.0, nu2 * s * s, nu2 * sc, 0.0],
        [0.0, nu2 * sc, nu2 * c * c, 0.0],
        [nu1 * sc, 0.0, 0.0, nu1 * s * s],
    ]))
}

/// Bell-diagonal mixture of `(|00>+|11>)/sqrt(2)` and `(|01>+|10>)/sqrt(2)`
/// projectors with weights `V` and `1 - V`.
pub fn bell_diag(v: f64) -> Result<DensityMatrix> {
    check("V", v, 0.0, 1.0)?;
    let w = 1.0 - v;
    DensityMatrix::new(Matrix4::from_real([
        [v / 2.0, 0.0, 0.0, v / 2.0],
        [0.0, w / 2.0, w / 2.0, 0.0],
        [0.0, w / 2.0, w / 2.0, 0.0],
        [v / 2.0, 0.0, 0.0, v / 2.0],
    ]))
}

/// Non-maximally entangled state mixed with color noise:
/// `V |Psi(theta)><Psi(theta)| + (1 - V) (|00><00| + |11><11|)/2`.
pub fn color_noise(theta: f64, v: f64) -> Result<DensityMatrix> {
    check("theta", theta, 0.0, FRAC_PI_2)?;
    check("V", v, 0.0, 1.0)?;
    let (s, c) = theta.sin_cos();
    let w = (1.0 - v) / 2.0;
    DensityMatrix::new(Matrix4::from_real([
        [v * c * c + w, 0.0, 0.0, v * s * c],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [v * s * c, 0.0, 0.0, v * s * s + w],
    ]))
}

/// Maximally entangled mixed state with `g(gamma) = 1/3` on `[0, 2/3]` and
/// `gamma/2` on `[2/3, 1]`.
pub fn mems(gamma: f64) -> Result<DensityMatrix> {
    check("gamma", gamma, 0.0, 1.0)?;
    let g = if gamma <= 2.0 / 3.0 {
        1.0 / 3.0
    } else {
        gamma / 2.0
    };
    DensityMatrix::new(Matrix4::from_real([
        [g, 0.0, 0.0, gamma / 2.0],
        [0.0, 1.0 - 2.0 * g, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [gamma / 2.0, 0.0, 0.0, g],
    ]))
}

/// Generalized Werner state
/// `V |psi_alpha><psi_alpha| + (1 - V) I/4` with
/// `|psi_alpha> = sin(alpha/2)|01> - cos(alpha/2)|10>`. Reduces to the
/// standard Werner state (up to a local basis change) at `alpha = pi/2`.
pub fn gen_werner(v: f64, alpha: f64) -> Result<DensityMatrix> {
    check("V", v, 0.0, 1.0)?;
    check("alpha", alpha, 0.0, FRAC_PI_2)?;
    let (s, c) = (alpha / 2.0).sin_cos();
    let q = (1.0 - v) / 4.0;
    DensityMatrix::new(Matrix4::from_real([
        [q, 0.0, 0.0, 0.0],
        [0.0, q + v * s * s, -v * s * c, 0.0],
        [0.0, -v * s * c, q + v * c * c, 0.0],
        [0.0, 0.0, 0.0, q],
    ]))
}

/// Parameters of the five-parameter rank-2 family
/// `rho = nu1 |psi1><psi1| + nu2 |psi2><psi2|` with
///
/// ```text
/// |psi1> = cos(theta)|00> + sin(theta)|11>
/// |psi2> = cos(phi)(cos(alpha)|01> + sin(alpha)|10>)
///        + e^{i beta} sin(phi)(sin(theta)|00> - cos(theta)|11>)
/// ```
///
/// `<psi1|psi2> = 0` holds for every parameter choice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rank2Params {
    pub theta: f64,
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub nu1: f64,
}

impl Rank2Params {
    pub fn new(theta: f64, phi: f64, alpha: f64, beta: f64, nu1: f64) -> Result<Self> {
        check("theta", theta, 0.0, FRAC_PI_2)?;
        check("phi", phi, 0.0, FRAC_PI_2)?;
        check("alpha", alpha, 0.0, FRAC_PI_2)?;
        check("beta", beta, 0.0, 2.0 * PI)?;
        check("nu1", nu1, 0.0, 1.0)?;
        Ok(Self {
            theta,
            phi,
            alpha,
            beta,
            nu1,
        })
    }

    pub fn nu2(&self) -> f64 {
        1.0 - self.nu1
    }

    /// The two orthonormal pure components `(psi1, psi2)`.
    pub fn kets(&self) -> ([Complex64; 4], [Complex64; 4]) {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        let (sa, ca) = self.alpha.sin_cos();
        let phase = Complex64::from_polar(1.0, self.beta);
        let psi1 = [Complex64::new(ct, 0.0), ZERO, ZERO, Complex64::new(st, 0.0)];
        let psi2 = [
            phase * (sp * st),
            Complex64::new(cp * ca, 0.0),
            Complex64::new(cp * sa, 0.0),
            -phase * (sp * ct),
        ];
        (psi1, psi2)
    }

    /// Uniform draw over the parameter box.
    pub fn sample(rng: &mut impl Rng) -> Self {
        Self {
            theta: rng.random::<f64>() * FRAC_PI_2,
            phi: rng.random::<f64>() * FRAC_PI_2,
            alpha: rng.random::<f64>() * FRAC_PI_2,
            beta: rng.random::<f64>() * 2.0 * PI,
            nu1: rng.random::<f64>(),
        }
    }
}

/// The rank-2 state `nu1 |psi1><psi1| + nu2 |psi2><psi2|`.
pub fn rank2(p: &Rank2Params) -> Result<DensityMatrix> {
    let (psi1, psi2) = p.kets();
    let m = Matrix4::projector(&psi1) * p.nu1 + Matrix4::projector(&psi2) * p.nu2();
    DensityMatrix::new(m)
}

/// The rank-2 state that the CSYWO criterion misses:
/// `((|00>+|11>)(<00|+<11|)/2 + |01><01|) / 2`. Kept as a named preset
/// because it is the key regression case for the steering functional.
pub fn failing_rank2() -> Rank2Params {
    Rank2Params {
        theta: FRAC_PI_4,
        phi: 0.0,
        alpha: 0.0,
        beta: 0.0,
        nu1: 0.5,
    }
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Single-qubit state from a 2x2 Ginibre factor: `g g^dagger / tr`.
fn random_qubit(rng: &mut impl Rng) -> Matrix2 {
    loop {
        let g = [
            [complex_normal(rng), complex_normal(rng)],
            [complex_normal(rng), complex_normal(rng)],
        ];
        let mut a = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                a[i][j] = g[i][0] * g[j][0].conj() + g[i][1] * g[j][1].conj();
            }
        }
        let tr = a[0][0].re + a[1][1].re;
        if tr > 1e-12 {
            for row in &mut a {
                for z in row.iter_mut() {
                    *z /= tr;
                }
            }
            return a;
        }
    }
}

/// Random state of the given rank: `rho = G G^dagger / tr(G G^dagger)`
/// with `G` a 4 x rank matrix of standard complex normal entries.
/// Deterministic in `seed`.
pub fn random_density(rank: usize, seed: u64) -> Result<DensityMatrix> {
    if !(1..=4).contains(&rank) {
        return Err(Error::OutOfRange {
            name: "rank",
            value: rank as f64,
            lo: 1.0,
            hi: 4.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = [[ZERO; 4]; 4];
        for row in g.iter_mut() {
            for entry in row.iter_mut().take(rank) {
                *entry = complex_normal(&mut rng);
            }
        }
        let m = Matrix4::from_fn(|i, j| (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum());
        let tr = m.trace().re;
        if tr > 1e-9 {
            return DensityMatrix::new(m * (1.0 / tr));
        }
    }
}

/// Random separable state: a convex mixture
/// `sum_k w_k rho_k^A (x) rho_k^B` of `terms` random product states with
/// weights drawn uniformly from the simplex (normalized exponentials).
/// Deterministic in `seed`.
pub fn random_separable(seed: u64, terms: usize) -> Result<DensityMatrix> {
    if terms == 0 {
        return Err(Error::OutOfRange {
            name: "terms",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (0..terms)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut m = Matrix4::zeros();
    for &w in &weights {
        let a = random_qubit(&mut rng);
        let b = random_qubit(&mut rng);
        m = m + kron(&a, &b) * w;
    }
    DensityMatrix::new(m)
}

/// A point in one of the named state families; the uniform handle the
/// sweep and bisection tooling works with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyPoint {
    Werner { v: f64 },
    Pure { theta: f64 },
    Avn { theta: f64, nu1: f64 },
    BellDiag { v: f64 },
    ColorNoise { theta: f64, v: f64 },
    Mems { gamma: f64 },
    GenWerner { v: f64, alpha: f64 },
    Rank2(Rank2Params),
    FailingRank2,
}

impl FamilyPoint {
    /// Builds a point from a family name and `(param, value)` pairs. Every
    /// parameter of the family must be supplied exactly once; names are
    /// case-insensitive.
    pub fn from_name(family: &str, params: &[(String, f64)]) -> Result<Self> {
        let fam = family.to_ascii_lowercase().replace('_', "-");
        let mut pairs: Vec<(String, f64)> = Vec::with_capacity(params.len());
        for (name, value) in params {
            let key = name.to_ascii_lowercase();
            if pairs.iter().any(|(k, _)| *k == key) {
                return Err(Error::Unsupported(format!("duplicate parameter `{name}`")));
            }
            pairs.push((key, *value));
        }
        let mut take = |key: &str| -> Result<f64> {
            match pairs.iter().position(|(k, _)| k == key) {
                Some(i) => Ok(pairs.remove(i).1),
                None => Err(Error::Unsupported(format!(
                    "family `{fam}` requires parameter `{key}`"
                ))),
            }
        };
        let point = match fam.as_str() {
            "werner" => Self::Werner { v: take("v")? },
            "pure" => Self::Pure {
                theta: take("theta")?,
            },
            "avn" => Self::Avn {
                theta: take("theta")?,
                nu1: take("nu1")?,
            },
            "bell-diag" => Self::BellDiag { v: take("v")? },
            "color-noise" => Self::ColorNoise {
                theta: take("theta")?,
                v: take("v")?,
            },
            "mems" => Self::Mems {
                gamma: take("gamma")?,
            },
            "gen-werner" => Self::GenWerner {
                v: take("v")?,
                alpha: take("alpha")?,
            },
            "rank2" => Self::Rank2(Rank2Params::new(
                take("theta")?,
                take("phi")?,
                take("alpha")?,
                take("beta")?,
                take("nu1")?,
            )?),
            "failing-rank2" => Self::FailingRank2,
            other => {
                return Err(Error::Unsupported(format!("unknown family `{other}`")));
            }
        };
        if let Some((name, _)) = pairs.first() {
            return Err(Error::Unsupported(format!(
                "family `{fam}` takes no parameter `{name}`"
            )));
        }
        Ok(point)
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Werner { .. } => "werner",
            Self::Pure { .. } => "pure",
            Self::Avn { .. } => "avn",
            Self::BellDiag { .. } => "bell-diag",
            Self::ColorNoise { .. } => "color-noise",
            Self::Mems { .. } => "mems",
            Self::GenWerner { .. } => "gen-werner",
            Self::Rank2(_) => "rank2",
            Self::FailingRank2 => "failing-rank2",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Self::Werner { .. } | Self::BellDiag { .. } => &["v"],
            Self::Pure { .. } => &["theta"],
            Self::Avn { .. } => &["theta", "nu1"],
            Self::ColorNoise { .. } => &["theta", "v"],
            Self::Mems { .. } => &["gamma"],
            Self::GenWerner { .. } => &["v", "alpha"],
            Self::Rank2(_) => &["theta", "phi", "alpha", "beta", "nu1"],
            Self::FailingRank2 => &[],
        }
    }

    /// Returns a copy with one named parameter replaced. Range validation
    /// happens when the state is constructed.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let key = name.to_ascii_lowercase();
        let mut out = *self;
        let ok = match (&mut out, key.as_str()) {
            (Self::Werner { v }, "v") | (Self::BellDiag { v }, "v") => {
                *v = value;
                true
            }
            (Self::Pure { theta }, "theta") | (Self::Avn { theta, .. }, "theta") => {
                *theta = value;
                true
            }
            (Self::Avn { nu1, .. }, "nu1") => {
                *nu1 = value;
                true
            }
            (Self::ColorNoise { theta, .. }, "theta") => {
                *theta = value;
                true
            }
            (Self::ColorNoise { v, .. }, "v") | (Self::GenWerner { v, .. }, "v") => {
                *v = value;
                true
            }
            (Self::Mems { gamma }, "gamma") => {
                *gamma = value;
                true
            }
            (Self::GenWerner { alpha, .. }, "alpha") => {
                *alpha = value;
                true
            }
            (Self::Rank2(p), _) => match key.as_str() {
                "theta" => {
                    p.theta = value;
                    true
                }
                "phi" => {
                    p.phi = value;
                    true
                }
                "alpha" => {
                    p.alpha = value;
                    true
                }
                "beta" => {
                    p.beta = value;
                    true
                }
                "nu1" => {
                    p.nu1 = value;
                    true
                }
                _ => false,
            },
            _ => false,
        };
        if ok {
            Ok(out)
        } else {
            Err(Error::Unsupported(format!(
                "family `{}` has no parameter `{name}`",
                self.family_name()
            )))
        }
    }

    /// Constructs the density matrix at this point.
    pub fn density(&self) -> Result<DensityMatrix> {
        match *self {
            Self::Werner { v } => werner(v),
            Self::Pure { theta } => pure(theta),
            Self::Avn { theta, nu1 } => avn(theta, nu1),
            Self::BellDiag { v } => bell_diag(v),
            Self::ColorNoise { theta, v } => color_noise(theta, v),
            Self::Mems { gamma } => mems(gamma),
            Self::GenWerner { v, alpha } => gen_werner(v, alpha),
            Self::Rank2(ref p) => {
                // Revalidate: with_param may have written out-of-range values.
                let p = Rank2Params::new(p.theta, p.phi, p.alpha, p.beta, p.nu1)?;
                rank2(&p)
            }
            Self::FailingRank2 => rank2(&failing_rank2()),
        }
    }

    pub fn describe(&self) -> String {
        let mut s = self.family_name().to_string();
        let params: Vec<String> = match *self {
            Self::Werner { v } | Self::BellDiag { v } => vec![format!("v={v}")],
            Self::Pure { theta } => vec![format!("theta={theta}")],
            Self::Avn { theta, nu1 } => vec![format!("theta={theta}"), format!("nu1={nu1}")],
            Self::ColorNoise { theta, v } => {
                vec![format!("theta={theta}"), format!("v={v}")]
            }
            Self::Mems { gamma } => vec![format!("gamma={gamma}")],
            Self::GenWerner { v, alpha } => vec![format!("v={v}"), format!("alpha={alpha}")],
            Self::Rank2(p) => vec![
                format!("theta={}", p.theta),
                format!("phi={}", p.phi),
                format!("alpha={}", p.alpha),
                format!("beta={}", p.beta),
                format!("nu1={}", p.nu1),
            ],
            Self::FailingRank2 => vec![],
        };
        if !params.is_empty() {
            s.push('(');
            s.push_str(&params.join(", "));
            s.push(')');
        }
        s
    }
}
