//! Closed-form analytics for the rank-2 family.
//!
//! For `rho = nu1 |psi1><psi1| + nu2 |psi2><psi2|` (see
//! [`Rank2Params`]) the characteristic polynomial of the partial
//! transpose is
//!
//! ```text
//! l^4 - l^3 + nu1 nu2 l^2 + (nu1 - nu2) Omega l + (Gamma - Omega^2) = 0
//! ```
//!
//! so `L2 = nu1 nu2`, `L3 = -(nu1 - nu2) Omega`, `L4 = Gamma - Omega^2`,
//! with `Omega`, `Gamma` explicit trigonometric polynomials of the family
//! parameters. The concurrence has the closed form
//! `C = sqrt(-s2 - 2 sqrt(s1))`, tied to the spectral data by the identity
//! `16 (Gamma - Omega^2) + (s2^2 - 4 s1) = 0`, which makes the steering
//! functional manifestly non-positive on the family with equality exactly
//! at `C = 0`. Everything here is validated against the matrix pipeline
//! (`states::rank2` + `qmat` + `criteria`) rather than trusted.

use crate::criteria::{validate_mu, MuPolicy};
use crate::states::Rank2Params;
use crate::Result;

/// All closed-form quantities of one rank-2 point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rank2Analytics {
    pub omega: f64,
    pub gamma: f64,
    pub gamma1: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub s1: f64,
    pub s2: f64,
    /// Characteristic-polynomial coefficients of the partial transpose.
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
}

impl Rank2Analytics {
    /// Closed-form concurrence `sqrt(-s2 - 2 sqrt(s1))`. Both radicands
    /// are clamped at zero: degenerate corners round to tiny negatives.
    pub fn concurrence(&self) -> f64 {
        let s1 = self.s1.max(0.0);
        (-self.s2 - 2.0 * s1.sqrt()).max(0.0).sqrt()
    }

    /// Residual of `16 (Gamma - Omega^2) + (s2^2 - 4 s1) = 0`.
    pub fn goc_residual(&self) -> f64 {
        16.0 * self.l4 + (self.s2 * self.s2 - 4.0 * self.s1)
    }

    /// Closed-form steering functional
    /// `(1 + mu)(Gamma - Omega^2)(1 - (32/9) nu1 nu2) + (nu1 - nu2)^2 Omega^2`,
    /// written with `(nu1 - nu2)^2 = 1 - 4 nu1 nu2`. No range check on `mu`.
    pub fn steering(&self, mu: f64) -> f64 {
        (1.0 + mu) * self.l4 * (1.0 - 32.0 / 9.0 * self.l2)
            + (1.0 - 4.0 * self.l2) * self.omega * self.omega
    }
}

/// Evaluates every closed form at `p`.
pub fn analytics(p: &Rank2Params) -> Rank2Analytics {
    let nu1 = p.nu1;
    let nu2 = p.nu2();
    let (st, ct) = p.theta.sin_cos();
    let (sp, cp) = p.phi.sin_cos();
    let (sa, ca) = p.alpha.sin_cos();
    let s2t = (2.0 * p.theta).sin();
    let c2t = (2.0 * p.theta).cos();
    let s2a = (2.0 * p.alpha).sin();
    let s2p = (2.0 * p.phi).sin();
    let c2b = (2.0 * p.beta).cos();
    let c4t = (4.0 * p.theta).cos();

    let sp2 = sp * sp;
    let sp4 = sp2 * sp2;
    let cp2 = cp * cp;
    let cp4 = cp2 * cp2;

    let omega1 = nu1 * nu1 * ct * ct * st * st;
    let omega2 = nu2
        * nu2
        * (ca * ca * cp4 * sa * sa
            + ct * ct * st * st * sp4
            + 2.0 * ca * c2b * ct * cp2 * sa * st * sp2);
    let omega = omega1 - omega2;

    let gamma1 = nu1 * nu2 * ct * st * (c2b * cp2 * s2a + s2t * sp2);
    let gamma = nu1 * nu2 * c2t * c2t * sp2 * (gamma1 - omega1 - omega2);

    let s2 = -0.5 * nu2 * nu2 * s2a * s2t * s2p * s2p * c2b
        - nu2 * nu2 * s2a * s2a * cp4
        - s2t * s2t * (nu1 * nu1 - nu1 * nu2 * sp2 + nu2 * nu2 * sp4)
        - 0.5 * nu1 * nu2 * (c4t + 3.0) * sp2;
    let s1 = 0.5
        * nu1
        * nu1
        * nu2
        * nu2
        * (s2a * s2t * s2p * s2p * c2b + 2.0 * s2a * s2a * s2t * s2t * cp4 + 2.0 * sp4);

    Rank2Analytics {
        omega,
        gamma,
        gamma1,
        omega1,
        omega2,
        s1,
        s2,
        l2: nu1 * nu2,
        l3: -(nu1 - nu2) * omega,
        l4: gamma - omega * omega,
    }
}

/// Closed-form concurrence of the rank-2 point.
pub fn concurrence_closed(p: &Rank2Params) -> f64 {
    analytics(p).concurrence()
}

/// Residual of the identity `16 (Gamma - Omega^2) + (s2^2 - 4 s1) = 0`;
/// stays below 1e-10 for every parameter choice.
pub fn check_identity_goc(p: &Rank2Params) -> f64 {
    analytics(p).goc_residual()
}

/// Closed-form steering functional at `p`; non-positive for every valid
/// parameter choice, strictly negative whenever the state is entangled.
pub fn steering_value_rank2(p: &Rank2Params, mu: f64) -> Result<f64> {
    validate_mu(mu, MuPolicy::Strict)?;
    Ok(analytics(p).steering(mu))
}
