//! Sweeps of the generalized Werner state where the geometric bound
//! V > 3 / (2 (1 + 2 sin^2 alpha)) goes blind but the spectral steering
//! functional keeps detecting: a V-sweep at alpha = pi/6 (threshold
//! exactly 1) and an alpha-sweep along the geometric boundary itself.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use steerkit::criteria::{CriterionKind, MuPolicy};
use steerkit::scan::{self, SweepSpec};
use steerkit::states::FamilyPoint;

fn main() -> steerkit::Result<()> {
    let mu = 1e-6;

    println!("# sweep 1: S and the geometric margin vs V at alpha = pi/6, mu ~ 0");
    let spec = SweepSpec {
        template: FamilyPoint::GenWerner {
            v: 0.0,
            alpha: FRAC_PI_6,
        },
        param: "v".into(),
        lo: 0.0,
        hi: 1.0,
        steps: 21,
        mu,
        criteria: vec![CriterionKind::Peres, CriterionKind::Geometric],
        mu_policy: MuPolicy::Strict,
    };
    print!("{}", scan::sweep(&spec)?);

    let root = scan::bisect_critical(
        &spec.template,
        "v",
        (0.5, 0.999),
        CriterionKind::Peres,
        mu,
        1e-9,
        MuPolicy::Strict,
    )?;
    println!(
        "# S changes sign at V = {:.6}; the geometric margin never does",
        root.root
    );

    println!();
    println!("# sweep 2: S along the geometric boundary V = 3/(2(1+2 sin^2 alpha))");
    println!("alpha,v,peres");
    let n = 21;
    for k in 0..n {
        // Strictly inside (pi/6, pi/2]: below alpha = pi/6 the boundary
        // value exceeds V = 1.
        let alpha = FRAC_PI_6 + (FRAC_PI_2 - FRAC_PI_6) * (k + 1) as f64 / n as f64;
        let v = 3.0 / (2.0 * (1.0 + 2.0 * alpha.sin().powi(2)));
        let point = FamilyPoint::GenWerner { v, alpha };
        let report = scan::evaluate(&point, mu, &[CriterionKind::Peres], MuPolicy::Strict)?;
        println!("{alpha:.15e},{v:.15e},{:.15e}", report[0].value);
    }
    println!("# S stays negative along the whole boundary: still steerable there");
    Ok(())
}
