//! The two spectral steering tests side by side: CSYWO and the steering
//! functional S(mu) = (1 + mu) L4 (1 - (32/9) L2) + L3^2. The Werner
//! family shows the shared threshold at V = 1/2; the failing rank-2
//! preset shows where CSYWO goes blind while S(mu) still fires.

use steerkit::criteria::{self, CriterionKind, MuPolicy, Verdict};
use steerkit::scan;
use steerkit::states::{self, FamilyPoint};

fn main() -> steerkit::Result<()> {
    let mu = 1.0;

    println!("Werner family (steerable for V > 1/2):\n");
    println!("{:>5} {:>14} {:>14}", "V", "csywo", "S(mu=1)");
    for k in 0..=10 {
        let v = k as f64 / 10.0;
        let rho = states::werner(v)?;
        println!(
            "{v:>5.2} {:>14.6e} {:>14.6e}",
            criteria::csywo(&rho),
            criteria::peres_steering(&rho, mu)?
        );
    }
    for criterion in [CriterionKind::Csywo, CriterionKind::Peres] {
        let root = scan::bisect_critical(
            &FamilyPoint::Werner { v: 0.0 },
            "v",
            (0.2, 0.9),
            criterion,
            mu,
            1e-12,
            MuPolicy::Strict,
        )?;
        println!("{} root: V = {:.12}", criterion.name(), root.root);
    }

    println!("\nRank-2 state ((|00>+|11>)(<00|+<11|)/2 + |01><01|)/2:");
    let preset = FamilyPoint::FailingRank2;
    let reports = scan::evaluate(
        &preset,
        mu,
        &[
            CriterionKind::Csywo,
            CriterionKind::Peres,
            CriterionKind::Concurrence,
        ],
        MuPolicy::Strict,
    )?;
    for r in &reports {
        let verdict = match r.verdict {
            Verdict::Detected => "detected",
            Verdict::NotDetected => "not detected",
        };
        println!("  {:<12} {:>14.6e}  {verdict}", r.criterion.name(), r.value);
    }
    println!("  concurrence 1/2 means the state is steerable; only S(mu) sees it.");

    println!("\nAVN family at theta = pi/3 (CSYWO is exact here):\n");
    println!(
        "{:>5} {:>14} {:>14} {:>12}",
        "nu1", "csywo", "S(mu=1)", "concurrence"
    );
    for k in 0..=8 {
        let nu1 = k as f64 / 8.0;
        let rho = states::avn(std::f64::consts::FRAC_PI_3, nu1)?;
        println!(
            "{nu1:>5.3} {:>14.6e} {:>14.6e} {:>12.6}",
            criteria::csywo(&rho),
            criteria::peres_steering(&rho, mu)?,
            criteria::concurrence(&rho)
        );
    }
    Ok(())
}
