//! PPT entanglement detection on the Werner and pure-state families:
//! partial-transpose spectra, the two forms of the criterion, and a
//! bisection for the Werner entanglement threshold.

use steerkit::criteria::{self, CriterionKind, MuPolicy};
use steerkit::scan;
use steerkit::states::{self, FamilyPoint};

fn main() -> steerkit::Result<()> {
    println!("Werner state: rho = V |Psi><Psi| + (1 - V) I/4\n");
    println!(
        "{:>5} {:>14} {:>14}  entangled?",
        "V", "min PT eig", "PT product"
    );
    for k in 0..=10 {
        let v = k as f64 / 10.0;
        let rho = states::werner(v)?;
        let ppt = criteria::ppt_value(&rho);
        let ppt_sym = criteria::ppt_sym_value(&rho);
        println!(
            "{v:>5.2} {ppt:>14.6e} {ppt_sym:>14.6e}  {}",
            if ppt < 0.0 { "yes" } else { "no" }
        );
    }

    let result = scan::bisect_critical(
        &FamilyPoint::Werner { v: 0.0 },
        "v",
        (0.2, 0.9),
        CriterionKind::Ppt,
        1.0,
        1e-12,
        MuPolicy::Strict,
    )?;
    println!(
        "\nentanglement threshold by bisection: V = {:.12} ({} iterations)",
        result.root, result.iterations
    );

    println!("\nPure state |Psi(theta)> = cos(theta)|00> + sin(theta)|11>:");
    println!("the smallest PT eigenvalue is -sin(theta)cos(theta), so every");
    println!("theta in (0, pi/2) is entangled.\n");
    println!("{:>8} {:>14} {:>14}", "theta", "min PT eig", "-sin*cos");
    for k in 0..=6 {
        let theta = k as f64 / 6.0 * std::f64::consts::FRAC_PI_2;
        let ppt = criteria::ppt_value(&states::pure(theta)?);
        println!(
            "{theta:>8.4} {ppt:>14.6e} {:>14.6e}",
            -theta.sin() * theta.cos()
        );
    }
    Ok(())
}
