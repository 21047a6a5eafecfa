//! Sweep, bisection, and batch-verification tooling on top of the
//! criteria: evaluate named family points, sweep one parameter into CSV,
//! bisect criterion sign changes to locate critical parameter values, and
//! run the randomized verification suites.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criteria::{
    self, steering_functional, sym_fns, validate_mu, CriterionKind, CriterionReport, MuPolicy,
};
use crate::qmat::Spectrum;
use crate::rank2;
use crate::states::{self, FamilyPoint, Rank2Params};
use crate::{Error, Result};

const BISECT_MAX_ITERATIONS: usize = 200;

/// Default criteria evaluated when the caller does not name any:
/// every spectral test plus the concurrence, and the geometric bound for
/// the one family it applies to.
pub fn default_criteria(point: &FamilyPoint) -> Vec<CriterionKind> {
    let mut list = vec![
        CriterionKind::Ppt,
        CriterionKind::PptSym,
        CriterionKind::Csywo,
        CriterionKind::Peres,
        CriterionKind::Concurrence,
    ];
    if matches!(point, FamilyPoint::GenWerner { .. }) {
        list.push(CriterionKind::Geometric);
    }
    list
}

fn criterion_from_spectrum(s: &Spectrum, kind: CriterionKind, mu: f64) -> f64 {
    match kind {
        CriterionKind::Ppt => s.min(),
        CriterionKind::PptSym => sym_fns(s).l4,
        CriterionKind::Csywo => criteria::csywo_spectrum(s),
        CriterionKind::Peres => steering_functional(&sym_fns(s), mu),
        CriterionKind::Concurrence | CriterionKind::Geometric => {
            unreachable!("handled before the spectrum path")
        }
    }
}

fn criterion_values(
    point: &FamilyPoint,
    mu: f64,
    criteria_list: &[CriterionKind],
) -> Result<Vec<f64>> {
    let needs_state = criteria_list.iter().any(|k| *k != CriterionKind::Geometric);
    let rho = if needs_state {
        Some(point.density()?)
    } else {
        None
    };
    let spectrum = rho.as_ref().map(|r| r.pt_spectrum());

    criteria_list
        .iter()
        .map(|&kind| match kind {
            CriterionKind::Geometric => match *point {
                FamilyPoint::GenWerner { v, alpha } => Ok(criteria::geometric_gw(v, alpha)?.value),
                _ => Err(Error::Unsupported(format!(
                    "criterion `geometric` applies to family `gen-werner`, not `{}`",
                    point.family_name()
                ))),
            },
            CriterionKind::Concurrence => {
                Ok(criteria::concurrence(rho.as_ref().expect("state built")))
            }
            _ => Ok(criterion_from_spectrum(
                spectrum.as_ref().expect("spectrum built"),
                kind,
                mu,
            )),
        })
        .collect()
}

/// Evaluates the requested criteria at one family point. `mu` feeds the
/// steering functional only; `policy` decides whether `mu = 0` (the
/// figure-reproduction limit) is admitted.
pub fn evaluate(
    point: &FamilyPoint,
    mu: f64,
    criteria_list: &[CriterionKind],
    policy: MuPolicy,
) -> Result<Vec<CriterionReport>> {
    if criteria_list.contains(&CriterionKind::Peres) {
        validate_mu(mu, policy)?;
    }
    let values = criterion_values(point, mu, criteria_list)?;
    Ok(criteria_list
        .iter()
        .zip(values)
        .map(|(&kind, value)| {
            let mu_used = (kind == CriterionKind::Peres).then_some(mu);
            CriterionReport::new(kind, value, mu_used)
        })
        .collect())
}

/// One-parameter sweep specification. The grid is uniform and inclusive
/// of both endpoints.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub template: FamilyPoint,
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub mu: f64,
    pub criteria: Vec<CriterionKind>,
    pub mu_policy: MuPolicy,
}

/// Runs the sweep and renders CSV: a header row, then one row per grid
/// point with the parameter value followed by one column per criterion.
/// Deterministic: identical specs produce byte-identical output.
pub fn sweep(spec: &SweepSpec) -> Result<String> {
    let range_ok = spec.lo.is_finite() && spec.hi.is_finite() && spec.lo < spec.hi;
    if !range_ok {
        return Err(Error::Unsupported(format!(
            "sweep range requires lo < hi, got [{}, {}]",
            spec.lo, spec.hi
        )));
    }
    if spec.steps < 2 {
        return Err(Error::Unsupported(format!(
            "sweep requires at least 2 steps, got {}",
            spec.steps
        )));
    }
    if spec.criteria.is_empty() {
        return Err(Error::Unsupported(
            "sweep requires at least one criterion".into(),
        ));
    }
    if spec.criteria.contains(&CriterionKind::Peres) {
        validate_mu(spec.mu, spec.mu_policy)?;
    }

    let mut out = String::new();
    out.push_str(&spec.param);
    for kind in &spec.criteria {
        out.push(',');
        out.push_str(kind.name());
    }
    out.push('\n');

    for i in 0..spec.steps {
        let x = spec.lo + (spec.hi - spec.lo) * i as f64 / (spec.steps - 1) as f64;
        let point = spec.template.with_param(&spec.param, x)?;
        let values = criterion_values(&point, spec.mu, &spec.criteria)?;
        write!(out, "{x:.15e}").expect("writing to String");
        for v in values {
            write!(out, ",{v:.15e}").expect("writing to String");
        }
        out.push('\n');
    }
    Ok(out)
}

/// Outcome of a bisection run.
#[derive(Clone, Copy, Debug)]
pub struct BisectResult {
    /// Midpoint of the final bracket.
    pub root: f64,
    /// Final bracket; its endpoints still carry opposite criterion signs.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Criterion value at the reported root.
    pub residual: f64,
}

/// Locates a sign change of `criterion` in `param` over `bracket` by
/// bisection, stopping once the bracket width is at most `tol`.
pub fn bisect_critical(
    template: &FamilyPoint,
    param: &str,
    bracket: (f64, f64),
    criterion: CriterionKind,
    mu: f64,
    tol: f64,
    policy: MuPolicy,
) -> Result<BisectResult> {
    if criterion == CriterionKind::Peres {
        validate_mu(mu, policy)?;
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Unsupported(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let eval = |x: f64| -> Result<f64> {
        let point = template.with_param(param, x)?;
        Ok(criterion_values(&point, mu, &[criterion])?[0])
    };

    let (mut lo, mut hi) = bracket;
    let mut f_lo = eval(lo)?;
    let f_hi = eval(hi)?;
    if f_lo == 0.0 {
        return Ok(BisectResult {
            root: lo,
            bracket,
            iterations: 0,
            residual: 0.0,
        });
    }
    if f_hi == 0.0 {
        return Ok(BisectResult {
            root: hi,
            bracket,
            iterations: 0,
            residual: 0.0,
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { f_lo, f_hi });
    }

    for iteration in 1..=BISECT_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = eval(mid)?;
        if f_mid == 0.0 {
            return Ok(BisectResult {
                root: mid,
                bracket: (lo, hi),
                iterations: iteration,
                residual: 0.0,
            });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol {
            let root = 0.5 * (lo + hi);
            return Ok(BisectResult {
                root,
                bracket: (lo, hi),
                iterations: iteration,
                residual: eval(root)?,
            });
        }
    }
    Err(Error::NonConvergence {
        max_iterations: BISECT_MAX_ITERATIONS,
    })
}

/// The randomized verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// `L2 <= 3/8` and `L3^2 >= (8/3) L4 L2` on random normalized real
    /// spectra and on PT spectra of random states.
    Constraints,
    /// Non-negativity of every criterion on random separable states.
    Separable,
    /// Sign agreement of the two PPT forms, at most one negative PT
    /// eigenvalue, and steering-implies-entanglement on random states.
    Hierarchy,
    /// Closed-form rank-2 analytics against the matrix pipeline.
    Rank2,
    /// CSYWO structure of the AVN family on a parameter grid.
    Avn,
    /// The concurrence identity `16(Gamma - Omega^2) + (s2^2 - 4 s1) = 0`.
    Identity,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "constraints" => Ok(Self::Constraints),
            "separable" => Ok(Self::Separable),
            "hierarchy" => Ok(Self::Hierarchy),
            "rank2" => Ok(Self::Rank2),
            "avn" => Ok(Self::Avn),
            "identity" => Ok(Self::Identity),
            "all" => Ok(Self::All),
            other => Err(Error::Unsupported(format!("unknown suite `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Constraints => "constraints",
            Self::Separable => "separable",
            Self::Hierarchy => "hierarchy",
            Self::Rank2 => "rank2",
            Self::Avn => "avn",
            Self::Identity => "identity",
            Self::All => "all",
        }
    }
}

/// One tracked bound: `worst <= bound` over all samples, with the
/// offending sample serialized on failure.
#[derive(Clone, Debug)]
pub struct Assertion {
    pub name: &'static str,
    pub samples: usize,
    /// Largest observed value of the tracked quantity.
    pub worst: f64,
    /// The quantity must stay at or below this.
    pub bound: f64,
    pub passed: bool,
    /// Description of the worst offender (seed, parameters) when failing.
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub assertions: Vec<Assertion>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

/// Tracks the max of a quantity that must stay below a bound.
struct Bound {
    name: &'static str,
    bound: f64,
    worst: f64,
    worst_detail: Option<String>,
    samples: usize,
}

impl Bound {
    fn new(name: &'static str, bound: f64) -> Self {
        Self {
            name,
            bound,
            worst: f64::NEG_INFINITY,
            worst_detail: None,
            samples: 0,
        }
    }

    fn record(&mut self, value: f64, detail: impl Fn() -> String) {
        self.samples += 1;
        if value > self.worst {
            self.worst = value;
            if value > self.bound {
                self.worst_detail = Some(detail());
            }
        }
    }

    fn finish(self) -> Assertion {
        let passed = self.worst <= self.bound;
        Assertion {
            name: self.name,
            samples: self.samples,
            worst: self.worst,
            bound: self.bound,
            passed,
            detail: if passed { None } else { self.worst_detail },
        }
    }
}

fn sample_rank2(seed: u64, index: usize) -> Rank2Params {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    Rank2Params::sample(&mut rng)
}

const STEERING_MUS: [f64; 3] = [0.1, 1.0, 2.0];

fn constraints_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut l2_upper = Bound::new("lambda2_at_most_3_8", 1e-10);
    let mut l3_lower = Bound::new("lambda3_sq_at_least_8_3_l4_l2", 1e-9);

    let mut record = |lam: [f64; 4], detail: &dyn Fn() -> String| {
        let f = sym_fns(&Spectrum::from_values(lam));
        l2_upper.record(f.l2 - 0.375, detail);
        l3_lower.record(8.0 / 3.0 * f.l4 * f.l2 - f.l3 * f.l3, detail);
    };

    // Random real 4-vectors normalized to unit sum. Dividing by a
    // near-zero sum would blow the components up and drown the bounds in
    // cancellation noise, so those draws are rejected.
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let lam = loop {
            let v: [f64; 4] =
                std::array::from_fn(|_| rand::Rng::random::<f64>(&mut rng) * 2.0 - 1.0);
            let sum: f64 = v.iter().sum();
            if sum.abs() >= 0.5 {
                break v.map(|x| x / sum);
            }
        };
        record(lam, &|| {
            format!("normalized spectrum {lam:?} (seed {seed}+{i})")
        });
    }

    // PT spectra of random states of every rank.
    for i in 0..samples {
        let rank = 1 + i % 4;
        let s = states::random_density(rank, seed.wrapping_add(i as u64))
            .expect("rank in 1..=4")
            .pt_spectrum();
        record(s.values(), &|| {
            format!(
                "PT spectrum of random_density({rank}, {})",
                seed.wrapping_add(i as u64)
            )
        });
    }

    SuiteReport {
        suite: "constraints",
        samples,
        seed,
        assertions: vec![l2_upper.finish(), l3_lower.finish()],
    }
}

fn separable_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut ppt = Bound::new("separable_ppt_nonnegative", 1e-9);
    let mut ppt_sym = Bound::new("separable_ppt_sym_nonnegative", 1e-9);
    let mut csywo = Bound::new("separable_csywo_nonnegative", 1e-9);
    let mut peres = Bound::new("separable_peres_nonnegative_mu_01_1_2", 1e-9);

    for i in 0..samples {
        let terms = 1 + i % 4;
        let sample_seed = seed.wrapping_add(i as u64);
        let rho = states::random_separable(sample_seed, terms).expect("terms >= 1");
        let s = rho.pt_spectrum();
        let f = sym_fns(&s);
        let detail = || format!("random_separable({sample_seed}, {terms})");
        ppt.record(-s.min(), detail);
        ppt_sym.record(-f.l4, detail);
        csywo.record(-criteria::csywo_spectrum(&s), detail);
        for mu in STEERING_MUS {
            peres.record(-steering_functional(&f, mu), detail);
        }
    }

    SuiteReport {
        suite: "separable",
        samples,
        seed,
        assertions: vec![
            ppt.finish(),
            ppt_sym.finish(),
            csywo.finish(),
            peres.finish(),
        ],
    }
}

fn hierarchy_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut single_neg = Bound::new("at_most_one_negative_pt_eigenvalue", 0.0);
    // Verdict agreement is only asserted for states decidedly off the
    // separable boundary (|lambda1| > 1e-9); boundary draws are measure
    // zero but roundoff makes their product sign meaningless.
    let mut verdicts = Bound::new("ppt_forms_agree_off_boundary", 0.0);
    let mut implies = Bound::new("steering_implies_entanglement", 0.0);

    for i in 0..samples {
        let rank = 1 + i % 4;
        let sample_seed = seed.wrapping_add(i as u64);
        let rho = states::random_density(rank, sample_seed).expect("rank in 1..=4");
        let s = rho.pt_spectrum();
        let f = sym_fns(&s);
        let detail = || {
            format!(
                "random_density({rank}, {sample_seed}): PT spectrum {:?}",
                s.values()
            )
        };

        let negatives = s.values().iter().filter(|&&x| x < -1e-10).count();
        single_neg.record(negatives as f64 - 1.0, detail);

        if s.min().abs() > 1e-9 {
            let agree = (s.min() < 0.0) == (f.l4 < 0.0);
            verdicts.record(if agree { 0.0 } else { 1.0 }, detail);
        }

        for mu in STEERING_MUS {
            let steer = steering_functional(&f, mu);
            let bad = steer < -1e-9 && f.l4 >= 0.0;
            implies.record(if bad { 1.0 } else { 0.0 }, detail);
        }
    }

    SuiteReport {
        suite: "hierarchy",
        samples,
        seed,
        assertions: vec![single_neg.finish(), verdicts.finish(), implies.finish()],
    }
}

fn rank2_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut goc = Bound::new("goc_identity_residual", 1e-10);
    let mut gamma = Bound::new("gamma_nonpositive", 1e-12);
    let mut charpoly = Bound::new("charpoly_matches_matrix_path", 1e-9);
    let mut steering_match = Bound::new("steering_matches_matrix_path", 1e-9);
    let mut conc_match = Bound::new("concurrence_matches_matrix_path", 1e-9);
    let mut nonpositive = Bound::new("steering_nonpositive_on_family", 1e-10);
    let mut entangled = Bound::new("entangled_implies_steerable", 0.0);

    for i in 0..samples {
        let p = sample_rank2(seed, i);
        let a = rank2::analytics(&p);
        let rho = states::rank2(&p).expect("sampled parameters are in range");
        let f = sym_fns(&rho.pt_spectrum());
        let detail = || format!("{p:?}");

        goc.record(a.goc_residual().abs(), detail);
        gamma.record(a.gamma, detail);
        charpoly.record(
            (a.l2 - f.l2)
                .abs()
                .max((a.l3 - f.l3).abs())
                .max((a.l4 - f.l4).abs()),
            detail,
        );

        let c_closed = a.concurrence();
        conc_match.record((c_closed - criteria::concurrence(&rho)).abs(), detail);

        for mu in STEERING_MUS {
            let s_closed = a.steering(mu);
            steering_match.record((s_closed - steering_functional(&f, mu)).abs(), detail);
            nonpositive.record(s_closed, detail);
            if c_closed > 1e-6 {
                entangled.record(if s_closed < 0.0 { 0.0 } else { 1.0 }, detail);
            }
        }
    }

    SuiteReport {
        suite: "rank2",
        samples,
        seed,
        assertions: vec![
            goc.finish(),
            gamma.finish(),
            charpoly.finish(),
            steering_match.finish(),
            conc_match.finish(),
            nonpositive.finish(),
            entangled.finish(),
        ],
    }
}

fn avn_suite(samples: usize, seed: u64) -> SuiteReport {
    // Grid suite: `samples` is interpreted as the total grid size.
    let n = ((samples as f64).sqrt().floor() as usize).max(2);
    let mut sum12 = Bound::new("avn_lambda1_plus_lambda2_nonpositive", 1e-10);
    let mut csywo_np = Bound::new("avn_csywo_nonpositive", 1e-10);
    let mut zero_sep = Bound::new("avn_csywo_zero_only_when_separable", 0.0);

    for i in 0..n {
        for j in 0..n {
            let theta = i as f64 / (n - 1) as f64 * std::f64::consts::FRAC_PI_2;
            let nu1 = j as f64 / (n - 1) as f64;
            let s = states::avn(theta, nu1)
                .expect("grid parameters are in range")
                .pt_spectrum();
            let detail = || format!("avn(theta={theta}, nu1={nu1})");

            sum12.record(s[0] + s[1], detail);
            let c = criteria::csywo_spectrum(&s);
            csywo_np.record(c, detail);

            // c ~ 0 must only happen where the concurrence vanishes.
            let concurrence = (2.0 * nu1 - 1.0).abs() * (2.0 * theta).sin();
            if c > -1e-10 && concurrence > 1e-8 {
                zero_sep.record(1.0, detail);
            } else {
                zero_sep.record(0.0, detail);
            }
        }
    }

    SuiteReport {
        suite: "avn",
        samples: n * n,
        seed,
        assertions: vec![sum12.finish(), csywo_np.finish(), zero_sep.finish()],
    }
}

fn identity_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut goc = Bound::new("goc_identity_residual", 1e-10);
    let mut s2_sign = Bound::new("s2_nonpositive", 1e-12);
    let mut s1_sign = Bound::new("s1_nonnegative", 1e-12);

    for i in 0..samples {
        let p = sample_rank2(seed, i);
        let a = rank2::analytics(&p);
        let detail = || format!("{p:?}");
        goc.record(a.goc_residual().abs(), detail);
        s2_sign.record(a.s2, detail);
        s1_sign.record(-a.s1, detail);
    }

    SuiteReport {
        suite: "identity",
        samples,
        seed,
        assertions: vec![goc.finish(), s2_sign.finish(), s1_sign.finish()],
    }
}

/// Runs a verification suite with `samples` draws (or grid size) from the
/// given seed. `Suite::All` runs every suite in order. Per-sample seeds
/// derive as `seed + index`, so runs are reproducible and samples are
/// independent of evaluation order.
pub fn verify(suite: Suite, samples: usize, seed: u64) -> Vec<SuiteReport> {
    match suite {
        Suite::Constraints => vec![constraints_suite(samples, seed)],
        Suite::Separable => vec![separable_suite(samples, seed)],
        Suite::Hierarchy => vec![hierarchy_suite(samples, seed)],
        Suite::Rank2 => vec![rank2_suite(samples, seed)],
        Suite::Avn => vec![avn_suite(samples, seed)],
        Suite::Identity => vec![identity_suite(samples, seed)],
        Suite::All => [
            Suite::Constraints,
            Suite::Separable,
            Suite::Hierarchy,
            Suite::Rank2,
            Suite::Avn,
            Suite::Identity,
        ]
        .into_iter()
        .flat_map(|s| verify(s, samples, seed))
        .collect(),
    }
}

/// Human-readable report: one line per assertion with the worst observed
/// value against its bound.
pub fn render_report(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for report in reports {
        writeln!(
            out,
            "suite: {} (samples = {}, seed = {})",
            report.suite, report.samples, report.seed
        )
        .expect("writing to String");
        for a in &report.assertions {
            writeln!(
                out,
                "  {}  {:<42} worst {:>13.6e}  bound {:>9.1e}  (n = {})",
                if a.passed { "PASS" } else { "FAIL" },
                a.name,
                a.worst,
                a.bound,
                a.samples
            )
            .expect("writing to String");
            if let Some(detail) = &a.detail {
                writeln!(out, "        offender: {detail}").expect("writing to String");
            }
        }
    }
    let overall = reports.iter().all(SuiteReport::passed);
    writeln!(out, "result: {}", if overall { "PASS" } else { "FAIL" }).expect("writing to String");
    out
}

pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(SuiteReport::passed)
}
