use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_sum::oracle::partial_sum;
use theta_sum::specfun::{
    bernoulli_even, coeff_c, coeff_c_duplication, factorial, gamma_real, zeta_real,
};
use theta_sum::{
    classical_pj_rhs, classical_pj_terms, direct_sum, remainder_slope, Engine, Error, NTerms,
    SumSpec, TruncationPolicy,
};

use super::table1::{compute as table_row, REFERENCE_ROWS};
use crate::{Failure, Suite};

const SEED: u64 = 0x5eed_2024;
const OPT: TruncationPolicy = TruncationPolicy::OptimalFirstMin;

struct Check {
    suite: &'static str,
    name: String,
    measured: String,
    required: String,
    pass: bool,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
}

impl Report {
    /// `measured <= bound`.
    fn at_most(&mut self, suite: &'static str, name: impl Into<String>, measured: f64, bound: f64) {
        self.checks.push(Check {
            suite,
            name: name.into(),
            measured: format!("{measured:.3e}"),
            required: format!("<= {bound:.1e}"),
            pass: measured <= bound,
        });
    }

    fn custom(
        &mut self,
        suite: &'static str,
        name: impl Into<String>,
        measured: String,
        required: String,
        pass: bool,
    ) {
        self.checks.push(Check {
            suite,
            name: name.into(),
            measured,
            required,
            pass,
        });
    }
}

fn rel(x: f64, reference: f64) -> f64 {
    ((x - reference) / reference).abs()
}

fn specfun(r: &mut Report, rng: &mut ChaCha8Rng) -> Result<(), Failure> {
    const S: &str = "specfun";
    let mut worst: f64 = 0.0;
    for n in 1..=15u32 {
        let z = zeta_real(2.0 * n as f64)?;
        let b = bernoulli_even(n)?.abs();
        worst = worst.max(rel(
            (2.0 * PI).powi(2 * n as i32) * b / (2.0 * factorial(2 * n)),
            z,
        ));
    }
    r.at_most(
        S,
        "zeta(2n) vs Bernoulli numbers, n = 1..15 (rel)",
        worst,
        1e-10,
    );

    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < 40 {
        let s: f64 = rng.gen_range(-9.0..0.49);
        // Relative error is meaningless next to a trivial zero.
        if s < 0.0 && (s / 2.0 - (s / 2.0).round()).abs() < 0.05 {
            continue;
        }
        let rhs = 2f64.powf(s)
            * PI.powf(s - 1.0)
            * (0.5 * PI * s).sin()
            * gamma_real(1.0 - s)?
            * zeta_real(1.0 - s)?;
        worst = worst.max(rel(zeta_real(s)?, rhs));
        taken += 1;
    }
    r.at_most(
        S,
        "zeta functional equation, 40 random s (rel)",
        worst,
        1e-10,
    );

    let mut worst: f64 = 0.0;
    for m in 1..=5 {
        for j in 0..=30 {
            worst = worst.max(rel(coeff_c(m, j)?, coeff_c_duplication(m, j)?));
        }
    }
    r.at_most(
        S,
        "c_j product vs duplication form, m <= 5, j <= 30 (rel)",
        worst,
        1e-12,
    );

    r.at_most(
        S,
        "zeta(2) = pi^2/6 (rel)",
        rel(zeta_real(2.0)?, PI * PI / 6.0),
        1e-14,
    );
    r.at_most(
        S,
        "zeta(4) = pi^4/90 (rel)",
        rel(zeta_real(4.0)?, PI.powi(4) / 90.0),
        1e-14,
    );

    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < 100 {
        let x: f64 = rng.gen_range(-10.0..10.0);
        let near_pole = |y: f64| y <= 0.5 && (y - y.round()).abs() < 1e-3;
        if near_pole(x) || near_pole(x + 1.0) {
            continue;
        }
        worst = worst.max(rel(gamma_real(x + 1.0)?, x * gamma_real(x)?));
        taken += 1;
    }
    r.at_most(
        S,
        "Gamma(x+1) = x Gamma(x), 100 random x (rel)",
        worst,
        1e-12,
    );
    Ok(())
}

fn engine_suite(r: &mut Report, engine: &Engine) -> Result<(), Failure> {
    const S: &str = "engine";
    let mut worst: f64 = 0.0;
    for w in [0.5, 1.0, 1.5, 2.5, 3.0, 5.25] {
        for a in [0.01, 0.05, 0.1] {
            let spec = SumSpec::real(a, w)?;
            let ev = engine.eval_generic(&spec, OPT)?;
            worst = worst.max((ev.value - direct_sum(&spec, 1e-16)?.value).norm());
        }
    }
    r.at_most(
        S,
        "generic expansion vs oracle, 18-point grid (abs)",
        worst,
        1e-11,
    );

    let (mut ratio, mut est_rel): (f64, f64) = (0.0, 0.0);
    for m in 1..=3u32 {
        for a in [0.5, 1.0, 2.0] {
            let spec = SumSpec::real(a, 2.0 * m as f64)?;
            let ev = engine.eval_even(&spec, m, OPT, NTerms::Auto)?;
            let o = direct_sum(&spec, 1e-16)?;
            let floor = o.error_bound() + 64.0 * f64::EPSILON * o.value.norm();
            ratio = ratio.max((ev.value - o.value).norm() / (10.0 * ev.err_estimate + floor));
            if a <= 1.0 {
                est_rel = est_rel.max(ev.err_estimate / ev.value.norm());
            }
        }
    }
    r.at_most(
        S,
        "even transform error / (10 err_estimate + oracle floor)",
        ratio,
        1.0,
    );
    r.at_most(
        S,
        "even transform err_estimate / |value| for a <= 1",
        est_rel,
        1e-3,
    );

    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, PI] {
        let ac = Complex64::new(a, 0.0);
        let rhs = classical_pj_rhs(ac, classical_pj_terms(ac)?)?;
        worst = worst.max((rhs - direct_sum(&SumSpec::real(a, 0.0)?, 1e-16)?.value).norm());
    }
    r.at_most(
        S,
        "classical theta identity, a in {0.5, 1, 2, pi} (abs)",
        worst,
        1e-13,
    );

    let mut worst: f64 = 0.0;
    for theta in [-1.2, -0.6, 0.0, 0.6, 1.2f64] {
        let spec = SumSpec::new(Complex64::from_polar(0.5, theta), 4.0)?;
        let ev = engine.eval_even(&spec, 2, OPT, NTerms::Auto)?;
        worst = worst.max((ev.value - direct_sum(&spec, 1e-16)?.value).norm());
    }
    r.at_most(
        S,
        "even transform for a = 0.5 exp(i theta), |theta| <= 1.2 (abs)",
        worst,
        1e-9,
    );

    let mut misses = 0;
    for a in [0.1, 0.25, 0.5, 1.0, 1.5, 2.0] {
        for m in 1..=3 {
            let up = engine.upsilon(Complex64::new(a, 0.0), m, 1, OPT)?;
            misses += usize::from(!up.term_log.is_local_min("j", up.j0));
        }
    }
    r.at_most(
        S,
        "optimal j0 is a local minimum of the logged terms (misses)",
        misses as f64,
        0.0,
    );

    let mut rows = Vec::new();
    for &(a, _, err, j0) in REFERENCE_ROWS.iter().filter(|p| p.0 >= 0.75) {
        rows.push(table_row(engine, a, err, j0)?);
    }
    let rising = rows.windows(2).all(|p| p[0].abs_error <= p[1].abs_error);
    let errs: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.2e}", r.abs_error))
        .collect();
    r.custom(
        S,
        "error non-decreasing in a over a = 0.75..2",
        errs.join(" "),
        "non-decreasing".into(),
        rising,
    );
    let worst = rows
        .iter()
        .map(|r| (r.abs_error / r.ref_error).max(r.ref_error / r.abs_error))
        .fold(0.0, f64::max);
    r.at_most(
        S,
        "table errors vs reference, reachable rows (factor)",
        worst,
        2.0,
    );

    let mut worst = 0;
    for &(a, _, err, j0) in REFERENCE_ROWS.iter() {
        worst = worst.max(table_row(engine, a, err, j0)?.j0.abs_diff(j0));
    }
    r.at_most(
        S,
        "least-term j0 vs reference j0, all rows (|diff|)",
        worst as f64,
        2.0,
    );
    Ok(())
}

fn oracle_suite(r: &mut Report, rng: &mut ChaCha8Rng) -> Result<(), Failure> {
    const S: &str = "oracle";
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = Complex64::new(rng.gen_range(0.05..5.0), rng.gen_range(-3.0..3.0));
        let w = rng.gen_range(1e-3..=6.0);
        let spec = SumSpec::new(a, w)?;
        let o = direct_sum(&spec, 1e-16)?;
        let change = (partial_sum(&spec, 2 * o.n_terms) - o.value).norm();
        worst = worst.max(change / (o.tail_bound + o.rounding_bound));
    }
    r.at_most(
        S,
        "doubling n_cut moves value by < tail + rounding bound (ratio)",
        worst,
        1.0,
    );

    let spec = SumSpec::real(0.05, 2.5)?;
    let o = direct_sum(&spec, 1e-16)?;
    let mut prev = 0.0;
    let mut violations = 0;
    for n in 1..=o.n_terms {
        let s = partial_sum(&spec, n).re;
        violations += usize::from(s < prev || s > o.value.re + o.tail_bound);
        prev = s;
    }
    r.at_most(
        S,
        "real a: partial sums increase and stay below value + tail",
        violations as f64,
        0.0,
    );

    let v = direct_sum(&SumSpec::real(1e-6, 6.0)?, 1e-16)?.value;
    r.at_most(
        S,
        "a = 1e-6, w = 6 vs zeta(6) (abs)",
        (v.re - zeta_real(6.0)?).abs(),
        1e-5,
    );

    let refused = matches!(
        direct_sum(&SumSpec::real(1e-14, 2.0)?, 1e-16),
        Err(Error::Convergence { .. })
    );
    r.custom(
        S,
        "a = 1e-14 exceeds the term limit",
        format!("{refused}"),
        "ConvergenceError".into(),
        refused,
    );
    Ok(())
}

fn appendix(r: &mut Report) -> Result<(), Failure> {
    const S: &str = "appendix";
    let grid = [0.1, 0.05, 0.025, 0.0125];
    for (w, n) in [(1.3, 2usize), (3.0, 3)] {
        let slope = remainder_slope(w, n, &grid)?;
        let lower = n as f64 - 0.5 - 0.15;
        r.custom(
            S,
            format!("remainder slope w = {w}, N = {n}: at least N - 1/2"),
            format!("{slope:.4}"),
            format!(">= {lower:.2}"),
            slope >= lower,
        );
        r.custom(
            S,
            format!("remainder slope w = {w}, N = {n}: observed order N"),
            format!("{slope:.4}"),
            format!("{n} +/- 0.15"),
            (slope - n as f64).abs() <= 0.15,
        );
    }
    let noise = remainder_slope(1.3, 8, &grid);
    r.custom(
        S,
        "remainder slope w = 1.3, N = 8 refuses noise",
        match &noise {
            Ok(s) => format!("slope {s:.3}"),
            Err(e) => format!("{e}"),
        },
        "PrecisionError".into(),
        matches!(noise, Err(Error::Precision { .. })),
    );
    Ok(())
}

pub fn run(engine: &Engine, suite: Suite) -> Result<(), Failure> {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let all = suite == Suite::All;
    if all || suite == Suite::Specfun {
        specfun(&mut report, &mut rng)?;
    }
    if all || suite == Suite::Engine {
        engine_suite(&mut report, engine)?;
    }
    if all || suite == Suite::Oracle {
        oracle_suite(&mut report, &mut rng)?;
    }
    if all || suite == Suite::Appendix {
        appendix(&mut report)?;
    }

    let mut failed = 0;
    for c in &report.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} [{}] {}: measured {}, required {}",
            c.suite, c.name, c.measured, c.required
        );
        failed += usize::from(!c.pass);
    }
    println!(
        "{} of {} checks passed",
        report.checks.len() - failed,
        report.checks.len()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}
