use num_complex::Complex64;
use theta_sum::{direct_sum, Engine, Error, MethodChoice, SumSpec, TruncationPolicy, Warning};

use crate::parse::{human, human_complex};
use crate::Failure;

pub fn run(
    engine: &Engine,
    a: Complex64,
    w: f64,
    method: MethodChoice,
    policy: TruncationPolicy,
    eps: f64,
) -> Result<(), Failure> {
    let spec = SumSpec::new(a, w)?;
    // Reject a bad tolerance before doing any work.
    if !(eps >= theta_sum::oracle::MIN_ORACLE_EPS) {
        return Err(Failure::Precondition(format!(
            "--eps >= 1e-16 (got {eps:e})"
        )));
    }
    let ev = engine.eval(&spec, method, policy)?;

    println!("a            {}", human_complex(a));
    println!("w            {}", human(w));
    println!("method       {}", ev.method);
    println!("value        {}", human_complex(ev.value));
    println!("value_re     {:.16e}", ev.value.re);
    println!("value_im     {:.16e}", ev.value.im);
    println!("err_estimate {:.3e}", ev.err_estimate);
    let terms: Vec<String> = ev
        .terms_used
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    println!("terms_used   {}", terms.join(" "));
    for u in &ev.upsilon {
        println!("j0[n={}]      {} ({} terms)", u.n, u.j0, u.terms);
    }
    match direct_sum(&spec, eps) {
        Ok(o) => println!(
            "abs_error    {:.3e} (reference: {} terms, tail {:.1e}, rounding {:.1e})",
            (ev.value - o.value).norm(),
            o.n_terms,
            o.tail_bound,
            o.rounding_bound
        ),
        Err(e @ Error::Convergence { .. }) => println!("abs_error    unavailable ({e})"),
        Err(e) => return Err(e.into()),
    }
    for warning in &ev.warnings {
        match warning {
            Warning::NearOdd { w, distance } => println!(
                "warning      w = {w} is {distance:.1e} from an odd integer; accuracy not guaranteed"
            ),
        }
    }
    Ok(())
}
