use theta_sum::{direct_sum, optimal_index_m2, Engine, NTerms, SumSpec, TruncationPolicy};

use super::open_output;
use crate::parse::sci;
use crate::Failure;

/// Reference rows: `(a, S(a; 4), absolute error, j0)`.
pub const REFERENCE_ROWS: [(f64, f64, f64, usize); 8] = [
    (0.10, 0.952696, 9.662e-86, 96),
    (0.20, 0.849025, 9.768e-43, 46),
    (0.25, 0.803169, 4.045e-34, 36),
    (0.50, 0.615128, 7.769e-17, 17),
    (0.75, 0.475493, 4.656e-11, 10),
    (1.00, 0.369026, 3.642e-8, 6),
    (1.50, 0.223285, 2.856e-5, 3),
    (2.00, 0.135356, 7.500e-4, 1),
];

/// Reference errors below this cannot be resolved in binary64.
const NOISE_LEVEL: f64 = 1e-14;

pub struct Row {
    pub a: f64,
    pub oracle: f64,
    pub expansion: f64,
    pub abs_error: f64,
    pub j0: usize,
    pub j0_formula: f64,
    pub ref_j0: usize,
    pub ref_error: f64,
    pub reachable: bool,
}

pub fn compute(engine: &Engine, a: f64, ref_error: f64, ref_j0: usize) -> Result<Row, Failure> {
    let spec = SumSpec::real(a, 4.0)?;
    let ev = engine.eval_even(
        &spec,
        2,
        TruncationPolicy::OptimalFirstMin,
        NTerms::Fixed(1),
    )?;
    let oracle = direct_sum(&spec, 1e-16)?;
    Ok(Row {
        a,
        oracle: oracle.value.re,
        expansion: ev.value.re,
        abs_error: (ev.value - oracle.value).norm(),
        j0: ev.upsilon[0].j0,
        j0_formula: optimal_index_m2(a),
        ref_j0,
        ref_error,
        reachable: ref_error >= NOISE_LEVEL,
    })
}

fn flag(reachable: bool) -> &'static str {
    if reachable {
        "reachable"
    } else {
        "binary64-noise"
    }
}

pub fn run(engine: &Engine, rows: Option<&[f64]>, csv_path: Option<&str>) -> Result<(), Failure> {
    let selected: Vec<_> = match rows {
        None => REFERENCE_ROWS.to_vec(),
        Some(wanted) => wanted
            .iter()
            .map(|&a| {
                REFERENCE_ROWS
                    .iter()
                    .find(|r| (r.0 - a).abs() < 1e-9)
                    .copied()
                    .ok_or_else(|| Failure::Precondition(format!("a = {a} is not a table row")))
            })
            .collect::<Result<_, _>>()?,
    };
    let rows = selected
        .iter()
        .map(|&(a, _, err, j0)| compute(engine, a, err, j0))
        .collect::<Result<Vec<_>, _>>()?;

    println!(
        "{:>5} {:>9} {:>9} {:>10} {:>4} {:>8} {:>10} flag",
        "a", "S(a;4)", "expansion", "abs_error", "j0", "ref_j0", "ref_err"
    );
    for r in &rows {
        println!(
            "{:>5.2} {:>9.6} {:>9.6} {:>10.3e} {:>4} {:>8} {:>10.3e} {}",
            r.a,
            r.oracle,
            r.expansion,
            r.abs_error,
            r.j0,
            r.ref_j0,
            r.ref_error,
            flag(r.reachable)
        );
    }

    if let Some(path) = csv_path {
        let out = open_output(path)?;
        let mut w = csv::Writer::from_writer(out);
        let io_err = |e: csv::Error| Failure::Output(format!("cannot write '{path}': {e}"));
        w.write_record([
            "a",
            "oracle",
            "expansion",
            "abs_error",
            "j0",
            "j0_formula",
            "ref_j0",
            "ref_error",
            "flag",
        ])
        .map_err(io_err)?;
        for r in &rows {
            w.write_record([
                sci(r.a),
                sci(r.oracle),
                sci(r.expansion),
                sci(r.abs_error),
                r.j0.to_string(),
                sci(r.j0_formula),
                r.ref_j0.to_string(),
                sci(r.ref_error),
                flag(r.reachable).to_string(),
            ])
            .map_err(io_err)?;
        }
        w.flush()
            .map_err(|e| Failure::Output(format!("cannot write '{path}': {e}")))?;
    }
    Ok(())
}
