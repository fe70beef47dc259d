use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use theta_sum::{direct_sum, Engine, Error, Evaluation, MethodChoice, SumSpec, TruncationPolicy};

use super::open_output;
use crate::parse::sci;
use crate::Failure;

pub const HEADER: [&str; 12] = [
    "a_re",
    "a_im",
    "w",
    "method",
    "value_re",
    "value_im",
    "err_estimate",
    "abs_err_vs_oracle",
    "terms_k",
    "terms_j",
    "terms_n",
    "j0",
];

pub struct SweepConfig {
    pub a_values: Vec<Complex64>,
    pub w: f64,
    pub methods: Vec<MethodChoice>,
    pub policy: TruncationPolicy,
    pub output_path: String,
}

impl SweepConfig {
    fn validate(&self) -> Result<Vec<SumSpec>, Failure> {
        if self.a_values.is_empty() {
            return Err(Failure::Precondition("at least one a value".into()));
        }
        if self.methods.is_empty() {
            return Err(Failure::Precondition("at least one method".into()));
        }
        self.policy.validate()?;
        Ok(self
            .a_values
            .iter()
            .map(|&a| SumSpec::new(a, self.w))
            .collect::<Result<_, _>>()?)
    }
}

fn row(spec: &SumSpec, ev: &Evaluation, abs_err: Option<f64>) -> Vec<String> {
    let count = |s: &str| ev.terms(s).map(|n| n.to_string()).unwrap_or_default();
    vec![
        sci(spec.a().re),
        sci(spec.a().im),
        sci(spec.w()),
        ev.method.name().to_string(),
        sci(ev.value.re),
        sci(ev.value.im),
        sci(ev.err_estimate),
        abs_err.map(sci).unwrap_or_default(),
        count("k"),
        count("j"),
        count("n"),
        ev.upsilon
            .first()
            .map(|u| u.j0.to_string())
            .unwrap_or_default(),
    ]
}

fn compute(
    engine: &Engine,
    spec: &SumSpec,
    methods: &[MethodChoice],
    policy: TruncationPolicy,
) -> Result<Vec<Vec<String>>, Error> {
    let oracle = match direct_sum(spec, 1e-16) {
        Ok(o) => Some(o.value),
        Err(Error::Convergence { .. }) => None,
        Err(e) => return Err(e),
    };
    methods
        .iter()
        .map(|&m| {
            let ev = engine.eval(spec, m, policy)?;
            Ok(row(spec, &ev, oracle.map(|o| (ev.value - o).norm())))
        })
        .collect()
}

pub fn run(engine: &Engine, config: &SweepConfig) -> Result<(), Failure> {
    let specs = config.validate()?;
    // Open first so an unwritable path fails before any computation.
    let out = open_output(&config.output_path)?;
    let rows = specs
        .par_iter()
        .map(|spec| compute(engine, spec, &config.methods, config.policy))
        .collect::<Result<Vec<_>, _>>()?;

    let path = &config.output_path;
    let io_err = |e: csv::Error| Failure::Output(format!("cannot write '{path}': {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER).map_err(io_err)?;
    for r in rows.iter().flatten() {
        w.write_record(r).map_err(io_err)?;
    }
    let mut inner = w
        .into_inner()
        .map_err(|e| Failure::Output(format!("cannot write '{path}': {e}")))?;
    inner
        .flush()
        .map_err(|e| Failure::Output(format!("cannot write '{path}': {e}")))
}
