//! The `faulsum` command line: argument handling, dispatch and output formatting.

pub mod args;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use faulsum_core::exact::{floor_fract, BigRational};
use faulsum_core::faulhaber::{
    alternating_power_sum, at, harmonic_sum, log_sum, power_coefficients, power_sum, preset_sum, EvalResult, Exponent,
    Preset, SumQuery, Variant,
};
use faulsum_core::mp::Precision;
use faulsum_core::oracle::convergence_report;
use faulsum_core::special::{
    digamma, digamma_asymptotic, hurwitz_zeta, hurwitz_zeta_asymptotic, riemann_zeta, BoundKind, ZetaQuery,
};
use faulsum_core::Error;

use args::{Cli, Command, ExponentOpts, Global, SumOpts};
use input::{parse_complex, parse_exponent, parse_real, parse_shift, parse_variant, to_complex, UsageError};
use output::{render, Evaluation, Output, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn numeric(family: &str, e: Error) -> Failure {
    let remedy = match &e {
        Error::InvalidArgument(_) | Error::InvalidPrecision { .. } => return Failure::Usage(format!("{family}: {e}")),
        Error::NearPole { .. } => "use `harmonic` for m = -1, or give m as an exact rational",
        Error::NonConvergence { .. } => "raise --terms or lower --digits",
        Error::PrecisionExhausted { .. } => "raise --order or lower --digits",
        Error::OrderExhausted { .. } => "lower --a",
        Error::PoleAtOne => "choose s away from 1",
        Error::Overflow => "reduce |m| or x",
    };
    Failure::Numeric(format!("{family}: {e}; {remedy}"))
}

/// Parses `argv` (including the program name), runs the command and writes its output.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let text = render(&o, cli.global.format, cli.global.digits as usize);
            match out.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(_) => EXIT_NUMERIC,
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_NUMERIC
        }
    }
}

fn precision(g: &Global) -> Result<Precision, Failure> {
    Precision::from_digits(g.digits).map_err(|e| Failure::Usage(e.to_string()))
}

fn build_query(m: Exponent, opts: &SumOpts, g: &Global, p: Precision) -> Result<SumQuery, Failure> {
    let x = parse_real("x", &opts.x)?;
    Ok(SumQuery::new(m, x)
        .with_a(opts.a)
        .with_variant(parse_variant(&opts.variant)?)
        .with_shift(parse_shift(&opts.shift)?)
        .with_precision(p)
        .with_budget(g.terms as usize))
}

fn exponent(e: &ExponentOpts, p: Precision) -> Result<Exponent, Failure> {
    Ok(parse_exponent(&e.m, e.inexact, p.working())?)
}

fn sum_inputs(m: Option<&Exponent>, q: &SumQuery, g: &Global) -> Vec<(&'static str, String)> {
    let mut v = Vec::new();
    if let Some(m) = m {
        v.push(("m", m.to_string()));
        v.push(("m_exact", m.is_exact().to_string()));
    }
    v.push(("x", q.x.to_string()));
    v.push(("a", q.a.to_string()));
    v.push(("variant", q.variant.as_str().to_string()));
    v.push(("digits", g.digits.to_string()));
    v.push(("terms", g.terms.to_string()));
    v
}

fn from_result(command: &'static str, inputs: Vec<(&'static str, String)>, r: EvalResult) -> Evaluation {
    Evaluation {
        command,
        inputs,
        value: r.value,
        est_error: Some(r.est_error),
        bound_kind: None,
        terms_used: Some(r.terms_used),
        formula_id: r.formula_id,
        exact: r.exact.map(|e| e.to_string()),
        shifted_to: r.shifted_to.map(|s| s.to_string()),
        coefficients: Vec::new(),
    }
}

fn bound_name(k: BoundKind) -> &'static str {
    match k {
        BoundKind::Rigorous => "rigorous",
        BoundKind::Heuristic => "heuristic",
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    let p = precision(g)?;
    let w = p.working();
    let out = match &cli.command {
        Command::Sum { exp, opts } => {
            let m = exponent(exp, p)?;
            let q = build_query(m.clone(), opts, g, p)?;
            let r = power_sum(&q).map_err(|e| numeric("power_sum", e))?;
            from_result("sum", sum_inputs(Some(&m), &q, g), r)
        }
        Command::Alt { exp, opts } => {
            let m = exponent(exp, p)?;
            let q = build_query(m.clone(), opts, g, p)?;
            let r = alternating_power_sum(&q).map_err(|e| numeric("alternating_power_sum", e))?;
            from_result("alt", sum_inputs(Some(&m), &q, g), r)
        }
        Command::Harmonic { opts } => {
            let q = build_query(Exponent::Exact(BigRational::from_integer((-1).into())), opts, g, p)?;
            let r = harmonic_sum(&q).map_err(|e| numeric("harmonic_sum", e))?;
            from_result("harmonic", sum_inputs(None, &q, g), r)
        }
        Command::Logsum { opts } => {
            let q = build_query(Exponent::Exact(BigRational::from_integer(0.into())), opts, g, p)?;
            let r = log_sum(&q).map_err(|e| numeric("log_sum", e))?;
            from_result("logsum", sum_inputs(None, &q, g), r)
        }
        Command::Zeta { s, z, order, h } => {
            let sv = to_complex(&parse_complex("s", s)?, w);
            let mut inputs = vec![("s", s.clone())];
            let (value, bound, kind, terms, id) = match (z, order) {
                (None, Some(_)) => return Err(UsageError::new("order", "the asymptotic form needs --z").into()),
                (None, None) => {
                    let v = riemann_zeta(&sv, p).map_err(|e| numeric("riemann_zeta", e))?;
                    (v, None, None, None, "riemann_zeta")
                }
                (Some(zt), None) => {
                    inputs.push(("z", zt.clone()));
                    let zv = to_complex(&parse_complex("z", zt)?, w);
                    let v = hurwitz_zeta(&sv, &zv, p).map_err(|e| numeric("hurwitz_zeta", e))?;
                    (v, None, None, None, "hurwitz_zeta")
                }
                (Some(zt), Some(n)) => {
                    inputs.push(("z", zt.clone()));
                    inputs.push(("h", h.clone()));
                    inputs.push(("order", n.to_string()));
                    let zv = to_complex(&parse_complex("z", zt)?, w);
                    let q = ZetaQuery::new(sv, zv).with_h(parse_real("h", h)?).with_n(*n);
                    let b = hurwitz_zeta_asymptotic(&q, p).map_err(|e| numeric("hurwitz_zeta", e))?;
                    (
                        b.value,
                        Some(b.rigorous_bound),
                        Some(bound_name(b.bound_kind)),
                        Some(b.terms),
                        "hurwitz_zeta/asymptotic",
                    )
                }
            };
            inputs.push(("digits", g.digits.to_string()));
            Evaluation {
                command: "zeta",
                inputs,
                value,
                est_error: bound,
                bound_kind: kind,
                terms_used: terms,
                formula_id: id.into(),
                exact: None,
                shifted_to: None,
                coefficients: Vec::new(),
            }
        }
        Command::Digamma { z, order, h } => {
            let zv = to_complex(&parse_complex("z", z)?, w);
            let mut inputs = vec![("z", z.clone())];
            let (value, bound, kind, terms, id) = match order {
                None => {
                    let v = digamma(&zv, p).map_err(|e| numeric("digamma", e))?;
                    (v, None, None, None, "digamma")
                }
                Some(n) => {
                    inputs.push(("h", h.clone()));
                    inputs.push(("order", n.to_string()));
                    let b = digamma_asymptotic(&zv, &parse_real("h", h)?, *n, p).map_err(|e| numeric("digamma", e))?;
                    (
                        b.value,
                        Some(b.rigorous_bound),
                        Some(bound_name(b.bound_kind)),
                        Some(b.terms),
                        "digamma/asymptotic",
                    )
                }
            };
            inputs.push(("digits", g.digits.to_string()));
            Evaluation {
                command: "digamma",
                inputs,
                value,
                est_error: bound,
                bound_kind: kind,
                terms_used: terms,
                formula_id: id.into(),
                exact: None,
                shifted_to: None,
                coefficients: Vec::new(),
            }
        }
        Command::Report { exp, opts, kmax } => {
            let m = exponent(exp, p)?;
            let q = build_query(m.clone(), opts, g, p)?;
            let ks: Vec<usize> = (1..=*kmax as usize).collect();
            let report = convergence_report(&q, &ks).map_err(|e| numeric("convergence_report", e))?;
            let mut inputs = sum_inputs(Some(&m), &q, g);
            inputs.push(("kmax", kmax.to_string()));
            return Ok(Output::Report(Report { inputs, report }));
        }
        Command::Preset { id, x, m, kmax } => {
            let preset: Preset = id.parse().map_err(|_| {
                let ids: Vec<&str> = Preset::ALL.iter().map(|p| p.id()).collect();
                UsageError::new("id", format!("unknown preset `{id}`; expected one of {}", ids.join(", ")))
            })?;
            let xv = parse_real("x", x)?;
            let me = match (preset, m) {
                (Preset::BalancedShift, None) => return Err(UsageError::new("m", "balanced-shift needs --m").into()),
                (Preset::BalancedShift, Some(s)) => parse_exponent(s, false, w)?,
                (_, Some(_)) => return Err(UsageError::new("m", format!("preset {id} has a fixed exponent")).into()),
                (_, None) => Exponent::Exact(BigRational::from_integer(0.into())),
            };
            let q = SumQuery::new(me.clone(), xv.clone()).with_precision(p).with_budget(g.terms as usize);
            let r = preset_sum(preset, &q).map_err(|e| numeric("preset", e))?;
            let (coeff_m, coeff_a) = match preset.parameters() {
                Some(pa) => (Some(pa.0), pa.1),
                None => (me.as_rational().cloned(), faulsum_core::faulhaber::balanced_shift(&me)),
            };
            let coefficients = match coeff_m {
                Some(cm) if *kmax > 0 => {
                    let (_, frac) = floor_fract(&xv);
                    let polys = power_coefficients(&cm, coeff_a, Variant::Plain, *kmax as usize)
                        .map_err(|e| numeric("preset", e))?;
                    at(&polys, &frac).iter().map(|c| c.to_string()).collect()
                }
                _ => Vec::new(),
            };
            let mut inputs = vec![("id", preset.id().to_string()), ("x", xv.to_string())];
            if preset == Preset::BalancedShift {
                inputs.push(("m", me.to_string()));
            }
            inputs.push(("digits", g.digits.to_string()));
            inputs.push(("terms", g.terms.to_string()));
            let mut e = from_result("preset", inputs, r);
            e.coefficients = coefficients;
            e
        }
    };
    Ok(Output::Eval(out))
}
