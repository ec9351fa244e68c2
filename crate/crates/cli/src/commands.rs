use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::Parser;
use serde::Serialize;
use xedp_core::diracmap::QVariant;
use xedp_core::edpnorm::{modified_norm, norm_wronskian_limit, ortho_matrix, NormResult};
use xedp_core::models::{tabulate_with, DiracOptions, ModelKind, Quantity, SpectralModel};
use xedp_core::quad::QuadratureSettings;
use xedp_core::Error;

use crate::args::{Cli, Command, Common, Format, VerifyArgs};
use crate::checks::{dirac_variant_outcome, run_check, Outcome, Tolerances, CHECK_IDS};
use crate::output::{csv_table, fmt_g12};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_NONCONVERGENT: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Message plus the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::QuadratureNonConvergent(_) | Error::NonConvergent(_) | Error::NumericalInstability(_) => {
            EXIT_NONCONVERGENT
        }
        _ => EXIT_INVALID,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let max_subdiv = std::env::var("XEDP_MAX_SUBDIV").ok();
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_with(args, max_subdiv.as_deref(), &mut out, &mut err)
}

/// [`run`] with explicit output streams and `XEDP_MAX_SUBDIV` value.
pub fn run_with<I, T>(args: I, max_subdiv: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_INVALID
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
        }
    };
    let mut ctx = Ctx { out, max_subdiv };
    let result = match cli.command {
        Command::Tabulate(c) => cmd_tabulate(&mut ctx, &c),
        Command::Norm(c) => cmd_norm(&mut ctx, &c),
        Command::Ortho(c) => cmd_ortho(&mut ctx, &c),
        Command::Verify(v) => cmd_verify(&mut ctx, &v),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    max_subdiv: Option<&'a str>,
}

impl Ctx<'_> {
    fn write(&mut self, text: &str) -> Result<(), Failure> {
        match self.out.write_all(text.as_bytes()).and_then(|_| self.out.flush()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(Failure::invalid(format!("cannot write output: {e}")))
            }
            _ => Ok(()),
        }
    }

    fn emit(&mut self, path: &Option<std::path::PathBuf>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", p.display()))),
            None => self.write(text),
        }
    }
}

/// Default settings with a subdivision budget (the `XEDP_MAX_SUBDIV` value) and `--tol` applied.
pub fn quadrature_settings(max_subdiv: Option<&str>, tol: Option<f64>) -> Result<QuadratureSettings, Failure> {
    let mut s = QuadratureSettings::default();
    if let Some(v) = max_subdiv {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => s = s.with_max_subdivisions(n),
            _ => return Err(Failure::invalid(format!("XEDP_MAX_SUBDIV must be a positive integer, got '{v}'"))),
        }
    }
    if let Some(t) = tol {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Failure::invalid(format!("--tol must be positive, got {t}")));
        }
        s = s.with_rel_tol(t);
    }
    Ok(s)
}

fn resolve_model(c: &Common) -> Result<SpectralModel, Failure> {
    let m = SpectralModel::from_id(&c.model)?;
    if !matches!(m.kind, ModelKind::Dirac(_)) && (c.mass.is_some() || c.variant.is_some()) {
        return Err(Failure::invalid(format!("--mass and --variant apply to the dirac model only, not {}", m.name())));
    }
    Ok(m)
}

fn indices(m: &SpectralModel, c: &Common) -> Result<Vec<i64>, Failure> {
    let ns = if c.n.is_empty() { vec![m.first_index()] } else { c.n.clone() };
    for &n in &ns {
        m.check_index(n)?;
    }
    Ok(ns)
}

fn parse_range(s: &str) -> Result<(f64, f64, f64), Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Failure::invalid(format!("--range expects lo:hi:step, got '{s}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    if !v.iter().all(|x| x.is_finite()) || v[0] > v[1] {
        return Err(bad());
    }
    Ok((v[0], v[1], v[2]))
}

fn cmd_tabulate(ctx: &mut Ctx, c: &Common) -> Result<i32, Failure> {
    let m = resolve_model(c)?;
    let quantity = Quantity::parse(c.quantity.as_deref().ok_or_else(|| Failure::invalid("tabulate needs --quantity"))?)?;
    let ns = indices(&m, c)?;
    let dirac = DiracOptions {
        mass: c.mass.unwrap_or(1.0),
        variant: c.variant.as_deref().map(QVariant::parse).transpose()?.unwrap_or(QVariant::LogDerivative),
    };
    let range = match &c.range {
        Some(r) => parse_range(r)?,
        None => {
            let nmax = *ns.iter().max().expect("non-empty index list");
            let (lo, hi) = m.plot_range(nmax);
            (lo, hi, (hi - lo) / 400.0)
        }
    };
    let series = ns
        .iter()
        .map(|&n| tabulate_with(&m, quantity, n, range, &dirac))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match c.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let headers: Vec<String> = if ns.len() == 1 {
                vec!["value".into()]
            } else {
                ns.iter().map(|n| format!("v_n{n}")).collect()
            };
            let cols: Vec<Vec<f64>> = series.iter().map(|s| s.values.clone()).collect();
            csv_table(&headers, &series[0].abscissae, &cols)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                model: &'a str,
                n: i64,
                quantity: &'a str,
                y: &'a [f64],
                value: &'a [f64],
            }
            let rows: Vec<Row> = series
                .iter()
                .map(|s| Row {
                    model: m.name(),
                    n: s.n,
                    quantity: s.quantity.tag(),
                    y: &s.abscissae,
                    value: &s.values,
                })
                .collect();
            json_results(&rows)
        }
    };
    ctx.emit(&c.out, &text)?;
    Ok(EXIT_OK)
}

fn json_results<T: Serialize>(rows: &[T]) -> String {
    #[derive(Serialize)]
    struct Doc<'a, T> {
        results: &'a [T],
    }
    let mut s = serde_json::to_string_pretty(&Doc { results: rows }).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct NormRecord {
    model: String,
    n: i64,
    energy: f64,
    norm: Option<f64>,
    error_estimate: Option<f64>,
    method: String,
    evaluations: Option<usize>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

impl NormRecord {
    fn ok(m: &SpectralModel, r: &NormResult) -> Self {
        NormRecord {
            model: m.name().into(),
            n: r.n,
            energy: r.energy,
            norm: Some(r.value),
            error_estimate: Some(r.error_estimate),
            method: r.method.to_string(),
            evaluations: Some(r.evaluations),
            status: "ok",
            message: None,
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_g12).unwrap_or_default()
}

fn cmd_norm(ctx: &mut Ctx, c: &Common) -> Result<i32, Failure> {
    let m = resolve_model(c)?;
    if c.quantity.is_some() || c.range.is_some() {
        return Err(Failure::invalid("norm takes no --quantity or --range"));
    }
    let ns = indices(&m, c)?;
    let s = quadrature_settings(ctx.max_subdiv, c.tol)?;
    let wronskian = match c.method.as_deref() {
        None | Some("quadrature") => false,
        Some("wronskian_limit") | Some("wronskian") => true,
        Some(other) => return Err(Failure::invalid(format!("unknown method '{other}', expected quadrature or wronskian_limit"))),
    };
    let mut records = vec![];
    let mut divergent = false;
    for &n in &ns {
        let r = if wronskian {
            norm_wronskian_limit(&m, n, None, 12.0)
        } else {
            modified_norm(&m, n, &s)
        };
        match r {
            Ok(r) => records.push(NormRecord::ok(&m, &r)),
            Err(Error::QuadratureNonConvergent(msg)) => {
                divergent = true;
                records.push(NormRecord {
                    model: m.name().into(),
                    n,
                    energy: m.energy(n)?,
                    norm: None,
                    error_estimate: None,
                    method: "quadrature".into(),
                    evaluations: None,
                    status: "divergent",
                    message: Some(msg),
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => json_results(&records),
        Format::Csv => {
            let mut t = String::from("model,n,energy,norm,error_estimate,method,evaluations,status\n");
            for r in &records {
                let evals = r.evaluations.map(|e| e.to_string()).unwrap_or_default();
                let _ = writeln!(
                    t,
                    "{},{},{},{},{},{},{},{}",
                    r.model,
                    r.n,
                    fmt_g12(r.energy),
                    opt(r.norm),
                    opt(r.error_estimate),
                    r.method,
                    evals,
                    r.status
                );
            }
            t
        }
    };
    ctx.emit(&c.out, &text)?;
    Ok(if divergent { EXIT_NONCONVERGENT } else { EXIT_OK })
}

fn cmd_ortho(ctx: &mut Ctx, c: &Common) -> Result<i32, Failure> {
    let m = resolve_model(c)?;
    let ns = indices(&m, c)?;
    let s = quadrature_settings(ctx.max_subdiv, c.tol)?;
    let mat = ortho_matrix(&m, &ns, &s)?;
    let k = ns.len();
    let mut max_ratio: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            if i != j {
                max_ratio = max_ratio.max(mat[i][j].abs() / (mat[i][i] * mat[j][j]).sqrt());
            }
        }
    }
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                model: &'a str,
                n: &'a [i64],
                matrix: &'a [Vec<f64>],
                max_offdiag_ratio: f64,
            }
            json_results(&[Row {
                model: m.name(),
                n: &ns,
                matrix: &mat,
                max_offdiag_ratio: max_ratio,
            }])
        }
        Format::Csv => {
            let mut t = String::from("n");
            for n in &ns {
                let _ = write!(t, ",v_n{n}");
            }
            t.push('\n');
            for (i, n) in ns.iter().enumerate() {
                t.push_str(&n.to_string());
                for v in &mat[i] {
                    t.push(',');
                    t.push_str(&fmt_g12(*v));
                }
                t.push('\n');
            }
            t
        }
    };
    ctx.emit(&c.out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &mut Ctx, v: &VerifyArgs) -> Result<i32, Failure> {
    let tol = match v.tol {
        Some(t) if t > 0.0 && t.is_finite() => Tolerances::uniform(t),
        Some(t) => return Err(Failure::invalid(format!("--tol must be positive, got {t}"))),
        None => Tolerances::default(),
    };
    let s = quadrature_settings(ctx.max_subdiv, None)?;
    let selected: Vec<&str> = if v.only.is_empty() {
        CHECK_IDS.to_vec()
    } else {
        for id in &v.only {
            if !CHECK_IDS.contains(&id.as_str()) {
                return Err(Failure::invalid(format!("unknown check '{id}', expected one of {}", CHECK_IDS.join(", "))));
            }
        }
        CHECK_IDS.iter().copied().filter(|id| v.only.iter().any(|o| o == id)).collect()
    };
    let outcomes: Vec<Outcome> = selected
        .iter()
        .map(|id| run_check(id, &tol, &s).expect("known check id"))
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let all = passed == outcomes.len();

    let mut table = String::new();
    let _ = writeln!(table, "{:<24} {:<6} detail", "check", "result");
    for o in &outcomes {
        let _ = writeln!(table, "{:<24} {:<6} {}", o.check, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    let _ = writeln!(table, "{passed}/{} checks passed", outcomes.len());
    ctx.write(&table)?;

    #[derive(Serialize)]
    struct Summary<'a> {
        results: &'a [Outcome],
        passed: usize,
        failed: usize,
        all_passed: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        dirac_variants: Option<Vec<VariantRow>>,
    }
    #[derive(Serialize)]
    struct VariantRow {
        variant: &'static str,
        row1_max: f64,
    }
    let variants = if selected.contains(&"dirac") {
        dirac_variant_outcome().ok().map(|v| {
            v.into_iter()
                .map(|(q, r)| VariantRow {
                    variant: q.tag(),
                    row1_max: r,
                })
                .collect()
        })
    } else {
        None
    };
    let mut json = serde_json::to_string_pretty(&Summary {
        results: &outcomes,
        passed,
        failed: outcomes.len() - passed,
        all_passed: all,
        dirac_variants: variants,
    })
    .expect("serializable summary");
    json.push('\n');
    match &v.out {
        Some(_) => ctx.emit(&v.out, &json)?,
        None => ctx.write(&format!("\n{json}"))?,
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY })
}
