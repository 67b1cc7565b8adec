//! `malmsten`: evaluate, cross-check and sweep Malmstén's integral.

mod output;
mod phi;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use malmsten_core::closed_form::{TwoPiOver3Forms, TWO_FORM_TOL};
use malmsten_core::report::{sweep_grid, ComparisonRow};
use malmsten_core::verify::{self, Block, VerifyOptions};
use malmsten_core::{
    evaluate, malmsten_closed, quad_eval, series_eval, special_value, ComparisonReport, Error,
    Method, QuadConfig, RouteConfig, SeriesConfig, SpecialAngle,
};
use serde::Serialize;

use output::{pass_label, sci, to_json, use_color};

#[derive(Parser)]
#[command(
    name = "malmsten",
    version,
    about = "Evaluate and cross-check Malmstén's integral I(phi)"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate I(phi) by one method.
    Eval {
        /// Angle: a decimal, pi, pi/N or K*pi/N, optionally negated.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// closed, series, kummer, quad (= quad_exp), quad_exp, quad_unit or quad_tan.
        #[arg(long, default_value = "closed")]
        method: String,
        /// Target tolerance for the series and quadrature routes.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the cross-validation suite.
    Verify {
        #[arg(long, default_value_t = 1e-10)]
        tol_closed_quad: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol_series: f64,
        #[arg(long, default_value_t = 1e-7)]
        tol_kummer: f64,
        /// Comma-separated check blocks to run (special, reflection, closed,
        /// zero, quad, coeff, jn, sawtooth, series, kummer, identity).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Evaluate several methods over an evenly spaced phi grid and write a file.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        step: f64,
        #[arg(long, value_delimiter = ',', default_value = "closed,quad")]
        methods: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Tabulate the special values at pi/3, pi/2 and 2pi/3 across methods.
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

/// Failure classes, one per non-zero exit status.
#[derive(Debug)]
enum Failure {
    /// A numeric check failed (exit 1).
    Check(String),
    /// Bad input or domain violation (exit 2).
    Usage(String),
    /// An iterative method did not converge (exit 3).
    NonConvergence(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::NonConvergence(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::NonConvergence(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } => Failure::NonConvergence(e.to_string()),
            Error::Inconsistent { .. } => Failure::Check(e.to_string()),
            Error::Domain(_) | Error::ZeroRedirect { .. } | Error::Overflow(_) => {
                Failure::Usage(e.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { phi, method, tol } => cmd_eval(&phi, &method, tol, cli.json),
        Command::Verify {
            tol_closed_quad,
            tol_series,
            tol_kummer,
            only,
        } => cmd_verify(tol_closed_quad, tol_series, tol_kummer, &only, cli.json),
        Command::Sweep {
            from,
            to,
            step,
            methods,
            out,
            format,
        } => cmd_sweep(&from, &to, step, &methods, &out, format, cli.json),
        Command::Table => cmd_table(cli.json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("malmsten: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn parse_method(s: &str) -> Result<Method, Failure> {
    s.parse::<Method>()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Usage(format!(
            "--{name} must be a positive number, got {v}"
        )))
    }
}

fn cmd_eval(phi: &str, method: &str, tol: Option<f64>, json: bool) -> Result<(), Failure> {
    let angle = phi::parse_angle(phi).map_err(Failure::Usage)?;
    let method = parse_method(method)?;
    let cfg = match tol {
        Some(t) => RouteConfig::with_tolerance(positive("tol", t)?)?,
        None => RouteConfig::default(),
    };
    let ev = evaluate(angle, method, &cfg)?;
    if json {
        print!("{}", to_json(&ev));
    } else {
        println!("phi        {}", sci(ev.phi.radians()));
        println!("method     {}", ev.method.name());
        println!("value      {}", sci(ev.value));
        println!("est_error  {:.3e}", ev.est_error);
        println!("work       {}", ev.work);
    }
    Ok(())
}

fn cmd_verify(
    tol_closed_quad: f64,
    tol_series: f64,
    tol_kummer: f64,
    only: &[String],
    json: bool,
) -> Result<(), Failure> {
    let only = if only.is_empty() {
        None
    } else {
        Some(
            only.iter()
                .map(|s| {
                    s.parse::<Block>()
                        .map_err(|e| Failure::Usage(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        )
    };
    let opts = VerifyOptions {
        tol_closed_quad: positive("tol-closed-quad", tol_closed_quad)?,
        tol_series: positive("tol-series", tol_series)?,
        tol_kummer: positive("tol-kummer", tol_kummer)?,
        only,
    };
    let report = verify::run(&opts);
    let failed: Vec<_> = report.failures().collect();
    if json {
        print!("{}", to_json(&report));
    } else {
        let color = use_color();
        for block in &report.blocks {
            let prefix = format!("{}.", block.name());
            let checks: Vec<_> = report
                .checks
                .iter()
                .filter(|c| c.name.starts_with(&prefix))
                .collect();
            let worst = checks
                .iter()
                .filter(|c| c.tolerance > 0.0 && !c.name.ends_with("_misses"))
                .map(|c| c.residual / c.tolerance)
                .fold(0.0, f64::max);
            println!(
                "{} {:<11} {:>4} checks, worst residual/tolerance {:.2e}",
                pass_label(checks.iter().all(|c| c.pass), color),
                block.name(),
                checks.len(),
                worst
            );
        }
        for cmp in &report.comparisons {
            let methods: Vec<&str> = cmp
                .rows
                .first()
                .map(|r| r.evaluations.iter().map(|e| e.method.name()).collect())
                .unwrap_or_default();
            println!(
                "{} compare {:<24} max delta {:.2e} (tolerance {:.0e})",
                pass_label(cmp.pass, color),
                methods.join("/"),
                cmp.max_delta,
                cmp.tolerance
            );
        }
        for c in &failed {
            println!(
                "  failed {}: lhs {} rhs {} residual {:.3e} > {:.3e}",
                c.name,
                sci(c.lhs),
                sci(c.rhs),
                c.residual,
                c.tolerance
            );
        }
        println!(
            "{}",
            if report.pass {
                "all checks passed"
            } else {
                "some checks failed"
            }
        );
    }
    if report.pass {
        Ok(())
    } else {
        let mut names: Vec<&str> = failed.iter().map(|c| c.name.as_str()).collect();
        names.extend(
            report
                .comparisons
                .iter()
                .filter(|c| !c.pass)
                .map(|_| "comparison"),
        );
        Err(Failure::Check(format!(
            "{} check(s) failed: {}",
            names.len(),
            names.join(", ")
        )))
    }
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    from: f64,
    to: f64,
    step: f64,
    methods: Vec<&'static str>,
    max_delta: f64,
    records: &'a [ComparisonRow],
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    from: &str,
    to: &str,
    step: f64,
    methods: &[String],
    out: &std::path::Path,
    format: SweepFormat,
    json: bool,
) -> Result<(), Failure> {
    let from = phi::parse_radians(from).map_err(Failure::Usage)?;
    let to = phi::parse_radians(to).map_err(Failure::Usage)?;
    let grid = sweep_grid(from, to, step)?;
    let mut methods = methods
        .iter()
        .map(|m| parse_method(m))
        .collect::<Result<Vec<_>, _>>()?;
    methods.sort_by_key(|m| m.name());
    methods.dedup();
    let report = ComparisonReport::build(&grid, &methods, &RouteConfig::default(), f64::INFINITY)?;
    let contents = match format {
        SweepFormat::Csv => output::sweep_csv(&report.rows),
        SweepFormat::Json => to_json(&SweepDocument {
            from,
            to,
            step,
            methods: methods.iter().map(|m| m.name()).collect(),
            max_delta: report.max_delta,
            records: &report.rows,
        }),
    };
    output::write_atomic(out, &contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
    let summary = SweepSummary {
        out: out.display().to_string(),
        points: grid.len(),
        methods: methods.len(),
        max_delta: report.max_delta,
    };
    if json {
        print!("{}", to_json(&summary));
    } else {
        println!(
            "wrote {} ({} points x {} methods, max delta {:.3e})",
            summary.out, summary.points, summary.methods, summary.max_delta
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepSummary {
    out: String,
    points: usize,
    methods: usize,
    max_delta: f64,
}

/// A value that may have failed to compute.
#[derive(Serialize)]
#[serde(untagged)]
enum Cell {
    Value(f64),
    Failed { error: String },
}

impl Cell {
    fn of(r: malmsten_core::Result<f64>) -> Self {
        match r {
            Ok(v) => Cell::Value(v),
            Err(e) => Cell::Failed {
                error: e.to_string(),
            },
        }
    }

    fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            Cell::Failed { .. } => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Value(v) => format!("{v:>22.16}"),
            Cell::Failed { error } if error.starts_with("no convergence") => {
                format!("{:>22}", "NONCONVERGED")
            }
            Cell::Failed { .. } => format!("{:>22}", "ERROR"),
        }
    }
}

#[derive(Serialize)]
struct Residual {
    against: &'static str,
    residual: Option<f64>,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct TableRow {
    phi: &'static str,
    formula: &'static str,
    printed: Cell,
    closed: Cell,
    series: Cell,
    quad: Cell,
    residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_forms: Option<TwoPiOver3Forms>,
}

fn residual(against: &'static str, a: &Cell, b: &Cell, tolerance: f64) -> Residual {
    let residual = a.value().zip(b.value()).map(|(x, y)| (x - y).abs());
    Residual {
        against,
        residual,
        tolerance,
        pass: residual.is_some_and(|r| r <= tolerance),
    }
}

fn table_row(which: SpecialAngle) -> TableRow {
    let angle = which.angle();
    let printed = Cell::of(special_value(which).map(|e| e.value));
    let closed = Cell::of(malmsten_closed(angle).map(|e| e.value));
    let series = Cell::of(series_eval(angle, &SeriesConfig::default()).map(|e| e.value));
    let quad = Cell::of(
        quad_eval(angle, &QuadConfig::default())
            .and_then(|q| q.into_evaluation(angle, Method::QuadExp))
            .map(|e| e.value),
    );
    let mut residuals = vec![
        residual("printed-closed", &printed, &closed, 1e-12),
        residual("quad-printed", &quad, &printed, 1e-10),
        residual("series-closed", &series, &closed, 1e-8),
    ];
    let two_forms = match which {
        SpecialAngle::TwoPiOver3 => {
            let forms = TwoPiOver3Forms::compute().ok();
            let r = forms.map(|f| f.residual());
            residuals.push(Residual {
                against: "bracket-ratio",
                residual: r,
                tolerance: TWO_FORM_TOL,
                pass: r.is_some_and(|r| r <= TWO_FORM_TOL),
            });
            forms
        }
        _ => None,
    };
    TableRow {
        phi: which.label(),
        formula: which.formula(),
        printed,
        closed,
        series,
        quad,
        residuals,
        two_forms,
    }
}

fn cmd_table(json: bool) -> Result<(), Failure> {
    let rows: Vec<TableRow> = SpecialAngle::ALL.into_iter().map(table_row).collect();
    let pass = rows.iter().all(|r| r.residuals.iter().all(|x| x.pass));
    if json {
        print!("{}", to_json(&rows));
    } else {
        let color = use_color();
        println!(
            "{:<7} {:>22} {:>22} {:>22} {:>22}",
            "phi", "printed", "closed", "series", "quad"
        );
        for r in &rows {
            println!(
                "{:<7} {} {} {} {}",
                r.phi,
                r.printed.render(),
                r.closed.render(),
                r.series.render(),
                r.quad.render()
            );
        }
        println!();
        for r in &rows {
            println!("{:<7} {}", r.phi, r.formula);
            if let Some(f) = &r.two_forms {
                println!("        bracket form {:.16}", f.bracket_form);
                println!("        ratio form   {:.16}", f.ratio_form);
            }
            for x in &r.residuals {
                let shown = x
                    .residual
                    .map_or_else(|| "n/a".to_string(), |v| format!("{v:.3e}"));
                println!(
                    "        {} {:<15} {:>10} (tolerance {:.0e})",
                    pass_label(x.pass, color),
                    x.against,
                    shown,
                    x.tolerance
                );
            }
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Check(
            "table residuals exceed tolerance or a method failed".into(),
        ))
    }
}
