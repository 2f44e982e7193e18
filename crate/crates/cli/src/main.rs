//! `sincusp`: evaluate the absolute-value trigonometric series, emit plot
//! data, query one-sided slopes and strict-minimum thresholds, scan for
//! cusps, explore maxima, and run verification sweeps.

mod output;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{fmt_sig, render_csv, render_json, render_plotdata, Cell, Format, Table};
use sincusp::{
    default_classification_tol, detect_cusps_in, eval_grid_with_budget, eval_point,
    find_local_maxima, one_sided_slopes, threshold, GridSpec, Rational, SeriesKind,
    DEFAULT_TERM_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sin,
    Cos,
}

impl From<Kind> for SeriesKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Sin => SeriesKind::AbsSin,
            Kind::Cos => SeriesKind::AbsCos,
        }
    }
}

impl Kind {
    fn flag(&self) -> &'static str {
        match self {
            Kind::Sin => "sin",
            Kind::Cos => "cos",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sincusp",
    version,
    about = "Cusp calculus for sum |sin(k pi x)|/k and sum |cos(k pi x)|/k"
)]
struct Cli {
    /// Output format; plotdata is available for `eval` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for grid evaluation (default: all cores). Affects
    /// wall time only, never output bytes.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Override the term-evaluation budget guard (default 1e10).
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Left end of the evaluation window.
    #[arg(long)]
    from: Option<f64>,
    /// Right end of the evaluation window.
    #[arg(long)]
    to: Option<f64>,
    /// Number of grid points (endpoints inclusive).
    #[arg(long)]
    points: Option<usize>,
}

impl GridArgs {
    fn build(&self) -> anyhow::Result<Option<GridSpec>> {
        match (self.from, self.to, self.points) {
            (None, None, None) => Ok(None),
            (Some(from), Some(to), Some(points)) => Ok(Some(GridSpec::new(from, to, points)?)),
            _ => bail!("grid evaluation needs all of --from, --to, --points"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the series at a point or on a grid.
    Eval {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Number of series terms.
        #[arg(long)]
        n: u64,
        /// Single evaluation point (alternative to a grid).
        #[arg(long, conflicts_with_all = ["from", "to", "points"])]
        x: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// One-sided slopes and classification at p/q.
    Slopes {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// Classification tolerance (default 1e-9 * q).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Strict-minimum onset for one fraction, or a sweep over all of them.
    Threshold {
        #[arg(long, value_enum, default_value_t = Kind::Sin)]
        kind: Kind,
        #[arg(long, required_unless_present = "sweep", conflicts_with = "sweep")]
        p: Option<i64>,
        #[arg(
            long,
            required_unless_present = "sweep",
            conflicts_with = "sweep",
            allow_hyphen_values = true
        )]
        q: Option<i64>,
        /// Sweep every reduced fraction with denominator up to this bound.
        #[arg(long)]
        sweep: Option<i64>,
    },
    /// Detect cusps on a grid and match them to small-denominator rationals.
    Scan {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        grid: GridArgs,
        /// Prominence threshold; pi is the smallest genuine jump.
        #[arg(long, default_value_t = 3.0)]
        tau: f64,
        /// Largest denominator considered when matching.
        #[arg(long, default_value_t = 25)]
        qmax: i64,
    },
    /// Locate grid-local maxima with continued-fraction diagnostics.
    Maxima {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        grid: GridArgs,
        /// Golden-section refinement iterations inside the bracketing cell.
        #[arg(long, default_value_t = 40)]
        refine: u32,
        /// Largest denominator for the approximability diagnostics.
        #[arg(long, default_value_t = 25)]
        qmax: i64,
    },
    /// Run a verification sweep; exits nonzero if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 100)]
        qmax: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Shared output/evaluation settings from the global flags.
struct Ctx {
    format: Format,
    out: Option<PathBuf>,
    budget: u64,
}

fn write_out(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

/// Reduce p/q, telling the user on stderr when that changed anything.
fn reduced_with_notice(p: i64, q: i64) -> anyhow::Result<Rational> {
    let r = Rational::new(p, q)?;
    if (r.num(), r.den()) != (p, q) {
        eprintln!("note: reduced {p}/{q} to {r}");
    }
    Ok(r)
}

fn render(
    format: Format,
    command: &str,
    flags: &[(&str, String)],
    table: &Table,
) -> anyhow::Result<String> {
    match format {
        Format::Csv => Ok(render_csv(table)),
        Format::Json => Ok(render_json(command, flags, table)),
        Format::Plotdata => bail!("plotdata format is only available for `eval`"),
    }
}

fn cmd_eval(ctx: &Ctx, kind: Kind, n: u64, x: Option<f64>, grid: &GridArgs) -> anyhow::Result<()> {
    let series: SeriesKind = kind.into();
    let pairs: Vec<(f64, f64)> = match (x, grid.build()?) {
        (Some(x), None) => vec![(x, eval_point(series, n, x))],
        (None, Some(g)) => {
            let values = eval_grid_with_budget(series, n, &g, ctx.budget)?;
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (g.x(i), v))
                .collect()
        }
        (None, None) => bail!("eval needs either --x or a grid (--from --to --points)"),
        (Some(_), Some(_)) => unreachable!("clap conflicts prevent this"),
    };

    let flags = [("kind", kind.flag().to_string()), ("n", n.to_string())];
    match ctx.format {
        Format::Plotdata => {
            let comments = vec![
                format!("sincusp eval --kind {} --n {n}", kind.flag()),
                "columns: x value".to_string(),
            ];
            write_out(&ctx.out, &render_plotdata(&comments, &pairs))
        }
        _ => {
            let mut table = Table::new(vec!["x", "value"]);
            for (x, v) in pairs {
                table.push(vec![Cell::Float(x), Cell::Float(v)]);
            }
            write_out(&ctx.out, &render(ctx.format, "eval", &flags, &table)?)
        }
    }
}

fn cmd_slopes(
    ctx: &Ctx,
    kind: Kind,
    n: u64,
    p: i64,
    q: i64,
    tol: Option<f64>,
) -> anyhow::Result<()> {
    let r = reduced_with_notice(p, q)?;
    let tol = tol.unwrap_or_else(|| default_classification_tol(r));
    let rep = one_sided_slopes(n, r, kind.into(), tol);
    let mut table = Table::new(vec![
        "kind",
        "n",
        "p",
        "q",
        "smooth_coeff",
        "cusp_count",
        "left_slope",
        "right_slope",
        "classification",
    ]);
    table.push(vec![
        Cell::Str(kind.flag().into()),
        Cell::UInt(n),
        Cell::Int(r.num()),
        Cell::Int(r.den()),
        Cell::Float(rep.smooth_coeff),
        Cell::UInt(rep.cusp_count),
        Cell::Float(rep.left_slope),
        Cell::Float(rep.right_slope),
        Cell::Str(rep.classification.name().into()),
    ]);
    let flags = [
        ("kind", kind.flag().to_string()),
        ("n", n.to_string()),
        ("p", r.num().to_string()),
        ("q", r.den().to_string()),
        ("tol", fmt_sig(tol, 15)),
    ];
    write_out(&ctx.out, &render(ctx.format, "slopes", &flags, &table)?)
}

fn threshold_columns() -> Vec<&'static str> {
    vec![
        "p",
        "q",
        "first_n",
        "stable_n",
        "q_squared",
        "sharp_estimate",
        "ratio",
    ]
}

fn threshold_row(r: Rational, t: &sincusp::ThresholdReport) -> Vec<Cell> {
    vec![
        Cell::Int(r.num()),
        Cell::Int(r.den()),
        Cell::UInt(t.first_n),
        Cell::UInt(t.stable_n),
        Cell::Int(t.q_squared),
        Cell::Float(t.sharp_estimate),
        Cell::Float(t.ratio()),
    ]
}

fn cmd_threshold(
    ctx: &Ctx,
    kind: Kind,
    p: Option<i64>,
    q: Option<i64>,
    sweep: Option<i64>,
) -> anyhow::Result<()> {
    let series: SeriesKind = kind.into();
    match sweep {
        None => {
            let (p, q) = (p.expect("clap"), q.expect("clap"));
            let r = reduced_with_notice(p, q)?;
            let t = threshold(r, series)?;
            let mut table = Table::new(threshold_columns());
            table.push(threshold_row(r, &t));
            let flags = [
                ("kind", kind.flag().to_string()),
                ("p", r.num().to_string()),
                ("q", r.den().to_string()),
            ];
            write_out(&ctx.out, &render(ctx.format, "threshold", &flags, &table)?)
        }
        Some(q_max) => {
            if q_max < 2 {
                bail!("--sweep needs a denominator bound of at least 2");
            }
            let mut columns = threshold_columns();
            columns.push("q_max_ratio");
            let mut table = Table::new(columns);
            for q in 2..=q_max {
                if series == SeriesKind::AbsCos && q % 2 == 1 {
                    continue;
                }
                let mut rows = Vec::new();
                let mut q_best = 0.0f64;
                for p in 1..q {
                    let r = Rational::new(p, q)?;
                    if r.den() != q {
                        continue;
                    }
                    let t = threshold(r, series)?;
                    q_best = q_best.max(t.ratio());
                    rows.push((r, t));
                }
                for (r, t) in rows {
                    let mut row = threshold_row(r, &t);
                    row.push(Cell::Float(q_best));
                    table.push(row);
                }
            }
            let flags = [
                ("kind", kind.flag().to_string()),
                ("sweep", q_max.to_string()),
            ];
            write_out(&ctx.out, &render(ctx.format, "threshold", &flags, &table)?)
        }
    }
}

fn cmd_scan(
    ctx: &Ctx,
    kind: Kind,
    n: u64,
    grid: &GridArgs,
    tau: f64,
    qmax: i64,
) -> anyhow::Result<()> {
    let Some(g) = grid.build()? else {
        bail!("scan needs a grid (--from --to --points)");
    };
    let series: SeriesKind = kind.into();
    let values = eval_grid_with_budget(series, n, &g, ctx.budget)?;
    let scan = detect_cusps_in(&values, &g, series, n, tau, qmax)?;
    if scan.too_coarse {
        eprintln!(
            "warning: grid spacing {} exceeds 1/(2 qmax^2); rational matching may be ambiguous",
            fmt_sig(scan.spacing, 6)
        );
    }
    let mut table = Table::new(vec![
        "grid_x",
        "prominence",
        "matched_p",
        "matched_q",
        "match_residual",
        "predicted_prominence",
    ]);
    for c in &scan.candidates {
        let mut row = vec![Cell::Float(c.grid_x), Cell::Float(c.prominence)];
        match &c.matched {
            Some(m) => row.extend([
                Cell::Int(m.rational.num()),
                Cell::Int(m.rational.den()),
                Cell::Float(m.residual),
                Cell::Float(m.predicted_prominence),
            ]),
            None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]),
        }
        table.push(row);
    }
    let flags = [
        ("kind", kind.flag().to_string()),
        ("n", n.to_string()),
        ("tau", fmt_sig(tau, 15)),
        ("qmax", qmax.to_string()),
    ];
    write_out(&ctx.out, &render(ctx.format, "scan", &flags, &table)?)
}

fn cmd_maxima(
    ctx: &Ctx,
    kind: Kind,
    n: u64,
    grid: &GridArgs,
    refine: u32,
    qmax: i64,
) -> anyhow::Result<()> {
    let Some(g) = grid.build()? else {
        bail!("maxima needs a grid (--from --to --points)");
    };
    let maxima = find_local_maxima(kind.into(), n, &g, refine, qmax)?;
    let mut table = Table::new(vec!["location", "value", "cf", "quality"]);
    for m in maxima {
        let quality = m
            .quality
            .iter()
            .map(|(q, v)| format!("{q}:{}", fmt_sig(*v, 15)))
            .collect::<Vec<_>>()
            .join(" ");
        table.push(vec![
            Cell::Float(m.location),
            Cell::Float(m.value),
            Cell::Str(m.cf.to_string()),
            Cell::Str(quality),
        ]);
    }
    let flags = [
        ("kind", kind.flag().to_string()),
        ("n", n.to_string()),
        ("refine", refine.to_string()),
        ("qmax", qmax.to_string()),
    ];
    write_out(&ctx.out, &render(ctx.format, "maxima", &flags, &table)?)
}

fn cmd_verify(ctx: &Ctx, suite: verify::Suite, qmax: i64, seed: u64) -> anyhow::Result<bool> {
    if !(2..=5000).contains(&qmax) {
        bail!("verify needs 2 <= --qmax <= 5000");
    }
    let checks = verify::run(suite, qmax, seed);
    let mut text = String::new();
    let mut all_pass = true;
    for c in &checks {
        all_pass &= c.pass;
        text.push_str(if c.pass { "PASS" } else { "FAIL" });
        text.push(' ');
        text.push_str(c.name);
        text.push_str(": ");
        text.push_str(&c.detail);
        text.push('\n');
    }
    text.push_str(&format!(
        "{}: {}/{} checks passed\n",
        if all_pass { "OK" } else { "FAILED" },
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    ));
    write_out(&ctx.out, &text)?;
    Ok(all_pass)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let ctx = Ctx {
        format: cli.format,
        out: cli.out.clone(),
        budget: cli.budget.unwrap_or(DEFAULT_TERM_BUDGET),
    };
    match &cli.command {
        Command::Eval { kind, n, x, grid } => cmd_eval(&ctx, *kind, *n, *x, grid)?,
        Command::Slopes { kind, n, p, q, tol } => cmd_slopes(&ctx, *kind, *n, *p, *q, *tol)?,
        Command::Threshold { kind, p, q, sweep } => cmd_threshold(&ctx, *kind, *p, *q, *sweep)?,
        Command::Scan {
            kind,
            n,
            grid,
            tau,
            qmax,
        } => cmd_scan(&ctx, *kind, *n, grid, *tau, *qmax)?,
        Command::Maxima {
            kind,
            n,
            grid,
            refine,
            qmax,
        } => cmd_maxima(&ctx, *kind, *n, grid, *refine, *qmax)?,
        Command::Verify { suite, qmax, seed } => return cmd_verify(&ctx, *suite, *qmax, *seed),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

// Small sanity net for the eval snippet the usage docs lead with.
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_maps_to_series() {
        assert_eq!(SeriesKind::from(Kind::Sin), SeriesKind::AbsSin);
        assert_eq!(SeriesKind::from(Kind::Cos), SeriesKind::AbsCos);
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
