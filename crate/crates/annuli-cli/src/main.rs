//! Command-line front end: eigenvalues, sweeps, oracle cross-checks,
//! inequality verification, and biharmonic norm reports, with JSON and CSV
//! output for machine consumption.

use std::io::Read;
use std::process::ExitCode;

use annuli::biharmonic::{check_interpolation, weighted_norms, BiharmonicFun, WeightSide};
use annuli::eigensolve::{
    lambda_min_d2, lambda_min_dimd, lambda_mn, lambda_n_dimd, mu_min_d2, mu_min_dimd, mu_mn,
    mu_n_dimd, EigenResult,
};
use annuli::geometry::{AnnulusGeometry, ProblemKind};
use annuli::oracle::{oracle_eigenvalue, Mode};
use annuli::quad::integrate_panels;
use annuli::verify::{check_inequality, VerifyParams};
use annuli::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "annuli",
    version,
    about = "Weighted fourth-order eigenvalues on annuli"
)]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// First eigenvalue of one mode (or the minimum over modes).
    Eigen(EigenArgs),
    /// Sweep one parameter axis, emitting a plot-ready table.
    Sweep(SweepArgs),
    /// Secular value against the finite-difference oracle.
    Oracle(OracleArgs),
    /// Fuzz one registered inequality with random clamped test functions.
    Verify(VerifyArgs),
    /// Closed-form weighted norms of a biharmonic function.
    Biharmonic(BiharmonicArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    I,
    II,
}

impl From<Problem> for ProblemKind {
    fn from(p: Problem) -> Self {
        match p {
            Problem::I => ProblemKind::WeightedL2,
            Problem::II => ProblemKind::WeightedGradient,
        }
    }
}

#[derive(Args, Clone)]
struct GeometryArgs {
    /// Inner radius (pair with --b).
    #[arg(long, requires = "b", conflicts_with = "big_r")]
    a: Option<f64>,
    /// Outer radius.
    #[arg(long)]
    b: Option<f64>,
    /// Conformal class log(b/a) with a = 1.
    #[arg(long = "R", conflicts_with = "a")]
    big_r: Option<f64>,
}

impl GeometryArgs {
    fn build(&self, d: u32) -> Result<AnnulusGeometry<f64>, Error> {
        match (self.a, self.b, self.big_r) {
            (Some(a), Some(b), None) => AnnulusGeometry::new(a, b, d),
            (None, None, Some(r)) => AnnulusGeometry::from_conformal_class(r, d),
            _ => Err(Error::InvalidParameter(
                "give either --a with --b, or --R".into(),
            )),
        }
    }
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Which minimisation problem.
    #[arg(long, value_enum, ignore_case = true)]
    problem: Problem,
    /// Weight exponent m >= 1 (planar operator family; d = 2).
    #[arg(long, conflicts_with = "d")]
    m: Option<f64>,
    /// Ambient dimension d >= 3 (bilaplacian).
    #[arg(long)]
    d: Option<u32>,
    /// Mode index, or `min` for the minimum over modes.
    #[arg(long, default_value = "min")]
    n: String,
    /// Evaluate below proven conformal-class bounds (results flagged).
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct EigenArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Axis to sweep: R, n, m, or d.
    #[arg(long)]
    axis: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    step: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Finite-difference grid intervals.
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    /// Emit a grid-refinement table (grid, grid/2, grid/4, grid/8).
    #[arg(long)]
    convergence: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Inequality name (corollary-A, corollary-B, theorem-C-I, theorem-C-II,
    /// weighted-poincare-d2, weighted-poincare-m, ipp-lemma,
    /// ipp-lemma-general, bilap-weights-d4, interp-weighted).
    #[arg(long)]
    name: String,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 5)]
    d: u32,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.75)]
    beta: f64,
    #[arg(long, default_value_t = 0.75)]
    gamma: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BiharmonicArgs {
    /// Coefficient file: lines `alpha v`, `beta v`, `a n re im`, `b n re im`
    /// (`-` reads stdin).
    #[arg(long)]
    coeffs: String,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[arg(long, default_value_t = 0.75)]
    beta: f64,
    #[arg(long, default_value_t = 0.75)]
    gamma: f64,
    /// Cross-check the closed forms against quadrature.
    #[arg(long)]
    quadrature: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone, Copy)]
struct OutputArgs {
    /// Machine-readable JSON record.
    #[arg(long)]
    json: bool,
    /// CSV rows with a header.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

// ---------------------------------------------------------------------------
// run records
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RunRecord<T: Serialize> {
    schema: u32,
    tool_version: &'static str,
    command: &'static str,
    parameters: serde_json::Value,
    results: T,
    /// Seconds since the Unix epoch; excluded from determinism guarantees.
    timestamp: u64,
}

fn record<T: Serialize>(
    command: &'static str,
    parameters: serde_json::Value,
    results: T,
) -> String {
    let rec = RunRecord {
        schema: 1,
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        parameters,
        results,
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    serde_json::to_string_pretty(&rec).expect("serializable record")
}

#[derive(Serialize, Clone)]
struct EigenRow {
    problem: String,
    family: String,
    m_or_d: f64,
    n: i32,
    a: f64,
    b: f64,
    conformal_class: f64,
    value: f64,
    theta_star: Option<f64>,
    lower_bound: f64,
    upper_bound: f64,
    bracket_proven: bool,
    regime: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn eigen_row(res: &EigenResult<f64>, family: &str, m_or_d: f64, note: Option<String>) -> EigenRow {
    EigenRow {
        problem: res.problem.to_string(),
        family: family.into(),
        m_or_d,
        n: res.mode,
        a: res.geometry.inner(),
        b: res.geometry.outer(),
        conformal_class: res.geometry.conformal_class(),
        value: res.value,
        theta_star: res.theta_star,
        lower_bound: res.lower_bound,
        upper_bound: res.upper_bound,
        bracket_proven: res.bracket_proven,
        regime: format!("{:?}", res.regime),
        note,
    }
}

fn csv_header() -> &'static str {
    "problem,family,m_or_d,n,a,b,conformal_class,value,theta_star,lower_bound,upper_bound,bracket_proven,regime"
}

fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

fn csv_row(r: &EigenRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.problem,
        r.family,
        fmt17(r.m_or_d),
        r.n,
        fmt17(r.a),
        fmt17(r.b),
        fmt17(r.conformal_class),
        fmt17(r.value),
        r.theta_star.map_or(String::new(), fmt17),
        fmt17(r.lower_bound),
        fmt17(r.upper_bound),
        r.bracket_proven,
        r.regime
    )
}

fn human_row(r: &EigenRow) {
    println!(
        "problem {} {}={} n={}  R={:.6}\n  value      = {:.6e}\n  theta*     = {}\n  bounds     = ({:.6e}, {:.6e})\n  regime     = {}\n  proven     = {}{}",
        r.problem,
        r.family,
        r.m_or_d,
        r.n,
        r.conformal_class,
        r.value,
        r.theta_star.map_or("-".into(), |t| format!("{t:.6}")),
        r.lower_bound,
        r.upper_bound,
        r.regime,
        r.bracket_proven,
        r.note.as_deref().map_or(String::new(), |n| format!("\n  note       = {n}"))
    );
}

// ---------------------------------------------------------------------------
// solvers shared by eigen / sweep / oracle
// ---------------------------------------------------------------------------

enum Family {
    Planar(f64),
    Dimension(u32),
}

fn family(p: &ProblemArgs) -> Result<Family, Error> {
    match (p.m, p.d) {
        (Some(m), None) => Ok(Family::Planar(m)),
        (None, Some(d)) => Ok(Family::Dimension(d)),
        (None, None) => Ok(Family::Planar(1.0)),
        _ => Err(Error::InvalidParameter("give --m or --d, not both".into())),
    }
}

fn solve_rows(p: &ProblemArgs, g_args: &GeometryArgs) -> Result<Vec<EigenRow>, Error> {
    let problem: ProblemKind = p.problem.into();
    let fam = family(p)?;
    let minimize = p.n == "min";
    let n_fixed: Option<i32> = if minimize {
        None
    } else {
        Some(
            p.n.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad mode index '{}'", p.n)))?,
        )
    };
    match fam {
        Family::Planar(m) => {
            let g = g_args.build(2)?;
            match (problem, n_fixed) {
                (ProblemKind::WeightedL2, Some(n)) => Ok(vec![eigen_row(
                    &lambda_mn(m, n, &g, p.force)?,
                    "m",
                    m,
                    None,
                )]),
                (ProblemKind::WeightedL2, None) => {
                    let (best, _) = lambda_min_d2(m, &g, p.force)?;
                    Ok(vec![eigen_row(
                        &best,
                        "m",
                        m,
                        Some(format!("argmin |n| = {}", best.mode)),
                    )])
                }
                (ProblemKind::WeightedGradient, Some(n)) => {
                    Ok(vec![eigen_row(&mu_mn(m, n, &g, p.force)?, "m", m, None)])
                }
                (ProblemKind::WeightedGradient, None) => {
                    let rep = mu_min_d2(m, &g, p.force)?;
                    let mut rows = Vec::new();
                    for (i, cand) in rep.candidates.iter().enumerate() {
                        let contender = cand.mode == 0 || f64::from(cand.mode) == m;
                        let note = match rep.declared_min {
                            Some(w) if w == i => Some("declared minimum".to_string()),
                            Some(_) => None,
                            None if contender => Some(
                                "minimal candidate (n=0 vs n=m not ordered by the theory)".into(),
                            ),
                            None => None,
                        };
                        rows.push(eigen_row(cand, "m", m, note));
                    }
                    Ok(rows)
                }
            }
        }
        Family::Dimension(d) => {
            let g = g_args.build(d)?;
            let to_u = |n: i32| -> Result<u32, Error> {
                u32::try_from(n)
                    .map_err(|_| Error::InvalidParameter("spherical mode must be >= 0".into()))
            };
            match (problem, n_fixed) {
                (ProblemKind::WeightedL2, Some(n)) => Ok(vec![eigen_row(
                    &lambda_n_dimd(d, to_u(n)?, &g, p.force)?,
                    "d",
                    f64::from(d),
                    None,
                )]),
                (ProblemKind::WeightedL2, None) => {
                    let (best, _) = lambda_min_dimd(d, &g, p.force)?;
                    Ok(vec![eigen_row(
                        &best,
                        "d",
                        f64::from(d),
                        Some(format!("argmin n = {}", best.mode)),
                    )])
                }
                (ProblemKind::WeightedGradient, Some(n)) => Ok(vec![eigen_row(
                    &mu_n_dimd(d, to_u(n)?, &g, p.force)?,
                    "d",
                    f64::from(d),
                    None,
                )]),
                (ProblemKind::WeightedGradient, None) => {
                    let (best, _) = mu_min_dimd(d, &g, p.force)?;
                    Ok(vec![eigen_row(
                        &best,
                        "d",
                        f64::from(d),
                        Some(format!("argmin n = {}", best.mode)),
                    )])
                }
            }
        }
    }
}

fn params_json(p: &ProblemArgs, g: &GeometryArgs) -> serde_json::Value {
    serde_json::json!({
        "problem": match p.problem { Problem::I => "I", Problem::II => "II" },
        "m": p.m,
        "d": p.d,
        "n": p.n,
        "a": g.a,
        "b": g.b,
        "R": g.big_r,
        "force": p.force,
    })
}

fn emit_rows(cmd: &'static str, params: serde_json::Value, rows: &[EigenRow], out: OutputArgs) {
    if out.json {
        println!("{}", record(cmd, params, rows));
    } else if out.csv {
        println!("{}", csv_header());
        for r in rows {
            println!("{}", csv_row(r));
        }
    } else {
        for r in rows {
            human_row(r);
        }
    }
}

fn run_eigen(args: &EigenArgs) -> Result<(), Error> {
    let rows = solve_rows(&args.problem, &args.geometry)?;
    emit_rows(
        "eigen",
        params_json(&args.problem, &args.geometry),
        &rows,
        args.output,
    );
    Ok(())
}

#[derive(Serialize)]
struct SweepRow {
    axis_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    row: Option<EigenRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn run_sweep(args: &SweepArgs) -> Result<(), Error> {
    if args.step <= 0.0 || args.to < args.from {
        return Err(Error::InvalidParameter("bad sweep range".into()));
    }
    let mut points = Vec::new();
    let mut v = args.from;
    while v <= args.to + 1e-12 {
        points.push(v);
        v += args.step;
    }
    let solve_at = |v: f64| -> Result<Vec<EigenRow>, Error> {
        let mut p = args.problem.clone();
        let mut g = args.geometry.clone();
        match args.axis.as_str() {
            "R" => {
                g.a = None;
                g.b = None;
                g.big_r = Some(v);
            }
            "n" => p.n = format!("{}", v.round() as i64),
            "m" => p.m = Some(v),
            "d" => {
                p.d = Some(v.round() as u32);
                p.m = None;
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "axis must be R, n, m, or d (got {other})"
                )))
            }
        }
        solve_rows(&p, &g)
    };
    use rayon::prelude::*;
    let results: Vec<SweepRow> = points
        .par_iter()
        .map(|&v| match solve_at(v) {
            Ok(rows) => rows
                .into_iter()
                .map(|row| SweepRow {
                    axis_value: v,
                    row: Some(row),
                    error: None,
                })
                .collect::<Vec<_>>(),
            Err(e) => vec![SweepRow {
                axis_value: v,
                row: None,
                error: Some(e.to_string()),
            }],
        })
        .flatten()
        .collect();
    let params = {
        let mut p = params_json(&args.problem, &args.geometry);
        p["axis"] = serde_json::json!(args.axis);
        p["from"] = serde_json::json!(args.from);
        p["to"] = serde_json::json!(args.to);
        p["step"] = serde_json::json!(args.step);
        p
    };
    if args.output.json {
        println!("{}", record("sweep", params, &results));
    } else {
        // CSV is the default for sweeps (plot-ready)
        println!("axis_value,{},error", csv_header());
        for r in &results {
            match (&r.row, &r.error) {
                (Some(row), _) => println!("{},{},", fmt17(r.axis_value), csv_row(row)),
                (None, Some(e)) => println!("{},{}{}", fmt17(r.axis_value), ",".repeat(13), e),
                _ => unreachable!(),
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct OracleRow {
    grid: usize,
    secular: f64,
    oracle: f64,
    relative_gap: f64,
}

fn run_oracle(args: &OracleArgs) -> Result<(), Error> {
    let rows = solve_rows(&args.problem, &args.geometry)?;
    let row = rows
        .first()
        .ok_or_else(|| Error::InvalidParameter("no eigenvalue".into()))?;
    let problem: ProblemKind = args.problem.problem.into();
    let mode = match family(&args.problem)? {
        Family::Planar(m) => Mode::D2 { m, n: row.n },
        Family::Dimension(d) => Mode::Dim { d, n: row.n as u32 },
    };
    let g = match family(&args.problem)? {
        Family::Planar(_) => args.geometry.build(2)?,
        Family::Dimension(d) => args.geometry.build(d)?,
    };
    let grids: Vec<usize> = if args.convergence {
        [8usize, 4, 2, 1].iter().map(|k| args.grid / k).collect()
    } else {
        vec![args.grid]
    };
    let mut table = Vec::new();
    for n in grids {
        let fd = oracle_eigenvalue(problem, mode, &g, n)?;
        table.push(OracleRow {
            grid: n,
            secular: row.value,
            oracle: fd,
            relative_gap: (row.value - fd).abs() / row.value.abs(),
        });
    }
    let params = {
        let mut p = params_json(&args.problem, &args.geometry);
        p["grid"] = serde_json::json!(args.grid);
        p["convergence"] = serde_json::json!(args.convergence);
        p
    };
    if args.output.json {
        println!("{}", record("oracle", params, &table));
    } else if args.output.csv {
        println!("grid,secular,oracle,relative_gap");
        for r in &table {
            println!(
                "{},{},{},{}",
                r.grid,
                fmt17(r.secular),
                fmt17(r.oracle),
                fmt17(r.relative_gap)
            );
        }
    } else {
        for r in &table {
            println!(
                "grid {:>6}: secular = {:.6e}  oracle = {:.6e}  gap = {:.3e}",
                r.grid, r.secular, r.oracle, r.relative_gap
            );
        }
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(), Error> {
    // dimension-family inequalities need the matching ambient dimension
    let d = match args.name.as_str() {
        "theorem-C-I" | "theorem-C-II" | "ipp-lemma-general" => args.d,
        "bilap-weights-d4" => 4,
        _ => 2,
    };
    let g = args.geometry.build(d.max(2))?;
    let params = VerifyParams {
        m: args.m,
        d: args.d,
        alpha: args.alpha,
        beta: args.beta,
        gamma: args.gamma,
    };
    let rep = check_inequality(&args.name, &g, &params, args.trials, args.seed, args.force)?;
    let pjson = serde_json::json!({
        "name": args.name,
        "m": args.m, "d": args.d,
        "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma,
        "trials": args.trials, "seed": args.seed,
        "a": g.inner(), "b": g.outer(),
        "force": args.force,
    });
    if args.output.json {
        println!(
            "{}",
            record(
                "verify",
                pjson,
                serde_json::json!({
                    "violations": rep.violations,
                    "trials": rep.trials,
                    "min_ratio": rep.min_ratio,
                    "hypothesis_bound": rep.hypothesis_bound,
                })
            )
        );
    } else if args.output.csv {
        println!("name,trials,violations,min_ratio,hypothesis_bound");
        println!(
            "{},{},{},{},{}",
            rep.name,
            rep.trials,
            rep.violations,
            fmt17(rep.min_ratio),
            fmt17(rep.hypothesis_bound)
        );
    } else {
        println!(
            "{}: {} trials, {} violations, min ratio {:.6}, hypothesis R >= {:.6}",
            rep.name, rep.trials, rep.violations, rep.min_ratio, rep.hypothesis_bound
        );
    }
    Ok(())
}

fn parse_coeffs(text: &str) -> Result<BiharmonicFun<f64>, Error> {
    let mut entries: Vec<(char, i32, f64, f64)> = Vec::new();
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut n_max = 1usize;
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::InvalidParameter(format!("bad coefficient line {}: '{line}'", ln + 1));
        match toks.as_slice() {
            ["alpha", v] => alpha = v.parse().map_err(|_| bad())?,
            ["beta", v] => beta = v.parse().map_err(|_| bad())?,
            [kind @ ("a" | "b"), n, re, im] => {
                let n: i32 = n.parse().map_err(|_| bad())?;
                n_max = n_max.max(n.unsigned_abs() as usize);
                entries.push((
                    kind.chars().next().unwrap(),
                    n,
                    re.parse().map_err(|_| bad())?,
                    im.parse().map_err(|_| bad())?,
                ));
            }
            _ => return Err(bad()),
        }
    }
    let mut f = BiharmonicFun::new(n_max);
    f.alpha = alpha;
    f.beta = beta;
    for (kind, n, re, im) in entries {
        let v = num_complex::Complex::new(re, im);
        if kind == 'a' {
            f.set_a(n, v)?;
        } else {
            f.set_b(n, v)?;
        }
    }
    Ok(f)
}

#[derive(Serialize)]
struct NormsReport {
    side: String,
    grad_weighted: f64,
    sq_weighted: f64,
    laplacian_sq: f64,
    four_dz2_sq: f64,
    hessian_sq: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadrature_grad: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadrature_sq: Option<f64>,
}

fn quad_norm(
    f: &BiharmonicFun<f64>,
    g: &AnnulusGeometry<f64>,
    integrand: impl Fn(&BiharmonicFun<f64>, f64, f64) -> f64,
    radial_weight: impl Fn(f64) -> f64,
) -> f64 {
    let n_t = 2 * (2 * f.n_max() + 4) + 3;
    let two_pi = 2.0 * std::f64::consts::PI;
    let ang = |r: f64| {
        (0..n_t)
            .map(|i| integrand(f, r, two_pi * i as f64 / n_t as f64))
            .sum::<f64>()
            * two_pi
            / n_t as f64
    };
    let h = |t: f64| {
        let r = t.exp();
        ang(r) * radial_weight(r) * r * r
    };
    let (t0, t1) = (g.inner().ln(), g.outer().ln());
    let mut panels = 32;
    let mut prev = integrate_panels(h, t0, t1, panels);
    for _ in 0..7 {
        panels *= 2;
        let cur = integrate_panels(h, t0, t1, panels);
        if (cur - prev).abs() <= 1e-10 * cur.abs().max(prev.abs()) {
            return cur;
        }
        prev = cur;
    }
    prev
}

fn run_biharmonic(args: &BiharmonicArgs) -> Result<(), Error> {
    let text = if args.coeffs == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidParameter(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(&args.coeffs)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", args.coeffs)))?
    };
    let f = parse_coeffs(&text)?;
    let g = args.geometry.build(2)?;
    let b_out = g.outer();
    let mut reports = Vec::new();
    for side in [WeightSide::Outer, WeightSide::Inner] {
        let w = weighted_norms(&f, &g, args.gamma, side)?;
        let (qg, qs) = if args.quadrature {
            let wf = |sigma: f64| {
                move |r: f64| match side {
                    WeightSide::Outer => (r / b_out).powf(sigma),
                    WeightSide::Inner => (g.inner() / r).powf(sigma),
                }
            };
            (
                Some(quad_norm(
                    &f,
                    &g,
                    |f, r, t| f.grad_sq(r, t) / (r * r),
                    wf(2.0 * args.gamma),
                )),
                Some(quad_norm(
                    &f,
                    &g,
                    |f, r, t| f.eval(r, t).powi(2) / r.powi(4),
                    wf(4.0 * args.gamma),
                )),
            )
        } else {
            (None, None)
        };
        reports.push(NormsReport {
            side: format!("{side:?}"),
            grad_weighted: w.grad_weighted,
            sq_weighted: w.sq_weighted,
            laplacian_sq: w.laplacian_sq,
            four_dz2_sq: w.four_dz2_sq,
            hessian_sq: w.hessian_sq,
            quadrature_grad: qg,
            quadrature_sq: qs,
        });
    }
    let interp = check_interpolation(&f, &g, args.beta, args.gamma)?;
    let results = serde_json::json!({
        "norms": reports,
        "interpolation": {
            "lhs": interp.lhs,
            "rhs": interp.rhs,
            "ratio": interp.gamma_effective,
            "gamma_effective": interp.gamma_effective,
            "hypothesis_ok": interp.hypothesis_ok,
        },
    });
    let pjson = serde_json::json!({
        "coeffs": args.coeffs, "beta": args.beta, "gamma": args.gamma,
        "a": g.inner(), "b": g.outer(),
    });
    if args.output.json {
        println!("{}", record("biharmonic", pjson, results));
    } else {
        for r in &reports {
            println!(
                "side {:>5}: grad_w = {:.6e}  sq_w = {:.6e}  lap^2 = {:.6e}  4|dz2|^2 = {:.6e}  hess^2 = {:.6e}",
                r.side, r.grad_weighted, r.sq_weighted, r.laplacian_sq, r.four_dz2_sq, r.hessian_sq
            );
            if let (Some(qg), Some(qs)) = (r.quadrature_grad, r.quadrature_sq) {
                println!(
                    "           quadrature: grad_w = {qg:.6e} (gap {:.2e})  sq_w = {qs:.6e} (gap {:.2e})",
                    (r.grad_weighted - qg).abs() / qg.abs().max(1e-300),
                    (r.sq_weighted - qs).abs() / qs.abs().max(1e-300)
                );
            }
        }
        println!(
            "interpolation: lhs = {:.6e}, rhs(Gamma=1) = {:.6e}, effective Gamma = {:.6e}, hypothesis_ok = {}",
            interp.lhs, interp.rhs, interp.gamma_effective, interp.hypothesis_ok
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    let result = match &cli.command {
        Command::Eigen(a) => run_eigen(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Verify(a) => run_verify(a),
        Command::Biharmonic(a) => run_biharmonic(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(
            e @ (Error::BelowProvenBracket { .. }
            | Error::HypothesisViolated(_)
            | Error::NotLocalized { .. }),
        ) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
