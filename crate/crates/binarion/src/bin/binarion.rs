//! Command-line front end: expression evaluation, region classification,
//! contour integration, grid analysis, signal decomposition, the
//! complex-vs-split comparison table, and plot data.
//!
//! Exit codes: 0 success, 2 parse or usage errors, 3 domain or math
//! errors, 4 I/O errors. All output is deterministic: the same
//! invocation produces byte-identical bytes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use binarion::contour::{CauchyOutcome, Contour, Quadrature};
use binarion::expr::{self, ExprError};
use binarion::field::{CrSense, FieldGrid};
use binarion::fields::{named_kernel, Kernel, KERNEL_NAMES};
use binarion::fmt::sig12;
use binarion::functions;
use binarion::matrix::to_matrix;
use binarion::signal::{SampledSignal, SignalKind};
use binarion::structure::{self, DEFAULT_TOL};
use binarion::{Binarion, Signature};

#[derive(Parser)]
#[command(
    name = "binarion",
    version,
    about = "Numerics for the plane operator algebras xI + yE",
    after_help = "Exit codes: 0 success, 2 parse/usage, 3 domain/math, 4 I/O."
)]
struct Cli {
    /// Signature of E^2: 1 (split), -1 (complex), or 0 (parabolic)
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    eps: i64,

    /// Emit JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Classification tolerance (default 1e-9)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Gauss-Legendre order per panel (default 8)
    #[arg(long, global = true)]
    quad_order: Option<usize>,

    /// Quadrature panels per circle or line segment (default 64)
    #[arg(long, global = true)]
    subdivisions: Option<usize>,

    /// Reserved for randomized subcommands; accepted and currently unused
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output destination: a file for most subcommands, the residual CSV
    /// for analyze-grid, the filename prefix for decompose
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression such as "exp(ln(2I+1E))"
    Eval { expr: String },

    /// Report the determinant region of xI + yE (split signature)
    Classify {
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
    },

    /// Integrate a kernel along a contour file; with --l0, probe the
    /// integral of f(L)/(L - L0) instead
    Integrate {
        /// Contour JSON file
        contour: PathBuf,
        /// Kernel name (identity, conj, square, ...) or a constant expression
        kernel: String,
        /// Base point "x,y" for the singular-kernel probe
        #[arg(long)]
        l0: Option<String>,
    },

    /// Cauchy-Riemann, wave, and Laplace residuals of a sampled field
    AnalyzeGrid {
        /// Field grid JSON file
        grid: PathBuf,
        /// Which residual CSV --out exports
        #[arg(long, value_enum, default_value_t = SenseArg::Split)]
        sense: SenseArg,
    },

    /// Split a periodic signal file into 1-periodic and 1-antiperiodic parts
    Decompose {
        /// Signal file: JSON, or CSV rows t,value
        signal: PathBuf,
    },

    /// Side-by-side complex-vs-split table for the point (x, y)
    Compare {
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
    },

    /// CSV point sets: modulus level curves or the null lines
    PlotData {
        kind: PlotKind,
        /// Level values, comma separated
        #[arg(long, default_value = "1,2")]
        c: String,
        /// Points per curve
        #[arg(long, default_value_t = 65)]
        samples: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SenseArg {
    Split,
    Complex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    LevelCurves,
    NullLines,
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let sig = Signature::from_eps(cli.eps)
        .map_err(|_| Failure::usage(format!("--eps must be -1, 0, or 1, got {}", cli.eps)))?;
    match &cli.cmd {
        Cmd::Eval { expr } => cmd_eval(cli, sig, expr),
        Cmd::Classify { x, y } => cmd_classify(cli, sig, *x, *y),
        Cmd::Integrate { contour, kernel, l0 } => {
            cmd_integrate(cli, sig, contour, kernel, l0.as_deref())
        }
        Cmd::AnalyzeGrid { grid, sense } => cmd_analyze_grid(cli, grid, *sense),
        Cmd::Decompose { signal } => cmd_decompose(cli, signal),
        Cmd::Compare { x, y } => cmd_compare(cli, *x, *y),
        Cmd::PlotData { kind, c, samples } => cmd_plot_data(cli, sig, *kind, c, *samples),
    }
}

fn quadrature(cli: &Cli) -> Result<Quadrature, Failure> {
    let default = Quadrature::default();
    let quad = Quadrature {
        order: cli.quad_order.unwrap_or(default.order),
        subdivisions: cli.subdivisions.unwrap_or(default.subdivisions),
    };
    if quad.order == 0 || quad.order > 64 {
        return Err(Failure::usage(format!(
            "--quad-order must be in 1..=64, got {}",
            quad.order
        )));
    }
    if quad.subdivisions == 0 {
        return Err(Failure::usage("--subdivisions must be positive"));
    }
    Ok(quad)
}

/// Primary output: --out file if given, stdout otherwise.
fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text)
        .map_err(|e| Failure::usage(format!("malformed {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn expr_failure(e: ExprError) -> Failure {
    match e {
        ExprError::Lex { .. } | ExprError::Parse { .. } => Failure::usage(e.to_string()),
        ExprError::Eval { .. } => Failure::domain(e.to_string()),
    }
}

fn cmd_eval(cli: &Cli, sig: Signature, src: &str) -> Result<(), Failure> {
    let value = expr::eval_str(src, sig).map_err(expr_failure)?;
    if cli.json {
        emit(cli, &to_json(&value))
    } else {
        emit(cli, &value.to_string())
    }
}

fn cmd_classify(cli: &Cli, sig: Signature, x: f64, y: f64) -> Result<(), Failure> {
    if sig != Signature::Split {
        return Err(Failure::usage(format!(
            "classify works in the split signature; pass --eps 1, not {}",
            cli.eps
        )));
    }
    let a = Binarion::try_new(x, y, sig).map_err(|e| Failure::usage(e.to_string()))?;
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let region = structure::classify(a, tol);
    let fixed = structure::fixed_analysis(a, tol).expect("split by construction");
    let partner = if region.null && a != Binarion::zero(sig) {
        Some(structure::zero_divisor_partner(a).expect("nonzero null element"))
    } else {
        None
    };

    if cli.json {
        return emit(
            cli,
            &to_json(&json!({
                "value": a,
                "region": region,
                "partner": partner,
                "fixed": fixed,
            })),
        );
    }

    let mut out = String::new();
    writeln!(out, "value: {a}").unwrap();
    writeln!(out, "det: {}", sig12(region.det)).unwrap();
    writeln!(out, "region: {}", region.tag.label()).unwrap();
    let mut flags = Vec::new();
    for (set, name) in [
        (region.invertible, "invertible"),
        (region.pos_det, "pos_det"),
        (region.neg_det, "neg_det"),
        (region.unit_det, "unit_det"),
        (region.null, "null"),
        (region.exp_cone, "exp_cone"),
    ] {
        if set {
            flags.push(name);
        }
    }
    writeln!(out, "flags: {}", flags.join(", ")).unwrap();
    if let Some(p) = partner {
        writeln!(out, "partner: {p}").unwrap();
    }
    if fixed.fixes_antidiagonal {
        writeln!(out, "fixed line: maps the antidiagonal y = -x to itself pointwise").unwrap();
    }
    if fixed.fixes_diagonal {
        writeln!(out, "fixed line: maps the diagonal y = x to itself pointwise").unwrap();
    }
    emit(cli, &out)
}

type DynKernel = Box<dyn Fn(Binarion) -> Result<Binarion, binarion::Error>>;

/// A kernel name from the registry, or any expression evaluating to a
/// constant in the active signature.
fn resolve_kernel(src: &str, sig: Signature) -> Result<DynKernel, Failure> {
    if let Some(k) = named_kernel(src) {
        let k: Kernel = k;
        return Ok(Box::new(k));
    }
    match expr::eval_str(src, sig) {
        Ok(c) => Ok(Box::new(move |_| Ok(c))),
        Err(e @ ExprError::Eval { .. }) => Err(expr_failure(e)),
        Err(_) => Err(Failure::usage(format!(
            "kernel {src:?} is neither a known name ({}) nor a valid constant expression",
            KERNEL_NAMES.join(", ")
        ))),
    }
}

fn cmd_integrate(
    cli: &Cli,
    sig: Signature,
    contour_path: &Path,
    kernel: &str,
    l0: Option<&str>,
) -> Result<(), Failure> {
    let text = read_file(contour_path)?;
    let contour: Contour = parse_json(contour_path, &text)?;
    let f = resolve_kernel(kernel, sig)?;
    let quad = quadrature(cli)?;

    let Some(l0_text) = l0 else {
        let value = contour
            .integrate(sig, f, quad)
            .map_err(|e| Failure::domain(e.to_string()))?;
        return if cli.json {
            emit(cli, &to_json(&json!({ "integral": value })))
        } else {
            emit(cli, &format!("integral: {value}"))
        };
    };

    let l0 = parse_point(l0_text, sig)?;
    let outcome = contour
        .cauchy_probe(f, l0, quad)
        .map_err(|e| Failure::domain(e.to_string()))?;
    if cli.json {
        return emit(cli, &to_json(&outcome));
    }
    let mut out = String::new();
    match outcome {
        CauchyOutcome::Value(v) => {
            writeln!(out, "outcome: value").unwrap();
            writeln!(out, "integral: {v}").unwrap();
        }
        CauchyOutcome::Divergent { clearance, threshold } => {
            writeln!(out, "outcome: divergent").unwrap();
            writeln!(out, "clearance: {clearance:e}").unwrap();
            writeln!(out, "threshold: {threshold:e}").unwrap();
        }
    }
    emit(cli, &out)
}

fn parse_point(text: &str, sig: Signature) -> Result<Binarion, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [x, y] = parts.as_slice() else {
        return Err(Failure::usage(format!("expected \"x,y\", got {text:?}")));
    };
    let x: f64 = x
        .parse()
        .map_err(|_| Failure::usage(format!("bad x component {x:?}")))?;
    let y: f64 = y
        .parse()
        .map_err(|_| Failure::usage(format!("bad y component {y:?}")))?;
    Binarion::try_new(x, y, sig).map_err(|e| Failure::usage(e.to_string()))
}

fn cmd_analyze_grid(cli: &Cli, grid_path: &Path, sense: SenseArg) -> Result<(), Failure> {
    let text = read_file(grid_path)?;
    let grid: FieldGrid = parse_json(grid_path, &text)?;

    let split = grid.analytic_verdict(CrSense::Split);
    let complex = grid.analytic_verdict(CrSense::Complex);
    let wave = grid.wave_residual();
    let laplace = grid.laplace_residual();

    let csv_sense = match sense {
        SenseArg::Split => CrSense::Split,
        SenseArg::Complex => CrSense::Complex,
    };
    if let Some(path) = &cli.out {
        let csv = grid.cr_residual(csv_sense).to_csv();
        std::fs::write(path, csv)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    }

    if cli.json {
        let text = to_json(&json!({
            "split": split,
            "complex": complex,
            "wave": { "u": wave.0, "v": wave.1 },
            "laplace": { "u": laplace.0, "v": laplace.1 },
        }));
        println!("{text}");
        return Ok(());
    }

    let verdict = |name: &str, r: &binarion::field::AnalyticReport| {
        format!(
            "{name}: {} (residuals {:e}, {:e}; threshold {:e})",
            if r.analytic { "PASS" } else { "FAIL" },
            r.max_r1,
            r.max_r2,
            r.threshold
        )
    };
    let mut out = String::new();
    writeln!(out, "{}", verdict("split-cr", &split)).unwrap();
    writeln!(out, "{}", verdict("complex-cr", &complex)).unwrap();
    writeln!(out, "wave: {:e}, {:e}", wave.0, wave.1).unwrap();
    writeln!(out, "laplace: {:e}, {:e}", laplace.0, laplace.1).unwrap();
    if let Some(path) = &cli.out {
        writeln!(out, "wrote: {}", path.display()).unwrap();
    }
    println!("{out}");
    Ok(())
}

fn cmd_decompose(cli: &Cli, signal_path: &Path) -> Result<(), Failure> {
    let text = read_file(signal_path)?;
    let signal = if signal_path.extension().is_some_and(|e| e == "csv") {
        SampledSignal::from_csv(SignalKind::Periodic2, text.as_bytes())
            .map_err(|e| Failure::usage(format!("malformed {}: {e}", signal_path.display())))?
    } else {
        parse_json::<SampledSignal>(signal_path, &text)?
    };
    let (p1, ap1) = signal
        .decompose()
        .map_err(|e| Failure::domain(e.to_string()))?;

    let prefix = match &cli.out {
        Some(p) => p.clone(),
        None => signal_path.with_extension(""),
    };
    let p1_path = PathBuf::from(format!("{}.p1.json", prefix.display()));
    let ap1_path = PathBuf::from(format!("{}.ap1.json", prefix.display()));
    let write = |path: &Path, s: &SampledSignal| {
        std::fs::write(path, format!("{}\n", to_json(s)))
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
    };
    write(&p1_path, &p1)?;
    write(&ap1_path, &ap1)?;

    let reassembly = p1
        .checked_add(&ap1)
        .expect("same shape")
        .max_abs_diff(&signal);
    let p1_shift = p1.unit_shift().max_abs_diff(&p1);
    let ap1_shift = ap1.unit_shift().max_abs_diff(&ap1.scale(-1.0));

    if cli.json {
        let text = to_json(&json!({
            "p1": p1_path.display().to_string(),
            "ap1": ap1_path.display().to_string(),
            "reassembly_residual": reassembly,
            "p1_shift_residual": p1_shift,
            "ap1_shift_residual": ap1_shift,
        }));
        println!("{text}");
        return Ok(());
    }
    let mut out = String::new();
    writeln!(out, "wrote: {}", p1_path.display()).unwrap();
    writeln!(out, "wrote: {}", ap1_path.display()).unwrap();
    writeln!(out, "reassembly residual: {reassembly:e}").unwrap();
    writeln!(out, "p1 shift residual: {p1_shift:e}").unwrap();
    writeln!(out, "ap1 shift residual: {ap1_shift:e}").unwrap();
    println!("{out}");
    Ok(())
}

fn cmd_compare(cli: &Cli, x: f64, y: f64) -> Result<(), Failure> {
    let c = Binarion::try_new(x, y, Signature::Complex)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let s = Binarion::new(x, y, Signature::Split);
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);

    let square_c = c * c;
    let square_s = s * s;

    let rho = x.hypot(y);
    let arg_c = functions::arg_principal(c).ok();
    // Euler check, complex side: rho * exp(theta E) must reproduce (x, y).
    let euler_c = arg_c.map(|theta| {
        (functions::exp(Binarion::new(0.0, theta, Signature::Complex)).scale(rho) - c).norm2()
    });

    let region = structure::classify(s, tol);
    // The split modulus lives on det > 0; the sign of x picks the branch
    // of the reconstruction rho * (cosh theta, sinh theta).
    let split_defined = region.pos_det;
    let rho_s = split_defined.then(|| s.det().sqrt());
    let theta_s = split_defined.then(|| (y / x).atanh());
    let euler_s = theta_s.map(|theta| {
        let rebuilt =
            functions::exp(Binarion::new(0.0, theta, Signature::Split)).scale(x.signum() * rho_s.unwrap());
        (rebuilt - s).norm2()
    });
    let degenerate = region.null;

    if cli.json {
        let text = to_json(&json!({
            "x": x,
            "y": y,
            "complex": {
                "square": square_c,
                "modulus": rho,
                "argument": arg_c,
                "euler_residual": euler_c,
                "level_curve": format!("x^2 + y^2 = {}", sig12(rho * rho)),
            },
            "split": {
                "square": square_s,
                "modulus": rho_s,
                "argument": theta_s,
                "euler_residual": euler_s,
                "level_curve": format!("x^2 - y^2 = {}", sig12(s.det())),
                "degenerate": degenerate,
            },
        }));
        println!("{text}");
        return Ok(());
    }

    let und = |reason: &str| format!("undefined ({reason})");
    let arg_c_text = arg_c.map_or_else(|| und("zero point"), sig12);
    let euler_c_text = euler_c.map_or_else(|| "-".to_string(), |r| format!("{r:e}"));
    let (rho_s_text, theta_s_text, euler_s_text) = if split_defined {
        (
            sig12(rho_s.unwrap()),
            sig12(theta_s.unwrap()),
            format!("{:e}", euler_s.unwrap()),
        )
    } else if degenerate {
        (und("null cone"), und("null cone"), "-".to_string())
    } else {
        (
            und("negative determinant"),
            und("negative determinant"),
            "-".to_string(),
        )
    };
    let mat_c = to_matrix(c).m;
    let mat_s = to_matrix(s).m;
    let mat_text = |m: [[f64; 2]; 2]| {
        format!(
            "[[{}, {}], [{}, {}]]",
            sig12(m[0][0]),
            sig12(m[0][1]),
            sig12(m[1][0]),
            sig12(m[1][1])
        )
    };

    let rows: Vec<(&str, String, String)> = vec![
        ("point", format!("{c}"), format!("{s}")),
        ("product rule", "E*E = -I".to_string(), "E*E = I".to_string()),
        ("square", format!("{square_c}"), format!("{square_s}")),
        ("modulus", sig12(rho), rho_s_text),
        ("argument", arg_c_text, theta_s_text),
        ("euler residual", euler_c_text, euler_s_text),
        (
            "cauchy-riemann",
            "u_x = v_y, u_y = -v_x".to_string(),
            "u_x = v_y, u_y = v_x".to_string(),
        ),
        (
            "component pde",
            "u_xx + u_yy = 0".to_string(),
            "u_xx - u_yy = 0".to_string(),
        ),
        (
            "level curve",
            format!("x^2 + y^2 = {}", sig12(rho * rho)),
            format!("x^2 - y^2 = {}", sig12(s.det())),
        ),
        ("matrix", mat_text(mat_c), mat_text(mat_s)),
    ];

    let mut out = String::new();
    writeln!(out, "quantity         complex                      split").unwrap();
    for (name, lhs, rhs) in rows {
        writeln!(out, "{name:<16} {lhs:<28} {rhs}").unwrap();
    }
    if degenerate {
        writeln!(
            out,
            "note: (x, y) lies on the null cone |x| = |y|; the split level set degenerates to the lines y = x and y = -x"
        )
        .unwrap();
    }
    emit(cli, &out)
}

fn cmd_plot_data(
    cli: &Cli,
    sig: Signature,
    kind: PlotKind,
    c_list: &str,
    samples: usize,
) -> Result<(), Failure> {
    if samples < 2 {
        return Err(Failure::usage("need at least 2 samples per curve"));
    }
    let mut out = String::from("curve,t,x,y\n");
    // + 0.0 turns -0.0 into 0.0 so the CSV never prints "-0"
    let mut push = |curve: &str, t: f64, x: f64, y: f64| {
        out.push_str(&format!("{curve},{},{},{}\n", t + 0.0, x + 0.0, y + 0.0));
    };
    let linspace = |a: f64, b: f64| {
        let n = samples - 1;
        (0..=n).map(move |k| a + (b - a) * k as f64 / n as f64)
    };

    match kind {
        PlotKind::NullLines => {
            for t in linspace(-2.0, 2.0) {
                push("y=x", t, t, t);
            }
            for t in linspace(-2.0, 2.0) {
                push("y=-x", t, t, -t);
            }
        }
        PlotKind::LevelCurves => {
            let levels: Vec<f64> = c_list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|c| c.is_finite() && *c > 0.0)
                        .ok_or_else(|| Failure::usage(format!("bad level {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            for c in levels {
                match sig {
                    // hyperbola x^2 - y^2 = c^2, both branches
                    Signature::Split => {
                        for t in linspace(-2.0, 2.0) {
                            push(&format!("c={c}:right"), t, c * t.cosh(), c * t.sinh());
                        }
                        for t in linspace(-2.0, 2.0) {
                            push(&format!("c={c}:left"), t, -c * t.cosh(), c * t.sinh());
                        }
                    }
                    // circle x^2 + y^2 = c^2
                    Signature::Complex => {
                        for t in linspace(0.0, std::f64::consts::TAU) {
                            push(&format!("c={c}"), t, c * t.cos(), c * t.sin());
                        }
                    }
                    // the parabolic modulus |x| levels out on vertical lines
                    Signature::Parabolic => {
                        for t in linspace(-2.0, 2.0) {
                            push(&format!("c={c}:right"), t, c, t);
                        }
                        for t in linspace(-2.0, 2.0) {
                            push(&format!("c={c}:left"), t, -c, t);
                        }
                    }
                }
            }
        }
    }
    emit(cli, &out)
}
