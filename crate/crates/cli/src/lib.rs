//! `milnor`: model I/O, Milnor-fibre computations, blow-ups and log-space
//! demonstrations from the command line.
//!
//! Exit codes: 0 success (or equal), 1 a computed inequality, 2 bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use milnor_core::blowup::{
    apply_blowup, check_invariance, load_center, suspicious_classes, CenterSpec, InvarianceReport,
};
use milnor_core::logspace::{
    base_from_json, classify, monodromy, point_from_json, point_to_json, recover_at, sign_f,
    simplex_representative, xi, LogChart,
};
use milnor_core::milnor::{
    acampo_zeta, keyed_class, milnor_fibre_euler, motivic_terms, naive_absolute_class,
};
use milnor_core::motivic_ring::{KeyedClass, LefschetzPoly, ZetaFactorization};
use milnor_core::nc_model::{builtin_example, census, load_model, save_model, NCModel, PieceTag};

#[derive(Parser, Debug)]
#[command(
    name = "milnor",
    version,
    about = "Motivic and topological Milnor fibres from resolution data"
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a model document against the structural invariants
    Validate { model: PathBuf },
    /// Decompose the log-space fibre over a stratum into top/mot/mixed pieces
    Census {
        model: PathBuf,
        /// Comma-separated component ids
        #[arg(long, value_delimiter = ',', required = true)]
        stratum: Vec<String>,
    },
    /// Monodromy zeta function (A'Campo)
    Zeta { model: PathBuf },
    /// Euler characteristic of the Milnor fibre
    Euler { model: PathBuf },
    /// Motivic Milnor fibre: terms, keyed class and naive absolute class
    Motivic { model: PathBuf },
    /// Blow up a center and write the new model
    Blowup {
        model: PathBuf,
        #[arg(long)]
        center: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare realizations before and after a blow-up (exit 1 if they differ)
    Invariance {
        model: PathBuf,
        #[arg(long)]
        center: PathBuf,
    },
    /// Recover multiplicities and the unit phase from sign f at a base point
    Recover {
        model: PathBuf,
        #[arg(long)]
        chart: usize,
        /// Base point: JSON text or a file holding it
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Trace sign f along the monodromy flow h_λ, λ in [0, 1]
    MonodromyDemo {
        model: PathBuf,
        #[arg(long)]
        chart: usize,
        /// Point: JSON text or a file holding it
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    /// Write a built-in model (smooth, power_<N>, xy, x<a>_y<b>, cusp_resolved)
    Examples {
        #[arg(long)]
        name: String,
        /// Output path; standard output if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Why a command stopped early.
enum Stop {
    Input(String),
    Unequal,
}

impl<E: std::fmt::Display> From<E> for Stop {
    fn from(e: E) -> Self {
        Stop::Input(e.to_string())
    }
}

type Outcome = Result<(), Stop>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
}

impl Io<'_> {
    fn text(&mut self, s: &str) -> Outcome {
        self.out.write_all(s.as_bytes())?;
        if !s.ends_with('\n') {
            self.out.write_all(b"\n")?;
        }
        Ok(())
    }

    fn value(&mut self, v: &Value) -> Outcome {
        let s = serde_json::to_string_pretty(v)?;
        self.text(&s)
    }

    /// Emits `v` in JSON mode, `text()` otherwise.
    fn emit(&mut self, v: impl FnOnce() -> Value, text: impl FnOnce() -> String) -> Outcome {
        if self.json {
            self.value(&v())
        } else {
            self.text(&text())
        }
    }

    fn warn(&mut self, msg: &str) -> Outcome {
        writeln!(self.err, "warning: {msg}")?;
        Ok(())
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                return 2;
            }
            let _ = out.write_all(rendered.as_bytes());
            return 0;
        }
    };
    let mut io = Io {
        out,
        err,
        json: cli.json,
    };
    match dispatch(cli.command, &mut io) {
        Ok(()) => 0,
        Err(Stop::Unequal) => 1,
        Err(Stop::Input(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Stop> {
    std::fs::read_to_string(path).map_err(|e| Stop::Input(format!("{}: {e}", path.display())))
}

fn model_at(path: &Path) -> Result<NCModel, Stop> {
    load_model(&read(path)?).map_err(|e| Stop::Input(format!("{}: {e}", path.display())))
}

fn center_at(path: &Path) -> Result<CenterSpec, Stop> {
    load_center(&read(path)?).map_err(|e| Stop::Input(format!("{}: {e}", path.display())))
}

/// Inline JSON, or the contents of the named file.
fn inline_or_file(arg: &str) -> Result<String, Stop> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(arg.to_string())
    } else {
        read(Path::new(arg))
    }
}

fn class_json(p: &LefschetzPoly) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn keyed_json(k: &KeyedClass) -> Value {
    k.entries()
        .iter()
        .map(|(key, p)| (key.to_string(), class_json(p)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn zeta_json(z: &ZetaFactorization) -> Value {
    json!({
        "factors": z.factors().iter().map(|(n, e)| json!({"N": n, "exponent": e})).collect::<Vec<_>>(),
        "text": z.to_string(),
    })
}

/// Values below the printed precision are shown as `0`, never `-0`.
fn unsigned_zero(x: f64) -> f64 {
    if x.abs() < 5e-13 {
        0.0
    } else {
        x
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Validate { model } => validate(&model, io),
        Command::Census { model, stratum } => {
            let m = model_at(&model)?;
            let ids: Vec<&str> = stratum.iter().map(String::as_str).collect();
            let c = census(&m, &ids)?;
            io.emit(
                || {
                    json!({
                        "stratum": c.subset,
                        "pieces": c.pieces.iter().map(|p| json!({
                            "tag": p.tag.as_str(), "finite": p.finite, "label": p.label,
                        })).collect::<Vec<_>>(),
                    })
                },
                || {
                    let mut s = format!(
                        "stratum {{{}}}: {} pieces\n",
                        c.subset.join(","),
                        c.pieces.len()
                    );
                    for p in &c.pieces {
                        let _ = writeln!(
                            s,
                            "{:<5} {}  finite={{{}}}",
                            p.tag.as_str(),
                            p.label,
                            p.finite.join(",")
                        );
                    }
                    let _ = write!(
                        s,
                        "top {} mot {} mixed {}",
                        c.count(PieceTag::Top),
                        c.count(PieceTag::Mot),
                        c.count(PieceTag::Mixed)
                    );
                    s
                },
            )
        }
        Command::Zeta { model } => {
            let z = acampo_zeta(&model_at(&model)?)?;
            io.emit(|| zeta_json(&z), || z.to_string())
        }
        Command::Euler { model } => {
            let chi = milnor_fibre_euler(&model_at(&model)?)?;
            io.emit(|| json!({"euler": chi.to_string()}), || chi.to_string())
        }
        Command::Motivic { model } => motivic(&model, io),
        Command::Blowup { model, center, out } => {
            let m = model_at(&model)?;
            let c = center_at(&center)?;
            let blown = apply_blowup(&m, &c)?;
            for v in suspicious_classes(&blown) {
                io.warn(&v.to_string())?;
            }
            std::fs::write(&out, save_model(&blown))
                .map_err(|e| Stop::Input(format!("{}: {e}", out.display())))?;
            let e = blown
                .component(&c.new_component_id)
                .expect("new component present");
            io.emit(
                || {
                    json!({
                        "out": out.display().to_string(),
                        "new_component": e.id,
                        "multiplicity": e.multiplicity,
                        "strata": blown.strata.len(),
                    })
                },
                || {
                    format!(
                        "wrote {}: new component {} with multiplicity {}, {} strata",
                        out.display(),
                        e.id,
                        e.multiplicity,
                        blown.strata.len()
                    )
                },
            )
        }
        Command::Invariance { model, center } => {
            let m = model_at(&model)?;
            let c = center_at(&center)?;
            let r = check_invariance(&m, &c)?;
            for w in &r.warnings {
                io.warn(&w.to_string())?;
            }
            io.emit(|| invariance_json(&r), || r.to_string())?;
            if r.all_equal() {
                Ok(())
            } else {
                Err(Stop::Unequal)
            }
        }
        Command::Recover {
            model,
            chart,
            point,
            samples,
        } => recover(&model, chart, &point, samples, io),
        Command::MonodromyDemo {
            model,
            chart,
            point,
            steps,
        } => monodromy_demo(&model, chart, &point, steps, io),
        Command::Examples { name, out } => {
            let m = builtin_example(&name)?;
            let text = save_model(&m);
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Stop::Input(format!("{}: {e}", path.display())))?;
                    io.emit(
                        || json!({"name": name, "out": path.display().to_string()}),
                        || format!("wrote {} to {}", name, path.display()),
                    )
                }
                None => io.text(&text),
            }
        }
    }
}

fn validate(path: &Path, io: &mut Io) -> Outcome {
    let m = model_at(path)?;
    let violations = m.validate();
    if !violations.is_empty() {
        for v in &violations {
            writeln!(io.err, "{v}")?;
        }
        if io.json {
            io.value(&json!({
                "valid": false,
                "violations": violations.iter().map(|v| json!({"locator": v.locator, "message": v.message})).collect::<Vec<_>>(),
            }))?;
        }
        return Err(Stop::Input(format!("{} violation(s)", violations.len())));
    }
    io.emit(
        || {
            json!({
                "valid": true,
                "ambient_dim": m.ambient_dim,
                "mode": m.mode.as_str(),
                "components": m.components.len(),
                "strata": m.strata.len(),
                "charts": m.charts.len(),
            })
        },
        || {
            format!(
                "valid: ambient_dim {}, {} mode, {} components, {} strata, {} charts",
                m.ambient_dim,
                m.mode.as_str(),
                m.components.len(),
                m.strata.len(),
                m.charts.len()
            )
        },
    )
}

fn motivic(path: &Path, io: &mut Io) -> Outcome {
    let m = model_at(path)?;
    let terms = motivic_terms(&m)?;
    let keyed = keyed_class(&m)?;
    let naive = naive_absolute_class(&m)?;
    io.emit(
        || {
            json!({
                "terms": terms.iter().map(|t| json!({
                    "stratum": t.subset,
                    "sign": t.sign,
                    "gcd": t.gcd_key,
                    "class": class_json(&t.stratum_class),
                    "torus_exponent": t.torus_exponent,
                })).collect::<Vec<_>>(),
                "keyed": keyed_json(&keyed),
                "naive_absolute": class_json(&naive),
            })
        },
        || {
            let mut s = String::from("terms:\n");
            for t in &terms {
                let _ = writeln!(
                    s,
                    "  {{{}}}  sign {:+}  N_J {}  class {}  torus (L-1)^{}",
                    t.subset.join(","),
                    t.sign,
                    t.gcd_key,
                    t.stratum_class,
                    t.torus_exponent
                );
            }
            let _ = writeln!(s, "keyed: {keyed}");
            let _ = write!(s, "naive absolute: {naive}");
            s
        },
    )
}

fn invariance_json(r: &InvarianceReport) -> Value {
    let side = |x: &milnor_core::blowup::Realizations| {
        json!({
            "zeta": zeta_json(&x.zeta),
            "euler": x.euler.to_string(),
            "naive_absolute": class_json(&x.naive_class),
            "keyed": keyed_json(&x.keyed),
        })
    };
    json!({
        "before": side(&r.before),
        "after": side(&r.after),
        "zeta_equal": r.zeta_equal,
        "euler_equal": r.euler_equal,
        "naive_equal": r.naive_equal,
        "keyed_delta": keyed_json(&r.keyed_delta),
        "warnings": r.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "invariant": r.all_equal(),
    })
}

fn chart_of(m: &NCModel, k: usize) -> Result<LogChart, Stop> {
    Ok(LogChart::from_model(m, k)?)
}

fn recover(path: &Path, k: usize, point: &str, samples: usize, io: &mut Io) -> Outcome {
    let m = model_at(path)?;
    let chart = chart_of(&m, k)?;
    let base = base_from_json(&inline_or_file(point)?)?;
    let r = recover_at(&chart, &base, samples)?;
    let ids = &m.charts[k].divisor_coords;
    let rows: Vec<(usize, &str, i64, u32)> = r
        .windings
        .iter()
        .map(|(&i, &w)| (i, ids[&i].as_str(), w, chart.multiplicity(i)))
        .collect();
    let all_match = rows.iter().all(|&(_, _, w, n)| w == i64::from(n));
    io.emit(
        || {
            json!({
                "windings": rows.iter().map(|&(i, id, w, n)| json!({
                    "coord": i, "component": id, "winding": w, "multiplicity": n,
                })).collect::<Vec<_>>(),
                "phase": complex_json(r.phase),
                "matches_model": all_match,
            })
        },
        || {
            let mut s = String::new();
            for &(i, id, w, n) in &rows {
                let mark = if w == i64::from(n) { "ok" } else { "MISMATCH" };
                let _ = writeln!(s, "x{i} ({id}): winding {w}, model multiplicity {n} {mark}");
            }
            let _ = write!(
                s,
                "sign u_J = {:.12} {:+.12}i (arg/2π = {:.12})",
                unsigned_zero(r.phase.re),
                unsigned_zero(r.phase.im),
                unsigned_zero(r.phase.arg() / std::f64::consts::TAU)
            );
            s
        },
    )?;
    if all_match {
        Ok(())
    } else {
        Err(Stop::Unequal)
    }
}

fn monodromy_demo(path: &Path, k: usize, point: &str, steps: usize, io: &mut Io) -> Outcome {
    if steps == 0 {
        return Err(Stop::Input("--steps must be positive".into()));
    }
    let m = model_at(path)?;
    let chart = chart_of(&m, k)?;
    let p = point_from_json(&chart, &inline_or_file(point)?)?;
    let on_simplex = if classify(&p).tag == PieceTag::Top {
        io.warn("point lies in the topological part: ξ = 0 and h_λ does not move it")?;
        p.clone()
    } else {
        simplex_representative(&p)?
    };
    let s0 = sign_f(&on_simplex)?;
    let mut rows = Vec::with_capacity(steps + 1);
    for step in 0..=steps {
        let lambda = step as f64 / steps as f64;
        let h = monodromy(&on_simplex, lambda);
        let s = sign_f(&h)?;
        let expected = Complex64::from_polar(1.0, std::f64::consts::TAU * lambda) * s0;
        rows.push((lambda, s, (s - expected).norm(), h));
    }
    let xs = xi(&on_simplex);
    io.emit(
        || {
            json!({
                "start": point_to_json(&on_simplex),
                "xi": xs.iter().map(|(i, x)| (i.to_string(), json!(x))).collect::<serde_json::Map<_, _>>(),
                "trace": rows.iter().map(|(l, s, d, h)| json!({
                    "lambda": l, "sign_f": complex_json(*s), "deviation": d, "point": point_to_json(h),
                })).collect::<Vec<_>>(),
            })
        },
        || {
            let mut s = String::new();
            let xi_text: Vec<String> = xs.iter().map(|(i, x)| format!("ξ{i}={x:.9}")).collect();
            let _ = writeln!(s, "simplex representative: {}", xi_text.join(" "));
            for (l, z, d, _) in &rows {
                let _ = writeln!(
                    s,
                    "λ={l:.6}  sign f = {:+.12} {:+.12}i  arg/2π = {:+.9}  |sign f - e^(2πiλ) sign f(p)| = {d:.1e}",
                    unsigned_zero(z.re),
                    unsigned_zero(z.im),
                    unsigned_zero(z.arg() / std::f64::consts::TAU)
                );
            }
            s
        },
    )
}
