use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use deltoid::algebra::{format_complex, parse_complex, solve_tangent_cubic};
use deltoid::curve::{lambda_alpha, pedal_point, region_k, trace_hypocycloid};
use deltoid::dynamics::{
    apply_f, green_closed, green_iterative, julia_verdict, GREEN_ESCAPE_RADIUS,
};
use deltoid::monodromy::{relation_report, MonodromyAction, Word, MAX_RELATION_DEPTH};
use deltoid::toolkit::{
    emit, json_string, render_green_slice, render_julia_slice, run_suite, sample_pedal_cloud,
    Artifact, Axis, Format, SliceSpec, Suite,
};
use deltoid::{AffinePoint, Error, C64};

#[derive(Parser)]
#[command(
    name = "deltoid",
    version,
    about = "Dynamics of f(x, y) = (y² − 2x, x² − 2y)"
)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Green,
    Julia,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Curve,
    Dynamics,
    Fatou,
    Monodromy,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate f at a point.
    EvalF {
        #[arg(long, value_parser = parse_point)]
        point: AffinePoint,
    },
    /// Roots of the tangent cubic at a point.
    Roots {
        #[arg(long, value_parser = parse_point)]
        point: AffinePoint,
    },
    /// Green function, closed form or by iteration.
    Green {
        #[arg(long, value_parser = parse_point)]
        point: AffinePoint,
        #[arg(long, value_name = "N")]
        iterative: Option<u32>,
    },
    /// Julia-set verdict for a point.
    Julia {
        #[arg(long, value_parser = parse_point)]
        point: AffinePoint,
    },
    /// Pedal curve of the real deltoid, as points of C² on the slice through α.
    Pedal {
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        alpha: C64,
        #[arg(long, default_value_t = 720)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a slice of C².
    Render {
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        alpha: C64,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true, default_value = "0")]
        center: C64,
        #[arg(long)]
        halfwidth: f64,
        #[arg(long, default_value_t = 512)]
        res: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Band width for julia mode; defaults to half a pixel diagonal.
        #[arg(long)]
        band: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample the real deltoid.
    TraceDeltoid {
        #[arg(long, default_value_t = 720)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monodromy of the generator loops and the group relations.
    Monodromy {
        #[arg(long)]
        depth: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_c64(text: &str) -> Result<C64, String> {
    parse_complex(text).map_err(|e| e.to_string())
}

fn parse_point(text: &str) -> Result<AffinePoint, String> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| format!("expected \"x,y\", got {text:?}"))?;
    Ok(AffinePoint::new(parse_c64(x.trim())?, parse_c64(y.trim())?))
}

fn fmt_point(p: &AffinePoint) -> String {
    format!("({}, {})", format_complex(p.x), format_complex(p.y))
}

fn complex_json(z: C64) -> serde_json::Value {
    json!(format_complex(z))
}

fn point_json(p: &AffinePoint) -> serde_json::Value {
    json!([format_complex(p.x), format_complex(p.y)])
}

/// Outcome of a subcommand: what to print and whether every check passed.
struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Self {
            text,
            json: format!("{json:#}\n"),
            ok: true,
        }
    }
}

fn write_artifact(artifact: &Artifact<'_>, path: &Path) -> Result<(), Error> {
    emit(artifact, path, Format::from_path(path)?)
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::EvalF { point } => {
            let image = apply_f(&point);
            Ok(Outcome::ok(
                fmt_point(&image),
                json!({"point": point_json(&point), "image": point_json(&image)}),
            ))
        }
        Command::Roots { point } => {
            let cubic = solve_tangent_cubic(&point);
            let text = cubic
                .roots
                .iter()
                .map(|&t| format!("{}  |t| = {}", format_complex(t), t.norm()))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(
                text,
                json!({
                    "point": point_json(&point),
                    "roots": cubic.roots.map(complex_json),
                    "residuals": cubic.residuals,
                    "product": complex_json(cubic.product()),
                }),
            ))
        }
        Command::Green { point, iterative } => {
            let closed = green_closed(&point);
            let iter = iterative
                .map(|n| green_iterative(&point, n, GREEN_ESCAPE_RADIUS))
                .transpose()?;
            let mut text = format!("G = {closed}");
            if let Some(g) = iter {
                text.push_str(&format!("\niterative = {g}"));
            }
            Ok(Outcome::ok(
                text,
                json!({"point": point_json(&point), "green": closed, "iterative": iter}),
            ))
        }
        Command::Julia { point } => {
            let v = julia_verdict(&point);
            let k = region_k(&point, 1e-7)?;
            Ok(Outcome::ok(
                format!(
                    "distance to S1 = {}\nquartic residual = {}\nnormalized = {}\nin K = {}",
                    v.distance_to_circle,
                    v.quartic_residual,
                    v.normalized_quartic_residual(),
                    k.inside
                ),
                json!({
                    "point": point_json(&point),
                    "distance_to_circle": v.distance_to_circle,
                    "quartic_residual": v.quartic_residual,
                    "normalized_quartic_residual": v.normalized_quartic_residual(),
                    "in_k": k.inside,
                }),
            ))
        }
        Command::Pedal {
            alpha,
            samples,
            out,
        } => {
            sample_pedal_cloud(alpha, samples)?;
            let points = (0..samples)
                .map(|k| {
                    let t = C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / samples as f64);
                    Ok(lambda_alpha(alpha, pedal_point(alpha, t)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            write_artifact(&Artifact::Cloud(&points), &out)?;
            Ok(Outcome::ok(
                format!("wrote {} pedal points to {}", points.len(), out.display()),
                json!({"samples": points.len(), "out": out}),
            ))
        }
        Command::Render {
            axis,
            alpha,
            center,
            halfwidth,
            res,
            mode,
            band,
            out,
        } => {
            let axis = match axis {
                AxisArg::X => Axis::X,
                AxisArg::Y => Axis::Y,
            };
            let spec = SliceSpec::new(axis, alpha, center, halfwidth, res)?;
            let format = Format::from_path(&out)?;
            if !matches!(format, Format::Ppm | Format::Svg) {
                return Err(Error::InvalidArgument(
                    "render output must be .ppm or .svg".into(),
                ));
            }
            let (image, overlay) = match mode {
                Mode::Green => (render_green_slice(&spec)?, None),
                Mode::Julia => (
                    render_julia_slice(&spec, band.unwrap_or_else(|| spec.default_band()))?,
                    Some(sample_pedal_cloud(alpha, 720)?),
                ),
            };
            emit(
                &Artifact::Image {
                    image: &image,
                    spec: &spec,
                    overlay: overlay.as_deref(),
                },
                &out,
                format,
            )?;
            Ok(Outcome::ok(
                format!(
                    "wrote {}x{} image to {} ({} marked pixels)",
                    image.width,
                    image.height,
                    out.display(),
                    image.marked_count()
                ),
                json!({"width": image.width, "height": image.height, "marked": image.marked_count(), "out": out}),
            ))
        }
        Command::TraceDeltoid { samples, out } => {
            let points = trace_hypocycloid(samples)?;
            write_artifact(&Artifact::Cloud(&points), &out)?;
            Ok(Outcome::ok(
                format!("wrote {} deltoid points to {}", points.len(), out.display()),
                json!({"samples": points.len(), "out": out}),
            ))
        }
        Command::Monodromy {
            depth,
            word,
            report,
        } => {
            if !(1..=MAX_RELATION_DEPTH).contains(&depth) {
                return Err(Error::InvalidArgument(format!(
                    "depth must lie in 1..={MAX_RELATION_DEPTH}"
                )));
            }
            let word: Option<Word> = word.as_deref().map(str::parse).transpose()?;
            let action = MonodromyAction::new(depth)?;
            let relations = relation_report(&action);
            if let Some(path) = &report {
                write_artifact(&Artifact::report(&relations)?, path)?;
            }
            let mut text = String::new();
            for l in &relations.levels {
                text.push_str(&format!(
                    "level {}: relations {}, order of 1 2 3 = {}\n",
                    l.level,
                    if l.relations_ok() { "ok" } else { "FAILED" },
                    l.coxeter_element_order
                ));
            }
            let mut out = json!({"relations": relations});
            if let Some(w) = &word {
                let perm = action.word_perm(w, depth);
                text.push_str(&format!("word \"{w}\": {perm}  (order {})\n", perm.order()));
                out["word"] = json!({
                    "word": w.to_string(),
                    "images": perm,
                    "cycles": perm.to_string(),
                    "order": perm.order(),
                });
            }
            let ok = relations.relations_ok() && relations.coxeter_order_increasing;
            Ok(Outcome {
                text: text.trim_end().to_string(),
                json: json_string(&out)?,
                ok,
            })
        }
        Command::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Curve => Suite::Curve,
                SuiteArg::Dynamics => Suite::Dynamics,
                SuiteArg::Fatou => Suite::Fatou,
                SuiteArg::Monodromy => Suite::Monodromy,
                SuiteArg::All => Suite::All,
            };
            let report = run_suite(suite, seed)?;
            let text = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{} {:<28} worst {:e} (tol {:e}, n = {})",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.worst,
                        c.tolerance,
                        c.samples
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome {
                text,
                ok: report.passed,
                json: json_string(&report)?,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            if cli.json {
                print!("{}", outcome.json);
            } else {
                println!("{}", outcome.text);
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(e, Error::InvalidArgument(_) | Error::ParseComplex(_));
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
