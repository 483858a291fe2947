use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use normloc::arith::ivec;
use normloc::gitfan::{self, GradedProjection};
use normloc::json as j;
use normloc::lattice::{self, LocationReport};
use normloc::{normal_fan, Polyhedron, Window};

/// Default for `--seed`; the current commands are deterministic and only
/// echo it.
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "normloc", version, about = "Exact checks for normality and normal location of lattice polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args)]
struct Inputs {
    /// JSON input file; repeat for pairs.
    #[arg(long = "input", required = true)]
    input: Vec<PathBuf>,
}

#[derive(Args)]
struct WindowArg {
    /// Bounding box for unbounded inputs, e.g. "0..10,0..10".
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args)]
struct Weights {
    /// First weight, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    u1: Vec<i64>,
    /// Second weight, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    u2: Vec<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Is sP ∩ ℤᵈ the s-fold sum of P ∩ ℤᵈ for all s ≤ s-max?
    NormalCheck {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 5)]
        s_max: u64,
    },
    /// Is every lattice point of P + Q a sum of lattice points of P and Q?
    LocatedCheck {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Normal fan of a polyhedron.
    NormalFan {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Does N(Q1) refine N(Q2)?
    RefineCheck {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// GIT fan of a graded projection.
    Gitfan {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Fiber polyhedron P(u) of a graded projection.
    Fiber {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        u: Vec<i64>,
    },
    /// Realize two polyhedra as fibers of one projection and compare fan
    /// refinement with the position of the realized weights.
    Realize {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Search for k with P2 holding at sk·u1, sk·u2 for all s ≤ s-max.
    P3Search {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        weights: Weights,
        #[arg(long, default_value_t = 6)]
        k_max: u64,
        #[arg(long, default_value_t = 4)]
        s_max: u64,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Search for k with skQ1, skQ2 normally located for all s ≤ s-max.
    McritSearch {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 6)]
        k_max: u64,
        #[arg(long, default_value_t = 4)]
        s_max: u64,
        #[command(flatten)]
        window: WindowArg,
    },
    /// The triangles kP, kQ with (1, 385k − 2) in kP + kQ but not in the
    /// lattice sum.
    PaperCounterexample {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// P2 for the weights (4,1),(2,1),(1,2),(1,3) at s·(2,1), s·(1,2).
    PaperOldex {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] normloc::Error),
}

/// A report, whether the checked property holds, and a one-line summary.
struct Outcome {
    report: Value,
    holds: bool,
    summary: String,
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn inputs<const N: usize>(inputs: &Inputs) -> Result<[Value; N], CliError> {
    if inputs.input.len() != N {
        return Err(CliError::Usage(format!("expected {N} --input file(s), got {}", inputs.input.len())));
    }
    let values = inputs.input.iter().map(|p| read_json(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(values.try_into().expect("length checked"))
}

fn polyhedra<const N: usize>(i: &Inputs) -> Result<[Polyhedron; N], CliError> {
    let parsed = inputs::<N>(i)?.iter().map(j::parse_polyhedron).collect::<Result<Vec<_>, _>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

fn projection(i: &Inputs) -> Result<GradedProjection, CliError> {
    let [v] = inputs::<1>(i)?;
    Ok(j::parse_projection(&v)?)
}

fn window(w: &WindowArg) -> Result<Option<Window>, CliError> {
    Ok(w.window.as_deref().map(Window::parse).transpose()?)
}

fn location(report: &LocationReport, what: &str) -> Outcome {
    let summary = match &report.witness {
        Some(w) => format!("{what}: {} with witness {w:?}", report.verdict.as_str()),
        None => format!("{what}: {}", report.verdict.as_str()),
    };
    Outcome { report: j::location_report_value(report), holds: report.holds(), summary }
}

fn search(report: &gitfan::SearchReport, what: &str) -> Outcome {
    let summary = match report.k {
        Some(k) => format!("{what}: k = {k} passes every s <= {}", report.s_max),
        None => format!("{what}: no k <= {} passes; first witness {:?}", report.k_max, report.witness()),
    };
    Outcome { report: j::search_report_value(report), holds: report.k.is_some(), summary }
}

fn paper_triangles(k: u64) -> Result<(Polyhedron, Polyhedron), normloc::Error> {
    let p = Polyhedron::from_points(&[&[165, 0], &[175, 0], &[0, 385]])?;
    let q = Polyhedron::from_points(&[&[0, 0], &[35, 0], &[0, 77]])?;
    Ok((p.scale(k)?, q.scale(k)?))
}

fn oldex() -> Result<GradedProjection, normloc::Error> {
    GradedProjection::from_i64(&[&[4, 1], &[2, 1], &[1, 2], &[1, 3]])
}

fn run(cmd: &Command) -> Result<Outcome, CliError> {
    Ok(match cmd {
        Command::NormalCheck { inputs, s_max } => {
            let [p] = polyhedra::<1>(inputs)?;
            location(&lattice::is_normal(&p, *s_max)?, "normality")
        }
        Command::LocatedCheck { inputs, window: w } => {
            let [p, q] = polyhedra::<2>(inputs)?;
            location(&lattice::normally_located(&p, &q, window(w)?.as_ref())?, "normal location")
        }
        Command::NormalFan { inputs } => {
            let [p] = polyhedra::<1>(inputs)?;
            let fan = normal_fan(&p);
            let summary = format!("normal fan: {} maximal cones, {} rays", fan.maximal_cones().len(), fan.rays().len());
            Outcome { report: j::fan_value(&fan), holds: true, summary }
        }
        Command::RefineCheck { inputs } => {
            let [q1, q2] = polyhedra::<2>(inputs)?;
            let (f1, f2) = (normal_fan(&q1), normal_fan(&q2));
            let refines = f1.refines(&f2)?;
            // A maximal cone of the first fan lying in no cone of the second.
            let mut witness = None;
            if !refines {
                for c in f1.maximal_cones() {
                    let mut inside = false;
                    for d in f2.maximal_cones() {
                        if d.contains_cone(c)? {
                            inside = true;
                            break;
                        }
                    }
                    if !inside {
                        witness = Some(j::cone_value(c));
                        break;
                    }
                }
            }
            let summary = format!("N(Q1) {} N(Q2)", if refines { "refines" } else { "does not refine" });
            let report = json!({"refines": refines, "witness_cone": witness, "fan1": j::fan_value(&f1), "fan2": j::fan_value(&f2)});
            Outcome { report, holds: refines, summary }
        }
        Command::Gitfan { inputs } => {
            let g = projection(inputs)?;
            let fan = gitfan::git_fan(&g)?;
            let summary =
                format!("GIT fan: {} maximal cones, verified {}", fan.maximal_cones().len(), fan.fan_verified);
            Outcome { report: j::git_fan_value(&fan), holds: fan.fan_verified, summary }
        }
        Command::Fiber { inputs, u } => {
            let g = projection(inputs)?;
            let u = ivec(u);
            let p = gitfan::fiber(&g, &u)?;
            let r = gitfan::lattice_multiple(&g, &u)?;
            let summary = format!("fiber: {} vertices, lattice multiple {r}", p.vertices().len());
            let report =
                json!({"u": j::ivec_value(&u), "fiber": j::polyhedron_value(&p), "lattice_multiple": j::int_value(&r)});
            Outcome { report, holds: true, summary }
        }
        Command::Realize { inputs } => {
            let [q1, q2] = polyhedra::<2>(inputs)?;
            let rep = gitfan::refinement_iff_interior(&q1, &q2)?;
            let summary = format!(
                "realized with n = {}, m = {}; refines {}, interior {}",
                rep.pair.projection.n(),
                rep.pair.projection.m(),
                rep.refines,
                rep.interior
            );
            let report = json!({
                "pair": j::realized_pair_value(&rep.pair),
                "refines": rep.refines,
                "interior": rep.interior,
                "interior_by_git_cone": rep.interior_by_git_cone,
                "agrees": rep.agrees(),
            });
            Outcome { report, holds: rep.agrees(), summary }
        }
        Command::P3Search { inputs, weights, k_max, s_max, window: w } => {
            let g = projection(inputs)?;
            let rep =
                gitfan::check_p3(&g, &ivec(&weights.u1), &ivec(&weights.u2), *k_max, *s_max, window(w)?.as_ref())?;
            search(&rep, "P3")
        }
        Command::McritSearch { inputs, k_max, s_max, window: w } => {
            let [q1, q2] = polyhedra::<2>(inputs)?;
            search(
                &gitfan::mcrit_search(&q1, &q2, *k_max, *s_max, window(w)?.as_ref())?,
                "normal location of multiples",
            )
        }
        Command::PaperCounterexample { k } => {
            let (p, q) = paper_triangles(*k)?;
            location(&lattice::normally_located(&p, &q, None)?, &format!("{k}P, {k}Q"))
        }
        Command::PaperOldex { s } => {
            let g = oldex()?;
            let s = *s as i64;
            let rep = gitfan::check_p2(&g, &ivec(&[2 * s, s]), &ivec(&[s, 2 * s]), None)?;
            location(&rep, &format!("P2 at s = {s}"))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    match run(&cli.command) {
        Ok(out) => {
            let mut report = out.report;
            if let Value::Object(m) = &mut report {
                m.insert("seed".into(), json!(cli.seed));
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("{}", out.summary);
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
