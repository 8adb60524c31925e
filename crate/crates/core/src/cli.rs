//! The `unisvar` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::ReductionSystem;
use crate::enumerate::{self, Options};
use crate::error::{Error, Result};
use crate::grassmann::{self, Chart};
use crate::io::{self, json};
use crate::modvar;
use crate::uniserial::{self, Mast, SimpleSequence, VarietyPoint};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "unisvar", version, about = "Uniserial varieties of quiver algebras")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of candidate tuples per mast (default: $UNISVAR_BUDGET or 2^22).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized isomorphism tests.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Quiver file in the line format.
    #[arg(long)]
    quiver: PathBuf,
    /// Composition series, e.g. `1,2,3`.
    #[arg(long)]
    series: String,
}

#[derive(Debug, Args)]
struct MastInput {
    #[command(flatten)]
    input: Input,
    /// Mast as a path, e.g. `b*c`.
    #[arg(long)]
    mast: String,
}

#[derive(Debug, Args)]
struct PointInput {
    #[command(flatten)]
    mast: MastInput,
    /// Detour coordinates, e.g. `k[1;b;0]=3`; omitted ones are zero.
    #[arg(long, default_value = "")]
    point: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the masts of the series.
    Masts(Input),
    /// Detour table of a mast.
    Detours(MastInput),
    /// Defining equations of the chart of a mast.
    Equations(MastInput),
    /// All points of the chart over GF(q).
    Enumerate(MastInput),
    /// Points grouped by isomorphism type of their modules.
    Fibres(MastInput),
    /// The normalized matrices of a point.
    Module(PointInput),
    /// The submodule of Λe attached to a point.
    Psi(PointInput),
    /// Plücker coordinates of that submodule.
    Pluecker(PointInput),
    /// Count the submodules with uniserial quotient over all charts.
    GuniCount(Input),
    /// Certificate that one uniserial module does not degenerate to another.
    Degen {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_system(path: &PathBuf) -> Result<ReductionSystem> {
    io::parse_quiver_file(&read(path)?)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
        .to_system()
}

fn load(input: &Input) -> Result<(ReductionSystem, SimpleSequence)> {
    let sys = load_system(&input.quiver)?;
    let series = SimpleSequence::parse(sys.quiver(), &input.series)?;
    Ok((sys, series))
}

fn find_mast(sys: &ReductionSystem, series: &SimpleSequence, name: &str) -> Result<Mast> {
    let path = sys.quiver().parse_path(name)?;
    if sys.quiver().vertex_sequence(&path) != series.vertices() {
        return Err(Error::NotAMast(name.to_string()));
    }
    Mast::new(sys, path)
}

fn load_mast(input: &MastInput) -> Result<(ReductionSystem, Mast)> {
    let (sys, series) = load(&input.input)?;
    let mast = find_mast(&sys, &series, &input.mast)?;
    Ok((sys, mast))
}

fn load_point(input: &PointInput) -> Result<(ReductionSystem, Mast, VarietyPoint)> {
    let (sys, mast) = load_mast(&input.mast)?;
    let k = VarietyPoint::parse(sys.quiver(), sys.field(), &input.point)?;
    k.to_vec(&mast, sys.field())?;
    Ok((sys, mast, k))
}

struct Report {
    text: String,
    json: Value,
}

fn matrix_text(m: &crate::linalg::Matrix) -> String {
    (0..m.rows())
        .map(|r| {
            let row: Vec<String> = m.row(r).iter().map(short_scalar).collect();
            format!("  [{}]\n", row.join(" "))
        })
        .collect()
}

/// Integers without the `/1` denominator, for text output.
fn short_scalar(s: &crate::scalar::Scalar) -> String {
    let t = s.to_string();
    t.strip_suffix("/1").map(str::to_string).unwrap_or(t)
}

fn execute(cli: &Cli) -> Result<Report> {
    let mut opts = Options::default().with_jobs(cli.jobs);
    if let Some(b) = cli.budget {
        opts = opts.with_budget(b);
    }
    match &cli.command {
        Command::Masts(input) => {
            let (sys, series) = load(input)?;
            let names: Vec<String> = uniserial::masts(&sys, &series)
                .iter()
                .map(|m| m.name(sys.quiver()))
                .collect();
            Ok(Report {
                text: names.iter().map(|n| format!("{n}\n")).collect(),
                json: json::with_header(sys.field(), "masts", json!(names)),
            })
        }
        Command::Detours(input) => {
            let (sys, mast) = load_mast(input)?;
            let q = sys.quiver();
            let rows: Vec<Value> = mast
                .detours()
                .iter()
                .map(|d| {
                    json!({
                        "arrow": q.arrow(d.arrow()).name,
                        "position": d.position(),
                        "indices": d.indices(),
                        "coordinates": d.coordinates().map(|c| c.name(q)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let text = mast
                .detours()
                .iter()
                .map(|d| {
                    let idx: Vec<String> = d.indices().iter().map(usize::to_string).collect();
                    format!("{} at {}: I = {{{}}}\n", q.arrow(d.arrow()).name, d.position(), idx.join(","))
                })
                .collect();
            Ok(Report {
                text,
                json: json::with_header(sys.field(), "detours", json!(rows)),
            })
        }
        Command::Equations(input) => {
            let (sys, mast) = load_mast(input)?;
            let eqs = uniserial::variety_equations(&sys, &mast);
            let mut text = format!("variables: {}\n", eqs.names().join(" "));
            for p in eqs.equations() {
                text.push_str(&format!("{} = 0\n", p.display(eqs.names())));
            }
            Ok(Report {
                text,
                json: json::with_header(sys.field(), "system", json::polynomial_system(&eqs)),
            })
        }
        Command::Enumerate(input) => {
            let (sys, mast) = load_mast(input)?;
            let pts = enumerate::enumerate_points(&sys, &mast, &opts)?;
            let q = sys.quiver();
            let mut text = format!("{} points\n", pts.len());
            for k in &pts {
                text.push_str(&format!("{}\n", point_text(&sys, &mast, k)));
            }
            let list: Vec<Value> = pts.iter().map(|k| json::point(q, &mast, sys.field(), k)).collect();
            Ok(Report {
                text,
                json: json::with_header(sys.field(), "points", json!(list)),
            })
        }
        Command::Fibres(input) => {
            let (sys, mast) = load_mast(input)?;
            let part = enumerate::fibres(&sys, &mast, &opts)?;
            let q = sys.quiver();
            let mut text = format!("{} fibres\n", part.len());
            let mut list = Vec::new();
            for f in &part.fibres {
                let pts: Vec<String> = f.points.iter().map(|k| point_text(&sys, &mast, k)).collect();
                text.push_str(&format!("{}\n", pts.join(" | ")));
                list.push(json!({
                    "points": f.points.iter().map(|k| json::point(q, &mast, sys.field(), k)).collect::<Vec<_>>(),
                    "representative": json::module_body(q, &f.representative),
                }));
            }
            Ok(Report {
                text,
                json: json::with_header(sys.field(), "fibres", json!(list)),
            })
        }
        Command::Module(input) => {
            let (sys, mast, k) = load_point(input)?;
            if !uniserial::evaluate_point(&uniserial::variety_equations(&sys, &mast), &k)? {
                return Err(Error::NotOnVariety);
            }
            let x = modvar::theorem_d_matrices(&sys, &mast, &k)?;
            let q = sys.quiver();
            let mut text = String::new();
            for (a, m) in q.arrows().iter().zip(x.arrows()) {
                text.push_str(&format!("{}:\n{}", a.name, matrix_text(m)));
            }
            Ok(Report {
                text,
                json: json::module(q, &x),
            })
        }
        Command::Psi(input) => {
            let (sys, mast, k) = load_point(input)?;
            let c = grassmann::psi_p(&sys, &mast, &k)?;
            let basis: Vec<String> = sys
                .left_module_basis(mast.source())
                .iter()
                .map(|p| sys.quiver().path_name(p))
                .collect();
            let mut text = format!("basis: {}\n", basis.join(" "));
            for r in c.rows() {
                let row: Vec<String> = r.iter().map(short_scalar).collect();
                text.push_str(&format!("[{}]\n", row.join(" ")));
            }
            let mut body = json::subspace(&c);
            body["basis"] = json!(basis);
            Ok(Report {
                text,
                json: json::with_header(sys.field(), "subspace", body),
            })
        }
        Command::Pluecker(input) => {
            let (sys, mast, k) = load_point(input)?;
            let chart = Chart::new(&sys, &mast)?;
            let c = chart.psi(&k)?;
            let pv = chart.pluecker(&c)?;
            let labels = wedge_labels(&sys, &chart);
            let mut text = String::new();
            for (s, v) in pv.subsets().iter().zip(pv.values()) {
                let names: Vec<&str> = s.iter().map(|&i| labels[i].as_str()).collect();
                text.push_str(&format!("{{{}}} {}\n", names.join(","), short_scalar(v)));
            }
            Ok(Report {
                text,
                json: json::with_header(
                    sys.field(),
                    "pluecker",
                    json!({ "basis": labels, "coordinates": json::pluecker(&pv, &labels), "principal": pv.in_principal_chart() }),
                ),
            })
        }
        Command::GuniCount(input) => {
            let (sys, series) = load(input)?;
            let g = enumerate::count_guni_points(&sys, &series, &opts)?;
            let q = sys.quiver();
            let mut text = format!("{}\n", g.total);
            for c in &g.charts {
                text.push_str(&format!("chart {}: {}\n", q.path_name(&c.mast), c.points));
            }
            let charts: Vec<Value> = g
                .charts
                .iter()
                .map(|c| json!({ "mast": q.path_name(&c.mast), "points": c.points }))
                .collect();
            Ok(Report {
                text,
                json: json::with_header(
                    sys.field(),
                    "count",
                    json!({ "total": g.total, "charts": charts, "overlaps": g.overlaps }),
                ),
            })
        }
        Command::Degen { quiver, left, right } => {
            let sys = load_system(quiver)?;
            let u = json::parse_module(&sys, &read(left)?)?;
            let u2 = json::parse_module(&sys, &read(right)?)?;
            let cert = modvar::no_degeneration_certificate_seeded(&u, &u2, cli.seed)?;
            let v = json::certificate(sys.quiver(), &cert);
            // Certificates are emitted as JSON in every format.
            Ok(Report {
                text: json::render(&v),
                json: v,
            })
        }
    }
}

fn point_text(sys: &ReductionSystem, mast: &Mast, k: &VarietyPoint) -> String {
    let q = sys.quiver();
    let parts: Vec<String> = mast
        .coordinates()
        .iter()
        .map(|c| format!("{}={}", c.name(q), short_scalar(&k.value(sys.field(), c))))
        .collect();
    if parts.is_empty() {
        "()".into()
    } else {
        parts.join(",")
    }
}

fn wedge_labels(sys: &ReductionSystem, chart: &Chart<'_>) -> Vec<String> {
    let q = sys.quiver();
    chart
        .special_basis()
        .entries()
        .iter()
        .map(|b| q.path_name(&b.path))
        .chain(chart.mast().subpaths().iter().map(|p| q.path_name(p)))
        .collect()
}

/// Runs the command line on `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code: 0 on success, 1 on
/// a domain error, 2 on a usage error.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => json::render(&report.json),
            };
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(e) => {
            let v = json!({ "error": error_kind(&e), "message": e.to_string() });
            let msg = match cli.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => json::render(&v),
            };
            let _ = err.write_all(msg.as_bytes());
            1
        }
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("").to_string()
}
