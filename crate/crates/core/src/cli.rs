//! The `cdclab` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 time budget exhausted. Diagnostics go to standard error; machine
//! output is JSON on standard output or in the `--out` file.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::apollonian::{self, StackSequence};
use crate::cdc::{self, CdcError, CoverFile, EnumerationLimits, Orientability};
use crate::census::{self, Verdict};
use crate::corpus::{self, CorpusEntry};
use crate::graph::SimpleGraph;
use crate::iso;
use crate::planar_map::PlanarMap;
use crate::surgery::{self, Correspondence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cdclab",
    version,
    about = "Planar maps, surgeries and circuit double covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counts, faces and genus of a graph.
    Show {
        graph: String,
        #[arg(long)]
        json: bool,
    },
    /// The dual map, as planar-map/v1.
    Dual {
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncate one vertex or all of them.
    Truncate {
        graph: String,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        vertex: Option<u64>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        output: SurgeryOutput,
    },
    /// Augment one face (by index) or all of them.
    Augment {
        graph: String,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        face: Option<usize>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        output: SurgeryOutput,
    },
    /// Generate or recognise Apollonian networks.
    #[command(subcommand)]
    Apollonian(ApollonianCommand),
    /// Circuit double covers.
    #[command(subcommand)]
    Cdc(CdcCommand),
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Orientable-cover counts over a corpus, with a verdict.
    Census {
        /// Graph selectors, separated by `;` or given repeatedly.
        #[arg(long)]
        corpus: Vec<String>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SurgeryOutput {
    /// Where to write the resulting map (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the correspondence/v1 bookkeeping.
    #[arg(long)]
    correspondence: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LimitArgs {
    #[arg(long, default_value_t = cdc::DEFAULT_MAX_EDGES)]
    max_edges: usize,
    /// Time budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
}

impl LimitArgs {
    fn limits(&self) -> Result<EnumerationLimits, Failure> {
        let mut l = EnumerationLimits::default().with_max_edges(self.max_edges);
        if let Some(b) = self.budget {
            if !(b.is_finite() && b >= 0.0) {
                return Err(Failure::usage(format!("bad budget {b}")));
            }
            l = l.with_budget(Duration::from_secs_f64(b));
        }
        Ok(l)
    }
}

#[derive(Debug, Subcommand)]
enum ApollonianCommand {
    /// A random Apollonian network with `stacks` stacking steps.
    Generate {
        #[arg(long)]
        stacks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is the graph in a planar-map/v1 file an Apollonian network?
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum CdcCommand {
    /// Enumerate covers: orientable ones by default, every cover with `--all`.
    Enumerate {
        graph: String,
        #[arg(long, conflicts_with = "all")]
        orientable_only: bool,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a cover/v1 file against a graph.
    Validate {
        graph: String,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Translate a cover of the complete truncation back to the graph.
    Translate {
        graph: String,
        #[arg(long)]
        cover: PathBuf,
        /// A stored correspondence; recomputed from the graph if omitted.
        #[arg(long)]
        correspondence: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Dual of the complete truncation vs complete augmentation of the dual.
    Square { graph: String },
    /// Edge classification of random Apollonian networks.
    Prop41 {
        /// Seed range `a..b` (end exclusive).
        #[arg(long)]
        seeds: String,
        /// Stacks per network; default `(seed % 20) + 1`.
        #[arg(long)]
        stacks: Option<usize>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILED,
            message: message.into(),
        }
    }
}

impl From<corpus::CorpusError> for Failure {
    fn from(e: corpus::CorpusError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        let code = match e {
            crate::Error::Cdc(
                CdcError::EdgeLimitExceeded { .. } | CdcError::TimeBudgetExceeded { .. },
            ) => EXIT_BUDGET,
            _ => EXIT_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn lib<T, E: Into<crate::Error>>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::from(e.into()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::failed(format!("cannot write {}: {e}", p.display()))),
        None => {
            say(text);
            Ok(())
        }
    }
}

/// Prints to standard output, ignoring a closed pipe.
fn say(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

/// Runs the command line and returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("cdclab: {}", f.message);
            f.code
        }
    }
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Show { graph, json } => show(&graph, json),
        Command::Dual { graph, out } => {
            let m = corpus::resolve(&graph)?;
            let d = lib(m.dualize())?;
            write_out(out.as_deref(), &d.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Truncate {
            graph,
            vertex,
            all,
            output,
        } => {
            let m = corpus::resolve(&graph)?;
            let (t, corr) = match (vertex, all) {
                (Some(v), _) => lib(surgery::truncate_vertex(&m, v))?,
                _ => lib(surgery::complete_truncation(&m))?,
            };
            surgery_output(&t, &corr, &output)
        }
        Command::Augment {
            graph,
            face,
            all,
            output,
        } => {
            let m = corpus::resolve(&graph)?;
            let (a, corr) = match (face, all) {
                (Some(i), _) => {
                    let f = m.faces().get(i).ok_or_else(|| {
                        Failure::usage(format!(
                            "face {i} out of range (map has {})",
                            m.face_count()
                        ))
                    })?;
                    lib(surgery::augment_face(&m, f))?
                }
                _ => lib(surgery::complete_augmentation(&m))?,
            };
            surgery_output(&a, &corr, &output)
        }
        Command::Apollonian(cmd) => apollonian_cmd(cmd),
        Command::Cdc(cmd) => cdc_cmd(cmd),
        Command::Verify(cmd) => verify_cmd(cmd),
        Command::Census {
            corpus,
            limits,
            out,
        } => {
            let entries: Vec<CorpusEntry> = if corpus.is_empty() {
                corpus::default_census_corpus()
            } else {
                corpus
                    .iter()
                    .flat_map(|s| s.split(';'))
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(CorpusEntry::new)
                    .collect()
            };
            for e in &entries {
                e.build()?;
            }
            let report = census::run_census(&entries, &limits.limits()?);
            write_out(out.as_deref(), &report.to_json())?;
            for e in &report.entries {
                eprintln!(
                    "{:<24} V={:<3} E={:<3} apollonian_dual={:<5} orientable={}{}",
                    e.name,
                    e.vertices,
                    e.edges,
                    e.is_apollonian_dual,
                    e.orientable_covers,
                    if e.complete { "" } else { "+ (incomplete)" }
                );
            }
            eprintln!("verdict: {:?}", report.verdict);
            Ok(if report.verdict == Verdict::Pass {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

fn show(selector: &str, json: bool) -> Result<i32, Failure> {
    let m = corpus::resolve(selector)?;
    let genus = lib(m.euler_genus())?;
    if json {
        let faces: Vec<Vec<u64>> = (0..m.face_count()).map(|f| m.face_labels(f)).collect();
        let v = json!({
            "graph": selector,
            "vertices": m.vertex_count(),
            "edges": m.edge_count(),
            "faces": m.face_count(),
            "genus": genus,
            "face_boundaries": faces,
            "rotation": m.rotation_lists(),
        });
        say(&to_json(&v));
    } else {
        say(&format!(
            "V={} E={} F={} genus={}",
            m.vertex_count(),
            m.edge_count(),
            m.face_count(),
            genus
        ));
        for f in 0..m.face_count() {
            let walk: Vec<String> = m.face_labels(f).iter().map(u64::to_string).collect();
            say(&format!("face {f}: {}", walk.join(" ")));
        }
    }
    Ok(EXIT_OK)
}

fn surgery_output(
    m: &PlanarMap,
    corr: &Correspondence,
    output: &SurgeryOutput,
) -> Result<i32, Failure> {
    write_out(output.out.as_deref(), &m.to_json())?;
    if let Some(p) = &output.correspondence {
        write_out(Some(p), &corr.to_json())?;
    }
    Ok(EXIT_OK)
}

fn apollonian_cmd(cmd: ApollonianCommand) -> Result<i32, Failure> {
    match cmd {
        ApollonianCommand::Generate { stacks, seed, out } => {
            let seq = StackSequence::random(stacks, seed);
            let m = lib(apollonian::generate_apollonian(&seq))?;
            eprintln!("stack sequence: {seq}");
            write_out(out.as_deref(), &m.to_json())?;
            Ok(EXIT_OK)
        }
        ApollonianCommand::Check { file } => {
            let m =
                PlanarMap::from_json(&read(&file)?).map_err(|e| Failure::usage(e.to_string()))?;
            let g = m.underlying_graph();
            let is = apollonian::is_apollonian(&g);
            let triangles = apollonian::separating_triangles(&g);
            let separating: Vec<[u64; 3]> = triangles.separating().map(|t| t.labels).collect();
            let v = json!({ "apollonian": is, "vertices": g.vertex_count(), "separating_triangles": separating });
            say(&to_json(&v));
            Ok(if is { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn load_cover(
    g: &SimpleGraph,
    path: &Path,
) -> Result<(cdc::CircuitDoubleCover, Option<cdc::OrientedCover>), Failure> {
    let file = CoverFile::from_json(&read(path)?).map_err(|e| Failure::usage(e.to_string()))?;
    file.resolve(g).map_err(|e| Failure::usage(e.to_string()))
}

fn cdc_cmd(cmd: CdcCommand) -> Result<i32, Failure> {
    match cmd {
        CdcCommand::Enumerate {
            graph,
            orientable_only: _,
            all,
            limits,
            out,
        } => {
            let m = corpus::resolve(&graph)?;
            let g = m.underlying_graph();
            let e = lib(cdc::enumerate_covers(&g, !all, &limits.limits()?))?;
            let covers: Vec<CoverFile> = e
                .covers
                .iter()
                .map(|c| CoverFile::new(&graph, &g, &c.cover, c.witness.as_ref()))
                .collect();
            let v = json!({
                "host": graph,
                "orientable_only": e.orientable_only,
                "complete": e.complete,
                "count": e.covers.len(),
                "orientable_count": e.orientable_count(),
                "covers": covers,
            });
            write_out(out.as_deref(), &to_json(&v))?;
            if !e.complete {
                eprintln!(
                    "time budget exhausted; {} covers is a lower bound",
                    e.covers.len()
                );
                return Ok(EXIT_BUDGET);
            }
            Ok(EXIT_OK)
        }
        CdcCommand::Validate { graph, cover } => {
            let m = corpus::resolve(&graph)?;
            let g = m.underlying_graph();
            let (c, _) = load_cover(&g, &cover)?;
            let check = cdc::validate_cover(&g, c.circuits());
            let mut v = json!({
                "valid": check.valid,
                "cycle_cover": check.is_cycle_cover,
                "circuits": c.len(),
                "invalid_circuits": check.invalid_circuits,
                "bad_edges": check.bad_edges,
            });
            if check.valid {
                let chi = g.vertex_count() as i64 - g.edge_count() as i64 + c.len() as i64;
                let o = lib(cdc::check_orientability(&g, &c))?;
                v["euler_characteristic"] = json!(chi);
                v["orientable"] = json!(o.is_orientable());
                v["genus"] = json!(o.witness().map(|_| (2 - chi) / 2));
                if let Orientability::Orientable(w) = &o {
                    v["orientation"] = json!(w.label_parts(&g));
                }
            }
            say(&to_json(&v));
            Ok(if check.valid { EXIT_OK } else { EXIT_FAILED })
        }
        CdcCommand::Translate {
            graph,
            cover,
            correspondence,
            out,
        } => {
            let m = corpus::resolve(&graph)?;
            let (t, computed) = lib(surgery::complete_truncation(&m))?;
            let corr = match correspondence {
                Some(p) => Correspondence::from_json(&read(&p)?)
                    .map_err(|e| Failure::usage(e.to_string()))?,
                None => computed,
            };
            let g = m.underlying_graph();
            let gt = t.underlying_graph();
            let (c, w) = load_cover(&gt, &cover)?;
            let tr = lib(cdc::translate_cover(&g, &gt, &corr, &c, w.as_ref()))?;
            let file = CoverFile::new(&graph, &g, &tr.cover, tr.witness.as_ref());
            let v = json!({ "cover": file, "rules": tr.rules, "cycle_cover": tr.is_cycle_cover });
            write_out(out.as_deref(), &to_json(&v))?;
            Ok(EXIT_OK)
        }
    }
}

fn parse_range(s: &str) -> Result<std::ops::Range<u64>, Failure> {
    let bad = || Failure::usage(format!("bad seed range {s:?}; expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    Ok(a..b)
}

fn verify_cmd(cmd: VerifyCommand) -> Result<i32, Failure> {
    match cmd {
        VerifyCommand::Square { graph } => {
            let m = corpus::resolve(&graph)?;
            let report = lib(iso::verify_square(&m))?;
            say(&to_json(&report));
            Ok(if report.isomorphic && report.bijection_is_isomorphism {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        VerifyCommand::Prop41 { seeds, stacks } => {
            let range = parse_range(&seeds)?;
            let mut failures = Vec::new();
            let mut checked = 0usize;
            for seed in range {
                let k = stacks.unwrap_or((seed % 20) as usize + 1);
                let m = apollonian::generate_random_apollonian(k, seed);
                let report = lib(apollonian::check_edge_classification(&m.underlying_graph()))?;
                checked += 1;
                if !report.pass {
                    failures.push(seed);
                }
            }
            let v = json!({ "checked": checked, "failed_seeds": failures, "pass": failures.is_empty() });
            say(&to_json(&v));
            Ok(if failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}
