use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use menger_linkage::bramble::{self, order_lower_bound};
use menger_linkage::crosscheck::{agreement, Routes};
use menger_linkage::dot::{aux_to_dot, digraph_to_dot};
use menger_linkage::generate::{complete_ddp, gnp, random_sequence, rng, two_island, SequenceShape};
use menger_linkage::io::{
    BrambleReport, DdpJson, DigraphJson, InstanceFile, MengerResult, MinmaxResult, ResultFile, RoutingResult,
    SequenceProblem, VerifyReport,
};
use menger_linkage::linkage::route;
use menger_linkage::minmax::{build_aux_d, build_aux_r, build_aux_t, solve};
use menger_linkage::{menger, Digraph, Error, SetFamily, Target, VertexSet};

#[derive(Parser)]
#[command(name = "linkage", version, about = "Disjoint path dualities and congested linkage routing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    D,
    T,
    R,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteChoice {
    Brute,
    Matroid,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Complete,
    TwoIsland,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum disjoint paths and a minimum separator between two vertex sets.
    Menger {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        from: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        to: Vec<usize>,
    },
    /// Solve one path variant on a sequence instance.
    Solve {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        instance: PathBuf,
    },
    /// Route the terminal pairs of a ddp instance.
    Route {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Validate a bramble against its digraph.
    CheckBramble {
        #[arg(long)]
        instance: PathBuf,
        /// Digraph file, when the bramble file carries no graph.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Compare the solver with the exhaustive and matroid routes.
    Verify {
        #[arg(long, conflicts_with = "batch", required_unless_present = "batch")]
        instance: Option<PathBuf>,
        /// Number of random instances to generate instead of reading one.
        #[arg(long)]
        batch: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteChoice,
        /// Restrict to one variant; all applicable variants by default.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Generate an instance file.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        c: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print a digraph, or the auxiliary digraph of a sequence, in DOT.
    ExportDot {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        aux: Option<Mode>,
    },
}

enum Failure {
    Io(String),
    /// A failed check, with the report to print and its violations.
    Invalid(Option<String>, Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInstance(v) => Failure::Invalid(None, v),
            other => Failure::Io(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("LINKAGE_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Io(format!("LINKAGE_SEED is not a seed: {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn read_instance(path: &Path) -> Result<InstanceFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(InstanceFile::parse(&text)?)
}

fn read_graph(path: &Path) -> Result<Digraph, Failure> {
    match read_instance(path)? {
        InstanceFile::Digraph(g) => Ok(g.to_digraph()?),
        InstanceFile::Ddp(d) => Ok(d.graph.to_digraph()?),
        InstanceFile::Bramble(b) if b.graph.is_some() => Ok(b.graph.expect("checked").to_digraph()?),
        _ => Err(Failure::Io(format!("{} holds no digraph", path.display()))),
    }
}

fn read_problem(path: &Path) -> Result<SequenceProblem, Failure> {
    match read_instance(path)? {
        InstanceFile::Sequence(s) => Ok(s.to_problem()?),
        _ => Err(Failure::Io(format!("{} is not a sequence instance", path.display()))),
    }
}

fn target_of(p: &SequenceProblem, mode: Mode) -> Result<Target<'_>, Failure> {
    let missing = |what: &str| Failure::Io(format!("the instance has no {what}"));
    Ok(match mode {
        Mode::D => Target::D(p.targets.as_ref().ok_or_else(|| missing("targets"))?),
        Mode::T => Target::T(p.bags.as_ref().ok_or_else(|| missing("bags"))?),
        Mode::R => Target::R(p.bags.as_ref().ok_or_else(|| missing("bags"))?),
    })
}

fn run_menger(graph: &Path, from: &[usize], to: &[usize]) -> Outcome {
    let g = read_graph(graph)?;
    let a: VertexSet = from.iter().copied().collect();
    let b: VertexSet = to.iter().copied().collect();
    let cert = menger(&g, &a, &b)?;
    Ok(ResultFile::Menger(MengerResult::from_certificate(&cert)).to_json())
}

fn run_solve(mode: Mode, instance: &Path) -> Outcome {
    let problem = read_problem(instance)?;
    let (paths, cut) = solve(&problem.seq, target_of(&problem, mode)?)?;
    Ok(ResultFile::Minmax(MinmaxResult::new(&paths, &cut)).to_json())
}

fn run_route(instance: &Path) -> Outcome {
    let inst = match read_instance(instance)? {
        InstanceFile::Ddp(d) => d.to_instance()?,
        _ => return Err(Failure::Io(format!("{} is not a ddp instance", instance.display()))),
    };
    let outcome = route(&inst)?;
    Ok(ResultFile::Routing(RoutingResult::from_outcome(&outcome)).to_json())
}

fn run_check_bramble(instance: &Path, graph: Option<&Path>) -> Outcome {
    let (g, bags) = match read_instance(instance)? {
        InstanceFile::Bramble(b) => {
            let g = match (&b.graph, graph) {
                (_, Some(path)) => read_graph(path)?,
                (Some(g), None) => g.to_digraph()?,
                (None, None) => return Err(Failure::Io("the bramble file has no graph; pass --graph".into())),
            };
            (g, b.bags)
        }
        InstanceFile::Ddp(d) => (d.graph.to_digraph()?, d.bramble.bags),
        _ => return Err(Failure::Io(format!("{} holds no bramble", instance.display()))),
    };
    let fam = SetFamily::new(bags.iter().map(|b| b.iter().copied().collect()).collect());
    let verdict = bramble::validate(&g, &fam);
    let congestion = bramble::congestion(&fam).ok();
    let report = BrambleReport {
        valid: verdict.ok(),
        bag_count: fam.len(),
        congestion,
        order_lower_bound: congestion.and_then(|c| order_lower_bound(fam.len(), c).ok()),
        violations: verdict.violations,
    };
    let json = ResultFile::Bramble(report.clone()).to_json();
    if report.valid {
        Ok(json)
    } else {
        Err(Failure::Invalid(Some(json), report.violations.iter().map(|v| format!("{}: {}", v.rule, v.detail)).collect()))
    }
}

fn run_verify(instance: Option<&Path>, batch: Option<usize>, choice: RouteChoice, mode: Option<Mode>, seed: u64) -> Outcome {
    let routes = match choice {
        RouteChoice::Brute => Routes { brute: true, matroid: false },
        RouteChoice::Matroid => Routes { brute: false, matroid: true },
        RouteChoice::Both => Routes { brute: true, matroid: true },
    };
    let problems: Vec<SequenceProblem> = match (instance, batch) {
        (Some(path), _) => vec![read_problem(path)?],
        (None, Some(count)) => (0..count as u64)
            .map(|i| {
                let (seq, b, fam) = random_sequence(&SequenceShape::default(), &mut rng(seed.wrapping_add(i)));
                SequenceProblem { seq, targets: Some(b), bags: Some(fam) }
            })
            .collect(),
        (None, None) => return Err(Failure::Io("pass --instance or --batch".into())),
    };
    let modes: Vec<Mode> = match mode {
        Some(m) => vec![m],
        None => vec![Mode::D, Mode::T, Mode::R],
    };
    let mut rows = Vec::new();
    for (i, p) in problems.iter().enumerate() {
        for &m in &modes {
            let target = match target_of(p, m) {
                Ok(t) => t,
                Err(e) if mode.is_some() => return Err(e),
                Err(_) => continue,
            };
            rows.push(agreement(i, &p.seq, target, routes)?);
        }
    }
    let all_agree = rows.iter().all(|r| r.agree);
    let route = match choice {
        RouteChoice::Brute => "brute",
        RouteChoice::Matroid => "matroid",
        RouteChoice::Both => "both",
    };
    let report = VerifyReport { route: route.into(), rows, all_agree };
    let json = ResultFile::Verify(report.clone()).to_json();
    if all_agree {
        Ok(json)
    } else {
        let bad = report.rows.iter().filter(|r| !r.agree);
        Err(Failure::Invalid(Some(json), bad.map(|r| format!("instance {} variant {} disagrees", r.instance, r.variant)).collect()))
    }
}

fn run_gen(model: Model, n: usize, p: f64, k: usize, c: usize, seed: u64) -> Outcome {
    let file = match model {
        Model::Gnp => InstanceFile::Digraph(DigraphJson::from_digraph(&gnp(n, p, &mut rng(seed))?)),
        Model::Complete => InstanceFile::Ddp(DdpJson::from_instance(&complete_ddp(n, k, c)?)),
        Model::TwoIsland => InstanceFile::Ddp(DdpJson::from_instance(&two_island(n, k, c, p, seed)?)),
    };
    Ok(file.to_json())
}

fn run_export_dot(instance: &Path, aux: Option<Mode>) -> Outcome {
    let file = read_instance(instance)?;
    match (file, aux) {
        (InstanceFile::Sequence(s), Some(mode)) => {
            let p = s.to_problem()?;
            let graph = match target_of(&p, mode)? {
                Target::D(b) => build_aux_d(&p.seq, b)?,
                Target::T(fam) => build_aux_t(&p.seq, fam)?,
                Target::R(fam) => build_aux_r(&p.seq, fam)?,
            };
            Ok(aux_to_dot(&graph))
        }
        (InstanceFile::Sequence(_), None) => Err(Failure::Io("pass --aux d|t|r for a sequence instance".into())),
        (_, Some(_)) => Err(Failure::Io("--aux needs a sequence instance".into())),
        (_, None) => Ok(digraph_to_dot(&read_graph(instance)?)),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Menger { graph, from, to } => run_menger(&graph, &from, &to),
        Command::Solve { mode, instance } => run_solve(mode, &instance),
        Command::Route { instance } => run_route(&instance),
        Command::CheckBramble { instance, graph } => run_check_bramble(&instance, graph.as_deref()),
        Command::Verify { instance, batch, route, mode, seed: s } => {
            run_verify(instance.as_deref(), batch, route, mode, seed(s)?)
        }
        Command::Gen { model, n, p, k, c, seed: s } => run_gen(model, n, p, k, c, seed(s)?),
        Command::ExportDot { instance, aux } => run_export_dot(&instance, aux),
    }
}

fn emit(out: &str) {
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", out.trim_end());
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(report, violations)) => {
            if let Some(r) = report {
                emit(&r);
            }
            eprintln!("validation failed:");
            for v in violations {
                eprintln!("  {v}");
            }
            ExitCode::from(2)
        }
    }
}
