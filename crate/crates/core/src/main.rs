use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sierpinski_roman::constructions::{
    complete_graph_construction, cycle_construction, path_construction,
    theorem_upper_bound_construction, ConstructionReport,
};
use sierpinski_roman::formulas::{self, ValueOrBounds};
use sierpinski_roman::io::{parse_edge_list, write_dot, write_edge_list};
use sierpinski_roman::report::{self, Limits, Scope, SweepConfig};
use sierpinski_roman::solver::{
    brute_force_gamma, brute_force_gamma_r, gamma_exact_with, gamma_r_exact_with, Certificate,
    SolverOptions, Witness,
};
use sierpinski_roman::{families, random, Error, Graph, Result, RomanFunction, SierpinskiGraph};

#[derive(Parser)]
#[command(
    name = "sierpinski-roman",
    version,
    about = "Roman domination on generalized Sierpinski graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a base graph or S(G, t) as an edge list, DOT or metadata
    Gen(GenArgs),
    /// Exact domination or Roman domination number
    Solve(SolveArgs),
    /// Build an explicit Roman dominating function on S(G, t)
    Construct(ConstructArgs),
    /// Closed-form values and bounds
    Formula(FormulaArgs),
    /// Check formulas against solver values and constructions
    Verify(VerifyArgs),
    /// Property checks on seeded random base graphs
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFamily {
    Path,
    Cycle,
    Complete,
    Star,
    Empty,
    Random,
}

#[derive(Args)]
struct BaseArgs {
    /// Base graph family (ignored when --base is given)
    #[arg(long, value_enum)]
    family: Option<GraphFamily>,
    #[arg(long)]
    n: Option<usize>,
    /// Base graph as an edge-list file
    #[arg(long)]
    base: Option<PathBuf>,
    /// Seed for --family random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extra-edge probability for --family random
    #[arg(long, default_value_t = 0.3)]
    p: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    El,
    Dot,
    Meta,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// Depth t; without it the base graph itself is emitted
    #[arg(long, short = 't', alias = "t")]
    depth: Option<usize>,
    #[arg(long, value_enum, default_value = "el")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list file (use --sierpinski for S(G, t))
    input: Option<PathBuf>,
    /// Base edge list; solves S(base, depth)
    #[arg(long, requires = "depth", conflicts_with = "input")]
    sierpinski: Option<PathBuf>,
    #[arg(long)]
    depth: Option<usize>,
    /// Roman domination number (default)
    #[arg(long, conflicts_with = "domination")]
    roman: bool,
    /// Domination number
    #[arg(long)]
    domination: bool,
    /// Exhaustive enumeration instead of branch and bound
    #[arg(long)]
    oracle: bool,
    /// Time limit in seconds
    #[arg(long)]
    timeout: Option<f64>,
    /// Emit the certificate as JSON
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFamily {
    Path,
    Cycle,
    Complete,
    Theorem,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: ConstructFamily,
    /// Base order for path, cycle and complete
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: usize,
    /// Base edge list for the theorem construction
    #[arg(long)]
    base: Option<PathBuf>,
    /// Optimal base function as JSON; found by the solver when omitted
    #[arg(long)]
    function: Option<PathBuf>,
    /// Report JSON destination (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a DOT drawing coloured by label
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaFamily {
    /// gamma_R of P_n and C_n
    Base,
    Path,
    Cycle,
    Complete,
    Universal,
    MinDegree,
    KntLower,
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long, value_enum)]
    family: FormulaFamily,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 2)]
    t: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    scope: String,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    t_max: usize,
    /// Per-row solver time limit in seconds
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    /// JSON-lines destination
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON lines instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).map_err(|_| Error::Input(format!("invalid timeout {s}")))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_edge_list(&read(path)?)
}

fn base_graph(a: &BaseArgs) -> Result<Graph> {
    if let Some(p) = &a.base {
        return load_graph(p);
    }
    let family = a
        .family
        .ok_or_else(|| Error::Input("give --family or --base".into()))?;
    let n =
        a.n.ok_or_else(|| Error::Input("--n is required with --family".into()))?;
    match family {
        GraphFamily::Path => families::path(n),
        GraphFamily::Cycle => families::cycle(n),
        GraphFamily::Complete => families::complete(n),
        GraphFamily::Star => families::star(n),
        GraphFamily::Empty => families::empty(n),
        GraphFamily::Random => random::random_connected(n, a.p, &mut random::rng(a.seed)),
    }
}

fn gen(a: &GenArgs) -> Result<i32> {
    let base = base_graph(&a.base)?;
    let seed = matches!(a.base.family, Some(GraphFamily::Random)).then_some(a.base.seed);
    let text = match a.depth {
        Some(t) => {
            let s = SierpinskiGraph::build(&base, t)?;
            match a.format {
                Format::El => write_edge_list(s.graph()),
                Format::Dot => write_dot(s.graph(), &format!("S_{t}"), None),
                Format::Meta => {
                    let mut v = serde_json::to_value(s.metadata()).expect("metadata serializes");
                    v["fingerprint"] = json!(s.graph().fingerprint());
                    if let Some(seed) = seed {
                        v["seed"] = json!(seed);
                    }
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
            }
        }
        None => match a.format {
            Format::El => write_edge_list(&base),
            Format::Dot => write_dot(&base, "G", None),
            Format::Meta => {
                let mut v = json!({
                    "order": base.order(),
                    "edge_count": base.size(),
                    "fingerprint": base.fingerprint(),
                });
                if let Some(seed) = seed {
                    v["seed"] = json!(seed);
                }
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            }
        },
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

fn solve(a: &SolveArgs) -> Result<i32> {
    let (g, sier) = match (&a.input, &a.sierpinski) {
        (_, Some(base)) => {
            let s = SierpinskiGraph::build(&load_graph(base)?, a.depth.unwrap_or(1))?;
            (s.graph().clone(), Some(s))
        }
        (Some(p), None) => (load_graph(p)?, None),
        (None, None) => {
            return Err(Error::Input(
                "give an edge-list file or --sierpinski".into(),
            ))
        }
    };
    let opts = SolverOptions::default().with_timeout(a.timeout.map(seconds).transpose()?);
    let cert: Certificate = match (a.domination, a.oracle) {
        (false, false) => gamma_r_exact_with(&g, &opts)?,
        (true, false) => gamma_exact_with(&g, &opts)?,
        (false, true) => brute_force_gamma_r(&g)?,
        (true, true) => brute_force_gamma(&g)?,
    };
    let text = if a.json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&cert).expect("certificate serializes")
        )
    } else {
        let name = if a.domination { "gamma" } else { "gamma_R" };
        let label = |v: usize| match &sier {
            Some(s) => s.word_label(v),
            None => v.to_string(),
        };
        let witness = match &cert.witness {
            Witness::Set(set) => set.iter().map(|&v| label(v)).collect::<Vec<_>>().join(" "),
            Witness::Function(l) => {
                let f = RomanFunction::new(l.clone())?;
                let ones: Vec<String> = f.b1().into_iter().map(label).collect();
                let twos: Vec<String> = f.b2().into_iter().map(label).collect();
                format!("B1 = {{{}}} B2 = {{{}}}", ones.join(" "), twos.join(" "))
            }
        };
        format!("{name} = {}\n{witness}\n", cert.value)
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

fn construct(a: &ConstructArgs) -> Result<i32> {
    let need_n = || {
        a.n.ok_or_else(|| Error::Input("--n is required for this family".into()))
    };
    let (report, s): (ConstructionReport, SierpinskiGraph) = match a.family {
        ConstructFamily::Path => {
            let r = path_construction(need_n()?, a.t)?;
            let s = SierpinskiGraph::build(&families::path(r.n)?, a.t)?;
            (r, s)
        }
        ConstructFamily::Cycle => {
            let r = cycle_construction(need_n()?, a.t)?;
            let s = SierpinskiGraph::build(&families::cycle(r.n)?, a.t)?;
            (r, s)
        }
        ConstructFamily::Complete => {
            let r = complete_graph_construction(need_n()?, a.t)?;
            let s = SierpinskiGraph::build(&families::complete(r.n)?, a.t)?;
            (r, s)
        }
        ConstructFamily::Theorem => {
            let path = a.base.as_ref().ok_or_else(|| {
                Error::Input("--base is required for the theorem construction".into())
            })?;
            let base = load_graph(path)?;
            let cert = gamma_r_exact_with(&base, &SolverOptions::default())?;
            let f = match &a.function {
                Some(p) => RomanFunction::from_json(&read(p)?, &base)?,
                None => cert.roman_function(),
            };
            let s = SierpinskiGraph::build(&base, a.t)?;
            (theorem_upper_bound_construction(&s, &f, &cert)?, s)
        }
    };
    if let Some(p) = &a.dot {
        let dot = write_dot(
            s.graph(),
            &format!("{}_{}", report.family, a.t),
            Some(&report.labels),
        );
        emit(Some(p), &dot)?;
    }
    let text = format!(
        "{}\n",
        serde_json::to_string(&report).expect("report serializes")
    );
    emit(a.out.as_deref(), &text)?;
    let exact_family = !matches!(a.family, ConstructFamily::Theorem);
    let failed = !report.ok() || !report.notes.is_empty() || (exact_family && !report.exact);
    Ok(if failed { 1 } else { 0 })
}

fn formula(a: &FormulaArgs) -> Result<i32> {
    let (n, t) = (a.n, a.t);
    let value = match a.family {
        FormulaFamily::Base => json!({ "gamma_r": formulas::gamma_r_path_cycle(n) }),
        FormulaFamily::Path => {
            json!({ "gamma_r": ValueOrBounds::exact(formulas::gamma_r_sierpinski_path(n, t)?) })
        }
        FormulaFamily::Cycle => json!({ "gamma_r": formulas::gamma_r_sierpinski_cycle(n, t)? }),
        FormulaFamily::Complete => json!({
            "gamma": ValueOrBounds::exact(formulas::gamma_knt(n, t)?),
            "gamma_r": ValueOrBounds::upper_only(formulas::gamma_r_knt_upper(n, t)?),
        }),
        FormulaFamily::Universal => {
            json!({ "gamma_r": ValueOrBounds::exact(formulas::universal_vertex_value(n, t)?) })
        }
        FormulaFamily::MinDegree => {
            json!({ "gamma_r": ValueOrBounds::lower_only(formulas::min_degree_lower_bound(n, t)?) })
        }
        FormulaFamily::KntLower => {
            json!({ "gamma_r_lower": formulas::knt_lower_bound_for_any_graph(n, t)? })
        }
    };
    let family = a
        .family
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    let out = json!({ "family": family, "n": n, "t": t, "value": value });
    println!("{out}");
    Ok(0)
}

fn verify(a: &VerifyArgs) -> Result<i32> {
    let scope: Scope = a.scope.parse()?;
    let limits = Limits {
        n_min: a.n_min,
        n_max: a.n_max,
        t_max: a.t_max,
        timeout: Some(seconds(a.timeout)?),
    };
    let table = report::verify(scope, &limits)?;
    if let Some(p) = &a.out {
        emit(Some(p), &table.to_json_lines())?;
    }
    if a.json {
        print!("{}", table.to_json_lines());
    } else {
        print!("{}", table.to_text());
    }
    Ok(table.exit_code())
}

fn sweep(a: &SweepArgs) -> Result<i32> {
    let cfg = SweepConfig {
        count: a.count,
        n_max: a.n_max,
        t: a.t,
        seed: a.seed,
        timeout: Some(seconds(a.timeout)?),
    };
    let rep = report::sweep(&cfg)?;
    if let Some(p) = &a.out {
        emit(Some(p), &rep.to_json_lines())?;
    }
    if a.json {
        print!("{}", rep.to_json_lines());
    } else {
        print!("{}", rep.to_text());
    }
    Ok(rep.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Construct(a) => construct(a),
        Command::Formula(a) => formula(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
