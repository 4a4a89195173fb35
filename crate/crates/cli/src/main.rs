use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lincut::dynamics::{self, Caps, Semantics};
use lincut::extension::{cuttable_extension, extend, full_extension, Extension};
use lincut::harness::{run_suite, HarnessConfig, Suite};
use lincut::implicants::{find_map, Strength};
use lincut::netio::{
    export_report, interaction_dot, parse_document, serialize_bnet_with_extenders, EdgeRecord,
    NetworkDocument, ParseOptions, Report,
};
use lincut::refinement::{format_levels, make_refinement, parse_levels, parse_thresholds};
use lincut::structure::{find_linear_cut, interaction_graph};
use lincut::{BooleanNetwork, ComponentSet, Error, State, Subspace};

const UNREACHABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lincut",
    version,
    about = "Linear cuts, extensions and refinements of Boolean networks"
)]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Reject variables that have no rule.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Components, signed interactions and linear components.
    Info {
        file: PathBuf,
        /// Print the interaction graph in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Search for a linear cut.
    Cut {
        file: PathBuf,
        /// Shrink the cut to an inclusion-minimal one.
        #[arg(long)]
        minimize: bool,
    },
    /// Insert extender components on interactions.
    Extend {
        file: PathBuf,
        #[command(flatten)]
        which: ExtendChoice,
        /// Write here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Attractors as terminal strongly connected components.
    Attractors {
        file: PathBuf,
        #[arg(long, default_value = "async")]
        sem: Semantics,
    },
    /// All trap spaces, or the minimal ones.
    Trapspaces {
        file: PathBuf,
        #[arg(long)]
        minimal: bool,
    },
    /// The smallest trap space containing a state.
    Mintrap {
        file: PathBuf,
        #[arg(long)]
        state: State,
    },
    /// Reachability of a state or subspace.
    Reach {
        file: PathBuf,
        #[arg(long)]
        from: State,
        /// A state, or a subspace written with `*`.
        #[arg(long)]
        to: Subspace,
        /// async, general, permissive or lreach (asynchronous in the cuttable extension).
        #[arg(long, default_value = "async")]
        sem: String,
    },
    /// A geodesic flipping exactly the given components.
    Geodesic {
        file: PathBuf,
        #[arg(long)]
        from: State,
        /// Comma separated names or 1-based indices.
        #[arg(long)]
        flip: String,
        #[arg(long, default_value = "async")]
        sem: Semantics,
        /// Also print an implicant map certifying the geodesic.
        #[arg(long)]
        certificate: bool,
    },
    /// Reachability in the threshold refinement.
    Refine {
        file: PathBuf,
        /// Lines `source, target, threshold`.
        #[arg(long)]
        thresholds: PathBuf,
        /// Levels such as `2,0` or `20`.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Run property suites on seeded random networks.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(multiple = false)]
struct ExtendChoice {
    /// Extend every interaction.
    #[arg(long)]
    full: bool,
    /// Extend until the extenders form a linear cut (default).
    #[arg(long)]
    cuttable: bool,
    /// Interactions such as `x1->x2,x3->x1`.
    #[arg(long)]
    edges: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// core, netio, structure, dynamics, implicants, extension, refinement, cuts or all.
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Largest number of components.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Smallest number of components (defaults to --n).
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long)]
    max_indegree: Option<usize>,
    /// Where failing networks are written.
    #[arg(long, default_value = "lincut-failures")]
    dump_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } => 4,
                _ => 2,
            })
        }
    }
}

fn caps() -> lincut::Result<Caps> {
    let mut caps = Caps::default();
    if let Ok(v) = std::env::var("LINCUT_CAP_N") {
        caps.state_space = v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("LINCUT_CAP_N must be a number, got `{v}`"))
        })?;
    }
    Ok(caps)
}

fn load(path: &Path, strict: bool) -> lincut::Result<NetworkDocument> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_document(&text, ParseOptions { strict })?;
    for w in &doc.warnings {
        eprintln!("warning: {w}");
    }
    Ok(doc)
}

fn check_len(net: &BooleanNetwork, len: usize) -> lincut::Result<()> {
    if len != net.n() {
        return Err(Error::LengthMismatch {
            expected: net.n(),
            found: len,
        });
    }
    Ok(())
}

fn component(net: &BooleanNetwork, s: &str) -> lincut::Result<usize> {
    let s = s.trim();
    if let Some(i) = net.index_of(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(k) if (1..=net.n()).contains(&k) => Ok(k - 1),
        _ => Err(Error::InvalidArgument(format!("unknown component `{s}`"))),
    }
}

fn component_set(net: &BooleanNetwork, s: &str) -> lincut::Result<ComponentSet> {
    s.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| component(net, p))
        .collect()
}

fn named(net: &BooleanNetwork, set: ComponentSet) -> Vec<String> {
    set.iter().map(|i| net.name(i).to_string()).collect()
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

fn emit(cli: &Cli, report: &Report, text: impl FnOnce() -> String) {
    if cli.json {
        println!("{}", export_report(report));
    } else {
        print!("{}", text());
    }
}

fn run(cli: &Cli) -> lincut::Result<u8> {
    let caps = caps()?;
    match &cli.command {
        Command::Info { file, dot } => {
            let doc = load(file, cli.strict)?;
            let net = &doc.network;
            let g = interaction_graph(net);
            if *dot {
                print!("{}", interaction_dot(&g, net.names(), doc.extender_set()));
                return Ok(0);
            }
            let edges: Vec<EdgeRecord> = g
                .edges()
                .map(|((j, i), s)| EdgeRecord {
                    source: net.name(j).to_string(),
                    target: net.name(i).to_string(),
                    sign: s.to_string(),
                })
                .collect();
            let report = Report::Info {
                components: net.names().to_vec(),
                edges: edges.clone(),
                linear: named(net, g.linear_components()),
                inputs: doc.inputs.clone(),
                warnings: doc.warnings.clone(),
            };
            emit(cli, &report, || {
                let mut out = format!("{} components: {}\n", net.n(), net.names().join(" "));
                out += &format!("{} interactions\n", edges.len());
                for e in &edges {
                    out += &format!("  {} -> {} {}\n", e.source, e.target, e.sign);
                }
                out += &format!("linear: {}\n", named(net, g.linear_components()).join(" "));
                out
            });
            Ok(0)
        }
        Command::Cut { file, minimize } => {
            let doc = load(file, cli.strict)?;
            let net = &doc.network;
            match find_linear_cut(&interaction_graph(net), *minimize) {
                Ok(cut) => {
                    let members = cut.members();
                    let report = Report::Cut {
                        cuttable: true,
                        cut: Some(named(net, members)),
                        violation: None,
                    };
                    emit(cli, &report, || {
                        format!("L = {members} ({})\n", named(net, members).join(" "))
                    });
                    Ok(0)
                }
                Err(v) => {
                    let report = Report::Cut {
                        cuttable: false,
                        cut: None,
                        violation: Some(v.describe(net.names())),
                    };
                    emit(cli, &report, || {
                        format!("not cuttable: {}\n", v.describe(net.names()))
                    });
                    Ok(UNREACHABLE)
                }
            }
        }
        Command::Extend {
            file,
            which,
            output,
        } => {
            let doc = load(file, cli.strict)?;
            let net = &doc.network;
            let ext: Extension = if which.full {
                full_extension(net)
            } else if let Some(list) = &which.edges {
                let mut edges = Vec::new();
                for part in list.split(',').filter(|p| !p.trim().is_empty()) {
                    let (a, b) = part.split_once("->").ok_or_else(|| {
                        Error::InvalidArgument(format!("expected `source->target`, got `{part}`"))
                    })?;
                    edges.push((component(net, a)?, component(net, b)?));
                }
                extend(net, edges)?
            } else {
                cuttable_extension(net)
            };
            let text = serialize_bnet_with_extenders(ext.extended(), ext.extender_set());
            match output {
                Some(path) => fs::write(path, text).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Attractors { file, sem } => {
            let net = load(file, cli.strict)?.network;
            let attractors = dynamics::attractors(&net, *sem, &caps)?;
            let report = Report::attractors(&attractors);
            emit(cli, &report, || {
                let Report::Attractors { attractors } = &report else {
                    unreachable!()
                };
                attractors
                    .iter()
                    .map(|a| {
                        let kind = if a.fixed_point {
                            "fixed point"
                        } else {
                            "cyclic"
                        };
                        format!("{kind}: {}\n", a.states.join(" "))
                    })
                    .collect()
            });
            Ok(0)
        }
        Command::Trapspaces { file, minimal } => {
            let net = load(file, cli.strict)?.network;
            let spaces = if *minimal {
                dynamics::minimal_trap_spaces(&net, &caps)?
            } else {
                dynamics::trap_spaces(&net, &caps)?
            };
            let report = Report::trap_spaces(&spaces, *minimal);
            emit(cli, &report, || {
                let Report::TrapSpaces { trap_spaces, .. } = &report else {
                    unreachable!()
                };
                trap_spaces.iter().map(|s| format!("{s}\n")).collect()
            });
            Ok(0)
        }
        Command::Mintrap { file, state } => {
            let net = load(file, cli.strict)?.network;
            check_len(&net, state.len())?;
            let t = dynamics::min_trap_space_containing(&net, *state);
            let report = Report::MinTrapSpace {
                state: state.to_string(),
                trap_space: t.to_string(),
            };
            emit(cli, &report, || format!("{t}\n"));
            Ok(0)
        }
        Command::Reach {
            file,
            from,
            to,
            sem,
        } => {
            let net = load(file, cli.strict)?.network;
            check_len(&net, from.len())?;
            check_len(&net, to.len())?;
            let mut warnings = Vec::new();
            let path = if sem == "lreach" {
                let ext = cuttable_extension(&net);
                warnings.push(format!(
                    "asynchronous dynamics of the cuttable extension, extender count {}",
                    ext.edges().len()
                ));
                dynamics::reachable(
                    ext.extended(),
                    ext.embed(*from),
                    Semantics::Asynchronous,
                    |s| ext.is_canonical(s) && to.contains_state(ext.project(s)),
                    &caps,
                )?
            } else {
                let sem: Semantics = sem.parse()?;
                dynamics::reachable(&net, *from, sem, |s| to.contains_state(s), &caps)?
            };
            let report = Report::Reach {
                semantics: sem.clone(),
                reachable: path.is_some(),
                path: path.as_deref().map(strings),
                warnings,
            };
            emit(cli, &report, || match &path {
                Some(p) => strings(p).join(" -> ") + "\n",
                None => "unreachable\n".to_string(),
            });
            Ok(if path.is_some() { 0 } else { UNREACHABLE })
        }
        Command::Geodesic {
            file,
            from,
            flip,
            sem,
            certificate,
        } => {
            let net = load(file, cli.strict)?.network;
            check_len(&net, from.len())?;
            let j = component_set(&net, flip)?;
            let path = dynamics::geodesic(&net, *from, j, *sem, &caps)?;
            let cert: Option<BTreeMap<String, String>> = if *certificate {
                let strength = match sem {
                    Semantics::Permissive => Strength::Consistent,
                    _ => Strength::Strong,
                };
                find_map(&net, *from, j, strength)?.map(|m| m.to_named(net.names()))
            } else {
                None
            };
            let report = Report::Geodesic {
                semantics: sem.name().to_string(),
                exists: path.is_some(),
                path: path.as_deref().map(strings),
                certificate: cert.clone(),
            };
            emit(cli, &report, || {
                let mut out = match &path {
                    Some(p) => strings(p).join(" -> ") + "\n",
                    None => "no geodesic\n".to_string(),
                };
                for (name, t) in cert.iter().flatten() {
                    out += &format!("  {name}: {t}\n");
                }
                out
            });
            Ok(if path.is_some() { 0 } else { UNREACHABLE })
        }
        Command::Refine {
            file,
            thresholds,
            from,
            to,
        } => {
            let net = load(file, cli.strict)?.network;
            let text = fs::read_to_string(thresholds).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", thresholds.display()))
            })?;
            let r = make_refinement(&net, &parse_thresholds(&text, &net)?);
            let (x, y) = (parse_levels(from)?, parse_levels(to)?);
            r.check_levels(&x)?;
            r.check_levels(&y)?;
            let path = r.reachable(&x, &y, &caps)?;
            let report = Report::Refine {
                maxima: r.maxima().to_vec(),
                reachable: path.is_some(),
                path: path.clone(),
            };
            emit(cli, &report, || match &path {
                Some(p) => {
                    p.iter()
                        .map(|l| format_levels(l))
                        .collect::<Vec<_>>()
                        .join(" -> ")
                        + "\n"
                }
                None => "unreachable\n".to_string(),
            });
            Ok(if path.is_some() { 0 } else { UNREACHABLE })
        }
        Command::Verify(args) => verify(args, caps),
    }
}

fn verify(args: &VerifyArgs, caps: Caps) -> lincut::Result<u8> {
    let mut cfg = HarnessConfig::new(args.seed, args.count, args.n);
    if let Some(m) = args.min_n {
        cfg.min_n = m;
    }
    if let Some(d) = args.max_indegree {
        cfg.max_indegree = d;
    }
    cfg.caps.state_space = caps.state_space;
    let outcome = run_suite(args.suite, &cfg)?;
    println!("{}", outcome.to_json());
    if outcome.passed() {
        return Ok(0);
    }
    if !outcome.failing.is_empty() {
        fs::create_dir_all(&args.dump_dir).map_err(|e| {
            Error::InvalidArgument(format!("cannot create {}: {e}", args.dump_dir.display()))
        })?;
        for f in &outcome.failing {
            let path = args.dump_dir.join(format!(
                "{}-{}-{:016x}.bnet",
                f.suite.name(),
                f.index,
                f.seed
            ));
            fs::write(
                &path,
                serialize_bnet_with_extenders(&f.network, ComponentSet::default()),
            )
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("failing network written to {}", path.display());
        }
    }
    Ok(1)
}
