use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use zzprop::graphcore::{iterated_family, spectrum, square, zigzag, RotMapGraph, DENSE_CAP};
use zzprop::gsf::{
    covers, deg2_augment, embed, is_family_free, k_realisations, tau_bound, MarkedFamily, DEFAULT_SIZE_CAP,
};
use zzprop::reduction::{decode, reduce};
use zzprop::structures::{histogram, r_ball, sampling_distance, sampling_distance_r, Ball, Structure, TypeRegistry};
use zzprop::testing::{
    freeness_case, freeness_params, freeness_tester, monte_carlo, regularity_params, regularity_tester,
    GraphOracle, TesterVerdict,
};
use zzprop::zzmodel::{
    build_counterexample, build_model, measured_expansion, nontestability_bound, underlying_graph_padded,
    validate_all, zigzag_signature, SigmaLayout,
};
use zzprop::{Error, Graph};

#[derive(Parser)]
#[command(name = "zzprop", version, about = "Zig-zag models, reductions and bounded-degree testers")]
struct Cli {
    /// Worker threads for Monte-Carlo trials and enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutArg {
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigenvalues of the normalized adjacency matrix, one per line.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Square of a rotation map.
    Square {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Zig-zag product of two rotation maps.
    Zigzag {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sizes, degrees and spectral gaps of the iterated family.
    ExpanderFamily {
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[arg(long = "D", default_value_t = 2)]
        d_base: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Builds the zig-zag model; with --out also writes `<out>.levels`.
    BuildModel {
        #[arg(long = "D", default_value_t = 2)]
        d_base: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Runs the four model validators (reads stdin without --in).
    ValidateModel {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long = "H")]
        h: Option<PathBuf>,
    },
    /// Reduces a binary structure to a graph of maximum degree 3.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Recovers a structure from a reduced graph.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        /// Decode over the model signature for this D.
        #[arg(long = "D", conflicts_with = "signature")]
        d_base: Option<usize>,
        /// Take the signature from this structure file.
        #[arg(long)]
        signature: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Counts of each r-type.
    TypeHistogram {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Sampling distance between two structures.
    SamplingDistance {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Single radius; omit to sum radii up to --r-max.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
    },
    /// Tau-freeness tester.
    TestFreeness(TesterArgs),
    /// Tau-regularity tester.
    TestRegularity(TesterArgs),
    /// Embeds each family member into a graph; optionally checks a covering set.
    GsfCheck {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertex set to check as a cover.
        #[arg(long)]
        cover: Option<String>,
    },
    /// All k-realisations of a type, as a family file.
    GsfRealisations {
        #[arg(long)]
        tau: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Degree-2 augmentation of a family at a given n.
    Deg2Augment {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Model, counterexample, sampling distance and farness bound.
    NontestabilityDemo {
        #[arg(long = "D", default_value_t = 2)]
        d_base: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long = "H")]
        h: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TesterArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tau: PathBuf,
    #[arg(long)]
    eps: f64,
    /// Degree bound of the class; defaults to the maximum degree of the graph.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
}

enum Failure {
    Violation(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_with<T>(path: &Path, parse: impl Fn(&str) -> zzprop::Result<T>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &OutArg, text: &str) -> CliResult {
    match &out.out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// `%.{digits}g`-style formatting.
fn fmt_g(x: f64, digits: usize) -> String {
    if x == 0.0 || x.abs() < 1e-13 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..digits as i32).contains(&exp) {
        let s = format!("{:.*e}", digits - 1, x);
        let (m, e) = s.split_once('e').unwrap();
        let m = m.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{e}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn default_h(d_base: usize, h: &Option<PathBuf>) -> Result<RotMapGraph, Failure> {
    match h {
        Some(p) => read_with(p, RotMapGraph::parse),
        None if d_base == 2 => Ok(RotMapGraph::cycle(16)),
        None => Err(Failure::Usage(format!("--H is required for D = {d_base}"))),
    }
}

/// Recovers `D` from a signature of length `3D⁴ + 1`.
fn infer_d_base(a: &Structure) -> Result<usize, Failure> {
    let len = a.sig().len();
    (1..=8)
        .find(|&d| SigmaLayout::new(d).len() == len && **a.sig() == *zigzag_signature(d))
        .ok_or_else(|| Failure::Usage(format!("signature of {len} relations is not a model signature")))
}

fn run(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::Spectrum { input } => {
            let g = read_with(&input, RotMapGraph::parse)?;
            let s = spectrum(&g)?;
            info!("n = {}, D = {}, lambda = {}", g.n(), g.degree(), fmt_g(s.lambda, 12));
            let mut out = String::new();
            for e in &s.eigenvalues {
                out.push_str(&fmt_g(*e, 12));
                out.push('\n');
            }
            io::stdout().write_all(out.as_bytes())?;
        }
        Cmd::Square { input, out } => {
            let g = read_with(&input, RotMapGraph::parse)?;
            emit(&out, &square(&g)?.to_text())?;
        }
        Cmd::Zigzag { g1, g2, out } => {
            let a = read_with(&g1, RotMapGraph::parse)?;
            let b = read_with(&g2, RotMapGraph::parse)?;
            emit(&out, &zigzag(&a, &b)?.to_text())?;
        }
        Cmd::ExpanderFamily { h, d_base, depth } => {
            let h = default_h(d_base, &h)?;
            let fam = iterated_family(&h, depth)?;
            let mut out = String::from("m\tvertices\tdegree\tlambda\n");
            for (m, g) in fam.iter().enumerate() {
                let lambda = if g.n() <= DENSE_CAP { fmt_g(spectrum(g)?.lambda, 12) } else { "NA".into() };
                out.push_str(&format!("{}\t{}\t{}\t{}\n", m + 1, g.n(), g.degree(), lambda));
            }
            io::stdout().write_all(out.as_bytes())?;
        }
        Cmd::BuildModel { d_base, depth, h, out } => {
            let h = default_h(d_base, &h)?;
            let m = build_model(&h, depth)?;
            info!("built model with {} elements over D = {}", m.n(), m.d_base);
            emit(&out, &m.structure.to_text())?;
            if let Some(p) = &out.out {
                let mut side = p.as_os_str().to_owned();
                side.push(".levels");
                fs::write(PathBuf::from(side), m.levels_text())?;
            }
        }
        Cmd::ValidateModel { input, h } => {
            let text = match &input {
                Some(p) => read(p)?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let a = Structure::parse(&text)?;
            let d_base = infer_d_base(&a)?;
            let h = default_h(d_base, &h)?;
            let h2 = square(&h)?;
            let reports = validate_all(&a, d_base, &h, &h2)?;
            let mut out = String::from("clause\tok\tdetail\n");
            for r in &reports {
                let detail = r.violation.as_ref().map_or("-".to_string(), |v| v.to_string());
                out.push_str(&format!("{}\t{}\t{}\n", r.clause, r.is_ok(), detail));
            }
            io::stdout().write_all(out.as_bytes())?;
            if reports.iter().any(|r| !r.is_ok()) {
                return Err(Failure::Violation("model validation failed".into()));
            }
        }
        Cmd::Reduce { input, d, map, out } => {
            let a = read_with(&input, Structure::parse)?;
            let d = match d {
                Some(d) => d,
                None => match infer_d_base(&a) {
                    Ok(db) => SigmaLayout::new(db).degree_bound(),
                    Err(_) => a.max_degree().max(3),
                },
            };
            let red = reduce(&a, d)?;
            info!("reduced {} elements to {} vertices (d = {d})", a.n(), red.graph.n());
            emit(&out, &red.graph.to_text())?;
            if let Some(p) = map {
                fs::write(p, red.correspondence_text())?;
            }
        }
        Cmd::Decode { input, d, d_base, signature, out } => {
            let g = read_with(&input, Graph::parse)?;
            let sig = match (d_base, signature) {
                (Some(db), _) => zigzag_signature(db),
                (None, Some(p)) => read_with(&p, Structure::parse)?.sig().clone(),
                (None, None) => return Err(Failure::Usage("one of --D or --signature is required".into())),
            };
            match decode(&g, sig, d) {
                Ok(dec) => emit(&out, &dec.structure.to_text())?,
                Err(e @ Error::PatternMismatch { .. }) => return Err(Failure::Violation(e.to_string())),
                Err(e) => return Err(e.into()),
            }
        }
        Cmd::TypeHistogram { input, r } => {
            let a = read_with(&input, Structure::parse)?;
            let mut reg = TypeRegistry::new(r);
            let counts = histogram(&a, &mut reg)?;
            let mut out = String::from("type\tcount\tball_size\tcenter_degree\n");
            for (i, c) in counts.iter().enumerate() {
                let b = reg.get(i);
                out.push_str(&format!("{i}\t{c}\t{}\t{}\n", b.n(), b.center_degree()));
            }
            io::stdout().write_all(out.as_bytes())?;
        }
        Cmd::SamplingDistance { a, b, r, r_max } => {
            let a = read_with(&a, Structure::parse)?;
            let b = read_with(&b, Structure::parse)?;
            let mut out = String::new();
            match r {
                Some(r) => {
                    let mut reg = TypeRegistry::new(r);
                    let d = sampling_distance_r(&a, &b, &mut reg)?;
                    out.push_str(&format!("r\tdistance\n{r}\t{}\n", fmt_g(d, 12)));
                }
                None => {
                    let sd = sampling_distance(&a, &b, r_max)?;
                    out.push_str("r\tdistance\n");
                    for (r, t) in sd.terms.iter().enumerate() {
                        out.push_str(&format!("{r}\t{}\n", fmt_g(*t, 12)));
                    }
                    out.push_str(&format!("total\t{}\ntail\t{}\n", fmt_g(sd.value, 12), fmt_g(sd.tail, 12)));
                }
            }
            io::stdout().write_all(out.as_bytes())?;
        }
        Cmd::TestFreeness(t) => run_tester(t, false)?,
        Cmd::TestRegularity(t) => run_tester(t, true)?,
        Cmd::GsfCheck { family, graph, cover } => {
            let fam = read_with(&family, MarkedFamily::parse)?;
            let g = read_with(&graph, Graph::parse)?;
            let mut out = String::from("member\tsize\tembeds\tembedding\n");
            for (i, f) in fam.members().iter().enumerate() {
                let e = embed(f, &g);
                let shown = e.as_ref().map_or("-".to_string(), |m| {
                    m.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                });
                out.push_str(&format!("{i}\t{}\t{}\t{shown}\n", f.n(), e.is_some()));
            }
            let free = is_family_free(&fam, &g);
            out.push_str(&format!("free\t{free}\n"));
            let mut covered = true;
            if let Some(c) = cover {
                let b: Vec<usize> = c
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse().map_err(|_| Failure::Usage(format!("bad vertex `{s}`"))))
                    .collect::<Result<_, _>>()?;
                covered = covers(&b, &fam, &g);
                out.push_str(&format!("covers\t{covered}\n"));
            }
            io::stdout().write_all(out.as_bytes())?;
            if !free || !covered {
                return Err(Failure::Violation("graph is not family-free".into()));
            }
        }
        Cmd::GsfRealisations { tau, k, d, cap, out } => {
            let tau = read_with(&tau, Ball::parse)?;
            let fam = k_realisations(&tau, k, d, cap)?;
            info!("{} realisations", fam.len());
            emit(&out, &fam.to_text())?;
        }
        Cmd::Deg2Augment { family, k, n, out } => {
            let fam = read_with(&family, MarkedFamily::parse)?;
            let aug = deg2_augment(&fam, k, n)?;
            let mut table = format!("n\t{n}\nk\t{k}\nproperty_size\t{}\ntau_of_one\t{}\n", aug.members_of_p, tau_bound(k, 1.0));
            for m in &aug.added {
                table.push_str(&format!("added\t{m}\n"));
            }
            io::stdout().write_all(table.as_bytes())?;
            if let Some(p) = &out.out {
                fs::write(p, aug.family.to_text())?;
            }
        }
        Cmd::NontestabilityDemo { d_base, depth, r, h } => {
            let h = default_h(d_base, &h)?;
            let m = build_model(&h, depth)?;
            let top = m.n() - 1;
            let pattern = r_ball(&m.structure, top, 1).structure().clone();
            let b = build_counterexample(&m, &pattern)?;
            let mut reg = TypeRegistry::new(r);
            let delta = sampling_distance_r(&m.structure, &b, &mut reg)?;
            let u = underlying_graph_padded(&m.structure, m.d_base);
            let mut out = String::new();
            out.push_str(&format!("elements\t{}\n", m.n()));
            out.push_str(&format!("depth\t{}\n", m.depth));
            out.push_str(&format!("max_degree\t{}\n", m.structure.max_degree()));
            out.push_str(&format!("degree_bound\t{}\n", m.layout().degree_bound()));
            out.push_str(&format!("underlying_degree\t{}\n", u.degree()));
            out.push_str(&format!("pattern_size\t{}\n", pattern.n()));
            out.push_str(&format!("sampling_distance_r{r}\t{}\n", fmt_g(delta, 12)));
            match nontestability_bound(&m) {
                Ok(fb) => {
                    out.push_str(&format!("farness_bound\t{}\n", fmt_g(fb.epsilon, 12)));
                    out.push_str(&format!("heuristic\t{}\n", fb.heuristic));
                }
                Err(Error::CapExceeded { .. }) => out.push_str("farness_bound\tNA\nheuristic\tNA\n"),
                Err(e) => return Err(e.into()),
            }
            if let Ok(e) = measured_expansion(&m) {
                out.push_str(&format!("underlying_lambda\t{}\n", fmt_g(e.lambda, 12)));
            }
            io::stdout().write_all(out.as_bytes())?;
        }
    }
    Ok(())
}

fn run_tester(t: TesterArgs, regular: bool) -> CliResult {
    let g = read_with(&t.graph, Graph::parse)?;
    let tau = read_with(&t.tau, Ball::parse)?;
    let d = t.d.unwrap_or(g.max_degree().max(1));
    let params = if regular { regularity_params(&tau, d, t.eps)? } else { freeness_params(&tau, d, t.eps)? };
    if !regular {
        info!("case {:?}", freeness_case(&tau, d)?);
    }
    info!("lambda = {}, n0 = {}", params.lambda, params.n0);
    let run_one = |seed: u64| -> zzprop::Result<TesterVerdict> {
        let o = GraphOracle::new(&g, d);
        if regular {
            regularity_tester(&o, &tau, t.eps, seed)
        } else {
            freeness_tester(&o, &tau, t.eps, seed)
        }
    };
    let s = monte_carlo(t.trials, t.seed, run_one)?;
    let out = format!(
        "trials\taccepts\taccept_rate\tmean_queries\tmax_queries\n{}\t{}\t{}\t{}\t{}\n",
        s.trials,
        s.accepts,
        fmt_g(s.accept_rate(), 12),
        fmt_g(s.mean_queries, 12),
        s.max_queries
    );
    io::stdout().write_all(out.as_bytes())?;
    if s.accepts < s.trials {
        return Err(Failure::Violation("tester rejected".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be positive");
        return ExitCode::from(2);
    }
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
