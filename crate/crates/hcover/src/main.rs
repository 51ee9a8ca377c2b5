use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hcover::classify::{check_theorem3_shape, classify_remainders};
use hcover::construct::{
    build_elementary_extremal, build_ideal_extremal, build_l, build_m, build_pendant_clique,
    build_tightness, pendant_graph,
};
use hcover::error::Error;
use hcover::graph::{
    complete, count_cliques, cycle, parse_edge_list, parse_graph6, path, random_gnp, to_edge_list,
    to_graph6, Graph,
};
use hcover::ip::solve_ip;
use hcover::oracle::{min_cover_exhaustive, uniqueness_check, Budget};
use hcover::profile::{
    check_profile_predicates, profile_exact_with_limit, profile_heuristic, ratio_min,
    CoverageProfile,
};
use hcover::rand_lab::{run_experiment, scaling_report};
use hcover::report::RunReport;
use hcover::Result;

#[derive(Parser)]
#[command(name = "hcover", version, about = "Minimum K_t counts in H-covered graphs")]
struct Cli {
    /// emit the full run report as JSON instead of tables
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coverage and density profiles of H
    Profile {
        /// graph6, shorthand (K5, C7, P4, K4+pendant, K4-e,
        /// tightness:l=4,d=2, gnp:n=12,p=0.5,seed=1), or a file path
        #[arg(long)]
        graph: String,
        #[arg(short, default_value_t = 2)]
        t: usize,
        /// override the exact-profile vertex cap
        #[arg(long)]
        exact_max: Option<usize>,
        /// heuristic profile (upper bound on e, lower bound on a)
        #[arg(long)]
        heuristic: bool,
        /// restarts for the heuristic
        #[arg(long, default_value_t = 64)]
        effort: usize,
    },
    /// Solve the covering integer program at N
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(short, default_value_t = 2)]
        t: usize,
        #[arg(short = 'N', long)]
        target: usize,
    },
    /// Build an extremal or counterexample graph
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        graph: Option<String>,
        #[arg(short, default_value_t = 2)]
        t: usize,
        /// remainder (kind = l)
        #[arg(short, long)]
        r: Option<usize>,
        /// total vertex count (kinds m, ideal, elementary, pendant)
        #[arg(short = 'N', long)]
        target: Option<usize>,
        /// comma-separated part sizes (kind = elementary)
        #[arg(long, value_delimiter = ',')]
        parts: Option<Vec<usize>>,
        /// circulant side order (kind = tightness)
        #[arg(short, long)]
        l: Option<usize>,
        /// even degree (kind = tightness)
        #[arg(short, long)]
        d: Option<usize>,
        /// clique order (kind = pendant)
        #[arg(short, long)]
        n: Option<usize>,
    },
    /// Per-remainder-class verdicts, gamma/beta thresholds, shape check
    Classify {
        #[arg(long)]
        graph: String,
        #[arg(short, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 4)]
        q_max: usize,
    },
    /// Exhaustive ground truth at desk scale
    Oracle {
        #[arg(long)]
        graph: String,
        #[arg(short, default_value_t = 2)]
        t: usize,
        #[arg(short = 'N', long)]
        target: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Three-way agreement: constructions vs integer program vs oracle
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(short, default_value_t = 2)]
        t: usize,
        #[arg(short = 'N', long)]
        target: usize,
    },
    /// Seeded G_{n,p} experiment (single record, or a scaling table with --ns)
    Random {
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(short, long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        q_max: usize,
        /// append the record to this newline-delimited JSON file
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// scaling mode: comma-separated list of n values
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<usize>>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    L,
    M,
    Ideal,
    Elementary,
    Tightness,
    Pendant,
}

fn parse_kv(spec: &str) -> Result<std::collections::HashMap<String, String>> {
    let mut out = std::collections::HashMap::new();
    for piece in spec.split(',') {
        let (k, v) = piece.split_once('=').ok_or_else(|| {
            Error::InvalidArgument(format!("expected key=value, got '{piece}'"))
        })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn kv_get<T: std::str::FromStr>(
    kv: &std::collections::HashMap<String, String>,
    key: &str,
) -> Result<T> {
    kv.get(key)
        .ok_or_else(|| Error::InvalidArgument(format!("missing '{key}='")))?
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad value for '{key}'")))
}

fn parse_graph_arg(spec: &str) -> Result<Graph> {
    if let Some(rest) = spec.strip_prefix("tightness:") {
        let kv = parse_kv(rest)?;
        return build_tightness(kv_get(&kv, "l")?, kv_get(&kv, "d")?);
    }
    if let Some(rest) = spec.strip_prefix("gnp:") {
        let kv = parse_kv(rest)?;
        return random_gnp(kv_get(&kv, "n")?, kv_get(&kv, "p")?, kv_get(&kv, "seed")?);
    }
    let shorthand = |digits: &str| -> Option<usize> { digits.parse().ok() };
    if let Some(rest) = spec.strip_prefix('K') {
        if let Some(num) = rest.strip_suffix("+pendant").and_then(shorthand) {
            return Ok(pendant_graph(num));
        }
        if let Some(num) = rest.strip_suffix("-e").and_then(shorthand) {
            if num < 2 {
                return Err(Error::InvalidArgument("K<n>-e needs n >= 2".into()));
            }
            let edges: Vec<(usize, usize)> = complete(num)
                .edges()
                .into_iter()
                .filter(|&e| e != (0, 1))
                .collect();
            return Graph::from_edges(num, &edges);
        }
        if let Some(num) = shorthand(rest) {
            return Ok(complete(num));
        }
    }
    if let Some(num) = spec.strip_prefix('C').and_then(shorthand) {
        if num < 3 {
            return Err(Error::InvalidArgument("C<n> needs n >= 3".into()));
        }
        return Ok(cycle(num));
    }
    if let Some(num) = spec.strip_prefix('P').and_then(shorthand) {
        if num < 1 {
            return Err(Error::InvalidArgument("P<n> needs n >= 1".into()));
        }
        return Ok(path(num));
    }
    if std::path::Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)?;
        let first = text.lines().next().unwrap_or("");
        let looks_edge_list = first
            .split_whitespace()
            .all(|w| w.chars().all(|c| c.is_ascii_digit()))
            && first.split_whitespace().count() == 2;
        return if looks_edge_list {
            parse_edge_list(&text)
        } else {
            parse_graph6(first)
        };
    }
    parse_graph6(spec)
}

fn profile_for(g: &Graph, t: usize, exact_max: Option<usize>) -> Result<CoverageProfile> {
    profile_exact_with_limit(g, t, exact_max)
}

fn emit_graph(g: &Graph) {
    println!("graph6: {}", to_graph6(g));
    print!("{}", to_edge_list(g));
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<i32> {
    let start = Instant::now();
    let mut body = serde_json::Map::new();
    let mut exit = 0;
    match &cli.cmd {
        Cmd::Profile {
            graph,
            t,
            exact_max,
            heuristic,
            effort,
        } => {
            let g = parse_graph_arg(graph)?;
            let p = if *heuristic {
                profile_heuristic(&g, *t, *effort)?
            } else {
                profile_for(&g, *t, *exact_max)?
            };
            body.insert("graph".into(), to_graph6(&g).into());
            body.insert("exact".into(), p.exact.into());
            body.insert(
                "rows".into(),
                serde_json::to_value(p.rows()).expect("rows"),
            );
            let (c, argmin) = ratio_min(&p);
            body.insert("ratio_min".into(), c.to_string().into());
            body.insert("ratio_argmin".into(), serde_json::to_value(&argmin).unwrap());
            if !cli.json {
                print!("{}", p.render());
                println!("min_k a(k)/k = {c} at k in {argmin:?}");
            }
            if p.t == 2 && p.exact {
                let rep = check_profile_predicates(&p, &g)?;
                body.insert("predicates".into(), serde_json::to_value(&rep).unwrap());
                if !cli.json {
                    println!("{rep}");
                }
            }
        }
        Cmd::Solve { graph, t, target } => {
            let g = parse_graph_arg(graph)?;
            let p = profile_for(&g, *t, None)?;
            let sol = solve_ip(&p, *target)?;
            body.insert("solution".into(), serde_json::to_value(&sol).unwrap());
            if !cli.json {
                println!("cov_{{K_{t}}}({target}, H) = {}", sol.value);
                for m in &sol.optima {
                    println!("optimal parts: {m}");
                }
                if sol.overflow {
                    println!("(optima list truncated)");
                }
            }
        }
        Cmd::Construct {
            kind,
            graph,
            t,
            r,
            target,
            parts,
            l,
            d,
            n,
        } => {
            let need_graph = || -> Result<Graph> {
                parse_graph_arg(graph.as_deref().ok_or_else(|| {
                    Error::InvalidArgument("this kind needs --graph".into())
                })?)
            };
            let need = |x: &Option<usize>, name: &str| -> Result<usize> {
                x.ok_or_else(|| Error::InvalidArgument(format!("this kind needs --{name}")))
            };
            let g = match kind {
                Kind::L => {
                    let h = need_graph()?;
                    let p = profile_for(&h, *t, None)?;
                    build_l(&h, *t, need(r, "r")?, &p)?
                }
                Kind::M => build_m(&need_graph()?, need(target, "target")?)?,
                Kind::Ideal => {
                    let h = need_graph()?;
                    let p = profile_for(&h, *t, None)?;
                    build_ideal_extremal(&h, *t, need(target, "target")?, &p)?
                }
                Kind::Elementary => {
                    let ps = parts.clone().ok_or_else(|| {
                        Error::InvalidArgument("this kind needs --parts".into())
                    })?;
                    build_elementary_extremal(&need_graph()?, need(target, "target")?, &ps)?
                }
                Kind::Tightness => build_tightness(need(l, "l")?, need(d, "d")?)?,
                Kind::Pendant => build_pendant_clique(need(n, "n")?, need(target, "target")?)?,
            };
            body.insert("graph6".into(), to_graph6(&g).into());
            body.insert("edges".into(), to_edge_list(&g).into());
            body.insert(
                "clique_count".into(),
                count_cliques(&g, *t)?.into(),
            );
            if !cli.json {
                emit_graph(&g);
                println!("K_{t} count: {}", count_cliques(&g, *t)?);
            }
        }
        Cmd::Classify { graph, t, q_max } => {
            let g = parse_graph_arg(graph)?;
            let p = profile_for(&g, *t, None)?;
            let c = classify_remainders(&p, *q_max)?;
            let shape = check_theorem3_shape(&p, *q_max)?;
            body.insert("classification".into(), serde_json::to_value(&c).unwrap());
            body.insert("shape".into(), serde_json::to_value(&shape).unwrap());
            if !cli.json {
                println!(
                    "n = {}, gamma = {}, beta' = {:?}, beta = {:?}, q in 1..={}",
                    c.n, c.gamma, c.beta_prime, c.beta, c.q_max
                );
                for e in &c.per_r {
                    println!(
                        "  r = {}: {:?} (q_stable: {}, certificate: {:?})",
                        e.r, e.verdict, e.q_stable, e.certificate
                    );
                }
                if shape.passes() {
                    println!("shape check: all remainder classes match");
                } else {
                    for dev in &shape.deviations {
                        println!(
                            "shape deviation at r = {}, q = {}: expected {:?}, optima {:?}",
                            dev.r, dev.q, dev.expected, dev.found
                        );
                    }
                }
            }
        }
        Cmd::Oracle {
            graph,
            t,
            target,
            max_n,
        } => {
            let h = parse_graph_arg(graph)?;
            let budget = Budget {
                max_n: *max_n,
                ..Budget::default()
            };
            let res = min_cover_exhaustive(&h, *t, *target, budget)?;
            body.insert("oracle".into(), serde_json::to_value(&res).unwrap());
            if !cli.json {
                println!(
                    "min K_{t} count over H-covered graphs on {target} vertices: {}",
                    res.min_count
                );
                println!("extremal graphs ({}):", res.extremal.len());
                for s in &res.extremal {
                    println!("  {s}");
                }
                if !res.complete {
                    println!("warning: node budget exhausted, result incomplete");
                }
            }
            if !res.complete {
                exit = 3;
            }
        }
        Cmd::Verify { graph, t, target } => {
            let h = parse_graph_arg(graph)?;
            let p = profile_for(&h, *t, None)?;
            let ip = solve_ip(&p, *target)?;
            let rep = uniqueness_check(&h, *t, *target, &p, Budget::default())?;
            let ideal_member = build_ideal_extremal(&h, *t, *target, &p)?;
            let ideal_count = count_cliques(&ideal_member, *t)?;
            let mut family_min = ideal_count;
            for parts in hcover::oracle::m_partitions(h.n(), *target) {
                let g = build_elementary_extremal(&h, *target, &parts)?;
                family_min = family_min.min(count_cliques(&g, *t)?);
            }
            let agree = ip.value == rep.min_count && family_min == rep.min_count;
            body.insert("ip_value".into(), ip.value.into());
            body.insert("oracle_min".into(), rep.min_count.into());
            body.insert("family_min".into(), family_min.into());
            body.insert("agree".into(), agree.into());
            body.insert("uniqueness".into(), serde_json::to_value(&rep).unwrap());
            if !cli.json {
                println!("integer program: {}", ip.value);
                println!("oracle:          {}", rep.min_count);
                println!("constructions:   {family_min}");
                println!(
                    "agreement: {}",
                    if agree { "yes" } else { "NO" }
                );
                if !rep.family_nonextremal.is_empty() {
                    println!(
                        "family members that are non-extremal: {:?}",
                        rep.family_nonextremal
                    );
                }
                if !rep.extremal_outside.is_empty() {
                    println!(
                        "extremal graphs outside both families: {:?}",
                        rep.extremal_outside
                    );
                }
            }
            if !agree {
                exit = 1;
            }
        }
        Cmd::Random {
            n,
            p,
            seed,
            q_max,
            out,
            ns,
            trials,
        } => {
            if let Some(ns) = ns {
                let rep = scaling_report(ns, *p, *trials, *seed)?;
                body.insert("scaling".into(), serde_json::to_value(&rep).unwrap());
                if !cli.json {
                    print!("{}", rep.render());
                }
            } else {
                let n = n.ok_or_else(|| {
                    Error::InvalidArgument("random needs -n (or --ns for scaling)".into())
                })?;
                let rec = run_experiment(n, *p, *seed, *q_max)?;
                let line = serde_json::to_string(&rec).expect("record");
                body.insert("record".into(), serde_json::to_value(&rec).unwrap());
                if let Some(path) = out {
                    use std::io::Write;
                    let mut f = std::fs::OpenOptions::new()
                        .create(true)
                        .append(true)
                        .open(path)?;
                    writeln!(f, "{line}")?;
                }
                if !cli.json {
                    println!("{line}");
                }
            }
        }
    }
    if cli.json {
        let report = RunReport::new(
            argv,
            serde_json::Value::Object(body),
            start.elapsed().as_millis(),
        );
        println!("{}", report.to_json());
    }
    Ok(exit)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match run(&cli, argv) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Budget(_) | Error::SizeLimit(_) => 3,
                Error::Contract(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
