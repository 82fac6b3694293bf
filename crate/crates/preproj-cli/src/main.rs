use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use preproj::compgraph::{self, ComponentGraph, Slice};
use preproj::multiseg::{degree, msm_max, psi, Multisegment, TildeDim};
use preproj::quiver::{Rep, RepJson};
use preproj::roots::{self, CriticalReading, Lattice, RootVec, Slope};
use preproj::{fixtures, flags, shuffle};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "preproj", version, about = "Components, roots and flag combinatorics for preprojective algebras of type A")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    seed: u64,
    /// Independent samples per generic Ext value.
    #[arg(long, global = true, default_value_t = compgraph::DEFAULT_TRIALS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// The elliptic root system of the tubular algebra.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Component graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Shuffle algebra and flag counts.
    #[command(subcommand)]
    Shuffle(ShuffleCmd),
    /// Multisegments and the map ψ.
    #[command(subcommand)]
    Multiseg(MultisegCmd),
}

#[derive(Subcommand)]
enum RootsCmd {
    /// Check that the Coxeter matrix has order 6 and the radical identities.
    VerifyCoxeter,
    /// Count roots.
    Count {
        /// The 240 distinguished real roots, cross-checked with the bundled table.
        #[arg(long)]
        base: bool,
    },
    /// Number of Schur roots of a slope.
    SchurPerSlope {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Slope, rank and quasi-length of a root.
    Classify {
        /// Ten comma-separated integers.
        #[arg(allow_hyphen_values = true)]
        root: String,
    },
    /// The class R^λ_ℓ(i).
    Class {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        ql: usize,
        #[arg(long)]
        rank: usize,
    },
    /// δ of a positive root and the Λ₅ multisegment of its component.
    Delta {
        #[arg(allow_hyphen_values = true)]
        root: String,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Sampled component graph of Λ_n for n ≤ 4.
    Build {
        #[arg(short, value_parser = clap::value_parser!(u64).range(2..=4))]
        n: u64,
        /// Compare the reduced Λ₄ graph with the bundled edge list.
        #[arg(long)]
        check_fixture: bool,
        /// Export the reduced graph instead of the full one.
        #[arg(long)]
        reduced: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Maximal cliques of the reduced graph.
    Cliques {
        #[arg(short, value_parser = clap::value_parser!(u64).range(2..=4))]
        n: u64,
    },
    /// Graph of a slice of Schur roots of Λ₅ via the lattice criterion.
    A5 {
        /// Slopes such as 0, 1/2, -1 or inf; repeatable. Defaults to |num|,|den| ≤ 3.
        #[arg(long, allow_hyphen_values = true)]
        slope: Vec<String>,
        #[arg(long, default_value_t = 7)]
        max_ql: usize,
        #[arg(long, value_enum, default_value_t = Reading::Literal)]
        reading: Reading,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    Literal,
    Relaxed,
}

#[derive(Subcommand)]
enum ShuffleCmd {
    /// Σ over standard tableaux of the minor's skew shape.
    Minor {
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        cols: Vec<usize>,
        #[arg(short)]
        n: usize,
    },
    /// Expansion Σ_w χ(Φ_{w,x}) w of a module file.
    Expand {
        #[arg(long)]
        module: String,
    },
    /// Euler characteristic of one flag variety.
    Flag {
        #[arg(long)]
        module: String,
        #[arg(long, value_delimiter = ',')]
        word: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum MultisegCmd {
    /// Multisegment of the dense orbit of a dimension vector.
    Max {
        #[arg(value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// ψ of a covering dimension vector stored as [[vertex, level, count], ...].
    Psi {
        #[arg(long)]
        file: String,
    },
    /// Dimension vector of a multisegment.
    Degree {
        multisegment: String,
        #[arg(short)]
        n: Option<usize>,
    },
}

/// Outcome of a command: a report and whether its verifications passed.
struct Report {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Report {
    fn ok(text: impl Into<String>, json: serde_json::Value) -> Self {
        Report { text: text.into(), json, ok: true }
    }
}

/// Reads a path if it exists, otherwise a bundled fixture of that name.
fn read_input(name: &str) -> Result<String> {
    let p = Path::new(name);
    if p.exists() {
        return std::fs::read_to_string(p).with_context(|| format!("reading {name}"));
    }
    Ok(fixtures::load(name)?)
}

fn read_module(name: &str) -> Result<Rep> {
    let j: RepJson = serde_json::from_str(&read_input(name)?).with_context(|| format!("parsing {name}"))?;
    Ok(Rep::from_json(&j)?)
}

fn parse_root(s: &str) -> Result<RootVec> {
    let v: Vec<i64> = s
        .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| anyhow!("root must be ten comma-separated integers"))?;
    v.try_into().map_err(|_| anyhow!("root must have ten entries"))
}

fn write_out(path: &Option<PathBuf>, body: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn graph_body(g: &ComponentGraph, format: Format) -> Result<String> {
    Ok(g.export(if format == Format::Dot { "dot" } else { "json" })?)
}

fn roots_cmd(cmd: RootsCmd) -> Result<Report> {
    let lat = Lattice::delta();
    Ok(match cmd {
        RootsCmd::VerifyCoxeter => {
            let basis: Vec<RootVec> = (0..roots::DIM).map(|k| std::array::from_fn(|c| i64::from(c == k))).collect();
            let order6 = (1..=6).all(|k| basis.iter().all(|v| lat.phi_pow(v, k) == *v) == (k == 6));
            let radical = lat.apply_phi(&lat.h0) == lat.h0 && lat.apply_phi(&lat.hinf) == lat.hinf;
            let pairing = lat.form(&lat.h0, &lat.hinf) == 6 && lat.form(&lat.hinf, &lat.h0) == -6;
            let word = |b: bool| if b { "ok" } else { "FAILED" };
            Report {
                text: format!(
                    "Phi^6 = I: {}\nPhi h0 = h0, Phi hinf = hinf: {}\n<h0,hinf> = 6, <hinf,h0> = -6: {}",
                    word(order6),
                    word(radical),
                    word(pairing)
                ),
                json: json!({"order6": order6, "radical": radical, "pairing": pairing}),
                ok: order6 && radical && pairing,
            }
        }
        RootsCmd::Count { base } => {
            if !base {
                bail!("only --base is supported");
            }
            let b = roots::base_roots();
            let n = b.all().len();
            Report {
                text: format!("{n}"),
                json: json!({"count": n, "matches_fixture": b.matches_fixture, "from_fixture": b.from_fixture}),
                ok: n == 240 && b.matches_fixture,
            }
        }
        RootsCmd::SchurPerSlope { lambda } => {
            let slope: Slope = lambda.parse()?;
            let rs = roots::schur_roots_of_slope(slope)?;
            Report::ok(
                format!("{}", rs.len()),
                json!({"slope": slope.to_string(), "count": rs.len(), "roots": rs.iter().map(|v| json!({"v": v})).collect::<Vec<_>>()}),
            )
        }
        RootsCmd::Classify { root } => {
            let r = parse_root(&root)?;
            let c = lat.classify(&r)?;
            let schur = lat.is_schur(&r)?;
            Report::ok(
                format!("slope {} rank {} ql {} q {}{}", c.slope, c.rank, c.ql, lat.q(&r), if schur { " schur" } else { "" }),
                json!({"slope": c.slope.to_string(), "rank": c.rank, "ql": c.ql, "q": lat.q(&r), "schur": schur}),
            )
        }
        RootsCmd::Class { lambda, ql, rank } => {
            let slope: Slope = lambda.parse()?;
            let rs = roots::construct_class(slope, ql, rank)?;
            let text = rs.iter().map(compgraph::root_label).collect::<Vec<_>>().join("\n");
            Report::ok(
                text,
                json!({"slope": slope.to_string(), "rank": rank, "ql": ql, "roots": rs.iter().map(|v| json!({"v": v})).collect::<Vec<_>>()}),
            )
        }
        RootsCmd::Delta { root } => {
            let r = parse_root(&root)?;
            let d = roots::delta_map(&r)?;
            let m = psi(&d);
            let cells: Vec<String> = d.iter().map(|(i, j, c)| format!("{c}x{i}_{j}")).collect();
            Report::ok(
                format!("delta = {}\npsi = {m}", cells.join(" + ")),
                json!({"delta": d.to_json(), "psi": m.to_json()}),
            )
        }
    })
}

fn graph_cmd(cmd: GraphCmd, g: &Global) -> Result<Report> {
    let trials = g.trials as usize;
    Ok(match cmd {
        GraphCmd::Build { n, check_fixture, reduced, o } => {
            let n = n as usize;
            let t = compgraph::ext_table(n, trials, g.seed)?;
            let full = t.graph();
            let red = compgraph::reduced(&full, &t.projective);
            let mut text = format!("{} vertices, {} edges", red.len(), red.edges.len());
            let mut ok = t.asymmetric.is_empty();
            let mut diff_json = serde_json::Value::Null;
            if check_fixture {
                if n != 4 {
                    bail!("--check-fixture applies to n = 4");
                }
                let d = compgraph::check_g4_fixture(&red)?;
                if d.matches() {
                    text.push_str(": match");
                } else {
                    ok = false;
                    text.push_str(&format!(": MISMATCH (vertices {:?}, missing {:?}, extra {:?})", d.vertices, d.missing, d.extra));
                }
                diff_json = json!({"match": d.matches(), "missing": d.missing, "extra": d.extra});
            }
            if !t.asymmetric.is_empty() {
                text.push_str(&format!("\nasymmetric Ext pairs: {:?}", t.asymmetric));
            }
            let out = if reduced { &red } else { &full };
            write_out(&o, &graph_body(out, g.format)?)?;
            if g.format == Format::Dot && o.is_none() {
                text = out.to_dot();
            }
            Report {
                text,
                json: json!({"vertices": red.len(), "edges": red.edges.len(), "fixture": diff_json,
                             "graph": serde_json::from_str::<serde_json::Value>(&out.to_json())?}),
                ok,
            }
        }
        GraphCmd::Cliques { n } => {
            let t = compgraph::ext_table(n as usize, trials, g.seed)?;
            let red = compgraph::reduced(&t.graph(), &t.projective);
            let cl = compgraph::max_cliques(&red);
            let sizes: std::collections::BTreeSet<usize> = cl.iter().map(Vec::len).collect();
            let sizes_txt: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            Report {
                text: format!("{} cliques, size {}", cl.len(), sizes_txt.join("/")),
                json: json!({"count": cl.len(), "sizes": sizes, "cliques": cl}),
                ok: sizes.len() <= 1,
            }
        }
        GraphCmd::A5 { slope, max_ql, reading, o } => {
            let slice = if slope.is_empty() {
                Slice { max_ql, ..Slice::default_bounded(3) }
            } else {
                Slice { slopes: slope.iter().map(|s| s.parse()).collect::<preproj::Result<_>>()?, max_ql }
            };
            let rs = slice.roots()?;
            let reading = match reading {
                Reading::Literal => CriticalReading::Literal,
                Reading::Relaxed => CriticalReading::Relaxed,
            };
            let gr = compgraph::build_graph_a5(&rs, reading)?;
            write_out(&o, &graph_body(&gr, g.format)?)?;
            let mut text = format!("{} vertices, {} edges", gr.len(), gr.edges.len());
            if g.format == Format::Dot && o.is_none() {
                text = gr.to_dot();
            }
            Report::ok(text, serde_json::from_str(&gr.to_json())?)
        }
    })
}

fn shuffle_cmd(cmd: ShuffleCmd) -> Result<Report> {
    Ok(match cmd {
        ShuffleCmd::Minor { rows, cols, n } => {
            let p = shuffle::syt_minor(&rows, &cols, n)?;
            Report::ok(p.to_string(), serde_json::to_value(p.to_json())?)
        }
        ShuffleCmd::Expand { module } => {
            let x = read_module(&module)?;
            let p = flags::delta_expansion(&x)?;
            Report::ok(p.to_string(), serde_json::to_value(p.to_json())?)
        }
        ShuffleCmd::Flag { module, word } => {
            let x = read_module(&module)?;
            let v = flags::flag_count(&x, &word)?;
            Report::ok(v.to_string(), json!({"word": word, "chi": v}))
        }
    })
}

fn multiseg_cmd(cmd: MultisegCmd) -> Result<Report> {
    Ok(match cmd {
        MultisegCmd::Max { dims } => {
            let m = msm_max(&dims);
            Report::ok(m.to_string(), json!(m.to_json()))
        }
        MultisegCmd::Psi { file } => {
            let t: Vec<(usize, i64, usize)> = serde_json::from_str(&read_input(&file)?).with_context(|| format!("parsing {file}"))?;
            let m = psi(&TildeDim::from_triples(&t));
            Report::ok(m.to_string(), json!(m.to_json()))
        }
        MultisegCmd::Degree { multisegment, n } => {
            let m: Multisegment = multisegment.parse()?;
            let n = n.unwrap_or_else(|| m.max_vertex());
            if n < m.max_vertex() {
                bail!("n is smaller than the largest vertex of the multisegment");
            }
            let d = degree(&m, n);
            let txt: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            Report::ok(txt.join(","), json!(d))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    let res = match cli.cmd {
        Cmd::Roots(c) => roots_cmd(c),
        Cmd::Graph(c) => graph_cmd(c, &g),
        Cmd::Shuffle(c) => shuffle_cmd(c),
        Cmd::Multiseg(c) => multiseg_cmd(c),
    };
    match res {
        Ok(r) => {
            if g.format == Format::Json {
                let mut v = json!({"seed": g.seed, "trials": g.trials, "ok": r.ok});
                v["result"] = r.json;
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                println!("{}", r.text.trim_end());
                eprintln!("seed {} trials {}", g.seed, g.trials);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
