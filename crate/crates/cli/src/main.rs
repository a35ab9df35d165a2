use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mbg::bounds::bound_report;
use mbg::construct::{audit_edges, build, Construction};
use mbg::graph::Format;
use mbg::params::full_size;
use mbg::scheme::make_schedule;
use mbg::tables::{table1, table1_csv, table2, table2_csv, table2_k_range, table2_n_range};
use mbg::verify::{certify_graph, check_schedule, exact_broadcast_time};
use mbg::{make_params, ConstructionParams, Error, Graph, VertexId, VertexLabel};

// a closed stdout (e.g. piped into head) ends output quietly
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! json {
    ($value:expr) => {
        serde_json::to_string_pretty($value).expect("output serializes")
    };
}

#[derive(Parser)]
#[command(name = "mbg", version, about = "Build and certify sparse broadcast graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    t: u32,
    #[arg(long)]
    k: u32,
    /// Number of vertices; defaults to the full size N.
    #[arg(long)]
    n: Option<u64>,
}

impl Instance {
    fn build_params(&self) -> Result<ConstructionParams, Error> {
        let n = match self.n {
            Some(n) => n,
            None => {
                check_t(self.t)?;
                if self.k < 2 || self.k > self.t {
                    return Err(Error::ParamOutOfRange(format!("k = {} outside 2..=t", self.k)));
                }
                full_size(self.t, self.k)
            }
        };
        make_params(self.t, self.k, n)
    }

    fn build(&self) -> Result<Construction, Error> {
        build(&self.build_params()?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived construction parameters.
    Params(Instance),
    /// Build a graph, optionally write it, and print its edge accounting.
    Construct {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Generate and check a schedule for each originator; exit 0 iff all pass.
    Certify {
        #[command(flatten)]
        inst: Instance,
        /// Vertex id, `tree:pos:cube` label, or `all`.
        #[arg(long, default_value = "all")]
        originator: String,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Omit the per-originator rows.
        #[arg(long)]
        brief: bool,
    },
    /// Print the schedule for one originator.
    Schedule {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        originator: String,
    },
    /// Exact broadcast time of a small graph file.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        originator: String,
    },
    /// Evaluate every upper bound for `n`.
    Bounds {
        #[arg(long)]
        n: u64,
    },
    /// Bounds at the full sizes N as CSV.
    Table1 {
        #[arg(long, default_value_t = 7)]
        t_min: u32,
        #[arg(long, default_value_t = 18)]
        t_max: u32,
    },
    /// Bounds for every n of one t as CSV.
    Table2 {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n_min: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        /// Leave hl blank up to the full size of the second-largest k.
        #[arg(long)]
        paper_facsimile: bool,
    },
    /// Convert a graph file between formats.
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Graph::parse_any(&text)
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn resolve(g: &Graph, text: &str) -> Result<VertexId, Error> {
    let v = match text.parse::<u32>() {
        Ok(i) => VertexId(i),
        Err(_) => g.id_of(&text.parse::<VertexLabel>()?).ok_or_else(|| Error::UnknownVertex(text.into()))?,
    };
    if g.contains(v) {
        Ok(v)
    } else {
        Err(Error::UnknownVertex(text.into()))
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Params(inst) => outln!("{}", json!(&inst.build_params()?)),
        Command::Construct { inst, out, format } => {
            let c = inst.build()?;
            if out.is_some() {
                write_out(&out, &c.graph.export(format))?;
            }
            outln!("{}", json!(&audit_edges(&c)));
        }
        Command::Certify { inst, originator, jobs, brief } => {
            let c = inst.build()?;
            let list = match originator.as_str() {
                "all" => None,
                one => Some(vec![resolve(&c.graph, one)?]),
            };
            let mut report = certify_graph(&c, list.as_deref(), jobs);
            let pass = report.pass;
            if brief {
                report = report.brief();
            }
            outln!("{}", report.to_json());
            if !pass {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Schedule { inst, originator } => {
            let c = inst.build()?;
            let s = make_schedule(&c, resolve(&c.graph, &originator)?)?;
            check_schedule(&c.graph, &s).map_err(|v| Error::InvalidGraph(v.to_string()))?;
            outln!("{}", s.to_json());
        }
        Command::Exact { graph, originator } => {
            let g = read_graph(&graph)?;
            outln!("{}", exact_broadcast_time(&g, resolve(&g, &originator)?)?);
        }
        Command::Bounds { n } => outln!("{}", json!(&bound_report(n)?)),
        Command::Table1 { t_min, t_max } => {
            check_t(t_min)?;
            check_t(t_max)?;
            out!("{}", table1_csv(&table1(t_min..=t_max)));
        }
        Command::Table2 { t, n_min, n_max, paper_facsimile } => {
            check_t(t)?;
            let default = table2_n_range(t);
            let range = n_min.unwrap_or(*default.start())..=n_max.unwrap_or(*default.end());
            let ks = table2_k_range(t);
            out!("{}", table2_csv(&table2(t, range, ks.clone(), paper_facsimile), ks));
        }
        Command::Export { graph, format, out } => {
            let g = read_graph(&graph)?;
            write_out(&out, &g.export(format))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_t(t: u32) -> Result<(), Error> {
    if (7..=40).contains(&t) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange(format!("t = {t} outside 7..=40")))
    }
}
