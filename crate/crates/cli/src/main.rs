//! `hdpart`: batch computations on d-dimensional partitions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 resource limit.

mod input;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hdpart::bijection::phi_inverse_checked;
use hdpart::diagram::{corners, top_corners};
use hdpart::enumerate::{
    count_boxed_within, count_by_ch_volume, count_by_ch_volume_direct, count_by_volume_within,
    count_packed_by_slice_sums,
};
use hdpart::groth::{boxed_poly, groth_family, groth_poly, monomial_expansion};
use hdpart::lpp::{joint_probability_exact, monte_carlo_compare, monte_carlo_joint, parse_rational, single_point_cdf};
use hdpart::series::{
    boxed_gf, c_stat_boxed_gf, distinct_parts_gf, macmahon_number, macmahon_series, p_stat_shaped_gf,
    pyramid_gf, shaped_gf,
};
use hdpart::{phi, GeomParams, StatRecord, TruncSeries};
use serde_json::{json, Value};

pub enum Failure {
    Usage(String),
    Limit(String),
}

impl From<hdpart::Error> for Failure {
    fn from(e: hdpart::Error) -> Self {
        match e {
            hdpart::Error::ResourceLimit { .. } => Failure::Limit(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "hdpart", version, about = "Exact computations on d-dimensional partitions")]
struct Cli {
    /// Worker threads for enumeration and simulation (default: all cores).
    #[arg(long, global = true, env = "HDPART_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count partitions and matrices.
    Count(CountArgs),
    /// Truncated generating functions in `t` (corners) and `q`.
    Series(SeriesArgs),
    /// Grothendieck-type corner polynomials.
    Groth(GrothArgs),
    /// The last-passage bijection between matrices and partitions.
    Bij {
        #[command(subcommand)]
        dir: BijCmd,
    },
    /// Corner statistics of a partition.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// Geometric last passage percolation.
    Lpp {
        #[command(subcommand)]
        cmd: LppCmd,
    },
    /// Run the identity suites and report pass/fail.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: TableFormat,
    /// Give up (exit 3) after generating this many partitions.
    #[arg(long, default_value_t = 1_000_000_000, global = true)]
    limit: u64,
    #[command(subcommand)]
    what: CountCmd,
}

#[derive(Subcommand)]
enum CountCmd {
    /// `|P(n_1, ..., n_{d+1})|`.
    Boxed {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// `p_d(n)`, partitions by volume, for `n = 0..=upto`.
    Volume {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        upto: u64,
    },
    /// MacMahon numbers `m_d(n)` from the product formula.
    Macmahon {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        upto: u64,
    },
    /// Partitions by corner-hook volume, by enumeration.
    Chvol {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        upto: u64,
        /// Enumerate partitions instead of matrices.
        #[arg(long)]
        direct: bool,
    },
    /// Packed matrices grouped by slice sums; the last entry of `--dims`
    /// bounds the largest passage time.
    Packed {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Csv,
    Marginal,
    Json,
}

#[derive(Args)]
struct SeriesArgs {
    /// Keep terms up to `t^N q^N`.
    #[arg(long, default_value_t = 6, global = true)]
    trunc: usize,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: SeriesFormat,
    #[command(subcommand)]
    what: SeriesCmd,
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Partitions with shape inside (or equal to) a lower set.
    Shaped {
        #[arg(long)]
        rho: PathBuf,
        /// Sum over `sh(pi) = rho` only.
        #[arg(long)]
        exact: bool,
    },
    /// All partitions of rank `d`.
    Macmahon {
        #[arg(long)]
        d: usize,
    },
    /// Shape inside the pyramid `i_1 + ... + i_d <= m + d - 1`.
    Pyramid {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
    },
    /// Shape inside the box `[n_1] x ... x [n_d]`.
    Boxed {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// Distinct-parts partitions counted by `t`.
    Distinct {
        #[arg(long)]
        d: usize,
    },
    /// The first-coordinate corner statistic on a box.
    Cstat {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// The weighted corner statistic on a lower set.
    Pstat {
        #[arg(long)]
        rho: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyFormat {
    Json,
    Pretty,
}

#[derive(Args)]
struct GrothArgs {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: PolyFormat,
    /// Shorthand for `--format pretty`.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    what: GrothCmd,
}

#[derive(Subcommand)]
enum GrothCmd {
    /// `g_rho` on the box `(n_1, ..., n_{d+1})`.
    Poly {
        #[arg(long)]
        rho: PathBuf,
        #[arg(long = "box", value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
    },
    /// The boxed polynomial `F`, summed over every first slice.
    Boxed {
        #[arg(long = "box", value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
    },
    /// Every nonzero `g_rho` on the box.
    Family {
        #[arg(long = "box", value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
    },
    /// Coefficients of `F` in products of monomial quasisymmetric functions.
    Expansion {
        #[arg(long = "box", value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum BijCmd {
    /// Matrix to partition (last passage times).
    Forward {
        #[arg(long)]
        input: PathBuf,
    },
    /// Partition to matrix.
    Inverse {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum LppCmd {
    /// Monte Carlo boundary-slice frequencies against the exact law.
    Simulate {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Geometric parameter, e.g. `1/2` or `0.25`.
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare a single boundary slice instead of every likely one.
        #[arg(long)]
        rho: Option<PathBuf>,
        /// Smallest expected count for an outcome to be compared.
        #[arg(long, default_value_t = 25.0)]
        min_expected: f64,
    },
    /// Exact probability of one boundary slice.
    Exact {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        q: String,
        #[arg(long)]
        rho: PathBuf,
    },
    /// Exact `Prob(G(n_1, ..., n_d) <= n)`.
    Cdf {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    suite: Vec<verify::Suite>,
    #[arg(long, default_value_t = 2)]
    n1: usize,
    #[arg(long, default_value_t = 3)]
    n2: usize,
    #[arg(long, default_value_t = 6)]
    trunc: usize,
    #[arg(long, default_value_t = 20_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn sequence(label: &str, d: usize, values: Vec<String>, format: TableFormat) -> String {
    match format {
        TableFormat::Json => to_json(&json!({ "kind": label, "d": d, "values": values })),
        TableFormat::Csv => {
            let mut s = String::from("n,value\n");
            for (n, v) in values.iter().enumerate() {
                writeln!(s, "{n},{v}").unwrap();
            }
            s
        }
    }
}

fn count(args: CountArgs) -> Result<String, Failure> {
    let f = args.format;
    Ok(match args.what {
        CountCmd::Boxed { dims } => {
            let c = count_boxed_within(&dims, args.limit)?.to_string();
            match f {
                TableFormat::Json => to_json(&json!({ "dims": dims, "count": c })),
                TableFormat::Csv => format!("count\n{c}\n"),
            }
        }
        CountCmd::Volume { d, upto } => {
            let v = (0..=upto)
                .map(|n| count_by_volume_within(d, n, args.limit).map(|c| c.to_string()))
                .collect::<hdpart::Result<_>>()?;
            sequence("volume", d, v, f)
        }
        CountCmd::Macmahon { d, upto } => {
            let v = (0..=upto as usize)
                .map(|n| macmahon_number(d, n).map(|m| m.to_string()))
                .collect::<hdpart::Result<_>>()?;
            sequence("macmahon", d, v, f)
        }
        CountCmd::Chvol { d, upto, direct } => {
            let v = (0..=upto)
                .map(|n| {
                    if direct {
                        count_by_ch_volume_direct(d, n)
                    } else {
                        count_by_ch_volume(d, n)
                    }
                    .map(|c| c.to_string())
                })
                .collect::<hdpart::Result<_>>()?;
            sequence("chvol", d, v, f)
        }
        CountCmd::Packed { dims } => {
            let (&cap, base) = dims
                .split_last()
                .ok_or_else(|| Failure::Usage("--dims needs at least one entry".into()))?;
            let table = count_packed_by_slice_sums(base, cap as u64)?;
            match f {
                TableFormat::Json => {
                    let rows: Vec<Value> = table
                        .iter()
                        .map(|(k, v)| json!({ "slice_sums": k, "count": v.to_string() }))
                        .collect();
                    to_json(&json!({ "dims": dims, "rows": rows }))
                }
                TableFormat::Csv => {
                    let mut s = String::from("slice_sums,count\n");
                    for (k, v) in &table {
                        let key: Vec<String> = k
                            .iter()
                            .map(|a| a.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                            .collect();
                        writeln!(s, "{},{v}", key.join("|")).unwrap();
                    }
                    s
                }
            }
        }
    })
}

fn series(args: SeriesArgs) -> Result<String, Failure> {
    let n = args.trunc;
    let s: TruncSeries = match args.what {
        SeriesCmd::Shaped { rho, exact } => shaped_gf(&input::read_shape(&rho)?, exact, n),
        SeriesCmd::Macmahon { d } => macmahon_series(d, n)?,
        SeriesCmd::Pyramid { d, m } => pyramid_gf(d, m, n)?,
        SeriesCmd::Boxed { dims } => boxed_gf(&dims, n),
        SeriesCmd::Distinct { d } => distinct_parts_gf(d, n)?,
        SeriesCmd::Cstat { dims } => c_stat_boxed_gf(&dims, n)?,
        SeriesCmd::Pstat { rho } => p_stat_shaped_gf(&input::read_shape(&rho)?, n),
    };
    Ok(match args.format {
        SeriesFormat::Csv => s.to_csv(),
        SeriesFormat::Marginal => s.marginal_csv(),
        SeriesFormat::Json => {
            let terms: Vec<Value> = s
                .terms()
                .into_iter()
                .map(|(t, q, c)| json!({ "t": t, "q": q, "coeff": c.to_string() }))
                .collect();
            to_json(&json!({ "trunc": n, "terms": terms }))
        }
    })
}

fn groth(args: GrothArgs) -> Result<String, Failure> {
    let pretty = args.pretty || args.format == PolyFormat::Pretty;
    let show = |p: &hdpart::MultiPoly| {
        if pretty {
            format!("{}\n", p.pretty())
        } else {
            to_json(p)
        }
    };
    Ok(match args.what {
        GrothCmd::Poly { rho, bounds } => show(&groth_poly(&input::read_shape(&rho)?, &bounds)?),
        GrothCmd::Boxed { bounds } => show(&boxed_poly(&bounds)?),
        GrothCmd::Family { bounds } => {
            let family = groth_family(&bounds)?;
            if pretty {
                let mut s = String::new();
                for (rho, g) in &family {
                    writeln!(s, "rho = {}\n{}\n", rho.as_array().to_nested(), g.pretty()).unwrap();
                }
                s
            } else {
                let rows: Vec<Value> = family
                    .iter()
                    .map(|(rho, g)| json!({ "rho": rho, "poly": g }))
                    .collect();
                to_json(&rows)
            }
        }
        GrothCmd::Expansion { bounds } => {
            let table = monomial_expansion(&bounds)?;
            if pretty {
                let mut s = String::new();
                for (alphas, m) in &table {
                    let factors: Vec<String> = alphas
                        .iter()
                        .map(|a| {
                            let parts: Vec<String> = a.parts().iter().map(u32::to_string).collect();
                            format!("M({})", parts.join(","))
                        })
                        .collect();
                    writeln!(s, "{m} * {}", factors.join(" ")).unwrap();
                }
                s
            } else {
                let rows: Vec<Value> = table
                    .iter()
                    .map(|(a, m)| json!({ "alphas": a, "count": m.to_string() }))
                    .collect();
                to_json(&rows)
            }
        }
    })
}

fn lpp(cmd: LppCmd) -> Result<String, Failure> {
    Ok(match cmd {
        LppCmd::Simulate { dims, q, samples, seed, rho, min_expected } => {
            let p = GeomParams::new(parse_rational(&q)?, dims.clone(), seed)?;
            match rho {
                Some(path) => to_json(&monte_carlo_joint(&input::read_partition(&path)?, &p, samples)?),
                None => {
                    let rows = monte_carlo_compare(&p, samples, min_expected)?;
                    to_json(&json!({
                        "dims": dims,
                        "q": p.q().to_string(),
                        "seed": seed,
                        "samples": samples,
                        "outcomes": rows,
                    }))
                }
            }
        }
        LppCmd::Exact { dims, q, rho } => {
            let q = parse_rational(&q)?;
            let rho = input::read_partition(&rho)?;
            let pr = joint_probability_exact(&rho, &dims, &q)?;
            to_json(&json!({ "dims": dims, "q": q.to_string(), "rho": rho, "probability": pr.to_string() }))
        }
        LppCmd::Cdf { dims, n, q } => {
            let q = parse_rational(&q)?;
            let c = single_point_cdf(&dims, n, &q)?;
            to_json(&json!({ "dims": dims, "n": n, "q": q.to_string(), "cdf": c.to_string() }))
        }
    })
}

fn execute(command: Command) -> Result<(String, bool), Failure> {
    let ok = |s: String| Ok((s, true));
    match command {
        Command::Count(a) => ok(count(a)?),
        Command::Series(a) => ok(series(a)?),
        Command::Groth(a) => ok(groth(a)?),
        Command::Bij { dir: BijCmd::Forward { input } } => ok(to_json(&phi(&input::read_matrix(&input)?))),
        Command::Bij { dir: BijCmd::Inverse { input } } => {
            let pi = input::read_partition(&input)?;
            ok(to_json(&phi_inverse_checked(pi.as_array())?))
        }
        Command::Stats { input } => {
            let pi = input::read_partition(&input)?;
            ok(to_json(&json!({
                "stats": StatRecord::of(&pi),
                "corners": corners(&pi),
                "top_corners": top_corners(&pi),
            })))
        }
        Command::Lpp { cmd } => ok(lpp(cmd)?),
        Command::Verify(a) => {
            let scale = verify::Scale {
                n1: a.n1,
                n2: a.n2,
                trunc: a.trunc,
                samples: a.samples,
                seed: a.seed,
            };
            let report = verify::run(&a.suite, &scale);
            Ok((to_json(&report), report.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(cli.command) {
        Ok((out, pass)) => {
            print!("{out}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
