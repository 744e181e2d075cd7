use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lce_core::combinat::{count_01_matrices, parse_composition};
use lce_core::klpoly::KlEngine;
use lce_core::lce::{c_via_kl, d_via_decomposition, d_via_theorem_main};
use lce_core::multiseg::{enumerate_multisegments, Multisegment};
use lce_core::report::{self, Expansion};
use lce_core::symgroup::Permutation;
use lce_core::Error;

#[derive(Parser)]
#[command(name = "lce", version, about = "Local character expansions of integral principal GL_n representations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Kazhdan-Lusztig cache file, read at start and rewritten at exit.
    #[arg(long, value_name = "PATH", global = true)]
    cache: Option<PathBuf>,

    /// Largest number of segments (or permutation size) accepted.
    #[arg(long, value_name = "INT", default_value_t = 9, global = true)]
    max_k: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// c-vector, d-vector and standard decomposition of Z(m).
    Expand {
        #[command(flatten)]
        input: MultisegmentInput,
        /// Also run the standard-module route and fail (exit 4) on mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Degenerate Whittaker dimensions of Z(m).
    Whittaker {
        #[command(flatten)]
        input: MultisegmentInput,
        /// Compare against the standard-module route (exit 4 on mismatch).
        #[arg(long)]
        verify: bool,
    },
    /// Z(m) on the basis of standard modules.
    Decompose {
        #[command(flatten)]
        input: MultisegmentInput,
    },
    /// The Kazhdan-Lusztig polynomial P_{x,w}.
    Kl {
        /// One-line notation, e.g. 1234 or [1,2,3,4].
        x: String,
        w: String,
    },
    /// The matrix s(alpha, beta^t) over partitions of N, or one count s(ALPHA, BETA).
    Smatrix {
        /// Either N, or a row-sum composition such as "(2,2)".
        first: String,
        /// Column-sum composition such as "(2,1,1)".
        second: Option<String>,
    },
    /// One record per multisegment of total length N inside the window.
    Enumerate {
        n: usize,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, required = true)]
        window: Vec<i64>,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(clap::Args)]
struct MultisegmentInput {
    /// Segments joined by '+', e.g. "[0,1]+[1,2]".
    multisegment: Option<String>,
    /// JSON file holding {"segments": [[lo, hi], ...]}.
    #[arg(long, value_name = "PATH", conflicts_with = "multisegment")]
    input: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Invalid(String),
    Mismatch(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Mismatch(_) => 4,
            Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Mismatch(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidPartition(_) | Error::InvalidPermutation(_) => Failure::Parse(e.to_string()),
            Error::InvalidMultisegment(_) | Error::EmptyWindow { .. } | Error::InvalidStandardModule(_) => {
                Failure::Invalid(e.to_string())
            }
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let engine = KlEngine::new();
    let result = (|| {
        if let Some(path) = &cli.cache {
            engine.load_cache_file(path)?;
        }
        let stdout = io::stdout();
        let mut out = BufWriter::new(stdout.lock());
        let res = run(&cli, &engine, &mut out);
        out.flush()?;
        if let Some(path) = &cli.cache {
            engine.save_cache_file(path)?;
        }
        res
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lce: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_multisegment(input: &MultisegmentInput, max_k: usize) -> Result<Multisegment, Failure> {
    let m: Multisegment = match (&input.multisegment, &input.input) {
        (Some(text), None) => text.parse()?,
        (None, Some(path)) => {
            let raw = std::fs::read_to_string(path)?;
            serde_json::from_str(&raw).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?
        }
        _ => return Err(Failure::Parse("give a multisegment or --input PATH".into())),
    };
    check_k(m.k(), max_k)?;
    Ok(m)
}

fn check_k(k: usize, max_k: usize) -> Result<(), Failure> {
    if k > max_k {
        return Err(Failure::Invalid(format!("k = {k} exceeds --max-k {max_k}")));
    }
    Ok(())
}

fn emit_json(out: &mut impl Write, v: &serde_json::Value) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Other(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: &Cli, engine: &KlEngine, out: &mut impl Write) -> Result<(), Failure> {
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Expand { input, verify } => {
            let m = read_multisegment(input, cli.max_k)?;
            let x = Expansion::compute(engine, &m, *verify);
            if structured {
                emit_json(out, &x.to_json())?;
            } else {
                write!(out, "{}", x.to_table())?;
            }
            if x.verified() == Some(false) {
                return Err(Failure::Mismatch(format!("the two routes disagree for {m}")));
            }
        }
        Command::Whittaker { input, verify } => {
            let m = read_multisegment(input, cli.max_k)?;
            let d = d_via_theorem_main(&c_via_kl(engine, &m));
            let other = verify.then(|| d_via_decomposition(engine, &m));
            if structured {
                let mut obj = serde_json::json!({
                    "multisegment": m.to_string(),
                    "n": m.n(),
                    "k": m.k(),
                    "d": report::vector_json(&d),
                });
                if let Some(o) = &other {
                    obj["d_decomposition"] = report::vector_json(o);
                    obj["verified"] = serde_json::json!(*o == d);
                }
                emit_json(out, &obj)?;
            } else {
                writeln!(out, "d: {d}")?;
                if let Some(o) = &other {
                    writeln!(out, "standard-module route: {o}")?;
                }
            }
            if other.is_some_and(|o| o != d) {
                return Err(Failure::Mismatch(format!("the two routes disagree for {m}")));
            }
        }
        Command::Decompose { input } => {
            let m = read_multisegment(input, cli.max_k)?;
            let dec = lce_core::lce::decompose(engine, &m);
            if structured {
                emit_json(
                    out,
                    &serde_json::json!({
                        "multisegment": m.to_string(),
                        "n": m.n(),
                        "k": m.k(),
                        "decomposition": report::decomposition_json(&dec),
                    }),
                )?;
            } else {
                writeln!(out, "Z({m}) =")?;
                write!(out, "{}", report::decomposition_table(&dec))?;
            }
        }
        Command::Kl { x, w } => {
            let x: Permutation = x.parse()?;
            let w: Permutation = w.parse()?;
            if x.k() != w.k() {
                return Err(Failure::Parse(format!("{x} and {w} have different lengths")));
            }
            check_k(x.k(), cli.max_k)?;
            let p = engine.kl(&x, &w)?;
            if structured {
                emit_json(out, &report::kl_json(&x, &w, &p))?;
            } else {
                write!(out, "{}", report::kl_table(&x, &w, &p))?;
            }
        }
        Command::Smatrix { first, second } => match second {
            None => {
                let n: usize = first
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Parse(format!("expected N or two compositions, got {first:?}")))?;
                if structured {
                    emit_json(out, &report::smatrix_json(n))?;
                } else {
                    write!(out, "{}", report::smatrix_table(n))?;
                }
            }
            Some(second) => {
                let a = parse_composition(first)?;
                let b = parse_composition(second)?;
                let s = count_01_matrices(a.parts(), b.parts());
                if structured {
                    emit_json(
                        out,
                        &serde_json::json!({
                            "alpha": a.parts(),
                            "beta": b.parts(),
                            "count": report::big_json(&s.into()),
                        }),
                    )?;
                } else {
                    writeln!(out, "s({first}, {second}) = {s}")?;
                }
            }
        },
        Command::Enumerate { n, window, verify } => {
            let (lo, hi) = (window[0], window[1]);
            let stream = enumerate_multisegments(*n, lo, hi)?;
            let mut mismatches = Vec::new();
            let mut json_records = Vec::new();
            let mut batch: Vec<Multisegment> = Vec::new();
            let mut stream = stream.peekable();
            while stream.peek().is_some() {
                batch.clear();
                batch.extend(stream.by_ref().take(64));
                for m in &batch {
                    check_k(m.k(), cli.max_k)?;
                }
                let records: Vec<Expansion> =
                    batch.par_iter().map(|m| Expansion::compute(engine, m, *verify)).collect();
                for x in &records {
                    if structured {
                        json_records.push(x.to_json());
                    } else {
                        writeln!(out, "{}", x.to_table())?;
                    }
                    if x.verified() == Some(false) {
                        mismatches.push(x.multisegment.to_string());
                    }
                }
            }
            if structured {
                let mut obj = serde_json::json!({
                    "n": n,
                    "window": [lo, hi],
                    "count": json_records.len(),
                });
                if *verify {
                    obj["verified"] = serde_json::json!(mismatches.is_empty());
                }
                obj["records"] = serde_json::Value::Array(json_records);
                emit_json(out, &obj)?;
            }
            if !mismatches.is_empty() {
                return Err(Failure::Mismatch(format!("routes disagree for {}", mismatches.join(", "))));
            }
        }
    }
    Ok(())
}
