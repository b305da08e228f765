//! `rlmem`: all-vs-all MEMs between reads in a FASTA file.

mod output;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rlmem::{read_fasta, CoordSpace, MemFinder, MemIndex, MemParams, ReportMode, SeqCollection};

#[derive(Parser)]
#[command(
    name = "rlmem",
    version,
    about = "Maximal exact matches between homopolymer-compressed reads"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report MEMs between every pair of reads.
    ///
    /// Output is tab separated with a header line. Reads are named by their
    /// 0-based FASTA record index plus the strand (+ or -). Coordinates are
    /// 1-based and inclusive, relative to the forward read.
    Mems(MemsArgs),
    /// Build an index and write it to a file.
    Index(IndexArgs),
}

#[derive(Args)]
struct MemsArgs {
    /// FASTA input.
    #[arg(
        short,
        long,
        required_unless_present = "index",
        conflicts_with = "index"
    )]
    input: Option<PathBuf>,
    /// Index written by `rlmem index`, used instead of --input.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Minimum MEM length, counted in compressed symbols.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    min_mem: u64,
    /// Largest allowed difference between aligned run lengths.
    #[arg(long)]
    max_excess: u32,
    #[arg(long, value_enum, default_value_t = Mode::Sa)]
    mode: Mode,
    /// Coordinate columns to print.
    #[arg(long, value_enum, default_value_t = Coords::Rle)]
    coords: Coords,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(short, long, env = "RLMEM_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Output file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IndexArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Read positions from suffix-array ranges.
    Sa,
    /// Read positions from the point grid.
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coords {
    Rle,
    Expanded,
    Both,
}

fn load_reads(path: &Path) -> Result<SeqCollection> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let records =
        read_fasta(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    if records.is_empty() {
        bail!("{} contains no FASTA records", path.display());
    }
    let coll = SeqCollection::from_ascii_reads(records.iter().map(|r| &r.seq))
        .with_context(|| format!("in {}", path.display()))?;
    Ok(coll)
}

fn run_index(args: IndexArgs) -> Result<()> {
    let index = MemIndex::build(&load_reads(&args.input)?)?;
    let file = File::create(&args.output)
        .with_context(|| format!("cannot create {}", args.output.display()))?;
    let mut w = BufWriter::new(file);
    index.save(&mut w)?;
    w.flush()?;
    Ok(())
}

fn run_mems(args: MemsArgs) -> Result<()> {
    let index = match (&args.input, &args.index) {
        (Some(input), _) => MemIndex::build(&load_reads(input)?)?,
        (None, Some(path)) => {
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            MemIndex::load(BufReader::new(file))
                .with_context(|| format!("loading index {}", path.display()))?
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let mode = match args.mode {
        Mode::Sa => ReportMode::Sa,
        Mode::Grid => ReportMode::Grid,
    };
    let coords = match args.coords {
        Coords::Rle => CoordSpace::Rle,
        Coords::Expanded => CoordSpace::Expanded,
        Coords::Both => CoordSpace::Both,
    };
    let params = MemParams::new(args.min_mem as usize, args.max_excess)?
        .with_mode(mode)
        .with_coords(coords);
    let threads = match args.threads {
        Some(t) => t as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let report = MemFinder::new(&index, params)?.run(threads)?;

    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(&mut out);
    output::write_tsv(&mut w, index.rlc(), &report.records, coords)?;
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mems(args) => run_mems(args),
        Command::Index(args) => run_index(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rlmem: {e:#}");
            ExitCode::FAILURE
        }
    }
}
