//! The `dbwalk` command line.
//!
//! Exit status: 0 on success, 1 on domain errors (bad flags, malformed
//! input, violated preconditions, infeasible instances), 2 when a size cap
//! would be exceeded. Caps come from `WATCHMAN_MAX_SEQ` and
//! `WATCHMAN_MAX_VERTICES`.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{self, SweepConfig, DEFAULT_SWEEP_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{build_de_bruijn_graph, generated_subdigraph, Digraph};
use crate::limits::Limits;
use crate::seq::{parse_sequence, Alphabet, CyclicSequence, Generator};
use crate::watchman::{self, enumerate_min_walks, induced_walk_in, solve_min_walk, SolveJson};

#[derive(Debug, Parser)]
#[command(
    name = "dbwalk",
    version,
    about = "De Bruijn sequences and watchman's walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a de Bruijn sequence of order K over A symbols.
    Gen {
        #[arg(short = 'a')]
        alphabet: usize,
        #[arg(short = 'k')]
        order: usize,
        #[arg(long, value_enum, default_value_t = Algo::Fkm)]
        algo: Algo,
    },
    /// Print G(A,K), or the subdigraph generated by a sequence.
    Graph {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Draw the walk induced by --from-seq in bold.
        #[arg(long, requires = "from_seq")]
        highlight_induced: bool,
    },
    /// Print the walk of G(A,K) through the K-tour of an order K-1 de
    /// Bruijn sequence.
    Walk {
        #[arg(short = 'a')]
        alphabet: usize,
        #[arg(short = 'k')]
        order: usize,
        #[arg(long)]
        seq: Option<String>,
    },
    /// Exact minimum closed dominating walk. Reads graph JSON from standard
    /// input unless -a/-k or --from-seq is given.
    Solve {
        #[arg(long)]
        from_seq: Option<String>,
        #[arg(short = 'a')]
        alphabet: Option<usize>,
        #[arg(short = 'k')]
        order: Option<usize>,
        /// Also enumerate every minimum walk, one per rotation class.
        #[arg(long)]
        count: bool,
    },
    /// Certificate-based verdict for a generating sequence.
    Classify(SeqArgs),
    /// Check a generating sequence against the exact oracle.
    Verify(SeqArgs),
    /// Verify every rotation class of every sequence in a length range.
    Sweep {
        #[arg(short = 'a')]
        alphabet: usize,
        #[arg(short = 'k')]
        order: usize,
        /// Inclusive range LO..HI, or a single length.
        #[arg(long)]
        lengths: String,
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Fkm,
    Greedy,
    Euler,
}

impl From<Algo> for Generator {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Fkm => Generator::Fkm,
            Algo::Greedy => Generator::Greedy,
            Algo::Euler => Generator::Eulerian,
        }
    }
}

#[derive(Debug, Args)]
struct Source {
    #[arg(long)]
    from_seq: Option<String>,
    /// Alphabet size; with --from-seq it defaults to the smallest size
    /// covering the sequence.
    #[arg(short = 'a')]
    alphabet: Option<usize>,
    #[arg(short = 'k')]
    order: usize,
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[arg(long)]
    seq: String,
    #[arg(short = 'a')]
    alphabet: Option<usize>,
    #[arg(short = 'k')]
    order: usize,
}

/// Parses and executes `argv` (program name first). Returns the exit
/// status.
pub fn run<S: AsRef<str>>(
    argv: &[S],
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let rendered = e.to_string();
                    let line = rendered.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(err, "{line}");
                    1
                }
            };
        }
    };
    let result = Limits::from_env().and_then(|limits| execute(cli.command, &limits, stdin, out));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource() {
                2
            } else {
                1
            }
        }
    }
}

fn read_sequence(text: &str, alphabet: Option<usize>) -> Result<CyclicSequence> {
    let a = match alphabet {
        Some(a) => a,
        None => {
            let widest = text
                .chars()
                .map(|c| c.to_digit(36).map_or(Alphabet::MAX, |d| d as usize + 1))
                .max()
                .unwrap_or(Alphabet::MIN);
            widest.clamp(Alphabet::MIN, Alphabet::MAX)
        }
    };
    parse_sequence(text, a)
}

fn build_graph(
    from_seq: Option<&str>,
    alphabet: Option<usize>,
    order: usize,
    limits: &Limits,
) -> Result<(Digraph, Option<CyclicSequence>)> {
    match from_seq {
        Some(text) => {
            let d = read_sequence(text, alphabet)?;
            Ok((generated_subdigraph(&d, order)?, Some(d)))
        }
        None => {
            let a = alphabet.ok_or_else(|| {
                Error::InvalidArgument("-a is required without --from-seq".into())
            })?;
            Ok((build_de_bruijn_graph(a, order, limits)?, None))
        }
    }
}

#[derive(Serialize)]
struct SolveOutput {
    #[serde(flatten)]
    result: SolveJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_walk_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_walks: Option<Vec<Vec<String>>>,
}

fn execute(
    command: Command,
    limits: &Limits,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<()> {
    match command {
        Command::Gen {
            alphabet,
            order,
            algo,
        } => {
            let s = Generator::from(algo).generate(alphabet, order, limits)?;
            writeln!(out, "{s}")?;
        }
        Command::Graph {
            source,
            dot,
            json: _,
            highlight_induced,
        } => {
            let (graph, seq) = build_graph(
                source.from_seq.as_deref(),
                source.alphabet,
                source.order,
                limits,
            )?;
            if dot {
                let walk = match (&seq, highlight_induced) {
                    (Some(d), true) => Some(induced_walk_in(&graph, d, source.order)?),
                    _ => None,
                };
                write!(out, "{}", graph.to_dot(walk.as_ref())?)?;
            } else {
                writeln!(out, "{}", graph.to_json())?;
            }
        }
        Command::Walk {
            alphabet,
            order,
            seq,
        } => {
            let seed = seq.map(|s| parse_sequence(&s, alphabet)).transpose()?;
            let t = watchman::theorem_walk(alphabet, order, seed.as_ref(), limits)?;
            writeln!(out, "{}", t.walk.labels(&t.graph).join(","))?;
        }
        Command::Solve {
            from_seq,
            alphabet,
            order,
            count,
        } => {
            let graph = match (from_seq.as_deref(), order) {
                (Some(_), None) => {
                    return Err(Error::InvalidArgument("--from-seq requires -k".into()))
                }
                (from_seq, Some(k)) if from_seq.is_some() || alphabet.is_some() => {
                    build_graph(from_seq, alphabet, k, limits)?.0
                }
                (None, None) if alphabet.is_some() => {
                    return Err(Error::InvalidArgument("-a requires -k".into()))
                }
                _ => {
                    let mut text = String::new();
                    stdin.read_to_string(&mut text)?;
                    Digraph::from_json(&text)?
                }
            };
            let solved = solve_min_walk(&graph, limits)?;
            let walks = if count {
                Some(enumerate_min_walks(&graph, solved.optimum_length, limits)?)
            } else {
                None
            };
            let output = SolveOutput {
                result: solved.to_json_value(&graph),
                min_walk_count: walks.as_ref().map(Vec::len),
                min_walks: walks.map(|ws| ws.iter().map(|w| w.labels(&graph)).collect()),
            };
            serde_json::to_writer(&mut *out, &output)?;
            writeln!(out)?;
        }
        Command::Classify(args) => {
            let d = read_sequence(&args.seq, args.alphabet)?;
            writeln!(out, "{}", analysis::classify(&d, args.order)?)?;
        }
        Command::Verify(args) => {
            let d = read_sequence(&args.seq, args.alphabet)?;
            let record = analysis::verify(&d, args.order, limits)?;
            serde_json::to_writer(&mut *out, &record)?;
            writeln!(out)?;
        }
        Command::Sweep {
            alphabet,
            order,
            lengths,
            budget,
            csv,
        } => {
            let range = parse_lengths(&lengths)?;
            let config = SweepConfig { budget, only: None };
            let report = analysis::sweep(alphabet, order, range, &config, limits)?;
            report.write_json_lines(out)?;
            if let Some(path) = csv {
                let mut file = std::fs::File::create(&path)?;
                report.write_csv(&mut file)?;
            }
        }
    }
    Ok(())
}

fn parse_lengths(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || Error::InvalidArgument(format!("--lengths {text:?} is not LO..HI"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok(parse(lo)?..=parse(hi)?)
        }
        None => {
            let n = parse(text)?;
            Ok(n..=n)
        }
    }
}
