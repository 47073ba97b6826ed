//! Command-line front end. Input bytes map to symbols `byte + 1`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{Index, IndexConfig};
use crate::Symbol;

#[derive(Debug, Parser)]
#[command(name = "lzindex", version, about = "LZ77-based compressed self-index")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a file.
    Build {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        tau: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report all occurrences of a pattern.
    Locate {
        #[arg(short = 'x', long = "index")]
        index: PathBuf,
        #[command(flatten)]
        pattern: PatternSource,
        #[arg(long)]
        json: bool,
    },
    /// Print the substring S[i, j] (1-based, inclusive).
    Extract {
        #[arg(short = 'x', long = "index")]
        index: PathBuf,
        #[arg(short = 'i', long = "from")]
        from: usize,
        #[arg(short = 'j', long = "to")]
        to: usize,
    },
    /// Print structure statistics.
    Stats {
        #[arg(short = 'x', long = "index")]
        index: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PatternSource {
    /// A single pattern.
    #[arg(short = 'p', long = "pattern")]
    pub pattern: Option<String>,
    /// A file with one pattern per line.
    #[arg(short = 'f', long = "file")]
    pub file: Option<PathBuf>,
}

pub fn to_symbols(bytes: &[u8]) -> Vec<Symbol> {
    bytes.iter().map(|&b| b as Symbol + 1).collect()
}

pub fn to_bytes(symbols: &[Symbol]) -> Vec<u8> {
    symbols.iter().map(|&c| (c - 1) as u8).collect()
}

#[derive(Serialize)]
struct LocateOutput<'a> {
    pattern: &'a str,
    count: usize,
    positions: &'a [usize],
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Build {
            input,
            output,
            tau,
            seed,
        } => {
            let text = std::fs::read(&input)?;
            let config = IndexConfig {
                tau: tau.map(|t| t as usize),
                x: None,
                seed,
            };
            let idx = Index::build(&to_symbols(&text), &config)?;
            idx.save(&output)?;
            let s = idx.stats();
            writeln!(out, "n: {}", s.n)?;
            writeln!(out, "z: {}", s.z)?;
            writeln!(out, "tau: {}", s.tau)?;
            writeln!(out, "x: {}", s.x)?;
            writeln!(out, "grammar_nodes: {}", s.grammar_nodes)?;
            writeln!(out, "relevant_substrings: {}", s.relevant_substrings)?;
            writeln!(out, "bytes: {}", s.bytes.iter().map(|b| b.1).sum::<usize>())?;
        }
        Command::Locate {
            index,
            pattern,
            json,
        } => {
            let idx = Index::load(&index)?;
            let patterns: Vec<Vec<u8>> = match (pattern.pattern, pattern.file) {
                (Some(p), _) => vec![p.into_bytes()],
                (None, Some(f)) => {
                    let data = std::fs::read(f)?;
                    let mut lines: Vec<Vec<u8>> =
                        data.split(|&b| b == b'\n').map(<[u8]>::to_vec).collect();
                    if lines.last().is_some_and(|l| l.is_empty()) {
                        lines.pop();
                    }
                    lines
                }
                (None, None) => return Err(Error::Config("no pattern given".into())),
            };
            for (k, p) in patterns.iter().enumerate() {
                let positions = idx.locate(&to_symbols(p));
                if json {
                    let rec = LocateOutput {
                        pattern: &String::from_utf8_lossy(p),
                        count: positions.len(),
                        positions: &positions,
                    };
                    serde_json::to_writer(&mut *out, &rec).map_err(std::io::Error::from)?;
                    writeln!(out)?;
                } else {
                    if k > 0 {
                        writeln!(out)?;
                    }
                    for pos in positions {
                        writeln!(out, "{pos}")?;
                    }
                }
            }
        }
        Command::Extract { index, from, to } => {
            let idx = Index::load(&index)?;
            out.write_all(&to_bytes(&idx.extract(from, to)?))?;
        }
        Command::Stats { index, json } => {
            let s = Index::load(&index)?.stats();
            if json {
                serde_json::to_writer_pretty(&mut *out, &s).map_err(std::io::Error::from)?;
                writeln!(out)?;
            } else {
                let value = serde_json::to_value(&s).map_err(std::io::Error::from)?;
                for (k, v) in value.as_object().into_iter().flatten() {
                    match v {
                        serde_json::Value::Object(map) => {
                            for (k2, v2) in map {
                                writeln!(out, "{k}.{k2}: {v2}")?;
                            }
                        }
                        serde_json::Value::Array(items) => {
                            for item in items {
                                if let Some([name, size]) = item.as_array().map(Vec::as_slice) {
                                    writeln!(
                                        out,
                                        "{k}.{}: {size}",
                                        name.as_str().unwrap_or_default()
                                    )?;
                                }
                            }
                        }
                        _ => writeln!(out, "{k}: {v}")?,
                    }
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}
