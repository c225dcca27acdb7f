//! Command-line front end. Every command prints canonical JSON to stdout or
//! to the file given with `-o`; writing a file also writes a run manifest
//! next to it.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::dichotomy::DEFAULT_RADIUS;
use crate::error::{Error, Result};
use crate::fan::{build_cube_fan, build_octahedron_fan, build_payne_fan, Fan};
use crate::json::{fan_from_json, fan_to_json, lattice_from_json};
use crate::linalg::{parse_rat, primitive, IntVec, RatVec, Sublattice};
use crate::report::{self, pretty};

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Exact computations on complete fans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fan axioms.
    Validate {
        fan: String,
        #[command(flatten)]
        out: Output,
    },
    /// Face counts and neighbour counts.
    Stats {
        fan: String,
        #[command(flatten)]
        out: Output,
    },
    /// Write one of the built-in fans.
    Builders {
        which: Builder,
        #[command(flatten)]
        out: Output,
    },
    /// Space of conewise linear functions and a nonlinear integral one if any.
    Cpl {
        fan: String,
        #[command(flatten)]
        out: Output,
    },
    /// Nontrivial multivalued conewise linear function.
    Multival {
        fan: String,
        /// Maximal cone carrying the odd-parity multiset.
        #[arg(long)]
        sigma: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Graded dimensions on one cone.
    Fdim {
        fan: String,
        /// Label or comma-separated ray indices.
        #[arg(long)]
        cone: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long)]
        lattice: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Wall certificate at one degree.
    Certify {
        fan: String,
        /// Ray indices `i,j` or coordinates `(a,b,c),(d,e,f)`.
        #[arg(long, allow_hyphen_values = true)]
        wall: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long)]
        lattice: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// All valid wall certificates up to a degree radius.
    Search {
        fan: String,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        lattice: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Line bundle or K-group witness.
    Dichotomy {
        fan: String,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: u32,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Builder {
    Cube,
    Octahedron,
    Payne,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SearchExhausted(_) => 2,
        Error::CertificateInvalid(_) => 3,
        _ => 1,
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    parameters: Vec<String>,
    input_sha256: Option<String>,
    outputs: Vec<String>,
    wall_clock_ms: u128,
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    input_hash: Option<String>,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<String> {
        let text = if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?
        };
        if self.input_hash.is_none() {
            self.input_hash = Some(hex::encode(Sha256::digest(text.as_bytes())));
        }
        Ok(text)
    }

    fn fan(&mut self, path: &str) -> Result<Fan> {
        fan_from_json(&self.read(path)?)
    }

    fn lattice(&mut self, path: Option<&str>, n: usize) -> Result<Sublattice> {
        match path {
            None => Ok(Sublattice::standard(n)),
            Some(p) => {
                let text =
                    std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{p}: {e}")))?;
                let l = lattice_from_json(&text)?;
                if l.ambient_rank() != n {
                    return Err(Error::WrongDimension {
                        expected: n,
                        actual: l.ambient_rank(),
                    });
                }
                Ok(l)
            }
        }
    }
}

pub fn parse_degree(s: &str) -> Result<RatVec> {
    s.split(',')
        .map(|t| parse_rat(t).ok_or_else(|| Error::Parse(format!("bad degree entry {t:?}"))))
        .collect()
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index {t:?}")))
        })
        .collect()
}

/// Ray indices from `i,j,...` or from coordinate tuples matched after primitivization.
fn parse_wall(fan: &Fan, s: &str) -> Result<Vec<usize>> {
    if !s.contains('(') {
        return parse_indices(s);
    }
    let mut out = Vec::new();
    for tuple in s
        .split(')')
        .map(|t| t.trim_start_matches([',', ' ']).trim())
        .filter(|t| !t.is_empty())
    {
        let body = tuple
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("bad tuple {tuple:?}")))?;
        let v: IntVec = body
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {x:?}")))
            })
            .collect::<Result<_>>()?;
        let idx = fan
            .ray_index(&primitive(&v))
            .ok_or_else(|| Error::NotAWall(format!("({body}) is not a ray of the fan")))?;
        out.push(idx);
    }
    Ok(out)
}

fn cone_by_name(fan: &Fan, s: &str) -> Result<Vec<usize>> {
    match fan.label(s) {
        Some(rays) => Ok(rays.to_vec()),
        None => parse_indices(s),
    }
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<(String, bool)> {
    let ok = |v: Value| Ok((pretty(&v), true));
    match cmd {
        Command::Validate { fan, .. } => {
            let (v, valid) = report::validate(&ctx.fan(fan)?)?;
            Ok((pretty(&v), valid))
        }
        Command::Stats { fan, .. } => ok(report::stats(&ctx.fan(fan)?)?),
        Command::Builders { which, .. } => Ok((
            fan_to_json(&match which {
                Builder::Cube => build_cube_fan(),
                Builder::Octahedron => build_octahedron_fan(),
                Builder::Payne => build_payne_fan().fan,
            })?,
            true,
        )),
        Command::Cpl { fan, .. } => ok(report::cpl(&ctx.fan(fan)?)?),
        Command::Multival { fan, sigma, .. } => {
            Ok((report::multival(&ctx.fan(fan)?, *sigma)?, true))
        }
        Command::Fdim {
            fan,
            cone,
            degree,
            lattice,
            ..
        } => {
            let f = ctx.fan(fan)?;
            let rays = cone_by_name(&f, cone)?;
            let m = parse_degree(degree)?;
            let l = ctx.lattice(lattice.as_deref(), f.rank())?;
            ok(report::fdim(&f, &rays, &m, &l)?)
        }
        Command::Certify {
            fan,
            wall,
            degree,
            lattice,
            ..
        } => {
            let f = ctx.fan(fan)?;
            let w = parse_wall(&f, wall)?;
            let m = parse_degree(degree)?;
            let l = ctx.lattice(lattice.as_deref(), f.rank())?;
            ok(report::certify(&f, &w, &m, &l)?)
        }
        Command::Search {
            fan,
            radius,
            lattice,
            ..
        } => {
            let f = ctx.fan(fan)?;
            let l = ctx.lattice(lattice.as_deref(), f.rank())?;
            ok(report::search(&f, &l, *radius)?)
        }
        Command::Dichotomy { fan, radius, .. } => ok(report::dichotomy(&ctx.fan(fan)?, *radius)?),
    }
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::Validate { out, .. }
        | Command::Stats { out, .. }
        | Command::Builders { out, .. }
        | Command::Cpl { out, .. }
        | Command::Multival { out, .. }
        | Command::Fdim { out, .. }
        | Command::Certify { out, .. }
        | Command::Search { out, .. }
        | Command::Dichotomy { out, .. } => out,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Stats { .. } => "stats",
        Command::Builders { .. } => "builders",
        Command::Cpl { .. } => "cpl",
        Command::Multival { .. } => "multival",
        Command::Fdim { .. } => "fdim",
        Command::Certify { .. } => "certify",
        Command::Search { .. } => "search",
        Command::Dichotomy { .. } => "dichotomy",
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn write_error(stderr: &mut dyn Write, e: &Error) {
    let v = json!({ "error": e.kind(), "message": e.to_string(), "exit_code": exit_code(e) });
    let _ = writeln!(stderr, "{}", serde_json::to_string(&v).expect("plain data"));
}

/// Runs the command line `args` (including the program name); returns the exit code.
pub fn run(
    args: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            write_error(stderr, &Error::Parse(e.to_string().trim().to_string()));
            return 1;
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx {
        stdin,
        input_hash: None,
    };
    let (text, success) = match execute(&cli.command, &mut ctx) {
        Ok(r) => r,
        Err(e) => {
            write_error(stderr, &e);
            return exit_code(&e);
        }
    };
    let result = match &output_of(&cli.command).output {
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
        Some(path) => (|| {
            std::fs::write(path, &text)?;
            let manifest = RunManifest {
                tool: "toric",
                version: env!("CARGO_PKG_VERSION"),
                command: command_name(&cli.command),
                parameters: args[1..].to_vec(),
                input_sha256: ctx.input_hash.clone(),
                outputs: vec![path.display().to_string()],
                wall_clock_ms: start.elapsed().as_millis(),
            };
            std::fs::write(
                manifest_path(path),
                serde_json::to_string_pretty(&manifest)? + "\n",
            )?;
            Ok(())
        })(),
    };
    if let Err(e) = result {
        write_error(stderr, &e);
        return 1;
    }
    if success {
        0
    } else {
        1
    }
}
