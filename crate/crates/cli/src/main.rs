use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncbirational::birational::{
    equiv_witness, j, j1, j2, j_inverse, phi, phi2, phi_inv, psi, HatParams,
};
use ncbirational::domain::{in_s, in_s_hat};
use ncbirational::harness::{run_suite, CheckName, SuiteConfig};
use ncbirational::json::{
    descriptor_from_json, domain_report_to_json, to_canonical, witness_to_json, Input,
};
use ncbirational::ring::RingDescriptor;
use ncbirational::{DynHat, DynMatrix, Error};

#[derive(Parser, Debug)]
#[command(
    name = "ncbir",
    version,
    about = "Exact noncommutative birational maps on 3x3 matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    ring: RingArgs,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct RingArgs {
    /// Ring kind. For commands reading a file, the file's ring must match.
    #[arg(long, global = true, value_enum)]
    ring: Option<RingKind>,
    /// Prime modulus for mod-p, or for the entries of block-matrix.
    #[arg(long, global = true)]
    modulus: Option<u64>,
    /// Block size for block-matrix (entries are fractions without --modulus).
    #[arg(long, global = true)]
    block_size: Option<usize>,
    /// Full ring descriptor as JSON, for nested block rings.
    #[arg(long, global = true, conflicts_with_all = ["ring", "modulus", "block_size"])]
    ring_json: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingKind {
    Fraction,
    ModP,
    BlockMatrix,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Domain membership report for a hatted parameter set or a 3x3 matrix.
    Check {
        /// Input file, or "-" for standard input.
        #[arg(long = "in")]
        input: String,
    },
    /// Apply one map.
    Apply {
        #[arg(long, value_enum)]
        map: MapName,
        #[arg(long = "in")]
        input: String,
    },
    /// Iterate a map, reporting domain status at each step.
    Iterate {
        #[arg(long, value_enum, default_value = "j")]
        map: MapName,
        #[arg(long)]
        count: usize,
        #[arg(long = "in")]
        input: String,
    },
    /// Find diagonal matrices D1, D2 with B = D1^-1 A D2.
    Witness {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Run the identity suite.
    Suite {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Comma-separated check names (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Record wall-clock time per check (reports then differ run to run).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapName {
    J1,
    J2,
    J,
    JInv,
    Phi,
    PhiInv,
    Psi,
    Phi2,
}

impl MapName {
    fn on_hat(self) -> Option<fn(&DynHat) -> ncbirational::Result<DynHat>> {
        match self {
            MapName::Phi => Some(phi),
            MapName::PhiInv => Some(phi_inv),
            MapName::Psi => Some(psi),
            MapName::Phi2 => Some(phi2),
            _ => None,
        }
    }

    fn on_matrix(self) -> Option<fn(&DynMatrix) -> ncbirational::Result<DynMatrix>> {
        match self {
            MapName::J1 => Some(j1),
            MapName::J2 => Some(j2),
            MapName::J => Some(j),
            MapName::JInv => Some(j_inverse),
            _ => None,
        }
    }
}

/// Exit status: 0 success, 1 failed verification or absent witness, 2 usage
/// or domain error.
enum Status {
    Success,
    Negative,
    /// Output is still written, then the message goes to stderr with exit 2.
    Stopped(String),
}

struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, status)) => {
            if let Err(e) = emit(cli.out.as_deref(), &output) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            match status {
                Status::Success => ExitCode::SUCCESS,
                Status::Negative => ExitCode::from(1),
                Status::Stopped(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    let text = to_canonical(v);
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

fn read_json(path: &str) -> anyhow::Result<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

impl RingArgs {
    fn descriptor(&self) -> anyhow::Result<Option<RingDescriptor>> {
        if let Some(text) = &self.ring_json {
            let v: Value = serde_json::from_str(text).context("parsing --ring-json")?;
            return Ok(Some(descriptor_from_json(&v)?));
        }
        let kind = match self.ring {
            Some(k) => k,
            None if self.block_size.is_some() => RingKind::BlockMatrix,
            None if self.modulus.is_some() => RingKind::ModP,
            None => return Ok(None),
        };
        let d = match kind {
            RingKind::Fraction => RingDescriptor::fraction(),
            RingKind::ModP => {
                let p = self
                    .modulus
                    .ok_or_else(|| anyhow!("--ring mod-p needs --modulus"))?;
                RingDescriptor::mod_p(p)?
            }
            RingKind::BlockMatrix => {
                let k = self
                    .block_size
                    .ok_or_else(|| anyhow!("--ring block-matrix needs --block-size"))?;
                let inner = match self.modulus {
                    Some(p) => RingDescriptor::mod_p(p)?,
                    None => RingDescriptor::fraction(),
                };
                RingDescriptor::block_matrix(k, inner)?
            }
        };
        Ok(Some(d))
    }
}

fn load(path: &str, ring: Option<&RingDescriptor>) -> anyhow::Result<Input> {
    let input = Input::from_json(&read_json(path)?).with_context(|| format!("reading {path}"))?;
    let found = match &input {
        Input::Matrix(m) => m.sample_entry().descriptor().clone(),
        Input::Hat(p) => p.a.descriptor().clone(),
    };
    if let Some(expected) = ring {
        if *expected != found {
            bail!(Error::DescriptorMismatch {
                left: expected.to_string(),
                right: found.to_string(),
            });
        }
    }
    Ok(input)
}

fn as_hat(input: Input) -> anyhow::Result<DynHat> {
    match input {
        Input::Hat(p) => Ok(p),
        Input::Matrix(m) => HatParams::from_matrix(&m).context("map needs a hatted 3x3 input"),
    }
}

fn run(cli: &Cli) -> Result<(Value, Status), Usage> {
    let ring = cli.ring.descriptor()?;
    match &cli.command {
        Command::Check { input } => {
            let report = match load(input, ring.as_ref())? {
                Input::Hat(p) => in_s_hat(&p),
                Input::Matrix(m) => in_s(&m)?,
            };
            let status = if report.member {
                Status::Success
            } else {
                Status::Negative
            };
            Ok((domain_report_to_json(&report), status))
        }
        Command::Apply { map, input } => {
            let input = load(input, ring.as_ref())?;
            Ok((apply(*map, input)?.to_json(), Status::Success))
        }
        Command::Iterate { map, count, input } => {
            let input = load(input, ring.as_ref())?;
            iterate(*map, *count, input)
        }
        Command::Witness { a, b } => {
            let a = load(a, ring.as_ref())?.into_matrix();
            let b = load(b, ring.as_ref())?.into_matrix();
            Ok(match equiv_witness(&a, &b)? {
                Some(w) => (witness_to_json(&w), Status::Success),
                None => (json!("absent"), Status::Negative),
            })
        }
        Command::Suite {
            trials,
            seed,
            depth,
            checks,
            timings,
        } => {
            let ring = ring.unwrap_or_else(RingDescriptor::default_verification);
            let mut config = SuiteConfig::new(ring, *trials, *seed);
            config.depth = *depth;
            config.timings = *timings;
            if let Some(names) = checks {
                config.checks = names
                    .iter()
                    .map(|s| s.parse::<CheckName>())
                    .collect::<Result<_, _>>()?;
            }
            let report = run_suite(&config)?;
            let status = if report.passed() {
                Status::Success
            } else {
                Status::Negative
            };
            Ok((report.to_json(), status))
        }
    }
}

fn apply(map: MapName, input: Input) -> anyhow::Result<Input> {
    if let Some(f) = map.on_hat() {
        return Ok(Input::Hat(f(&as_hat(input)?)?));
    }
    let f = map.on_matrix().expect("every map acts on hats or matrices");
    Ok(Input::Matrix(f(&input.into_matrix())?))
}

fn domain_status(x: &Input) -> Value {
    match x {
        Input::Hat(p) => domain_report_to_json(&in_s_hat(p)),
        Input::Matrix(m) if m.n() == 3 => {
            in_s(m).map_or(Value::Null, |r| domain_report_to_json(&r))
        }
        Input::Matrix(_) => Value::Null,
    }
}

fn iterate(map: MapName, count: usize, input: Input) -> Result<(Value, Status), Usage> {
    let mut steps =
        vec![json!({"step": 0, "value": input.to_json(), "domain": domain_status(&input)})];
    let mut cur = input;
    let mut stopped = Value::Null;
    for step in 1..=count {
        match apply(map, cur.clone()) {
            Ok(next) => {
                steps.push(
                    json!({"step": step, "value": next.to_json(), "domain": domain_status(&next)}),
                );
                cur = next;
            }
            Err(e) => {
                stopped = json!({"step": step, "error": format!("{e:#}")});
                break;
            }
        }
    }
    let status = match stopped.get("error").and_then(Value::as_str) {
        None => Status::Success,
        Some(e) => Status::Stopped(format!("iteration stopped: {e}")),
    };
    Ok((
        json!({"count": count, "steps": steps, "stopped": stopped}),
        status,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_flags() {
        let args = RingArgs {
            ring: Some(RingKind::BlockMatrix),
            modulus: Some(101),
            block_size: Some(2),
            ring_json: None,
        };
        assert_eq!(
            args.descriptor().unwrap(),
            Some(RingDescriptor::default_verification())
        );
        let args = RingArgs {
            ring: Some(RingKind::ModP),
            ..Default::default()
        };
        assert!(args.descriptor().is_err());
        assert_eq!(RingArgs::default().descriptor().unwrap(), None);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
