use std::path::PathBuf;

use bcqt_core::InputState;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "bcqt",
    version,
    about = "Bidirectional controlled teleportation over three EPR pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sampled protocol runs.
    Run(RunArgs),
    /// Forced runs over all 64 measurement branches.
    Enumerate(CommonArgs),
    /// Compare the simulation with the printed tables and equations.
    Verify(CommonArgs),
    /// Fidelities each receiver reaches when Charlie stays silent.
    ControlPower(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Seed for every sampled quantity.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (stdout when absent).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    /// Omit the timestamp so identical flags give identical bytes.
    #[arg(long)]
    pub deterministic: bool,
    /// Alice's payload as `re0,im0,re1,im1`.
    #[arg(long, value_parser = parse_input, allow_hyphen_values = true)]
    pub alice: Option<InputState>,
    /// Bob's payload as `re0,im0,re1,im1`.
    #[arg(long, value_parser = parse_input, allow_hyphen_values = true)]
    pub bob: Option<InputState>,
    /// Draw this many Haar-random input pairs instead.
    #[arg(long, conflicts_with_all = ["alice", "bob"])]
    pub haar: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Sampled runs per input pair.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

fn parse_input(s: &str) -> Result<InputState, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    let parts: [f64; 4] = parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 values re0,im0,re1,im1, got {}", v.len()))?;
    InputState::from_parts(parts).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Run,
    Enumerate,
    Verify,
    ControlPower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSpec {
    Explicit { alice: InputState, bob: InputState },
    Haar { count: usize },
}

/// Resolved configuration, echoed at the top of every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub input: InputSpec,
    pub trials: usize,
    pub seed: u64,
    pub output_path: Option<String>,
    pub format: Format,
    pub deterministic: bool,
}

impl RunConfig {
    pub fn from_args(mode: Mode, args: &CommonArgs, trials: usize) -> Self {
        let input = match (args.haar, args.alice, args.bob) {
            (Some(count), _, _) => InputSpec::Haar { count },
            (None, a, b) => InputSpec::Explicit {
                alice: a.unwrap_or_else(InputState::probe_alice),
                bob: b.unwrap_or_else(InputState::probe_bob),
            },
        };
        RunConfig {
            mode,
            input,
            trials,
            seed: args.seed,
            output_path: args.output.as_ref().map(|p| p.display().to_string()),
            format: args.format,
            deterministic: args.deterministic,
        }
    }

    pub fn from_cli(cli: &Cli) -> Self {
        match &cli.command {
            Command::Run(r) => Self::from_args(Mode::Run, &r.common, r.trials),
            Command::Enumerate(c) => Self::from_args(Mode::Enumerate, c, 1),
            Command::Verify(c) => Self::from_args(Mode::Verify, c, 1),
            Command::ControlPower(c) => Self::from_args(Mode::ControlPower, c, 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_amplitudes() {
        let s = parse_input("0.6,0,0,0.8").unwrap();
        assert_eq!(s.parts(), [0.6, 0.0, 0.0, 0.8]);
        assert!(parse_input("1,0,0,1").unwrap_err().contains("normalized"));
        assert!(parse_input("1,0,0").is_err());
        assert!(parse_input("1,0,x,0").is_err());
    }

    #[test]
    fn haar_conflicts_with_explicit() {
        let r = Cli::try_parse_from(["bcqt", "run", "--haar", "3", "--alice", "1,0,0,0"]);
        assert!(r.is_err());
    }

    #[test]
    fn defaults_to_probe_inputs() {
        let cli = Cli::try_parse_from(["bcqt", "enumerate"]).unwrap();
        let cfg = RunConfig::from_cli(&cli);
        assert_eq!(
            cfg.input,
            InputSpec::Explicit {
                alice: InputState::probe_alice(),
                bob: InputState::probe_bob()
            }
        );
        assert_eq!(cfg.seed, 0);
    }

    #[test]
    fn negative_amplitudes_parse() {
        let cli = Cli::try_parse_from(["bcqt", "run", "--bob", "-1,0,0,0"]).unwrap();
        let Command::Run(r) = cli.command else {
            panic!()
        };
        assert_eq!(r.common.bob.unwrap().parts()[0], -1.0);
    }
}
