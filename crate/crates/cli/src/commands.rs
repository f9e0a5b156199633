use std::io::Write;

use bcqt_core::rng::{seeded, ProtocolRng};
use bcqt_core::{
    control_power, enumerate_branches, run_protocol, verify, CorrectionTable, InputState, RunMode,
    ACCEPT_TOL,
};

use crate::config::{Cli, InputSpec, Mode, RunConfig};
use crate::report::{ControlPowerRow, ControlPowerSection, InputPair, Record, Report, Summary};

/// Tolerance on the controlled receiver's 0.5 fidelity.
pub const CONTROLLED_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success,
    /// A checked property failed.
    Violation,
    /// Bad flags, bad input or unwritable output.
    Usage,
}

impl Exit {
    pub fn code(self) -> u8 {
        match self {
            Exit::Success => 0,
            Exit::Violation => 1,
            Exit::Usage => 2,
        }
    }

    fn from_pass(passed: bool) -> Self {
        if passed {
            Exit::Success
        } else {
            Exit::Violation
        }
    }
}

/// Input pairs for the config. Haar pairs are the first draws of the seeded
/// stream, Alice's state before Bob's.
pub fn resolve_inputs(config: &RunConfig, rng: &mut ProtocolRng) -> Vec<InputPair> {
    match &config.input {
        InputSpec::Explicit { alice, bob } => vec![InputPair {
            alice: *alice,
            bob: *bob,
        }],
        InputSpec::Haar { count } => (0..*count)
            .map(|_| InputPair {
                alice: InputState::haar(rng),
                bob: InputState::haar(rng),
            })
            .collect(),
    }
}

fn sort_records(records: &mut [Record]) {
    records.sort_by_key(|r| (r.branch_index, r.trial));
}

fn fidelities_pass(records: &[Record]) -> bool {
    records.iter().all(|r| r.min_fidelity() >= 1.0 - ACCEPT_TOL)
}

fn enumerate_records(pair: &InputPair, input: usize) -> bcqt_core::Result<Vec<Record>> {
    Ok(enumerate_branches(&pair.alice, &pair.bob)?
        .iter()
        .map(|r| Record::from_result(r, input, input))
        .collect())
}

fn cmd_run(config: RunConfig) -> bcqt_core::Result<Report> {
    let mut rng = seeded(config.seed);
    let inputs = resolve_inputs(&config, &mut rng);
    let mut records = Vec::with_capacity(inputs.len() * config.trials);
    for (i, pair) in inputs.iter().enumerate() {
        for j in 0..config.trials {
            let r = run_protocol(&pair.alice, &pair.bob, RunMode::Sampled(&mut rng))?;
            records.push(Record::from_result(&r, i, i * config.trials + j));
        }
    }
    sort_records(&mut records);
    let passed = fidelities_pass(&records);
    let summary = Summary::over(&records, 0, passed);
    Ok(Report::new(config, inputs, records, summary))
}

fn cmd_enumerate(config: RunConfig) -> bcqt_core::Result<Report> {
    let mut rng = seeded(config.seed);
    let inputs = resolve_inputs(&config, &mut rng);
    let mut records = Vec::with_capacity(inputs.len() * 64);
    for (i, pair) in inputs.iter().enumerate() {
        records.extend(enumerate_records(pair, i)?);
    }
    sort_records(&mut records);
    let passed = fidelities_pass(&records);
    let summary = Summary::over(&records, 0, passed);
    Ok(Report::new(config, inputs, records, summary))
}

fn cmd_verify(config: RunConfig) -> bcqt_core::Result<Report> {
    let mut rng = seeded(config.seed);
    let mut inputs = resolve_inputs(&config, &mut rng);
    inputs.truncate(1);
    let pair = inputs.first().cloned().unwrap_or(InputPair {
        alice: InputState::probe_alice(),
        bob: InputState::probe_bob(),
    });
    let v = verify::verify_all(&pair.alice, &pair.bob, config.seed)?;
    let records = enumerate_records(&pair, 0)?;
    let passed = v.oracle_checks_pass() && fidelities_pass(&records);
    let summary = Summary::over(&records, v.discrepancy_count(), passed);
    let mut report = Report::new(config, vec![pair], records, summary);
    report.verification = Some(v);
    Ok(report)
}

fn cmd_control_power(config: RunConfig) -> bcqt_core::Result<Report> {
    let mut rng = seeded(config.seed);
    let inputs = resolve_inputs(&config, &mut rng);
    let dependent = CorrectionTable::derived()?.charlie_dependent();
    let charlie_dependent = match dependent.as_slice() {
        [r] => Some(*r),
        _ => None,
    };
    let mut passed = charlie_dependent.is_some();
    let mut rows = Vec::with_capacity(inputs.len());
    for (i, pair) in inputs.iter().enumerate() {
        let cp = control_power(&pair.alice, &pair.bob)?;
        let controlled = cp.controlled();
        let uncontrolled = cp.uncontrolled();
        passed &= controlled.is_some_and(|c| {
            (c.fidelity_min - 0.5).abs() <= CONTROLLED_TOL
                && (c.fidelity_max - 0.5).abs() <= CONTROLLED_TOL
        });
        passed &= uncontrolled.is_some_and(|u| u.fidelity_min >= 1.0 - ACCEPT_TOL);
        rows.push(ControlPowerRow {
            input: i,
            controlled_fidelity: controlled.map(|c| c.fidelity_mean),
            uncontrolled_fidelity: uncontrolled.map(|u| u.fidelity_min),
            controlled_trace_distance: controlled.map(|c| c.max_trace_distance_to_mixed),
            detail: cp,
        });
    }
    let summary = Summary::over(&[], 0, passed);
    let mut report = Report::new(config, inputs, Vec::new(), summary);
    report.control_power = Some(ControlPowerSection {
        charlie_dependent,
        charlie_dependent_party: charlie_dependent.map(|r| r.holder()),
        rows,
    });
    Ok(report)
}

/// Builds the report for a resolved config, without writing it.
pub fn build_report(config: RunConfig) -> bcqt_core::Result<Report> {
    match config.mode {
        Mode::Run => cmd_run(config),
        Mode::Enumerate => cmd_enumerate(config),
        Mode::Verify => cmd_verify(config),
        Mode::ControlPower => cmd_control_power(config),
    }
}

fn describe(report: &Report) -> String {
    let mut line = format!("{:?}: {} records", report.config.mode, report.records.len());
    if let Some(m) = report.summary.min_fidelity {
        line += &format!(", min fidelity {m}");
    }
    if let Some(v) = &report.verification {
        line += &format!(
            ", {} discrepancies, Charlie-dependent receiver per simulation: {:?}, per printed correction table: {:?}",
            report.summary.discrepancy_count, v.control_direction.oracle, v.control_direction.printed_table
        );
    }
    if let Some(cp) = &report.control_power {
        if let Some(r) = cp.charlie_dependent {
            line += &format!(", Charlie-dependent receiver: {r}");
        }
    }
    line += if report.summary.passed {
        ", passed"
    } else {
        ", FAILED"
    };
    line
}

/// Runs the parsed command and writes its report.
pub fn execute(cli: &Cli) -> Exit {
    let config = RunConfig::from_cli(cli);
    let format = config.format;
    let output = config.output_path.clone();
    let report = match build_report(config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Exit::Violation;
        }
    };
    let bytes = match report.encode(format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot encode report: {e}");
            return Exit::Usage;
        }
    };
    let written = match &output {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return Exit::Usage;
    }
    eprintln!("{}", describe(&report));
    Exit::from_pass(report.summary.passed)
}
