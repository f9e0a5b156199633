//! Report schema and its JSON/CSV encodings.
//!
//! CSV column order for run/enumerate records is fixed as
//! [`RECORD_COLUMNS`]; `verify` writes one row per discrepancy report and
//! `control-power` one row per input pair.

use std::io::Write;

use bcqt_core::verify::VerifyReport;
use bcqt_core::{
    ControlPower, InputState, OutcomeRecord, Party, PauliOp, ProtocolResult, Receiver,
};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};

pub const RECORD_COLUMNS: [&str; 13] = [
    "branch_index",
    "trial",
    "input",
    "alice_z",
    "alice_x",
    "bob_z",
    "bob_x",
    "charlie_bell",
    "probability",
    "correction_b1",
    "correction_a2",
    "fidelity_b1",
    "fidelity_a2",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputPair {
    pub alice: InputState,
    pub bob: InputState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub branch_index: usize,
    pub trial: usize,
    pub input: usize,
    pub branch: OutcomeRecord,
    pub probability: f64,
    pub correction_b1: PauliOp,
    pub correction_a2: PauliOp,
    pub fidelity_b1: f64,
    pub fidelity_a2: f64,
}

impl Record {
    pub fn from_result(r: &ProtocolResult, input: usize, trial: usize) -> Self {
        Record {
            branch_index: r.record.branch().map(|b| b.index()).unwrap_or(usize::MAX),
            trial,
            input,
            branch: r.record,
            probability: r.branch_probability,
            correction_b1: r.correction.on_b1,
            correction_a2: r.correction.on_a2,
            fidelity_b1: r.fidelity_b1,
            fidelity_a2: r.fidelity_a2,
        }
    }

    pub fn min_fidelity(&self) -> f64 {
        self.fidelity_b1.min(self.fidelity_a2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Minimum over both fidelities of every record; null without records.
    pub min_fidelity: Option<f64>,
    pub mean_fidelity: Option<f64>,
    pub discrepancy_count: usize,
    pub passed: bool,
}

impl Summary {
    pub fn over(records: &[Record], discrepancy_count: usize, passed: bool) -> Self {
        let min = records.iter().map(Record::min_fidelity).reduce(f64::min);
        let mean = (!records.is_empty()).then(|| {
            records
                .iter()
                .map(|r| r.fidelity_b1 + r.fidelity_a2)
                .sum::<f64>()
                / (2 * records.len()) as f64
        });
        Summary {
            min_fidelity: min,
            mean_fidelity: mean,
            discrepancy_count,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlPowerRow {
    pub input: usize,
    pub controlled_fidelity: Option<f64>,
    pub uncontrolled_fidelity: Option<f64>,
    pub controlled_trace_distance: Option<f64>,
    pub detail: ControlPower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlPowerSection {
    /// Receiving qubit whose correction depends on Charlie's announcement.
    pub charlie_dependent: Option<Receiver>,
    /// The user holding that qubit.
    pub charlie_dependent_party: Option<Party>,
    pub rows: Vec<ControlPowerRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    /// Unix seconds; omitted under `--deterministic`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub inputs: Vec<InputPair>,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control_power: Option<ControlPowerSection>,
}

impl Report {
    pub fn new(
        config: RunConfig,
        inputs: Vec<InputPair>,
        records: Vec<Record>,
        summary: Summary,
    ) -> Self {
        let generated_at = (!config.deterministic).then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            generated_at,
            inputs,
            records,
            summary,
            verification: None,
            control_power: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let Some(v) = &self.verification {
            w.write_record([
                "location",
                "verdict",
                "deviation",
                "paper_value",
                "oracle_value",
            ])?;
            for d in v.reports() {
                let verdict = if d.is_mismatch() { "mismatch" } else { "match" };
                let dev = d.deviation.map(|x| x.to_string()).unwrap_or_default();
                w.write_record([
                    d.location.as_str(),
                    verdict,
                    &dev,
                    &d.paper_value,
                    &d.oracle_value,
                ])?;
            }
        } else if let Some(cp) = &self.control_power {
            w.write_record([
                "input",
                "charlie_dependent",
                "controlled_fidelity",
                "uncontrolled_fidelity",
                "controlled_trace_distance",
            ])?;
            let dep = cp.charlie_dependent.map(|r| r.name()).unwrap_or("");
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            for r in &cp.rows {
                w.write_record([
                    r.input.to_string(),
                    dep.to_string(),
                    opt(r.controlled_fidelity),
                    opt(r.uncontrolled_fidelity),
                    opt(r.controlled_trace_distance),
                ])?;
            }
        } else {
            w.write_record(RECORD_COLUMNS)?;
            for r in &self.records {
                let b = &r.branch;
                w.write_record([
                    r.branch_index.to_string(),
                    r.trial.to_string(),
                    r.input.to_string(),
                    b.alice_z.to_string(),
                    b.alice_x.to_string(),
                    b.bob_z.to_string(),
                    b.bob_x.to_string(),
                    b.charlie_bell.map(|o| o.name()).unwrap_or("").to_string(),
                    r.probability.to_string(),
                    r.correction_b1.to_string(),
                    r.correction_a2.to_string(),
                    r.fidelity_b1.to_string(),
                    r.fidelity_a2.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn encode(&self, format: Format) -> Result<Vec<u8>, String> {
        match format {
            Format::Json => self
                .to_json()
                .map(String::into_bytes)
                .map_err(|e| e.to_string()),
            Format::Csv => {
                let mut buf = Vec::new();
                self.write_csv(&mut buf).map_err(|e| e.to_string())?;
                Ok(buf)
            }
        }
    }
}
