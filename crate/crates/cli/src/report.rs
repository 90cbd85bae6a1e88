//! Report assembly and emission. A report echoes its configuration so that
//! re-running it reproduces the output; json-lines output is one object per
//! line with stable key order (timings are the only fields allowed to vary).

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Serialize, Debug, Clone)]
pub struct ConfigEcho {
    pub record: &'static str,
    pub subcommand: String,
    pub seed: u64,
    pub inputs: Vec<String>,
    pub node_limit: u64,
}

#[derive(Serialize, Debug, Clone, Default)]
pub struct ResultRecord {
    pub record: &'static str,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl ResultRecord {
    pub fn named(name: impl Into<String>) -> Self {
        ResultRecord { record: "result", name: name.into(), ..Default::default() }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ViolationRecord {
    pub record: &'static str,
    pub name: String,
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: ConfigEcho,
    pub results: Vec<ResultRecord>,
    pub violations: Vec<ViolationRecord>,
}

impl Report {
    pub fn new(subcommand: &str, seed: u64, inputs: Vec<String>, node_limit: u64) -> Report {
        Report {
            config: ConfigEcho {
                record: "config",
                subcommand: subcommand.to_string(),
                seed,
                inputs,
                node_limit,
            },
            results: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn push(&mut self, record: ResultRecord) {
        self.results.push(record);
    }

    pub fn violation(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(ViolationRecord {
            record: "violation",
            name: name.into(),
            seed: self.config.seed,
            detail: detail.into(),
        });
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::JsonLines => {
                let mut out = String::new();
                out.push_str(&serde_json::to_string(&self.config).expect("config serializes"));
                out.push('\n');
                for r in &self.results {
                    out.push_str(&serde_json::to_string(r).expect("record serializes"));
                    out.push('\n');
                }
                for v in &self.violations {
                    out.push_str(&serde_json::to_string(v).expect("violation serializes"));
                    out.push('\n');
                }
                out
            }
            Format::Text => {
                let mut out = format!(
                    "# {} (seed {}, inputs: {})\n",
                    self.config.subcommand,
                    self.config.seed,
                    if self.config.inputs.is_empty() {
                        "none".to_string()
                    } else {
                        self.config.inputs.join(", ")
                    }
                );
                for r in &self.results {
                    out.push_str(&format!("{}:", r.name));
                    if let Some(v) = r.verdict {
                        out.push_str(if v { " yes" } else { " no" });
                    }
                    if let Some(c) = r.count {
                        out.push_str(&format!(" count={c}"));
                    }
                    if let Some(t) = &r.text {
                        out.push_str(&format!(" {t}"));
                    }
                    if let Some(ms) = r.millis {
                        out.push_str(&format!(" ({ms} ms)"));
                    }
                    out.push('\n');
                    if let Some(w) = &r.witness {
                        for (i, v) in w.iter().enumerate() {
                            out.push_str(&format!("map {i} {v}\n"));
                        }
                    }
                }
                for v in &self.violations {
                    out.push_str(&format!("THEOREM VIOLATION in {} (seed {}): {}\n", v.name, v.seed, v.detail));
                }
                out
            }
        }
    }
}
