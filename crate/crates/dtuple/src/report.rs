use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::AppError;

/// The JSON document every command prints on stdout.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Enough to rerun the command.
    pub config: Value,
    pub outputs: Vec<Value>,
    pub timings_ms: BTreeMap<String, u64>,
    pub failures: Vec<Value>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, config: Value) -> RunReport {
        RunReport {
            command: command.to_string(),
            config,
            outputs: Vec::new(),
            timings_ms: BTreeMap::new(),
            failures: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Runs `f`, recording its wall time under `phase`.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_millis() as u64;
        *self.timings_ms.entry(phase.to_string()).or_default() += ms;
        out
    }

    pub fn fail(&mut self, kind: &str, message: impl Into<String>, context: Value) {
        let message = message.into();
        log::error!("{kind}: {message}");
        self.failures.push(json!({"kind": kind, "message": message, "context": context}));
    }

    pub fn fail_with(&mut self, err: &AppError, context: Value) {
        self.fail(&error_kind(err), err.to_string(), context);
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        let message = message.into();
        log::warn!("{message}");
        self.warnings.push(message);
    }

    /// 0 on success, 1 on any failure, 2 when there are only warnings.
    pub fn exit_code(&self) -> i32 {
        if !self.failures.is_empty() {
            1
        } else if !self.warnings.is_empty() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// The report with timings cleared, for reproducibility comparisons.
    pub fn without_timings(&self) -> Value {
        let mut v = self.to_json();
        v["timings_ms"] = json!({});
        v
    }
}

/// Short machine-readable name of an error variant.
pub fn error_kind(err: &AppError) -> String {
    match err {
        AppError::Core(e) => {
            let dbg = format!("{e:?}");
            dbg.split(['(', ' ', '{']).next().unwrap_or("Core").to_string()
        }
        AppError::Io { .. } => "IoError".into(),
        AppError::Json { .. } => "MalformedJson".into(),
        AppError::CorruptCache { .. } => "CorruptCache".into(),
        AppError::InvalidArgument(_) => "InvalidArgument".into(),
    }
}
