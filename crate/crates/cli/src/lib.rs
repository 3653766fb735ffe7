//! Configuration-driven experiment runner for the `qhopf` library.
//!
//! Every subcommand produces a [`ResultTable`] plus a list of residual
//! [`Check`]s. The process exit code is 0 when every check passes and the
//! index of the first failing check otherwise.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use qhopf::{ResultTable, Value};
use thiserror::Error;

pub use config::{ExperimentConfig, Format, Params, SubcommandName, VacuumKind};

/// Exit code for invalid flags, configs or violated preconditions.
pub const EXIT_USAGE: i32 = 64;
/// Exit code for failures writing the output.
pub const EXIT_IO: i32 = 74;
/// Check indices above this are reported as this.
pub const MAX_CHECK_CODE: i32 = 63;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qhopf::Error),
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// How a measured value is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Below,
    Above,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Below => "<",
            Relation::Above => ">",
        }
    }
}

/// One residual compared against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub index: usize,
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
}

impl Check {
    /// Passes when `value < tolerance`. NaN fails.
    pub fn below(index: usize, name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            index,
            name: name.into(),
            value,
            tolerance,
            relation: Relation::Below,
        }
    }

    /// Passes when `value > tolerance`. NaN fails.
    pub fn above(index: usize, name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            relation: Relation::Above,
            ..Self::below(index, name, value, tolerance)
        }
    }

    pub fn passed(&self) -> bool {
        match self.relation {
            Relation::Below => self.value < self.tolerance,
            Relation::Above => self.value > self.tolerance,
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "[{}] {} {}: {} {} {}",
            self.index,
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            qhopf::table::format_real(self.value),
            self.relation.symbol(),
            qhopf::table::format_real(self.tolerance)
        )
    }
}

/// Output of one subcommand.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: ResultTable,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(table: ResultTable) -> Self {
        Self {
            table,
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends `value < tolerance` with the next sequential index.
    pub fn below(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        let index = self.checks.len() + 1;
        self.checks
            .push(Check::below(index, name, value, tolerance));
    }

    /// Appends `value > tolerance` with the next sequential index.
    pub fn above(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        let index = self.checks.len() + 1;
        self.checks
            .push(Check::above(index, name, value, tolerance));
    }

    /// Index of the first failing check in order of appearance.
    pub fn first_failure(&self) -> Option<usize> {
        self.checks.iter().find(|c| !c.passed()).map(|c| c.index)
    }

    pub fn exit_code(&self) -> i32 {
        match self.first_failure() {
            None => 0,
            Some(i) => (i as i32).clamp(1, MAX_CHECK_CODE),
        }
    }

    /// Table with config echo and check outcomes appended to the metadata.
    pub fn finish(mut self, config: &ExperimentConfig) -> ResultTable {
        self.table.set_meta("subcommand", config.subcommand.name());
        for (k, v) in config.params.echo() {
            self.table.set_meta(format!("config.{k}"), v);
        }
        self.table
            .set_meta("seed", Value::Int(config.params.seed.unwrap_or(0) as i64));
        if self.table.meta_value("truncation_tail").is_none() {
            self.table.set_meta("truncation_tail", 0.0);
        }
        for (i, c) in self.checks.iter().enumerate() {
            self.table
                .set_meta(format!("check_{}", i + 1), c.describe());
        }
        self.table
            .set_meta("exit_code", Value::Int(self.exit_code() as i64));
        self.table
    }
}

/// Runs a resolved configuration.
pub fn run(config: &ExperimentConfig) -> Result<Report, CliError> {
    commands::dispatch(config)
}
