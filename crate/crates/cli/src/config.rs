use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Direct,
    Box,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Direct => "direct",
            Mode::Box => "box",
        }
    }
}

/// Budgets, tolerances and the seed shared by the subcommands.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Quotient candidates examined.
    pub quotient_budget: u64,
    /// Signatures visited by the move search.
    pub node_cap: usize,
    pub restarts: usize,
    /// Longest face-pairing word; `None` means `4t`.
    pub word_length: Option<u64>,
    /// Elementary moves the comparison may search.
    pub cap: u64,
    pub tol: f64,
    pub seed: u64,
    /// Edge-length divisor: edges must be shorter than `inj / c`.
    pub c: u32,
    /// Word length used for systole estimates.
    pub systole_words: usize,
    pub mode: Mode,
    /// Whether `compare` tries to geometrize its inputs.
    pub geometrize: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            quotient_budget: 1_000_000,
            node_cap: 500_000,
            restarts: 200,
            word_length: None,
            cap: 6,
            tol: 1e-10,
            seed: 0,
            c: 2,
            systole_words: 3,
            mode: Mode::Direct,
            geometrize: true,
        }
    }
}

impl PipelineConfig {
    /// Budgets must be positive. The move cap may be 0, which only accepts
    /// isomorphic inputs.
    pub fn check(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if self.quotient_budget == 0 {
            return bad("quotient budget must be positive");
        }
        if self.node_cap == 0 {
            return bad("node cap must be positive");
        }
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if self.word_length == Some(0) {
            return bad("word length must be positive");
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad("tolerance must be a positive number");
        }
        if self.c == 0 {
            return bad("c must be positive");
        }
        if self.systole_words == 0 {
            return bad("systole word length must be positive");
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "quotient_budget": self.quotient_budget,
            "node_cap": self.node_cap,
            "restarts": self.restarts,
            "word_length": self.word_length,
            "cap": self.cap,
            "tol": self.tol,
            "seed": self.seed,
            "c": self.c,
            "systole_words": self.systole_words,
            "mode": self.mode.as_str(),
            "geometrize": self.geometrize,
        })
    }
}
