//! Jobs and certificates. Jobs are stored with explicit exponent vectors so
//! that a certificate replays bit for bit.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use stanley_core::{MonomialIdeal, RingContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FiltrationMode {
    /// Pick the construction that applies: dimension ≤ 1, Cohen-Macaulay of
    /// dimension 2, primary `I`; the certified search otherwise.
    Clean,
    /// Clean filtration of a Cohen-Macaulay module of dimension 2.
    CleanCm2,
    /// Clean filtration when all associated primes have one dimension `≤ 1`.
    CleanDim1,
    /// Clean filtration of a Cohen-Macaulay `J/I` with `I` primary.
    CleanPrimary,
    /// fdepth 1 filtration of a depth 1 module over dimension-2 primes.
    Fdepth1,
    /// Pretty clean filtration of a sequentially Cohen-Macaulay `S/I`, `n ≤ 5`.
    PrettyClean,
    /// Certified search for a filtration whose primes are minimal.
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DecomposeMethod {
    /// Dimension-filtration pipeline for `S/I`, `n ≤ 5`.
    Pipeline,
    /// Explicit formula for an ideal in two variables, as the module `I/0`.
    TwoVar,
    /// Witness of the exact interval-partition search.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    Depth,
    PrimaryDec,
    Polarize {
        /// Variable of a single tilde step; the full reduction when absent.
        var: Option<usize>,
        relaxed: bool,
        full: bool,
    },
    Filtrate {
        mode: FiltrationMode,
    },
    Decompose {
        method: DecomposeMethod,
    },
    Sdepth,
    CheckStanley {
        /// Also run the exact search to report `sdepth S/I` itself.
        exact: bool,
    },
    /// The built-in worked examples.
    Golden,
    Corpus {
        nvars: usize,
        count: u64,
        max_degree: u32,
        gens: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobOptions {
    pub box_margin: u32,
    /// Node budget for searches; each engine's own default when absent.
    pub search_cap: Option<usize>,
    pub seed: u64,
    pub allow_fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    pub ring: Option<RingContext>,
    /// The lower ideal `I`.
    pub ideal: Option<MonomialIdeal>,
    /// The upper ideal `J` of `J/I`; the whole ring when absent.
    pub mod_ideal: Option<MonomialIdeal>,
    pub options: JobOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub job: JobSpec,
    pub verdicts: Value,
    /// Wall time in milliseconds, only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub toolchain: String,
}

pub fn toolchain() -> String {
    format!("stanley {}", env!("CARGO_PKG_VERSION"))
}
