//! The `thetacells` command line: one subcommand per operation, canonical
//! line-oriented output, and artifacts written in the library
//! serializations.
//!
//! Exit codes: 0 success, 1 verification failure, 2 budget exhausted,
//! 3 usage or input error.

mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use report::{Report, Status, SCHEMA};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 2,
            _ => 3,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}

input_error!(presheaf_engine::PresheafError, intertwiner::IntertwinerError, theta_cat::ThetaError, lifting::LiftingError);

impl From<realization::RealizationError> for CliError {
    fn from(e: realization::RealizationError) -> Self {
        match e {
            realization::RealizationError::Budget(s) => CliError::Budget(s),
            e => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "thetacells", version, about = "Finite computations with cellular sets over Θ[C]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Level {
    /// Level k of Θ_k; labels live in Θ_{k-1}.
    #[arg(long, default_value_t = 2)]
    pub theta: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Out {
    /// Write the artifact (presheaf, map, certificate or enriched category) here.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Budget {
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Serialized presheaf.
    #[arg(long, conflicts_with = "object")]
    pub input: Option<String>,
    /// Use the representable on this object instead.
    #[arg(long)]
    pub object: Option<String>,
    /// Dimension of the site for --object.
    #[arg(long)]
    pub site_dim: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the objects of Θ_k up to a dimension.
    Objects {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        dim: usize,
    },
    /// List the maps between two objects.
    Hom {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Boundary of a representable.
    Boundary {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        object: String,
        #[command(flatten)]
        out: Out,
    },
    /// Inner horn of a representable.
    Horn {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        object: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Spine of a representable.
    Spine {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        object: String,
        #[command(flatten)]
        out: Out,
    },
    /// Generating cofibrations and anodynes up to a dimension.
    Generators {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        dim: usize,
    },
    /// Domain of a corner map of a region with label inclusions.
    Corner {
        #[command(flatten)]
        level: Level,
        /// full:n, boundary:n, empty:n, spine:n, horn:n:k or face:n:i.
        #[arg(long)]
        region: String,
        /// Label inclusions A/B, comma separated; [c] full, d[c] boundary, e[c] empty.
        #[arg(long)]
        legs: String,
        #[command(flatten)]
        out: Out,
    },
    /// Coherent realization of a labeled simplex.
    Realize {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        object: String,
        /// Label dimension bound of the box; defaults to the largest label dimension.
        #[arg(long)]
        dc: Option<usize>,
        /// Simplicial bound of the box; defaults to max(n-1, 1).
        #[arg(long)]
        dm: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Compare a realized hom at c with the classical rigidification.
    PointwiseCheck {
        #[command(flatten)]
        level: Level,
        /// Number of labels, checked against --labels when given.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        labels: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// The simplicial set k^*X at c.
    Kstar {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        c: String,
        #[command(flatten)]
        out: Out,
    },
    /// Bipointed necklace maps into a simplicial set, or into k^*X at c.
    Necklace {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        c: Option<String>,
        /// Bead dimensions, e.g. 1,2; `point` for the one-vertex necklace.
        #[arg(long)]
        beads: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        injective: bool,
    },
    /// Truncated necklace mapping space.
    Mapspace {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 3)]
        bead_budget: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Cosimplicial resolution of [1](c) in one degree.
    Resolution {
        #[command(flatten)]
        level: Level,
        /// R, L, cyl or E.
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Cell certificate that a spine inclusion is anodyne.
    CertifySpine {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        object: String,
        #[command(flatten)]
        out: Out,
    },
    /// Cell certificate for [1](c) into the L resolution.
    CertifyResolution {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Cell certificate for a horn times a simplex over Δ.
    CertifyHornProduct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Solve a lifting problem; without --p the target is terminal.
    Lift {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        i: String,
        #[arg(long)]
        top: String,
        #[arg(long, requires = "bottom")]
        p: Option<String>,
        #[arg(long, requires = "p")]
        bottom: Option<String>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Out,
    },
    /// Right lifting against generating anodynes up to a dimension.
    Fibrant {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Isofibration test for a map up to a dimension.
    Isofib {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        map: String,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Replay a cell certificate against the generators of its site.
    Verify {
        #[command(flatten)]
        level: Level,
        certificate: String,
    },
    /// Exhaustive check of the regular Cartesian Reedy axioms.
    CrCheck {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[command(flatten)]
        budget: Budget,
    },
}

/// What one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 3,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(r) => Outcome {
            code: r.status.code(),
            stdout: r.render(),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
