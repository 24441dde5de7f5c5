use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "z2alg", version, about = "Exact workbench for Z2-graded algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random-mode checks and randomized simplicity refutation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Use all cores; output is byte-identical to the sequential run.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Reinterpret the loaded algebra over this field (Q or F<p>).
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Cap on ideal-closure iterations.
    #[arg(long, global = true)]
    pub max_closure_iters: Option<usize>,
    /// Cap on p^dim for exhaustive enumeration over F_p.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_enum: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check identities or suites (gjordan, gmalcev, jordan, malcev, lie,
    /// leibniz, assoc, alt, comm, anticomm) on an algebra.
    Check {
        algebra: PathBuf,
        /// Suite or catalog identity names.
        names: Vec<String>,
        /// Additional identity file(s).
        #[arg(long = "identity-file")]
        identity_files: Vec<PathBuf>,
        /// Random mode with this many samples instead of the exhaustive sweep.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Build the bullet or angle algebra of a graded algebra.
    Derive {
        algebra: PathBuf,
        #[arg(value_parser = ["bullet", "angle"])]
        product: String,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Jordan or Malcev annihilator, with an ideal check.
    Ann {
        algebra: PathBuf,
        #[arg(value_parser = ["jordan", "malcev"])]
        kind: String,
    },
    /// Quotient by an annihilator or by the ideal generated by vectors.
    Quotient {
        algebra: PathBuf,
        #[arg(long, value_parser = ["jordan", "malcev"], conflicts_with = "generators")]
        ann: Option<String>,
        /// JSON list of vectors, each a map from basis name to coefficient.
        #[arg(long)]
        generators: Option<String>,
        #[arg(short, long)]
        out: PathBuf,
        /// Suites to check on the quotient.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Two-sided ideal generated by vectors.
    Closure {
        algebra: PathBuf,
        /// JSON list of vectors, each a map from basis name to coefficient.
        #[arg(long)]
        generators: String,
    },
    /// Simplicity relative to the Jordan or Malcev annihilator.
    Simple {
        algebra: PathBuf,
        #[arg(long, value_parser = ["jordan", "malcev"], default_value = "jordan")]
        kind: String,
        /// Expected verdict; a mismatch exits 1.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Set of right units.
    Units { algebra: PathBuf },
    /// Symbolic proofs: bullet-identities, angle-jacobian, malcev-equiv.
    Prove { target: String },
    /// Emit a gallery example, list them, or regenerate the whole gallery.
    Example {
        name: Option<String>,
        /// Block sizes for block-triangular, e.g. 2,1.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        list: bool,
        /// Write every example and manifest.json into this directory.
        #[arg(long)]
        all: Option<PathBuf>,
    },
    /// Quotient by the annihilator acting on it; checks the split null
    /// extension against the Jordan or Malcev suite.
    Bimodule {
        algebra: PathBuf,
        #[arg(value_parser = ["jordan", "malcev"])]
        kind: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Which identity classes an algebra belongs to.
    Classify { algebra: PathBuf },
}
