//! The `edgerec` command line: corruption pools for training, edge
//! extraction, scoring of reconstructions, and evaluation.
//!
//! Exit codes: 0 ok, 2 configuration, 3 I/O, 4 protocol, 5 metric degeneracy.

mod args;
mod commands;
mod config;

pub use args::{Cli, Command, ConfigFlags, DatasetArgs, EdgeArgs, EvalArgs, RunArgs, ScoreArgs, SynthArgs};
pub use config::merged_config;

use edgerec::{Error, ErrorKind};

pub fn run(cli: &Cli) -> edgerec::Result<()> {
    match &cli.command {
        Command::Synth(a) => commands::synth(a),
        Command::Edge(a) => commands::edge(a),
        Command::Score(a) => commands::score(a),
        Command::Eval(a) => commands::eval(a),
        Command::Run(a) => commands::run(a),
    }
}

pub fn exit_code(err: &Error) -> u8 {
    match err.kind() {
        ErrorKind::Config => 2,
        ErrorKind::Io => 3,
        ErrorKind::Protocol => 4,
        ErrorKind::Degenerate => 5,
    }
}
