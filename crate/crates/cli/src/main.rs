//! `subsetsum`: exact k-subset sum counts, theorem bounds and verification
//! sweeps over `Z_n`, `F_q` and finite abelian groups.

mod app;
mod config;
mod error;
mod plan;
mod report;

use std::process::ExitCode;

fn main() -> ExitCode {
    let code = app::run(std::env::args_os(), &mut std::io::stdout().lock());
    ExitCode::from(code as u8)
}
