// SPDX-License-Identifier: MIT OR Apache-2.0

use clap::Parser;

fn main() {
    std::process::exit(mcp2::cli::run(mcp2::cli::Cli::parse()));
}
