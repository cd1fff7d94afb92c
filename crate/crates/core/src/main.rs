//! Binary entry point for the qdsd command-line tool.

fn main() {
    std::process::exit(qutrit_dsd::cli::run());
}
