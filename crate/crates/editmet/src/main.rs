//! Binary entry point for the `editmet` command-line tool.

fn main() {
    std::process::exit(editmet::cli::run());
}
