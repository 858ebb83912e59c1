// The command-line entry point; everything lives in the library.
fn main() {
    std::process::exit(casimir_core::cli::run(std::env::args_os()));
}
