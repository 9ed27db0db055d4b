fn main() {
    std::process::exit(bruhat_strata::cli::run(std::env::args_os()));
}
