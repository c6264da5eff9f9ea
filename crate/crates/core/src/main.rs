fn main() {
    std::process::exit(logdgen::cli::run_from_env());
}
