fn main() {
    std::process::exit(hopfpres::report::cli::run(std::env::args_os()));
}
