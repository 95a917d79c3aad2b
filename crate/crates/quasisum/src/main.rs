fn main() {
    std::process::exit(quasisum::cli::run_from(std::env::args()) as i32);
}
