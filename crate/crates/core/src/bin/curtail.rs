fn main() {
    std::process::exit(curtail::cli::dispatch(std::env::args_os()));
}
