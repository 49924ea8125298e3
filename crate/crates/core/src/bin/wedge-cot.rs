fn main() {
    std::process::exit(wedge_cot::cli::run(std::env::args_os()));
}
