fn main() {
    pbent::cli::init_threads();
    std::process::exit(pbent::cli::run(std::env::args_os()));
}
