fn main() {
    std::process::exit(coxeter_core::cli::run(std::env::args_os()));
}
