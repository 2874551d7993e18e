fn main() {
    std::process::exit(cireg::cli::main_exit_code());
}
