fn main() {
    std::process::exit(zetadr::cli::main_exit());
}
