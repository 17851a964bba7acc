fn main() {
    std::process::exit(b0vpg::cli::main_with_std());
}
