fn main() {
    std::process::exit(tricolor_core::cli::main_with_std());
}
