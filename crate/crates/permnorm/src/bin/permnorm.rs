fn main() {
    std::process::exit(permnorm::cli::main_entry());
}
