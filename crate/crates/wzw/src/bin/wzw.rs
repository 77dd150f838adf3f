fn main() {
    std::process::exit(wzw::cli::main_entry());
}
