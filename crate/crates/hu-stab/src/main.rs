fn main() {
    std::process::exit(hu_stab::cli::main_entry());
}
