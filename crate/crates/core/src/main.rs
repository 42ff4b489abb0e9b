fn main() {
    std::process::exit(swingfreq::cli::main());
}
