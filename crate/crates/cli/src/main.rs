fn main() {
    std::process::exit(scanlab_cli::run());
}
