fn main() {
    std::process::exit(reprocs::cli_main());
}
