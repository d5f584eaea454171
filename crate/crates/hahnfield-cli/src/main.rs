fn main() {
    std::process::exit(hahnfield_cli::app::main_with(std::env::args().collect()));
}
