fn main() {
    std::process::exit(hopf_ore::cli::run());
}
