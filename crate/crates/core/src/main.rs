fn main() {
    std::process::exit(beamsynth::cli::run(std::env::args_os()));
}
