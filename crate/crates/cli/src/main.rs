fn main() {
    std::process::exit(curvlab_cli::run_cli());
}
