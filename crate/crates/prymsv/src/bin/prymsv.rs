fn main() {
    std::process::exit(prymsv::cli::main_from_env());
}
