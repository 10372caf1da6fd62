fn main() {
    std::process::exit(ultrasphere::cli::main_with_env());
}
