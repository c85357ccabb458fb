fn main() {
    std::process::exit(dirac_sphere::cli::main_with_env());
}
