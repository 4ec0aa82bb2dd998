fn main() {
    std::process::exit(ut_orbits::cli::main_with_args(std::env::args_os()));
}
