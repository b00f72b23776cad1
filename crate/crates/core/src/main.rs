fn main() {
    std::process::exit(cayley_census::cli::cmd_dispatch(std::env::args_os()));
}
