fn main() {
    std::process::exit(crumby_cli::run());
}
