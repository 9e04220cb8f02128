fn main() {
    std::process::exit(changepat::cli::run());
}
