fn main() {
    std::process::exit(best_choice::cli::run());
}
