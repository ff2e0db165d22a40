fn main() {
    std::process::exit(seqmeter::cli::run(std::env::args_os()));
}
