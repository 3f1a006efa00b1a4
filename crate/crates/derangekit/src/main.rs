fn main() -> std::process::ExitCode {
    derangekit::cli::main()
}
