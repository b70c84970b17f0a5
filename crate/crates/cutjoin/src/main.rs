fn main() -> std::process::ExitCode {
    cutjoin::cli::main()
}
