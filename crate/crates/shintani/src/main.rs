fn main() -> std::process::ExitCode {
    shintani::verify::cli::main()
}
