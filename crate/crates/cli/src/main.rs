fn main() -> std::process::ExitCode {
    ores_cli::app::main()
}
