fn main() -> std::process::ExitCode {
    ccd_cli::run(std::env::args_os())
}
