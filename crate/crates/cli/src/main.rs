fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("NIGAR_LOG", "warn")).init();
    std::process::exit(nigar_cli::run(std::env::args_os()));
}
