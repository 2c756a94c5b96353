fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TF_LOG")).init();
    std::process::exit(tournament_partition::cli::run());
}
