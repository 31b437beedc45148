fn main() {
    let code = extropy::cli::run(
        std::env::args_os(),
        std::env::var_os(extropy::cli::SEED_ENV),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
