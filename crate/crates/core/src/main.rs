use clap::Parser;

fn main() {
    let cli = cvsteer::cli::Cli::parse();
    let code = match cvsteer::cli::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
