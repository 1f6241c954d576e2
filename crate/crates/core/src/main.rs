use clap::Parser;

fn main() {
    let cli = fdalg::cli::Cli::parse();
    std::process::exit(fdalg::cli::run(&cli));
}
