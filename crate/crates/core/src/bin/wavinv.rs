use clap::Parser;

fn main() {
    let cli = wavinv::cli::Cli::parse();
    std::process::exit(wavinv::cli::run(cli));
}
