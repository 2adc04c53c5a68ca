use clap::Parser;

fn main() {
    let cli = thz_harq::cli::Cli::parse();
    std::process::exit(thz_harq::cli::run(cli));
}
