use clap::Parser;
use floquet_noise::cli::{execute, Args};

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let summary = execute(&args)?;
    println!("{}", summary.message);
    Ok(())
}
