use clap::Parser;
use house_alloc_cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    let out = run(Cli::parse())?;
    print!("{out}");
    Ok(())
}
