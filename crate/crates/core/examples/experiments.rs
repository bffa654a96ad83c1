//! Runs lab experiments from TOML and from flag-style settings, writing CSV to stdout.

use polarlab::lab::{self, OutputFormat, RawConfig};

fn main() -> polarlab::Result<()> {
    let raw = RawConfig::from_toml(
        r#"
        experiment = "thm12"
        lambda = [2]
        s = ["2", "3/2"]
        t = [2]
        pole = ["0", "inf"]
        "#,
    )?;
    let records = lab::run(&raw.validate()?)?;
    lab::write_records(std::io::stdout().lock(), &records, OutputFormat::Csv)?;

    let mut raw = RawConfig::default();
    for (k, v) in [("experiment", "interlacing"), ("instances", "100"), ("seed", "3"), ("format", "json")] {
        raw.set(k, v)?;
    }
    let cfg = raw.validate()?;
    let records = lab::run(&cfg)?;
    lab::write_records(std::io::stdout().lock(), &records, cfg.format)?;
    println!("all pass: {}", lab::all_pass(&records));
    Ok(())
}
