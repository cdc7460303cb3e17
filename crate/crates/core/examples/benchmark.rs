//! Timed runs over every graph file in a directory, reporting NMI against
//! the ground truth where one is available.
//!
//! ```text
//! cargo run --release --example benchmark -- [DIR] [REPEATS]
//! ```
//!
//! DIR defaults to the bundled `data/` directory. Drop other benchmark
//! networks there as `.gml` files with `value` attributes, or as edge lists
//! with a `<name>.labels` sidecar.

use std::path::PathBuf;

use coin::bench::{bench_dataset, discover_datasets, load_dataset, reports_table, reports_to_csv};
use coin::CoinConfig;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    let repeats: usize = args.next().map(|r| r.parse()).transpose()?.unwrap_or(10);

    let cfg = CoinConfig::default();
    let mut reports = Vec::new();
    for path in discover_datasets(&dir)? {
        let ds = load_dataset(&path, None)?;
        reports.push(bench_dataset(&ds, &cfg, repeats)?);
    }
    print!("{}", reports_table(&reports));
    println!();
    print!("{}", reports_to_csv(&reports));
    Ok(())
}
