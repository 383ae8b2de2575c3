// Writes the 18 preset curve datasets plus their manifest.

use tmsv_postselect::presets::{find_preset, write_default_figures};
use tmsv_postselect::Backend;

pub fn run() -> tmsv_postselect::Result<()> {
    let dir = std::env::temp_dir().join(format!("tmsv-figures-{}", std::process::id()));
    let manifest = write_default_figures(&dir)?;
    for e in &manifest.presets {
        let cols: Vec<&str> = e.curves.iter().map(|c| c.column.as_str()).collect();
        println!(
            "{:<10} {:<20} vs {:<7} {}",
            e.file,
            e.observable,
            e.axis,
            cols.join(" ")
        );
    }
    println!("written to {}", dir.display());

    let p = find_preset("fig7").expect("fig7 is a preset");
    let t = p.run(Backend::Closed, 1e-12)?;
    let last = t.rows.last().expect("presets are never empty");
    println!("fig7 at s={:?}: {:?}", last[0], &last[1..]);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
