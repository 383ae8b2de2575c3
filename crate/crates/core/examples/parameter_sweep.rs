// A one-axis sweep written as CSV.

use std::f64::consts::PI;

use tmsv_postselect::sweep::{sweep, Axis, Observable, Range, SweepSpec};
use tmsv_postselect::{Backend, ModelParams};

pub fn run() -> tmsv_postselect::Result<()> {
    let spec = SweepSpec {
        axis: Axis::S,
        range: Range::new(0.0, 2.0, 11)?,
        fixed: ModelParams::new(1.5, 0.0, 8.0 * PI / 9.0, 0.0)?,
        backend: Backend::Closed,
        outputs: vec![Observable::I0, Observable::EHz, Observable::Epr],
    };
    let table = sweep(&spec)?;
    print!("{}", table.to_csv_string()?);

    let i0 = table.column("i0").unwrap_or_default();
    let lowest = spec
        .range
        .values()
        .into_iter()
        .zip(i0)
        .filter_map(|(s, v)| v.map(|v| (s, v)))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    if let Some((s, v)) = lowest {
        println!("lowest i0 {v:.5} at s={s:.2}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
