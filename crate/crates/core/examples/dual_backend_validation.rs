// The full validation suite, printed check by check.

use tmsv_postselect::validate::{run_validation, ValidateOptions};

pub fn run() -> tmsv_postselect::Result<()> {
    let report = run_validation(&ValidateOptions::default())?;
    for c in &report.checks {
        println!(
            "{:<28} {:<4} {:.2e} <= {:.0e} over {} points{}",
            c.name,
            if c.passed { "ok" } else { "FAIL" },
            c.max_deviation,
            c.limit,
            c.points,
            c.worst_at
                .as_deref()
                .map(|w| format!(" (worst {w})"))
                .unwrap_or_default()
        );
    }
    for o in &report.observations {
        println!(
            "{}: holds={} ({} of {} points violate)",
            o.name, o.holds, o.violations, o.points
        );
    }
    println!(
        "overall: {}",
        if report.passed { "passed" } else { "failed" }
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
