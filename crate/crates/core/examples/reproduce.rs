//! Runs the worked-example fixture suite.

use ekrm::reproduce::reproduce;

fn main() -> ekrm::Result<()> {
    let report = reproduce("paper", false)?;
    for line in report.lines() {
        println!("{line}");
    }
    println!("all passed: {}", report.passed);
    Ok(())
}
