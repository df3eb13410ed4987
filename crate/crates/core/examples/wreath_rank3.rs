//! `S₃ ≀ S₂` in product action on nine points.

use ekrm::ekr::{rank3_wreath_suite, AnalysisBudget};
use ekrm::group::named;

fn main() -> ekrm::Result<()> {
    let r = rank3_wreath_suite(&named::symmetric(3)?, AnalysisBudget::default())?;
    println!("{r:#?}");
    println!("passed: {}", r.passed());
    Ok(())
}
