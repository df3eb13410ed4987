//! Character table of a named group, checked for orthogonality.
//!
//! `cargo run --example character_table -- alternating:5`

use std::sync::Arc;

use ekrm::chartable::CharacterTable;
use ekrm::job::parse_group;
use ekrm::ConjugacyClasses;

fn main() -> ekrm::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "alternating:5".into());
    let group = parse_group(&spec)?;
    let classes = Arc::new(ConjugacyClasses::compute(&group, 100_000)?);
    let table = CharacterTable::compute(classes)?;
    table.verify_orthogonality()?;
    println!("{spec}: order {}, {} classes", group.order(), table.len());
    print!("{}", table.export().to_text());
    Ok(())
}
