//! Structural shortcuts, each confirmed by the exhaustive search.

use ekrm::clique::SearchBudget;
use ekrm::ekr::{ActionAnalysis, AnalysisBudget};
use ekrm::job::{parse_group, parse_subgroup};

fn main() -> ekrm::Result<()> {
    for (g, h) in [
        ("symmetric:4", "stab:1"),
        ("agl1:7", "stab:1"),
        ("symmetric:5", "stab:1"),
        ("quaternion", "trivial"),
        ("heisenberg:3", "trivial"),
        ("dihedral:8", "stab:1"),
    ] {
        let group = parse_group(g)?;
        let a = ActionAnalysis::new(
            &group,
            &parse_subgroup(&group, h)?,
            AnalysisBudget::default(),
        )?;
        let v = a.ekr_verdicts(SearchBudget::default())?;
        let why = v
            .shortcut
            .as_ref()
            .map_or("none".to_string(), |s| s.witness.clone());
        println!(
            "{g:>13} / {h:<20} {:?}: module {}  ({why})",
            v.method, v.ekr_module
        );
    }
    Ok(())
}
