//! `A₄` on the six cosets of `⟨(1,2)(3,4)⟩`: not EKR, yet EKR-module.

use ekrm::clique::SearchBudget;
use ekrm::ekr::{ActionAnalysis, AnalysisBudget};
use ekrm::group::named;
use ekrm::perm::parse_generators;
use ekrm::SubgroupSpec;

fn main() -> ekrm::Result<()> {
    let a4 = named::alternating(4)?;
    let h = SubgroupSpec::new(&a4, &parse_generators("(1,2)(3,4)", Some(4))?)?;
    let a = ActionAnalysis::new(&a4, &h, AnalysisBudget::default())?;

    let v = a.ekr_verdicts(SearchBudget::default())?;
    println!(
        "max {} vs |H| {}: ekr {}, strict {}, module {}",
        v.max_size, v.subgroup_order, v.ekr, v.strict_ekr, v.ekr_module
    );

    let max = a.max_intersecting_sets_containing_identity(SearchBudget::default())?;
    for s in &max.sets {
        let oracle = a.span_membership_oracle(&s.elements)?;
        println!(
            "{:?}  in span of canonical sets: {oracle}",
            a.cycles(&s.elements)
        );
    }
    Ok(())
}
