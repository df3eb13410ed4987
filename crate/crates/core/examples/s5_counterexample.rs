//! `S₅` on the ten cosets of `S₃ × S₂`: EKR holds, the module property fails,
//! and the sign character certifies it on a copy of `A₄`.

use ekrm::action::CosetAction;
use ekrm::chartable::char_sum;
use ekrm::clique::SearchBudget;
use ekrm::ekr::{verify_regular_subset, ActionAnalysis, AnalysisBudget};
use ekrm::group::named;
use ekrm::perm::parse_generators;
use ekrm::SubgroupSpec;

fn main() -> ekrm::Result<()> {
    let s5 = named::symmetric(5)?;
    let h = SubgroupSpec::new(&s5, &parse_generators("(1,2,3),(1,2),(4,5)", Some(5))?)?;

    // a regular subset forces max ≤ |G|/10 = |H|
    let c = parse_generators("(1,2,3,4,5)", Some(5))?.remove(0);
    let t = parse_generators("(2,3,5,4)", Some(5))?.remove(0);
    let r: Vec<_> = (0..5).flat_map(|k| [c.pow(k), t.mul(&c.pow(k))]).collect();
    println!(
        "C ∪ tC regular: {}",
        verify_regular_subset(&CosetAction::new(&s5, &h, 1000)?, &r)?
    );

    let a = ActionAnalysis::new(&s5, &h, AnalysisBudget::default())?;
    let v = a.ekr_verdicts(SearchBudget::default())?;
    println!("max {}: ekr {}, module {}", v.max_size, v.ekr, v.ekr_module);
    for w in &v.witnesses {
        println!("{} fails on {:?}", w.property, w.set);
        if let Some(ch) = &w.character {
            println!(
                "  χ{} of degree {} sums to {} over it",
                ch.index + 1,
                ch.degree,
                ch.sum
            );
        }
    }

    let a4: Vec<_> = named::alternating(4)?
        .elements(100)?
        .elements()
        .iter()
        .map(|g| g.extended(5))
        .collect();
    let k = a.indices_of(&a4)?;
    let sign = a.table().sign_character().expect("S5 has a sign character");
    let sum = char_sum(
        &a.table().irreducibles()[sign],
        &a.classes().class_counts(&k),
    );
    println!("sign summed over A4 on {{1,2,3,4}}: {sum}");
    Ok(())
}
