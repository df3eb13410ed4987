//! Weighted ratio-bound certificates for `A₅`, given by hand and found by LP.

use ekrm::cyclotomic::rational;
use ekrm::ekr::{ActionAnalysis, AnalysisBudget};
use ekrm::group::named;
use ekrm::perm::parse_generators;
use ekrm::spectral::{search_certificate, verify_certificate, CompatibleClassFunction};
use ekrm::SubgroupSpec;

fn main() -> ekrm::Result<()> {
    let a5 = named::alternating(5)?;
    let perm = |s: &str| parse_generators(s, Some(5)).map(|mut v| v.remove(0));

    // A5 on the twelve cosets of a Sylow 5-subgroup, tight on the subgroup itself
    let h = SubgroupSpec::new(&a5, &[perm("(1,2,3,4,5)")?])?;
    let a = ActionAnalysis::new(&a5, &h, AnalysisBudget::default())?;
    let f = CompatibleClassFunction::from_representatives(
        &a,
        &[
            (perm("(1,2)(3,4)")?, rational(1, 1)),
            (perm("(1,2,3)")?, rational(2, 1)),
        ],
    )?;
    let z5: Vec<_> = (0..5)
        .map(|k| perm("(1,2,3,4,5)").map(|c| c.pow(k)))
        .collect::<ekrm::Result<_>>()?;
    let cert = verify_certificate(&a, &f, &a.indices_of(&z5)?)?;
    println!(
        "by hand: d = {}, τ = {}, bound {} on a set of size {}",
        cert.d, cert.tau, cert.bound, cert.tight_set_size
    );

    // the LP finds weights for A5 acting on 10 points
    let h = SubgroupSpec::new(&a5, &parse_generators("(1,2,3),(1,2)(4,5)", Some(5))?)?;
    let a = ActionAnalysis::new(&a5, &h, AnalysisBudget::default())?;
    let cert = search_certificate(&a, 12)?;
    for w in &cert.weights {
        println!("  f({}) = {}", w.representative, w.weight);
    }
    println!(
        "searched: d = {}, τ = {}, bound {}",
        cert.d, cert.tau, cert.bound
    );
    Ok(())
}
