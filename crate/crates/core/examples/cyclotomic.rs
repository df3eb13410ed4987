//! Exact arithmetic in cyclotomic fields.

use ekrm::cyclotomic::Cyclotomic;

fn main() -> ekrm::Result<()> {
    let z = |k| Cyclotomic::root_of_unity(5, k);
    let phi = Cyclotomic::one() + z(1) + z(4);
    println!("φ = {phi}");
    println!(
        "φ² − φ − 1 = {}",
        phi.clone() * phi.clone() - phi.clone() - Cyclotomic::one()
    );
    println!(
        "√5 = {} ≈ {}",
        Cyclotomic::sqrt_int(5),
        Cyclotomic::sqrt_int(5).to_f64()
    );
    println!("1/φ = {}", phi.inverse()?);
    println!(
        "⌊10φ⌋ = {}",
        (Cyclotomic::from_int(10) * phi.clone()).floor()?
    );
    let i = Cyclotomic::root_of_unity(4, 1);
    println!(
        "i·ī = {}, conductor of i + ζ₃ is {}",
        i.clone() * i.conjugate(),
        (i + Cyclotomic::root_of_unity(3, 1)).conductor()
    );
    Ok(())
}
