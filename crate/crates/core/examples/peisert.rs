//! Peisert-type graphs: spectrum, maximum cliques and their span.
//!
//! `cargo run --release --example peisert -- 7 3`

use ekrm::clique::SearchBudget;
use ekrm::peisert::{build_peisert, peisert_report};

fn main() -> ekrm::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (q, m) = match args[..] {
        [q, m, ..] => (q, m),
        _ => (5, 2),
    };
    let g = build_peisert(q, m, None)?;
    println!(
        "P*({m}, {q}) on {} vertices, degree {}, connection set {:?}",
        g.order(),
        g.degree(),
        g.reps()
    );
    let report = peisert_report(&g, 10_000, 2_000, SearchBudget::default())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}
