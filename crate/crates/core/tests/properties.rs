use std::collections::HashSet;

use proptest::prelude::*;

use ekrm::clique::SearchBudget;
use ekrm::cyclotomic::{rational, Cyclotomic};
use ekrm::ekr::{ActionAnalysis, AnalysisBudget};
use ekrm::group::{named, ConjugacyClasses, PermGroup, SubgroupSpec};
use ekrm::job::{run_job, Check, JobSpec, Report};
use ekrm::peisert::build_peisert;
use ekrm::perm::Permutation;
use ekrm::spectral::{
    dense_matrix, dense_matrix_oracle, predicted_multiset, ratio_bound, weighted_spectrum,
    CompatibleClassFunction, Convention,
};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// One to three random generators on 4..=6 points.
fn generators() -> impl Strategy<Value = Vec<Permutation>> {
    (4usize..=6).prop_flat_map(|n| prop::collection::vec(perm(n), 1..=3))
}

fn closure_size(gens: &[Permutation]) -> usize {
    let id = Permutation::identity(gens[0].degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len()
}

/// Transitive actions with small character tables: `(group, subgroup generators)`.
fn small_actions() -> Vec<(PermGroup, SubgroupSpec)> {
    let mut out = Vec::new();
    for g in [
        named::symmetric(4).unwrap(),
        named::alternating(4).unwrap(),
        named::alternating(5).unwrap(),
        named::dihedral(10).unwrap(),
        named::agl1(5).unwrap(),
        named::quaternion8().unwrap(),
    ] {
        out.push((
            g.clone(),
            SubgroupSpec::new(&g, g.point_stabilizer(0).unwrap().generators()).unwrap(),
        ));
        let involution = g.generators().iter().find(|x| x.order() == 2).cloned();
        if let Some(t) = involution {
            out.push((g.clone(), SubgroupSpec::new(&g, &[t]).unwrap()));
        }
    }
    out
}

fn analyses() -> &'static [ActionAnalysis] {
    static CELL: std::sync::OnceLock<Vec<ActionAnalysis>> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        small_actions()
            .iter()
            .map(|(g, h)| ActionAnalysis::new(g, h, AnalysisBudget::default()).unwrap())
            .collect()
    })
}

/// Random inverse-closed weights on derangement classes.
fn compatible(a: &ActionAnalysis, seeds: &[i64]) -> CompatibleClassFunction {
    let classes = a.classes();
    let derangements = a.derangement_classes();
    let weights = (0..classes.len())
        .map(|c| {
            if !derangements.contains(&c) {
                return rational(0, 1);
            }
            let key = c.min(classes.inverse_class(c));
            rational(seeds[key % seeds.len()], 1 + (key as i64 % 3))
        })
        .collect();
    CompatibleClassFunction::new(a, weights).unwrap()
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(vec![1u64, 3, 4, 5, 8, 12]),
        prop::collection::vec((0i64..12, -4i64..=4, 1i64..=3), 0..4),
    )
        .prop_map(|(n, terms)| {
            terms
                .into_iter()
                .map(|(k, a, b)| Cyclotomic::root_of_unity(n, k).scale(&rational(a, b)))
                .sum()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_and_product(g in perm(7), h in perm(7)) {
        prop_assert!(g.mul(&g.inverse()).is_identity());
        prop_assert_eq!(g.mul(&h).inverse(), h.inverse().mul(&g.inverse()));
        prop_assert_eq!(g.pow(g.order()), Permutation::identity(7));
        prop_assert_eq!(g.is_even(), g.cycle_type().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0);
    }

    #[test]
    fn schreier_sims_order_matches_closure(gens in generators()) {
        let g = PermGroup::from_generators(&gens).unwrap();
        prop_assert_eq!(g.order() as usize, closure_size(&gens));
        for x in &gens {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn classes_partition_the_group(gens in generators()) {
        let g = PermGroup::from_generators(&gens).unwrap();
        let classes = ConjugacyClasses::compute(&g, 1000).unwrap();
        let order = g.order();
        prop_assert_eq!(classes.sizes().iter().sum::<u64>(), order);
        prop_assert!(classes.sizes().iter().all(|s| order.is_multiple_of(*s)));
        for r in classes.representatives() {
            for x in &gens {
                prop_assert_eq!(classes.class_index(&r.conjugate_by(x)), classes.class_index(r));
            }
        }
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!((a.clone() * b.clone()).conjugate(), a.conjugate() * b.conjugate());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inverse().unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn translates_of_maximum_sets(which in 0usize..12, i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let all = analyses();
        let a = &all[which % all.len()];
        let t = a.action().table();
        let max = a.max_intersecting_sets_containing_identity(SearchBudget::default()).unwrap();
        let s = &max.sets[k % max.sets.len()].elements;
        let (g, h) = (i % t.len(), j % t.len());
        let translate: Vec<usize> = s.iter().map(|&x| t.mul(t.mul(g, x), h)).collect();
        prop_assert!(a.is_intersecting(&translate));
        prop_assert_eq!(
            a.character_criterion_failure(&translate).is_none(),
            a.character_criterion_failure(s).is_none()
        );
    }

    #[test]
    fn ratio_bound_is_scale_invariant(which in 0usize..12, seeds in prop::collection::vec(-5i64..=5, 1..6), c in 1i64..20, d in 1i64..20) {
        let all = analyses();
        let a = &all[which % all.len()];
        let f = compatible(a, &seeds);
        let order = a.classes().group_order();
        let base = ratio_bound(&weighted_spectrum(a, &f), order);
        let scaled = ratio_bound(&weighted_spectrum(a, &f.scaled(&rational(c, d))), order);
        match (base, scaled) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{x:?} vs {y:?}"),
        }
    }

    #[test]
    fn dense_spectrum_matches_characters(which in 0usize..12, seeds in prop::collection::vec(-5i64..=5, 1..6)) {
        let all = analyses();
        let a = &all[which % all.len()];
        let f = compatible(a, &seeds);
        let dense = dense_matrix_oracle(a, &f, 1000).unwrap();
        let predicted = predicted_multiset(a, &weighted_spectrum(a, &f));
        prop_assert_eq!(dense.len(), predicted.len());
        for (x, y) in dense.iter().zip(&predicted) {
            prop_assert!((x - y).abs() < 1e-8, "{x} vs {y}");
        }
        let left = dense_matrix(a, &f, Convention::LeftQuotient, 1000).unwrap();
        let right = dense_matrix(a, &f, Convention::RightQuotient, 1000).unwrap();
        let mut l: Vec<f64> = left.symmetric_eigenvalues().iter().copied().collect();
        let mut r: Vec<f64> = right.symmetric_eigenvalues().iter().copied().collect();
        l.sort_by(f64::total_cmp);
        r.sort_by(f64::total_cmp);
        prop_assert!(l.iter().zip(&r).all(|(x, y)| (x - y).abs() < 1e-8));
    }

    #[test]
    fn derangement_graph_is_regular(which in 0usize..12) {
        let all = analyses();
        let a = &all[which % all.len()];
        let t = a.action().table();
        let fixers: HashSet<usize> = a.fixer_union().iter().copied().collect();
        let degrees: HashSet<usize> = (0..t.len())
            .map(|g| (0..t.len()).filter(|&h| !fixers.contains(&t.mul(g, t.inverse(h)))).count())
            .collect();
        prop_assert_eq!(degrees.len(), 1);
        prop_assert_eq!(*degrees.iter().next().unwrap(), t.len() - fixers.len());
    }

    #[test]
    fn strict_implies_module(which in 0usize..12) {
        let all = analyses();
        let a = &all[which % all.len()];
        let v = a.ekr_verdicts(SearchBudget::default()).unwrap();
        prop_assert!(!v.strict_ekr || (v.ekr && v.ekr_module));
        for s in a.canonical_family().iter() {
            prop_assert!(a.is_intersecting(s));
            prop_assert!(a.character_criterion_failure(s).is_none());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn peisert_cliques_and_srg(case in prop::sample::select(vec![(3u64, 1u64), (3, 2), (5, 2), (5, 3), (7, 2), (9, 2), (7, 4)]), x in 0usize..10_000, y in 0usize..10_000) {
        let (q, m) = case;
        let g = build_peisert(q, m, None).unwrap();
        let n = g.order();
        let cliques = g.canonical_cliques();
        prop_assert_eq!(cliques.len() as u64, m * q);
        let through_zero: Vec<&Vec<u32>> = cliques.iter().filter(|c| c.contains(&0)).collect();
        prop_assert_eq!(through_zero.len() as u64, m);
        let mut covered: Vec<u32> = through_zero.iter().flat_map(|c| c.iter().copied().filter(|&v| v != 0)).collect();
        covered.sort_unstable();
        covered.dedup();
        prop_assert_eq!(covered.len() as u64, m * (q - 1));
        for c in &cliques {
            prop_assert!(g.eigenvector_identity(c));
        }
        let (k, r, s) = ((m * (q - 1)) as i64, q as i64 - m as i64, -(m as i64));
        let mu = k + r * s;
        let lambda = mu + r + s;
        prop_assert_eq!(k * (k - lambda - 1), (n as i64 - k - 1) * mu);
        let (x, y) = ((x % n) as u32, (y % n) as u32);
        if x != y {
            let common = (0..n as u32).filter(|&z| g.adjacent(x, z) && g.adjacent(y, z)).count() as i64;
            prop_assert_eq!(common, if g.adjacent(x, y) { lambda } else { mu });
        }
    }

    #[test]
    fn report_json_round_trip(job in prop::sample::select(vec![
        ("alternating:4", "(1,2)(3,4)"),
        ("symmetric:4", "stab:1"),
        ("dihedral:10", "stab:1"),
        ("quaternion", "trivial"),
        ("agl1:5", "stab:2"),
    ])) {
        let mut spec = JobSpec::new(job.0, job.1);
        spec.checks = vec![Check::All];
        let report = run_job(&spec).unwrap();
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        prop_assert_eq!(back, report);
    }
}

/// `Z₆` acting regularly: the weighted spectrum is the discrete Fourier transform of `f`.
#[test]
fn cyclic_spectrum_is_dft() {
    let z6 = named::cyclic(6).unwrap();
    let a =
        ActionAnalysis::new(&z6, &SubgroupSpec::trivial(&z6), AnalysisBudget::default()).unwrap();
    let g = z6.generators()[0].clone();
    for weights in [
        [0i64, 1, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 2, 3, 5, 3, 2],
    ] {
        let entries: Vec<_> = (1..6)
            .map(|j| (g.pow(j as u64), rational(weights[j], 1)))
            .collect();
        let f = CompatibleClassFunction::from_representatives(&a, &entries).unwrap();
        let mut exact: Vec<f64> = weighted_spectrum(&a, &f)
            .eigenvalues
            .iter()
            .map(Cyclotomic::to_f64)
            .collect();
        let mut dft: Vec<f64> = (0..6)
            .map(|k| {
                (0..6)
                    .map(|j| {
                        weights[j] as f64 * (std::f64::consts::TAU * (j * k) as f64 / 6.0).cos()
                    })
                    .sum()
            })
            .collect();
        exact.sort_by(f64::total_cmp);
        dft.sort_by(f64::total_cmp);
        for (x, y) in exact.iter().zip(&dft) {
            assert!((x - y).abs() < 1e-9, "{exact:?} vs {dft:?}");
        }
    }
}
