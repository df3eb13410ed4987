//! Acceptance criteria, one PASS/FAIL line each. Every criterion is checked by
//! the library and by an independent route written here against raw permutations.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;

use ekrm::action::CosetAction;
use ekrm::chartable::{char_sum, ideal_dimension, CharacterTable};
use ekrm::clique::SearchBudget;
use ekrm::cyclotomic::{rational, Cyclotomic, Rational};
use ekrm::ekr::{
    rank3_wreath_suite, verify_regular_subset, ActionAnalysis, AnalysisBudget, Method,
};
use ekrm::group::{
    named, subgroup_class_representatives, wreath_product_s2, ConjugacyClasses, PermGroup,
    SubgroupSpec,
};
use ekrm::peisert::{build_peisert, predicted_spectrum, Eigenvalue};
use ekrm::perm::{parse_generators, Permutation};
use ekrm::spectral::{verify_certificate, weighted_spectrum, CompatibleClassFunction};

/// Agreement required between numeric eigenvalues and exact ones.
const NUMERIC_TOL: f64 = 1e-9;
/// Largest group on which the span oracle is run.
const ORACLE_ORDER: u64 = 400;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(text: &str, degree: usize) -> Permutation {
    parse_generators(text, Some(degree)).unwrap().remove(0)
}

fn gens(text: &str, degree: usize) -> Vec<Permutation> {
    parse_generators(text, Some(degree)).unwrap()
}

/// All elements generated by `gens`, by breadth-first closure.
fn closure(gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    out
}

/// `∪_x xHx⁻¹`: the elements that fix some coset of `H`.
fn fixer_union(group: &[Permutation], h: &[Permutation]) -> HashSet<Permutation> {
    group
        .iter()
        .flat_map(|x| h.iter().map(move |y| y.conjugate_by(x)))
        .collect()
}

fn conjugate(y: &Permutation, x: &Permutation) -> Permutation {
    x.mul(y).mul(&x.inverse())
}

fn is_intersecting(set: &[Permutation], fixers: &HashSet<Permutation>) -> bool {
    set.iter()
        .all(|s| set.iter().all(|r| fixers.contains(&s.mul(&r.inverse()))))
}

fn analysis(group: &PermGroup, h: &str) -> ActionAnalysis {
    let sub = SubgroupSpec::new(group, &gens(h, group.degree())).unwrap();
    ActionAnalysis::new(group, &sub, AnalysisBudget::default()).unwrap()
}

fn stabilizer_analysis(group: &PermGroup) -> ActionAnalysis {
    let sub = SubgroupSpec::new(group, group.point_stabilizer(0).unwrap().generators()).unwrap();
    ActionAnalysis::new(group, &sub, AnalysisBudget::default()).unwrap()
}

fn elements_of(a: &ActionAnalysis, set: &[usize]) -> Vec<Permutation> {
    set.iter().map(|&i| a.element(i).clone()).collect()
}

fn indices(a: &ActionAnalysis, elements: &[Permutation]) -> Vec<usize> {
    let mut idx = a.indices_of(elements).unwrap();
    idx.sort_unstable();
    idx
}

/// `(1+√5)/2 = 1 + ζ₅ + ζ₅⁴` and its conjugate `1 + ζ₅² + ζ₅³`.
fn golden() -> (Cyclotomic, Cyclotomic) {
    let z = |k| Cyclotomic::root_of_unity(5, k);
    (
        Cyclotomic::one() + z(1) + z(4),
        Cyclotomic::one() + z(2) + z(3),
    )
}

/// The printed character table of `A₅`: class sizes then rows `ρ₁…ρ₅`.
fn printed_table() -> (Vec<u64>, Vec<Vec<Cyclotomic>>) {
    let (phi, psi) = golden();
    let i = Cyclotomic::from_int;
    (
        vec![1, 15, 20, 12, 12],
        vec![
            vec![i(1), i(1), i(1), i(1), i(1)],
            vec![i(3), i(-1), i(0), phi.clone(), psi.clone()],
            vec![i(3), i(-1), i(0), psi.clone(), phi.clone()],
            vec![i(4), i(0), i(1), i(-1), i(-1)],
            vec![i(5), i(1), i(-1), i(0), i(0)],
        ],
    )
}

/// Printed row number of each computed irreducible, reading columns at the given representatives.
fn printed_labels(table: &CharacterTable) -> Vec<usize> {
    let reps = ["()", "(1,2)(3,4)", "(1,2,3)", "(1,2,3,4,5)", "(1,3,5,2,4)"];
    let cols: Vec<usize> = reps
        .iter()
        .map(|s| {
            let g = if *s == "()" {
                Permutation::identity(5)
            } else {
                p(s, 5)
            };
            table.classes().class_index(&g).unwrap()
        })
        .collect();
    let (_, rows) = printed_table();
    table
        .irreducibles()
        .iter()
        .map(|chi| {
            let row: Vec<Cyclotomic> = cols.iter().map(|&c| chi.values[c].clone()).collect();
            rows.iter()
                .position(|r| *r == row)
                .expect("row in printed table")
                + 1
        })
        .collect()
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    permutations_of(n - 1)
        .into_iter()
        .flat_map(|q| {
            (0..n).map(move |pos| {
                let mut r = q.clone();
                r.insert(pos, n - 1);
                r
            })
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let a5 = named::alternating(5).unwrap();
    let classes = std::sync::Arc::new(ConjugacyClasses::compute(&a5, 1000).unwrap());
    let table = CharacterTable::compute(classes.clone()).unwrap();
    table.verify_orthogonality().map_err(|e| e.to_string())?;
    let (sizes, printed) = printed_table();
    let mut printed_sorted = printed.clone();
    printed_sorted.sort_by_key(|r| format!("{r:?}"));
    let found = permutations_of(5).into_iter().any(|perm| {
        let sizes_ok = (0..5).all(|j| classes.sizes()[perm[j]] == sizes[j]);
        let mut rows: Vec<Vec<Cyclotomic>> = table
            .irreducibles()
            .iter()
            .map(|chi| perm.iter().map(|&c| chi.values[c].clone()).collect())
            .collect();
        rows.sort_by_key(|r| format!("{r:?}"));
        sizes_ok && rows == printed_sorted
    });
    ensure(found, || {
        "no row/column permutation matches the printed table".into()
    })?;
    Ok("A5 table equals the printed table exactly, (1±√5)/2 entries included".into())
}

fn criterion_2() -> Outcome {
    let a4 = named::alternating(4).unwrap();
    let a = analysis(&a4, "(1,2)(3,4)");
    let v = a
        .ekr_verdicts(SearchBudget::default())
        .map_err(|e| e.to_string())?;
    ensure(
        v.max_size == 4 && !v.ekr && !v.strict_ekr && v.ekr_module,
        || format!("verdict {v:?}"),
    )?;
    let max = a
        .max_intersecting_sets_containing_identity(SearchBudget::default())
        .unwrap();
    let sylow = closure(&gens("(1,2)(3,4),(1,3)(2,4)", 4));
    ensure(
        max.sets.len() == 1 && elements_of(&a, &max.sets[0].elements) == sylow,
        || "maximum set is not the Sylow 2-subgroup".into(),
    )?;

    // brute force over all subsets containing the identity
    let elems = closure(&gens("(1,2,3),(2,3,4)", 4));
    let fixers = fixer_union(&elems, &closure(&gens("(1,2)(3,4)", 4)));
    let others: Vec<&Permutation> = elems.iter().filter(|g| !g.is_identity()).collect();
    let mut best: Vec<Vec<Permutation>> = Vec::new();
    for mask in 0u32..1 << others.len() {
        let mut s = vec![Permutation::identity(4)];
        s.extend(
            (0..others.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| others[i].clone()),
        );
        if is_intersecting(&s, &fixers) {
            if best.first().is_none_or(|b| s.len() > b.len()) {
                best.clear();
            }
            if best.first().is_none_or(|b| s.len() == b.len()) {
                s.sort();
                best.push(s);
            }
        }
    }
    ensure(best.len() == 1 && best[0] == sylow, || {
        format!("brute force found {} maximum sets", best.len())
    })?;
    Ok("A4 on 6 cosets: max 4 > 2, strict false, module true, unique maximum set V4".into())
}

fn criterion_3() -> Outcome {
    let s5 = named::symmetric(5).unwrap();
    let a = analysis(&s5, "(1,2,3),(1,2),(4,5)");
    let v = a
        .ekr_verdicts(SearchBudget::default())
        .map_err(|e| e.to_string())?;
    ensure(v.ekr && v.max_size == 12 && !v.ekr_module, || {
        format!("verdict {v:?}")
    })?;
    let sign = a.table().sign_character().ok_or("no sign character")?;
    let w = v
        .witnesses
        .iter()
        .find(|w| w.property == "ekr_module")
        .ok_or("no module witness")?;
    let ch = w.character.as_ref().ok_or("witness without character")?;
    ensure(
        ch.index == sign && ch.sum == Cyclotomic::from_int(12),
        || format!("witness {ch:?}"),
    )?;

    // R = C ∪ tC is regular, checked with cosets built from raw permutations
    let c = p("(1,2,3,4,5)", 5);
    let t = p("(2,3,5,4)", 5);
    let r: Vec<Permutation> = (0..5).flat_map(|k| [c.pow(k), t.mul(&c.pow(k))]).collect();
    let h_elems = closure(&gens("(1,2,3),(1,2),(4,5)", 5));
    let all = closure(&gens("(1,2),(1,2,3,4,5)", 5));
    let coset_key =
        |x: &Permutation| -> Permutation { h_elems.iter().map(|h| x.mul(h)).min().unwrap() };
    let cosets: BTreeSet<Permutation> = all.iter().map(coset_key).collect();
    let regular = cosets.iter().all(|alpha| {
        let images: BTreeSet<Permutation> = r.iter().map(|g| coset_key(&g.mul(alpha))).collect();
        images.len() == cosets.len()
    });
    ensure(regular && r.len() == 10, || "R is not regular".into())?;
    let h = SubgroupSpec::new(&s5, &gens("(1,2,3),(1,2),(4,5)", 5)).unwrap();
    ensure(
        verify_regular_subset(&CosetAction::new(&s5, &h, 1000).unwrap(), &r).unwrap(),
        || "library rejects R".into(),
    )?;

    // sign sums by parity counting
    let k = closure(&gens("(1,2,3),(2,3,4)", 5));
    let sign_sum =
        |s: &[Permutation]| -> i64 { s.iter().map(|g| if g.is_even() { 1 } else { -1 }).sum() };
    ensure(sign_sum(&k) == 12, || "λ(K) ≠ 12".into())?;
    let fixers = fixer_union(&all, &h_elems);
    ensure(is_intersecting(&k, &fixers), || {
        "K is not intersecting".into()
    })?;
    let canonical_zero = all.iter().all(|x| {
        all.iter().all(|y| {
            let coset: Vec<Permutation> = h_elems.iter().map(|g| x.mul(&conjugate(g, y))).collect();
            sign_sum(&coset) == 0
        })
    });
    ensure(canonical_zero, || {
        "sign sum nonzero on a canonical set".into()
    })?;
    let library_sum = char_sum(
        &a.table().irreducibles()[sign],
        &a.classes().class_counts(&indices(&a, &k)),
    );
    ensure(library_sum == Cyclotomic::from_int(12), || {
        format!("library λ(K) = {library_sum}")
    })?;
    let max = a
        .max_intersecting_sets_containing_identity(SearchBudget::default())
        .unwrap();
    ensure(
        max.sets.iter().any(|s| s.elements == indices(&a, &k)),
        || "K is not among the maximum sets".into(),
    )?;
    Ok("S5 on 10 cosets: EKR via regular R, max 12, module false by sign character on K≅A4 (λ(K)=12, 0 on canonical sets)".into())
}

/// Dense `f(g⁻¹h)` spectrum with `f` given by cycle type.
fn dense_spectrum(elements: &[Permutation], f: impl Fn(&Permutation) -> f64) -> Vec<f64> {
    let n = elements.len();
    let m = DMatrix::from_fn(n, n, |i, j| f(&elements[i].inverse().mul(&elements[j])));
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn criterion_4() -> Outcome {
    let a5 = named::alternating(5).unwrap();
    let elems = closure(&gens("(1,2,3),(1,2,3,4,5)", 5));
    let cases: [(&str, Vec<(&str, Rational)>, &str, i64, i64, i64, Vec<usize>); 3] = [
        (
            "(1,2,3,4,5)",
            vec![("(1,2)(3,4)", rational(1, 1)), ("(1,2,3)", rational(2, 1))],
            "(1,2,3,4,5)",
            55,
            -5,
            5,
            vec![2, 3, 5],
        ),
        (
            "(1,2)(3,4),(1,3)(2,4)",
            vec![
                ("(1,2,3)", rational(1, 1)),
                ("(1,2,3,4,5)", rational(3, 2)),
                ("(1,3,5,2,4)", rational(3, 2)),
            ],
            "(1,2)(3,4),(1,3)(2,4)",
            56,
            -4,
            4,
            vec![4, 5],
        ),
        (
            "(1,2,3),(1,2)(4,5)",
            vec![
                ("(1,2,3,4,5)", rational(1, 1)),
                ("(1,3,5,2,4)", rational(1, 1)),
            ],
            "(1,2,3),(2,3,4)",
            24,
            -6,
            12,
            vec![4],
        ),
    ];
    let mut lines = Vec::new();
    for (i, (h, weights, set, d, tau, bound, tight)) in cases.into_iter().enumerate() {
        let a = analysis(&a5, h);
        let entries: Vec<(Permutation, Rational)> =
            weights.iter().map(|(g, w)| (p(g, 5), w.clone())).collect();
        let f = CompatibleClassFunction::from_representatives(&a, &entries)
            .map_err(|e| e.to_string())?;
        let s = indices(&a, &closure(&gens(set, 5)));
        let cert = verify_certificate(&a, &f, &s).map_err(|e| format!("f{}: {e}", i + 1))?;
        let labels = printed_labels(a.table());
        let mut got: Vec<usize> = cert.tight_characters.iter().map(|&c| labels[c]).collect();
        got.sort_unstable();
        ensure(
            cert.d == Cyclotomic::from_int(d)
                && cert.tau == Cyclotomic::from_int(tau)
                && cert.bound == Cyclotomic::from_int(bound)
                && got == tight,
            || {
                format!(
                    "f{}: d={} τ={} bound={} tight={got:?}",
                    i + 1,
                    cert.d,
                    cert.tau,
                    cert.bound
                )
            },
        )?;
        // numeric oracle keyed on cycle type, valid because each f is constant on 5-cycles
        let weight_of_type = |g: &Permutation| -> f64 {
            weights
                .iter()
                .find(|(r, _)| p(r, 5).cycle_type() == g.cycle_type())
                .map_or(0.0, |(_, w)| w.to_f64().unwrap())
        };
        let ev = dense_spectrum(&elems, weight_of_type);
        ensure(
            (ev[0] - tau as f64).abs() < NUMERIC_TOL && (ev[59] - d as f64).abs() < NUMERIC_TOL,
            || format!("f{}: dense extremes {} {}", i + 1, ev[0], ev[59]),
        )?;
        let spectrum = weighted_spectrum(&a, &f);
        let mut predicted: Vec<f64> = spectrum
            .eigenvalues
            .iter()
            .zip(a.table().degrees())
            .flat_map(|(l, &deg)| std::iter::repeat_n(l.to_f64(), (deg * deg) as usize))
            .collect();
        predicted.sort_by(f64::total_cmp);
        ensure(
            ev.iter()
                .zip(&predicted)
                .all(|(x, y)| (x - y).abs() < NUMERIC_TOL),
            || format!("f{}: dense spectrum differs", i + 1),
        )?;
        lines.push(format!("f{}:{d}/{tau}/{bound}", i + 1));
    }
    Ok(format!(
        "A5 certificates verify exactly ({}), dense spectra agree",
        lines.join(" ")
    ))
}

fn a5_subgroups() -> Vec<SubgroupSpec> {
    let a5 = named::alternating(5).unwrap();
    let table = a5.elements(1000).unwrap();
    subgroup_class_representatives(&a5, 1000)
        .unwrap()
        .into_iter()
        .filter(|s| s.len() > 1 && s.len() < 60)
        .map(|s| table.subgroup_spec(&a5, &s))
        .collect()
}

fn criterion_5() -> Outcome {
    let a5 = named::alternating(5).unwrap();
    let subs = a5_subgroups();
    let orders: Vec<u64> = subs.iter().map(|s| s.order()).collect();
    ensure(orders == [2, 3, 4, 5, 6, 10, 12], || {
        format!("core-free subgroup orders {orders:?}")
    })?;
    for h in &subs {
        let a = ActionAnalysis::new(&a5, h, AnalysisBudget::default()).unwrap();
        ensure(a.fixer_union().len() <= 60, || {
            "fixer union larger than the budget".into()
        })?;
        let v = a
            .ekr_verdicts(SearchBudget::default())
            .map_err(|e| e.to_string())?;
        ensure(v.ekr_module, || format!("|H|={}: module false", h.order()))?;
        let max = a
            .max_intersecting_sets_containing_identity(SearchBudget::default())
            .unwrap();
        for s in &max.sets {
            ensure(a.span_membership_oracle(&s.elements).unwrap(), || {
                format!("|H|={}: span oracle rejects a set", h.order())
            })?;
        }
    }
    Ok("A5: module true for Z2, Z3, V4, Z5, S3, D10, A4 (span oracle agrees)".into())
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for (g, n) in [
        (named::symmetric(4).unwrap(), 4u64),
        (named::symmetric(5).unwrap(), 5),
        (named::alternating(5).unwrap(), 5),
    ] {
        let a = stabilizer_analysis(&g);
        let dim = ideal_dimension(a.table(), a.action().subgroup_indices());
        let span = a.canonical_span_rank().unwrap() as u64;
        let formula = 1 + (n - 1) * (n - 1);
        ensure(dim == formula && span == formula, || {
            format!("degree {n}: dim {dim}, span {span}, formula {formula}")
        })?;
        parts.push(dim.to_string());
    }
    Ok(format!(
        "ideal dimensions {} equal 1+(n−1)² and the canonical span rank",
        parts.join(", ")
    ))
}

/// Whether `n` is a normal subgroup of `g` acting regularly on `degree` points.
fn is_regular_normal(g: &[Permutation], n: &[Permutation], degree: usize) -> bool {
    let set: HashSet<&Permutation> = n.iter().collect();
    let normal = g
        .iter()
        .all(|x| n.iter().all(|y| set.contains(&conjugate(y, x))));
    let orbit: BTreeSet<usize> = n.iter().map(|y| y.image(0)).collect();
    normal && n.len() == degree && orbit.len() == degree
}

fn criterion_7() -> Outcome {
    let cases = [
        (named::agl1(5).unwrap(), "(1,2,3,4,5)", 5),
        (named::symmetric(4).unwrap(), "(1,2)(3,4),(1,3)(2,4)", 4),
    ];
    for (g, n, degree) in cases {
        let elems = closure(g.generators());
        ensure(
            is_regular_normal(&elems, &closure(&gens(n, degree)), degree),
            || format!("{n} is not regular normal"),
        )?;
        let a = stabilizer_analysis(&g);
        let v = a
            .ekr_verdicts(SearchBudget::default())
            .map_err(|e| e.to_string())?;
        ensure(v.method == Method::RegularNormal && v.ekr_module, || {
            format!("degree {degree}: {:?}/{}", v.method, v.ekr_module)
        })?;
    }
    Ok("F20 on 5 and S4 on 4: regular-normal shortcut fires, exhaustive module true".into())
}

fn nilpotent_class_at_most_two(elems: &[Permutation]) -> bool {
    let centre: Vec<&Permutation> = elems
        .iter()
        .filter(|z| elems.iter().all(|x| x.mul(z) == z.mul(x)))
        .collect();
    elems.iter().all(|a| {
        elems.iter().all(|b| {
            let comm = a.inverse().mul(&b.inverse()).mul(a).mul(b);
            centre.contains(&&comm)
        })
    })
}

fn criterion_8() -> Outcome {
    // subgroup classes: Q8 6, D4 8, Heisenberg(3) 11
    let cases = [
        (named::quaternion8().unwrap(), 6),
        (named::dihedral(8).unwrap(), 8),
        (named::heisenberg(3).unwrap(), 11),
    ];
    let mut total = 0;
    for (g, classes) in cases {
        ensure(
            nilpotent_class_at_most_two(&closure(g.generators())),
            || "group is not of class ≤ 2".into(),
        )?;
        let table = g.elements(1000).unwrap();
        let subs = subgroup_class_representatives(&g, 1000).unwrap();
        ensure(subs.len() == classes, || {
            format!("order {}: {} subgroup classes", g.order(), subs.len())
        })?;
        for s in subs {
            let h = table.subgroup_spec(&g, &s);
            let a = ActionAnalysis::new(&g, &h, AnalysisBudget::default()).unwrap();
            let v = a
                .ekr_verdicts(SearchBudget::default())
                .map_err(|e| e.to_string())?;
            ensure(v.method == Method::Nilpotent && v.ekr_module, || {
                format!("order {} |H|={}: {:?}", g.order(), h.order(), v.method)
            })?;
            total += 1;
        }
    }
    Ok(format!("Q8, D4, Heisenberg(3): nilpotent shortcut and exhaustive module true on all {total} actions"))
}

fn criterion_9() -> Outcome {
    let t = named::symmetric(3).unwrap();
    let r = rank3_wreath_suite(&t, AnalysisBudget::default()).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.max_size == 8 && r.num_max_sets > 0, || {
        format!("suite report {r:?}")
    })?;
    let g = wreath_product_s2(&t).unwrap();
    let elems = closure(g.generators());
    let stab: Vec<&Permutation> = elems.iter().filter(|x| x.image(0) == 0).collect();
    let mut seen = [false; 9];
    let mut orbits = 0;
    for x in 0..9 {
        if !seen[x] {
            orbits += 1;
            stab.iter().for_each(|s| seen[s.image(x)] = true);
        }
    }
    ensure(elems.len() == 72 && orbits == 3, || {
        format!("|G|={} rank {orbits}", elems.len())
    })?;
    let a = stabilizer_analysis(&g);
    let max = a
        .max_intersecting_sets_containing_identity(SearchBudget::default())
        .unwrap();
    ensure(
        max.sets
            .iter()
            .all(|s| a.span_membership_oracle(&s.elements).unwrap()),
        || "span oracle rejects a set".into(),
    )?;
    Ok(format!("S3≀S2 on 9 points: rank 3, {} maximum sets of size 8 decompose, 2-transitive sums hold, module true", r.num_max_sets))
}

/// All maximum cliques by plain Bron–Kerbosch with pivoting.
fn bron_kerbosch(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn go(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
            .unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        let (mut p, mut x) = (p, x);
        for v in candidates {
            r.push(v);
            go(
                adj,
                r,
                p.iter().copied().filter(|&w| adj[v][w]).collect(),
                x.iter().copied().filter(|&w| adj[v][w]).collect(),
                out,
            );
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    go(
        adj,
        &mut Vec::new(),
        (0..adj.len()).collect(),
        Vec::new(),
        &mut out,
    );
    let best = out.iter().map(Vec::len).max().unwrap_or(0);
    let mut maxima: Vec<Vec<usize>> = out
        .into_iter()
        .filter(|c| c.len() == best)
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    maxima.sort();
    maxima
}

/// Rank over Q of integer rows by fraction-free elimination.
fn integer_rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            for j in c + 1..cols {
                m[r][j] = (m[rank][c] * m[r][j] - m[r][c] * m[rank][j]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

fn criterion_10() -> Outcome {
    let mut parts = Vec::new();
    for (q, m) in [(3u64, 2u64), (5, 2), (5, 3), (7, 2)] {
        let g = build_peisert(q, m, None).map_err(|e| e.to_string())?;
        let n = g.order();
        let spectrum = g.spectrum();
        let k = (m * (q - 1)) as i64;
        let formula = vec![
            Eigenvalue {
                value: k,
                multiplicity: 1,
            },
            Eigenvalue {
                value: q as i64 - m as i64,
                multiplicity: m * (q - 1),
            },
            Eigenvalue {
                value: -(m as i64),
                multiplicity: q * q - 1 - m * (q - 1),
            },
        ];
        ensure(
            spectrum == formula && spectrum == predicted_spectrum(q, m),
            || format!("({q},{m}) spectrum {spectrum:?}"),
        )?;

        let adj: Vec<Vec<bool>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| x != y && g.adjacent(x as u32, y as u32))
                    .collect()
            })
            .collect();
        let dense = DMatrix::from_fn(n, n, |i, j| if adj[i][j] { 1.0 } else { 0.0 });
        let mut ev: Vec<f64> = SymmetricEigen::new(dense)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        let mut exact: Vec<f64> = formula
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value as f64, e.multiplicity as usize))
            .collect();
        exact.sort_by(f64::total_cmp);
        ensure(
            ev.iter()
                .zip(&exact)
                .all(|(a, b)| (a - b).abs() < NUMERIC_TOL),
            || format!("({q},{m}) numeric spectrum differs"),
        )?;

        let report = g
            .max_cliques(10_000, SearchBudget::default())
            .map_err(|e| e.to_string())?;
        let brute = bron_kerbosch(&adj);
        let lib: Vec<Vec<usize>> = report
            .cliques
            .iter()
            .map(|c| c.iter().map(|&v| v as usize).collect())
            .collect();
        ensure(report.max_clique_size == q as usize && lib == brute, || {
            format!("({q},{m}) cliques differ from Bron–Kerbosch")
        })?;
        ensure(g.delsarte_bound().unwrap() == q, || "Delsarte bound".into())?;

        let to_row = |c: &[usize]| -> Vec<i128> {
            let mut v = vec![0i128; n];
            c.iter().for_each(|&x| v[x] = 1);
            v
        };
        let canonical: Vec<Vec<i128>> = report
            .canonical
            .iter()
            .map(|c| to_row(&c.iter().map(|&v| v as usize).collect::<Vec<_>>()))
            .collect();
        let rank = integer_rank(&canonical);
        let expected_rank = (1 + m * (q - 1)) as usize;
        ensure(rank == expected_rank, || {
            format!("({q},{m}) canonical rank {rank}")
        })?;
        for c in &brute {
            let mut with = canonical.clone();
            with.push(to_row(c));
            ensure(integer_rank(&with) == rank, || {
                format!("({q},{m}) clique outside the canonical span")
            })?;
        }
        let span = g.ekr_module_check(&report);
        ensure(
            span.ekr_module && span.span_rank == expected_rank && report.eigenvector_property,
            || format!("({q},{m}) library span {span:?}"),
        )?;
        parts.push(format!("({q},{m}):{}×{q}", brute.len()));
    }
    Ok(format!(
        "Peisert spectra, cliques and spans agree {}",
        parts.join(" ")
    ))
}

fn criterion_11() -> Outcome {
    let a4 = named::alternating(4).unwrap();
    let a5 = named::alternating(5).unwrap();
    let s5 = named::symmetric(5).unwrap();
    let mut instances = vec![
        analysis(&a4, "(1,2)(3,4)"),
        analysis(&s5, "(1,2,3),(1,2),(4,5)"),
    ];
    instances.extend(
        a5_subgroups()
            .iter()
            .map(|h| ActionAnalysis::new(&a5, h, AnalysisBudget::default()).unwrap()),
    );
    let mut checked = 0;
    for a in &instances {
        if a.classes().group_order() > ORACLE_ORDER {
            continue;
        }
        for s in a
            .max_intersecting_sets_containing_identity(SearchBudget::default())
            .unwrap()
            .sets
        {
            let oracle = a.span_membership_oracle(&s.elements).unwrap();
            let criterion = a.character_criterion_failure(&s.elements).is_none();
            ensure(oracle == criterion, || {
                format!("disagreement on {:?}", a.cycles(&s.elements))
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "span oracle equals the character criterion on all {checked} maximum sets"
    ))
}

fn criterion_12() -> Outcome {
    for n in [4, 5] {
        let g = named::symmetric(n).unwrap();
        let a = stabilizer_analysis(&g);
        let v = a
            .ekr_verdicts(SearchBudget::default())
            .map_err(|e| e.to_string())?;
        ensure(v.strict_ekr && v.ekr_module, || {
            format!("S{n}: strict {}", v.strict_ekr)
        })?;
        let elems = closure(g.generators());
        let stabilizers: Vec<Vec<Permutation>> = (0..n)
            .map(|i| elems.iter().filter(|x| x.image(i) == i).cloned().collect())
            .collect();
        let max = a
            .max_intersecting_sets_containing_identity(SearchBudget::default())
            .unwrap();
        ensure(max.sets.len() == n, || {
            format!("S{n}: {} maximum sets", max.sets.len())
        })?;
        for s in &max.sets {
            let mut e = elements_of(&a, &s.elements);
            e.sort();
            ensure(stabilizers.contains(&e), || {
                format!("S{n}: a maximum set is not a point stabilizer")
            })?;
        }
    }
    Ok("S4, S5 natural: every maximum set containing 1 is a point stabilizer".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("character table of A5", criterion_1),
        ("A4 on cosets of Z2", criterion_2),
        ("S5 on cosets of D12", criterion_3),
        ("A5 certificates f1 f2 f3", criterion_4),
        ("A5 module for every subgroup", criterion_5),
        ("2-transitive ideal dimensions", criterion_6),
        ("regular normal subgroup shortcut", criterion_7),
        ("nilpotency class 2 shortcut", criterion_8),
        ("rank 3 wreath suite", criterion_9),
        ("Peisert-type graphs", criterion_10),
        ("oracle equivalence", criterion_11),
        ("strict EKR for symmetric groups", criterion_12),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL [{:>2}] {name}: {reason}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
