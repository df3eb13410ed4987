//! Worked-example fixtures, run as the `paper` suite: each one recomputed and compared
//! with its expected value.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::action::CosetAction;
use crate::chartable::{char_sum, ideal_dimension, CharacterTable};
use crate::clique::SearchBudget;
use crate::cyclotomic::{rational, Cyclotomic};
use crate::ekr::{
    rank3_wreath_suite, verify_regular_subset, ActionAnalysis, AnalysisBudget, Method,
};
use crate::error::{Error, Result};
use crate::group::{named, subgroup_class_representatives, PermGroup, SubgroupSpec};
use crate::job::parse_group;
use crate::peisert::{build_peisert, peisert_report, predicted_spectrum};
use crate::perm::{parse_generators, Permutation};
use crate::spectral::{search_certificate, verify_certificate, CompatibleClassFunction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub fixtures: Vec<FixtureResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn lines(&self) -> Vec<String> {
        self.fixtures
            .iter()
            .map(|f| {
                let status = if f.passed { "PASS" } else { "FAIL" };
                format!(
                    "{status} {:<28} expected {} | computed {}",
                    f.name, f.expected, f.computed
                )
            })
            .collect()
    }
}

type Fixture = (&'static str, fn() -> Result<(String, String)>);

fn fixture(name: &str, run: fn() -> Result<(String, String)>) -> FixtureResult {
    let (expected, computed) = match run() {
        Ok(pair) => pair,
        Err(e) => ("<no error>".into(), format!("error: {e}")),
    };
    FixtureResult {
        name: name.into(),
        passed: expected == computed,
        expected,
        computed,
    }
}

fn pair(expected: impl Display, computed: impl Display) -> Result<(String, String)> {
    Ok((expected.to_string(), computed.to_string()))
}

fn perms(text: &str, degree: usize) -> Vec<Permutation> {
    parse_generators(text, Some(degree)).expect("fixture permutations parse")
}

fn analysis(group: &PermGroup, gens: &str) -> Result<ActionAnalysis> {
    let h = SubgroupSpec::new(group, &perms(gens, group.degree()))?;
    ActionAnalysis::new(group, &h, AnalysisBudget::default())
}

/// Indices in the faithful action of the subgroup generated by `gens`.
fn subgroup_indices(a: &ActionAnalysis, gens: &str) -> Result<Vec<usize>> {
    let g = a.original().group();
    let s = SubgroupSpec::new(g, &perms(gens, g.degree()))?;
    let mut idx = a.indices_of(
        s.group()
            .elements(AnalysisBudget::default().element_limit)?
            .elements(),
    )?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

/// Rows of the character table of `A₅` as printed, with columns `1, C₁, …, C₄`.
pub fn table_one() -> Vec<Vec<Cyclotomic>> {
    let half = |a: i64, b: i64| {
        (Cyclotomic::from_int(a) + Cyclotomic::sqrt_int(5).scale(&rational(b, 1)))
            .scale(&rational(1, 2))
    };
    let i = Cyclotomic::from_int;
    vec![
        vec![i(1), i(1), i(1), i(1), i(1)],
        vec![i(3), i(-1), i(0), half(1, 1), half(1, -1)],
        vec![i(3), i(-1), i(0), half(1, -1), half(1, 1)],
        vec![i(4), i(0), i(1), i(-1), i(-1)],
        vec![i(5), i(1), i(-1), i(0), i(0)],
    ]
}

/// Class representatives of the printed columns.
pub const TABLE_ONE_CLASSES: [&str; 5] =
    ["()", "(1,2)(3,4)", "(1,2,3)", "(1,2,3,4,5)", "(1,3,5,2,4)"];

/// For each computed irreducible of `A₅`, its row number `ρ_k` (1-based) in the printed table.
pub fn table_one_labels(table: &CharacterTable) -> Result<Vec<usize>> {
    let classes = table.classes();
    let cols: Vec<usize> = TABLE_ONE_CLASSES
        .iter()
        .map(|s| {
            let p = if *s == "()" {
                Permutation::identity(5)
            } else {
                perms(s, 5).remove(0)
            };
            classes
                .class_index(&p)
                .ok_or_else(|| Error::Defect(format!("{s} not in A5")))
        })
        .collect::<Result<_>>()?;
    let printed = table_one();
    table
        .irreducibles()
        .iter()
        .map(|chi| {
            let row: Vec<Cyclotomic> = cols.iter().map(|&c| chi.values[c].clone()).collect();
            printed
                .iter()
                .position(|r| *r == row)
                .map(|k| k + 1)
                .ok_or_else(|| Error::Defect(format!("row {row:?} is not in the printed table")))
        })
        .collect()
}

fn label_set(labels: &[usize], chars: &[usize]) -> String {
    let mut ks: Vec<usize> = chars.iter().map(|&c| labels[c]).collect();
    ks.sort_unstable();
    let names: Vec<String> = ks.iter().map(|k| format!("ρ{k}")).collect();
    format!("{{{}}}", names.join(","))
}

fn fixture_table_one() -> Result<(String, String)> {
    let a5 = named::alternating(5)?;
    let classes = std::sync::Arc::new(crate::group::ConjugacyClasses::compute(&a5, 1000)?);
    let table = CharacterTable::compute(classes)?;
    let mut labels = table_one_labels(&table)?;
    labels.sort_unstable();
    pair(
        "rows ρ1..ρ5 matched exactly",
        if labels == [1, 2, 3, 4, 5] {
            "rows ρ1..ρ5 matched exactly".to_string()
        } else {
            format!("{labels:?}")
        },
    )
}

fn fixture_a4() -> Result<(String, String)> {
    let a4 = named::alternating(4)?;
    let a = analysis(&a4, "(1,2)(3,4)")?;
    let v = a.ekr_verdicts(SearchBudget::default())?;
    let max = a.max_intersecting_sets_containing_identity(SearchBudget::default())?;
    let sylow = subgroup_indices(&a, "(1,2)(3,4),(1,3)(2,4)")?;
    let unique = max.sets.len() == 1 && max.sets[0].elements == sylow;
    pair(
        "max=4 ekr=false strict=false module=true unique=Sylow2",
        format!(
            "max={} ekr={} strict={} module={} unique={}",
            v.max_size,
            v.ekr,
            v.strict_ekr,
            v.ekr_module,
            if unique { "Sylow2" } else { "other" }
        ),
    )
}

fn s5_d12() -> Result<ActionAnalysis> {
    analysis(&named::symmetric(5)?, "(1,2,3),(1,2),(4,5)")
}

fn fixture_cex_verdict() -> Result<(String, String)> {
    let a = s5_d12()?;
    let v = a.ekr_verdicts(SearchBudget::default())?;
    let w = v.witnesses.iter().find(|w| w.property == "ekr_module");
    let sign = a.table().sign_character();
    let witness_is_sign = w
        .and_then(|w| w.character.as_ref())
        .map(|c| Some(c.index) == sign)
        .unwrap_or(false);
    pair(
        "ekr=true max=12 module=false witness=sign",
        format!(
            "ekr={} max={} module={} witness={}",
            v.ekr,
            v.max_size,
            v.ekr_module,
            if witness_is_sign { "sign" } else { "other" }
        ),
    )
}

fn fixture_cex_regular() -> Result<(String, String)> {
    let s5 = named::symmetric(5)?;
    let h = SubgroupSpec::new(&s5, &perms("(1,2,3),(1,2),(4,5)", 5))?;
    let action = CosetAction::new(&s5, &h, 1000)?;
    let c = perms("(1,2,3,4,5)", 5).remove(0);
    let t = perms("(2,3,5,4)", 5).remove(0);
    let r: Vec<Permutation> = (0..5).flat_map(|k| [c.pow(k), t.mul(&c.pow(k))]).collect();
    pair(true, verify_regular_subset(&action, &r)?)
}

fn fixture_cex_sign_sums() -> Result<(String, String)> {
    let a = s5_d12()?;
    let sign = a
        .table()
        .sign_character()
        .ok_or_else(|| Error::Defect("no sign character".into()))?;
    let chi = &a.table().irreducibles()[sign];
    let k = subgroup_indices(&a, "(1,2,3),(2,3,4)")?;
    let on_k = char_sum(chi, &a.classes().class_counts(&k));
    let canonical_zero = a
        .canonical_family()
        .iter()
        .all(|s| char_sum(chi, &a.classes().class_counts(s)).is_zero());
    let is_max = a.is_intersecting(&k) && k.len() == 12;
    pair(
        "K max intersecting, λ(K)=12, λ(canonical)=0",
        format!(
            "K {} intersecting, λ(K)={on_k}, λ(canonical){}",
            if is_max { "max" } else { "not max" },
            if canonical_zero { "=0" } else { "≠0" }
        ),
    )
}

fn fixture_cex_even_count() -> Result<(String, String)> {
    let a = s5_d12()?;
    let counts: std::collections::BTreeSet<usize> = a
        .canonical_family()
        .iter()
        .map(|s| s.iter().filter(|&&g| a.element(g).is_even()).count())
        .collect();
    let shown: Vec<String> = counts.iter().map(ToString::to_string).collect();
    pair("6", shown.join(","))
}

fn certificate_line(
    a: &ActionAnalysis,
    weights: &[(&str, (i64, i64))],
    set: &str,
) -> Result<String> {
    let entries: Vec<(Permutation, crate::cyclotomic::Rational)> = weights
        .iter()
        .map(|(p, (n, d))| (perms(p, 5).remove(0), rational(*n, *d)))
        .collect();
    let f = CompatibleClassFunction::from_representatives(a, &entries)?;
    let cert = verify_certificate(a, &f, &subgroup_indices(a, set)?)?;
    let labels = table_one_labels(a.table())?;
    Ok(format!(
        "d={} τ={} bound={} tight={}",
        cert.d,
        cert.tau,
        cert.bound,
        label_set(&labels, &cert.tight_characters)
    ))
}

fn fixture_f1() -> Result<(String, String)> {
    let a = analysis(&named::alternating(5)?, "(1,2,3,4,5)")?;
    let line = certificate_line(
        &a,
        &[("(1,2)(3,4)", (1, 1)), ("(1,2,3)", (2, 1))],
        "(1,2,3,4,5)",
    )?;
    pair("d=55 τ=-5 bound=5 tight={ρ2,ρ3,ρ5}", line)
}

fn fixture_f2() -> Result<(String, String)> {
    let a = analysis(&named::alternating(5)?, "(1,2)(3,4),(1,3)(2,4)")?;
    let line = certificate_line(
        &a,
        &[
            ("(1,2,3)", (1, 1)),
            ("(1,2,3,4,5)", (3, 2)),
            ("(1,3,5,2,4)", (3, 2)),
        ],
        "(1,2)(3,4),(1,3)(2,4)",
    )?;
    pair("d=56 τ=-4 bound=4 tight={ρ4,ρ5}", line)
}

fn fixture_f3() -> Result<(String, String)> {
    let a = analysis(&named::alternating(5)?, "(1,2,3),(1,2)(4,5)")?;
    let line = certificate_line(
        &a,
        &[("(1,2,3,4,5)", (1, 1)), ("(1,3,5,2,4)", (1, 1))],
        "(1,2,3),(2,3,4)",
    )?;
    pair("d=24 τ=-6 bound=12 tight={ρ4}", line)
}

fn fixture_search() -> Result<(String, String)> {
    let a5 = named::alternating(5)?;
    let z5 = search_certificate(&analysis(&a5, "(1,2,3,4,5)")?, 5)?;
    let s3 = search_certificate(&analysis(&a5, "(1,2,3),(1,2)(4,5)")?, 12)?;
    pair(
        "Z5 bound 5, S3 bound 12",
        format!("Z5 bound {}, S3 bound {}", z5.bound, s3.bound),
    )
}

fn fixture_a5_group_level() -> Result<(String, String)> {
    let a5 = named::alternating(5)?;
    let table = a5.elements(1000)?;
    let mut out = Vec::new();
    for sub in subgroup_class_representatives(&a5, 1000)? {
        if sub.len() == 1 || sub.len() == 60 {
            continue;
        }
        let h = table.subgroup_spec(&a5, &sub);
        let v = ActionAnalysis::new(&a5, &h, AnalysisBudget::default())?
            .ekr_verdicts(SearchBudget::default())?;
        out.push(format!("{}:{}", sub.len(), v.ekr_module));
    }
    pair(
        "2:true 3:true 4:true 5:true 6:true 10:true 12:true",
        out.join(" "),
    )
}

fn fixture_ideal_dimensions() -> Result<(String, String)> {
    let mut out = Vec::new();
    for spec in ["symmetric:4", "symmetric:5", "alternating:5"] {
        let g = parse_group(spec)?;
        let h = SubgroupSpec::new(&g, g.point_stabilizer(0)?.generators())?;
        let a = ActionAnalysis::new(&g, &h, AnalysisBudget::default())?;
        out.push(ideal_dimension(a.table(), a.action().subgroup_indices()).to_string());
    }
    pair("10 17 17", out.join(" "))
}

fn shortcut_and_exhaustive(spec: &str, sub: &str) -> Result<String> {
    let g = parse_group(spec)?;
    let h = crate::job::parse_subgroup(&g, sub)?;
    let v = ActionAnalysis::new(&g, &h, AnalysisBudget::default())?
        .ekr_verdicts(SearchBudget::default())?;
    Ok(format!("{:?}/{}", v.method, v.ekr_module))
}

fn fixture_regular_normal() -> Result<(String, String)> {
    let f20 = shortcut_and_exhaustive("agl1:5", "stab:1")?;
    let s4 = shortcut_and_exhaustive("symmetric:4", "stab:1")?;
    pair(
        "RegularNormal/true RegularNormal/true",
        format!("{f20} {s4}"),
    )
}

fn fixture_nilpotent() -> Result<(String, String)> {
    let mut out = Vec::new();
    for spec in ["quaternion:8", "dihedral:8", "heisenberg:3"] {
        let g = parse_group(spec)?;
        let table = g.elements(1000)?;
        let mut all = true;
        for sub in subgroup_class_representatives(&g, 1000)? {
            let h = table.subgroup_spec(&g, &sub);
            let v = ActionAnalysis::new(&g, &h, AnalysisBudget::default())?
                .ekr_verdicts(SearchBudget::default())?;
            all &= v.method == Method::Nilpotent && v.ekr_module;
        }
        out.push(format!("{spec}:{all}"));
    }
    pair(
        "quaternion:8:true dihedral:8:true heisenberg:3:true",
        out.join(" "),
    )
}

fn fixture_wreath() -> Result<(String, String)> {
    let r = rank3_wreath_suite(&named::symmetric(3)?, AnalysisBudget::default())?;
    pair(
        "rank 3, |S|=8, decomposition, 2-transitive sums, module",
        format!(
            "rank {}, |S|={}{}{}{}",
            r.rank,
            r.max_size,
            if r.decompositions_hold && r.components_maximum {
                ", decomposition"
            } else {
                ", no decomposition"
            },
            if r.character_sums_hold {
                ", 2-transitive sums"
            } else {
                ", sums differ"
            },
            if r.ekr_module {
                ", module"
            } else {
                ", not module"
            }
        ),
    )
}

fn fixture_peisert() -> Result<(String, String)> {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for (q, m) in [(3u64, 2u64), (5, 2), (5, 3), (7, 2)] {
        let g = build_peisert(q, m, None)?;
        let r = peisert_report(&g, 10_000, 200, SearchBudget::default())?;
        let numeric_ok = r.numeric_max_deviation.is_some_and(|d| d < 1e-9);
        expected.push(format!(
            "({q},{m}) clique {q} span {} module",
            1 + m * (q - 1)
        ));
        computed.push(format!(
            "({q},{m}) clique {} span {}{}",
            r.max_clique_size,
            r.span_rank,
            if r.ekr_module
                && r.eigenvector_property
                && r.spectrum == predicted_spectrum(q, m)
                && numeric_ok
            {
                " module"
            } else {
                " FAILED CHECK"
            }
        ));
    }
    pair(expected.join("; "), computed.join("; "))
}

fn fixture_oracle() -> Result<(String, String)> {
    let a4 = named::alternating(4)?;
    let a5 = named::alternating(5)?;
    let mut instances = vec![analysis(&a4, "(1,2)(3,4)")?, s5_d12()?];
    let table = a5.elements(1000)?;
    for sub in subgroup_class_representatives(&a5, 1000)? {
        if sub.len() > 1 && sub.len() < 60 {
            instances.push(ActionAnalysis::new(
                &a5,
                &table.subgroup_spec(&a5, &sub),
                AnalysisBudget::default(),
            )?);
        }
    }
    let mut checked = 0;
    let mut disagreements = 0;
    for a in &instances {
        for s in a
            .max_intersecting_sets_containing_identity(SearchBudget::default())?
            .sets
        {
            checked += 1;
            if a.span_membership_oracle(&s.elements)?
                != a.character_criterion_failure(&s.elements).is_none()
            {
                disagreements += 1;
            }
        }
    }
    pair(
        format!("{checked} sets agree"),
        format!("{} sets agree", checked - disagreements),
    )
}

fn fixture_strict() -> Result<(String, String)> {
    let mut out = Vec::new();
    for n in [4, 5] {
        let g = named::symmetric(n)?;
        let h = SubgroupSpec::new(&g, g.point_stabilizer(0)?.generators())?;
        let v = ActionAnalysis::new(&g, &h, AnalysisBudget::default())?
            .ekr_verdicts(SearchBudget::default())?;
        out.push(format!("S{n}:{}", v.strict_ekr));
    }
    pair("S4:true S5:true", out.join(" "))
}

const FIXTURES: &[Fixture] = &[
    ("table-1", fixture_table_one),
    ("a4-on-cosets-of-z2", fixture_a4),
    ("s5-d12-verdict", fixture_cex_verdict),
    ("s5-d12-regular-subset", fixture_cex_regular),
    ("s5-d12-sign-sums", fixture_cex_sign_sums),
    ("s5-d12-even-count", fixture_cex_even_count),
    ("a5-certificate-f1", fixture_f1),
    ("a5-certificate-f2", fixture_f2),
    ("a5-certificate-f3", fixture_f3),
    ("a5-certificate-search", fixture_search),
    ("a5-module-all-subgroups", fixture_a5_group_level),
    ("two-transitive-ideals", fixture_ideal_dimensions),
    ("regular-normal-shortcut", fixture_regular_normal),
    ("nilpotent-shortcut", fixture_nilpotent),
    ("wreath-rank-3", fixture_wreath),
    ("peisert", fixture_peisert),
    ("oracle-equivalence", fixture_oracle),
    ("strict-ekr-symmetric", fixture_strict),
];

fn injected() -> Result<(String, String)> {
    pair("max=5", "max=4")
}

/// Runs a named suite; `inject_failure` appends a fixture that must fail.
pub fn reproduce(suite: &str, inject_failure: bool) -> Result<SuiteReport> {
    if suite != "paper" {
        return Err(Error::UnknownSuite(suite.into()));
    }
    let mut fixtures: Vec<FixtureResult> = FIXTURES
        .iter()
        .map(|&(name, run)| fixture(name, run))
        .collect();
    if inject_failure {
        fixtures.push(fixture("injected-wrong-fixture", injected));
    }
    let passed = fixtures.iter().all(|f| f.passed);
    Ok(SuiteReport {
        suite: suite.into(),
        fixtures,
        passed,
    })
}
