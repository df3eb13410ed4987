//! Job specifications, the group and subgroup input grammar, and JSON reports.
//!
//! Group specs: `symmetric:n`, `alternating:n`, `cyclic:n`, `dihedral:2m`, `quaternion:8`,
//! `heisenberg:p`, `agl1:p`, `wreath_s2:<group spec>`, or explicit generators
//! such as `(1,2,3),(1,2)`.
//!
//! Subgroup specs: generators, `stab:k` (stabilizer of the 1-based point `k`),
//! `trivial`, or `whole`.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::action::rank_and_primitivity;
use crate::clique::SearchBudget;
use crate::cyclotomic::Rational;
use crate::ekr::{ActionAnalysis, AnalysisBudget, Shortcut, Verdict};
use crate::error::{Error, Result};
use crate::group::{named, nilpotency_class, wreath_product_s2, PermGroup, SubgroupSpec};
use crate::perm::parse_generators;
use crate::spectral::{
    search_certificate, verify_certificate, Certificate, CompatibleClassFunction,
};

/// Environment variable overriding the default search node limit.
pub const NODE_LIMIT_VAR: &str = "EKRMOD_NODE_LIMIT";
/// Environment variable overriding the default element budget.
pub const ELEMENT_LIMIT_VAR: &str = "EKRMOD_ELEMENT_LIMIT";

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::OutOfRange(format!("{what}: `{s}` is not a positive integer")))
}

pub fn parse_group(spec: &str) -> Result<PermGroup> {
    let spec = spec.trim();
    if spec.starts_with('(') || spec.starts_with('[') {
        return PermGroup::from_generators(&parse_generators(spec, None)?);
    }
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "symmetric" | "S" => named::symmetric(parse_usize(arg, name)?),
        "alternating" | "A" => named::alternating(parse_usize(arg, name)?),
        "cyclic" | "C" | "Z" => named::cyclic(parse_usize(arg, name)?),
        "dihedral" | "D" => named::dihedral(parse_usize(arg, name)?),
        "quaternion" | "Q" => match arg {
            "" | "8" => named::quaternion8(),
            _ => Err(Error::OutOfRange(format!(
                "quaternion:{arg}; only order 8 is available"
            ))),
        },
        "heisenberg" => named::heisenberg(parse_usize(arg, name)?),
        "agl1" => named::agl1(parse_usize(arg, name)?),
        "wreath_s2" => wreath_product_s2(&parse_group(arg)?),
        _ => Err(Error::UnknownGroup(spec.to_string())),
    }
}

pub fn parse_subgroup(group: &PermGroup, spec: &str) -> Result<SubgroupSpec> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::NoGenerators);
    }
    match spec.split_once(':') {
        Some(("stab", k)) => {
            let k = parse_usize(k, "stab")?;
            if k == 0 || k > group.degree() {
                return Err(Error::OutOfRange(format!(
                    "stab:{k} on {} points",
                    group.degree()
                )));
            }
            let s = group.point_stabilizer(k - 1)?;
            SubgroupSpec::new(group, s.generators())
        }
        _ => match spec {
            "trivial" => Ok(SubgroupSpec::trivial(group)),
            "whole" => Ok(SubgroupSpec::whole(group)),
            _ => SubgroupSpec::new(group, &parse_generators(spec, Some(group.degree()))?),
        },
    }
}

/// Class weights such as `(1,2)(3,4)=1; (1,2,3)=2`.
pub fn parse_weights(
    text: &str,
    degree: usize,
) -> Result<Vec<(crate::perm::Permutation, Rational)>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|entry| {
            let (perm, w) = entry.split_once('=').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected `permutation=weight` in `{entry}`"),
            })?;
            let w: Rational = w.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad rational weight `{}`", w.trim()),
            })?;
            Ok((crate::perm::parse_permutation(perm.trim(), degree)?, w))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Ekr,
    Strict,
    Module,
    Certificate,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Debug)]
pub struct Budgets {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    pub element_limit: u64,
    pub oracle_limit: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        let search = SearchBudget::default();
        let analysis = AnalysisBudget::default();
        Budgets {
            node_limit: search.node_limit,
            time_limit: None,
            element_limit: analysis.element_limit,
            oracle_limit: analysis.oracle_limit,
        }
    }
}

impl Budgets {
    /// Defaults with overrides from the environment.
    pub fn from_env() -> Result<Self> {
        let mut b = Budgets::default();
        let read = |var: &str| -> Result<Option<u64>> {
            match std::env::var(var) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&x| x > 0)
                    .map(Some)
                    .ok_or_else(|| {
                        Error::OutOfRange(format!("{var}={v} is not a positive integer"))
                    }),
                Err(_) => Ok(None),
            }
        };
        if let Some(n) = read(NODE_LIMIT_VAR)? {
            b.node_limit = n;
        }
        if let Some(n) = read(ELEMENT_LIMIT_VAR)? {
            b.element_limit = n;
        }
        Ok(b)
    }

    pub fn search(&self) -> SearchBudget {
        SearchBudget {
            node_limit: self.node_limit,
            time_limit: self.time_limit,
            parallel: true,
        }
    }

    pub fn analysis(&self) -> AnalysisBudget {
        AnalysisBudget {
            element_limit: self.element_limit,
            search: self.search(),
            oracle_limit: self.oracle_limit,
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub group: String,
    pub subgroup: String,
    pub checks: Vec<Check>,
    pub budgets: Budgets,
    /// Class weights to verify instead of searching for a certificate.
    pub weights: Option<String>,
    /// Generators of the intersecting set a certificate is checked against; defaults to `H`.
    pub certificate_set: Option<String>,
    pub target: Option<u64>,
    pub format: OutputFormat,
}

impl JobSpec {
    pub fn new(group: &str, subgroup: &str) -> Self {
        JobSpec {
            group: group.into(),
            subgroup: subgroup.into(),
            checks: vec![Check::All],
            budgets: Budgets::default(),
            weights: None,
            certificate_set: None,
            target: None,
            format: OutputFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(Error::OutOfRange("at least one check is required".into()));
        }
        if self.budgets.node_limit == 0
            || self.budgets.element_limit == 0
            || self.budgets.oracle_limit == 0
        {
            return Err(Error::OutOfRange("budgets must be positive".into()));
        }
        if self.subgroup.trim().is_empty() {
            return Err(Error::NoGenerators);
        }
        Ok(())
    }

    fn wants(&self, c: Check) -> bool {
        self.checks.contains(&Check::All) || self.checks.contains(&c)
    }

    fn wants_verdict(&self) -> bool {
        [Check::Ekr, Check::Strict, Check::Module]
            .iter()
            .any(|&c| self.wants(c))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Structure {
    pub group_order: u64,
    pub subgroup_order: u64,
    pub degree: usize,
    pub kernel_order: u64,
    pub rank: usize,
    pub primitive: bool,
    pub two_transitive: bool,
    pub nilpotency_class: Option<usize>,
    pub derangement_classes: usize,
    pub shortcut: Option<Shortcut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateOutcome {
    pub target: u64,
    pub searched: bool,
    pub certificate: Option<Certificate>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
    pub search_nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub group: String,
    pub subgroup: String,
    pub checks: Vec<Check>,
    pub structure: Structure,
    pub verdict: Option<Verdict>,
    pub certificate: Option<CertificateOutcome>,
    /// False when a budget stopped the analysis; `aborted` then names it.
    pub exhaustive: bool,
    pub aborted: Option<String>,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let s = &self.structure;
        let mut out = String::new();
        let _ = writeln!(out, "group      {} (order {})", self.group, s.group_order);
        let _ = writeln!(
            out,
            "subgroup   {} (order {})",
            self.subgroup, s.subgroup_order
        );
        let _ = writeln!(
            out,
            "degree     {}  kernel {}  rank {}  primitive {}",
            s.degree, s.kernel_order, s.rank, s.primitive
        );
        if let Some(sc) = &s.shortcut {
            let _ = writeln!(out, "shortcut   {:?}: {}", sc.method, sc.witness);
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(
                out,
                "max size   {} (|H| = {})",
                v.max_size, v.subgroup_order
            );
            let _ = writeln!(out, "ekr        {}", v.ekr);
            let _ = writeln!(out, "strict     {}", v.strict_ekr);
            let _ = writeln!(out, "module     {}", v.ekr_module);
            for w in &v.witnesses {
                let ch = w.character.as_ref().map_or(String::new(), |c| {
                    format!(" via χ of degree {} with sum {}", c.degree, c.sum)
                });
                let _ = writeln!(
                    out,
                    "witness    {} fails on {{{}}}{ch}",
                    w.property,
                    w.set.join(", ")
                );
            }
        }
        if let Some(c) = &self.certificate {
            match &c.certificate {
                Some(cert) => {
                    let ws: Vec<String> = cert
                        .weights
                        .iter()
                        .map(|w| format!("{}={}", w.representative, w.weight))
                        .collect();
                    let _ = writeln!(
                        out,
                        "certificate bound {} with d = {}, τ = {}: {}",
                        cert.bound,
                        cert.d,
                        cert.tau,
                        ws.join("; ")
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "certificate none for target {}: {}",
                        c.target,
                        c.reason.as_deref().unwrap_or("")
                    );
                }
            }
        }
        if let Some(a) = &self.aborted {
            let _ = writeln!(out, "ABORTED    {a}");
        }
        out
    }
}

pub fn run_job(job: &JobSpec) -> Result<Report> {
    job.validate()?;
    let start = Instant::now();
    let group = parse_group(&job.group)?;
    let subgroup = parse_subgroup(&group, &job.subgroup)?;
    let budgets = &job.budgets;
    let analysis = ActionAnalysis::new(&group, &subgroup, budgets.analysis())?;
    let rank = rank_and_primitivity(analysis.action());
    let shortcut = analysis.shortcut()?;
    let structure = Structure {
        group_order: group.order(),
        subgroup_order: subgroup.order(),
        degree: analysis.original().degree(),
        kernel_order: analysis.kernel_order(),
        rank: rank.rank,
        primitive: rank.primitive,
        two_transitive: rank.two_transitive,
        nilpotency_class: nilpotency_class(&group, budgets.element_limit)?,
        derangement_classes: analysis.derangement_classes().len(),
        shortcut,
    };

    let mut aborted = None;
    let mut nodes = 0;
    let verdict = if job.wants_verdict() {
        match analysis.ekr_verdicts_counted(budgets.search()) {
            Ok((v, n)) => {
                nodes = n;
                Some(v)
            }
            Err(e @ Error::Budget { .. }) => {
                aborted = Some(e.to_string());
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let certificate = if job.wants(Check::Certificate) {
        Some(certificate_outcome(
            job,
            &group,
            &analysis,
            verdict.as_ref(),
        )?)
    } else {
        None
    };

    Ok(Report {
        group: job.group.clone(),
        subgroup: job.subgroup.clone(),
        checks: job.checks.clone(),
        structure,
        verdict,
        certificate,
        exhaustive: aborted.is_none(),
        aborted,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            search_nodes: nodes,
        },
    })
}

fn certificate_outcome(
    job: &JobSpec,
    group: &PermGroup,
    analysis: &ActionAnalysis,
    verdict: Option<&Verdict>,
) -> Result<CertificateOutcome> {
    let k = analysis.kernel_order();
    let default_target = || -> Result<u64> {
        Ok(match verdict {
            Some(v) => v.max_size / k,
            None => {
                let max =
                    analysis.max_intersecting_sets_containing_identity(job.budgets.search())?;
                if max.exhaustive {
                    max.size as u64
                } else {
                    analysis.action().subgroup().order()
                }
            }
        })
    };
    let outcome = |target, searched, res: Result<Certificate>| CertificateOutcome {
        target,
        searched,
        reason: res.as_ref().err().map(ToString::to_string),
        certificate: res.ok(),
    };
    match &job.weights {
        Some(w) => {
            let f = CompatibleClassFunction::from_representatives(
                analysis,
                &parse_weights(w, group.degree())?,
            )?;
            let set = match &job.certificate_set {
                Some(s) => SubgroupSpec::new(group, &parse_generators(s, Some(group.degree()))?)?,
                None => parse_subgroup(group, &job.subgroup)?,
            };
            let idx =
                analysis.indices_of(set.group().elements(job.budgets.element_limit)?.elements())?;
            let mut idx = idx;
            idx.sort_unstable();
            idx.dedup();
            let target = idx.len() as u64;
            Ok(outcome(
                target,
                false,
                verify_certificate(analysis, &f, &idx),
            ))
        }
        None => {
            let target = match job.target {
                Some(t) => t,
                None => default_target()?,
            };
            Ok(outcome(target, true, search_certificate(analysis, target)))
        }
    }
}
