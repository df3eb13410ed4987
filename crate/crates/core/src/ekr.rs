//! Maximum intersecting sets and the EKR, strict-EKR and EKR-module verdicts.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::action::{
    kernel_reduce, rank_and_primitivity, regular_normal_subgroup, CosetAction, RankInfo,
};
use crate::chartable::{char_sum, vanishing_and_support_sets, CharacterTable};
use crate::clique::{adjacency_from_fn, maximum_cliques, SearchBudget};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{
    nilpotency_class, wreath_decompose, wreath_product_s2, ConjugacyClasses, PermGroup,
    SubgroupSpec,
};
use crate::linalg::{indicator, RowSpace};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug)]
pub struct AnalysisBudget {
    /// Largest group whose elements are enumerated.
    pub element_limit: u64,
    pub search: SearchBudget,
    /// Largest group for which the dense span oracle runs.
    pub oracle_limit: u64,
}

impl Default for AnalysisBudget {
    fn default() -> Self {
        AnalysisBudget {
            element_limit: 20_000,
            search: SearchBudget::default(),
            oracle_limit: 400,
        }
    }
}

/// A set of group elements, as sorted indices into the element table of the faithful action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntersectingSet {
    pub elements: Vec<usize>,
}

impl IntersectingSet {
    pub fn new(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IntersectingSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_identity(&self) -> bool {
        self.elements.first() == Some(&0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "shortcut:regular-normal")]
    RegularNormal,
    #[serde(rename = "shortcut:nilpotent-class≤2")]
    Nilpotent,
    #[serde(rename = "shortcut:2-transitive")]
    TwoTransitive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Shortcut {
    pub method: Method,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterWitness {
    pub index: usize,
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
    pub sum: Cyclotomic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub property: String,
    pub set: Vec<String>,
    pub character: Option<CharacterWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    /// Maximum intersecting set size in the original group.
    pub max_size: u64,
    pub subgroup_order: u64,
    pub ekr: bool,
    pub strict_ekr: bool,
    pub ekr_module: bool,
    pub method: Method,
    pub shortcut: Option<Shortcut>,
    pub witnesses: Vec<Witness>,
    pub num_max_sets_containing_identity: usize,
    pub kernel_order: u64,
}

/// The sets `aH^b`: conjugates of `H` with all their left cosets.
#[derive(Clone, Debug)]
pub struct CanonicalFamily {
    pub conjugates: Vec<Vec<usize>>,
    /// `cosets[i]` lists the left cosets of `conjugates[i]`.
    pub cosets: Vec<Vec<Vec<usize>>>,
}

impl CanonicalFamily {
    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cosets.iter().flatten()
    }
}

#[derive(Clone, Debug)]
pub struct MaxSets {
    pub size: usize,
    pub sets: Vec<IntersectingSet>,
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Everything derived from one action, computed on its faithful quotient.
#[derive(Debug)]
pub struct ActionAnalysis {
    original: CosetAction,
    action: CosetAction,
    kernel_order: u64,
    table: CharacterTable,
    fixer_union: Vec<usize>,
    is_fixer: Vec<bool>,
    vanishing: Vec<usize>,
    support: Vec<usize>,
    budget: AnalysisBudget,
    span: OnceLock<RowSpace>,
}

impl ActionAnalysis {
    pub fn new(group: &PermGroup, subgroup: &SubgroupSpec, budget: AnalysisBudget) -> Result<Self> {
        let original = CosetAction::new(group, subgroup, budget.element_limit)?;
        Self::from_action(original, budget)
    }

    pub fn from_action(original: CosetAction, budget: AnalysisBudget) -> Result<Self> {
        let reduced = kernel_reduce(&original)?;
        let action = reduced.action;
        let table = CharacterTable::compute(action.classes().clone())?;
        let fixer_union = action.fixer_union();
        let mut is_fixer = vec![false; action.table().len()];
        for &g in &fixer_union {
            is_fixer[g] = true;
        }
        let (vanishing, support) = vanishing_and_support_sets(&table, action.subgroup_indices());
        Ok(ActionAnalysis {
            original,
            action,
            kernel_order: reduced.kernel_order,
            table,
            fixer_union,
            is_fixer,
            vanishing,
            support,
            budget,
            span: OnceLock::new(),
        })
    }

    pub fn original(&self) -> &CosetAction {
        &self.original
    }

    /// The faithful action on which all verdicts are computed.
    pub fn action(&self) -> &CosetAction {
        &self.action
    }

    pub fn kernel_order(&self) -> u64 {
        self.kernel_order
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        self.action.classes()
    }

    pub fn fixer_union(&self) -> &[usize] {
        &self.fixer_union
    }

    pub fn derangement_classes(&self) -> Vec<usize> {
        self.action.derangement_classes()
    }

    /// `C`: irreducibles vanishing on `H`.
    pub fn vanishing(&self) -> &[usize] {
        &self.vanishing
    }

    /// `Y_H`: irreducibles not vanishing on `H`.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn rank(&self) -> RankInfo {
        rank_and_primitivity(&self.action)
    }

    pub fn is_intersecting(&self, set: &[usize]) -> bool {
        let t = self.action.table();
        set.iter()
            .all(|&s| set.iter().all(|&r| self.is_fixer[t.mul(s, t.inverse(r))]))
    }

    pub fn element(&self, i: usize) -> &Permutation {
        self.action.table().get(i)
    }

    pub fn cycles(&self, set: &[usize]) -> Vec<String> {
        set.iter()
            .map(|&i| self.element(i).to_cycle_string())
            .collect()
    }

    /// Indices in the faithful action of the given permutations of the original group.
    pub fn indices_of(&self, elements: &[Permutation]) -> Result<Vec<usize>> {
        let orig = self.original.table();
        elements
            .iter()
            .map(|g| {
                let i = orig
                    .index_of(g)
                    .ok_or_else(|| Error::NotASubgroup(g.to_cycle_string()))?;
                let image = self.original.point_permutation(i);
                if self.kernel_order == 1 {
                    Ok(i)
                } else {
                    Ok(self
                        .action
                        .table()
                        .index_of(&image)
                        .expect("image lies in the quotient"))
                }
            })
            .collect()
    }

    pub fn canonical_family(&self) -> CanonicalFamily {
        let t = self.action.table();
        let h = self.action.subgroup_indices();
        let mut conjugates: BTreeSet<Vec<usize>> = BTreeSet::new();
        for b in 0..t.len() {
            let bi = t.inverse(b);
            let mut c: Vec<usize> = h.iter().map(|&x| t.mul(t.mul(bi, x), b)).collect();
            c.sort_unstable();
            conjugates.insert(c);
        }
        let conjugates: Vec<Vec<usize>> = conjugates.into_iter().collect();
        let cosets = conjugates
            .iter()
            .map(|c| {
                let mut seen = vec![false; t.len()];
                let mut out = Vec::new();
                for a in 0..t.len() {
                    if seen[a] {
                        continue;
                    }
                    let mut coset: Vec<usize> = c.iter().map(|&x| t.mul(a, x)).collect();
                    coset.sort_unstable();
                    coset.iter().for_each(|&x| seen[x] = true);
                    out.push(coset);
                }
                out
            })
            .collect();
        CanonicalFamily { conjugates, cosets }
    }

    /// Upper bound on intersecting sets from the uniform weighting of derangements.
    fn hoffman_cap(&self) -> Option<usize> {
        let f = crate::spectral::CompatibleClassFunction::uniform(self).ok()?;
        let spectrum = crate::spectral::weighted_spectrum(self, &f);
        let bound = crate::spectral::ratio_bound(&spectrum, self.classes().group_order()).ok()?;
        bound.floor().ok()?.try_into().ok()
    }

    /// All maximum intersecting sets containing the identity.
    pub fn max_intersecting_sets_containing_identity(
        &self,
        budget: SearchBudget,
    ) -> Result<MaxSets> {
        let t = self.action.table();
        let vertices: Vec<usize> = self
            .fixer_union
            .iter()
            .copied()
            .filter(|&g| g != 0)
            .collect();
        let h = self.action.subgroup_indices().len();
        if vertices.is_empty() {
            return Ok(MaxSets {
                size: 1,
                sets: vec![IntersectingSet::new(vec![0])],
                exhaustive: true,
                nodes: 0,
            });
        }
        let adj = adjacency_from_fn(vertices.len(), |i, j| {
            self.is_fixer[t.mul(vertices[i], t.inverse(vertices[j]))]
        });
        let search = maximum_cliques(&adj, h.saturating_sub(1), budget);
        if let Some(cap) = self.hoffman_cap() {
            if search.max_size + 1 > cap {
                return Err(Error::Defect(format!(
                    "intersecting set of size {} exceeds the ratio bound {cap}",
                    search.max_size + 1
                )));
            }
        }
        let sets = search
            .cliques
            .iter()
            .map(|c| {
                let mut s: Vec<usize> = c.iter().map(|&i| vertices[i]).collect();
                s.push(0);
                IntersectingSet::new(s)
            })
            .collect();
        Ok(MaxSets {
            size: search.max_size + 1,
            sets,
            exhaustive: search.exhaustive,
            nodes: search.nodes,
        })
    }

    /// The first irreducible in `C` whose sum over `set` is nonzero.
    pub fn character_criterion_failure(&self, set: &[usize]) -> Option<(usize, Cyclotomic)> {
        let counts = self.classes().class_counts(set);
        self.vanishing.iter().find_map(|&chi| {
            let s = char_sum(&self.table.irreducibles()[chi], &counts);
            (!s.is_zero()).then_some((chi, s))
        })
    }

    fn span(&self) -> Result<&RowSpace> {
        let order = self.classes().group_order();
        if order > self.budget.oracle_limit {
            return Err(Error::Budget {
                what: "span oracle group order",
                limit: self.budget.oracle_limit,
            });
        }
        Ok(self.span.get_or_init(|| {
            let n = order as usize;
            let mut space = RowSpace::new();
            for set in self.canonical_family().iter() {
                space.insert(&indicator(n, set));
            }
            space
        }))
    }

    /// Dimension of the span of canonical vectors.
    pub fn canonical_span_rank(&self) -> Result<usize> {
        Ok(self.span()?.rank())
    }

    /// Whether `v_S` lies in the rational span of the canonical vectors.
    pub fn span_membership_oracle(&self, set: &[usize]) -> Result<bool> {
        let n = self.classes().group_order() as usize;
        Ok(self.span()?.contains(&indicator(n, set)))
    }

    pub fn shortcut(&self) -> Result<Option<Shortcut>> {
        let g = self.action.group();
        if let Some(c) = nilpotency_class(g, self.budget.element_limit)? {
            if c <= 2 {
                return Ok(Some(Shortcut {
                    method: Method::Nilpotent,
                    witness: format!("nilpotency class {c}"),
                }));
            }
        }
        if let Some(n) = regular_normal_subgroup(&self.action)? {
            let gens: Vec<String> = n.generators().iter().map(|g| g.to_cycle_string()).collect();
            return Ok(Some(Shortcut {
                method: Method::RegularNormal,
                witness: format!(
                    "regular normal subgroup of order {} generated by {}",
                    n.order(),
                    gens.join(", ")
                ),
            }));
        }
        if self.rank().two_transitive {
            return Ok(Some(Shortcut {
                method: Method::TwoTransitive,
                witness: "rank 2".into(),
            }));
        }
        Ok(None)
    }

    pub fn ekr_verdicts(&self, budget: SearchBudget) -> Result<Verdict> {
        self.ekr_verdicts_counted(budget).map(|(v, _)| v)
    }

    /// The verdict with the number of search nodes visited, which varies between parallel runs.
    pub fn ekr_verdicts_counted(&self, budget: SearchBudget) -> Result<(Verdict, u64)> {
        let max = self.max_intersecting_sets_containing_identity(budget)?;
        if !max.exhaustive {
            return Err(Error::Budget {
                what: "search node",
                limit: budget.node_limit,
            });
        }
        let h = self.action.subgroup_indices().len();
        let family = self.canonical_family();
        let mut witnesses = Vec::new();

        let ekr = max.size <= h;
        if !ekr {
            witnesses.push(Witness {
                property: "ekr".into(),
                set: self.cycles(&max.sets[0].elements),
                character: None,
            });
        }
        let non_canonical = max
            .sets
            .iter()
            .find(|s| family.conjugates.binary_search(&s.elements).is_err());
        let strict_ekr = ekr && non_canonical.is_none();
        if let Some(s) = non_canonical {
            witnesses.push(Witness {
                property: "strict_ekr".into(),
                set: self.cycles(&s.elements),
                character: None,
            });
        }
        let failure = max.sets.iter().find_map(|s| {
            self.character_criterion_failure(&s.elements)
                .map(|(chi, sum)| (s, chi, sum))
        });
        let ekr_module = failure.is_none();
        if let Some((s, chi, sum)) = failure {
            witnesses.push(Witness {
                property: "ekr_module".into(),
                set: self.cycles(&s.elements),
                character: Some(CharacterWitness {
                    index: chi,
                    degree: self.table.degrees()[chi],
                    values: self.table.irreducibles()[chi].values.clone(),
                    sum,
                }),
            });
        }
        let shortcut = self.shortcut()?;
        if shortcut.is_some() && !ekr_module {
            return Err(Error::Defect(
                "structural shortcut contradicts the exhaustive module verdict".into(),
            ));
        }
        if strict_ekr && !ekr_module {
            return Err(Error::Defect(
                "strict-EKR holds but the module property fails".into(),
            ));
        }
        let k = self.kernel_order;
        let verdict = Verdict {
            max_size: max.size as u64 * k,
            subgroup_order: h as u64 * k,
            ekr,
            strict_ekr,
            ekr_module,
            method: shortcut.as_ref().map_or(Method::Exhaustive, |s| s.method),
            shortcut,
            witnesses,
            num_max_sets_containing_identity: max.sets.len(),
            kernel_order: k,
        };
        Ok((verdict, max.nodes))
    }
}

/// Whether each ordered pair of points is joined by exactly one element of `r`.
pub fn verify_regular_subset(action: &CosetAction, r: &[Permutation]) -> Result<bool> {
    if r.len() != action.degree() {
        return Err(Error::SizeMismatch {
            expected: action.degree(),
            found: r.len(),
        });
    }
    let t = action.table();
    let idx = r
        .iter()
        .map(|g| {
            t.index_of(g)
                .ok_or_else(|| Error::NotASubgroup(g.to_cycle_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..action.degree()).all(|alpha| {
        let images: BTreeSet<usize> = idx.iter().map(|&g| action.act(g, alpha)).collect();
        images.len() == action.degree()
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rank3Report {
    pub inner_degree: usize,
    pub degree: usize,
    pub group_order: u64,
    pub rank: usize,
    pub primitive: bool,
    pub max_size: usize,
    pub expected_size: usize,
    pub num_max_sets: usize,
    pub all_sizes_match: bool,
    pub decompositions_hold: bool,
    pub components_maximum: bool,
    pub character_sums_hold: bool,
    pub ekr_module: bool,
    pub failures: Vec<String>,
}

impl Rank3Report {
    pub fn passed(&self) -> bool {
        self.rank == 3
            && self.all_sizes_match
            && self.decompositions_hold
            && self.components_maximum
            && self.character_sums_hold
            && self.ekr_module
    }
}

/// Structural checks on `T ≀ S₂` in product action for a 2-transitive `T`.
pub fn rank3_wreath_suite(t: &PermGroup, budget: AnalysisBudget) -> Result<Rank3Report> {
    let n = t.degree();
    let stab = t.point_stabilizer(0)?;
    let suborbits = {
        let mut seen = vec![false; n];
        let mut count = 0;
        for p in 0..n {
            if !seen[p] {
                count += 1;
                crate::group::orbit_of(p, stab.generators())
                    .into_iter()
                    .for_each(|q| seen[q] = true);
            }
        }
        count
    };
    if !t.is_transitive() || n < 2 || suborbits != 2 {
        return Err(Error::NotTwoTransitive);
    }
    let stab_order = stab.order() as usize;

    let inner_h = SubgroupSpec::new(t, stab.generators())?;
    let inner = ActionAnalysis::new(t, &inner_h, budget)?;
    let inner_max = inner
        .max_intersecting_sets_containing_identity(budget.search)?
        .size;
    let perm_char = crate::chartable::permutation_character(inner.action());
    let trivial = &inner.table().irreducibles()[0];
    let psi_values = crate::chartable::ClassFunction::new(
        perm_char
            .values
            .iter()
            .zip(&trivial.values)
            .map(|(a, b)| a - b)
            .collect(),
    );
    let psi = inner
        .table()
        .find(&psi_values)
        .ok_or(Error::NotTwoTransitive)?;
    let psi_degree = inner.table().degrees()[psi] as i64;

    let g = wreath_product_s2(t)?;
    let h = SubgroupSpec::new(&g, g.point_stabilizer(0)?.generators())?;
    let analysis = ActionAnalysis::new(&g, &h, budget)?;
    let rank = analysis.rank();
    let verdict = analysis.ekr_verdicts(budget.search)?;
    let max = analysis.max_intersecting_sets_containing_identity(budget.search)?;

    let expected_size = 2 * stab_order * stab_order;
    let mut failures = Vec::new();
    let mut decompositions_hold = true;
    let mut components_maximum = true;
    let mut character_sums_hold = true;

    let inner_index = |p: &Permutation| {
        inner
            .action()
            .table()
            .index_of(p)
            .expect("component lies in T")
    };
    let check_component = |name: &str, set: &[usize], failures: &mut Vec<String>| -> (bool, bool) {
        let maximum = set.len() == inner_max && inner.is_intersecting(set);
        if !maximum {
            failures.push(format!("{name} is not a maximum intersecting set of T"));
        }
        let counts = inner.classes().class_counts(set);
        let has_identity = set.contains(&0);
        let h = stab_order as i64;
        let expect_psi = if has_identity {
            Cyclotomic::from_int(h)
        } else {
            Cyclotomic::from_rational(crate::cyclotomic::rational(-h, psi_degree))
        };
        let mut sums = char_sum(&inner.table().irreducibles()[psi], &counts) == expect_psi;
        for nu in 1..inner.table().len() {
            if nu != psi && !char_sum(&inner.table().irreducibles()[nu], &counts).is_zero() {
                sums = false;
            }
        }
        if !sums {
            failures.push(format!(
                "character sums over {name} differ from the 2-transitive values"
            ));
        }
        (maximum, sums)
    };

    for s in &max.sets {
        let mut base = BTreeSet::new();
        let mut swapped = BTreeSet::new();
        for &e in &s.elements {
            let (a, b, sw) = wreath_decompose(analysis.element(e), n);
            if sw {
                swapped.insert((a, b));
            } else {
                base.insert((a, b));
            }
        }
        let w: BTreeSet<Permutation> = base.iter().map(|(a, _)| a.clone()).collect();
        let z: BTreeSet<Permutation> = base.iter().map(|(_, b)| b.clone()).collect();
        let x: BTreeSet<Permutation> = swapped.iter().map(|(a, _)| a.clone()).collect();
        let product_ok = base.len() == w.len() * z.len();
        let x_ok = swapped.len() == x.len() * x.len()
            && swapped
                .iter()
                .all(|(a, b)| x.contains(a) && x.contains(&b.inverse()));
        let id = Permutation::identity(n);
        if !(product_ok && x_ok && w.contains(&id) && z.contains(&id)) {
            decompositions_hold = false;
            failures.push(format!(
                "set {:?} does not decompose as (W×Z) ∪ (X×X⁻¹)π",
                analysis.cycles(&s.elements)
            ));
            continue;
        }
        let mut parts = vec![("W", w), ("Z", z)];
        if !x.is_empty() {
            parts.push(("X", x));
        }
        for (name, part) in parts {
            let idx: Vec<usize> = part.iter().map(&inner_index).collect();
            let (m, c) = check_component(name, &idx, &mut failures);
            components_maximum &= m;
            character_sums_hold &= c;
        }
    }

    Ok(Rank3Report {
        inner_degree: n,
        degree: analysis.action().degree(),
        group_order: g.order(),
        rank: rank.rank,
        primitive: rank.primitive,
        max_size: max.size,
        expected_size,
        num_max_sets: max.sets.len(),
        all_sizes_match: max.size == expected_size
            && max.sets.iter().all(|s| s.len() == expected_size),
        decompositions_hold,
        components_maximum,
        character_sums_hold,
        ekr_module: verdict.ekr_module,
        failures,
    })
}
