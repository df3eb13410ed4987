//! Transitive actions of `G` on the left cosets `[G:H]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    normal_subgroup_indices, ConjugacyClasses, ElementTable, PermGroup, SubgroupSpec,
};
use crate::perm::Permutation;

/// `G` acting on `[G:H]` by left multiplication.
///
/// Cosets are numbered by their lexicographically minimal element, so the
/// coset `H` itself is point 0.
#[derive(Debug, Clone)]
pub struct CosetAction {
    group: PermGroup,
    subgroup: SubgroupSpec,
    classes: Arc<ConjugacyClasses>,
    subgroup_indices: Vec<usize>,
    coset_of: Vec<u32>,
    coset_reps: Vec<usize>,
    point_permutations: Vec<Permutation>,
    kernel_indices: Vec<usize>,
}

impl CosetAction {
    pub fn new(group: &PermGroup, subgroup: &SubgroupSpec, budget: u64) -> Result<Self> {
        if !subgroup.group().is_subgroup_of(group) {
            let bad = subgroup.generators().iter().find(|g| !group.contains(g));
            return Err(Error::NotASubgroup(
                bad.map(|g| g.to_cycle_string()).unwrap_or_default(),
            ));
        }
        let classes = Arc::new(ConjugacyClasses::compute(group, budget)?);
        Self::with_classes(group, subgroup, classes)
    }

    /// Reuses precomputed classes of `group`.
    pub fn with_classes(
        group: &PermGroup,
        subgroup: &SubgroupSpec,
        classes: Arc<ConjugacyClasses>,
    ) -> Result<Self> {
        let table = classes.elements().clone();
        let subgroup_indices = table.indices_of_subgroup(subgroup);
        let mut coset_of = vec![u32::MAX; table.len()];
        let mut coset_reps = Vec::new();
        for x in 0..table.len() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = coset_reps.len() as u32;
            coset_reps.push(x);
            for &h in &subgroup_indices {
                coset_of[table.mul(x, h)] = c;
            }
        }
        let mut action = CosetAction {
            group: group.clone(),
            subgroup: subgroup.clone(),
            classes,
            subgroup_indices,
            coset_of,
            coset_reps,
            point_permutations: Vec::new(),
            kernel_indices: Vec::new(),
        };
        action.point_permutations = group
            .generators()
            .iter()
            .map(|g| action.point_permutation(table.index_of(g).expect("generator in table")))
            .collect();
        action.kernel_indices = (0..table.len())
            .filter(|&g| action.fixed_point_count(g) == action.degree())
            .collect();
        Ok(action)
    }

    pub fn degree(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        &self.subgroup
    }

    /// The stabilizer of point 0, which is `H`.
    pub fn stabilizer_of_base_point(&self) -> &SubgroupSpec {
        &self.subgroup
    }

    pub fn point_of_identity(&self) -> usize {
        0
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        self.classes.elements()
    }

    pub fn subgroup_indices(&self) -> &[usize] {
        &self.subgroup_indices
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element] as usize
    }

    pub fn coset_representative(&self, point: usize) -> usize {
        self.coset_reps[point]
    }

    /// Images of the group generators on coset indices.
    pub fn point_permutations(&self) -> &[Permutation] {
        &self.point_permutations
    }

    /// Image of point `point` under the element with table index `g`.
    pub fn act(&self, g: usize, point: usize) -> usize {
        self.coset_of(self.table().mul(g, self.coset_reps[point]))
    }

    pub fn point_permutation(&self, g: usize) -> Permutation {
        let images = (0..self.degree()).map(|p| self.act(g, p) as u32).collect();
        Permutation::from_images(images).expect("left multiplication permutes cosets")
    }

    pub fn fixed_point_count(&self, g: usize) -> usize {
        (0..self.degree()).filter(|&p| self.act(g, p) == p).count()
    }

    /// The core of `H`, as sorted element indices.
    pub fn kernel_indices(&self) -> &[usize] {
        &self.kernel_indices
    }

    pub fn kernel(&self) -> SubgroupSpec {
        self.table()
            .subgroup_spec(&self.group, &self.kernel_indices)
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel_indices.len() == 1
    }

    pub fn require_faithful(&self) -> Result<()> {
        if self.is_faithful() {
            Ok(())
        } else {
            Err(Error::NotFaithful(self.kernel_indices.len() as u64))
        }
    }

    /// Classes whose elements fix at least one point: those meeting `H`.
    pub fn fixer_classes(&self) -> Vec<usize> {
        self.classes.classes_meeting(&self.subgroup_indices)
    }

    pub fn derangement_classes(&self) -> Vec<usize> {
        let fixers = self.fixer_classes();
        (0..self.classes.len())
            .filter(|c| fixers.binary_search(c).is_err())
            .collect()
    }

    /// `∪_g gHg⁻¹` as sorted element indices.
    pub fn fixer_union(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .fixer_classes()
            .iter()
            .flat_map(|&c| self.classes.members(c).iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// The image of `G` in `Sym(Ω)`.
    pub fn image_group(&self) -> Result<PermGroup> {
        PermGroup::from_generators(&self.point_permutations)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    pub primitive: bool,
    pub two_transitive: bool,
}

pub fn rank_and_primitivity(action: &CosetAction) -> RankInfo {
    let n = action.degree();
    let table = action.table();
    let h_perms: Vec<Permutation> = action
        .subgroup()
        .generators()
        .iter()
        .map(|h| action.point_permutation(table.index_of(h).unwrap()))
        .collect();
    let mut suborbit = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for p in 0..n {
        if suborbit[p] == usize::MAX {
            let id = reps.len();
            reps.push(p);
            for q in crate::group::orbit_of(p, &h_perms) {
                suborbit[q] = id;
            }
        }
    }
    let rank = reps.len();
    // each nontrivial orbital graph must be connected
    let primitive = reps.iter().skip(1).all(|&beta| {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for g in 0..table.len() {
            let a = find(&mut parent, action.act(g, 0));
            let b = find(&mut parent, action.act(g, beta));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    });
    RankInfo {
        rank,
        primitive,
        two_transitive: rank == 2,
    }
}

/// A normal subgroup of order `|Ω|` meeting `H` trivially, if one exists.
pub fn regular_normal_subgroup(action: &CosetAction) -> Result<Option<SubgroupSpec>> {
    let normals = normal_subgroup_indices(action.classes(), 64)?;
    let h = action.subgroup_indices();
    Ok(normals
        .iter()
        .find(|n| {
            n.len() == action.degree()
                && n.iter().filter(|x| h.binary_search(x).is_ok()).count() == 1
        })
        .map(|n| action.table().subgroup_spec(action.group(), n)))
}

/// The faithful quotient action of `G/K` on the same points.
#[derive(Debug, Clone)]
pub struct ReducedAction {
    pub action: CosetAction,
    pub kernel_order: u64,
}

pub fn kernel_reduce(action: &CosetAction) -> Result<ReducedAction> {
    let kernel_order = action.kernel_indices().len() as u64;
    if kernel_order == 1 {
        return Ok(ReducedAction {
            action: action.clone(),
            kernel_order,
        });
    }
    let image = action.image_group()?;
    let stab = image.point_stabilizer(0)?;
    let h = SubgroupSpec::new(&image, stab.generators())?;
    let budget = action.table().len() as u64;
    Ok(ReducedAction {
        action: CosetAction::new(&image, &h, budget)?,
        kernel_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::perm::parse_generators;

    fn sub(g: &PermGroup, text: &str) -> SubgroupSpec {
        SubgroupSpec::new(g, &parse_generators(text, Some(g.degree())).unwrap()).unwrap()
    }

    #[test]
    fn coset_degrees_and_stabilizer() {
        let a4 = named::alternating(4).unwrap();
        let act = CosetAction::new(&a4, &sub(&a4, "(1,2)(3,4)"), 1000).unwrap();
        assert_eq!(act.degree(), 6);
        assert!(act.point_permutations().iter().all(|p| p.degree() == 6));
        let image = act.image_group().unwrap();
        assert!(image.is_transitive());
        assert_eq!(image.point_stabilizer(0).unwrap().order(), 2);
        assert!(act.is_faithful());

        let s5 = named::symmetric(5).unwrap();
        let act = CosetAction::new(&s5, &sub(&s5, "(1,2,3),(1,2),(4,5)"), 1000).unwrap();
        assert_eq!(act.degree(), 10);

        let full = CosetAction::new(&a4, &SubgroupSpec::whole(&a4), 1000).unwrap();
        assert_eq!(full.degree(), 1);
        assert_eq!(full.kernel().order(), 12);
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let a4 = named::alternating(4).unwrap();
        let s4 = named::symmetric(4).unwrap();
        let h = sub(&s4, "(1,2)");
        assert!(matches!(
            CosetAction::new(&a4, &h, 1000),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn ranks() {
        let s4 = named::symmetric(4).unwrap();
        let act = CosetAction::new(
            &s4,
            &SubgroupSpec::new(&s4, s4.point_stabilizer(0).unwrap().generators()).unwrap(),
            1000,
        )
        .unwrap();
        let r = rank_and_primitivity(&act);
        assert_eq!((r.rank, r.primitive, r.two_transitive), (2, true, true));

        let a4 = named::alternating(4).unwrap();
        let act = CosetAction::new(&a4, &sub(&a4, "(1,2)(3,4)"), 1000).unwrap();
        let r = rank_and_primitivity(&act);
        assert!(r.rank >= 3);
        assert!(!r.primitive);

        let w = crate::group::wreath_product_s2(&named::symmetric(3).unwrap()).unwrap();
        let stab = w.point_stabilizer(0).unwrap();
        let act =
            CosetAction::new(&w, &SubgroupSpec::new(&w, stab.generators()).unwrap(), 1000).unwrap();
        let r = rank_and_primitivity(&act);
        assert_eq!((r.rank, r.primitive), (3, true));
    }

    #[test]
    fn fixers_and_derangements_partition() {
        let a5 = named::alternating(5).unwrap();
        let act = CosetAction::new(&a5, &sub(&a5, "(1,2,3,4,5)"), 1000).unwrap();
        let fixers = act.fixer_union();
        assert_eq!(fixers.len(), 1 + 24);
        for g in 0..act.table().len() {
            let fixes = act.fixed_point_count(g) > 0;
            assert_eq!(fixes, fixers.binary_search(&g).is_ok());
        }
        let regular = CosetAction::new(&a5, &SubgroupSpec::trivial(&a5), 1000).unwrap();
        assert_eq!(regular.fixer_union(), vec![0]);
    }

    #[test]
    fn regular_normal_subgroups() {
        let f20 = named::agl1(5).unwrap();
        let act = CosetAction::new(
            &f20,
            &SubgroupSpec::new(&f20, f20.point_stabilizer(0).unwrap().generators()).unwrap(),
            1000,
        )
        .unwrap();
        assert_eq!(regular_normal_subgroup(&act).unwrap().unwrap().order(), 5);

        let a5 = named::alternating(5).unwrap();
        let act = CosetAction::new(&a5, &sub(&a5, "(1,2,3)"), 1000).unwrap();
        assert!(regular_normal_subgroup(&act).unwrap().is_none());

        let w = crate::group::wreath_product_s2(&named::symmetric(3).unwrap()).unwrap();
        let act = CosetAction::new(
            &w,
            &SubgroupSpec::new(&w, w.point_stabilizer(0).unwrap().generators()).unwrap(),
            1000,
        )
        .unwrap();
        // A3 × A3 acts on the 3 × 3 grid as the translations of F_3²
        let n = regular_normal_subgroup(&act).unwrap().unwrap();
        assert_eq!(n.order(), 9);
        assert_eq!(
            crate::group::nilpotency_class(n.group(), 100).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn kernel_reduction() {
        let z4 = named::cyclic(4).unwrap();
        let act = CosetAction::new(&z4, &sub(&z4, "(1,3)(2,4)"), 100).unwrap();
        assert_eq!(act.kernel().order(), 2);
        let red = kernel_reduce(&act).unwrap();
        assert_eq!(red.kernel_order, 2);
        assert_eq!(red.action.group().order(), 2);
        assert_eq!(red.action.degree(), 2);
        assert!(red.action.is_faithful());

        let a4 = named::alternating(4).unwrap();
        let act = CosetAction::new(&a4, &sub(&a4, "(1,2)(3,4),(1,3)(2,4)"), 100).unwrap();
        let red = kernel_reduce(&act).unwrap();
        assert_eq!(red.action.group().order(), 3);
        assert_eq!(red.action.subgroup().order(), 1);
    }
}
