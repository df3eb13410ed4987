//! Permutation groups: Schreier–Sims stabilizer chains, element tables,
//! conjugacy classes, normal subgroups and a few structural invariants.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of group elements materialized at once.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 20_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// `transversal[β] = u` with `u(base_point) = β`.
    transversal: HashMap<usize, Permutation>,
    orbit: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base: Vec<usize>,
    strong_generators: Vec<Permutation>,
    order: u64,
    levels: Vec<Level>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && other.generators.iter().all(|g| self.contains(g))
    }
}

impl PermGroup {
    pub fn from_generators(gens: &[Permutation]) -> Result<Self> {
        Self::with_base_prefix(gens, &[])
    }

    /// Builds the stabilizer chain with `prefix` as the first base points.
    pub fn with_base_prefix(gens: &[Permutation], prefix: &[usize]) -> Result<Self> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::OutOfRange(format!(
                "base point {p} ≥ degree {degree}"
            )));
        }
        let mut group = PermGroup {
            degree,
            generators: gens.to_vec(),
            base: prefix.to_vec(),
            strong_generators: Vec::new(),
            order: 1,
            levels: Vec::new(),
        };
        group.schreier_sims();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(&[Permutation::identity(degree)]).unwrap()
    }

    fn level_gens(&self, i: usize) -> Vec<usize> {
        (0..self.strong_generators.len())
            .filter(|&s| {
                self.base[..i]
                    .iter()
                    .all(|&b| self.strong_generators[s].image(b) == b)
            })
            .collect()
    }

    fn extend_orbit(&mut self, i: usize) {
        let gens = self.level_gens(i);
        let level = &mut self.levels[i];
        let mut queue: VecDeque<usize> = level.orbit.iter().copied().collect();
        while let Some(beta) = queue.pop_front() {
            for &s in &gens {
                let g = &self.strong_generators[s];
                let gamma = g.image(beta);
                if !level.transversal.contains_key(&gamma) {
                    let u = g.mul(&level.transversal[&beta]);
                    level.transversal.insert(gamma, u);
                    level.orbit.push(gamma);
                    queue.push_back(gamma);
                }
            }
        }
    }

    /// Sifts `g` through the chain; returns the residue and the level it dropped out at.
    fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let beta = h.image(level.base_point);
            match level.transversal.get(&beta) {
                Some(u) => h = u.inverse().mul(&h),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn add_strong_generator(&mut self, g: Permutation) {
        if self.base.iter().all(|&b| g.image(b) == b) {
            let p = g.first_moved_point().expect("identity is never added");
            self.base.push(p);
        }
        self.strong_generators.push(g);
        while self.levels.len() < self.base.len() {
            let b = self.base[self.levels.len()];
            let mut transversal = HashMap::new();
            transversal.insert(b, Permutation::identity(self.degree));
            self.levels.push(Level {
                base_point: b,
                transversal,
                orbit: vec![b],
            });
        }
        for i in 0..self.levels.len() {
            self.extend_orbit(i);
        }
    }

    fn schreier_sims(&mut self) {
        let n = self.degree;
        for b in self.base.clone() {
            let mut transversal = HashMap::new();
            transversal.insert(b, Permutation::identity(n));
            self.levels.push(Level {
                base_point: b,
                transversal,
                orbit: vec![b],
            });
        }
        for g in self.generators.clone() {
            if !g.is_identity() && !self.strong_generators.contains(&g) {
                self.add_strong_generator(g);
            }
        }
        let mut processed: HashSet<(usize, usize, usize)> = HashSet::new();
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let gens = self.level_gens(i);
                let orbit = self.levels[i].orbit.clone();
                for &beta in &orbit {
                    for &s in &gens {
                        if !processed.insert((i, beta, s)) {
                            continue;
                        }
                        let level = &self.levels[i];
                        let sg = &self.strong_generators[s];
                        let u_beta = &level.transversal[&beta];
                        let u_sbeta = &level.transversal[&sg.image(beta)];
                        let schreier = u_sbeta.inverse().mul(sg).mul(u_beta);
                        let (residue, _) = self.sift(&schreier);
                        if !residue.is_identity() {
                            self.add_strong_generator(residue);
                            continue 'restart;
                        }
                    }
                }
            }
            break;
        }
        self.order = self.levels.iter().map(|l| l.orbit.len() as u64).product();
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_generators
    }

    /// Lengths of the fundamental orbits of the stabilizer chain.
    pub fn fundamental_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(point, &self.generators)
    }

    /// Generators of the stabilizer of `point`.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        let chain = PermGroup::with_base_prefix(&self.generators, &[point])?;
        let gens: Vec<Permutation> = chain
            .strong_generators
            .iter()
            .filter(|g| g.image(point) == point)
            .cloned()
            .collect();
        if gens.is_empty() {
            Ok(PermGroup::trivial(self.degree))
        } else {
            PermGroup::from_generators(&gens)
        }
    }

    /// Enumerates all elements, sorted lexicographically by image list.
    pub fn elements(&self, budget: u64) -> Result<ElementTable> {
        if self.order > budget {
            return Err(Error::Budget {
                what: "group order",
                limit: budget,
            });
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for beta in &level.orbit {
                let u = &level.transversal[beta];
                for e in &elems {
                    next.push(u.mul(e));
                }
            }
            elems = next;
        }
        Ok(ElementTable::new(elems))
    }

    pub fn is_subgroup_of(&self, parent: &PermGroup) -> bool {
        self.degree == parent.degree && self.generators.iter().all(|g| parent.contains(g))
    }
}

pub(crate) fn orbit_of(point: usize, gens: &[Permutation]) -> Vec<usize> {
    let n = gens.first().map(Permutation::degree).unwrap_or(point + 1);
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

/// A subgroup `H ≤ G`, given by generators that were checked against the parent.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupSpec {
    group: PermGroup,
}

impl SubgroupSpec {
    pub fn new(parent: &PermGroup, generators: &[Permutation]) -> Result<Self> {
        let gens: Vec<Permutation> = if generators.is_empty() {
            vec![parent.identity()]
        } else {
            generators.to_vec()
        };
        for g in &gens {
            if g.degree() != parent.degree() {
                return Err(Error::DegreeMismatch {
                    expected: parent.degree(),
                    found: g.degree(),
                });
            }
            if !parent.contains(g) {
                return Err(Error::NotASubgroup(g.to_cycle_string()));
            }
        }
        Ok(SubgroupSpec {
            group: PermGroup::from_generators(&gens)?,
        })
    }

    pub fn trivial(parent: &PermGroup) -> Self {
        SubgroupSpec {
            group: PermGroup::trivial(parent.degree()),
        }
    }

    pub fn whole(parent: &PermGroup) -> Self {
        SubgroupSpec {
            group: parent.clone(),
        }
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.group.contains(g)
    }
}

/// All elements of a group with index lookup. Index 0 is the identity.
#[derive(Debug)]
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
}

impl ElementTable {
    fn new(mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        ElementTable {
            elements,
            index,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])] as usize
    }

    /// Closure of a set of element indices under multiplication, as a sorted list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.len()];
        members[0] = true;
        let mut list = vec![0usize];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// A small generating set for a subgroup given by its (sorted) element indices.
    pub fn generating_set(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = vec![0usize];
        for &x in subgroup {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    pub fn subgroup_spec(&self, parent: &PermGroup, subgroup: &[usize]) -> SubgroupSpec {
        let gens: Vec<Permutation> = self
            .generating_set(subgroup)
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect();
        SubgroupSpec::new(parent, &gens).expect("elements of the table belong to the parent")
    }

    pub fn indices_of_subgroup(&self, h: &SubgroupSpec) -> Vec<usize> {
        let gens: Vec<usize> = h
            .generators()
            .iter()
            .map(|g| self.index_of(g).expect("subgroup element in table"))
            .collect();
        self.closure(&gens)
    }
}

#[derive(Debug)]
pub struct ConjugacyClasses {
    elements: Arc<ElementTable>,
    representatives: Vec<Permutation>,
    members: Vec<Vec<usize>>,
    sizes: Vec<u64>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    element_orders: Vec<u64>,
    /// `power_map[c][k]` = class of `g^k` for `g ∈ c`, `0 ≤ k < order(c)`.
    power_map: Vec<Vec<usize>>,
    exponent: u64,
}

impl ConjugacyClasses {
    pub fn compute(group: &PermGroup, budget: u64) -> Result<Self> {
        let elements = Arc::new(group.elements(budget)?);
        let n = elements.len();
        let gens: Vec<Permutation> = group.generators().to_vec();
        let gens_inv: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = members.len();
            class_of[start] = c;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = elements.get(orbit[i]);
                for (g, gi) in gens.iter().zip(&gens_inv) {
                    let y = elements.index_of(&gi.mul(x).mul(g)).unwrap();
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let representatives: Vec<Permutation> =
            members.iter().map(|m| elements.get(m[0]).clone()).collect();
        let sizes = members.iter().map(|m| m.len() as u64).collect();
        let inverse_class = members
            .iter()
            .map(|m| class_of[elements.inverse(m[0])])
            .collect();
        let element_orders: Vec<u64> = representatives.iter().map(Permutation::order).collect();
        let exponent = element_orders
            .iter()
            .fold(1u64, |a, &o| num_integer::lcm(a, o));
        let power_map = representatives
            .iter()
            .zip(&element_orders)
            .map(|(r, &o)| {
                let mut out = Vec::with_capacity(o as usize);
                let mut x = Permutation::identity(r.degree());
                for _ in 0..o {
                    out.push(class_of[elements.index_of(&x).unwrap()]);
                    x = x.mul(r);
                }
                out
            })
            .collect();
        Ok(ConjugacyClasses {
            elements,
            representatives,
            members,
            sizes,
            class_of,
            inverse_class,
            element_orders,
            power_map,
            exponent,
        })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn elements(&self) -> &Arc<ElementTable> {
        &self.elements
    }

    pub fn group_order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    /// Class number of the element with table index `i`.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_index(&self, g: &Permutation) -> Option<usize> {
        self.elements.index_of(g).map(|i| self.class_of[i])
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    pub fn element_order(&self, class: usize) -> u64 {
        self.element_orders[class]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Class containing the `k`-th powers of elements of `class`.
    pub fn power_class(&self, class: usize, k: i64) -> usize {
        let o = self.element_orders[class] as i64;
        self.power_map[class][k.rem_euclid(o) as usize]
    }

    /// Per-class counts of a multiset of element indices.
    pub fn class_counts(&self, set: &[usize]) -> Vec<u64> {
        let mut counts = vec![0u64; self.len()];
        for &x in set {
            counts[self.class_of[x]] += 1;
        }
        counts
    }

    /// Classes that meet the given element set.
    pub fn classes_meeting(&self, set: &[usize]) -> Vec<usize> {
        let mut cs: Vec<usize> = set.iter().map(|&x| self.class_of[x]).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }
}

/// All normal subgroups, each as a sorted list of element indices.
///
/// Every normal subgroup is a join of normal closures of single classes, so the
/// lattice is generated from those closures by repeated joins.
pub fn normal_subgroup_indices(
    classes: &ConjugacyClasses,
    max_classes: usize,
) -> Result<Vec<Vec<usize>>> {
    if classes.len() > max_classes {
        return Err(Error::Budget {
            what: "class count for normal subgroups",
            limit: max_classes as u64,
        });
    }
    let table = classes.elements();
    let as_class_set = |elems: &[usize]| -> Vec<usize> { classes.classes_meeting(elems) };
    let from_class_set = |cs: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = cs
            .iter()
            .flat_map(|&c| classes.members(c).iter().copied())
            .collect();
        v.sort_unstable();
        v
    };
    let mut found: Vec<Vec<usize>> = vec![vec![0]];
    let mut closures: Vec<Vec<usize>> = Vec::new();
    for c in 0..classes.len() {
        let gens = classes.members(c).to_vec();
        let sub = table.closure(&table.generating_set(&table.closure(&gens)));
        let cs = as_class_set(&sub);
        if !closures.contains(&cs) {
            closures.push(cs.clone());
        }
        if !found.contains(&cs) {
            found.push(cs);
        }
    }
    let mut i = 0;
    while i < found.len() {
        for c in closures.clone() {
            let mut union: Vec<usize> = found[i].iter().chain(&c).copied().collect();
            union.sort_unstable();
            union.dedup();
            if union == found[i] {
                continue;
            }
            let elems = from_class_set(&union);
            let joined =
                as_class_set(&table.closure(&table.generating_set(&table.closure(&elems))));
            if !found.contains(&joined) {
                found.push(joined);
            }
        }
        i += 1;
    }
    let mut out: Vec<Vec<usize>> = found.iter().map(|cs| from_class_set(cs)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn normal_subgroups(group: &PermGroup, budget: u64) -> Result<Vec<SubgroupSpec>> {
    let classes = ConjugacyClasses::compute(group, budget.min(2_000).max(1))?;
    let table = classes.elements().clone();
    Ok(normal_subgroup_indices(&classes, 25)?
        .iter()
        .map(|n| table.subgroup_spec(group, n))
        .collect())
}

/// Normal closure of a set of element indices under conjugation by the whole table.
fn normal_closure(table: &ElementTable, gens: &[usize], group_gens: &[usize]) -> Vec<usize> {
    let mut all: Vec<usize> = gens.to_vec();
    loop {
        let sub = table.closure(&all);
        let mut extra = Vec::new();
        for &x in &sub {
            for &g in group_gens {
                let y = table.mul(table.mul(table.inverse(g), x), g);
                if sub.binary_search(&y).is_err() {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return sub;
        }
        all.extend(extra);
        all.sort_unstable();
        all.dedup();
    }
}

/// Length of the lower central series, or `None` if the group is not nilpotent.
pub fn nilpotency_class(group: &PermGroup, budget: u64) -> Result<Option<usize>> {
    let table = group.elements(budget)?;
    let ggens: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| table.index_of(g).unwrap())
        .collect();
    let mut current: Vec<usize> = (0..table.len()).collect();
    let mut class = 0;
    loop {
        if current.len() == 1 {
            return Ok(Some(class));
        }
        let commutators: Vec<usize> = current
            .iter()
            .flat_map(|&a| ggens.iter().map(move |&g| (a, g)))
            .map(|(a, g)| {
                let ai = table.inverse(a);
                let gi = table.inverse(g);
                table.mul(table.mul(ai, gi), table.mul(a, g))
            })
            .collect();
        let next = normal_closure(&table, &commutators, &ggens);
        if next.len() == current.len() {
            return Ok(None);
        }
        current = next;
        class += 1;
    }
}

/// All subgroups up to conjugacy, as sorted element-index lists ordered by size.
///
/// Intended for small groups: subgroups are grown as joins of cyclic subgroups.
pub fn subgroup_class_representatives(group: &PermGroup, budget: u64) -> Result<Vec<Vec<usize>>> {
    let table = group.elements(budget)?;
    let ggens: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| table.index_of(g).unwrap())
        .collect();
    let mut cyclic: Vec<Vec<usize>> = Vec::new();
    for x in 0..table.len() {
        let c = table.closure(&[x]);
        if !cyclic.contains(&c) {
            cyclic.push(c);
        }
    }
    let mut all: HashSet<Vec<usize>> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = table.generating_set(s);
                gens.extend(table.generating_set(c));
                let j = table.closure(&gens);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut subgroups: Vec<Vec<usize>> = all.into_iter().collect();
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for s in subgroups {
        if seen.contains(&s) {
            continue;
        }
        reps.push(s.clone());
        let mut queue = vec![s.clone()];
        seen.insert(s);
        while let Some(cur) = queue.pop() {
            for &g in &ggens {
                let gi = table.inverse(g);
                let mut conj: Vec<usize> = cur
                    .iter()
                    .map(|&x| table.mul(table.mul(gi, x), g))
                    .collect();
                conj.sort_unstable();
                if seen.insert(conj.clone()) {
                    queue.push(conj);
                }
            }
        }
    }
    Ok(reps)
}

/// Wreath product `T ≀ S₂` in product action on `Ω²`; point `(a, b)` is numbered `a·n + b`.
pub fn wreath_product_s2(inner: &PermGroup) -> Result<PermGroup> {
    if !inner.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = inner.degree();
    let lift = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Permutation {
        let images = (0..n * n)
            .map(|p| {
                let (a, b) = f(p / n, p % n);
                (a * n + b) as u32
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    let mut gens = Vec::new();
    for t in inner.generators() {
        gens.push(lift(&|a, b| (t.image(a), b)));
        gens.push(lift(&|a, b| (a, t.image(b))));
    }
    gens.push(lift(&|a, b| (b, a)));
    PermGroup::from_generators(&gens)
}

/// Decomposes an element of `T ≀ S₂` (as built by [`wreath_product_s2`]) into
/// `(s, r, swapped)`: the element is `(s, r)` or `(s, r)π`.
pub fn wreath_decompose(g: &Permutation, n: usize) -> (Permutation, Permutation, bool) {
    let swap = Permutation::from_images((0..n * n).map(|p| ((p % n) * n + p / n) as u32).collect())
        .unwrap();
    // unswapped elements keep the first coordinate independent of the second
    let swapped = n > 1 && g.image(0) / n != g.image(1) / n;
    let base = if swapped { g.mul(&swap) } else { g.clone() };
    let s =
        Permutation::from_images((0..n).map(|a| (base.image(a * n) / n) as u32).collect()).unwrap();
    let r = Permutation::from_images((0..n).map(|b| (base.image(b) % n) as u32).collect()).unwrap();
    (s, r, swapped)
}

pub mod named {
    //! Named constructors used by the group input grammar.

    use super::PermGroup;
    use crate::error::{Error, Result};
    use crate::perm::Permutation;

    fn cycle(n: usize, pts: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[pts.to_vec()]).unwrap()
    }

    pub fn symmetric(n: usize) -> Result<PermGroup> {
        match n {
            0 => Err(Error::OutOfRange("symmetric:0".into())),
            1 => Ok(PermGroup::trivial(1)),
            2 => PermGroup::from_generators(&[cycle(2, &[0, 1])]),
            _ => PermGroup::from_generators(&[
                cycle(n, &[0, 1]),
                cycle(n, &(0..n).collect::<Vec<_>>()),
            ]),
        }
    }

    pub fn alternating(n: usize) -> Result<PermGroup> {
        match n {
            0 => Err(Error::OutOfRange("alternating:0".into())),
            1 | 2 => Ok(PermGroup::trivial(n)),
            _ => {
                let gens: Vec<Permutation> = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
                PermGroup::from_generators(&gens)
            }
        }
    }

    pub fn cyclic(n: usize) -> Result<PermGroup> {
        match n {
            0 => Err(Error::OutOfRange("cyclic:0".into())),
            1 => Ok(PermGroup::trivial(1)),
            _ => PermGroup::from_generators(&[cycle(n, &(0..n).collect::<Vec<_>>())]),
        }
    }

    /// Dihedral group of the given order `2m`, acting on `m` points (`m ≥ 3`).
    pub fn dihedral(order: usize) -> Result<PermGroup> {
        if order < 6 || !order.is_multiple_of(2) {
            return Err(Error::OutOfRange(format!(
                "dihedral:{order} needs an even order ≥ 6"
            )));
        }
        let m = order / 2;
        let rot = cycle(m, &(0..m).collect::<Vec<_>>());
        let refl =
            Permutation::from_images((0..m).map(|i| ((m - i) % m) as u32).collect()).unwrap();
        PermGroup::from_generators(&[rot, refl])
    }

    /// Quaternion group of order 8 in its regular representation.
    pub fn quaternion8() -> Result<PermGroup> {
        // elements ±1, ±i, ±j, ±k numbered 1,i,j,k = 0..4 and negatives +4
        let mul_table = |a: usize, b: usize| -> usize {
            let (sa, xa) = (a / 4, a % 4);
            let (sb, xb) = (b / 4, b % 4);
            // unit products among 1,i,j,k: (sign, unit)
            let (s, u) = match (xa, xb) {
                (0, x) | (x, 0) => (0, x),
                (x, y) if x == y => (1, 0),
                (1, 2) => (0, 3),
                (2, 1) => (1, 3),
                (2, 3) => (0, 1),
                (3, 2) => (1, 1),
                (3, 1) => (0, 2),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            };
            ((sa + sb + s) % 2) * 4 + u
        };
        let left = |a: usize| {
            Permutation::from_images((0..8).map(|b| mul_table(a, b) as u32).collect()).unwrap()
        };
        PermGroup::from_generators(&[left(1), left(2)])
    }

    /// Heisenberg group mod `p` acting on `F_p²` by `(x, y) ↦ (x + a·y + c, y + b)`.
    pub fn heisenberg(p: usize) -> Result<PermGroup> {
        if p < 2 || !(2..p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::OutOfRange(format!("heisenberg:{p} needs a prime")));
        }
        let act = |a: usize, b: usize, c: usize| {
            Permutation::from_images(
                (0..p * p)
                    .map(|pt| {
                        let (x, y) = (pt / p, pt % p);
                        (((x + a * y + c) % p) * p + (y + b) % p) as u32
                    })
                    .collect(),
            )
            .unwrap()
        };
        PermGroup::from_generators(&[act(1, 0, 0), act(0, 1, 0)])
    }

    /// `AGL(1, p)` acting on `F_p`.
    pub fn agl1(p: usize) -> Result<PermGroup> {
        if p < 3 || !(2..p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::OutOfRange(format!("agl1:{p} needs an odd prime")));
        }
        let translate =
            Permutation::from_images((0..p).map(|x| ((x + 1) % p) as u32).collect()).unwrap();
        let root = (2..p)
            .find(|&g| (1..p - 1).all(|k| mod_pow(g, k, p) != 1))
            .expect("primitive root exists");
        let scale =
            Permutation::from_images((0..p).map(|x| ((x * root) % p) as u32).collect()).unwrap();
        PermGroup::from_generators(&[translate, scale])
    }

    fn mod_pow(b: usize, e: usize, m: usize) -> usize {
        (0..e).fold(1, |acc, _| acc * b % m)
    }
}
