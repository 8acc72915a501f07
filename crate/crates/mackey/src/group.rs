//! Finite permutation groups, their subgroups, conjugacy classes of subgroups,
//! and double cosets.
//!
//! A `Group` stores its full element list in lexicographic image order, so
//! element indices are canonical: index 0 is always the identity, and any two
//! groups with the same element set index elements identically.

use crate::perm::Permutation;
use crate::{Caps, Error, Result};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    /// All elements, sorted lexicographically by image list. `elements[0]` is
    /// the identity.
    elements: Vec<Permutation>,
    index: HashMap<Vec<usize>, usize>,
    /// `words[e] = Some((g, p))` with `element(e) = generators[g] ∘ element(p)`;
    /// `None` exactly for the identity. Lets actions defined on generators be
    /// extended to every element.
    words: Vec<Option<(usize, usize)>>,
    inverse: Vec<usize>,
}

/// A finite permutation group on `{0, .., degree-1}`, closed and indexed on
/// construction. Cheap to clone.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.degree == other.inner.degree
                && self.inner.elements == other.inner.elements)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Group(degree {}, order {}, generators",
            self.degree(),
            self.order()
        )?;
        for g in self.generators() {
            write!(f, " {}", g)?;
        }
        write!(f, ")")
    }
}

impl Group {
    /// Close the generators under composition, with the default order cap.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(degree, generators, Caps::default().group_order)
    }

    pub fn with_cap(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        // Breadth-first closure from the identity.
        let identity = Permutation::identity(degree);
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        seen.insert(identity.clone());
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            cap: "group_order",
                            limit: cap,
                            needed: seen.len() + 1,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Permutation> = seen.into_iter().collect();
        let index: HashMap<Vec<usize>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i))
            .collect();
        // Recompute factorizations against the sorted indexing.
        let mut words: Vec<Option<(usize, usize)>> = vec![None; elements.len()];
        let mut reached = vec![false; elements.len()];
        reached[0] = true;
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(p) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let y = g.compose(&elements[p]);
                let yi = index[y.images()];
                if !reached[yi] {
                    reached[yi] = true;
                    words[yi] = Some((gi, p));
                    queue.push_back(yi);
                }
            }
        }
        let inverse = elements
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();
        Ok(Group {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                elements,
                index,
                words,
                inverse,
            }),
        })
    }

    /// The group containing only the identity on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Group::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.inner.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.inner.index.get(p.images()).copied()
    }

    /// Index of `element(a) ∘ element(b)`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.inner.elements[a].compose(&self.inner.elements[b]);
        self.inner.index[p.images()]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverse[a]
    }

    /// Index of `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// Element index of `generators[i]`.
    pub fn generator_element(&self, i: usize) -> usize {
        self.inner.index[self.inner.generators[i].images()]
    }

    /// `words` factorization of element `e`: generator indices to compose, last
    /// applied first. Empty for the identity.
    pub fn word(&self, e: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = e;
        while let Some((g, p)) = self.inner.words[cur] {
            out.push(g);
            cur = p;
        }
        out
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            elements: vec![0],
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            elements: (0..self.order()).collect(),
        }
    }

    /// All subgroups, sorted by (order, element index list).
    ///
    /// Breadth-first closure of generated subsets, seeded with the cyclic
    /// subgroups and extended one generator at a time.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        for e in 1..self.order() {
            let cyclic = self.close_subset(&[0, e]);
            if found.insert(cyclic.clone()) {
                frontier.push(cyclic);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                let members: BTreeSet<usize> = h.iter().copied().collect();
                for e in 1..self.order() {
                    if members.contains(&e) {
                        continue;
                    }
                    let mut seed = h.clone();
                    seed.push(e);
                    let k = self.close_subset(&seed);
                    if found.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Vec<usize>> = found.into_iter().collect();
        subgroups.sort_by_key(|s| (s.len(), s.clone()));
        subgroups
            .into_iter()
            .map(|elements| Subgroup {
                group: self.clone(),
                elements,
            })
            .collect()
    }

    /// Sorted closure of a set of element indices under composition.
    fn close_subset(&self, seed: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = seed.iter().copied().collect();
        members.insert(0);
        let mut queue: Vec<usize> = members.iter().copied().collect();
        while let Some(x) = queue.pop() {
            let gens: Vec<usize> = members.iter().copied().collect();
            for g in gens {
                for y in [self.mul(g, x), self.mul(x, g)] {
                    if members.insert(y) {
                        queue.push(y);
                    }
                }
            }
            let xi = self.inv(x);
            if members.insert(xi) {
                queue.push(xi);
            }
        }
        members.into_iter().collect()
    }

    pub fn subgroup_classes(&self) -> SubgroupClasses {
        SubgroupClasses::new(self.clone())
    }
}

/// A subgroup, stored as the sorted list of element indices in its parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: Group,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{{")?;
        for (k, &e) in self.elements.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.group.element(e))?;
        }
        write!(f, "}}")
    }
}

impl Subgroup {
    /// Wrap a set of element indices, checking closure.
    pub fn new(group: Group, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for &a in &elements {
            if a >= group.order() {
                return Err(Error::NotSubgroup(format!("element index {} out of range", a)));
            }
            if elements.binary_search(&group.inv(a)).is_err() {
                return Err(Error::NotSubgroup("not closed under inverses".into()));
            }
            for &b in &elements {
                if elements.binary_search(&group.mul(a, b)).is_err() {
                    return Err(Error::NotSubgroup("not closed under composition".into()));
                }
            }
        }
        Ok(Subgroup { group, elements })
    }

    /// The subgroup generated by the given element indices.
    pub fn generated(group: &Group, generators: &[usize]) -> Self {
        let elements = group.close_subset(generators);
        Subgroup {
            group: group.clone(),
            elements,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| self.group.conj(g, h)).collect();
        elements.sort_unstable();
        Subgroup {
            group: self.group.clone(),
            elements,
        }
    }

    pub fn is_contained_in(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// `{ g : g S g⁻¹ = S }`.
    pub fn normalizer(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.conjugate(g).elements == self.elements)
            .collect();
        Subgroup {
            group: self.group.clone(),
            elements,
        }
    }

    /// This subgroup as a standalone group on the same points.
    pub fn as_group(&self) -> Group {
        let gens: Vec<Permutation> = self
            .elements
            .iter()
            .map(|&e| self.group.element(e).clone())
            .collect();
        Group::with_cap(self.group.degree(), gens, self.group.order().max(1))
            .expect("subgroup elements close")
    }
}

/// Double cosets `H g K`, each a sorted list of element indices, ordered by
/// least member.
pub fn double_cosets(group: &Group, h: &Subgroup, k: &Subgroup) -> Result<Vec<Vec<usize>>> {
    if h.group() != group || k.group() != group {
        return Err(Error::GroupMismatch);
    }
    let mut assigned = vec![false; group.order()];
    let mut out = Vec::new();
    for g in 0..group.order() {
        if assigned[g] {
            continue;
        }
        let mut coset = BTreeSet::new();
        for &a in h.elements() {
            let ag = group.mul(a, g);
            for &b in k.elements() {
                coset.insert(group.mul(ag, b));
            }
        }
        for &x in &coset {
            assigned[x] = true;
        }
        out.push(coset.into_iter().collect());
    }
    Ok(out)
}

/// One conjugacy class of subgroups: its canonical representative (the member
/// with the least element list), all members, and the representative's
/// normalizer.
#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub rep: Subgroup,
    /// Indices into `SubgroupClasses::subgroups`.
    pub members: Vec<usize>,
    pub normalizer: Subgroup,
}

/// The subgroup lattice of a group, partitioned into conjugacy classes.
///
/// Classes are sorted by (order of representative, representative element
/// list); this is the single global class ordering used by mark tables, span
/// bases and Mackey functors.
#[derive(Clone)]
pub struct SubgroupClasses {
    group: Group,
    subgroups: Vec<Subgroup>,
    class_of_subgroup: Vec<usize>,
    classes: Vec<ClassInfo>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl SubgroupClasses {
    pub fn new(group: Group) -> Self {
        let subgroups = group.subgroups();
        let lookup: HashMap<Vec<usize>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements().to_vec(), i))
            .collect();
        let mut class_of_subgroup = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<ClassInfo> = Vec::new();
        for i in 0..subgroups.len() {
            if class_of_subgroup[i] != usize::MAX {
                continue;
            }
            // subgroups are globally sorted, so the first unassigned member is
            // the class representative.
            let mut members = BTreeSet::new();
            for g in 0..group.order() {
                let c = subgroups[i].conjugate(g);
                members.insert(lookup[c.elements()]);
            }
            let members: Vec<usize> = members.into_iter().collect();
            let class_index = classes.len();
            for &m in &members {
                class_of_subgroup[m] = class_index;
            }
            classes.push(ClassInfo {
                rep: subgroups[i].clone(),
                normalizer: subgroups[i].normalizer(),
                members,
            });
        }
        SubgroupClasses {
            group,
            subgroups,
            class_of_subgroup,
            classes,
            lookup,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &ClassInfo {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn class_index(&self, s: &Subgroup) -> usize {
        self.class_of_subgroup[self.lookup[s.elements()]]
    }

    /// Least element `u` with `u S u⁻¹ = rep(class(S))`.
    pub fn conjugator_to_rep(&self, s: &Subgroup) -> usize {
        let rep = &self.classes[self.class_index(s)].rep;
        (0..self.group.order())
            .find(|&u| s.conjugate(u).elements() == rep.elements())
            .expect("conjugate subgroups are conjugate")
    }

    /// Short deterministic label for a class: `H0`, `H1`, ...
    pub fn label(&self, i: usize) -> String {
        format!("H{}", i)
    }
}
