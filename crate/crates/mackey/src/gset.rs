//! Finite G-sets with a fixed point numbering, equivariant maps, and the
//! orbit/stabilizer toolkit.
//!
//! A `GSet` stores the permutation action of every group element, extended
//! from the generators along the group's factorization tree and then verified
//! to be a homomorphism. Constructions (disjoint union, product, coset
//! spaces) fix definite point numberings so results are reproducible data,
//! not just isomorphism classes.

use crate::group::{Group, Subgroup, SubgroupClasses};
use crate::perm::Permutation;
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSet {
    group: Group,
    n: usize,
    gen_action: Vec<Permutation>,
    /// `all_action[e]` is the permutation by which group element `e` acts.
    all_action: Vec<Permutation>,
}

impl GSet {
    /// Build from the action of each generator, verifying that the extension
    /// to all elements is a homomorphism (checked on generator × element
    /// pairs, which suffices by induction on word length).
    pub fn new(group: Group, n: usize, gen_action: Vec<Permutation>) -> Result<Self> {
        if gen_action.len() != group.generators().len() {
            return Err(Error::Invalid(format!(
                "{} action permutations for {} generators",
                gen_action.len(),
                group.generators().len()
            )));
        }
        for a in &gen_action {
            if a.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    got: a.degree(),
                });
            }
        }
        let mut all_action: Vec<Option<Permutation>> = vec![None; group.order()];
        all_action[0] = Some(Permutation::identity(n));
        for e in 0..group.order() {
            extend(&group, &gen_action, &mut all_action, e);
        }
        let all_action: Vec<Permutation> = all_action.into_iter().map(|p| p.unwrap()).collect();
        for (gi, ga) in gen_action.iter().enumerate() {
            let g = group.generator_element(gi);
            for e in 0..group.order() {
                if ga.compose(&all_action[e]) != all_action[group.mul(g, e)] {
                    return Err(Error::NotAction {
                        generator: gi,
                        element: e,
                    });
                }
            }
        }
        Ok(GSet {
            group,
            n,
            gen_action,
            all_action,
        })
    }

    pub fn empty(group: Group) -> Self {
        let gens = group.generators().len();
        GSet::new(group, 0, vec![Permutation::identity(0); gens]).expect("empty action")
    }

    /// One point with the trivial action.
    pub fn point(group: Group) -> Self {
        let gens = group.generators().len();
        GSet::new(group, 1, vec![Permutation::identity(1); gens]).expect("point action")
    }

    /// The coset space `G/H`. Points are the left cosets ordered by least
    /// member, acted on by left translation.
    pub fn cosets(group: &Group, h: &Subgroup) -> Result<Self> {
        if h.group() != group {
            return Err(Error::GroupMismatch);
        }
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut coset_of = vec![usize::MAX; group.order()];
        for g in 0..group.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = h.elements().iter().map(|&x| group.mul(g, x)).collect();
            members.sort_unstable();
            let id = cosets.len();
            for &m in &members {
                coset_of[m] = id;
            }
            cosets.push(members);
        }
        let n = cosets.len();
        let gen_action: Vec<Permutation> = (0..group.generators().len())
            .map(|gi| {
                let g = group.generator_element(gi);
                let images: Vec<usize> = cosets
                    .iter()
                    .map(|coset| coset_of[group.mul(g, coset[0])])
                    .collect();
                Permutation::from_images(images).expect("translation permutes cosets")
            })
            .collect();
        GSet::new(group.clone(), n, gen_action)
    }

    /// The group acting on itself by left translation (`G/e`).
    pub fn regular(group: &Group) -> Self {
        let h = group.trivial_subgroup();
        GSet::cosets(group, &h).expect("regular action")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Action of group element `e` on point `p`.
    pub fn act(&self, e: usize, p: usize) -> usize {
        self.all_action[e].apply(p)
    }

    pub fn action_of(&self, e: usize) -> &Permutation {
        &self.all_action[e]
    }

    pub fn generator_action(&self) -> &[Permutation] {
        &self.gen_action
    }

    /// Disjoint union: points of `self` first, then points of `other`.
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let gen_action: Vec<Permutation> = self
            .gen_action
            .iter()
            .zip(&other.gen_action)
            .map(|(a, b)| a.block_sum(b))
            .collect();
        GSet::new(self.group.clone(), self.n + other.n, gen_action)
    }

    /// Product with the diagonal action; pair `(i, j)` becomes point
    /// `i · other.len() + j`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let n = self.n * other.n;
        let gen_action: Vec<Permutation> = self
            .gen_action
            .iter()
            .zip(&other.gen_action)
            .map(|(a, b)| {
                let images: Vec<usize> = (0..n)
                    .map(|p| a.apply(p / other.n) * other.n + b.apply(p % other.n))
                    .collect();
                Permutation::from_images(images).expect("product of actions")
            })
            .collect();
        GSet::new(self.group.clone(), n, gen_action)
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for p in 0..self.n {
            if seen[p] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order())
                .map(|e| self.act(e, p))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &q in &orbit {
                seen[q] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn stabilizer(&self, p: usize) -> Subgroup {
        let elements: Vec<usize> = (0..self.group.order())
            .filter(|&e| self.act(e, p) == p)
            .collect();
        Subgroup::new(self.group.clone(), elements).expect("stabilizers are subgroups")
    }

    /// Points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.n)
            .filter(|&p| h.elements().iter().all(|&e| self.act(e, p) == p))
            .collect()
    }

    /// Least group element sending `from` to `to`, if any.
    pub fn transporter(&self, from: usize, to: usize) -> Option<usize> {
        (0..self.group.order()).find(|&e| self.act(e, from) == to)
    }

    /// The sub-G-set on an orbit, with points renumbered in sorted order.
    pub fn restrict_to_orbit(&self, orbit: &[usize]) -> GSet {
        let position: std::collections::HashMap<usize, usize> = orbit
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        let gen_action: Vec<Permutation> = self
            .gen_action
            .iter()
            .map(|a| {
                let images: Vec<usize> = orbit.iter().map(|&p| position[&a.apply(p)]).collect();
                Permutation::from_images(images).expect("orbit is invariant")
            })
            .collect();
        GSet::new(self.group.clone(), orbit.len(), gen_action).expect("restriction of an action")
    }

    /// Isomorphism invariant: the sorted multiset of stabilizer conjugacy
    /// class indices, one per orbit.
    pub fn canonical_form(&self, classes: &SubgroupClasses) -> Vec<usize> {
        let mut form: Vec<usize> = self
            .orbits()
            .iter()
            .map(|orbit| classes.class_index(&self.stabilizer(orbit[0])))
            .collect();
        form.sort_unstable();
        form
    }

    /// An explicit equivariant bijection to `other`, if one exists. Orbits
    /// are matched by stabilizer class; on each orbit the base point is sent
    /// to a point with literally equal stabilizer, which makes `x·p ↦ x·q`
    /// well defined.
    pub fn isomorphism_to(&self, other: &GSet, classes: &SubgroupClasses) -> Option<GMap> {
        if self.group != other.group || self.n != other.n {
            return None;
        }
        let mine = self.orbits();
        let theirs = other.orbits();
        let their_class: Vec<usize> = theirs
            .iter()
            .map(|o| classes.class_index(&other.stabilizer(o[0])))
            .collect();
        let mut used = vec![false; theirs.len()];
        let mut images = vec![usize::MAX; self.n];
        for orbit in &mine {
            let p = orbit[0];
            let stab = self.stabilizer(p);
            let class = classes.class_index(&stab);
            let mut matched = false;
            for (k, target_orbit) in theirs.iter().enumerate() {
                if used[k] || their_class[k] != class {
                    continue;
                }
                // A transitive set whose stabilizers form this conjugacy class
                // contains a point whose stabilizer is exactly `stab`.
                let q = target_orbit
                    .iter()
                    .copied()
                    .find(|&q| other.stabilizer(q) == stab)
                    .expect("class member realized on orbit");
                for &a in orbit {
                    let x = self.transporter(p, a).expect("orbit is transitive");
                    images[a] = other.act(x, q);
                }
                used[k] = true;
                matched = true;
                break;
            }
            if !matched {
                return None;
            }
        }
        GMap::new(self.clone(), other.clone(), images).ok()
    }
}

impl fmt::Display for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({} points, {} orbits)", self.n, self.orbits().len())
    }
}

fn extend(
    group: &Group,
    gen_action: &[Permutation],
    all_action: &mut [Option<Permutation>],
    e: usize,
) {
    if all_action[e].is_some() {
        return;
    }
    // words give e = gen[g] ∘ parent with parent index < queue order; recurse.
    let mut stack = vec![e];
    while let Some(&top) = stack.last() {
        let (g, p) = factor(group, top);
        if all_action[p].is_none() {
            stack.push(p);
            continue;
        }
        let parent = all_action[p].clone().unwrap();
        all_action[top] = Some(gen_action[g].compose(&parent));
        stack.pop();
    }
}

fn factor(group: &Group, e: usize) -> (usize, usize) {
    // Split one generator off e's factorization.
    let word = group.word(e);
    let g = word[0];
    let gi = group.generator_element(g);
    let p = group.mul(group.inv(gi), e);
    (g, p)
}

/// An equivariant map of G-sets, stored by its point images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GMap {
    source: GSet,
    target: GSet,
    images: Vec<usize>,
}

impl GMap {
    /// Validates equivariance against every generator (sufficient: the action
    /// of any element is a word in the generators).
    pub fn new(source: GSet, target: GSet, images: Vec<usize>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        if images.len() != source.len() {
            return Err(Error::Invalid(format!(
                "{} images for {} points",
                images.len(),
                source.len()
            )));
        }
        for (&im, p) in images.iter().zip(0..) {
            if im >= target.len() {
                return Err(Error::Invalid(format!(
                    "image {} of point {} out of range",
                    im, p
                )));
            }
        }
        for gi in 0..source.group().generators().len() {
            let g = source.group().generator_element(gi);
            for p in 0..source.len() {
                if images[source.act(g, p)] != target.act(g, images[p]) {
                    return Err(Error::NotEquivariant {
                        generator: gi,
                        point: p,
                    });
                }
            }
        }
        Ok(GMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(set: &GSet) -> Self {
        GMap {
            source: set.clone(),
            target: set.clone(),
            images: (0..set.len()).collect(),
        }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p]
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GMap) -> Result<GMap> {
        if other.target != self.source {
            return Err(Error::ObjectMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(GMap {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|&p| self.images[p]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        for &im in &self.images {
            if seen[im] {
                return false;
            }
            seen[im] = true;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn s3() -> Group {
        Group::new(
            3,
            vec![
                Permutation::from_one_based(&[2, 3, 1]).unwrap(),
                Permutation::from_one_based(&[2, 1, 3]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn c2() -> Group {
        Group::new(2, vec![Permutation::from_one_based(&[2, 1]).unwrap()]).unwrap()
    }

    /// The natural 3-point action of S3 on {1,2,3}.
    fn natural_s3() -> GSet {
        let g = s3();
        let gens = g.generators().to_vec();
        GSet::new(g, 3, gens).unwrap()
    }

    #[test]
    fn rejects_non_actions() {
        // Sending the transposition generator of S3 to a 3-cycle breaks the
        // relation (order 2 vs order 3).
        let g = s3();
        let bad = vec![
            Permutation::from_one_based(&[2, 3, 1]).unwrap(),
            Permutation::from_one_based(&[2, 3, 1]).unwrap(),
        ];
        match GSet::new(g, 3, bad) {
            Err(Error::NotAction { .. }) => {}
            other => panic!("expected NotAction, got {other:?}"),
        }
    }

    #[test]
    fn regular_action_is_free() {
        let g = s3();
        let r = GSet::regular(&g);
        assert_eq!(r.len(), 6);
        assert!(r.is_transitive());
        for p in 0..6 {
            assert_eq!(r.stabilizer(p).order(), 1);
        }
    }

    #[test]
    fn coset_space_of_order_two_subgroup() {
        let g = s3();
        let h = g.subgroups().into_iter().find(|s| s.order() == 2).unwrap();
        let x = GSet::cosets(&g, &h).unwrap();
        assert_eq!(x.len(), 3);
        assert!(x.is_transitive());
        assert_eq!(x.stabilizer(0).elements(), h.elements());
        // Isomorphic to the natural 3-point action.
        let classes = g.subgroup_classes();
        let iso = x.isomorphism_to(&natural_s3(), &classes).unwrap();
        assert!(iso.is_bijective());
    }

    #[test]
    fn orbit_counting() {
        let g = s3();
        let x = natural_s3();
        let xx = x.product(&x).unwrap();
        assert_eq!(xx.len(), 9);
        // Nine pairs split into the diagonal (3 points) and the rest (6).
        let orbits = xx.orbits();
        assert_eq!(orbits.len(), 2);
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 6]);
        // Diagonal points have order-2 stabilizers; off-diagonal are free.
        let classes = g.subgroup_classes();
        let mut form = xx.canonical_form(&classes);
        form.sort_unstable();
        let sizes: Vec<usize> = form
            .iter()
            .map(|&c| classes.class(c).rep.order())
            .collect();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn disjoint_union_blocks() {
        let g = c2();
        let pt = GSet::point(g.clone());
        let reg = GSet::regular(&g);
        let u = pt.disjoint_union(&reg).unwrap();
        assert_eq!(u.len(), 3);
        assert_eq!(u.orbits(), vec![vec![0], vec![1, 2]]);
        assert_eq!(u.act(1, 0), 0);
        assert_eq!(u.act(1, 1), 2);
    }

    #[test]
    fn fixed_points_and_marks_values() {
        let g = c2();
        let classes = g.subgroup_classes();
        let trivial = &classes.class(0).rep;
        let full = &classes.class(1).rep;
        let free = GSet::regular(&g);
        let pt = GSet::point(g.clone());
        assert_eq!(free.fixed_points(trivial).len(), 2);
        assert_eq!(free.fixed_points(full).len(), 0);
        assert_eq!(pt.fixed_points(trivial).len(), 1);
        assert_eq!(pt.fixed_points(full).len(), 1);
    }

    #[test]
    fn transporter_is_least() {
        let x = natural_s3();
        // Identity fixes 0, so transporter(0, 0) = 0.
        assert_eq!(x.transporter(0, 0), Some(0));
        let t = x.transporter(0, 1).unwrap();
        assert_eq!(x.act(t, 0), 1);
        for e in 0..t {
            assert_ne!(x.act(e, 0), 1);
        }
    }

    #[test]
    fn equivariance_is_enforced() {
        let g = c2();
        let reg = GSet::regular(&g);
        let pt = GSet::point(g.clone());
        // Collapse is equivariant.
        assert!(GMap::new(reg.clone(), pt.clone(), vec![0, 0]).is_ok());
        // A constant map into the regular action is not.
        match GMap::new(reg.clone(), reg.clone(), vec![0, 0]) {
            Err(Error::NotEquivariant { .. }) => {}
            other => panic!("expected NotEquivariant, got {other:?}"),
        }
        // No equivariant map point → regular action exists.
        assert!(GMap::new(pt.clone(), reg.clone(), vec![0]).is_err());
        assert!(GMap::new(pt.clone(), reg.clone(), vec![1]).is_err());
    }

    #[test]
    fn isomorphism_respects_stabilizers() {
        let g = s3();
        let classes = g.subgroup_classes();
        let x = natural_s3();
        let reg = GSet::regular(&g);
        // Same size, different stabilizers: 3+3 vs 6.
        let xx = x.disjoint_union(&x).unwrap();
        assert!(xx.isomorphism_to(&reg, &classes).is_none());
        assert_eq!(xx.canonical_form(&classes).len(), 2);
        // Union in either order is isomorphic.
        let pt = GSet::point(g.clone());
        let a = pt.disjoint_union(&x).unwrap();
        let b = x.disjoint_union(&pt).unwrap();
        let iso = a.isomorphism_to(&b, &classes).unwrap();
        assert!(iso.is_bijective());
        for e in 0..g.order() {
            for p in 0..a.len() {
                assert_eq!(iso.apply(a.act(e, p)), b.act(e, iso.apply(p)));
            }
        }
    }

    #[test]
    fn restriction_to_orbit() {
        let x = natural_s3();
        let xx = x.product(&x).unwrap();
        for orbit in xx.orbits() {
            let r = xx.restrict_to_orbit(&orbit);
            assert_eq!(r.len(), orbit.len());
            assert!(r.is_transitive());
        }
    }

    #[test]
    fn map_composition() {
        let g = c2();
        let reg = GSet::regular(&g);
        let pt = GSet::point(g.clone());
        let collapse = GMap::new(reg.clone(), pt.clone(), vec![0, 0]).unwrap();
        let id = GMap::identity(&reg);
        let c2 = collapse.compose(&id).unwrap();
        assert_eq!(c2.images(), collapse.images());
        assert!(GMap::identity(&pt).compose(&collapse).unwrap().images() == collapse.images());
        assert!(collapse.compose(&collapse).is_err());
    }
}
