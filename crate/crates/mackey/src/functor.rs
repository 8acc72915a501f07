//! Mackey functors on a fixed finite group, their span actions, and the
//! π₀-level comparison between algebraic and categorical constructions.
//!
//! A Mackey functor assigns an abelian group to each conjugacy class of
//! subgroups and a homomorphism to each of three families of generators:
//! restrictions along subgroup inclusions, transfers back up, and
//! conjugations by normalizer elements.  Equivalently, it is an additive
//! contravariant functor on the span category: every basis key of a hom
//! group acts through a compiled transfer ∘ conjugation ∘ restriction
//! composite, and the generator data is accepted only when that compiled
//! action is functorial for every composable pair of basis keys.
//!
//! The second half of the module connects Mackey functors with permutative
//! categories.  A functor can be re-expressed as a family of discrete
//! permutative categories ([`mackey_to_categories`]); a finite G-set
//! produces the family of its span categories ([`suspension_categories`]).
//! [`pi0_mackey`] group-completes the components of either family back into
//! a Mackey functor, and [`mackey_iso`] decides whether two functors are
//! isomorphic level by level, compatibly with all generators.

use crate::abelian::{smith_normal_form, AbGroup, AbHom, IntMat};
use crate::burnside::Burnside;
use crate::group::{Group, Subgroup, SubgroupClasses};
use crate::gset::{GMap, GSet};
use crate::permcat::{
    discrete_permcat, group_completion, induced_map_on_completions, lax_from_monoid_map,
    pi0_objects, FinPermCat, TabulatedGroup,
};
use crate::span::{representative_span, Span, TransitiveSpanKey};
use crate::{Caps, Error, Result};
use std::collections::BTreeMap;

/// Homomorphisms keyed by the sorted element list of a subgroup.
pub type HomsBySubgroup = BTreeMap<Vec<usize>, AbHom>;
/// Homomorphisms keyed by a group element.
pub type HomsByElement = BTreeMap<usize, AbHom>;

/// The raw generator tables of a Mackey functor, one entry per subgroup
/// conjugacy class in the global class order.
///
/// For the class of `H` with value `M(H)`, the tables hold, for every
/// subgroup `K ≤ H` (keyed by its element list):
///
/// * a restriction `M(H) → M(class of K)`,
/// * a transfer `M(class of K) → M(H)`,
///
/// both already routed through the canonical conjugator carrying `K` to its
/// class representative; and for every `n` in the normalizer `N(H)` a
/// conjugation `M(H) → M(H)`.  Conjugation is a left action: the entry at
/// `n·m` must equal the entry at `n` composed after the entry at `m`.
#[derive(Clone)]
pub struct MackeyData {
    pub values: Vec<AbGroup>,
    pub restrictions: Vec<HomsBySubgroup>,
    pub transfers: Vec<HomsBySubgroup>,
    pub conjugations: Vec<HomsByElement>,
}

/// A validated Mackey functor: generator tables plus the compiled action of
/// every transitive span basis key between class representatives.
pub struct MackeyFunctor {
    burnside: Burnside,
    orbits: Vec<GSet>,
    data: MackeyData,
    bases: Vec<Vec<Vec<TransitiveSpanKey>>>,
    /// `compiled[j][i][t]` is the action `M(H_i) → M(H_j)` of the `t`-th
    /// basis key of the hom group `G/H_j → G/H_i`.
    compiled: Vec<Vec<Vec<AbHom>>>,
}

/// Greedy minimal generating sequence of the subgroup with these elements.
fn generating_set(group: &Group, elements: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut have = Subgroup::generated(group, &gens);
    for &n in elements {
        if !have.contains(n) {
            gens.push(n);
            have = Subgroup::generated(group, &gens);
        }
    }
    gens
}

/// Integer linear combination of homomorphisms with common endpoints.
fn lincomb<'a>(
    src: &AbGroup,
    tgt: &AbGroup,
    terms: impl Iterator<Item = (i64, &'a AbHom)>,
) -> AbHom {
    let mut mat = IntMat::zero(tgt.generators(), src.generators());
    for (c, h) in terms {
        if c == 0 {
            continue;
        }
        let hm = h.matrix();
        for r in 0..mat.rows() {
            for s in 0..mat.cols() {
                let v = mat.at(r, s) + c * hm.at(r, s);
                mat.set(r, s, v);
            }
        }
    }
    AbHom::new_unchecked(src.clone(), tgt.clone(), mat)
}

/// The equivariant map `xH ↦ x·u·H'` between coset spaces, defined whenever
/// `u⁻¹ H u ≤ H'`.  Images are computed on the canonical transversal.
fn coset_map(apex: &GSet, target: &GSet, u: usize) -> Result<GMap> {
    let group = apex.group();
    let images: Vec<usize> = (0..apex.len())
        .map(|p| {
            let rep = apex.transporter(0, p).expect("coset spaces are transitive");
            target.act(group.mul(rep, u), 0)
        })
        .collect();
    GMap::new(apex.clone(), target.clone(), images)
}

/// The action of one basis key, read off the generator tables.
///
/// The key `(L; a, b)` of the hom group `G/H_j → G/H_i` stands for the span
/// with apex `G/L` and legs `xL ↦ x·a`, `xL ↦ x·b`.  Writing `g_a`, `g_b`
/// for the transporters of the leg points and `u₀`, `u₁` for the canonical
/// conjugators of `g_b⁻¹ L g_b ≤ H_i` and `g_a⁻¹ L g_a ≤ H_j` to their class
/// representative `L`, the action factors as
///
/// ```text
/// M(H_i) --restr--> M(L) --conj by u₁·g_a⁻¹·g_b·u₀⁻¹--> M(L) --transf--> M(H_j)
/// ```
fn compile_key(
    classes: &SubgroupClasses,
    orbits: &[GSet],
    data: &MackeyData,
    j: usize,
    i: usize,
    key: TransitiveSpanKey,
) -> AbHom {
    let group = classes.group();
    let k = key.stab_class;
    let ga = orbits[j]
        .transporter(0, key.a)
        .expect("coset spaces are transitive");
    let gb = orbits[i]
        .transporter(0, key.b)
        .expect("coset spaces are transitive");
    let rep = &classes.class(k).rep;
    let k1 = rep.conjugate(group.inv(ga));
    let k0 = rep.conjugate(group.inv(gb));
    let u1 = classes.conjugator_to_rep(&k1);
    let u0 = classes.conjugator_to_rep(&k0);
    let w = group.mul(group.mul(u1, group.inv(ga)), group.mul(gb, group.inv(u0)));
    debug_assert!(classes.class(k).normalizer.contains(w));
    let r = &data.restrictions[i][k0.elements()];
    let t = &data.transfers[j][k1.elements()];
    let c = &data.conjugations[k][&w];
    t.compose(&c.compose(r))
}

impl MackeyFunctor {
    /// Validates generator tables into a Mackey functor.
    ///
    /// Checks, in order: one table entry per required key and matching
    /// endpoints; unit laws (restriction, transfer and conjugation along the
    /// class representative itself are identities); multiplicativity of
    /// conjugation; and functoriality of the compiled span action over every
    /// composable pair of basis keys — which subsumes transitivity along
    /// chains and the double-coset formula.  Rejections list every failed
    /// law with a witness.
    pub fn new(group: &Group, data: MackeyData) -> Result<Self> {
        Self::assemble(Burnside::new(group.clone()), data)
    }

    fn assemble(burnside: Burnside, data: MackeyData) -> Result<Self> {
        let classes = burnside.classes();
        let m = classes.len();
        if data.values.len() != m
            || data.restrictions.len() != m
            || data.transfers.len() != m
            || data.conjugations.len() != m
        {
            return Err(Error::Invalid(format!(
                "Mackey tables need one entry per subgroup class: expected {}, got \
                 {} values, {} restriction tables, {} transfer tables, {} conjugation tables",
                m,
                data.values.len(),
                data.restrictions.len(),
                data.transfers.len(),
                data.conjugations.len()
            )));
        }
        let orbits: Vec<GSet> = (0..m).map(|i| burnside.orbit(i)).collect();
        let mut problems: Vec<String> = Vec::new();

        // Table completeness and endpoint shapes.
        for i in 0..m {
            let info = classes.class(i);
            let label = classes.label(i);
            let below: Vec<&Subgroup> = classes
                .subgroups()
                .iter()
                .filter(|s| s.is_contained_in(&info.rep))
                .collect();
            for sub in &below {
                let key = sub.elements().to_vec();
                let ck = classes.class_index(sub);
                let tables = [
                    (&data.restrictions[i], "restriction", i, ck),
                    (&data.transfers[i], "transfer", ck, i),
                ];
                for (table, name, src, tgt) in tables {
                    match table.get(&key) {
                        None => problems.push(format!(
                            "{} table at {} is missing the subgroup with elements {:?}",
                            name, label, key
                        )),
                        Some(h) => {
                            if h.src() != &data.values[src] || h.tgt() != &data.values[tgt] {
                                problems.push(format!(
                                    "{} at {} for subgroup {:?} must map the {} value to the {} value",
                                    name,
                                    label,
                                    key,
                                    classes.label(src),
                                    classes.label(tgt)
                                ));
                            }
                        }
                    }
                }
            }
            for name in ["restriction", "transfer"] {
                let table = if name == "restriction" {
                    &data.restrictions[i]
                } else {
                    &data.transfers[i]
                };
                for key in table.keys() {
                    if !below.iter().any(|s| s.elements() == key.as_slice()) {
                        problems.push(format!(
                            "{} table at {} has an entry {:?} that is not a subgroup of the representative",
                            name, label, key
                        ));
                    }
                }
            }
            for &n in info.normalizer.elements() {
                match data.conjugations[i].get(&n) {
                    None => problems.push(format!(
                        "conjugation table at {} is missing normalizer element {}",
                        label, n
                    )),
                    Some(h) => {
                        if h.src() != &data.values[i] || h.tgt() != &data.values[i] {
                            problems.push(format!(
                                "conjugation by {} at {} must be an endomorphism of the {} value",
                                n, label, label
                            ));
                        }
                    }
                }
            }
            for n in data.conjugations[i].keys() {
                if !info.normalizer.contains(*n) {
                    problems.push(format!(
                        "conjugation table at {} has an entry for {}, which does not normalize the representative",
                        label, n
                    ));
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::MackeyInvalid(problems));
        }

        // Unit laws and multiplicativity of conjugation.
        let group = classes.group();
        for i in 0..m {
            let info = classes.class(i);
            let label = classes.label(i);
            let id = AbHom::identity(&data.values[i]);
            let full = info.rep.elements().to_vec();
            if !data.restrictions[i][&full].eq_mod(&id) {
                problems.push(format!(
                    "restriction at {} along the full subgroup is not the identity",
                    label
                ));
            }
            if !data.transfers[i][&full].eq_mod(&id) {
                problems.push(format!(
                    "transfer at {} along the full subgroup is not the identity",
                    label
                ));
            }
            for &h in info.rep.elements() {
                if !data.conjugations[i][&h].eq_mod(&id) {
                    problems.push(format!(
                        "conjugation by element {} at {} must be the identity: the element lies in the subgroup",
                        h, label
                    ));
                }
            }
            // A homomorphism property c[g·n] = c[g]∘c[n] over a generating
            // set of the normalizer proves it for all products.
            let gens = generating_set(group, info.normalizer.elements());
            for &n in info.normalizer.elements() {
                for &g in &gens {
                    let gn = group.mul(g, n);
                    let lhs = &data.conjugations[i][&gn];
                    let rhs = data.conjugations[i][&g].compose(&data.conjugations[i][&n]);
                    if !lhs.eq_mod(&rhs) {
                        problems.push(format!(
                            "conjugation at {} is not multiplicative: the entry at {} differs from the composite of the entries at {} and {}",
                            label, gn, g, n
                        ));
                    }
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::MackeyInvalid(problems));
        }

        // Compile every basis key, then check functoriality of composition.
        let mut bases: Vec<Vec<Vec<TransitiveSpanKey>>> = vec![vec![Vec::new(); m]; m];
        let mut compiled: Vec<Vec<Vec<AbHom>>> = vec![vec![Vec::new(); m]; m];
        for j in 0..m {
            for i in 0..m {
                let keys = burnside.basis(&orbits[j], &orbits[i]);
                compiled[j][i] = keys
                    .iter()
                    .map(|&k| compile_key(classes, &orbits, &data, j, i, k))
                    .collect();
                bases[j][i] = keys;
            }
        }
        for j in 0..m {
            for i in 0..m {
                for l in 0..m {
                    for (t1, k1) in bases[j][i].iter().enumerate() {
                        for (t2, k2) in bases[i][l].iter().enumerate() {
                            let coeffs = burnside
                                .compose_keys(&orbits[j], &orbits[i], &orbits[l], *k1, *k2)?;
                            let lhs = compiled[j][i][t1].compose(&compiled[i][l][t2]);
                            let rhs = lincomb(
                                &data.values[l],
                                &data.values[j],
                                coeffs.iter().copied().zip(compiled[j][l].iter()),
                            );
                            if !lhs.eq_mod(&rhs) {
                                problems.push(format!(
                                    "composition failure over {} ← {} ← {}: the action of {} composed with the action of {} does not match the composite span, coefficients {:?} over the basis of {} ← {}",
                                    classes.label(j),
                                    classes.label(i),
                                    classes.label(l),
                                    k1,
                                    k2,
                                    coeffs,
                                    classes.label(j),
                                    classes.label(l)
                                ));
                            }
                        }
                    }
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::MackeyInvalid(problems));
        }
        Ok(MackeyFunctor {
            burnside,
            orbits,
            data,
            bases,
            compiled,
        })
    }

    pub fn group(&self) -> &Group {
        self.burnside.group()
    }

    pub fn classes(&self) -> &SubgroupClasses {
        self.burnside.classes()
    }

    pub fn burnside(&self) -> &Burnside {
        &self.burnside
    }

    pub fn values(&self) -> &[AbGroup] {
        &self.data.values
    }

    pub fn value(&self, i: usize) -> &AbGroup {
        &self.data.values[i]
    }

    /// A clone of the raw generator tables.
    pub fn data(&self) -> MackeyData {
        self.data.clone()
    }

    pub fn restriction(&self, i: usize, k: &Subgroup) -> Option<&AbHom> {
        self.data.restrictions[i].get(k.elements())
    }

    pub fn transfer(&self, i: usize, k: &Subgroup) -> Option<&AbHom> {
        self.data.transfers[i].get(k.elements())
    }

    pub fn conjugation(&self, i: usize, n: usize) -> Option<&AbHom> {
        self.data.conjugations[i].get(&n)
    }

    /// Basis keys of the hom group `G/H_j → G/H_i`.
    pub fn hom_basis(&self, j: usize, i: usize) -> &[TransitiveSpanKey] {
        &self.bases[j][i]
    }

    /// Compiled action `M(H_i) → M(H_j)` of the `t`-th basis key.
    pub fn key_action(&self, j: usize, i: usize, t: usize) -> &AbHom {
        &self.compiled[j][i][t]
    }

    /// Splits a G-set into contiguous orbit blocks, each required to be the
    /// representative coset space of its class, and forms the direct-sum
    /// value.
    fn blocks(&self, x: &GSet) -> Result<Blocks> {
        if x.group() != self.group() {
            return Err(Error::GroupMismatch);
        }
        let classes = self.classes();
        let mut block_classes = Vec::new();
        let mut point_offsets = vec![0usize];
        let mut gen_offsets = vec![0usize];
        let mut value = AbGroup::zero();
        for orbit in x.orbits() {
            let start = *point_offsets.last().unwrap();
            let contiguous: Vec<usize> = (start..start + orbit.len()).collect();
            if orbit != contiguous {
                return Err(Error::ObjectMismatch(format!(
                    "orbit {:?} is not a contiguous block; span actions need objects assembled \
                     as disjoint unions of class-representative coset spaces",
                    orbit
                )));
            }
            let sub = x.restrict_to_orbit(&orbit);
            let i = classes.class_index(&sub.stabilizer(0));
            if sub != self.orbits[i] {
                return Err(Error::ObjectMismatch(format!(
                    "the orbit at points {}..{} is not the representative coset space of class {}",
                    start,
                    start + orbit.len(),
                    classes.label(i)
                )));
            }
            block_classes.push(i);
            point_offsets.push(start + orbit.len());
            gen_offsets.push(gen_offsets.last().unwrap() + self.data.values[i].generators());
            value = value.direct_sum(&self.data.values[i]);
        }
        Ok(Blocks {
            classes: block_classes,
            point_offsets,
            gen_offsets,
            value,
        })
    }

    fn add_key_block(
        &self,
        mat: &mut IntMat,
        ba: &Blocks,
        bb: &Blocks,
        key: TransitiveSpanKey,
        coeff: i64,
    ) -> Result<()> {
        let t = ba.block_of(key.a);
        let s = bb.block_of(key.b);
        let local = TransitiveSpanKey {
            stab_class: key.stab_class,
            a: key.a - ba.point_offsets[t],
            b: key.b - bb.point_offsets[s],
        };
        let (jc, ic) = (ba.classes[t], bb.classes[s]);
        let idx = self.bases[jc][ic].binary_search(&local).map_err(|_| {
            Error::Invalid(format!(
                "span key {} does not lie in the canonical hom basis",
                local
            ))
        })?;
        let h = self.compiled[jc][ic][idx].matrix();
        for r in 0..h.rows() {
            for c in 0..h.cols() {
                let row = ba.gen_offsets[t] + r;
                let col = bb.gen_offsets[s] + c;
                let v = mat.at(row, col) + coeff * h.at(r, c);
                mat.set(row, col, v);
            }
        }
        Ok(())
    }

    /// Contravariant action of a span `A → B` on values: a homomorphism
    /// `M(B) → M(A)`, additive over the orbits of the apex.  Both feet must
    /// be disjoint unions of class-representative coset spaces.
    pub fn span_action(&self, s: &Span) -> Result<AbHom> {
        let ba = self.blocks(s.source())?;
        let bb = self.blocks(s.target())?;
        let mut mat = IntMat::zero(ba.value.generators(), bb.value.generators());
        for key in s.orbit_keys(self.classes()) {
            self.add_key_block(&mut mat, &ba, &bb, key, 1)?;
        }
        Ok(AbHom::new_unchecked(bb.value, ba.value, mat))
    }

    /// Linear extension of [`MackeyFunctor::span_action`] to a hom-group
    /// element given by coefficients over the basis of `A → B`.
    pub fn element_action(&self, a: &GSet, b: &GSet, coeffs: &[i64]) -> Result<AbHom> {
        let ba = self.blocks(a)?;
        let bb = self.blocks(b)?;
        let basis = self.burnside.basis(a, b);
        if coeffs.len() != basis.len() {
            return Err(Error::Invalid(format!(
                "coefficient vector has length {}, but the hom basis has {} keys",
                coeffs.len(),
                basis.len()
            )));
        }
        let mut mat = IntMat::zero(ba.value.generators(), bb.value.generators());
        for (&c, &key) in coeffs.iter().zip(basis.iter()) {
            if c != 0 {
                self.add_key_block(&mut mat, &ba, &bb, key, c)?;
            }
        }
        Ok(AbHom::new_unchecked(bb.value, ba.value, mat))
    }
}

struct Blocks {
    classes: Vec<usize>,
    /// Fenced point offsets, length `blocks + 1`.
    point_offsets: Vec<usize>,
    /// Fenced generator offsets into the direct-sum value.
    gen_offsets: Vec<usize>,
    value: AbGroup,
}

impl Blocks {
    fn block_of(&self, p: usize) -> usize {
        self.point_offsets.partition_point(|&o| o <= p) - 1
    }
}

/// The Mackey functor with all values zero.
pub fn zero_mackey(group: &Group) -> Result<MackeyFunctor> {
    constant_mackey(group, &AbGroup::zero())
}

/// The constant Mackey functor on a fixed abelian group: restrictions and
/// conjugations are identities, transfers multiply by the subgroup index.
pub fn constant_mackey(group: &Group, value: &AbGroup) -> Result<MackeyFunctor> {
    let classes = group.subgroup_classes();
    let m = classes.len();
    let values = vec![value.clone(); m];
    let mut restrictions = vec![HomsBySubgroup::new(); m];
    let mut transfers = vec![HomsBySubgroup::new(); m];
    let mut conjugations = vec![HomsByElement::new(); m];
    for i in 0..m {
        let info = classes.class(i);
        for sub in classes.subgroups() {
            if !sub.is_contained_in(&info.rep) {
                continue;
            }
            let index = (info.rep.order() / sub.order()) as i64;
            restrictions[i].insert(sub.elements().to_vec(), AbHom::identity(value));
            transfers[i].insert(sub.elements().to_vec(), AbHom::scale(value, index));
        }
        for &n in info.normalizer.elements() {
            conjugations[i].insert(n, AbHom::identity(value));
        }
    }
    MackeyFunctor::new(
        group,
        MackeyData {
            values,
            restrictions,
            transfers,
            conjugations,
        },
    )
}

/// The Mackey functor represented by a finite G-set `x`: the value at the
/// class of `H` is the free abelian hom group `G/H → x`, and all generators
/// act by composition with the canonical projection, its reverse, and
/// twists by normalizer elements.
pub fn burnside_mackey(x: &GSet) -> Result<MackeyFunctor> {
    let burnside = Burnside::new(x.group().clone());
    let (values, restrictions, transfers, conjugations) = {
        let classes = burnside.classes();
        let m = classes.len();
        let orbits: Vec<GSet> = (0..m).map(|i| burnside.orbit(i)).collect();
        let enriched: Vec<(AbGroup, Vec<TransitiveSpanKey>)> =
            orbits.iter().map(|o| burnside.pi0_enrichment(o, x)).collect();

        // Pre-composition with a span `C → D`, as a matrix from the basis of
        // `D → x` to the basis of `C → x`.
        let precompose = |span: &Span, c: usize, d: usize| -> Result<AbHom> {
            let elt = burnside.element_of_span(span)?;
            let (c_group, c_basis) = &enriched[c];
            let (d_group, d_basis) = &enriched[d];
            let mut mat = IntMat::zero(c_basis.len(), d_basis.len());
            for col in 0..d_basis.len() {
                let mut unit = vec![0i64; d_basis.len()];
                unit[col] = 1;
                let out = burnside.compose_elements(&orbits[c], &orbits[d], x, &elt, &unit)?;
                for (row, &v) in out.iter().enumerate() {
                    mat.set(row, col, v);
                }
            }
            AbHom::new(d_group.clone(), c_group.clone(), mat)
        };

        let mut restrictions = vec![HomsBySubgroup::new(); m];
        let mut transfers = vec![HomsBySubgroup::new(); m];
        let mut conjugations = vec![HomsByElement::new(); m];
        for i in 0..m {
            let info = classes.class(i);
            for sub in classes.subgroups() {
                if !sub.is_contained_in(&info.rep) {
                    continue;
                }
                let ck = classes.class_index(sub);
                let u = classes.conjugator_to_rep(sub);
                let proj = coset_map(&orbits[ck], &orbits[i], u)?;
                let down = Span::new(GMap::identity(&orbits[ck]), proj.clone())?;
                restrictions[i].insert(sub.elements().to_vec(), precompose(&down, ck, i)?);
                let up = Span::new(proj, GMap::identity(&orbits[ck]))?;
                transfers[i].insert(sub.elements().to_vec(), precompose(&up, i, ck)?);
            }
            for &n in info.normalizer.elements() {
                let twist = Span::new(
                    GMap::identity(&orbits[i]),
                    coset_map(&orbits[i], &orbits[i], n)?,
                )?;
                conjugations[i].insert(n, precompose(&twist, i, i)?);
            }
        }
        let values = enriched.into_iter().map(|(g, _)| g).collect();
        (values, restrictions, transfers, conjugations)
    };
    MackeyFunctor::assemble(
        burnside,
        MackeyData {
            values,
            restrictions,
            transfers,
            conjugations,
        },
    )
}

/// Per-class permutative-category data with a span action, the common input
/// shape of the π₀-level constructions.
pub enum PermCatFamily {
    /// One discrete permutative category per class, built from the values of
    /// a Mackey functor.
    Discrete(DiscreteFamily),
    /// The span categories `G/H ← E → x` of a fixed G-set, represented by
    /// their canonical component bases.
    Representable(RepresentableFamily),
}

impl PermCatFamily {
    pub fn group(&self) -> &Group {
        match self {
            PermCatFamily::Discrete(f) => f.mackey.group(),
            PermCatFamily::Representable(f) => f.burnside.group(),
        }
    }

    pub fn as_discrete(&self) -> Option<&DiscreteFamily> {
        match self {
            PermCatFamily::Discrete(f) => Some(f),
            PermCatFamily::Representable(_) => None,
        }
    }

    pub fn as_representable(&self) -> Option<&RepresentableFamily> {
        match self {
            PermCatFamily::Representable(f) => Some(f),
            PermCatFamily::Discrete(_) => None,
        }
    }
}

/// Discrete categories on the values of a Mackey functor.  Spans act through
/// the functor's compiled table, so the action is constant on isomorphism
/// classes of spans: the data factors through the group-completed hom groups
/// by construction.
pub struct DiscreteFamily {
    mackey: MackeyFunctor,
    /// Explicit object tables for the finite values within cap; `None` keeps
    /// the value symbolic (its category is discrete, so nothing is lost).
    categories: Vec<Option<(FinPermCat, TabulatedGroup)>>,
}

impl DiscreteFamily {
    pub fn mackey(&self) -> &MackeyFunctor {
        &self.mackey
    }

    pub fn category(&self, i: usize) -> Option<&FinPermCat> {
        self.categories[i].as_ref().map(|(c, _)| c)
    }
}

/// Span categories of a fixed G-set, one per subgroup class, represented by
/// their canonical transitive-span bases.
pub struct RepresentableFamily {
    burnside: Burnside,
    x: GSet,
    bases: Vec<Vec<TransitiveSpanKey>>,
}

impl RepresentableFamily {
    pub fn gset(&self) -> &GSet {
        &self.x
    }

    pub fn basis(&self, i: usize) -> &[TransitiveSpanKey] {
        &self.bases[i]
    }

    /// Number of components of each span category, in class order.
    pub fn basis_sizes(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }
}

/// Re-expresses a Mackey functor as a family of discrete permutative
/// categories.  Values that are finite of order at most the monoid cap are
/// tabulated into explicit validated categories; the rest stay symbolic.
pub fn mackey_to_categories(m: MackeyFunctor, caps: &Caps) -> Result<PermCatFamily> {
    let categories = m
        .values()
        .iter()
        .map(|v| {
            let small = v.order().is_some_and(|o| o <= caps.monoid_elements as u128);
            if small {
                let tab = TabulatedGroup::new(v, caps.monoid_elements)?;
                let cat = discrete_permcat(&tab.monoid);
                Ok(Some((cat, tab)))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PermCatFamily::Discrete(DiscreteFamily {
        mackey: m,
        categories,
    }))
}

/// The family of span categories `G/H ← E → x` over all classes, the
/// categorical form of the G-set `x`.
pub fn suspension_categories(x: &GSet) -> PermCatFamily {
    let burnside = Burnside::new(x.group().clone());
    let bases = (0..burnside.classes().len())
        .map(|i| burnside.basis(&burnside.orbit(i), x))
        .collect();
    PermCatFamily::Representable(RepresentableFamily {
        burnside,
        x: x.clone(),
        bases,
    })
}

/// Group-completes the components of each category in the family and
/// reassembles the induced generator maps into a validated Mackey functor.
///
/// For the discrete family the components of an explicit category are its
/// objects, so each completed value is presented with one generator per
/// element and the generator maps are induced by honest functors between
/// the categories; symbolic values pass through unchanged.  For the
/// representable family the value is the free abelian group on the
/// component basis of the span category, and the generators act by
/// composing spans and reading off components.
pub fn pi0_mackey(fam: &PermCatFamily) -> Result<MackeyFunctor> {
    match fam {
        PermCatFamily::Discrete(f) => pi0_discrete(f),
        PermCatFamily::Representable(f) => pi0_representable(f),
    }
}

fn pi0_discrete(fam: &DiscreteFamily) -> Result<MackeyFunctor> {
    let m = fam.mackey.classes().len();
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        match &fam.categories[i] {
            Some((cat, _)) => {
                let (monoid, _) = pi0_objects(cat)?;
                values.push(group_completion(&monoid));
            }
            None => values.push(fam.mackey.value(i).clone()),
        }
    }

    // Transport a generator map to the completed presentations.  Between two
    // explicit categories this goes through an actual functor and its induced
    // map on completions; across a symbolic end the canonical identification
    // (element ↦ its component class) is applied directly.
    let convert = |hom: &AbHom, src: usize, tgt: usize| -> Result<AbHom> {
        match (&fam.categories[src], &fam.categories[tgt]) {
            (Some((cs, ts)), Some((ct, tt))) => {
                let ob = ts
                    .reps
                    .iter()
                    .map(|v| tt.index_of(&hom.apply(v)))
                    .collect();
                let lax = lax_from_monoid_map(cs, ct, ob)?;
                induced_map_on_completions(&lax)
            }
            (Some((_, ts)), None) => {
                let mut mat = IntMat::zero(values[tgt].generators(), ts.reps.len());
                for (col, rep) in ts.reps.iter().enumerate() {
                    for (row, &v) in hom.apply(rep).iter().enumerate() {
                        mat.set(row, col, v);
                    }
                }
                AbHom::new(values[src].clone(), values[tgt].clone(), mat)
            }
            (None, Some((_, tt))) => {
                let mut mat = IntMat::zero(values[tgt].generators(), hom.src().generators());
                for col in 0..hom.src().generators() {
                    mat.set(tt.index_of(&hom.matrix().col(col)), col, 1);
                }
                AbHom::new(values[src].clone(), values[tgt].clone(), mat)
            }
            (None, None) => Ok(hom.clone()),
        }
    };

    let old = fam.mackey.data();
    let classes = fam.mackey.classes();
    let mut restrictions = vec![HomsBySubgroup::new(); m];
    let mut transfers = vec![HomsBySubgroup::new(); m];
    let mut conjugations = vec![HomsByElement::new(); m];
    for i in 0..m {
        for (key, hom) in &old.restrictions[i] {
            let ck = classes.class_index(&Subgroup::generated(classes.group(), key));
            restrictions[i].insert(key.clone(), convert(hom, i, ck)?);
        }
        for (key, hom) in &old.transfers[i] {
            let ck = classes.class_index(&Subgroup::generated(classes.group(), key));
            transfers[i].insert(key.clone(), convert(hom, ck, i)?);
        }
        for (&n, hom) in &old.conjugations[i] {
            conjugations[i].insert(n, convert(hom, i, i)?);
        }
    }
    MackeyFunctor::new(
        fam.mackey.group(),
        MackeyData {
            values,
            restrictions,
            transfers,
            conjugations,
        },
    )
}

fn pi0_representable(fam: &RepresentableFamily) -> Result<MackeyFunctor> {
    let classes = fam.burnside.classes();
    let group = classes.group();
    let m = classes.len();
    let x = &fam.x;
    let orbits: Vec<GSet> = (0..m).map(|i| fam.burnside.orbit(i)).collect();
    let values: Vec<AbGroup> = fam.bases.iter().map(|b| AbGroup::free(b.len())).collect();

    // The induced map on completed components of pre-composition by a span
    // `C → D`: compose with each basis representative of `D → x` and count
    // the components of the result.  This stays in raw span calculus — no
    // cached structure constants — so it is an independent assembly of the
    // same functor that `burnside_mackey` builds.
    let induced = |span: &Span, c: usize, d: usize| -> Result<AbHom> {
        let mut mat = IntMat::zero(fam.bases[c].len(), fam.bases[d].len());
        for (col, &key) in fam.bases[d].iter().enumerate() {
            let rep = representative_span(key, &orbits[d], x, classes)?;
            let composite = span.then(&rep)?;
            for k in composite.orbit_keys(classes) {
                let row = fam.bases[c].binary_search(&k).map_err(|_| {
                    Error::Invalid(format!(
                        "composite span key {} is missing from the component basis",
                        k
                    ))
                })?;
                mat.set(row, col, mat.at(row, col) + 1);
            }
        }
        AbHom::new(values[d].clone(), values[c].clone(), mat)
    };

    let mut restrictions = vec![HomsBySubgroup::new(); m];
    let mut transfers = vec![HomsBySubgroup::new(); m];
    let mut conjugations = vec![HomsByElement::new(); m];
    for i in 0..m {
        let info = classes.class(i);
        for sub in classes.subgroups() {
            if !sub.is_contained_in(&info.rep) {
                continue;
            }
            let ck = classes.class_index(sub);
            let u = classes.conjugator_to_rep(sub);
            let proj = coset_map(&orbits[ck], &orbits[i], u)?;
            let down = Span::new(GMap::identity(&orbits[ck]), proj.clone())?;
            restrictions[i].insert(sub.elements().to_vec(), induced(&down, ck, i)?);
            let up = Span::new(proj, GMap::identity(&orbits[ck]))?;
            transfers[i].insert(sub.elements().to_vec(), induced(&up, i, ck)?);
        }
        for &n in info.normalizer.elements() {
            let twist = Span::new(
                GMap::identity(&orbits[i]),
                coset_map(&orbits[i], &orbits[i], n)?,
            )?;
            conjugations[i].insert(n, induced(&twist, i, i)?);
        }
    }
    MackeyFunctor::new(
        group,
        MackeyData {
            values,
            restrictions,
            transfers,
            conjugations,
        },
    )
}

/// Candidate isomorphisms `v1 → v2`, generated from the Smith decomposition
/// of `v1`: one image choice per nontrivial canonical coordinate.  Returns
/// the candidates and whether the list is exhaustive.
fn iso_candidates(v1: &AbGroup, v2: &AbGroup, budget: usize) -> Result<(Vec<AbHom>, bool)> {
    let mut out = Vec::new();
    if v1 == v2 {
        out.push(AbHom::identity(v1));
    }
    let n1 = v1.generators();
    let n2 = v2.generators();
    let snf = smith_normal_form(v1.relations());
    // Nontrivial canonical coordinates of v1: order 0 means a free factor.
    let coords: Vec<(usize, i64)> = (0..n1)
        .map(|i| (i, snf.diagonal(i).abs()))
        .filter(|&(_, d)| d != 1)
        .collect();

    // Image choices per coordinate.
    let choices: Vec<Vec<Vec<i64>>> = match v2.enumerate_elements() {
        Some(elements) => coords
            .iter()
            .map(|&(_, d)| {
                elements
                    .iter()
                    .filter(|e| {
                        let scaled: Vec<i64> = e.iter().map(|&v| v * d).collect();
                        v2.is_zero_element(&scaled)
                    })
                    .cloned()
                    .collect()
            })
            .collect(),
        None => {
            // Free rank present: bound the entries instead of enumerating.
            let mut vectors = vec![vec![0i64; n2]];
            for pos in 0..n2 {
                vectors = vectors
                    .into_iter()
                    .flat_map(|v| {
                        (-2..=2).map(move |e| {
                            let mut w = v.clone();
                            w[pos] = e;
                            w
                        })
                    })
                    .collect();
                if vectors.len() > budget {
                    break;
                }
            }
            coords
                .iter()
                .map(|&(_, d)| {
                    vectors
                        .iter()
                        .filter(|e| {
                            d == 0 || {
                                let scaled: Vec<i64> = e.iter().map(|&v| v * d).collect();
                                v2.is_zero_element(&scaled)
                            }
                        })
                        .cloned()
                        .collect()
                })
                .collect()
        }
    };
    let exhaustive = v2.enumerate_elements().is_some();

    let total = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    match total {
        Some(0) => return Ok((out, exhaustive)),
        Some(t) if t <= budget => {}
        _ => {
            if out.is_empty() {
                return Err(Error::CapExceeded {
                    cap: "mackey_iso_search",
                    limit: budget,
                    needed: total.unwrap_or(usize::MAX),
                });
            }
            return Ok((out, false));
        }
    }

    // Mixed-radix walk over the image choices.
    let k = coords.len();
    let mut counter = vec![0usize; k];
    loop {
        let mut mat = IntMat::zero(n2, n1);
        for (slot, &(coord, _)) in coords.iter().enumerate() {
            let image = &choices[slot][counter[slot]];
            for c in 0..n1 {
                let weight = snf.u.at(coord, c);
                if weight != 0 {
                    for (r, &v) in image.iter().enumerate() {
                        mat.set(r, c, mat.at(r, c) + v * weight);
                    }
                }
            }
        }
        if let Ok(h) = AbHom::new(v1.clone(), v2.clone(), mat) {
            if h.is_isomorphism() && !out.iter().any(|o: &AbHom| o.eq_mod(&h)) {
                out.push(h);
            }
        }
        // Increment.
        let mut slot = k;
        loop {
            if slot == 0 {
                return Ok((out, exhaustive));
            }
            slot -= 1;
            counter[slot] += 1;
            if counter[slot] < choices[slot].len() {
                break;
            }
            counter[slot] = 0;
        }
    }
}

/// Searches for per-level isomorphisms `m1(H) → m2(H)` commuting with every
/// restriction, transfer and conjugation generator.
///
/// Levels with matching finite values are searched exhaustively (subject to
/// the budget), so `None` is definitive there; levels with free rank are
/// searched over entry-bounded matrices after seeding the identity, and a
/// failed bounded search reports a cap error rather than claiming absence.
pub fn mackey_iso(m1: &MackeyFunctor, m2: &MackeyFunctor) -> Result<Option<Vec<AbHom>>> {
    if m1.group() != m2.group() {
        return Err(Error::GroupMismatch);
    }
    let m = m1.classes().len();
    for i in 0..m {
        if m1.value(i).invariants() != m2.value(i).invariants() {
            return Ok(None);
        }
    }
    const BUDGET: usize = 1 << 14;
    let mut candidates = Vec::with_capacity(m);
    let mut exhaustive = true;
    for i in 0..m {
        let (cands, complete) = iso_candidates(m1.value(i), m2.value(i), BUDGET)?;
        exhaustive &= complete;
        candidates.push(cands);
    }

    let d1 = m1.data();
    let d2 = m2.data();
    let classes = m1.classes();
    // Check every generator whose endpoint levels are all assigned and
    // involve the last-assigned level.
    let consistent = |chosen: &[AbHom]| -> bool {
        let last = chosen.len() - 1;
        for i in 0..chosen.len() {
            for (key, r1) in &d1.restrictions[i] {
                let ck = classes.class_index(&Subgroup::generated(classes.group(), key));
                if ck >= chosen.len() || (i != last && ck != last) {
                    continue;
                }
                if !chosen[ck].compose(r1).eq_mod(&d2.restrictions[i][key].compose(&chosen[i])) {
                    return false;
                }
                let t1 = &d1.transfers[i][key];
                if !chosen[i].compose(t1).eq_mod(&d2.transfers[i][key].compose(&chosen[ck])) {
                    return false;
                }
            }
            if i == last {
                for (n, c1) in &d1.conjugations[i] {
                    if !chosen[i].compose(c1).eq_mod(&d2.conjugations[i][n].compose(&chosen[i])) {
                        return false;
                    }
                }
            }
        }
        true
    };

    fn search(
        level: usize,
        m: usize,
        candidates: &[Vec<AbHom>],
        chosen: &mut Vec<AbHom>,
        consistent: &dyn Fn(&[AbHom]) -> bool,
    ) -> bool {
        if level == m {
            return true;
        }
        for cand in &candidates[level] {
            chosen.push(cand.clone());
            if consistent(chosen) && search(level + 1, m, candidates, chosen, consistent) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(m);
    if search(0, m, &candidates, &mut chosen, &consistent) {
        return Ok(Some(chosen));
    }
    if exhaustive {
        Ok(None)
    } else {
        Err(Error::CapExceeded {
            cap: "mackey_iso_search",
            limit: BUDGET,
            needed: BUDGET + 1,
        })
    }
}
