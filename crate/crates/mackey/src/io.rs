//! JSON interchange formats.
//!
//! Permutation images, G-set points, and group-element indices are 1-based
//! on the wire and 0-based internally; the identity element is always
//! index 1 in JSON.  Subgroup-class indices, basis positions, and all
//! category tables are 0-based in both representations.  Every `to_*`
//! conversion validates ranges, so malformed input surfaces as
//! [`Error::Invalid`] rather than a panic or a silently shifted index.

use crate::abelian::{AbGroup, AbHom, IntMat};
use crate::functor::{HomsByElement, HomsBySubgroup, MackeyData, MackeyFunctor};
use crate::group::{Group, Subgroup};
use crate::gset::{GMap, GSet};
use crate::permcat::FinPermCat;
use crate::perm::Permutation;
use crate::span::{Span, TransitiveSpanKey};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|&x| x + 1).collect()
}

fn zero_based(xs: &[usize], limit: usize, what: &str) -> Result<Vec<usize>> {
    xs.iter()
        .map(|&x| {
            if x == 0 || x > limit {
                Err(Error::Invalid(format!(
                    "{what} index {x} out of range 1..={limit}"
                )))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

/// `{"degree": n, "generators": [[images…]]}` with 1-based images.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &Group) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::one_based).collect(),
        }
    }

    pub fn to_group(&self) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| {
                let p = Permutation::from_one_based(imgs)?;
                if p.degree() != self.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        got: p.degree(),
                    });
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Group::new(self.degree, gens)
    }
}

/// A group given either inline or by a well-known name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Named(String),
    Inline(GroupJson),
}

impl GroupInput {
    pub fn to_group(&self) -> Result<Group> {
        match self {
            GroupInput::Inline(j) => j.to_group(),
            GroupInput::Named(name) => named_group(name),
        }
    }
}

/// Built-in groups addressable by name in any `"group"` field.
pub fn named_group(name: &str) -> Result<Group> {
    let gens: (usize, Vec<Vec<usize>>) = match name.to_ascii_lowercase().as_str() {
        "trivial" => (1, vec![]),
        "c2" => (2, vec![vec![2, 1]]),
        "c3" => (3, vec![vec![2, 3, 1]]),
        "c4" => (4, vec![vec![2, 3, 4, 1]]),
        "c5" => (5, vec![vec![2, 3, 4, 5, 1]]),
        "c6" => (6, vec![vec![2, 3, 4, 5, 6, 1]]),
        "c2xc2" => (4, vec![vec![2, 1, 3, 4], vec![1, 2, 4, 3]]),
        "s3" => (3, vec![vec![2, 3, 1], vec![2, 1, 3]]),
        "d4" => (4, vec![vec![2, 3, 4, 1], vec![3, 2, 1, 4]]),
        "a4" => (4, vec![vec![2, 3, 1, 4], vec![2, 1, 4, 3]]),
        "s4" => (4, vec![vec![2, 3, 4, 1], vec![2, 1, 3, 4]]),
        "q8" => (
            8,
            vec![
                vec![2, 5, 4, 7, 6, 1, 8, 3],
                vec![3, 8, 5, 2, 7, 4, 1, 6],
            ],
        ),
        _ => {
            return Err(Error::Invalid(format!(
                "unknown group name {name:?}; use an inline \
                 {{\"degree\", \"generators\"}} object"
            )))
        }
    };
    let (degree, generators) = gens;
    GroupJson { degree, generators }.to_group()
}

/// `{"group": …, "n": k, "action": [[images…] per generator]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSetJson {
    pub group: GroupInput,
    pub n: usize,
    pub action: Vec<Vec<usize>>,
}

impl GSetJson {
    pub fn from_gset(x: &GSet) -> Self {
        GSetJson {
            group: GroupInput::Inline(GroupJson::from_group(x.group())),
            n: x.len(),
            action: x
                .generator_action()
                .iter()
                .map(Permutation::one_based)
                .collect(),
        }
    }

    pub fn to_gset(&self) -> Result<GSet> {
        let group = self.group.to_group()?;
        let action = self
            .action
            .iter()
            .map(|imgs| {
                if imgs.len() != self.n {
                    return Err(Error::DegreeMismatch {
                        expected: self.n,
                        got: imgs.len(),
                    });
                }
                Permutation::from_one_based(imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        GSet::new(group, self.n, action)
    }
}

/// `{"source": gset, "target": gset, "images": […]}` with 1-based images.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GMapJson {
    pub source: GSetJson,
    pub target: GSetJson,
    pub images: Vec<usize>,
}

impl GMapJson {
    pub fn from_gmap(f: &GMap) -> Self {
        GMapJson {
            source: GSetJson::from_gset(f.source()),
            target: GSetJson::from_gset(f.target()),
            images: one_based(f.images()),
        }
    }

    pub fn to_gmap(&self) -> Result<GMap> {
        let source = self.source.to_gset()?;
        let target = self.target.to_gset()?;
        let images = zero_based(&self.images, target.len(), "image point")?;
        GMap::new(source, target, images)
    }
}

/// `{"left": gmap, "right": gmap}`; the legs must share their apex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpanJson {
    pub left: GMapJson,
    pub right: GMapJson,
}

impl SpanJson {
    pub fn from_span(s: &Span) -> Self {
        SpanJson {
            left: GMapJson::from_gmap(s.left()),
            right: GMapJson::from_gmap(s.right()),
        }
    }

    pub fn to_span(&self) -> Result<Span> {
        Span::new(self.left.to_gmap()?, self.right.to_gmap()?)
    }
}

/// A transitive-span basis key `{"L": class-index, "a": point, "b": point}`
/// with a 0-based stabilizer-class index and 1-based leg points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KeyJson {
    #[serde(rename = "L")]
    pub l: usize,
    pub a: usize,
    pub b: usize,
}

impl KeyJson {
    pub fn from_key(k: &TransitiveSpanKey) -> Self {
        KeyJson {
            l: k.stab_class,
            a: k.a + 1,
            b: k.b + 1,
        }
    }
}

/// One generator table of a Mackey functor level: the subgroup as 1-based
/// element indices, and the matrix of the stored homomorphism on the
/// generators of its endpoints.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupHomJson {
    pub subgroup: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

/// A conjugation table entry: a 1-based group-element index and a matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementHomJson {
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

/// One level of a Mackey functor, at the subgroup class whose representative
/// has the given 1-based element indices.  The value is presented as
/// `generators` free generators modulo the columns of `relations`
/// (a `generators × k` matrix; `[]` means no relations).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MackeyLevelJson {
    pub subgroup: Vec<usize>,
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
    pub restrictions: Vec<SubgroupHomJson>,
    pub transfers: Vec<SubgroupHomJson>,
    pub conjugations: Vec<ElementHomJson>,
}

/// `{"group": …, "levels": […]}` with one level per subgroup class in the
/// global class order (ascending subgroup order, ties by element list).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MackeyJson {
    pub group: GroupInput,
    pub levels: Vec<MackeyLevelJson>,
}

/// Builds a matrix from JSON rows, reading `[]` as the zero `r × c` matrix.
fn mat_from_json(rows: &[Vec<i64>], r: usize, c: usize) -> Result<IntMat> {
    if rows.is_empty() {
        return Ok(IntMat::zero(r, c));
    }
    IntMat::from_rows(rows.to_vec())
}

impl MackeyJson {
    pub fn from_functor(m: &MackeyFunctor) -> Self {
        let classes = m.classes();
        let data = m.data();
        let levels = (0..classes.len())
            .map(|i| {
                let hom_rows = |h: &AbHom| h.matrix().to_rows();
                MackeyLevelJson {
                    subgroup: one_based(classes.class(i).rep.elements()),
                    generators: data.values[i].generators(),
                    relations: data.values[i].relations().to_rows(),
                    restrictions: data.restrictions[i]
                        .iter()
                        .map(|(k, h)| SubgroupHomJson {
                            subgroup: one_based(k),
                            matrix: hom_rows(h),
                        })
                        .collect(),
                    transfers: data.transfers[i]
                        .iter()
                        .map(|(k, h)| SubgroupHomJson {
                            subgroup: one_based(k),
                            matrix: hom_rows(h),
                        })
                        .collect(),
                    conjugations: data.conjugations[i]
                        .iter()
                        .map(|(&n, h)| ElementHomJson {
                            element: n + 1,
                            matrix: hom_rows(h),
                        })
                        .collect(),
                }
            })
            .collect();
        MackeyJson {
            group: GroupInput::Inline(GroupJson::from_group(m.group())),
            levels,
        }
    }

    /// Decodes the group and raw tables; axiom checking happens later in
    /// [`MackeyFunctor::new`], so shape errors here are input errors.
    pub fn to_parts(&self) -> Result<(Group, MackeyData)> {
        let group = self.group.to_group()?;
        let classes = group.subgroup_classes();
        if self.levels.len() != classes.len() {
            return Err(Error::Invalid(format!(
                "{} levels for {} subgroup classes",
                self.levels.len(),
                classes.len()
            )));
        }
        let values: Vec<AbGroup> = self
            .levels
            .iter()
            .map(|l| {
                let rels = mat_from_json(&l.relations, l.generators, 0)?;
                AbGroup::new(l.generators, rels)
            })
            .collect::<Result<_>>()?;

        let order = group.order();
        let subgroup_of = |elements: &[usize]| -> Result<Subgroup> {
            Subgroup::new(group.clone(), zero_based(elements, order, "element")?)
        };
        let hom = |rows: &[Vec<i64>], src: &AbGroup, tgt: &AbGroup| -> Result<AbHom> {
            AbHom::new(
                src.clone(),
                tgt.clone(),
                mat_from_json(rows, tgt.generators(), src.generators())?,
            )
        };

        let mut restrictions = Vec::new();
        let mut transfers = Vec::new();
        let mut conjugations = Vec::new();
        for (i, level) in self.levels.iter().enumerate() {
            let rep = subgroup_of(&level.subgroup)?;
            if rep != classes.class(i).rep {
                return Err(Error::Invalid(format!(
                    "level {i} names a subgroup that is not the class \
                     representative {}",
                    classes.label(i)
                )));
            }
            let mut r = HomsBySubgroup::new();
            let mut t = HomsBySubgroup::new();
            for entry in &level.restrictions {
                let sub = subgroup_of(&entry.subgroup)?;
                let ci = classes.class_index(&sub);
                r.insert(
                    sub.elements().to_vec(),
                    hom(&entry.matrix, &values[i], &values[ci])?,
                );
            }
            for entry in &level.transfers {
                let sub = subgroup_of(&entry.subgroup)?;
                let ci = classes.class_index(&sub);
                t.insert(
                    sub.elements().to_vec(),
                    hom(&entry.matrix, &values[ci], &values[i])?,
                );
            }
            let mut c = HomsByElement::new();
            for entry in &level.conjugations {
                if entry.element == 0 || entry.element > order {
                    return Err(Error::Invalid(format!(
                        "element index {} out of range 1..={order}",
                        entry.element
                    )));
                }
                c.insert(
                    entry.element - 1,
                    hom(&entry.matrix, &values[i], &values[i])?,
                );
            }
            restrictions.push(r);
            transfers.push(t);
            conjugations.push(c);
        }
        Ok((
            group,
            MackeyData {
                values,
                restrictions,
                transfers,
                conjugations,
            },
        ))
    }

    pub fn to_functor(&self) -> Result<MackeyFunctor> {
        let (group, data) = self.to_parts()?;
        MackeyFunctor::new(&group, data)
    }
}

/// Dense tables of a finite permutative category.  Object and morphism
/// indices are 0-based; `compose[g][f]` is `null` when `g ∘ f` is undefined.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermCatJson {
    pub objects: usize,
    pub sum: Vec<Vec<usize>>,
    pub morphisms: Vec<(usize, usize)>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub morphism_sum: Vec<Vec<usize>>,
    pub symmetry: Vec<Vec<usize>>,
}

impl PermCatJson {
    pub fn from_permcat(c: &FinPermCat) -> Self {
        let n = c.objects();
        let m = c.morphisms();
        PermCatJson {
            objects: n,
            sum: (0..n)
                .map(|a| (0..n).map(|b| c.obj_sum(a, b)).collect())
                .collect(),
            morphisms: (0..m).map(|f| (c.mor(f).src, c.mor(f).tgt)).collect(),
            compose: (0..m)
                .map(|g| (0..m).map(|f| c.comp(g, f)).collect())
                .collect(),
            morphism_sum: (0..m)
                .map(|f| (0..m).map(|g| c.mor_sum(f, g)).collect())
                .collect(),
            symmetry: (0..n)
                .map(|a| (0..n).map(|b| c.gamma_at(a, b)).collect())
                .collect(),
        }
    }

    /// Rebuilds the category; the full coherence validator runs inside, so
    /// inconsistent tables are rejected with the failed axiom.
    pub fn to_permcat(&self) -> Result<FinPermCat> {
        FinPermCat::from_parts(
            self.objects,
            self.sum.clone(),
            self.morphisms.clone(),
            self.compose.clone(),
            self.morphism_sum.clone(),
            self.symmetry.clone(),
        )
    }
}
