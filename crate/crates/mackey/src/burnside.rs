//! The span category of a fixed finite group: free abelian hom groups on
//! transitive span classes, composition by structure constants, the Burnside
//! ring as the endomorphisms of a point, and the table of marks.

use crate::abelian::{determinant, AbGroup, IntMat};
use crate::group::{Group, SubgroupClasses};
use crate::gset::GSet;
use crate::span::{representative_span, transitive_span_basis, Span, TransitiveSpanKey};
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::Mutex;

type Sig = (usize, Vec<Vec<usize>>);

fn sig(x: &GSet) -> Sig {
    (
        x.len(),
        x.generator_action()
            .iter()
            .map(|p| p.images().to_vec())
            .collect(),
    )
}

#[derive(PartialEq, Eq, Hash)]
struct ComposeKey {
    a: Sig,
    b: Sig,
    c: Sig,
    k1: TransitiveSpanKey,
    k2: TransitiveSpanKey,
}

/// Computation context for one group: subgroup classes plus a cache of
/// composition structure constants, which dominate every downstream cost.
pub struct Burnside {
    classes: SubgroupClasses,
    cache: Mutex<HashMap<ComposeKey, Vec<i64>>>,
}

impl Burnside {
    pub fn new(group: Group) -> Self {
        Burnside {
            classes: group.subgroup_classes(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Group {
        self.classes.group()
    }

    pub fn classes(&self) -> &SubgroupClasses {
        &self.classes
    }

    pub fn point(&self) -> GSet {
        GSet::point(self.group().clone())
    }

    /// The coset space of the `i`-th subgroup class representative.
    pub fn orbit(&self, i: usize) -> GSet {
        GSet::cosets(self.group(), &self.classes.class(i).rep).expect("coset space")
    }

    /// Basis of the hom group `a → b`: all transitive span classes.
    pub fn basis(&self, a: &GSet, b: &GSet) -> Vec<TransitiveSpanKey> {
        transitive_span_basis(a, b, &self.classes)
    }

    /// Coefficients of a span's class in the hom basis.
    pub fn element_of_span(&self, s: &Span) -> Result<Vec<i64>> {
        let basis = self.basis(s.source(), s.target());
        let mut coeffs = vec![0i64; basis.len()];
        for key in s.orbit_keys(&self.classes) {
            let i = basis
                .binary_search(&key)
                .map_err(|_| Error::Invalid(format!("span key {} outside the hom basis", key)))?;
            coeffs[i] += 1;
        }
        Ok(coeffs)
    }

    /// Structure constants: the class of `rep(k1) ∘ rep(k2)` in the basis of
    /// `a → c`, for `k1` a basis key of `a → b` and `k2` of `b → c`.
    pub fn compose_keys(
        &self,
        a: &GSet,
        b: &GSet,
        c: &GSet,
        k1: TransitiveSpanKey,
        k2: TransitiveSpanKey,
    ) -> Result<Vec<i64>> {
        let cache_key = ComposeKey {
            a: sig(a),
            b: sig(b),
            c: sig(c),
            k1,
            k2,
        };
        if let Some(hit) = self.cache.lock().unwrap().get(&cache_key) {
            return Ok(hit.clone());
        }
        let s = representative_span(k1, a, b, &self.classes)?;
        let t = representative_span(k2, b, c, &self.classes)?;
        let coeffs = self.element_of_span(&s.then(&t)?)?;
        self.cache.lock().unwrap().insert(cache_key, coeffs.clone());
        Ok(coeffs)
    }

    /// Bilinear extension of composition to hom-group elements, given as
    /// coefficient vectors over the respective bases.
    pub fn compose_elements(
        &self,
        a: &GSet,
        b: &GSet,
        c: &GSet,
        x: &[i64],
        y: &[i64],
    ) -> Result<Vec<i64>> {
        let basis_ab = self.basis(a, b);
        let basis_bc = self.basis(b, c);
        if x.len() != basis_ab.len() || y.len() != basis_bc.len() {
            return Err(Error::Invalid(format!(
                "element lengths {}/{} do not match basis sizes {}/{}",
                x.len(),
                y.len(),
                basis_ab.len(),
                basis_bc.len()
            )));
        }
        let mut out = vec![0i64; self.basis(a, c).len()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let sc = self.compose_keys(a, b, c, basis_ab[i], basis_bc[j])?;
                for (o, &s) in out.iter_mut().zip(&sc) {
                    *o += xi * yj * s;
                }
            }
        }
        Ok(out)
    }

    /// The identity of `a → a` as a basis coefficient vector.
    pub fn identity_element(&self, a: &GSet) -> Result<Vec<i64>> {
        self.element_of_span(&Span::identity(a))
    }

    /// Presentation of the group-completed hom set: the free abelian group on
    /// the transitive span basis of `a → b`, returned with that basis.
    /// `element_of_span` is the quotient map sending a span to its
    /// coordinates here.
    pub fn pi0_enrichment(&self, a: &GSet, b: &GSet) -> (AbGroup, Vec<TransitiveSpanKey>) {
        let basis = self.basis(a, b);
        (AbGroup::free(basis.len()), basis)
    }

    /// Endomorphisms of the point: basis keys align with the subgroup class
    /// order, so position `i` is the class of the orbit `G/H_i`.
    pub fn ring_basis(&self) -> Vec<TransitiveSpanKey> {
        let pt = self.point();
        let basis = self.basis(&pt, &pt);
        debug_assert_eq!(basis.len(), self.classes.len());
        debug_assert!(basis
            .iter()
            .enumerate()
            .all(|(i, k)| *k == TransitiveSpanKey { stab_class: i, a: 0, b: 0 }));
        basis
    }

    /// Product of the `i`-th and `j`-th orbit classes in the Burnside ring,
    /// as coefficients over the class basis.
    pub fn ring_product(&self, i: usize, j: usize) -> Result<Vec<i64>> {
        let pt = self.point();
        let basis = self.ring_basis();
        self.compose_keys(&pt, &pt, &pt, basis[i], basis[j])
    }

    /// The class of an arbitrary G-set in the Burnside ring.
    pub fn class_of_gset(&self, x: &GSet) -> Vec<i64> {
        let mut coeffs = vec![0i64; self.classes.len()];
        for orbit in x.orbits() {
            coeffs[self.classes.class_index(&x.stabilizer(orbit[0]))] += 1;
        }
        coeffs
    }

    /// Fixed-point counts `|X^{H_j}|` for every class representative.
    pub fn marks_of_gset(&self, x: &GSet) -> Vec<i64> {
        (0..self.classes.len())
            .map(|j| x.fixed_points(&self.classes.class(j).rep).len() as i64)
            .collect()
    }

    /// Table of marks: entry `(i, j) = |(G/H_i)^{H_j}|`. Lower triangular in
    /// the class order with nonzero diagonal.
    pub fn table_of_marks(&self) -> IntMat {
        let n = self.classes.len();
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            let row = self.marks_of_gset(&self.orbit(i));
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn marks_determinant(&self) -> i128 {
        determinant(&self.table_of_marks())
    }

    /// Mark homomorphism: marks of a virtual G-set given by class
    /// coefficients (linear extension over the table's rows).
    pub fn mark_vector(&self, coeffs: &[i64]) -> Vec<i64> {
        let m = self.table_of_marks();
        let n = self.classes.len();
        (0..n)
            .map(|j| (0..n).map(|i| coeffs[i] * m.at(i, j)).sum())
            .collect()
    }
}
