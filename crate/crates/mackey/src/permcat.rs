//! Finite permutative categories given by explicit tables, with exhaustive
//! validation of every coherence axiom.
//!
//! The main players are [`FinPermCat`] (a strict symmetric monoidal category
//! with finitely many objects and morphisms, all structure tabulated),
//! [`LaxFunctor`] (strictly unital lax symmetric monoidal functors carrying
//! structure morphisms `δ_{a,b}: f(a)⊕f(b) → f(a⊕b)`), and
//! [`MultilinearFunctor`] (functors of several variables with one linearity
//! constraint per slot).  On top of those sit [`hom_permcat`] — the permutative
//! category of all lax functors between two categories, enumerated exhaustively
//! — plus evaluation, currying, and the associated coherence checks, and
//! finally [`pi0_objects`] / [`group_completion`], which collapse a category to
//! the abelian group completion of its monoid of connected components.
//!
//! Everything here is exact and deterministic.  Validators return a
//! [`ValidationReport`] listing each failed axiom with a concrete witness
//! rather than stopping at the first failure.

use serde::Serialize;
use std::fmt;

use crate::abelian::{smith_normal_form, AbGroup, AbHom, IntMat};
use crate::{Caps, Error, Result};

/// Sentinel for "composite undefined" in the flat composition table.
const UNDEF: usize = usize::MAX;

/// Node budget for the exhaustive functor/transformation searches, so a
/// pathological input fails with a resource error instead of hanging.
const ENUM_BUDGET: usize = 1 << 24;

fn spend(spent: &mut usize, amount: usize) -> Result<()> {
    *spent += amount;
    if *spent > ENUM_BUDGET {
        return Err(Error::CapExceeded {
            cap: "permcat_enumeration",
            limit: ENUM_BUDGET,
            needed: *spent,
        });
    }
    Ok(())
}

/// Iterator over all tuples `t` with `t[i] < radices[i]`, last coordinate
/// fastest, so the tuple at position `k` has mixed-radix index `k`.
fn tuples(radices: &[usize]) -> Tuples {
    Tuples {
        cur: vec![0; radices.len()],
        radices: radices.to_vec(),
        done: radices.contains(&0),
    }
}

struct Tuples {
    radices: Vec<usize>,
    cur: Vec<usize>,
    done: bool,
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = self.radices.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cur[i] += 1;
            if self.cur[i] < self.radices[i] {
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// Finite commutative monoids
// ---------------------------------------------------------------------------

/// A finite commutative monoid presented by its full addition table.
/// Element `0` is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCommMonoid {
    n: usize,
    table: Vec<usize>,
}

impl FinCommMonoid {
    /// Builds a monoid from a square addition table, checking closure,
    /// two-sided unit `0`, commutativity, and associativity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invalid("monoid table must be nonempty".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::Invalid("monoid table must be square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Invalid(format!(
                        "monoid table entry {v} out of range 0..{n}"
                    )));
                }
                flat.push(v);
            }
        }
        let m = FinCommMonoid { n, table: flat };
        for a in 0..n {
            if m.add(0, a) != a || m.add(a, 0) != a {
                return Err(Error::Invalid(format!("element 0 is not a unit at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if m.add(a, b) != m.add(b, a) {
                    return Err(Error::Invalid(format!(
                        "monoid is not commutative at ({a}, {b})"
                    )));
                }
                for c in 0..n {
                    if m.add(m.add(a, b), c) != m.add(a, m.add(b, c)) {
                        return Err(Error::Invalid(format!(
                            "monoid is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn trivial() -> Self {
        FinCommMonoid {
            n: 1,
            table: vec![0],
        }
    }

    /// The cyclic group `Z/m` as a monoid, `m ≥ 1`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push((a + b) % m);
            }
        }
        FinCommMonoid { n: m, table }
    }

    /// Direct product, numbering pairs `(x, y) ↦ x·|b| + y`.
    pub fn product(a: &FinCommMonoid, b: &FinCommMonoid) -> Self {
        let n = a.n * b.n;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let sum = (a.add(i / b.n, j / b.n), b.add(i % b.n, j % b.n));
                table.push(sum.0 * b.n + sum.1);
            }
        }
        FinCommMonoid { n, table }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// True when every element has an inverse.
    pub fn is_group(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).any(|b| self.add(a, b) == 0))
    }

    /// All monoid homomorphisms `self → other`, as image vectors.
    /// Exhaustive; intended for small tables and test oracles.
    pub fn hom_maps(&self, other: &FinCommMonoid) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut image = vec![0usize; self.n];
        self.hom_rec(other, 1, &mut image, &mut out);
        out
    }

    fn hom_rec(
        &self,
        other: &FinCommMonoid,
        k: usize,
        image: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == self.n {
            out.push(image.clone());
            return;
        }
        'cand: for v in 0..other.n {
            image[k] = v;
            for x in 0..=k {
                for y in 0..=k {
                    let s = self.add(x, y);
                    if s <= k && other.add(image[x], image[y]) != image[s] {
                        continue 'cand;
                    }
                }
            }
            self.hom_rec(other, k + 1, image, out);
        }
    }
}

/// A finite abelian group flattened to an explicit element table: `reps[i]`
/// is the generator-coordinate vector of element `i`, element `0` is zero,
/// and `monoid` tabulates addition on those indices.
#[derive(Clone, Debug)]
pub struct TabulatedGroup {
    pub monoid: FinCommMonoid,
    pub reps: Vec<Vec<i64>>,
    diag: Vec<i64>,
    u: IntMat,
}

impl TabulatedGroup {
    /// Fails when the group is infinite or has more than `cap` elements.
    pub fn new(g: &AbGroup, cap: usize) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::Invalid(
                "cannot tabulate an infinite abelian group".into(),
            ));
        }
        let order = g.order().expect("finite group has an order");
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                cap: "monoid_elements",
                limit: cap,
                needed: order.min(usize::MAX as u128) as usize,
            });
        }
        let n = order as usize;
        let gens = g.generators();
        let snf = smith_normal_form(g.relations());
        // Finiteness forces every Smith diagonal entry to be positive, so the
        // group is ⊕_i Z/diag[i] in the Smith basis.
        let diag: Vec<i64> = (0..gens).map(|i| snf.diagonal(i)).collect();
        debug_assert!(diag.iter().all(|&d| d > 0));
        let mut reps = Vec::with_capacity(n);
        let mut table = Vec::with_capacity(n * n);
        let radices: Vec<usize> = diag.iter().map(|&d| d as usize).collect();
        let counters: Vec<Vec<usize>> = tuples(&radices).collect();
        debug_assert_eq!(counters.len(), n);
        for c in &counters {
            let coords: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            reps.push(snf.u_inv.apply(&coords));
        }
        let strides = {
            let mut s = vec![1usize; gens];
            for i in (0..gens.saturating_sub(1)).rev() {
                s[i] = s[i + 1] * radices[i + 1];
            }
            s
        };
        let encode = |c: &[i64]| -> usize {
            let mut idx = 0;
            for i in 0..gens {
                idx += (c[i].rem_euclid(diag[i]) as usize) * strides[i];
            }
            idx
        };
        for i in 0..n {
            for j in 0..n {
                let sum: Vec<i64> = (0..gens)
                    .map(|k| counters[i][k] as i64 + counters[j][k] as i64)
                    .collect();
                table.push(encode(&sum));
            }
        }
        Ok(TabulatedGroup {
            monoid: FinCommMonoid { n, table },
            reps,
            diag,
            u: snf.u,
        })
    }

    /// Index of the element with generator coordinates `v`.
    pub fn index_of(&self, v: &[i64]) -> usize {
        let smith = self.u.apply(v);
        let gens = self.diag.len();
        let mut strides = vec![1usize; gens];
        for i in (0..gens.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.diag[i + 1] as usize;
        }
        let mut idx = 0;
        for i in 0..gens {
            idx += (smith[i].rem_euclid(self.diag[i]) as usize) * strides[i];
        }
        idx
    }
}

// ---------------------------------------------------------------------------
// Validation reports
// ---------------------------------------------------------------------------

/// One failed axiom with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: String,
}

/// Outcome of an exhaustive validator: empty means every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, axiom: &str, witness: String) {
        self.failures.push(AxiomFailure {
            axiom: axiom.to_string(),
            witness,
        });
    }

    /// Converts a nonempty report into an error.
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::ValidationFailed(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "all axioms hold");
        }
        let lines: Vec<String> = self
            .failures
            .iter()
            .map(|x| format!("{}: {}", x.axiom, x.witness))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

// ---------------------------------------------------------------------------
// Finite permutative categories
// ---------------------------------------------------------------------------

/// Endpoints of one morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mor {
    pub src: usize,
    pub tgt: usize,
}

/// A finite permutative category with every piece of structure tabulated.
///
/// Conventions baked into the representation (and enforced by
/// [`validate_permcat`]):
/// * object `0` is the strict unit of `⊕`;
/// * morphism `a` is the identity of object `a` for `a < objects`, so the
///   arena starts with all identities;
/// * `compose` is row-major with the *outer* morphism first:
///   `compose[g·m + f] = g∘f`, `UNDEF` when endpoints do not match;
/// * `sum_mor[f·m + g] = f⊕g` is total;
/// * `gamma[a·objects + b]` is the symmetry component `a⊕b → b⊕a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPermCat {
    objects: usize,
    sum_obj: Vec<usize>,
    mors: Vec<Mor>,
    compose: Vec<usize>,
    sum_mor: Vec<usize>,
    gamma: Vec<usize>,
}

impl FinPermCat {
    /// Assembles a category from nested tables (the JSON shape) and validates
    /// every axiom, failing with the full report otherwise.
    pub fn from_parts(
        objects: usize,
        sum_obj: Vec<Vec<usize>>,
        mors: Vec<(usize, usize)>,
        compose: Vec<Vec<Option<usize>>>,
        sum_mor: Vec<Vec<usize>>,
        gamma: Vec<Vec<usize>>,
    ) -> Result<FinPermCat> {
        let cat = FinPermCat {
            objects,
            sum_obj: sum_obj.into_iter().flatten().collect(),
            mors: mors.into_iter().map(|(src, tgt)| Mor { src, tgt }).collect(),
            compose: compose
                .into_iter()
                .flatten()
                .map(|x| x.unwrap_or(UNDEF))
                .collect(),
            sum_mor: sum_mor.into_iter().flatten().collect(),
            gamma: gamma.into_iter().flatten().collect(),
        };
        validate_permcat(&cat).into_result()?;
        Ok(cat)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.mors.len()
    }

    pub fn mor(&self, f: usize) -> Mor {
        self.mors[f]
    }

    /// Identity morphism of object `a`.
    pub fn id(&self, a: usize) -> usize {
        a
    }

    pub fn obj_sum(&self, a: usize, b: usize) -> usize {
        self.sum_obj[a * self.objects + b]
    }

    /// `g ∘ f`, or `None` when the endpoints do not match.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.compose[g * self.mors.len() + f];
        if v == UNDEF {
            None
        } else {
            Some(v)
        }
    }

    pub fn mor_sum(&self, f: usize, g: usize) -> usize {
        self.sum_mor[f * self.mors.len() + g]
    }

    pub fn gamma_at(&self, a: usize, b: usize) -> usize {
        self.gamma[a * self.objects + b]
    }

    /// All morphisms `a → b`, in arena order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.mors.len())
            .filter(|&f| self.mors[f].src == a && self.mors[f].tgt == b)
            .collect()
    }

    /// True when only identity morphisms exist.
    pub fn is_discrete(&self) -> bool {
        self.mors.len() == self.objects
    }

    pub fn validate(&self) -> ValidationReport {
        validate_permcat(self)
    }
}

/// Exhaustively checks every axiom of a permutative category, returning one
/// report entry per failure (with witnesses).  Never panics on malformed
/// tables: structural problems are reported and short-circuit the law checks.
pub fn validate_permcat(c: &FinPermCat) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = c.objects;
    let m = c.mors.len();
    if n == 0 {
        report.fail("shape", "category must have at least the unit object".into());
        return report;
    }
    if c.sum_obj.len() != n * n || c.gamma.len() != n * n {
        report.fail(
            "shape",
            format!(
                "object tables must be {n}×{n}: sum has {} entries, symmetry {}",
                c.sum_obj.len(),
                c.gamma.len()
            ),
        );
        return report;
    }
    if c.compose.len() != m * m || c.sum_mor.len() != m * m {
        report.fail(
            "shape",
            format!(
                "morphism tables must be {m}×{m}: compose has {} entries, sum {}",
                c.compose.len(),
                c.sum_mor.len()
            ),
        );
        return report;
    }
    if m < n {
        report.fail(
            "shape",
            format!("{m} morphisms cannot cover identities of {n} objects"),
        );
        return report;
    }
    let mut shape_ok = true;
    for (i, &v) in c.sum_obj.iter().enumerate() {
        if v >= n {
            report.fail(
                "index range",
                format!("object sum entry {} is {v}, out of range 0..{n}", i),
            );
            shape_ok = false;
        }
    }
    for (i, mor) in c.mors.iter().enumerate() {
        if mor.src >= n || mor.tgt >= n {
            report.fail(
                "index range",
                format!("morphism {i} has endpoints ({}, {})", mor.src, mor.tgt),
            );
            shape_ok = false;
        }
    }
    for (i, &v) in c.compose.iter().enumerate() {
        if v != UNDEF && v >= m {
            report.fail(
                "index range",
                format!("compose entry {i} is {v}, out of range"),
            );
            shape_ok = false;
        }
    }
    for (i, &v) in c.sum_mor.iter().enumerate() {
        if v >= m {
            report.fail(
                "index range",
                format!("morphism sum entry {i} is {v}, out of range"),
            );
            shape_ok = false;
        }
    }
    for (i, &v) in c.gamma.iter().enumerate() {
        if v >= m {
            report.fail(
                "index range",
                format!("symmetry entry {i} is {v}, out of range"),
            );
            shape_ok = false;
        }
    }
    if !shape_ok {
        return report;
    }

    // Object monoid: strict unit 0 and strict associativity.
    for a in 0..n {
        if c.obj_sum(a, 0) != a || c.obj_sum(0, a) != a {
            report.fail(
                "object sum unit",
                format!("{a}⊕0 = {}, 0⊕{a} = {}", c.obj_sum(a, 0), c.obj_sum(0, a)),
            );
        }
    }
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let lhs = c.obj_sum(c.obj_sum(a, b), d);
                let rhs = c.obj_sum(a, c.obj_sum(b, d));
                if lhs != rhs {
                    report.fail(
                        "object sum associativity",
                        format!("({a}⊕{b})⊕{d} = {lhs} but {a}⊕({b}⊕{d}) = {rhs}"),
                    );
                }
            }
        }
    }

    // Identity placement: morphism a is id_a.
    for a in 0..n {
        if c.mors[a] != (Mor { src: a, tgt: a }) {
            report.fail(
                "identity placement",
                format!(
                    "morphism {a} must be the identity of object {a}, has endpoints ({}, {})",
                    c.mors[a].src, c.mors[a].tgt
                ),
            );
        }
    }

    // Composition: defined exactly when endpoints meet, with correct
    // endpoints, identity laws, and associativity.
    for g in 0..m {
        for f in 0..m {
            let defined = c.mors[f].tgt == c.mors[g].src;
            match c.comp(g, f) {
                Some(h) if !defined => {
                    report.fail(
                        "composition domain",
                        format!("{g}∘{f} = {h} defined despite mismatched endpoints"),
                    );
                }
                Some(h) => {
                    if c.mors[h].src != c.mors[f].src || c.mors[h].tgt != c.mors[g].tgt {
                        report.fail(
                            "composition endpoints",
                            format!("{g}∘{f} = {h} has wrong endpoints"),
                        );
                    }
                }
                None if defined => {
                    report.fail(
                        "composition domain",
                        format!("{g}∘{f} undefined despite matching endpoints"),
                    );
                }
                None => {}
            }
        }
    }
    for f in 0..m {
        let (s, t) = (c.mors[f].src, c.mors[f].tgt);
        if c.comp(f, c.id(s)) != Some(f) || c.comp(c.id(t), f) != Some(f) {
            report.fail("identity laws", format!("identities do not fix morphism {f}"));
        }
    }
    for f in 0..m {
        for g in 0..m {
            if c.mors[f].tgt != c.mors[g].src {
                continue;
            }
            for h in 0..m {
                if c.mors[g].tgt != c.mors[h].src {
                    continue;
                }
                let lhs = c.comp(h, c.comp(g, f).unwrap());
                let rhs = c.comp(c.comp(h, g).unwrap(), f);
                if lhs != rhs {
                    report.fail(
                        "composition associativity",
                        format!("h={h}, g={g}, f={f}: {:?} vs {:?}", lhs, rhs),
                    );
                }
            }
        }
    }

    // ⊕ on morphisms: endpoints, identities, interchange, strict
    // associativity and unit.
    for f in 0..m {
        for g in 0..m {
            let s = c.mor_sum(f, g);
            let want = Mor {
                src: c.obj_sum(c.mors[f].src, c.mors[g].src),
                tgt: c.obj_sum(c.mors[f].tgt, c.mors[g].tgt),
            };
            if c.mors[s] != want {
                report.fail(
                    "morphism sum endpoints",
                    format!("{f}⊕{g} = {s} has wrong endpoints"),
                );
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if c.mor_sum(c.id(a), c.id(b)) != c.id(c.obj_sum(a, b)) {
                report.fail(
                    "sum functoriality",
                    format!("id_{a} ⊕ id_{b} is not id_{}", c.obj_sum(a, b)),
                );
            }
        }
    }
    let composable: Vec<(usize, usize)> = (0..m)
        .flat_map(|g| (0..m).map(move |f| (g, f)))
        .filter(|&(g, f)| c.mors[f].tgt == c.mors[g].src)
        .collect();
    for &(g1, f1) in &composable {
        for &(g2, f2) in &composable {
            let lhs = c.mor_sum(c.comp(g1, f1).unwrap(), c.comp(g2, f2).unwrap());
            let rhs = c.comp(c.mor_sum(g1, g2), c.mor_sum(f1, f2));
            if rhs != Some(lhs) {
                report.fail(
                    "interchange",
                    format!("(g1∘f1)⊕(g2∘f2) ≠ (g1⊕g2)∘(f1⊕f2) at ({g1},{f1},{g2},{f2})"),
                );
            }
        }
    }
    for f in 0..m {
        if c.mor_sum(f, c.id(0)) != f || c.mor_sum(c.id(0), f) != f {
            report.fail("morphism sum unit", format!("id_0 is not a strict unit at {f}"));
        }
        for g in 0..m {
            for h in 0..m {
                if c.mor_sum(c.mor_sum(f, g), h) != c.mor_sum(f, c.mor_sum(g, h)) {
                    report.fail(
                        "morphism sum associativity",
                        format!("({f}⊕{g})⊕{h} ≠ {f}⊕({g}⊕{h})"),
                    );
                }
            }
        }
    }

    // Symmetry: endpoints, involution, unit, hexagon, naturality.
    for a in 0..n {
        for b in 0..n {
            let g = c.gamma_at(a, b);
            let want = Mor {
                src: c.obj_sum(a, b),
                tgt: c.obj_sum(b, a),
            };
            if c.mors[g] != want {
                report.fail(
                    "symmetry endpoints",
                    format!("γ({a},{b}) = {g} has wrong endpoints"),
                );
                continue;
            }
            if c.comp(c.gamma_at(b, a), g) != Some(c.id(c.obj_sum(a, b))) {
                report.fail(
                    "symmetry involution",
                    format!("γ({b},{a})∘γ({a},{b}) is not the identity"),
                );
            }
        }
        if c.gamma_at(a, 0) != c.id(a) || c.gamma_at(0, a) != c.id(a) {
            report.fail("symmetry unit", format!("γ({a},0) or γ(0,{a}) is not id_{a}"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let lhs = c.gamma_at(c.obj_sum(a, b), d);
                let inner = c.mor_sum(c.id(a), c.gamma_at(b, d));
                let outer = c.mor_sum(c.gamma_at(a, d), c.id(b));
                if c.comp(outer, inner) != Some(lhs) {
                    report.fail(
                        "symmetry hexagon",
                        format!("γ({a}⊕{b},{d}) ≠ (γ({a},{d})⊕id)∘(id⊕γ({b},{d}))"),
                    );
                }
            }
        }
    }
    for f in 0..m {
        for g in 0..m {
            let (a, a1) = (c.mors[f].src, c.mors[f].tgt);
            let (b, b1) = (c.mors[g].src, c.mors[g].tgt);
            let lhs = c.comp(c.gamma_at(a1, b1), c.mor_sum(f, g));
            let rhs = c.comp(c.mor_sum(g, f), c.gamma_at(a, b));
            if lhs != rhs || lhs.is_none() {
                report.fail(
                    "symmetry naturality",
                    format!("γ∘({f}⊕{g}) ≠ ({g}⊕{f})∘γ"),
                );
            }
        }
    }

    report
}

/// The discrete permutative category on a finite commutative monoid: one
/// object per element, identity morphisms only, `⊕` from the monoid.
pub fn discrete_permcat(m: &FinCommMonoid) -> FinPermCat {
    let n = m.len();
    let mut sum_obj = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            sum_obj.push(m.add(a, b));
        }
    }
    let mut compose = vec![UNDEF; n * n];
    for a in 0..n {
        compose[a * n + a] = a;
    }
    let cat = FinPermCat {
        objects: n,
        sum_obj: sum_obj.clone(),
        mors: (0..n).map(|a| Mor { src: a, tgt: a }).collect(),
        compose,
        sum_mor: sum_obj.clone(),
        gamma: sum_obj,
    };
    debug_assert!(validate_permcat(&cat).is_valid());
    cat
}

/// The permutative category with one object per element of `m`, endomorphism
/// group `h` at every object, and no morphisms between distinct objects.
/// Composition and `⊕` of morphisms are both addition in `h`; every symmetry
/// component is the zero element.
pub fn group_morphism_permcat(m: &FinCommMonoid, h: &FinCommMonoid) -> Result<FinPermCat> {
    if !h.is_group() {
        return Err(Error::Invalid(
            "endomorphism table must be a group, not just a monoid".into(),
        ));
    }
    let n = m.len();
    let k = h.len();
    let mors_n = n * k;
    // Identities first: (a, 0) ↦ a, then (a, x≠0) ↦ n + a(k−1) + x−1.
    let midx = |a: usize, x: usize| -> usize {
        if x == 0 {
            a
        } else {
            n + a * (k - 1) + (x - 1)
        }
    };
    let mut mors = vec![Mor { src: 0, tgt: 0 }; mors_n];
    for a in 0..n {
        for x in 0..k {
            mors[midx(a, x)] = Mor { src: a, tgt: a };
        }
    }
    let mut sum_obj = Vec::with_capacity(n * n);
    let mut gamma = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            sum_obj.push(m.add(a, b));
            gamma.push(midx(m.add(a, b), 0));
        }
    }
    let mut compose = vec![UNDEF; mors_n * mors_n];
    let mut sum_mor = vec![0usize; mors_n * mors_n];
    for a in 0..n {
        for x in 0..k {
            for b in 0..n {
                for y in 0..k {
                    let (f, g) = (midx(a, x), midx(b, y));
                    if a == b {
                        compose[g * mors_n + f] = midx(a, h.add(y, x));
                    }
                    sum_mor[f * mors_n + g] = midx(m.add(a, b), h.add(x, y));
                }
            }
        }
    }
    let cat = FinPermCat {
        objects: n,
        sum_obj,
        mors,
        compose,
        sum_mor,
        gamma,
    };
    validate_permcat(&cat).into_result()?;
    Ok(cat)
}

/// Named catalog of small categories exercising every validator clause:
/// discrete categories over cyclic and product monoids, categories with
/// nontrivial endomorphism groups, and one exhaustively enumerated hom
/// category.
pub fn coherence_catalog(caps: &Caps) -> Result<Vec<(String, FinPermCat)>> {
    let z2 = FinCommMonoid::cyclic(2);
    let z3 = FinCommMonoid::cyclic(3);
    let mut out = vec![
        ("discrete(1)".to_string(), discrete_permcat(&FinCommMonoid::trivial())),
        ("discrete(Z/2)".to_string(), discrete_permcat(&z2)),
        ("discrete(Z/3)".to_string(), discrete_permcat(&z3)),
        ("discrete(Z/4)".to_string(), discrete_permcat(&FinCommMonoid::cyclic(4))),
        ("discrete(Z/6)".to_string(), discrete_permcat(&FinCommMonoid::cyclic(6))),
        (
            "discrete(Z/2 x Z/2)".to_string(),
            discrete_permcat(&FinCommMonoid::product(&z2, &z2)),
        ),
        (
            "group-morphism(Z/2, Z/2)".to_string(),
            group_morphism_permcat(&z2, &z2)?,
        ),
        (
            "group-morphism(Z/2, Z/3)".to_string(),
            group_morphism_permcat(&z2, &z3)?,
        ),
        (
            "group-morphism(Z/3, Z/3)".to_string(),
            group_morphism_permcat(&z3, &z3)?,
        ),
    ];
    let gm22 = group_morphism_permcat(&z2, &z2)?;
    out.push((
        "hom(group-morphism(Z/2, Z/2), group-morphism(Z/2, Z/2))".to_string(),
        hom_permcat(&gm22, &gm22, caps)?.cat,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Lax functors
// ---------------------------------------------------------------------------

/// A strictly unital lax symmetric monoidal functor between finite
/// permutative categories.  `delta` is the flat `objects²` table of structure
/// morphisms `δ_{a,b}: f(a)⊕f(b) → f(a⊕b)` in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxFunctor {
    pub source: FinPermCat,
    pub target: FinPermCat,
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
    pub delta: Vec<usize>,
}

impl LaxFunctor {
    pub fn delta_at(&self, a: usize, b: usize) -> usize {
        self.delta[a * self.source.objects() + b]
    }

    /// Data key used for canonical ordering of enumerated functors.
    fn key(&self) -> (&[usize], &[usize], &[usize]) {
        (&self.ob, &self.mor, &self.delta)
    }
}

/// The identity functor, with identity structure morphisms.
pub fn identity_lax(c: &FinPermCat) -> LaxFunctor {
    let n = c.objects();
    let mut delta = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            delta.push(c.id(c.obj_sum(a, b)));
        }
    }
    LaxFunctor {
        source: c.clone(),
        target: c.clone(),
        ob: (0..n).collect(),
        mor: (0..c.morphisms()).collect(),
        delta,
    }
}

/// The functor collapsing everything to the unit object.
pub fn zero_lax(source: &FinPermCat, target: &FinPermCat) -> LaxFunctor {
    LaxFunctor {
        source: source.clone(),
        target: target.clone(),
        ob: vec![0; source.objects()],
        mor: vec![0; source.morphisms()],
        delta: vec![0; source.objects() * source.objects()],
    }
}

/// Exhaustively checks functoriality, strict unitality, and the naturality,
/// associativity, and symmetry conditions on the structure morphisms.
/// Assumes both endpoint categories themselves validate.
pub fn validate_lax(f: &LaxFunctor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (a, b) = (&f.source, &f.target);
    let n = a.objects();
    let m = a.morphisms();
    if f.ob.len() != n || f.mor.len() != m || f.delta.len() != n * n {
        report.fail(
            "shape",
            format!(
                "tables must cover {n} objects, {m} morphisms, {}² pairs",
                n
            ),
        );
        return report;
    }
    if f.ob.iter().any(|&x| x >= b.objects())
        || f.mor.iter().any(|&x| x >= b.morphisms())
        || f.delta.iter().any(|&x| x >= b.morphisms())
    {
        report.fail("index range", "image index out of range".into());
        return report;
    }
    if f.ob[0] != 0 {
        report.fail("unit object", format!("f(0) = {} ≠ 0", f.ob[0]));
    }
    for x in 0..m {
        let want = Mor {
            src: f.ob[a.mor(x).src],
            tgt: f.ob[a.mor(x).tgt],
        };
        if b.mor(f.mor[x]) != want {
            report.fail(
                "morphism endpoints",
                format!("f({x}) = {} has wrong endpoints", f.mor[x]),
            );
        }
    }
    for o in 0..n {
        if f.mor[a.id(o)] != b.id(f.ob[o]) {
            report.fail(
                "identity preservation",
                format!("f(id_{o}) = {} is not id_{}", f.mor[a.id(o)], f.ob[o]),
            );
        }
    }
    for g in 0..m {
        for h in 0..m {
            if let Some(gh) = a.comp(g, h) {
                if b.comp(f.mor[g], f.mor[h]) != Some(f.mor[gh]) {
                    report.fail(
                        "functoriality",
                        format!("f({g}∘{h}) ≠ f({g})∘f({h})"),
                    );
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let d = f.delta_at(x, y);
            let want = Mor {
                src: b.obj_sum(f.ob[x], f.ob[y]),
                tgt: f.ob[a.obj_sum(x, y)],
            };
            if b.mor(d) != want {
                report.fail(
                    "structure morphism endpoints",
                    format!("δ({x},{y}) = {d} has wrong endpoints"),
                );
            }
        }
        if f.delta_at(x, 0) != b.id(f.ob[x]) || f.delta_at(0, x) != b.id(f.ob[x]) {
            report.fail(
                "structure morphism unit",
                format!("δ({x},0) or δ(0,{x}) is not the identity"),
            );
        }
    }
    if !report.is_valid() {
        // Endpoint errors make the remaining composites meaningless.
        return report;
    }
    for g in 0..m {
        for h in 0..m {
            let (x, x1) = (a.mor(g).src, a.mor(g).tgt);
            let (y, y1) = (a.mor(h).src, a.mor(h).tgt);
            let lhs = b.comp(f.delta_at(x1, y1), b.mor_sum(f.mor[g], f.mor[h]));
            let rhs = b.comp(f.mor[a.mor_sum(g, h)], f.delta_at(x, y));
            if lhs != rhs || lhs.is_none() {
                report.fail(
                    "structure morphism naturality",
                    format!("δ∘(f({g})⊕f({h})) ≠ f({g}⊕{h})∘δ"),
                );
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = b.comp(
                    f.delta_at(a.obj_sum(x, y), z),
                    b.mor_sum(f.delta_at(x, y), b.id(f.ob[z])),
                );
                let rhs = b.comp(
                    f.delta_at(x, a.obj_sum(y, z)),
                    b.mor_sum(b.id(f.ob[x]), f.delta_at(y, z)),
                );
                if lhs != rhs || lhs.is_none() {
                    report.fail(
                        "structure morphism associativity",
                        format!("associativity square fails at ({x},{y},{z})"),
                    );
                }
            }
            let lhs = b.comp(f.delta_at(y, x), b.gamma_at(f.ob[x], f.ob[y]));
            let rhs = b.comp(f.mor[a.gamma_at(x, y)], f.delta_at(x, y));
            if lhs != rhs || lhs.is_none() {
                report.fail(
                    "structure morphism symmetry",
                    format!("symmetry square fails at ({x},{y})"),
                );
            }
        }
    }
    report
}

/// `g ∘ f` with structure morphisms `g(δ^f) ∘ δ^g`.
pub fn compose_lax(g: &LaxFunctor, f: &LaxFunctor) -> Result<LaxFunctor> {
    if f.target != g.source {
        return Err(Error::ObjectMismatch(
            "target of the first functor must be the source of the second".into(),
        ));
    }
    let n = f.source.objects();
    let mut delta = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let inner = g.delta_at(f.ob[a], f.ob[b]);
            let outer = g.mor[f.delta_at(a, b)];
            delta.push(
                g.target
                    .comp(outer, inner)
                    .expect("structure morphisms compose"),
            );
        }
    }
    Ok(LaxFunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        ob: f.ob.iter().map(|&x| g.ob[x]).collect(),
        mor: f.mor.iter().map(|&x| g.mor[x]).collect(),
        delta,
    })
}

/// Pointwise sum `f ⊕ g` of parallel functors: the structure morphism is
/// `(δ^f ⊕ δ^g) ∘ (1 ⊕ γ ⊕ 1)`, the middle twist putting the summands in
/// evaluation order.
pub fn sum_lax(f: &LaxFunctor, g: &LaxFunctor) -> Result<LaxFunctor> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::ObjectMismatch(
            "functor sum needs identical sources and targets".into(),
        ));
    }
    let t = &f.target;
    let n = f.source.objects();
    let mut delta = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let twist = t.mor_sum(
                t.mor_sum(t.id(f.ob[a]), t.gamma_at(g.ob[a], f.ob[b])),
                t.id(g.ob[b]),
            );
            let sums = t.mor_sum(f.delta_at(a, b), g.delta_at(a, b));
            delta.push(t.comp(sums, twist).expect("twist composes with summed δ"));
        }
    }
    Ok(LaxFunctor {
        source: f.source.clone(),
        target: f.target.clone(),
        ob: (0..n).map(|a| t.obj_sum(f.ob[a], g.ob[a])).collect(),
        mor: (0..f.source.morphisms())
            .map(|x| t.mor_sum(f.mor[x], g.mor[x]))
            .collect(),
        delta,
    })
}

/// Lifts a monoid map on objects to a functor between discrete categories.
/// Validation rejects maps that are not monoid homomorphisms.
pub fn lax_from_monoid_map(
    source: &FinPermCat,
    target: &FinPermCat,
    ob: Vec<usize>,
) -> Result<LaxFunctor> {
    if !source.is_discrete() || !target.is_discrete() {
        return Err(Error::Invalid(
            "object-map lifting requires discrete categories".into(),
        ));
    }
    let n = source.objects();
    let mut delta = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            delta.push(*ob.get(source.obj_sum(a, b)).unwrap_or(&0));
        }
    }
    let f = LaxFunctor {
        source: source.clone(),
        target: target.clone(),
        mor: ob.clone(),
        ob,
        delta,
    };
    validate_lax(&f).into_result()?;
    Ok(f)
}

fn check_cat_caps(c: &FinPermCat, caps: &Caps) -> Result<()> {
    if c.objects() > caps.permcat_objects {
        return Err(Error::CapExceeded {
            cap: "permcat_objects",
            limit: caps.permcat_objects,
            needed: c.objects(),
        });
    }
    if c.morphisms() > caps.permcat_morphisms {
        return Err(Error::CapExceeded {
            cap: "permcat_morphisms",
            limit: caps.permcat_morphisms,
            needed: c.morphisms(),
        });
    }
    Ok(())
}

/// Enumerates every strictly unital lax symmetric monoidal functor `a → b`,
/// sorted by object map, then morphism map, then structure morphisms.  The
/// search is a pruned DFS over the three layers of data, with each complete
/// candidate confirmed by [`validate_lax`].
pub fn enumerate_lax_functors(
    a: &FinPermCat,
    b: &FinPermCat,
    caps: &Caps,
) -> Result<Vec<LaxFunctor>> {
    check_cat_caps(a, caps)?;
    check_cat_caps(b, caps)?;
    let mut spent = 0usize;
    let mut out = Vec::new();
    let mut ob = vec![0usize; a.objects()];
    enum_ob(a, b, 1, &mut ob, &mut spent, &mut out)?;
    out.sort_by(|p, q| p.key().cmp(&q.key()));
    Ok(out)
}

fn enum_ob(
    a: &FinPermCat,
    b: &FinPermCat,
    k: usize,
    ob: &mut Vec<usize>,
    spent: &mut usize,
    out: &mut Vec<LaxFunctor>,
) -> Result<()> {
    if k == a.objects() {
        return enum_mor(a, b, ob, spent, out);
    }
    'cand: for t in 0..b.objects() {
        spend(spent, 1)?;
        ob[k] = t;
        // Every already-determined pair needs at least one candidate δ.
        for x in 0..=k {
            for y in 0..=k {
                let s = a.obj_sum(x, y);
                if s <= k && b.hom(b.obj_sum(ob[x], ob[y]), ob[s]).is_empty() {
                    continue 'cand;
                }
            }
        }
        enum_ob(a, b, k + 1, ob, spent, out)?;
    }
    Ok(())
}

fn enum_mor(
    a: &FinPermCat,
    b: &FinPermCat,
    ob: &[usize],
    spent: &mut usize,
    out: &mut Vec<LaxFunctor>,
) -> Result<()> {
    let n = a.objects();
    let m = a.morphisms();
    let nonid: Vec<usize> = (n..m).collect();
    let mut candidates = Vec::with_capacity(nonid.len());
    for &f in &nonid {
        let c = b.hom(ob[a.mor(f).src], ob[a.mor(f).tgt]);
        if c.is_empty() {
            return Ok(());
        }
        candidates.push(c);
    }
    let mut mor: Vec<usize> = vec![0; m];
    for o in 0..n {
        mor[o] = b.id(ob[o]);
    }
    let mut pos = vec![usize::MAX; m];
    for (i, &f) in nonid.iter().enumerate() {
        pos[f] = i;
    }
    enum_mor_rec(a, b, ob, &nonid, &candidates, &pos, 0, &mut mor, spent, out)
}

#[allow(clippy::too_many_arguments)]
fn enum_mor_rec(
    a: &FinPermCat,
    b: &FinPermCat,
    ob: &[usize],
    nonid: &[usize],
    candidates: &[Vec<usize>],
    pos: &[usize],
    j: usize,
    mor: &mut Vec<usize>,
    spent: &mut usize,
    out: &mut Vec<LaxFunctor>,
) -> Result<()> {
    if j == nonid.len() {
        return enum_delta(a, b, ob, mor, spent, out);
    }
    let f = nonid[j];
    let assigned = |x: usize| x < a.objects() || pos[x] <= j;
    'cand: for &c in &candidates[j] {
        spend(spent, 1)?;
        mor[f] = c;
        // Check every composition that is now fully determined.
        for g in 0..a.morphisms() {
            if !assigned(g) {
                continue;
            }
            for (p, q) in [(f, g), (g, f)] {
                if let Some(h) = a.comp(p, q) {
                    if assigned(h) && b.comp(mor[p], mor[q]) != Some(mor[h]) {
                        continue 'cand;
                    }
                }
            }
        }
        enum_mor_rec(a, b, ob, nonid, candidates, pos, j + 1, mor, spent, out)?;
    }
    Ok(())
}

fn enum_delta(
    a: &FinPermCat,
    b: &FinPermCat,
    ob: &[usize],
    mor: &[usize],
    spent: &mut usize,
    out: &mut Vec<LaxFunctor>,
) -> Result<()> {
    let n = a.objects();
    // Positions with either argument 0 are forced to identities.
    let mut delta = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            if x == 0 || y == 0 {
                delta[x * n + y] = b.id(ob[a.obj_sum(x, y)]);
            }
        }
    }
    let free: Vec<(usize, usize)> = (1..n)
        .flat_map(|x| (1..n).map(move |y| (x, y)))
        .collect();
    let mut candidates = Vec::with_capacity(free.len());
    for &(x, y) in &free {
        let c = b.hom(b.obj_sum(ob[x], ob[y]), ob[a.obj_sum(x, y)]);
        if c.is_empty() {
            return Ok(());
        }
        candidates.push(c);
    }
    let radices: Vec<usize> = candidates.iter().map(|c| c.len()).collect();
    for pick in tuples(&radices) {
        spend(spent, 1)?;
        for (i, &(x, y)) in free.iter().enumerate() {
            delta[x * n + y] = candidates[i][pick[i]];
        }
        let f = LaxFunctor {
            source: a.clone(),
            target: b.clone(),
            ob: ob.to_vec(),
            mor: mor.to_vec(),
            delta: delta.clone(),
        };
        if validate_lax(&f).is_valid() {
            out.push(f);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Hom categories
// ---------------------------------------------------------------------------

/// A monoidal natural transformation between enumerated functors, stored as
/// its component morphisms indexed by source objects.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonoidalTrans {
    pub src: usize,
    pub tgt: usize,
    pub components: Vec<usize>,
}

/// The permutative category of all strictly unital lax symmetric monoidal
/// functors `source → target`, together with the dictionaries identifying its
/// objects with [`LaxFunctor`]s and its morphisms with [`MonoidalTrans`]es.
///
/// Object `0` is always the zero functor; morphism `i` (for `i` below the
/// object count) is the identity transformation of functor `i`.
#[derive(Clone, Debug)]
pub struct HomPermCat {
    pub source: FinPermCat,
    pub target: FinPermCat,
    pub cat: FinPermCat,
    pub functors: Vec<LaxFunctor>,
    pub transformations: Vec<MonoidalTrans>,
}

impl HomPermCat {
    /// Index of a functor by exact data equality.
    pub fn functor_index(&self, f: &LaxFunctor) -> Option<usize> {
        self.functors.iter().position(|g| g == f)
    }

    /// Index of a transformation by endpoints and components.
    pub fn trans_index(&self, src: usize, tgt: usize, components: &[usize]) -> Option<usize> {
        self.transformations
            .iter()
            .position(|t| t.src == src && t.tgt == tgt && t.components == components)
    }
}

/// Builds the hom permutative category by exhaustive enumeration: functors
/// become objects (zero functor first), monoidal natural transformations
/// become morphisms, `⊕` is the pointwise sum with the middle twist, and the
/// symmetry is inherited componentwise from the target.
pub fn hom_permcat(a: &FinPermCat, b: &FinPermCat, caps: &Caps) -> Result<HomPermCat> {
    let functors = enumerate_lax_functors(a, b, caps)?;
    let nf = functors.len();
    if nf == 0 || functors[0] != zero_lax(a, b) {
        return Err(Error::ValidationFailed(
            "hom enumeration must start with the zero functor".into(),
        ));
    }
    if nf > caps.permcat_objects {
        return Err(Error::CapExceeded {
            cap: "permcat_objects",
            limit: caps.permcat_objects,
            needed: nf,
        });
    }
    let mut spent = 0usize;

    // Identity transformations occupy the first nf arena slots.
    let mut trans: Vec<MonoidalTrans> = (0..nf)
        .map(|i| MonoidalTrans {
            src: i,
            tgt: i,
            components: functors[i].ob.iter().map(|&o| b.id(o)).collect(),
        })
        .collect();
    let mut extra = Vec::new();
    for i in 0..nf {
        for j in 0..nf {
            enum_transformations(a, b, &functors, i, j, &mut spent, &mut extra)?;
        }
    }
    extra.retain(|t| trans[..nf].iter().all(|idt| idt != t));
    extra.sort();
    extra.dedup();
    trans.extend(extra);
    let nm = trans.len();
    if nm > caps.permcat_morphisms {
        return Err(Error::CapExceeded {
            cap: "permcat_morphisms",
            limit: caps.permcat_morphisms,
            needed: nm,
        });
    }

    let find_trans = |src: usize, tgt: usize, comps: &[usize]| -> Result<usize> {
        trans
            .iter()
            .position(|t| t.src == src && t.tgt == tgt && t.components == comps)
            .ok_or_else(|| {
                Error::ValidationFailed("hom category is not closed under its structure".into())
            })
    };

    let mut sum_obj = vec![0usize; nf * nf];
    for i in 0..nf {
        for j in 0..nf {
            let s = sum_lax(&functors[i], &functors[j])?;
            sum_obj[i * nf + j] = functors.iter().position(|f| *f == s).ok_or_else(|| {
                Error::ValidationFailed("functor sum escapes the enumeration".into())
            })?;
        }
    }
    let mut gamma = vec![0usize; nf * nf];
    for i in 0..nf {
        for j in 0..nf {
            let comps: Vec<usize> = (0..a.objects())
                .map(|x| b.gamma_at(functors[i].ob[x], functors[j].ob[x]))
                .collect();
            gamma[i * nf + j] = find_trans(sum_obj[i * nf + j], sum_obj[j * nf + i], &comps)?;
        }
    }

    let mut compose = vec![UNDEF; nm * nm];
    for g in 0..nm {
        for f in 0..nm {
            if trans[f].tgt != trans[g].src {
                continue;
            }
            let comps: Vec<usize> = (0..a.objects())
                .map(|x| {
                    b.comp(trans[g].components[x], trans[f].components[x])
                        .expect("components compose")
                })
                .collect();
            compose[g * nm + f] = find_trans(trans[f].src, trans[g].tgt, &comps)?;
        }
    }
    let mut sum_mor = vec![0usize; nm * nm];
    for f in 0..nm {
        for g in 0..nm {
            let comps: Vec<usize> = (0..a.objects())
                .map(|x| b.mor_sum(trans[f].components[x], trans[g].components[x]))
                .collect();
            sum_mor[f * nm + g] = find_trans(
                sum_obj[trans[f].src * nf + trans[g].src],
                sum_obj[trans[f].tgt * nf + trans[g].tgt],
                &comps,
            )?;
        }
    }

    let cat = FinPermCat {
        objects: nf,
        sum_obj,
        mors: trans.iter().map(|t| Mor { src: t.src, tgt: t.tgt }).collect(),
        compose,
        sum_mor,
        gamma,
    };
    validate_permcat(&cat).into_result()?;
    Ok(HomPermCat {
        source: a.clone(),
        target: b.clone(),
        cat,
        functors,
        transformations: trans,
    })
}

fn enum_transformations(
    a: &FinPermCat,
    b: &FinPermCat,
    functors: &[LaxFunctor],
    i: usize,
    j: usize,
    spent: &mut usize,
    out: &mut Vec<MonoidalTrans>,
) -> Result<()> {
    let (f, g) = (&functors[i], &functors[j]);
    let n = a.objects();
    let mut candidates = Vec::with_capacity(n);
    candidates.push(vec![b.id(0)]);
    for x in 1..n {
        let c = b.hom(f.ob[x], g.ob[x]);
        if c.is_empty() {
            return Ok(());
        }
        candidates.push(c);
    }
    let radices: Vec<usize> = candidates.iter().map(|c| c.len()).collect();
    'pick: for pick in tuples(&radices) {
        spend(spent, 1)?;
        let comps: Vec<usize> = (0..n).map(|x| candidates[x][pick[x]]).collect();
        // Naturality against every source morphism.
        for m in 0..a.morphisms() {
            let (x, y) = (a.mor(m).src, a.mor(m).tgt);
            let lhs = b.comp(comps[y], f.mor[m]);
            let rhs = b.comp(g.mor[m], comps[x]);
            if lhs != rhs || lhs.is_none() {
                continue 'pick;
            }
        }
        // Monoidality against every structure morphism.
        for x in 0..n {
            for y in 0..n {
                let lhs = b.comp(comps[a.obj_sum(x, y)], f.delta_at(x, y));
                let rhs = b.comp(g.delta_at(x, y), b.mor_sum(comps[x], comps[y]));
                if lhs != rhs || lhs.is_none() {
                    continue 'pick;
                }
            }
        }
        out.push(MonoidalTrans {
            src: i,
            tgt: j,
            components: comps,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Multilinear functors
// ---------------------------------------------------------------------------

/// A functor of several variables with one linearity constraint per slot.
///
/// `ob` and `mor` are mixed-radix tables over tuples of source objects and
/// morphisms (last coordinate fastest).  `delta[s]` is indexed by
/// `(object tuple) × (second object in slot s)` and holds the constraint
/// `δ_s: f(…,a_s,…) ⊕ f(…,a'_s,…) → f(…,a_s⊕a'_s,…)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearFunctor {
    pub sources: Vec<FinPermCat>,
    pub target: FinPermCat,
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

impl MultilinearFunctor {
    fn ob_radices(&self) -> Vec<usize> {
        self.sources.iter().map(|c| c.objects()).collect()
    }

    fn mor_radices(&self) -> Vec<usize> {
        self.sources.iter().map(|c| c.morphisms()).collect()
    }

    fn index(radices: &[usize], t: &[usize]) -> usize {
        let mut idx = 0;
        for (i, &x) in t.iter().enumerate() {
            idx = idx * radices[i] + x;
        }
        idx
    }

    pub fn ob_at(&self, t: &[usize]) -> usize {
        self.ob[Self::index(&self.ob_radices(), t)]
    }

    pub fn mor_at(&self, t: &[usize]) -> usize {
        self.mor[Self::index(&self.mor_radices(), t)]
    }

    /// Linearity constraint in slot `s` at object tuple `t`, second summand `a2`.
    pub fn delta_at(&self, s: usize, t: &[usize], a2: usize) -> usize {
        let radices = self.ob_radices();
        self.delta[s][Self::index(&radices, t) * radices[s] + a2]
    }

    /// Views a one-variable multilinear functor as a lax functor.
    pub fn to_lax(&self) -> Option<LaxFunctor> {
        if self.sources.len() != 1 {
            return None;
        }
        Some(LaxFunctor {
            source: self.sources[0].clone(),
            target: self.target.clone(),
            ob: self.ob.clone(),
            mor: self.mor.clone(),
            delta: self.delta[0].clone(),
        })
    }
}

/// Wraps a lax functor as a one-variable multilinear functor.
pub fn from_lax(f: &LaxFunctor) -> MultilinearFunctor {
    MultilinearFunctor {
        sources: vec![f.source.clone()],
        target: f.target.clone(),
        ob: f.ob.clone(),
        mor: f.mor.clone(),
        delta: vec![f.delta.clone()],
    }
}

/// The identity functor viewed as one-variable multilinear.
pub fn identity_multilinear(c: &FinPermCat) -> MultilinearFunctor {
    from_lax(&identity_lax(c))
}

/// Exhaustively checks all multilinearity axioms: functoriality on the
/// product, collapse of zero slots, per-slot unit/naturality/associativity/
/// symmetry of the constraints, and the cross-slot interchange.
pub fn validate_multilinear(f: &MultilinearFunctor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let k = f.sources.len();
    let t = &f.target;
    let ob_r = f.ob_radices();
    let mor_r = f.mor_radices();
    let ob_total: usize = ob_r.iter().product();
    let mor_total: usize = mor_r.iter().product();
    if f.ob.len() != ob_total
        || f.mor.len() != mor_total
        || f.delta.len() != k
        || (0..k).any(|s| f.delta[s].len() != ob_total * ob_r[s])
    {
        report.fail("shape", "table sizes do not match the source tuple space".into());
        return report;
    }
    if f.ob.iter().any(|&x| x >= t.objects())
        || f.mor.iter().any(|&x| x >= t.morphisms())
        || f.delta.iter().flatten().any(|&x| x >= t.morphisms())
    {
        report.fail("index range", "image index out of range".into());
        return report;
    }

    for ot in tuples(&ob_r) {
        if ot.contains(&0) && f.ob_at(&ot) != 0 {
            report.fail(
                "zero slot collapse",
                format!("f{:?} = {} ≠ 0", ot, f.ob_at(&ot)),
            );
        }
    }
    for mt in tuples(&mor_r) {
        let srcs: Vec<usize> = (0..k).map(|s| f.sources[s].mor(mt[s]).src).collect();
        let tgts: Vec<usize> = (0..k).map(|s| f.sources[s].mor(mt[s]).tgt).collect();
        let v = f.mor_at(&mt);
        let want = Mor {
            src: f.ob_at(&srcs),
            tgt: f.ob_at(&tgts),
        };
        if t.mor(v) != want {
            report.fail(
                "morphism endpoints",
                format!("f{:?} = {v} has wrong endpoints", mt),
            );
        }
        if (0..k).any(|s| mt[s] == f.sources[s].id(0)) && v != t.id(0) {
            report.fail(
                "zero slot collapse",
                format!("f{:?} = {v} is not id_0", mt),
            );
        }
    }
    if !report.is_valid() {
        return report;
    }
    for ot in tuples(&ob_r) {
        let idt: Vec<usize> = (0..k).map(|s| f.sources[s].id(ot[s])).collect();
        if f.mor_at(&idt) != t.id(f.ob_at(&ot)) {
            report.fail("identity preservation", format!("f(id{:?}) is not an identity", ot));
        }
    }
    // Functoriality over the product: compose componentwise wherever defined.
    let comp_pairs: Vec<Vec<(usize, usize)>> = f
        .sources
        .iter()
        .map(|c| {
            let m = c.morphisms();
            (0..m)
                .flat_map(|g| (0..m).map(move |h| (g, h)))
                .filter(|&(g, h)| c.mor(h).tgt == c.mor(g).src)
                .collect()
        })
        .collect();
    let pair_radices: Vec<usize> = comp_pairs.iter().map(|p| p.len()).collect();
    for pick in tuples(&pair_radices) {
        let gs: Vec<usize> = (0..k).map(|s| comp_pairs[s][pick[s]].0).collect();
        let hs: Vec<usize> = (0..k).map(|s| comp_pairs[s][pick[s]].1).collect();
        let ghs: Vec<usize> = (0..k)
            .map(|s| f.sources[s].comp(gs[s], hs[s]).unwrap())
            .collect();
        if t.comp(f.mor_at(&gs), f.mor_at(&hs)) != Some(f.mor_at(&ghs)) {
            report.fail(
                "functoriality",
                format!("f(g∘h) ≠ f(g)∘f(h) at g={:?}, h={:?}", gs, hs),
            );
        }
    }

    for s in 0..k {
        for ot in tuples(&ob_r) {
            for a2 in 0..ob_r[s] {
                let d = f.delta_at(s, &ot, a2);
                let mut with_a2 = ot.clone();
                with_a2[s] = a2;
                let mut with_sum = ot.clone();
                with_sum[s] = f.sources[s].obj_sum(ot[s], a2);
                let want = Mor {
                    src: t.obj_sum(f.ob_at(&ot), f.ob_at(&with_a2)),
                    tgt: f.ob_at(&with_sum),
                };
                if t.mor(d) != want {
                    report.fail(
                        "linearity constraint endpoints",
                        format!("δ_{s}{:?}+{a2} = {d} has wrong endpoints", ot),
                    );
                    continue;
                }
                let degenerate =
                    ot[s] == 0 || a2 == 0 || (0..k).any(|r| r != s && ot[r] == 0);
                if degenerate && d != t.id(f.ob_at(&with_sum)) {
                    report.fail(
                        "linearity constraint unit",
                        format!("δ_{s}{:?}+{a2} must be an identity", ot),
                    );
                }
            }
        }
    }
    if !report.is_valid() {
        return report;
    }

    // Naturality of δ_s in every variable.
    for s in 0..k {
        for mt in tuples(&mor_r) {
            for m2 in 0..mor_r[s] {
                let srcs: Vec<usize> = (0..k).map(|r| f.sources[r].mor(mt[r]).src).collect();
                let tgts: Vec<usize> = (0..k).map(|r| f.sources[r].mor(mt[r]).tgt).collect();
                let mut mt2 = mt.clone();
                mt2[s] = m2;
                let mut mts = mt.clone();
                mts[s] = f.sources[s].mor_sum(mt[s], m2);
                let mut src2 = srcs.clone();
                src2[s] = f.sources[s].mor(m2).src;
                let lhs = t.comp(
                    f.delta_at(s, &tgts, f.sources[s].mor(m2).tgt),
                    t.mor_sum(f.mor_at(&mt), f.mor_at(&mt2)),
                );
                let rhs = t.comp(f.mor_at(&mts), f.delta_at(s, &srcs, src2[s]));
                if lhs != rhs || lhs.is_none() {
                    report.fail(
                        "linearity constraint naturality",
                        format!("slot {s}, morphisms {:?} + {m2}", mt),
                    );
                }
            }
        }
    }
    // Per-slot associativity and symmetry squares.
    for s in 0..k {
        for ot in tuples(&ob_r) {
            for a2 in 0..ob_r[s] {
                let mut with_a2 = ot.clone();
                with_a2[s] = a2;
                for a3 in 0..ob_r[s] {
                    let mut with_sum12 = ot.clone();
                    with_sum12[s] = f.sources[s].obj_sum(ot[s], a2);
                    let lhs = t.comp(
                        f.delta_at(s, &with_sum12, a3),
                        t.mor_sum(f.delta_at(s, &ot, a2), {
                            let mut w = ot.clone();
                            w[s] = a3;
                            t.id(f.ob_at(&w))
                        }),
                    );
                    let rhs = t.comp(
                        f.delta_at(s, &ot, f.sources[s].obj_sum(a2, a3)),
                        t.mor_sum(t.id(f.ob_at(&ot)), f.delta_at(s, &with_a2, a3)),
                    );
                    if lhs != rhs || lhs.is_none() {
                        report.fail(
                            "linearity constraint associativity",
                            format!("slot {s} at {:?} with {a2}, {a3}", ot),
                        );
                    }
                }
                let lhs = t.comp(
                    f.delta_at(s, &with_a2, ot[s]),
                    t.gamma_at(f.ob_at(&ot), f.ob_at(&with_a2)),
                );
                let gamma_tuple: Vec<usize> = (0..k)
                    .map(|r| {
                        if r == s {
                            f.sources[s].gamma_at(ot[s], a2)
                        } else {
                            f.sources[r].id(ot[r])
                        }
                    })
                    .collect();
                let rhs = t.comp(f.mor_at(&gamma_tuple), f.delta_at(s, &ot, a2));
                if lhs != rhs || lhs.is_none() {
                    report.fail(
                        "linearity constraint symmetry",
                        format!("slot {s} at {:?} with {a2}", ot),
                    );
                }
            }
        }
    }
    // Cross-slot interchange: both assembly orders of a double sum agree.
    for s in 0..k {
        for r in 0..k {
            if r == s {
                continue;
            }
            for ot in tuples(&ob_r) {
                for a2 in 0..ob_r[s] {
                    for b2 in 0..ob_r[r] {
                        let mut os = ot.clone();
                        os[s] = a2; // tuple with slot s replaced
                        let mut or_ = ot.clone();
                        or_[r] = b2; // tuple with slot r replaced
                        let mut osr = ot.clone();
                        osr[s] = a2;
                        osr[r] = b2;
                        let mut sum_s = ot.clone();
                        sum_s[s] = f.sources[s].obj_sum(ot[s], a2);
                        let mut sum_s_r = sum_s.clone();
                        sum_s_r[r] = b2;
                        let mut sum_r = ot.clone();
                        sum_r[r] = f.sources[r].obj_sum(ot[r], b2);

                        // Route A: pair up slot-s sums, then the slot-r sum.
                        let a_first = t.mor_sum(
                            f.delta_at(s, &ot, a2),
                            f.delta_at(s, &or_, a2),
                        );
                        let route_a = t.comp(f.delta_at(r, &sum_s, b2), a_first);
                        // Route B: twist the middle, pair slot-r sums, then slot s.
                        let twist = t.mor_sum(
                            t.mor_sum(
                                t.id(f.ob_at(&ot)),
                                t.gamma_at(f.ob_at(&os), f.ob_at(&or_)),
                            ),
                            t.id(f.ob_at(&osr)),
                        );
                        let b_pairs = t.mor_sum(
                            f.delta_at(r, &ot, b2),
                            f.delta_at(r, &os, b2),
                        );
                        let route_b = t
                            .comp(b_pairs, twist)
                            .and_then(|x| t.comp(f.delta_at(s, &sum_r, a2), x));
                        if route_a != route_b || route_a.is_none() {
                            report.fail(
                                "cross-slot interchange",
                                format!("slots ({s},{r}) at {:?} with {a2}, {b2}", ot),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

/// Composite of a `k`-linear functor with `k` multilinear functors, one per
/// slot.  The constraint in composite slot `(j, i)` is
/// `g(1,…,δ^{f_j}_i,…,1) ∘ δ^g_j`.
pub fn compose_multilinear(
    g: &MultilinearFunctor,
    fs: &[MultilinearFunctor],
) -> Result<MultilinearFunctor> {
    if g.sources.len() != fs.len() {
        return Err(Error::ObjectMismatch(format!(
            "outer functor has {} slots but {} inner functors were given",
            g.sources.len(),
            fs.len()
        )));
    }
    for (j, fj) in fs.iter().enumerate() {
        if fj.target != g.sources[j] {
            return Err(Error::ObjectMismatch(format!(
                "inner functor {j} does not land in outer slot {j}"
            )));
        }
    }
    let sources: Vec<FinPermCat> = fs.iter().flat_map(|f| f.sources.clone()).collect();
    let ob_r: Vec<usize> = sources.iter().map(|c| c.objects()).collect();
    let mor_r: Vec<usize> = sources.iter().map(|c| c.morphisms()).collect();
    let blocks: Vec<std::ops::Range<usize>> = {
        let mut out = Vec::new();
        let mut start = 0;
        for f in fs {
            out.push(start..start + f.sources.len());
            start += f.sources.len();
        }
        out
    };

    let mids_ob = |t: &[usize]| -> Vec<usize> {
        fs.iter()
            .enumerate()
            .map(|(j, f)| f.ob_at(&t[blocks[j].clone()]))
            .collect()
    };
    let mut ob = Vec::new();
    for t in tuples(&ob_r) {
        ob.push(g.ob_at(&mids_ob(&t)));
    }
    let mut mor = Vec::new();
    for t in tuples(&mor_r) {
        let mids: Vec<usize> = fs
            .iter()
            .enumerate()
            .map(|(j, f)| f.mor_at(&t[blocks[j].clone()]))
            .collect();
        mor.push(g.mor_at(&mids));
    }
    let ob_total: usize = ob_r.iter().product();
    let mut delta = Vec::new();
    for (slot, _) in sources.iter().enumerate() {
        let j = blocks.iter().position(|r| r.contains(&slot)).unwrap();
        let i = slot - blocks[j].start;
        let mut table = vec![0usize; ob_total * ob_r[slot]];
        for (tidx, t) in tuples(&ob_r).enumerate() {
            for a2 in 0..ob_r[slot] {
                let mids = mids_ob(&t);
                let mut t2 = t.clone();
                t2[slot] = a2;
                let mids2 = mids_ob(&t2);
                let d_outer = g.delta_at(j, &mids, mids2[j]);
                let block: Vec<usize> = t[blocks[j].clone()].to_vec();
                let d_inner = fs[j].delta_at(i, &block, a2);
                let g_args: Vec<usize> = (0..fs.len())
                    .map(|l| {
                        if l == j {
                            d_inner
                        } else {
                            g.sources[l].id(mids[l])
                        }
                    })
                    .collect();
                table[tidx * ob_r[slot] + a2] = g
                    .target
                    .comp(g.mor_at(&g_args), d_outer)
                    .expect("composite linearity constraints must compose");
            }
        }
        delta.push(table);
    }
    Ok(MultilinearFunctor {
        sources,
        target: g.target.clone(),
        ob,
        mor,
        delta,
    })
}

// ---------------------------------------------------------------------------
// Evaluation, currying, and the composition pairing
// ---------------------------------------------------------------------------

/// The evaluation functor `(hom(a,b), a) → b`, `(f, x) ↦ f(x)`.  Its first
/// linearity constraint is the identity; the second is the structure
/// morphism of the evaluated functor.
pub fn eval_bilinear(hom: &HomPermCat) -> MultilinearFunctor {
    let (a, b) = (&hom.source, &hom.target);
    let nf = hom.functors.len();
    let nt = hom.transformations.len();
    let mut ob = Vec::with_capacity(nf * a.objects());
    for i in 0..nf {
        for x in 0..a.objects() {
            ob.push(hom.functors[i].ob[x]);
        }
    }
    let mut mor = Vec::with_capacity(nt * a.morphisms());
    for t in &hom.transformations {
        let g = &hom.functors[t.tgt];
        for m in 0..a.morphisms() {
            let x = a.mor(m).src;
            mor.push(
                b.comp(g.mor[m], t.components[x])
                    .expect("evaluation composite exists"),
            );
        }
    }
    // δ_1: (f⊕g)(x) literally equals f(x)⊕g(x), so the constraint is an identity.
    let mut d1 = vec![0usize; nf * a.objects() * nf];
    let mut d2 = vec![0usize; nf * a.objects() * a.objects()];
    for i in 0..nf {
        for x in 0..a.objects() {
            for i2 in 0..nf {
                let o = b.obj_sum(hom.functors[i].ob[x], hom.functors[i2].ob[x]);
                d1[(i * a.objects() + x) * nf + i2] = b.id(o);
            }
            for x2 in 0..a.objects() {
                d2[(i * a.objects() + x) * a.objects() + x2] = hom.functors[i].delta_at(x, x2);
            }
        }
    }
    MultilinearFunctor {
        sources: vec![hom.cat.clone(), a.clone()],
        target: b.clone(),
        ob,
        mor,
        delta: vec![d1, d2],
    }
}

/// The composition pairing `(hom(b,c), hom(a,b)) → hom(a,c)`, `(g, f) ↦ g∘f`,
/// with horizontal composition on transformations.  The first linearity
/// constraint is the identity.
pub fn composition_bilinear(
    ab: &HomPermCat,
    bc: &HomPermCat,
    ac: &HomPermCat,
) -> Result<MultilinearFunctor> {
    if ab.target != bc.source || ab.source != ac.source || bc.target != ac.target {
        return Err(Error::ObjectMismatch(
            "hom categories do not share the required endpoints".into(),
        ));
    }
    let a_objs = ab.source.objects();
    let (nbc, nab, _nac) = (bc.functors.len(), ab.functors.len(), ac.functors.len());
    let mut ob = vec![0usize; nbc * nab];
    for g in 0..nbc {
        for f in 0..nab {
            let comp = compose_lax(&bc.functors[g], &ab.functors[f])?;
            ob[g * nab + f] = ac.functor_index(&comp).ok_or_else(|| {
                Error::ValidationFailed("composite functor escapes the enumeration".into())
            })?;
        }
    }
    let (mbc, mab) = (bc.transformations.len(), ab.transformations.len());
    let mut mor = vec![0usize; mbc * mab];
    for (ti, theta) in bc.transformations.iter().enumerate() {
        for (ei, eta) in ab.transformations.iter().enumerate() {
            let g = &bc.functors[theta.src];
            let f2 = &ab.functors[eta.tgt];
            let comps: Vec<usize> = (0..a_objs)
                .map(|x| {
                    bc.target
                        .comp(theta.components[f2.ob[x]], g.mor[eta.components[x]])
                        .expect("horizontal composite exists")
                })
                .collect();
            mor[ti * mab + ei] = ac
                .trans_index(ob[theta.src * nab + eta.src], ob[theta.tgt * nab + eta.tgt], &comps)
                .ok_or_else(|| {
                    Error::ValidationFailed(
                        "horizontal composite escapes the enumeration".into(),
                    )
                })?;
        }
    }
    let mut d1 = vec![0usize; nbc * nab * nbc];
    let mut d2 = vec![0usize; nbc * nab * nab];
    for g in 0..nbc {
        for f in 0..nab {
            for g2 in 0..nbc {
                // (g∘f) ⊕ (g2∘f) is literally (g⊕g2)∘f.
                let o = ac.cat.obj_sum(ob[g * nab + f], ob[g2 * nab + f]);
                d1[(g * nab + f) * nbc + g2] = ac.cat.id(o);
            }
            for f2 in 0..nab {
                let comps: Vec<usize> = (0..a_objs)
                    .map(|x| {
                        bc.functors[g]
                            .delta_at(ab.functors[f].ob[x], ab.functors[f2].ob[x])
                    })
                    .collect();
                let src = ac.cat.obj_sum(ob[g * nab + f], ob[g * nab + f2]);
                let tgt = ob[g * nab + ab.cat.obj_sum(f, f2)];
                d2[(g * nab + f) * nab + f2] =
                    ac.trans_index(src, tgt, &comps).ok_or_else(|| {
                        Error::ValidationFailed(
                            "composition constraint escapes the enumeration".into(),
                        )
                    })?;
            }
        }
    }
    Ok(MultilinearFunctor {
        sources: vec![bc.cat.clone(), ab.cat.clone()],
        target: ac.cat.clone(),
        ob,
        mor,
        delta: vec![d1, d2],
    })
}

/// Curries a bilinear functor `(A, B) → C` into a lax functor
/// `A → hom(B, C)`, so that evaluation recovers the original exactly.
pub fn curry(f: &MultilinearFunctor, hom_bc: &HomPermCat) -> Result<LaxFunctor> {
    if f.sources.len() != 2 {
        return Err(Error::ObjectMismatch(format!(
            "currying needs a bilinear functor, got {} slots",
            f.sources.len()
        )));
    }
    if f.sources[1] != hom_bc.source || f.target != hom_bc.target {
        return Err(Error::ObjectMismatch(
            "hom category endpoints do not match the bilinear functor".into(),
        ));
    }
    let a = &f.sources[0];
    let bcat = &f.sources[1];
    let n = a.objects();
    let mut ob = Vec::with_capacity(n);
    for x in 0..n {
        let partial = LaxFunctor {
            source: bcat.clone(),
            target: f.target.clone(),
            ob: (0..bcat.objects()).map(|y| f.ob_at(&[x, y])).collect(),
            mor: (0..bcat.morphisms())
                .map(|m| f.mor_at(&[a.id(x), m]))
                .collect(),
            delta: {
                let mut d = Vec::with_capacity(bcat.objects() * bcat.objects());
                for y in 0..bcat.objects() {
                    for y2 in 0..bcat.objects() {
                        d.push(f.delta_at(1, &[x, y], y2));
                    }
                }
                d
            },
        };
        ob.push(hom_bc.functor_index(&partial).ok_or_else(|| {
            Error::ValidationFailed("partial evaluation escapes the hom enumeration".into())
        })?);
    }
    let mut mor = Vec::with_capacity(a.morphisms());
    for m in 0..a.morphisms() {
        let comps: Vec<usize> = (0..bcat.objects())
            .map(|y| f.mor_at(&[m, bcat.id(y)]))
            .collect();
        mor.push(
            hom_bc
                .trans_index(ob[a.mor(m).src], ob[a.mor(m).tgt], &comps)
                .ok_or_else(|| {
                    Error::ValidationFailed("partial transformation escapes the enumeration".into())
                })?,
        );
    }
    let mut delta = Vec::with_capacity(n * n);
    for x in 0..n {
        for x2 in 0..n {
            let comps: Vec<usize> = (0..bcat.objects())
                .map(|y| f.delta_at(0, &[x, y], x2))
                .collect();
            let src = hom_bc.cat.obj_sum(ob[x], ob[x2]);
            let tgt = ob[a.obj_sum(x, x2)];
            delta.push(hom_bc.trans_index(src, tgt, &comps).ok_or_else(|| {
                Error::ValidationFailed("curried constraint escapes the enumeration".into())
            })?);
        }
    }
    let g = LaxFunctor {
        source: a.clone(),
        target: hom_bc.cat.clone(),
        ob,
        mor,
        delta,
    };
    validate_lax(&g).into_result()?;
    Ok(g)
}

/// Un-curries a functor into the hom category back to a bilinear functor by
/// evaluating pointwise; inverse to [`curry`] on the nose.
pub fn uncurry(h: &LaxFunctor, hom_bc: &HomPermCat) -> Result<MultilinearFunctor> {
    if h.target != hom_bc.cat {
        return Err(Error::ObjectMismatch(
            "functor does not land in the given hom category".into(),
        ));
    }
    let ev = eval_bilinear(hom_bc);
    compose_multilinear(&ev, &[from_lax(h), identity_multilinear(&hom_bc.source)])
}

/// Checks that currying is the unique factorization through evaluation by
/// enumerating every lax functor into the hom category.  Returns the number
/// of factorizations found (1 when the universal property holds).
pub fn count_eval_factorizations(
    f: &MultilinearFunctor,
    hom_bc: &HomPermCat,
    caps: &Caps,
) -> Result<usize> {
    let all = enumerate_lax_functors(&f.sources[0], &hom_bc.cat, caps)?;
    let mut count = 0;
    for h in &all {
        if uncurry(h, hom_bc)? == *f {
            count += 1;
        }
    }
    Ok(count)
}

/// Verifies that the two ways of evaluating a composite — composing first or
/// evaluating in stages — give the same trilinear functor on
/// `(hom(b,c), hom(a,b), a)`, at the level of objects, morphisms, and
/// assembled linearity constraints.
pub fn check_trilinear_eval(
    a: &FinPermCat,
    b: &FinPermCat,
    c: &FinPermCat,
    caps: &Caps,
) -> Result<ValidationReport> {
    let hom_ab = hom_permcat(a, b, caps)?;
    let hom_bc = hom_permcat(b, c, caps)?;
    let hom_ac = hom_permcat(a, c, caps)?;
    let ev_ac = eval_bilinear(&hom_ac);
    let ev_ab = eval_bilinear(&hom_ab);
    let ev_bc = eval_bilinear(&hom_bc);
    let pairing = composition_bilinear(&hom_ab, &hom_bc, &hom_ac)?;
    let left = compose_multilinear(&ev_ac, &[pairing, identity_multilinear(a)])?;
    let right = compose_multilinear(&ev_bc, &[identity_multilinear(&hom_bc.cat), ev_ab])?;

    let mut report = ValidationReport::default();
    let lv = validate_multilinear(&left);
    for fail in lv.failures {
        report.fail(
            &format!("compose-then-evaluate {}", fail.axiom),
            fail.witness,
        );
    }
    let rv = validate_multilinear(&right);
    for fail in rv.failures {
        report.fail(
            &format!("evaluate-in-stages {}", fail.axiom),
            fail.witness,
        );
    }
    if left.ob != right.ob {
        let i = (0..left.ob.len()).find(|&i| left.ob[i] != right.ob[i]).unwrap();
        report.fail(
            "trilinear evaluation objects",
            format!("object tables differ first at index {i}"),
        );
    }
    if left.mor != right.mor {
        let i = (0..left.mor.len()).find(|&i| left.mor[i] != right.mor[i]).unwrap();
        report.fail(
            "trilinear evaluation morphisms",
            format!("morphism tables differ first at index {i}"),
        );
    }
    if left.delta != right.delta {
        report.fail(
            "trilinear evaluation constraints",
            "assembled linearity constraints differ".into(),
        );
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// π₀ and group completion
// ---------------------------------------------------------------------------

/// Connected components of objects (zig-zag classes under all morphisms),
/// as a commutative monoid under `⊕`.  Components are numbered by least
/// member, so the unit component is `0`.  Returns the monoid and the
/// component of each object.
pub fn pi0_objects(c: &FinPermCat) -> Result<(FinCommMonoid, Vec<usize>)> {
    let n = c.objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for m in 0..c.morphisms() {
        let (a, b) = (c.mor(m).src, c.mor(m).tgt);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        // Attach the larger root to the smaller so roots are least members.
        if ra < rb {
            parent[rb] = ra;
        } else {
            parent[ra] = rb;
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let mut distinct: Vec<usize> = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let comp_of: Vec<usize> = roots
        .iter()
        .map(|r| distinct.binary_search(r).unwrap())
        .collect();
    roots = distinct;
    let k = roots.len();
    let mut table = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = comp_of[c.obj_sum(roots[i], roots[j])];
        }
    }
    let monoid = FinCommMonoid::new(table)?;
    Ok((monoid, comp_of))
}

/// Universal abelian group on a finite commutative monoid: one generator per
/// element, one relation `x_i + x_j − x_{i+j}` per pair.
pub fn group_completion(m: &FinCommMonoid) -> AbGroup {
    let n = m.len();
    let mut rels = IntMat::zero(n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            let s = m.add(i, j);
            let mut add_entry = |row: usize, v: i64| {
                rels.set(row, col, rels.at(row, col) + v);
            };
            add_entry(i, 1);
            add_entry(j, 1);
            add_entry(s, -1);
        }
    }
    AbGroup::new(n, rels).expect("presentation dimensions are consistent")
}

/// The homomorphism of group completions induced on connected components by
/// a lax functor.  Functorial: composing functors composes the results.
pub fn induced_map_on_completions(f: &LaxFunctor) -> Result<AbHom> {
    let (ms, cs) = pi0_objects(&f.source)?;
    let (mt, ct) = pi0_objects(&f.target)?;
    let gs = group_completion(&ms);
    let gt = group_completion(&mt);
    // Representative of source component i = least object in it.
    let mut reps = vec![usize::MAX; ms.len()];
    for (obj, &comp) in cs.iter().enumerate() {
        if reps[comp] == usize::MAX {
            reps[comp] = obj;
        }
    }
    let mut mat = IntMat::zero(mt.len(), ms.len());
    for (i, &rep) in reps.iter().enumerate() {
        mat.set(ct[f.ob[rep]], i, 1);
    }
    AbHom::new(gs, gt, mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FinCommMonoid {
        FinCommMonoid::cyclic(n)
    }

    fn gm22() -> FinPermCat {
        group_morphism_permcat(&z(2), &z(2)).unwrap()
    }

    #[test]
    fn monoid_validation_rejects_bad_tables() {
        // Unit broken: 0 + 1 = 0.
        let err = FinCommMonoid::new(vec![vec![0, 0], vec![1, 0]]);
        assert!(err.is_err());
        // Not commutative.
        let err = FinCommMonoid::new(vec![
            vec![0, 1, 2],
            vec![1, 1, 0],
            vec![2, 2, 2],
        ]);
        assert!(err.is_err());
        // Valid: Z/2 and the absorbing two-element monoid.
        assert!(FinCommMonoid::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(FinCommMonoid::new(vec![vec![0, 1], vec![1, 1]]).is_ok());
        assert!(z(4).is_group());
        assert!(!FinCommMonoid::new(vec![vec![0, 1], vec![1, 1]])
            .unwrap()
            .is_group());
    }

    #[test]
    fn monoid_hom_enumeration_matches_hand_counts() {
        assert_eq!(z(2).hom_maps(&z(2)).len(), 2);
        assert_eq!(z(2).hom_maps(&z(3)).len(), 1);
        assert_eq!(z(3).hom_maps(&z(3)).len(), 3);
        assert_eq!(z(4).hom_maps(&z(4)).len(), 4);
        let klein = FinCommMonoid::product(&z(2), &z(2));
        assert_eq!(klein.hom_maps(&z(2)).len(), 4);
    }

    #[test]
    fn tabulated_group_addition_matches_presentation() {
        let g = AbGroup::from_invariants(&[2, 3]);
        let tab = TabulatedGroup::new(&g, 64).unwrap();
        assert_eq!(tab.monoid.len(), 6);
        assert!(tab.monoid.is_group());
        // index_of is inverse to reps, and addition matches the group.
        for i in 0..6 {
            assert_eq!(tab.index_of(&tab.reps[i]), i);
            for j in 0..6 {
                let sum: Vec<i64> = tab.reps[i]
                    .iter()
                    .zip(&tab.reps[j])
                    .map(|(a, b)| a + b)
                    .collect();
                assert_eq!(tab.monoid.add(i, j), tab.index_of(&sum));
            }
        }
        // Cap and finiteness failures.
        assert!(TabulatedGroup::new(&g, 5).is_err());
        assert!(TabulatedGroup::new(&AbGroup::free(1), 64).is_err());
    }

    #[test]
    fn discrete_and_group_morphism_shapes() {
        let one = discrete_permcat(&FinCommMonoid::trivial());
        assert_eq!((one.objects(), one.morphisms()), (1, 1));
        let d3 = discrete_permcat(&z(3));
        assert_eq!((d3.objects(), d3.morphisms()), (3, 3));
        assert!(validate_permcat(&d3).is_valid());
        let g = gm22();
        assert_eq!((g.objects(), g.morphisms()), (2, 4));
        assert!(validate_permcat(&g).is_valid());
        let g23 = group_morphism_permcat(&z(2), &z(3)).unwrap();
        assert_eq!((g23.objects(), g23.morphisms()), (2, 6));
        assert!(validate_permcat(&g23).is_valid());
        // The endomorphism table must be a group.
        let absorbing = FinCommMonoid::new(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(group_morphism_permcat(&z(2), &absorbing).is_err());
    }

    #[test]
    fn validator_reports_witnesses() {
        let mut bad = discrete_permcat(&z(3));
        // Break associativity of the object sum: 1⊕1 = 1.
        bad.sum_obj[4] = 1; // entry (1, 1) of the 3×3 sum table
        let report = validate_permcat(&bad);
        assert!(!report.is_valid());
        assert!(report
            .failures
            .iter()
            .any(|f| f.axiom == "object sum associativity"));
        // Break strict unitality of the symmetry: γ(0,1) must be id_1.
        let mut twisted = gm22();
        twisted.gamma[1] = 3; // the nontrivial endomorphism of object 1
        let report = validate_permcat(&twisted);
        assert!(!report.is_valid());
        assert!(report.failures.iter().any(|f| f.axiom == "symmetry unit"));
    }

    #[test]
    fn from_parts_validates() {
        let d2 = discrete_permcat(&z(2));
        let rebuilt = FinPermCat::from_parts(
            2,
            vec![vec![0, 1], vec![1, 0]],
            vec![(0, 0), (1, 1)],
            vec![
                vec![Some(0), None],
                vec![None, Some(1)],
            ],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(rebuilt, d2);
        // The absorbing monoid 1⊕1 = 1 also yields a valid discrete category.
        let absorbing = FinPermCat::from_parts(
            2,
            vec![vec![0, 1], vec![1, 1]],
            vec![(0, 0), (1, 1)],
            vec![vec![Some(0), None], vec![None, Some(1)]],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(absorbing.is_ok());
        let really_bad = FinPermCat::from_parts(
            2,
            vec![vec![0, 1], vec![1, 0]],
            vec![(0, 0), (1, 1)],
            vec![vec![Some(0), None], vec![None, Some(0)]], // id_1∘id_1 = id_0
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        );
        assert!(matches!(really_bad, Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn identity_lax_validates_and_is_unital() {
        let g = gm22();
        let idf = identity_lax(&g);
        assert!(validate_lax(&idf).is_valid());
        let again = compose_lax(&idf, &idf).unwrap();
        assert_eq!(again, idf);
        let zero = zero_lax(&g, &g);
        assert!(validate_lax(&zero).is_valid());
        assert_eq!(compose_lax(&idf, &zero).unwrap(), zero);
        assert_eq!(compose_lax(&zero, &idf).unwrap(), zero);
    }

    #[test]
    fn lax_between_discrete_categories_is_a_monoid_hom() {
        let d4 = discrete_permcat(&z(4));
        let functors = enumerate_lax_functors(&d4, &d4, &Caps::default()).unwrap();
        assert_eq!(functors.len(), 4); // exactly the monoid endomorphisms of Z/4
        for f in &functors {
            // δ is forced to identities in a discrete target.
            assert!(f.delta.iter().all(|&d| d < d4.objects()));
        }
        // A non-homomorphism object map cannot be completed to a lax functor:
        // f(1) = 1, f(2) = 3 leaves hom(f(1)⊕f(1), f(2)) empty.
        let broken = LaxFunctor {
            source: d4.clone(),
            target: d4.clone(),
            ob: vec![0, 1, 3, 2],
            mor: vec![0, 1, 3, 2],
            delta: identity_lax(&d4).delta,
        };
        assert!(!validate_lax(&broken).is_valid());
    }

    #[test]
    fn compose_lax_is_associative_at_small_size() {
        let g = gm22();
        let hom = hom_permcat(&g, &g, &Caps::default()).unwrap();
        let fs = &hom.functors;
        for f1 in fs {
            for f2 in fs {
                for f3 in fs {
                    let left = compose_lax(&compose_lax(f3, f2).unwrap(), f1).unwrap();
                    let right = compose_lax(f3, &compose_lax(f2, f1).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn hom_of_discrete_categories_matches_monoid_hom_oracle() {
        let caps = Caps::default();
        let cases = [
            (z(2), z(2)),
            (z(2), z(3)),
            (z(3), z(3)),
            (FinCommMonoid::product(&z(2), &z(2)), z(2)),
        ];
        for (m, n) in cases {
            let hom = hom_permcat(&discrete_permcat(&m), &discrete_permcat(&n), &caps).unwrap();
            assert_eq!(hom.functors.len(), m.hom_maps(&n).len());
            assert!(hom.cat.is_discrete());
            assert!(validate_permcat(&hom.cat).is_valid());
        }
    }

    #[test]
    fn hom_of_group_morphism_category_is_frozen() {
        let g = gm22();
        let hom = hom_permcat(&g, &g, &Caps::default()).unwrap();
        assert_eq!(hom.functors.len(), 8);
        assert_eq!(hom.transformations.len(), 16);
        assert!(validate_permcat(&hom.cat).is_valid());
        assert_eq!(hom.functors[0], zero_lax(&g, &g));
        // Components pair up functors with their twin differing by nothing:
        // each functor carries exactly one nontrivial automorphism.
        let (pi0, _) = pi0_objects(&hom.cat).unwrap();
        assert_eq!(pi0.len(), 8);
        assert_eq!(group_completion(&pi0).invariants(), vec![2, 2, 2]);
    }

    #[test]
    fn hom_unit_object_is_the_zero_functor() {
        let caps = Caps::default();
        let cases = [
            (gm22(), gm22()),
            (discrete_permcat(&z(2)), gm22()),
            (discrete_permcat(&z(3)), discrete_permcat(&z(3))),
        ];
        for (a, b) in cases {
            let hom = hom_permcat(&a, &b, &caps).unwrap();
            assert_eq!(hom.functors[0], zero_lax(&a, &b));
            assert!(validate_permcat(&hom.cat).is_valid());
        }
    }

    #[test]
    fn one_object_source_gives_one_functor() {
        let one = discrete_permcat(&FinCommMonoid::trivial());
        let hom = hom_permcat(&one, &gm22(), &Caps::default()).unwrap();
        assert_eq!(hom.functors.len(), 1);
        assert_eq!(hom.cat.morphisms(), 1);
    }

    #[test]
    fn evaluation_is_multilinear_and_strictly_unital() {
        let g = gm22();
        let hom = hom_permcat(&g, &g, &Caps::default()).unwrap();
        let ev = eval_bilinear(&hom);
        assert!(validate_multilinear(&ev).is_valid());
        for x in 0..g.objects() {
            assert_eq!(ev.ob_at(&[0, x]), 0); // zero functor evaluates to 0
        }
        for i in 0..hom.functors.len() {
            assert_eq!(ev.ob_at(&[i, 0]), 0); // f(0) = 0
        }
        // First constraint is always an identity morphism.
        for &d in &ev.delta[0] {
            assert!(d < g.objects());
        }
    }

    #[test]
    fn one_variable_validation_agrees_with_validate_lax() {
        let g = gm22();
        let idf = identity_lax(&g);
        assert!(validate_multilinear(&from_lax(&idf)).is_valid());
        let mut broken = idf.clone();
        broken.mor[2] = 3; // wrong endpoints
        assert_eq!(
            validate_lax(&broken).is_valid(),
            validate_multilinear(&from_lax(&broken)).is_valid()
        );
        assert!(!validate_lax(&broken).is_valid());
    }

    #[test]
    fn bilinear_on_discrete_categories_is_biadditive() {
        let d2 = discrete_permcat(&z(2));
        // Multiplication x·y as a table over pairs.
        let mul = |x: usize, y: usize| (x * y) % 2;
        let mut ob = vec![0usize; 4];
        for x in 0..2 {
            for y in 0..2 {
                ob[x * 2 + y] = mul(x, y);
            }
        }
        let mut d1 = vec![0usize; 4 * 2];
        let mut d2t = vec![0usize; 4 * 2];
        for x in 0..2 {
            for y in 0..2 {
                for x2 in 0..2 {
                    d1[(x * 2 + y) * 2 + x2] = mul((x + x2) % 2, y);
                }
                for y2 in 0..2 {
                    d2t[(x * 2 + y) * 2 + y2] = mul(x, (y + y2) % 2);
                }
            }
        }
        let f = MultilinearFunctor {
            sources: vec![d2.clone(), d2.clone()],
            target: d2.clone(),
            ob: ob.clone(),
            mor: ob.clone(),
            delta: vec![d1, d2t],
        };
        assert!(validate_multilinear(&f).is_valid());
        // Projection to the second coordinate is not bi-additive: f(0, 1) ≠ 0.
        let mut proj = f.clone();
        proj.ob = vec![0, 1, 0, 1];
        proj.mor = proj.ob.clone();
        assert!(!validate_multilinear(&proj).is_valid());
    }

    #[test]
    fn composition_pairing_is_multilinear() {
        let g = gm22();
        let caps = Caps::default();
        let hom = hom_permcat(&g, &g, &caps).unwrap();
        let pairing = composition_bilinear(&hom, &hom, &hom).unwrap();
        assert!(validate_multilinear(&pairing).is_valid());
        // Spot-check: pairing with the identity functor fixes everything.
        let id_idx = hom.functor_index(&identity_lax(&g)).unwrap();
        for f in 0..hom.functors.len() {
            assert_eq!(pairing.ob_at(&[id_idx, f]), f);
        }
    }

    #[test]
    fn curry_of_evaluation_is_the_identity() {
        let g = gm22();
        let caps = Caps::default();
        let hom = hom_permcat(&g, &g, &caps).unwrap();
        let ev = eval_bilinear(&hom);
        let curried = curry(&ev, &hom).unwrap();
        assert_eq!(curried, identity_lax(&hom.cat));
        // Un-currying recovers evaluation exactly.
        assert_eq!(uncurry(&curried, &hom).unwrap(), ev);
    }

    #[test]
    fn curry_of_zero_is_constant_zero_and_unique_on_discrete_instances() {
        let d2 = discrete_permcat(&z(2));
        let caps = Caps::default();
        let hom = hom_permcat(&d2, &d2, &caps).unwrap();
        let zero = MultilinearFunctor {
            sources: vec![d2.clone(), d2.clone()],
            target: d2.clone(),
            ob: vec![0; 4],
            mor: vec![0; 4],
            delta: vec![vec![0; 8], vec![0; 8]],
        };
        let curried = curry(&zero, &hom).unwrap();
        assert_eq!(curried.ob, vec![0, 0]);
        assert_eq!(count_eval_factorizations(&zero, &hom, &caps).unwrap(), 1);
        // Multiplication bilinear: curries to the two distinct endomorphisms.
        let mul = {
            let mut ob = vec![0usize; 4];
            for x in 0..2 {
                for y in 0..2 {
                    ob[x * 2 + y] = (x * y) % 2;
                }
            }
            let mut d1 = vec![0usize; 8];
            let mut d2t = vec![0usize; 8];
            for x in 0..2 {
                for y in 0..2 {
                    for w in 0..2 {
                        d1[(x * 2 + y) * 2 + w] = ((x + w) % 2) * y % 2;
                        d2t[(x * 2 + y) * 2 + w] = x * ((y + w) % 2) % 2;
                    }
                }
            }
            MultilinearFunctor {
                sources: vec![d2.clone(), d2.clone()],
                target: d2.clone(),
                ob: ob.clone(),
                mor: ob,
                delta: vec![d1, d2t],
            }
        };
        assert!(validate_multilinear(&mul).is_valid());
        let curried = curry(&mul, &hom).unwrap();
        assert_eq!(uncurry(&curried, &hom).unwrap(), mul);
        assert_eq!(count_eval_factorizations(&mul, &hom, &caps).unwrap(), 1);
    }

    #[test]
    fn trilinear_evaluation_routes_agree() {
        let caps = Caps::default();
        let one = discrete_permcat(&FinCommMonoid::trivial());
        assert!(check_trilinear_eval(&one, &one, &one, &caps)
            .unwrap()
            .is_valid());
        let d2 = discrete_permcat(&z(2));
        assert!(check_trilinear_eval(&d2, &d2, &d2, &caps)
            .unwrap()
            .is_valid());
        let g = gm22();
        assert!(check_trilinear_eval(&g, &g, &g, &caps).unwrap().is_valid());
    }

    #[test]
    fn pi0_and_completion_frozen_values() {
        let d3 = discrete_permcat(&z(3));
        let (m, comps) = pi0_objects(&d3).unwrap();
        assert_eq!(m, z(3));
        assert_eq!(comps, vec![0, 1, 2]);
        assert_eq!(group_completion(&m).invariants(), vec![3]);

        let g23 = group_morphism_permcat(&z(2), &z(3)).unwrap();
        let (m, comps) = pi0_objects(&g23).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(comps, vec![0, 1]);
        assert_eq!(group_completion(&m).invariants(), vec![2]);

        let one = discrete_permcat(&FinCommMonoid::trivial());
        let (m, _) = pi0_objects(&one).unwrap();
        assert!(group_completion(&m).is_trivial());

        // Absorbing monoid: x + x = x forces every generator to die.
        let absorbing = FinCommMonoid::new(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(group_completion(&absorbing).is_trivial());
    }

    #[test]
    fn induced_maps_are_functorial_and_match_hand_values() {
        let d4 = discrete_permcat(&z(4));
        let idf = identity_lax(&d4);
        let id_hom = induced_map_on_completions(&idf).unwrap();
        assert!(id_hom.is_isomorphism());
        assert!(id_hom.eq_mod(&AbHom::identity(id_hom.src())));

        let doubling = lax_from_monoid_map(&d4, &d4, vec![0, 2, 0, 2]).unwrap();
        let dbl = induced_map_on_completions(&doubling).unwrap();
        assert!(dbl.eq_mod(&AbHom::scale(dbl.src(), 2)));
        assert!(!dbl.is_isomorphism());

        let zero = zero_lax(&d4, &d4);
        let z0 = induced_map_on_completions(&zero).unwrap();
        assert!(z0.eq_mod(&AbHom::zero(z0.src(), z0.tgt())));

        // Functoriality over all endofunctors of the group-morphism category.
        let g = gm22();
        let hom = hom_permcat(&g, &g, &Caps::default()).unwrap();
        for f1 in &hom.functors {
            for f2 in &hom.functors {
                let comp = compose_lax(f2, f1).unwrap();
                let lhs = induced_map_on_completions(&comp).unwrap();
                let rhs = induced_map_on_completions(f2)
                    .unwrap()
                    .compose(&induced_map_on_completions(f1).unwrap());
                assert!(lhs.eq_mod(&rhs));
            }
        }
    }

    #[test]
    fn coherence_catalog_validates() {
        let caps = Caps::default();
        let catalog = coherence_catalog(&caps).unwrap();
        assert_eq!(catalog.len(), 10);
        for (name, cat) in &catalog {
            assert!(cat.objects() <= caps.permcat_objects, "{name}");
            let report = validate_permcat(cat);
            assert!(report.is_valid(), "{name}: {report}");
        }
    }
}
