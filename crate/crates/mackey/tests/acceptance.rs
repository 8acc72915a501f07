//! Acceptance gate: one printed PASS/FAIL line per numbered criterion, each
//! verified against an independent oracle with exact integer equality (no
//! tolerances anywhere).
//!
//! Criterion 2 asserts that the hom-group rank between orbits equals the
//! bare double-coset count.  That identity is false — the free basis of
//! transitive span classes is parametrized by double cosets *together with*
//! a subgroup class of each coset's stabilizer intersection — so the line
//! reports FAIL with the first counterexample, an informational line checks
//! the corrected identity, and the suite deliberately ends red rather than
//! weakening the stated check.

use std::collections::BTreeSet;
use std::time::Instant;

use mackey::abelian::AbGroup;
use mackey::burnside::Burnside;
use mackey::functor::{
    burnside_mackey, constant_mackey, mackey_iso, mackey_to_categories, pi0_mackey,
    suspension_categories, MackeyFunctor,
};
use mackey::group::{Group, Subgroup};
use mackey::gset::{GMap, GSet};
use mackey::io::named_group;
use mackey::perm::Permutation;
use mackey::permcat::{
    check_trilinear_eval, coherence_catalog, composition_bilinear, count_eval_factorizations,
    curry, discrete_permcat, eval_bilinear, from_lax, hom_permcat, identity_lax, uncurry,
    validate_lax, validate_multilinear, validate_permcat, zero_lax, FinCommMonoid,
};
use mackey::span::{representative_span, Span, TransitiveSpanKey};
use mackey::Caps;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn groups(names: &[&str]) -> Vec<(String, Group)> {
    names
        .iter()
        .map(|n| (n.to_string(), named_group(n).expect("built-in group")))
        .collect()
}

// ---------------------------------------------------------------------------
// Randomized G-sets, equivariant spans, and span relabelings
// ---------------------------------------------------------------------------

/// A disjoint union of one or two coset spaces of random subgroups.
fn random_gset(g: &Group, subs: &[Subgroup], rng: &mut ChaCha8Rng) -> GSet {
    let mut x = GSet::cosets(g, &subs[rng.gen_range(0..subs.len())]).expect("coset space");
    if rng.gen_bool(0.5) {
        let y = GSet::cosets(g, &subs[rng.gen_range(0..subs.len())]).expect("coset space");
        x = x.disjoint_union(&y).expect("same group");
    }
    x
}

/// A transitive span `a ← G/L → b` where `L` stabilizes a random point on
/// each side, so both legs exist by construction.
fn random_transitive_span(g: &Group, a: &GSet, b: &GSet, rng: &mut ChaCha8Rng) -> Span {
    let pa = rng.gen_range(0..a.len());
    let pb = rng.gen_range(0..b.len());
    let sa = a.stabilizer(pa);
    let sb = b.stabilizer(pb);
    let joint: Vec<usize> = sa
        .elements()
        .iter()
        .copied()
        .filter(|&e| sb.contains(e))
        .collect();
    let l = Subgroup::new(g.clone(), joint).expect("stabilizer intersection");
    let apex = GSet::cosets(g, &l).expect("coset space");
    let leg = |y: &GSet, p: usize| {
        let images: Vec<usize> = (0..apex.len())
            .map(|q| y.act(apex.transporter(0, q).expect("transitive"), p))
            .collect();
        GMap::new(apex.clone(), y.clone(), images).expect("leg is equivariant")
    };
    Span::new(leg(a, pa), leg(b, pb)).expect("legs share the apex")
}

/// A span `a → b` with one or two transitive components.
fn random_span(g: &Group, a: &GSet, b: &GSet, rng: &mut ChaCha8Rng) -> Span {
    let s = random_transitive_span(g, a, b, rng);
    if rng.gen_bool(0.5) {
        let t = random_transitive_span(g, a, b, rng);
        s.disjoint_union(&t).expect("same feet")
    } else {
        s
    }
}

/// The same span with the apex points renamed by a random permutation: an
/// isomorphic span with different underlying data.
fn relabel_apex(s: &Span, rng: &mut ChaCha8Rng) -> Span {
    let apex = s.apex();
    let n = apex.len();
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    let mut sigma_inv = vec![0usize; n];
    for (i, &v) in sigma.iter().enumerate() {
        sigma_inv[v] = i;
    }
    let gen_action: Vec<Permutation> = apex
        .generator_action()
        .iter()
        .map(|p| {
            let images: Vec<usize> = (0..n).map(|q| sigma[p.apply(sigma_inv[q])]).collect();
            Permutation::from_images(images).expect("conjugate permutation")
        })
        .collect();
    let apex2 = GSet::new(apex.group().clone(), n, gen_action).expect("relabeled action");
    let leg = |m: &GMap| {
        let images: Vec<usize> = (0..n).map(|q| m.apply(sigma_inv[q])).collect();
        GMap::new(apex2.clone(), m.target().clone(), images).expect("relabeled leg")
    };
    Span::new(leg(s.left()), leg(s.right())).expect("relabeled span")
}

// ---------------------------------------------------------------------------
// Independent oracles: double cosets and subgroup classes, away from the
// span machinery
// ---------------------------------------------------------------------------

/// Representatives of `H\G/K`, found by orbit search of `(h, k)·g = h·g·k`.
fn double_coset_reps(g: &Group, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for start in 0..g.order() {
        if seen[start] {
            continue;
        }
        reps.push(start);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &hh in h.elements() {
                let y = g.mul(hh, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
            for &kk in k.elements() {
                let y = g.mul(x, kk);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// Closure of a subset of group elements under product and inverse.
fn close_subset(g: &Group, seed: &[usize]) -> Vec<usize> {
    let mut members: BTreeSet<usize> = seed.iter().copied().collect();
    members.insert(0);
    let mut queue: Vec<usize> = members.iter().copied().collect();
    while let Some(x) = queue.pop() {
        let present: Vec<usize> = members.iter().copied().collect();
        for y in present {
            for z in [g.mul(x, y), g.mul(y, x)] {
                if members.insert(z) {
                    queue.push(z);
                }
            }
        }
        let xi = g.inv(x);
        if members.insert(xi) {
            queue.push(xi);
        }
    }
    members.into_iter().collect()
}

/// Number of subgroups of the group spanned by `s_elements`, counted up to
/// conjugation by elements of that group.
fn subgroup_class_count_within(g: &Group, s_elements: &[usize]) -> usize {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![0]);
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    for &e in s_elements {
        let cyc = close_subset(g, &[e]);
        if found.insert(cyc.clone()) {
            frontier.push(cyc);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for &e in s_elements {
                if h.binary_search(&e).is_ok() {
                    continue;
                }
                let mut seed = h.clone();
                seed.push(e);
                let bigger = close_subset(g, &seed);
                if found.insert(bigger.clone()) {
                    next.push(bigger);
                }
            }
        }
        frontier = next;
    }
    let mut assigned: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut classes = 0;
    for sub in &found {
        if assigned.contains(sub) {
            continue;
        }
        classes += 1;
        for &t in s_elements {
            let mut conj: Vec<usize> = sub
                .iter()
                .map(|&x| g.mul(g.mul(t, x), g.inv(t)))
                .collect();
            conj.sort_unstable();
            assigned.insert(conj);
        }
    }
    classes
}

/// Rank of the span hom group between two orbits, computed from double
/// cosets and subgroup counts alone: one basis class per double coset `HgK`
/// and per subgroup class of `H ∩ gKg⁻¹`.
fn rank_oracle_orbits(g: &Group, h: &Subgroup, k: &Subgroup) -> usize {
    double_coset_reps(g, h, k)
        .into_iter()
        .map(|rep| {
            let s: Vec<usize> = h
                .elements()
                .iter()
                .copied()
                .filter(|&x| k.contains(g.mul(g.mul(g.inv(rep), x), rep)))
                .collect();
            subgroup_class_count_within(g, &s)
        })
        .sum()
}

/// The same rank oracle extended additively over orbit pairs of arbitrary
/// G-sets.
fn rank_oracle(g: &Group, a: &GSet, b: &GSet) -> usize {
    let mut total = 0;
    for oa in a.orbits() {
        for ob in b.orbits() {
            total += rank_oracle_orbits(g, &a.stabilizer(oa[0]), &b.stabilizer(ob[0]));
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Strict unit and associativity laws for pullback composition, checked as
/// data equality on 500 random identity-composition pairs and 500 random
/// triples.
fn criterion_1() -> (bool, String) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut pairs = 0usize;
    let mut triples = 0usize;
    let mut unit_failures = 0usize;
    let mut assoc_failures = 0usize;
    let mut class_failures = 0usize;
    for (_, g) in groups(&["c2", "c3", "s3", "d4"]) {
        let subs = g.subgroups();
        let classes = g.subgroup_classes();
        for _ in 0..125 {
            let a = random_gset(&g, &subs, &mut rng);
            let b = random_gset(&g, &subs, &mut rng);
            let s = random_span(&g, &a, &b, &mut rng);
            let left_unit = Span::identity(&a).then(&s).expect("composable");
            let right_unit = s.then(&Span::identity(&b)).expect("composable");
            if left_unit != s || right_unit != s {
                unit_failures += 1;
            }
            pairs += 1;
        }
        for _ in 0..125 {
            let a = random_gset(&g, &subs, &mut rng);
            let b = random_gset(&g, &subs, &mut rng);
            let c = random_gset(&g, &subs, &mut rng);
            let d = random_gset(&g, &subs, &mut rng);
            let r = random_span(&g, &a, &b, &mut rng);
            let s = random_span(&g, &b, &c, &mut rng);
            let t = random_span(&g, &c, &d, &mut rng);
            let lhs = r.then(&s).expect("composable").then(&t).expect("composable");
            let rhs = r.then(&s.then(&t).expect("composable")).expect("composable");
            if lhs != rhs {
                assoc_failures += 1;
                let mut k1 = lhs.orbit_keys(&classes);
                let mut k2 = rhs.orbit_keys(&classes);
                k1.sort_unstable();
                k2.sort_unstable();
                if k1 != k2 {
                    class_failures += 1;
                }
            }
            triples += 1;
        }
    }
    let pass = unit_failures == 0 && assoc_failures == 0;
    let detail = format!(
        "{pairs} identity-composition pairs ({unit_failures} off) and {triples} \
         association triples ({assoc_failures} off at the data level, \
         {class_failures} off at the span-class level) over C2, C3, S3, D4 \
         [{:.1?}]",
        start.elapsed()
    );
    (pass, detail)
}

/// The claimed identity rank 𝓑(G/H, G/K) = |H\G/K|, over every pair of
/// subgroup classes of C2, C3, S3, D4, Q8.  False as stated; the companion
/// string reports the corrected identity's verdict.
fn criterion_2() -> (bool, String, String) {
    let start = Instant::now();
    let mut pairs = 0usize;
    let mut claim_failures = 0usize;
    let mut first_counterexample = String::new();
    let mut corrected_failures = 0usize;
    for (name, g) in groups(&["c2", "c3", "s3", "d4", "q8"]) {
        let bur = Burnside::new(g.clone());
        let classes = bur.classes();
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                let (h, k) = (&classes.class(i).rep, &classes.class(j).rep);
                let rank = bur.basis(&bur.orbit(i), &bur.orbit(j)).len();
                let cosets = double_coset_reps(&g, h, k).len();
                if rank != cosets {
                    claim_failures += 1;
                    if first_counterexample.is_empty() {
                        first_counterexample = format!(
                            "{name}: hom({} ← {}) has rank {rank} but {cosets} double \
                             coset(s)",
                            classes.label(i),
                            classes.label(j)
                        );
                    }
                }
                if rank != rank_oracle_orbits(&g, h, k) {
                    corrected_failures += 1;
                }
                pairs += 1;
            }
        }
    }
    let pass = claim_failures == 0;
    let detail = format!(
        "rank = double-coset count failed on {claim_failures}/{pairs} class pairs \
         over C2, C3, S3, D4, Q8; first counterexample: {first_counterexample} \
         [{:.1?}]",
        start.elapsed()
    );
    let companion = format!(
        "corrected identity rank = Σ over double cosets HgK of #(subgroup classes \
         of H ∩ gKg⁻¹): {} on all {pairs} pairs",
        if corrected_failures == 0 {
            "holds"
        } else {
            "FAILS"
        }
    );
    (pass, detail, companion)
}

/// Table-of-marks nondegeneracy, multiplicativity of the mark homomorphism
/// on all basis products, and the doubling law for the free orbit over C2.
fn criterion_3() -> (bool, String) {
    let start = Instant::now();
    let mut checks = 0usize;
    let mut failures = 0usize;
    for (_, g) in groups(&["c2", "c3", "s3", "d4", "q8"]) {
        let bur = Burnside::new(g.clone());
        let n = bur.classes().len();
        if bur.marks_determinant() == 0 {
            failures += 1;
        }
        checks += 1;
        let unit_marks: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                bur.mark_vector(&e)
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                let product = bur.ring_product(i, j).expect("ring product");
                let lhs = bur.mark_vector(&product);
                let rhs: Vec<i64> = (0..n)
                    .map(|x| unit_marks[i][x] * unit_marks[j][x])
                    .collect();
                if lhs != rhs {
                    failures += 1;
                }
                checks += 1;
            }
        }
    }
    let c2 = named_group("c2").expect("built-in group");
    let doubling = Burnside::new(c2).ring_product(0, 0).expect("ring product");
    if doubling != vec![2, 0] {
        failures += 1;
    }
    checks += 1;
    let pass = failures == 0;
    let detail = format!(
        "{checks} checks over C2, C3, S3, D4, Q8 ({failures} failed): determinants \
         nonzero, marks multiplicative on every basis product, free-orbit square \
         over C2 is twice the free orbit [{:.1?}]",
        start.elapsed()
    );
    (pass, detail)
}

/// The coherence battery: category axioms, lax and multilinear validation,
/// bilinearity of evaluation and composition, trilinear route agreement,
/// and uniqueness of currying, exhaustively on the built-in catalog.
fn criterion_4() -> (bool, String) {
    let start = Instant::now();
    let caps = Caps::default();
    let mut checks = 0usize;
    let mut failures = 0usize;
    let mut tick = |ok: bool| {
        checks += 1;
        if !ok {
            failures += 1;
        }
    };

    let catalog = coherence_catalog(&caps).expect("catalog within caps");
    for (_, cat) in &catalog {
        tick(validate_permcat(cat).is_valid());
        tick(validate_lax(&identity_lax(cat)).is_valid());
        tick(validate_lax(&zero_lax(cat, cat)).is_valid());
        tick(validate_multilinear(&from_lax(&identity_lax(cat))).is_valid());
    }

    let one = discrete_permcat(&FinCommMonoid::trivial());
    let d2 = discrete_permcat(&FinCommMonoid::cyclic(2));
    let gm22 = catalog
        .iter()
        .find(|(n, _)| n == "group-morphism(Z/2, Z/2)")
        .map(|(_, c)| c.clone())
        .expect("catalog entry");

    for (a, b) in [(&one, &gm22), (&d2, &d2), (&gm22, &gm22)] {
        let hom = hom_permcat(a, b, &caps).expect("hom within caps");
        tick(validate_permcat(&hom.cat).is_valid());
        tick(validate_multilinear(&eval_bilinear(&hom)).is_valid());
    }

    for c in [&d2, &gm22] {
        let hom = hom_permcat(c, c, &caps).expect("hom within caps");
        tick(
            validate_multilinear(
                &composition_bilinear(&hom, &hom, &hom).expect("matching homs"),
            )
            .is_valid(),
        );
    }

    for (a, b, c) in [(&one, &one, &one), (&d2, &d2, &d2), (&gm22, &gm22, &gm22)] {
        tick(
            check_trilinear_eval(a, b, c, &caps)
                .expect("within caps")
                .is_valid(),
        );
    }

    // Curry uniqueness: evaluation factors through exactly one lax functor
    // into the hom category, and that functor is the identity.
    for c in [&one, &d2] {
        let hom = hom_permcat(c, c, &caps).expect("hom within caps");
        let ev = eval_bilinear(&hom);
        let curried = curry(&ev, &hom).expect("curry");
        tick(curried == identity_lax(&hom.cat));
        tick(uncurry(&curried, &hom).expect("uncurry") == ev);
        tick(count_eval_factorizations(&ev, &hom, &caps).expect("enumeration") == 1);
    }

    let pass = failures == 0;
    let detail = format!(
        "{checks} exhaustive coherence checks on the built-in catalog \
         ({failures} failed) [{:.1?}]",
        start.elapsed()
    );
    (pass, detail)
}

/// Contravariant functoriality of span actions (the double-coset formula)
/// for the represented Burnside functor and the constant-ℤ functor over C2
/// and S3, on every composable pair of basis spans between orbit objects.
fn criterion_5() -> (bool, String) {
    let start = Instant::now();
    let mut checks = 0usize;
    let mut failures = 0usize;
    for (_, g) in groups(&["c2", "s3"]) {
        let bur = Burnside::new(g.clone());
        let n = bur.classes().len();
        let pt = bur.point();
        let functors: Vec<MackeyFunctor> = vec![
            burnside_mackey(&pt).expect("represented functor"),
            constant_mackey(&g, &AbGroup::free(1)).expect("constant functor"),
        ];
        for m in &functors {
            let classes = m.classes();
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let (a, b, c) = (bur.orbit(i), bur.orbit(j), bur.orbit(l));
                        for k1 in bur.basis(&a, &b) {
                            let s = representative_span(k1, &a, &b, classes)
                                .expect("basis representative");
                            let act_s = m.span_action(&s).expect("orbit feet");
                            for k2 in bur.basis(&b, &c) {
                                let t = representative_span(k2, &b, &c, classes)
                                    .expect("basis representative");
                                let composite = m
                                    .span_action(&s.then(&t).expect("composable"))
                                    .expect("orbit feet");
                                let factored =
                                    act_s.compose(&m.span_action(&t).expect("orbit feet"));
                                if !composite.eq_mod(&factored) {
                                    failures += 1;
                                }
                                checks += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    let pass = failures == 0;
    let detail = format!(
        "{checks} basis-span compositions over C2 and S3 for the represented \
         Burnside functor and the constant-ℤ functor ({failures} off) [{:.1?}]",
        start.elapsed()
    );
    (pass, detail)
}

/// π₀ of the associated category family recovers the input Mackey functor
/// up to isomorphism, over a battery with free, torsion, and mixed values.
fn criterion_6() -> (bool, String) {
    let start = Instant::now();
    let caps = Caps::default();
    let mut checks = 0usize;
    let mut failures = 0usize;
    for (_, g) in groups(&["c2", "s3"]) {
        let pt = GSet::point(g.clone());
        let mixed_finite = AbGroup::cyclic(2).direct_sum(&AbGroup::cyclic(4));
        let mixed_free = AbGroup::free(1).direct_sum(&AbGroup::cyclic(2));
        let battery: Vec<MackeyFunctor> = vec![
            burnside_mackey(&pt).expect("represented functor"),
            constant_mackey(&g, &AbGroup::free(1)).expect("constant functor"),
            constant_mackey(&g, &AbGroup::cyclic(2)).expect("constant functor"),
            constant_mackey(&g, &mixed_finite).expect("constant functor"),
            constant_mackey(&g, &mixed_free).expect("constant functor"),
        ];
        for m in battery {
            let fam = mackey_to_categories(m, &caps).expect("within caps");
            let out = pi0_mackey(&fam).expect("computable");
            let original = fam.as_discrete().expect("discrete family").mackey();
            if mackey_iso(&out, original).expect("same group").is_none() {
                failures += 1;
            }
            checks += 1;
        }
    }
    let pass = failures == 0;
    let detail = format!(
        "{checks} round trips over C2 and S3 (represented Burnside, constant ℤ, \
         ℤ/2, ℤ/2⊕ℤ/4, ℤ⊕ℤ/2), isomorphism found in all but {failures} [{:.1?}]",
        start.elapsed()
    );
    (pass, detail)
}

/// π₀ of the span-category family of a G-set is the represented Burnside
/// functor, for points, every orbit, and a two-orbit union over C2 and S3.
fn criterion_7() -> (bool, String) {
    let start = Instant::now();
    let mut checks = 0usize;
    let mut failures = 0usize;
    for (_, g) in groups(&["c2", "s3"]) {
        let bur = Burnside::new(g.clone());
        let n = bur.classes().len();
        let mut xs: Vec<GSet> = vec![GSet::point(g.clone())];
        for i in 0..n {
            xs.push(bur.orbit(i));
        }
        xs.push(
            bur.orbit(0)
                .disjoint_union(&bur.orbit(n - 1))
                .expect("same group"),
        );
        if n > 1 {
            xs.push(bur.orbit(0).disjoint_union(&bur.orbit(1)).expect("same group"));
        }
        for x in xs {
            let fam = suspension_categories(&x);
            let out = pi0_mackey(&fam).expect("computable");
            let represented = burnside_mackey(&x).expect("represented functor");
            if mackey_iso(&out, &represented).expect("same group").is_none() {
                failures += 1;
            }
            checks += 1;
        }
    }
    let pass = failures == 0;
    let detail = format!(
        "{checks} suspension comparisons over C2 and S3 (point, each orbit, \
         two-orbit unions), {failures} without an isomorphism [{:.1?}]",
        start.elapsed()
    );
    (pass, detail)
}

/// Group-completed hom enrichment: the ranks of the free hom groups match
/// an independent double-coset/subgroup-count oracle, and composition of
/// classes is unchanged when representatives are replaced by isomorphic,
/// relabeled spans.
fn criterion_8() -> (bool, String) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut rank_checks = 0usize;
    let mut rank_failures = 0usize;
    let mut replacements = 0usize;
    let mut replacement_failures = 0usize;
    for (_, g) in groups(&["c2", "s3"]) {
        let bur = Burnside::new(g.clone());
        let n = bur.classes().len();
        let mut objects: Vec<GSet> = (0..n).map(|i| bur.orbit(i)).collect();
        objects.push(bur.orbit(0).disjoint_union(&bur.orbit(n - 1)).expect("same group"));
        for a in &objects {
            for b in &objects {
                let (hom, basis) = bur.pi0_enrichment(a, b);
                let free = hom == AbGroup::free(basis.len());
                let rank = basis.len() == rank_oracle(&g, a, b);
                if !(free && rank) {
                    rank_failures += 1;
                }
                rank_checks += 1;
            }
        }
        while replacements < 100 * (1 + usize::from(g.order() > 2)) {
            let a = &objects[rng.gen_range(0..objects.len())];
            let b = &objects[rng.gen_range(0..objects.len())];
            let c = &objects[rng.gen_range(0..objects.len())];
            let basis_ab: Vec<TransitiveSpanKey> = bur.basis(a, b);
            let basis_bc: Vec<TransitiveSpanKey> = bur.basis(b, c);
            if basis_ab.is_empty() || basis_bc.is_empty() {
                continue;
            }
            let k1 = basis_ab[rng.gen_range(0..basis_ab.len())];
            let k2 = basis_bc[rng.gen_range(0..basis_bc.len())];
            let s = representative_span(k1, a, b, bur.classes()).expect("representative");
            let t = representative_span(k2, b, c, bur.classes()).expect("representative");
            let s2 = relabel_apex(&s, &mut rng);
            let t2 = relabel_apex(&t, &mut rng);
            let same_class = bur.element_of_span(&s2).expect("in basis")
                == bur.element_of_span(&s).expect("in basis");
            let composed = bur
                .element_of_span(&s2.then(&t2).expect("composable"))
                .expect("in basis");
            let frozen = bur.compose_keys(a, b, c, k1, k2).expect("structure constants");
            if !(same_class && composed == frozen) {
                replacement_failures += 1;
            }
            replacements += 1;
        }
    }
    let pass = rank_failures == 0 && replacement_failures == 0;
    let detail = format!(
        "{rank_checks} hom groups free of the oracle rank ({rank_failures} off); \
         {replacements} relabeled-representative compositions matching the \
         structure constants ({replacement_failures} off) [{:.1?}]",
        start.elapsed()
    );
    (pass, detail)
}

#[test]
fn acceptance_criteria() {
    let mut failed: Vec<usize> = Vec::new();
    let mut report = |num: usize, pass: bool, detail: String| {
        println!(
            "criterion {num}: {} — {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            failed.push(num);
        }
    };

    let (p, d) = criterion_1();
    report(1, p, d);
    let (p, d, companion) = criterion_2();
    report(2, p, d);
    println!("             {companion}");
    let (p, d) = criterion_3();
    report(3, p, d);
    let (p, d) = criterion_4();
    report(4, p, d);
    let (p, d) = criterion_5();
    report(5, p, d);
    let (p, d) = criterion_6();
    report(6, p, d);
    let (p, d) = criterion_7();
    report(7, p, d);
    let (p, d) = criterion_8();
    report(8, p, d);

    assert!(
        failed.is_empty(),
        "criteria {failed:?} failed; criterion 2 is expected to fail — the rank \
         identity it states is false (see the printed counterexample and the \
         corrected identity above)"
    );
}
