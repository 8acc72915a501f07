//! Finitely generated abelian groups presented by integer relation matrices,
//! homomorphisms between them, and the Smith normal form that powers both.
//!
//! A group is `Z^n / L` where `L` is the column lattice of an `n × r` relation
//! matrix. Elements are integer column vectors of length `n`, considered
//! modulo `L`. All decisions (membership, equality, isomorphy) reduce to
//! Smith normal form.

use crate::{Error, Result};
use std::fmt;

/// Narrows a 128-bit intermediate back to an entry, refusing to wrap.
fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("matrix entry exceeds the supported 64-bit range")
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    /// Product, accumulated in 128-bit arithmetic: intermediate terms can
    /// exceed `i64` (Smith transforms carry large entries) even when every
    /// final entry fits.  A final entry that does not fit panics rather than
    /// wrapping.
    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut acc = vec![0i128; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k) as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    acc[i * other.cols + j] += a * other.at(k, j) as i128;
                }
            }
        }
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out.set(i, j, narrow(acc[i * other.cols + j]));
            }
        }
        out
    }

    /// Matrix applied to a column vector; same 128-bit accumulation as `mul`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                narrow(
                    (0..self.cols)
                        .map(|j| self.at(i, j) as i128 * v[j] as i128)
                        .sum(),
                )
            })
            .collect()
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        self.add(&other.neg())
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: i64) {
        for c in 0..self.cols {
            let v = self.at(j, c) as i128 * q as i128;
            self.set(i, c, narrow(self.at(i, c) as i128 + v));
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: i64) {
        for r in 0..self.rows {
            let v = self.at(r, j) as i128 * q as i128;
            self.set(r, i, narrow(self.at(r, i) as i128 + v));
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self.set(i, c, -self.at(i, c));
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            self.set(r, j, -self.at(r, j));
        }
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `u · a · v = s` with `s` diagonal, nonnegative, and each
/// diagonal entry dividing the next. Inverses of the transforms are carried
/// along so solutions can be pulled back without re-inverting.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub s: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl Snf {
    pub fn diagonal(&self, i: usize) -> i64 {
        if i < self.s.rows() && i < self.s.cols() {
            self.s.at(i, i)
        } else {
            0
        }
    }

    pub fn rank(&self) -> usize {
        (0..self.s.rows().min(self.s.cols()))
            .take_while(|&i| self.s.at(i, i) != 0)
            .count()
    }
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut s = a.clone();
    let (m, n) = (s.rows, s.cols);
    let mut u = IntMat::identity(m);
    let mut u_inv = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    let mut v_inv = IntMat::identity(n);

    // Each elementary move is applied to s and mirrored on (u, u_inv) or
    // (v, v_inv) so that u·a·v = s stays true throughout.
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            s.swap_rows($i, $j);
            u.swap_rows($i, $j);
            u_inv.swap_cols($i, $j);
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            s.swap_cols($i, $j);
            v.swap_cols($i, $j);
            v_inv.swap_rows($i, $j);
        }};
    }
    macro_rules! row_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let q = $q;
            s.add_row($i, $j, q);
            u.add_row($i, $j, q);
            u_inv.add_col($j, $i, -q);
        }};
    }
    macro_rules! col_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let q = $q;
            s.add_col($i, $j, q);
            v.add_col($i, $j, q);
            v_inv.add_row($j, $i, -q);
        }};
    }

    let mut t = 0;
    while t < m.min(n) {
        // Pivot: entry of least absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = s.at(i, j);
                if x != 0 && pivot.is_none_or(|(pi, pj)| x.abs() < s.at(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            row_swap!(t, pi);
        }
        if pj != t {
            col_swap!(t, pj);
        }
        // Clear row and column t. Remainders strictly shrink the pivot, so
        // this terminates.
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let x = s.at(i, t);
                if x != 0 {
                    let q = x.div_euclid(s.at(t, t));
                    row_add!(i, t, -q);
                    if s.at(i, t) != 0 {
                        row_swap!(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                let x = s.at(t, j);
                if x != 0 {
                    let q = x.div_euclid(s.at(t, t));
                    col_add!(j, t, -q);
                    if s.at(t, j) != 0 {
                        col_swap!(t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        // Divisibility: fold a bad entry into column t and restart the clear.
        let mut bad = None;
        'scan: for i in t + 1..m {
            for j in t + 1..n {
                if s.at(i, j) % s.at(t, t) != 0 {
                    bad = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad {
            row_add!(t, i, 1);
            continue;
        }
        if s.at(t, t) < 0 {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    Snf {
        u,
        u_inv,
        s,
        v,
        v_inv,
    }
}

/// A solution `x` of `a · x = b` over the integers, if one exists.
pub fn solve(a: &IntMat, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b);
    let mut y = vec![0i64; a.cols()];
    for i in 0..a.rows() {
        let d = snf.diagonal(i);
        if d == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % d != 0 {
                return None;
            }
            y[i] = ub[i] / d;
        }
    }
    Some(snf.v.apply(&y))
}

/// Basis (as columns) of the lattice `{ x : a · x = 0 }`.
pub fn kernel_lattice(a: &IntMat) -> IntMat {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let mut out = IntMat::zero(a.cols(), a.cols() - r);
    for (k, j) in (r..a.cols()).enumerate() {
        for i in 0..a.cols() {
            out.set(i, k, snf.v.at(i, j));
        }
    }
    out
}

/// Invariant factors of `Z^m / (column lattice of rels)`: the diagonal of the
/// Smith form with 1s dropped, nontrivial torsion first in divisibility order,
/// then one 0 per free rank.
pub fn quotient_invariants(rels: &IntMat) -> Vec<i64> {
    let snf = smith_normal_form(rels);
    (0..rels.rows())
        .map(|i| snf.diagonal(i))
        .filter(|&d| d != 1)
        .collect()
}

/// Determinant by fraction-free Gaussian elimination, exact in `i128`.
pub fn determinant(a: &IntMat) -> i128 {
    assert_eq!(a.rows(), a.cols(), "determinant of non-square matrix");
    let n = a.rows();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| a.at(i, j) as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// A finitely generated abelian group `Z^n / L`, with `L` the column lattice
/// of `rels`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbGroup {
    generators: usize,
    rels: IntMat,
}

impl AbGroup {
    pub fn new(generators: usize, rels: IntMat) -> Result<Self> {
        if rels.rows() != generators {
            return Err(Error::Invalid(format!(
                "relation matrix has {} rows for {} generators",
                rels.rows(),
                generators
            )));
        }
        Ok(AbGroup { generators, rels })
    }

    pub fn free(n: usize) -> Self {
        AbGroup {
            generators: n,
            rels: IntMat::zero(n, 0),
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(d: i64) -> Self {
        AbGroup {
            generators: 1,
            rels: IntMat::diagonal(&[d]),
        }
    }

    /// One generator per entry; entry `d > 0` contributes `Z/d`, entry `0`
    /// contributes `Z`.
    pub fn from_invariants(inv: &[i64]) -> Self {
        AbGroup {
            generators: inv.len(),
            rels: IntMat::diagonal(inv),
        }
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let n = self.generators + other.generators;
        let mut rels = IntMat::zero(n, self.rels.cols() + other.rels.cols());
        for i in 0..self.generators {
            for j in 0..self.rels.cols() {
                rels.set(i, j, self.rels.at(i, j));
            }
        }
        for i in 0..other.generators {
            for j in 0..other.rels.cols() {
                rels.set(self.generators + i, self.rels.cols() + j, other.rels.at(i, j));
            }
        }
        AbGroup {
            generators: n,
            rels,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMat {
        &self.rels
    }

    /// Canonical invariant factors: torsion in divisibility order, then 0s.
    pub fn invariants(&self) -> Vec<i64> {
        quotient_invariants(&self.rels)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants().is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.invariants().iter().all(|&d| d != 0)
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u128> {
        let inv = self.invariants();
        if inv.contains(&0) {
            return None;
        }
        Some(inv.iter().map(|&d| d as u128).product())
    }

    pub fn is_isomorphic_to(&self, other: &AbGroup) -> bool {
        self.invariants() == other.invariants()
    }

    /// Does `v` represent 0, i.e. lie in the relation lattice?
    pub fn is_zero_element(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.generators, "element length mismatch");
        solve(&self.rels, v).is_some()
    }

    pub fn elements_equal(&self, v: &[i64], w: &[i64]) -> bool {
        let diff: Vec<i64> = v.iter().zip(w).map(|(a, b)| a - b).collect();
        self.is_zero_element(&diff)
    }

    /// All elements, as canonical coordinate vectors in the Smith basis pulled
    /// back to generator coordinates. `None` if infinite.
    pub fn enumerate_elements(&self) -> Option<Vec<Vec<i64>>> {
        let inv = self.invariants();
        if inv.contains(&0) {
            return None;
        }
        // Smith basis: with u·rels·v = s, generators y = u_inv columns present
        // the group as ⊕ Z/s_ii; enumerate tuples there and map back.
        let snf = smith_normal_form(&self.rels);
        let mut diag: Vec<i64> = (0..self.generators).map(|i| snf.diagonal(i)).collect();
        for d in diag.iter_mut() {
            if *d == 0 {
                *d = 1; // unreachable given finiteness, defensive
            }
        }
        let total: u128 = diag.iter().map(|&d| d as u128).product();
        if total > 1 << 20 {
            return None;
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut counter = vec![0i64; self.generators];
        loop {
            out.push(snf.u_inv.apply(&counter));
            let mut k = 0;
            loop {
                if k == self.generators {
                    return Some(out);
                }
                counter[k] += 1;
                if counter[k] < diag[k] {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
        }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.invariants();
        if inv.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = inv
            .iter()
            .map(|&d| {
                if d == 0 {
                    "Z".to_string()
                } else {
                    format!("Z/{}", d)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homomorphism of presented abelian groups, stored as the matrix of its
/// action on generators (`tgt.generators × src.generators`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbHom {
    src: AbGroup,
    tgt: AbGroup,
    mat: IntMat,
}

impl AbHom {
    /// Checks that the matrix sends every source relation into the target
    /// relation lattice, so the map is well defined on the quotients.
    pub fn new(src: AbGroup, tgt: AbGroup, mat: IntMat) -> Result<Self> {
        if mat.rows() != tgt.generators() || mat.cols() != src.generators() {
            return Err(Error::Invalid(format!(
                "hom matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                tgt.generators(),
                src.generators()
            )));
        }
        let image_of_rels = mat.mul(src.relations());
        for j in 0..image_of_rels.cols() {
            if !tgt.is_zero_element(&image_of_rels.col(j)) {
                return Err(Error::ValidationFailed(format!(
                    "relation {} is not sent into the target relation lattice",
                    j
                )));
            }
        }
        Ok(AbHom { src, tgt, mat })
    }

    /// Skips the relation check; for internal construction of maps already
    /// known to be well defined.
    pub fn new_unchecked(src: AbGroup, tgt: AbGroup, mat: IntMat) -> Self {
        debug_assert_eq!(mat.rows(), tgt.generators());
        debug_assert_eq!(mat.cols(), src.generators());
        AbHom { src, tgt, mat }
    }

    pub fn identity(g: &AbGroup) -> Self {
        AbHom {
            src: g.clone(),
            tgt: g.clone(),
            mat: IntMat::identity(g.generators()),
        }
    }

    pub fn zero(src: &AbGroup, tgt: &AbGroup) -> Self {
        AbHom {
            src: src.clone(),
            tgt: tgt.clone(),
            mat: IntMat::zero(tgt.generators(), src.generators()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scale(g: &AbGroup, k: i64) -> Self {
        let mut mat = IntMat::zero(g.generators(), g.generators());
        for i in 0..g.generators() {
            mat.set(i, i, k);
        }
        AbHom {
            src: g.clone(),
            tgt: g.clone(),
            mat,
        }
    }

    pub fn src(&self) -> &AbGroup {
        &self.src
    }

    pub fn tgt(&self) -> &AbGroup {
        &self.tgt
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AbHom) -> AbHom {
        assert_eq!(
            other.tgt.generators(),
            self.src.generators(),
            "composition mismatch"
        );
        AbHom {
            src: other.src.clone(),
            tgt: self.tgt.clone(),
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        AbHom {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            mat: self.mat.add(&other.mat),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.mat.apply(v)
    }

    /// Equality as maps of quotients: every column of the difference lies in
    /// the target relation lattice.
    pub fn eq_mod(&self, other: &AbHom) -> bool {
        if self.src.generators() != other.src.generators()
            || self.tgt.generators() != other.tgt.generators()
        {
            return false;
        }
        let diff = self.mat.sub(&other.mat);
        (0..diff.cols()).all(|j| self.tgt.is_zero_element(&diff.col(j)))
    }

    /// Cokernel trivial: the columns of the matrix together with the target
    /// relations generate the whole target lattice `Z^n`.
    pub fn is_surjective(&self) -> bool {
        quotient_invariants(&self.mat.hstack(self.tgt.relations())).is_empty()
    }

    /// Isomorphism test. A surjection between groups with equal invariant
    /// factors is automatically injective (finitely generated abelian groups
    /// are Hopfian), so no kernel computation is needed.
    pub fn is_isomorphism(&self) -> bool {
        self.src.is_isomorphic_to(&self.tgt) && self.is_surjective()
    }
}
