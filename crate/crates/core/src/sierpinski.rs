//! Generalized Sierpiński matrices of Sheffer type.
//!
//! For a system with normalized tables `sbar_n`, `pbar_n`, the `b^N x b^N`
//! matrix `S_{b,N}(x_0, ..., x_(N-1))` has entry
//!
//! ```text
//! (j, k) = prod_i sbar_(d_i)(x_i)    if k ⪯_b j, where j - k = sum d_i b^i
//! ```
//!
//! and zero elsewhere; `P_{b,N}` is the same with `pbar`. Two independent
//! constructions are provided: the entry formula ([`build_direct`]) and the
//! Kronecker recurrence `M_{N+1} = M_1(x_N) ⊗ M_N` ([`build_kronecker`]).
//! Only digitally dominant pairs are stored, `(b(b+1)/2)^N` of them.

use std::collections::BTreeMap;

use crate::assign::VerifyOptions;
use crate::digits::{checked_pow, dominated_range, to_digits, DigitVector};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarId};
use crate::sheffer::{SeqKind, ShefferSystem};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MatrixKind {
    S,
    P,
}

impl MatrixKind {
    pub fn seq(self) -> SeqKind {
        match self {
            MatrixKind::S => SeqKind::Sheffer,
            MatrixKind::P => SeqKind::Associated,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MatrixKind::S => "S",
            MatrixKind::P => "P",
        }
    }
}

/// Square matrix with an explicit sparsity structure. A stored entry may
/// hold the zero polynomial (for example after evaluating at a root);
/// absent entries are structural zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), MultiPoly>,
}

impl SparseMatrix {
    pub fn new(dim: usize) -> Self {
        SparseMatrix { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim).map(|i| ((i, i), MultiPoly::one())).collect();
        SparseMatrix { dim, entries }
    }

    pub fn from_entries(dim: usize, entries: BTreeMap<(usize, usize), MultiPoly>) -> Result<Self> {
        if let Some(&(j, k)) = entries.keys().find(|&&(j, k)| j >= dim || k >= dim) {
            return Err(Error::DimensionMismatch(j.max(k), dim));
        }
        Ok(SparseMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn stored(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), MultiPoly> {
        &self.entries
    }

    pub fn get(&self, j: usize, k: usize) -> MultiPoly {
        self.entries.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, j: usize, k: usize, value: MultiPoly) {
        self.entries.insert((j, k), value);
    }

    /// Entrywise equality of values, ignoring the distinction between stored
    /// zeros and structural zeros.
    pub fn values_eq(&self, other: &SparseMatrix) -> bool {
        self.first_difference(other).is_none() && self.dim == other.dim
    }

    /// First `(row, col)` in lexicographic order where the values differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        let mut keys: Vec<&(usize, usize)> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find(|&&(j, k)| self.get(j, k) != other.get(j, k)).copied()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries.iter().all(|(&(j, k), v)| k <= j || v.is_zero())
    }

    /// Block `(p, q)` of the result is `self(p, q) * other`.
    pub fn kronecker(&self, other: &SparseMatrix) -> SparseMatrix {
        let n = other.dim;
        let mut entries = BTreeMap::new();
        for (&(p, q), a) in &self.entries {
            for (&(r, s), b) in &other.entries {
                entries.insert((p * n + r, q * n + s), a * b);
            }
        }
        SparseMatrix { dim: self.dim * n, entries }
    }

    /// Generic sparse product; the result stores every position reached by
    /// some pair of stored entries.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut rows: BTreeMap<usize, Vec<(usize, &MultiPoly)>> = BTreeMap::new();
        for (&(l, k), b) in &other.entries {
            rows.entry(l).or_default().push((k, b));
        }
        let mut entries: BTreeMap<(usize, usize), MultiPoly> = BTreeMap::new();
        for (&(j, l), a) in &self.entries {
            if let Some(row) = rows.get(&l) {
                for &(k, b) in row {
                    *entries.entry((j, k)).or_default() += a * b;
                }
            }
        }
        Ok(SparseMatrix { dim: self.dim, entries })
    }
}

/// Plain row-major dense matrix, used as an independent multiplication
/// oracle against the sparsity-aware product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    rows: Vec<Vec<MultiPoly>>,
}

impl DenseMatrix {
    pub fn from_sparse(m: &SparseMatrix) -> Self {
        let mut rows = vec![vec![MultiPoly::zero(); m.dim]; m.dim];
        for (&(j, k), v) in &m.entries {
            rows[j][k] = v.clone();
        }
        DenseMatrix { rows }
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(r.len(), n));
        }
        Ok(DenseMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, j: usize, k: usize) -> &MultiPoly {
        &self.rows[j][k]
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.rows
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        let n = self.dim();
        if n != other.dim() {
            return Err(Error::DimensionMismatch(n, other.dim()));
        }
        let rows = (0..n)
            .map(|j| (0..n).map(|k| (0..n).map(|l| &self.rows[j][l] * &other.rows[l][k]).sum()).collect())
            .collect();
        Ok(DenseMatrix { rows })
    }

    pub fn kronecker(&self, other: &DenseMatrix) -> DenseMatrix {
        let (n, m) = (self.dim(), other.dim());
        let rows = (0..n * m)
            .map(|j| (0..n * m).map(|k| &self.rows[j / m][k / m] * &other.rows[j % m][k % m]).collect())
            .collect();
        DenseMatrix { rows }
    }

    /// Drops zero entries.
    pub fn to_sparse(&self) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.dim());
        for (j, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.insert(j, k, v.clone());
                }
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SierpinskiMatrix {
    base: u64,
    levels: usize,
    kind: MatrixKind,
    vars: Vec<MultiPoly>,
    matrix: SparseMatrix,
}

/// Row and column count `b^N`, guarded against overflow.
pub fn dimension(base: u64, levels: usize) -> Result<usize> {
    if base < 2 {
        return Err(Error::BadBase(base));
    }
    checked_pow(base, levels)
        .and_then(|d| usize::try_from(d).ok())
        .ok_or_else(|| Error::InvalidSpec(format!("{base}^{levels} rows overflow")))
}

/// `x_0, ..., x_(N-1)` as symbolic bindings.
pub fn symbolic_vars(axis: crate::poly::Axis, levels: usize) -> Vec<MultiPoly> {
    (0..levels as u32).map(|i| MultiPoly::var(VarId::new(axis, i))).collect()
}

fn check_inputs(system: &ShefferSystem, base: u64, levels: usize, vars: &[MultiPoly]) -> Result<usize> {
    let dim = dimension(base, levels)?;
    if vars.len() != levels {
        return Err(Error::DimensionMismatch(vars.len(), levels));
    }
    let needed = base as usize - 1;
    if system.degree_bound() < needed {
        return Err(Error::DegreeBoundTooSmall { needed, got: system.degree_bound() });
    }
    let (s0, p0) = system.normalized(0)?;
    for c in [s0, p0] {
        if c != MultiPoly::one() {
            return Err(Error::NonUnitConstant(c.to_string()));
        }
    }
    Ok(dim)
}

/// `table[i][d] = bar_d(vars[i])`.
fn level_tables(
    kind: MatrixKind,
    system: &ShefferSystem,
    base: u64,
    vars: &[MultiPoly],
) -> Result<Vec<Vec<MultiPoly>>> {
    vars.iter().map(|v| (0..base as usize).map(|d| system.bar_at(kind.seq(), d, v)).collect()).collect()
}

impl SierpinskiMatrix {
    /// Wraps arbitrary entry values on the dominant-pair structure; used for
    /// randomized product checks. Every dominant pair must be present and no
    /// other position may be.
    pub fn from_entries(
        base: u64,
        levels: usize,
        kind: MatrixKind,
        vars: Vec<MultiPoly>,
        entries: BTreeMap<(usize, usize), MultiPoly>,
    ) -> Result<Self> {
        let dim = dimension(base, levels)?;
        let matrix = SparseMatrix::from_entries(dim, entries)?;
        let expected: usize = dominant_pairs(base, levels)?.len();
        for &(j, k) in matrix.entries.keys() {
            let (jd, kd) = (to_digits(j as u64, base, levels)?, to_digits(k as u64, base, levels)?);
            if !crate::digits::dominates(&kd, &jd)? {
                return Err(Error::InvalidSpec(format!("entry ({j}, {k}) is not digitally dominant")));
            }
        }
        if matrix.stored() != expected {
            return Err(Error::InvalidSpec("missing dominant entries".into()));
        }
        Ok(SierpinskiMatrix { base, levels, kind, vars, matrix })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn vars(&self) -> &[MultiPoly] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn get(&self, j: usize, k: usize) -> MultiPoly {
        self.matrix.get(j, k)
    }

    /// Product entry `(j, k)` summed over the digital interval
    /// `k ⪯ l ⪯ j` only.
    pub fn product_entry(&self, other: &SierpinskiMatrix, j: usize, k: usize) -> Result<MultiPoly> {
        self.check_conformable(other)?;
        let (jd, kd) = (to_digits(j as u64, self.base, self.levels)?, to_digits(k as u64, self.base, self.levels)?);
        let gap = match jd.sub_digits(&kd) {
            Ok(g) => g,
            Err(_) => return Ok(MultiPoly::zero()),
        };
        let k_val = kd.value() as usize;
        let mut acc = MultiPoly::zero();
        for m in dominated_range(&gap) {
            let l = k_val + m.value() as usize;
            if let (Some(a), Some(b)) = (self.matrix.entries.get(&(j, l)), other.matrix.entries.get(&(l, k))) {
                acc += a * b;
            }
        }
        Ok(acc)
    }

    fn check_conformable(&self, other: &SierpinskiMatrix) -> Result<()> {
        if self.base != other.base || self.levels != other.levels {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Sparsity-aware product: entry `(j, k)` is only formed for `k ⪯ j`
    /// and sums over `l` in the digital interval `[k, j]`.
    pub fn mul(&self, other: &SierpinskiMatrix) -> Result<SparseMatrix> {
        self.check_conformable(other)?;
        let mut out = SparseMatrix::new(self.dim());
        for &(j, k) in self.matrix.entries.keys() {
            out.insert(j, k, self.product_entry(other, j, k)?);
        }
        Ok(out)
    }
}

/// All `(j, k)` with `k ⪯_b j`, in lexicographic order.
pub fn dominant_pairs(base: u64, levels: usize) -> Result<Vec<(usize, usize)>> {
    let dim = dimension(base, levels)?;
    let mut out = Vec::new();
    for j in 0..dim {
        let jd = to_digits(j as u64, base, levels)?;
        out.extend(dominated_range(&jd).iter().map(|k| (j, k.value() as usize)));
    }
    Ok(out)
}

/// Entry-formula construction.
pub fn build_direct(
    kind: MatrixKind,
    system: &ShefferSystem,
    base: u64,
    levels: usize,
    vars: &[MultiPoly],
) -> Result<SierpinskiMatrix> {
    let dim = check_inputs(system, base, levels, vars)?;
    let tables = level_tables(kind, system, base, vars)?;
    let mut matrix = SparseMatrix::new(dim);
    for j in 0..dim {
        let jd = to_digits(j as u64, base, levels)?;
        for kd in dominated_range(&jd) {
            let d: DigitVector = jd.sub_digits(&kd)?;
            let value: MultiPoly =
                d.digits().iter().enumerate().map(|(i, &di)| tables[i][di as usize].clone()).product();
            matrix.insert(j, kd.value() as usize, value);
        }
    }
    Ok(SierpinskiMatrix { base, levels, kind, vars: vars.to_vec(), matrix })
}

/// The single-level `b x b` matrix with `(j, k) = bar_(j-k)(x)` for `k <= j`.
pub fn level_matrix(kind: MatrixKind, system: &ShefferSystem, base: u64, var: &MultiPoly) -> Result<SparseMatrix> {
    let b = base as usize;
    let mut m = SparseMatrix::new(b);
    for j in 0..b {
        for k in 0..=j {
            m.insert(j, k, system.bar_at(kind.seq(), j - k, var)?);
        }
    }
    Ok(m)
}

/// Kronecker-recurrence construction: level `i` enters as the left factor
/// with `vars[i]`, so the outermost block index is the top digit.
pub fn build_kronecker(
    kind: MatrixKind,
    system: &ShefferSystem,
    base: u64,
    levels: usize,
    vars: &[MultiPoly],
) -> Result<SierpinskiMatrix> {
    check_inputs(system, base, levels, vars)?;
    let mut matrix = SparseMatrix::identity(1);
    for v in vars {
        matrix = level_matrix(kind, system, base, v)?.kronecker(&matrix);
    }
    Ok(SierpinskiMatrix { base, levels, kind, vars: vars.to_vec(), matrix })
}

pub fn kronecker_product(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.kronecker(b)
}

pub fn matrix_mul(a: &SierpinskiMatrix, b: &SierpinskiMatrix) -> Result<SparseMatrix> {
    a.mul(b)
}

/// A differing entry between the two sides of a matrix identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EntryFailure {
    pub row: usize,
    pub col: usize,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixCheck {
    pub identity: &'static str,
    pub failure: Option<EntryFailure>,
}

impl MatrixCheck {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicativeReport {
    pub family: String,
    pub base: u64,
    pub levels: usize,
    pub mode: crate::assign::Mode,
    pub checks: Vec<MatrixCheck>,
}

impl MultiplicativeReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(MatrixCheck::pass)
    }
}

fn compare(identity: &'static str, lhs: &SparseMatrix, rhs: &SparseMatrix) -> MatrixCheck {
    let failure = lhs.first_difference(rhs).map(|(row, col)| EntryFailure {
        row,
        col,
        lhs: lhs.get(row, col),
        rhs: rhs.get(row, col),
    });
    MatrixCheck { identity, failure }
}

/// Checks `P(x) S(y) = S(x + y)` and `P(x) P(y) = P(x + y)` entrywise.
pub fn verify_multiplicative(
    system: &ShefferSystem,
    base: u64,
    levels: usize,
    opts: &VerifyOptions,
) -> Result<MultiplicativeReport> {
    let xs: Vec<MultiPoly> = (0..levels as u32).map(|i| opts.mode.var(VarId::x(i))).collect();
    let ys: Vec<MultiPoly> = (0..levels as u32).map(|i| opts.mode.var(VarId::y(i))).collect();
    let sums: Vec<MultiPoly> = xs.iter().zip(&ys).map(|(a, b)| a + b).collect();

    let px = build_kronecker(MatrixKind::P, system, base, levels, &xs)?;
    let mut checks = Vec::with_capacity(2);
    for (kind, identity) in [(MatrixKind::S, "P(x)S(y)=S(x+y)"), (MatrixKind::P, "P(x)P(y)=P(x+y)")] {
        let right = build_kronecker(kind, system, base, levels, &ys)?;
        let target = build_kronecker(kind, system, base, levels, &sums)?;
        let mut product = px.mul(&right)?;
        if opts.tamper && kind == MatrixKind::S {
            let j = product.dim() - 1;
            let bumped = &product.get(j, 0) + &MultiPoly::one();
            product.insert(j, 0, bumped);
        }
        checks.push(compare(identity, &product, target.matrix()));
    }
    Ok(MultiplicativeReport { family: system.family().to_string(), base, levels, mode: opts.mode, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Axis;
    use crate::rational::Rational;
    use crate::sheffer::{expand_system, FamilyId};

    fn x(i: u32) -> MultiPoly {
        MultiPoly::var(VarId::x(i))
    }

    fn dense(rows: Vec<Vec<MultiPoly>>) -> SparseMatrix {
        DenseMatrix::from_rows(rows).unwrap().to_sparse()
    }

    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    fn zero() -> MultiPoly {
        MultiPoly::zero()
    }

    #[test]
    fn direct_examples() {
        let mono = expand_system(&FamilyId::Monomial, 3).unwrap();
        let p = build_direct(MatrixKind::P, &mono, 2, 1, &[x(0)]).unwrap();
        assert!(p.matrix().values_eq(&dense(vec![vec![one(), zero()], vec![x(0), one()]])));

        let n0 = build_direct(MatrixKind::S, &mono, 3, 0, &[]).unwrap();
        assert_eq!(n0.dim(), 1);
        assert_eq!(n0.get(0, 0), one());

        let bern = expand_system(&FamilyId::Bernoulli, 3).unwrap();
        let s = build_direct(MatrixKind::S, &bern, 2, 1, &[x(0)]).unwrap();
        let half = MultiPoly::constant(Rational::new(1, 2).unwrap());
        assert!(s.matrix().values_eq(&dense(vec![vec![one(), zero()], vec![&x(0) - &half, one()]])));

        let s3 = build_direct(MatrixKind::S, &bern, 3, 1, &[x(0)]).unwrap();
        assert_eq!(s3.get(2, 0), bern.normalized(2).unwrap().0);
        assert_eq!(s3.get(2, 1), bern.normalized(1).unwrap().0);
        assert_eq!(s3.get(0, 2), zero());
    }

    #[test]
    fn kronecker_examples() {
        let mono = expand_system(&FamilyId::Monomial, 3).unwrap();
        let p = build_kronecker(MatrixKind::P, &mono, 2, 2, &[x(0), x(1)]).unwrap();
        let expect = dense(vec![
            vec![one(), zero(), zero(), zero()],
            vec![x(0), one(), zero(), zero()],
            vec![x(1), zero(), one(), zero()],
            vec![&x(0) * &x(1), x(1), x(0), one()],
        ]);
        assert!(p.matrix().values_eq(&expect));
        assert_eq!(p, build_direct(MatrixKind::P, &mono, 2, 2, &[x(0), x(1)]).unwrap());

        let bern = expand_system(&FamilyId::Bernoulli, 3).unwrap();
        let k1 = build_kronecker(MatrixKind::S, &bern, 4, 1, &[x(0)]).unwrap();
        assert_eq!(k1, build_direct(MatrixKind::S, &bern, 4, 1, &[x(0)]).unwrap());

        for fam in FamilyId::builtins(&[Rational::new(1, 2).unwrap()]) {
            let sys = expand_system(&fam, 3).unwrap();
            let zeros = vec![MultiPoly::zero(); 2];
            let p0 = build_kronecker(MatrixKind::P, &sys, 3, 2, &zeros).unwrap();
            assert!(p0.matrix().values_eq(&SparseMatrix::identity(9)), "{fam}");
        }
    }

    #[test]
    fn kronecker_product_examples() {
        let b = dense(vec![vec![x(0), x(1)], vec![one(), zero()]]);
        assert_eq!(kronecker_product(&SparseMatrix::identity(1), &b), b);
        let i4 = kronecker_product(&SparseMatrix::identity(2), &SparseMatrix::identity(2));
        assert_eq!(i4, SparseMatrix::identity(4));
    }

    #[test]
    fn mixed_product_property() {
        let v = |a: u32, b: u32| &x(a) + &MultiPoly::var(VarId::y(b));
        let a = DenseMatrix::from_rows(vec![vec![v(0, 0), x(1)], vec![one(), v(1, 1)]]).unwrap();
        let b = DenseMatrix::from_rows(vec![vec![x(2), zero()], vec![v(2, 0), x(0)]]).unwrap();
        let c = DenseMatrix::from_rows(vec![vec![one(), x(1)], vec![x(2), v(0, 2)]]).unwrap();
        let d = DenseMatrix::from_rows(vec![vec![v(1, 0), one()], vec![zero(), x(0)]]).unwrap();
        let lhs = a.kronecker(&b).mul(&c.kronecker(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kronecker(&b.mul(&d).unwrap());
        assert_eq!(lhs, rhs);
        // The sparse Kronecker agrees with the dense one.
        let sk = kronecker_product(&a.to_sparse(), &b.to_sparse());
        assert!(sk.values_eq(&a.kronecker(&b).to_sparse()));
    }

    #[test]
    fn mul_examples() {
        let bern = expand_system(&FamilyId::Bernoulli, 1).unwrap();
        let y0 = MultiPoly::var(VarId::y(0));
        let px = build_direct(MatrixKind::P, &bern, 2, 1, &[x(0)]).unwrap();
        let sy = build_direct(MatrixKind::S, &bern, 2, 1, std::slice::from_ref(&y0)).unwrap();
        let prod = matrix_mul(&px, &sy).unwrap();
        let half = MultiPoly::constant(Rational::new(1, 2).unwrap());
        let sum = &(&x(0) + &y0) - &half;
        assert!(prod.values_eq(&dense(vec![vec![one(), zero()], vec![sum, one()]])));

        let id = build_direct(MatrixKind::P, &bern, 2, 1, &[zero()]).unwrap();
        assert!(matrix_mul(&px, &id).unwrap().values_eq(px.matrix()));
        assert!(prod.is_lower_triangular());
        assert!((0..2).all(|i| prod.get(i, i) == one()));

        let other =
            build_direct(MatrixKind::P, &expand_system(&FamilyId::Bernoulli, 2).unwrap(), 3, 1, &[x(0)]).unwrap();
        assert!(matches!(matrix_mul(&px, &other), Err(Error::DimensionMismatch(..))));
        assert!(matches!(
            SparseMatrix::identity(2).mul(&SparseMatrix::identity(3)),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn sparse_product_matches_dense_oracle() {
        let herm = expand_system(&FamilyId::Hermite, 3).unwrap();
        let xs = symbolic_vars(Axis::X, 2);
        let ys = symbolic_vars(Axis::Y, 2);
        let a = build_direct(MatrixKind::P, &herm, 3, 2, &xs).unwrap();
        let b = build_direct(MatrixKind::S, &herm, 3, 2, &ys).unwrap();
        let fast = a.mul(&b).unwrap();
        let slow = DenseMatrix::from_sparse(a.matrix()).mul(&DenseMatrix::from_sparse(b.matrix())).unwrap();
        assert!(fast.values_eq(&slow.to_sparse()));
        assert!(fast.values_eq(&a.matrix().mul(b.matrix()).unwrap()));
    }

    #[test]
    fn builder_errors() {
        let bern = expand_system(&FamilyId::Bernoulli, 1).unwrap();
        assert_eq!(
            build_direct(MatrixKind::S, &bern, 3, 1, &[x(0)]),
            Err(Error::DegreeBoundTooSmall { needed: 2, got: 1 })
        );
        assert_eq!(build_direct(MatrixKind::S, &bern, 1, 1, &[x(0)]), Err(Error::BadBase(1)));
        assert_eq!(build_kronecker(MatrixKind::S, &bern, 2, 2, &[x(0)]), Err(Error::DimensionMismatch(1, 2)));
        let spec = crate::sheffer::ShefferSpec::InverseGF {
            h: crate::series::TruncatedSeries::from_rationals([Rational::from(2)], 3),
            fbar: crate::series::TruncatedSeries::t(3),
        };
        let scaled = expand_system(&FamilyId::Custom(Box::new(spec)), 3).unwrap();
        assert!(matches!(build_direct(MatrixKind::S, &scaled, 2, 1, &[x(0)]), Err(Error::NonUnitConstant(_))));
    }

    #[test]
    fn structure_invariants() {
        for b in 2..=4u64 {
            let sys = expand_system(&FamilyId::Laguerre(Rational::zero()), b as usize).unwrap();
            for n in 0..=3usize {
                if b.pow(n as u32) > 64 {
                    continue;
                }
                let xs = symbolic_vars(Axis::X, n);
                let m = build_direct(MatrixKind::S, &sys, b, n, &xs).unwrap();
                let tri = (b * (b + 1) / 2) as usize;
                assert_eq!(m.matrix().stored(), tri.pow(n as u32));
                assert!(m.matrix().entries().iter().all(|(_, v)| !v.is_zero()));
                assert!(m.matrix().is_lower_triangular());
                assert!((0..m.dim()).all(|i| m.get(i, i) == one()));
                let keys: Vec<(usize, usize)> = m.matrix().entries().keys().copied().collect();
                assert_eq!(keys, dominant_pairs(b, n).unwrap());
            }
        }
    }

    #[test]
    fn classical_sierpinski_pattern() {
        let mono = expand_system(&FamilyId::Monomial, 1).unwrap();
        let ones = vec![one(); 4];
        let m = build_direct(MatrixKind::S, &mono, 2, 4, &ones).unwrap();
        for j in 0..16usize {
            for k in 0..16usize {
                let odd = !m.get(j, k).is_zero();
                // Pascal's triangle mod 2 (Lucas): binom(j, k) odd iff k & !j == 0.
                assert_eq!(odd, k & !j == 0, "({j}, {k})");
                if odd {
                    assert_eq!(m.get(j, k), one());
                }
            }
        }
    }

    #[test]
    fn multiplicative_examples() {
        let bern = expand_system(&FamilyId::Bernoulli, 1).unwrap();
        assert!(verify_multiplicative(&bern, 2, 2, &VerifyOptions::exact()).unwrap().pass());
        let mono = expand_system(&FamilyId::Monomial, 1).unwrap();
        assert!(verify_multiplicative(&mono, 2, 1, &VerifyOptions::exact()).unwrap().pass());
        let herm = expand_system(&FamilyId::Hermite, 2).unwrap();
        assert!(verify_multiplicative(&herm, 3, 2, &VerifyOptions::exact()).unwrap().pass());
        assert!(verify_multiplicative(&herm, 3, 2, &VerifyOptions::probabilistic(3)).unwrap().pass());

        let r = verify_multiplicative(&bern, 2, 2, &VerifyOptions::exact().tampered()).unwrap();
        assert!(!r.pass());
        let f = r.checks[0].failure.as_ref().unwrap();
        assert_eq!((f.row, f.col), (3, 0));
        assert_eq!(&f.lhs - &f.rhs, one());
        assert!(r.checks[1].pass());
    }
}
