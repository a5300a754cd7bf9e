//! Dense exact linear algebra.
//!
//! Algorithms are generic over [`FieldOps`] so that prime-field work runs on
//! plain `u64` residues while the rest of the crate passes [`Scalar`]s
//! around. Pivoting is always the leftmost nonzero entry.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polycore::{mod_inverse, Field, Scalar};

pub trait FieldOps: Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;

    /// `row[j] -= f * other[j]` for `j >= start`.
    fn sub_scaled(&self, row: &mut [Self::E], f: &Self::E, other: &[Self::E], start: usize) {
        for j in start..row.len() {
            if !self.is_zero(&other[j]) {
                row[j] = self.sub(&row[j], &self.mul(f, &other[j]));
            }
        }
    }

    fn scale_row(&self, row: &mut [Self::E], f: &Self::E) {
        for x in row.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, f);
            }
        }
    }
}

/// Arithmetic on [`Scalar`] values of a fixed field.
#[derive(Clone, Copy, Debug)]
pub struct ScalarOps(pub Field);

impl FieldOps for ScalarOps {
    type E = Scalar;
    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn one(&self) -> Scalar {
        self.0.one()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.inv().expect("inverse of zero")
    }
    fn from_scalar(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn to_scalar(&self, a: &Scalar) -> Scalar {
        a.clone()
    }
}

/// GF(p) on raw residues, p < 2^32.
#[derive(Clone, Copy, Debug)]
pub struct PrimeOps(pub u64);

impl FieldOps for PrimeOps {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        mod_inverse(*a, self.0)
    }
    fn from_scalar(&self, s: &Scalar) -> u64 {
        s.as_modular().expect("modular scalar")
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Modular { value: *a, modulus: self.0 }
    }
    fn sub_scaled(&self, row: &mut [u64], f: &u64, other: &[u64], start: usize) {
        let p = self.0;
        let nf = (p - f) % p;
        if nf == 0 {
            return;
        }
        for (x, &o) in row[start..].iter_mut().zip(&other[start..]) {
            *x = (*x + nf * o) % p;
        }
    }
}

/// The rationals on `BigRational`.
#[derive(Clone, Copy, Debug)]
pub struct RationalOps;

impl FieldOps for RationalOps {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        s.as_rational().expect("rational scalar").clone()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
}

/// Rows kept in semi-echelon form: every row has a pivot (its leftmost
/// nonzero entry, normalised to one) and vanishes at the pivots of all
/// earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon<K: FieldOps> {
    ops: K,
    ncols: usize,
    rows: Vec<Vec<K::E>>,
    pivots: Vec<usize>,
}

impl<K: FieldOps + Clone> Echelon<K> {
    pub fn new(ops: K, ncols: usize) -> Self {
        Echelon { ops, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ops(&self) -> &K {
        &self.ops
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<K::E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [K::E]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !self.ops.is_zero(&v[p]) {
                let f = v[p].clone();
                self.ops.sub_scaled(v, &f, row, p);
            }
        }
    }

    pub fn contains(&self, v: &[K::E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.ops.is_zero(x))
    }

    /// Insert `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, mut v: Vec<K::E>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let p = v.iter().position(|x| !self.ops.is_zero(x))?;
        let inv = self.ops.inv(&v[p]);
        self.ops.scale_row(&mut v[p..], &inv);
        self.rows.push(v);
        self.pivots.push(p);
        Some(p)
    }

    /// Canonical reduced row echelon form: rows sorted by pivot and every
    /// pivot column cleared in all other rows.
    pub fn into_rref(self) -> (Vec<Vec<K::E>>, Vec<usize>) {
        let ops = self.ops;
        let mut pairs: Vec<(usize, Vec<K::E>)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        for i in (0..pairs.len()).rev() {
            let (pi, row_i) = (pairs[i].0, pairs[i].1.clone());
            for pair in pairs.iter_mut().take(i) {
                if !ops.is_zero(&pair.1[pi]) {
                    let f = pair.1[pi].clone();
                    ops.sub_scaled(&mut pair.1, &f, &row_i, pi);
                }
            }
        }
        let pivots = pairs.iter().map(|(p, _)| *p).collect();
        (pairs.into_iter().map(|(_, r)| r).collect(), pivots)
    }
}

/// Reduced row echelon form of the given rows; returns `(rows, pivots)`.
pub fn rref<K: FieldOps + Clone>(ops: &K, rows: Vec<Vec<K::E>>, ncols: usize) -> (Vec<Vec<K::E>>, Vec<usize>) {
    let mut e = Echelon::new(ops.clone(), ncols);
    for r in rows {
        e.insert(r);
    }
    e.into_rref()
}

/// Basis of `{x : M x = 0}` where `M` is given by its rows. Each basis vector
/// has a one in its free column and zeros in the other free columns.
pub fn kernel<K: FieldOps + Clone>(ops: &K, rows: Vec<Vec<K::E>>, ncols: usize) -> Vec<Vec<K::E>> {
    let (r, pivots) = rref(ops, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![ops.zero(); ncols];
            v[free] = ops.one();
            for (row, &p) in r.iter().zip(&pivots) {
                if !ops.is_zero(&row[free]) {
                    v[p] = ops.neg(&row[free]);
                }
            }
            v
        })
        .collect()
}

pub fn rank<K: FieldOps + Clone>(ops: &K, rows: Vec<Vec<K::E>>, ncols: usize) -> usize {
    let mut e = Echelon::new(ops.clone(), ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Transpose a row-major matrix with `ncols` columns.
pub fn transpose<T: Clone>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Solve `x * rows = target` for a row vector `x` (i.e. express `target` as a
/// combination of `rows`). `None` if `target` is outside their span.
pub fn solve_combination<K: FieldOps + Clone>(
    ops: &K,
    rows: &[Vec<K::E>],
    target: &[K::E],
) -> Option<Vec<K::E>> {
    let n = target.len();
    let m = rows.len();
    // augment each row with an identity block to track the combination
    let mut e = Echelon::new(ops.clone(), n + m);
    let mut tagged = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.extend((0..m).map(|j| if i == j { ops.one() } else { ops.zero() }));
        tagged.push(v);
    }
    for v in tagged {
        e.insert(v);
    }
    let mut t = target.to_vec();
    t.extend((0..m).map(|_| ops.zero()));
    e.reduce(&mut t);
    if t[..n].iter().any(|x| !ops.is_zero(x)) {
        return None;
    }
    // t = target - x*rows restricted to the tag block holds -x
    Some(t[n..].iter().map(|x| ops.neg(x)).collect())
}
