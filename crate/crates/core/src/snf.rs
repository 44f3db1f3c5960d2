//! Smith normal form over the integers.
//!
//! The reduction works on a sparse row map. At each step the nonzero entry
//! of least absolute value is chosen as pivot (ties go to the lowest row,
//! then the lowest column); its column is cleared by row operations and its
//! row by column operations. Nonzero remainders restart the search with a
//! strictly smaller pivot. Once the pivot row and column are clear, an
//! entry the pivot does not divide is folded into the pivot row, which
//! forces the divisibility chain on the recorded pivots.
//!
//! Entries are arbitrary-precision; telescopes encode `2^t` in their
//! relations and intermediate values are not bounded by machine words.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::IntegerMatrix;

/// Row-major dense matrix.
pub type DenseMatrix = Vec<Vec<BigInt>>;

/// Unimodular transforms with `U * M * V = D`, together with their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub u: DenseMatrix,
    pub u_inv: DenseMatrix,
    pub v: DenseMatrix,
    pub v_inv: DenseMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`, all positive.
    pub invariants: Vec<BigInt>,
    pub transforms: Option<Transforms>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// The diagonal matrix `D` of the same shape as the input.
    pub fn diagonal(&self) -> DenseMatrix {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.invariants.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    Reducer::new(m, false).run()
}

/// As [`smith_normal_form`], also returning unimodular `U`, `V` (and
/// inverses) with `U * M * V = diag(invariants)`.
pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> SmithForm {
    Reducer::new(m, true).run()
}

pub fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn dense_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch in dense product");
            (0..cols)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| x * &b[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn dense_apply(a: &DenseMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum())
        .collect()
}

struct Reducer {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
    /// For each column, the rows holding a nonzero entry in it.
    cols: Vec<BTreeSet<usize>>,
    transforms: Option<Transforms>,
    pivots: Vec<(usize, usize, BigInt)>,
}

impl Reducer {
    fn new(m: &IntegerMatrix, keep_transforms: bool) -> Self {
        let mut rows = vec![BTreeMap::new(); m.nrows()];
        let mut cols = vec![BTreeSet::new(); m.ncols()];
        for (c, col) in cols.iter_mut().enumerate() {
            for (r, x) in m.column(c) {
                rows[*r].insert(c, x.clone());
                col.insert(*r);
            }
        }
        let transforms = keep_transforms.then(|| Transforms {
            u: identity(m.nrows()),
            u_inv: identity(m.nrows()),
            v: identity(m.ncols()),
            v_inv: identity(m.ncols()),
        });
        Reducer { nrows: m.nrows(), ncols: m.ncols(), rows, cols, transforms, pivots: Vec::new() }
    }

    fn entry(&self, r: usize, c: usize) -> Option<&BigInt> {
        self.rows[r].get(&c)
    }

    fn set(&mut self, r: usize, c: usize, x: BigInt) {
        if x.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, x);
            self.cols[c].insert(r);
        }
    }

    /// row[target] += k * row[source]
    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        let src: Vec<(usize, BigInt)> = self.rows[source].iter().map(|(c, x)| (*c, x.clone())).collect();
        for (c, x) in src {
            let cur = self.entry(target, c).cloned().unwrap_or_default();
            self.set(target, c, cur + k * x);
        }
        if let Some(t) = &mut self.transforms {
            let src_row = t.u[source].clone();
            for (y, s) in t.u[target].iter_mut().zip(&src_row) {
                *y += k * s;
            }
            for row in &mut t.u_inv {
                let delta = k * &row[target];
                row[source] -= delta;
            }
        }
    }

    /// col[target] += k * col[source]
    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        let src: Vec<(usize, BigInt)> =
            self.cols[source].iter().map(|&r| (r, self.rows[r][&source].clone())).collect();
        for (r, x) in src {
            let cur = self.entry(r, target).cloned().unwrap_or_default();
            self.set(r, target, cur + k * x);
        }
        if let Some(t) = &mut self.transforms {
            for row in &mut t.v {
                let delta = k * &row[source];
                row[target] += delta;
            }
            let tgt_row = t.v_inv[target].clone();
            for (y, s) in t.v_inv[source].iter_mut().zip(&tgt_row) {
                *y -= k * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.rows[r].values_mut() {
            *x = -&*x;
        }
        if let Some(t) = &mut self.transforms {
            for y in &mut t.u[r] {
                *y = -&*y;
            }
            for row in &mut t.u_inv {
                row[r] = -&row[r];
            }
        }
    }

    /// Entry of least absolute value; ties to the lowest row, then column.
    fn min_entry(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                if best.is_none_or(|(_, _, b)| x.magnitude() < b.magnitude()) {
                    if x.magnitude().is_one() {
                        return Some((r, *c));
                    }
                    best = Some((r, *c, x));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// Some active entry outside row `r` that `p` does not divide.
    fn non_multiple(&self, r: usize, p: &BigInt) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .find(|(_, row)| row.values().any(|x| !x.is_multiple_of(p)))
            .map(|(i, _)| i)
    }

    fn run(mut self) -> SmithForm {
        while let Some((mut r, mut c)) = self.min_entry() {
            loop {
                let p = self.rows[r][&c].clone();
                let mut remainder = false;

                let col_rows: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
                for i in col_rows {
                    let q = self.rows[i][&c].div_floor(&p);
                    self.add_row(i, r, &-q);
                    remainder |= self.entry(i, c).is_some();
                }
                let row_cols: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
                for j in row_cols {
                    let q = self.rows[r][&j].div_floor(&p);
                    self.add_col(j, c, &-q);
                    remainder |= self.entry(r, j).is_some();
                }

                if remainder {
                    (r, c) = self.min_entry().expect("a nonzero remainder is present");
                    continue;
                }
                if !p.magnitude().is_one() {
                    if let Some(i) = self.non_multiple(r, &p) {
                        self.add_row(r, i, &BigInt::one());
                        continue;
                    }
                }
                break;
            }
            if self.rows[r][&c].is_negative() {
                self.negate_row(r);
            }
            let p = self.rows[r].remove(&c).expect("pivot present");
            self.cols[c].remove(&r);
            self.pivots.push((r, c, p));
        }
        self.finish()
    }

    fn finish(self) -> SmithForm {
        let invariants: Vec<BigInt> = self.pivots.iter().map(|(_, _, p)| p.clone()).collect();
        debug_assert!(invariants.windows(2).all(|w| w[1].is_multiple_of(&w[0])));

        let transforms = self.transforms.map(|t| {
            let row_order = pivot_first_order(self.pivots.iter().map(|(r, _, _)| *r), self.nrows);
            let col_order = pivot_first_order(self.pivots.iter().map(|(_, c, _)| *c), self.ncols);
            Transforms {
                u: row_order.iter().map(|&i| t.u[i].clone()).collect(),
                u_inv: t.u_inv.iter().map(|row| row_order.iter().map(|&i| row[i].clone()).collect()).collect(),
                v: t.v.iter().map(|row| col_order.iter().map(|&j| row[j].clone()).collect()).collect(),
                v_inv: col_order.iter().map(|&j| t.v_inv[j].clone()).collect(),
            }
        });
        SmithForm { rows: self.nrows, cols: self.ncols, invariants, transforms }
    }
}

/// The given indices in order, followed by the remaining indices of `0..n` ascending.
fn pivot_first_order(pivots: impl Iterator<Item = usize>, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = pivots.collect();
    let used: BTreeSet<usize> = order.iter().copied().collect();
    order.extend((0..n).filter(|i| !used.contains(i)));
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn check_transforms(m: &IntegerMatrix, s: &SmithForm) {
        let t = s.transforms.as_ref().unwrap();
        let dense = m.to_dense();
        assert_eq!(dense_mul(&dense_mul(&t.u, &dense), &t.v), s.diagonal());
        assert_eq!(dense_mul(&t.u, &t.u_inv), identity(m.nrows()));
        assert_eq!(dense_mul(&t.v, &t.v_inv), identity(m.ncols()));
    }

    #[test]
    fn diag_2_3() {
        let m = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(ints(&smith_normal_form(&m).invariants), vec![1, 6]);
        check_transforms(&m, &smith_normal_form_with_transforms(&m));
    }

    #[test]
    fn zero_and_empty() {
        let z = IntegerMatrix::zeros(3, 4);
        assert!(smith_normal_form(&z).invariants.is_empty());
        let e = IntegerMatrix::zeros(0, 0);
        assert_eq!(smith_normal_form(&e).rank(), 0);
        let tall = IntegerMatrix::zeros(5, 0);
        check_transforms(&tall, &smith_normal_form_with_transforms(&tall));
    }

    #[test]
    fn two_four_four_two() {
        let m = IntegerMatrix::from_dense(&[vec![2, 4], vec![4, 2]]);
        let s = smith_normal_form_with_transforms(&m);
        assert_eq!(ints(&s.invariants), vec![2, 6]);
        check_transforms(&m, &s);
    }

    #[test]
    fn negative_and_rectangular() {
        let m = IntegerMatrix::from_dense(&[vec![-6, 4, 0], vec![0, -10, 15]]);
        let s = smith_normal_form_with_transforms(&m);
        // gcd of entries 1; gcd of 2x2 minors (60, -90, 60) is 30.
        assert_eq!(ints(&s.invariants), vec![1, 30]);
        check_transforms(&m, &s);
    }

    #[test]
    fn torsion_drops_units() {
        let m = IntegerMatrix::from_dense(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 4]]);
        let s = smith_normal_form(&m);
        assert_eq!(ints(&s.torsion()), vec![2, 4]);
    }

    #[test]
    fn large_entries_stay_exact() {
        // [[2^70, 0], [0, 3]] -> (1, 3 * 2^70)
        let big: BigInt = BigInt::one() << 70u32;
        let m = IntegerMatrix::from_dense(&[vec![big.clone(), BigInt::zero()], vec![BigInt::zero(), BigInt::from(3)]]);
        let s = smith_normal_form_with_transforms(&m);
        assert_eq!(s.invariants, vec![BigInt::one(), big * 3]);
        check_transforms(&m, &s);
    }
}
