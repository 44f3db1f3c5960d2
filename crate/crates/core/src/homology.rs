//! Integral simplicial homology computed from Smith normal forms of the
//! boundary operators.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::complex::{FVector, IntegerMatrix, SimplicialComplex};
use crate::error::{Error, Result};
use crate::snf::{dense_apply, smith_normal_form, smith_normal_form_with_transforms, DenseMatrix};

/// Invariant factors `t_1 | t_2 | ... | t_s` (all `> 1`) of a finite abelian
/// group. The empty list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionSignature(Vec<BigInt>);

impl TorsionSignature {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// From an SNF invariant list; entries equal to one are dropped.
    pub fn from_invariants<I: IntoIterator<Item = BigInt>>(invariants: I) -> Self {
        let factors: Vec<BigInt> = invariants.into_iter().filter(|d| *d > BigInt::one()).collect();
        debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        TorsionSignature(factors)
    }

    /// Normal form of `Z/o_1 + Z/o_2 + ...` for arbitrary positive orders.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().collect();
        let n = orders.len();
        let diag = IntegerMatrix::from_triplets(n, n, orders.into_iter().enumerate().map(|(i, o)| (i, i, o)));
        Self::from_invariants(smith_normal_form(&diag).invariants)
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.0.iter().product()
    }

    /// Invariant-factor form of the direct sum.
    pub fn direct_sum(&self, other: &TorsionSignature) -> TorsionSignature {
        Self::from_cyclic_orders(self.0.iter().chain(&other.0).cloned())
    }
}

impl fmt::Display for TorsionSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Betti numbers and torsion in every dimension `0..=dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<TorsionSignature>,
    pub f_vector: FVector,
    pub num_vertices: usize,
}

impl HomologySummary {
    pub fn betti_in(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn torsion_in(&self, k: usize) -> TorsionSignature {
        self.torsion.get(k).cloned().unwrap_or_default()
    }

    pub fn euler_from_betti(&self) -> i64 {
        alternating_sum(&self.betti)
    }

    pub fn euler_from_faces(&self) -> i64 {
        alternating_sum(&self.f_vector.0)
    }

    /// `betti_i <= C(n, i + 1)` for every i.
    pub fn betti_bound_holds(&self) -> bool {
        self.betti
            .iter()
            .enumerate()
            .all(|(i, &b)| BigInt::from(b) <= binomial(self.num_vertices, i + 1))
    }
}

fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn homology(x: &SimplicialComplex) -> HomologySummary {
    let Some(dim) = x.dim() else {
        return HomologySummary {
            betti: Vec::new(),
            torsion: Vec::new(),
            f_vector: x.f_vector(),
            num_vertices: 0,
        };
    };
    // forms[k - 1] is the SNF of the boundary in degree k.
    let forms: Vec<(usize, TorsionSignature)> = (1..=dim)
        .into_par_iter()
        .map(|k| {
            let s = smith_normal_form(&x.boundary_matrix(k).expect("degree in range"));
            (s.rank(), TorsionSignature::from_invariants(s.invariants))
        })
        .collect();
    let rank = |k: usize| if k == 0 || k > dim { 0 } else { forms[k - 1].0 };
    let betti = (0..=dim).map(|k| x.num_faces(k) - rank(k) - rank(k + 1)).collect();
    let torsion = (0..=dim)
        .map(|k| if k < dim { forms[k].1.clone() } else { TorsionSignature::trivial() })
        .collect();
    HomologySummary { betti, torsion, f_vector: x.f_vector(), num_vertices: x.num_vertices() }
}

/// Torsion of `H_k` alone, from one Smith normal form.
pub fn torsion_in_dimension(x: &SimplicialComplex, k: usize) -> TorsionSignature {
    match x.boundary_matrix(k + 1) {
        Ok(b) => TorsionSignature::from_invariants(smith_normal_form(&b).invariants),
        Err(_) => TorsionSignature::trivial(),
    }
}

/// Coordinates of a homology class: residues on the torsion generators and
/// integer coordinates on a basis of the free part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoordinates {
    /// `(residue, modulus)` with `0 <= residue < modulus`.
    pub torsion: Vec<(BigInt, BigInt)>,
    pub free: Vec<BigInt>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|(r, _)| r.is_zero()) && self.free.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> ClassCoordinates {
        ClassCoordinates {
            torsion: self.torsion.iter().map(|(r, m)| ((r * k).mod_floor(m), m.clone())).collect(),
            free: self.free.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add(&self, other: &ClassCoordinates) -> ClassCoordinates {
        ClassCoordinates {
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .map(|((a, m), (b, _))| ((a + b).mod_floor(m), m.clone()))
                .collect(),
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A coordinate system on `H_k(X)` derived from two Smith normal forms.
///
/// With `U * d_{k+1} * V = D` of rank `r`, the cycle `z` has coordinates
/// `y = U z`; the first `r` of them carry the torsion (modulo the invariant
/// factors) and the rest lie in the kernel of `d_k * U^{-1}` restricted to
/// the trailing columns, whose basis comes from a second reduction.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    k: usize,
    boundary: Option<IntegerMatrix>,
    u: DenseMatrix,
    rank_next: usize,
    /// `(position in y, invariant factor)` for factors greater than one.
    moduli: Vec<(usize, BigInt)>,
    /// Rows mapping the trailing part of `y` to free coordinates.
    free_map: DenseMatrix,
    chain_len: usize,
}

impl HomologyBasis {
    pub fn new(x: &SimplicialComplex, k: usize) -> Result<Self> {
        let dim = x.dim().ok_or_else(|| Error::OutOfRange("homology of the empty complex".into()))?;
        if k > dim {
            return Err(Error::OutOfRange(format!("degree {k} exceeds dimension {dim}")));
        }
        let m = x.num_faces(k);
        let next = if k < dim { x.boundary_matrix(k + 1)? } else { IntegerMatrix::zeros(m, 0) };
        let s = smith_normal_form_with_transforms(&next);
        let r = s.rank();
        let t = s.transforms.expect("transforms requested");
        let moduli = s
            .invariants
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, d)| (i, d.clone()))
            .collect();

        let boundary = if k >= 1 { Some(x.boundary_matrix(k)?) } else { None };
        let free_map = match &boundary {
            Some(a) => {
                let entries = (r..m).flat_map(|j| {
                    let col: Vec<BigInt> = t.u_inv.iter().map(|row| row[j].clone()).collect();
                    a.apply(&col)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(move |(i, v)| (i, j - r, v))
                        .collect::<Vec<_>>()
                });
                let restricted = IntegerMatrix::from_triplets(a.nrows(), m - r, entries);
                let s2 = smith_normal_form_with_transforms(&restricted);
                let r2 = s2.rank();
                s2.transforms.expect("transforms requested").v_inv.split_off(r2)
            }
            None => (0..m - r)
                .map(|i| (0..m - r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
                .collect(),
        };
        Ok(HomologyBasis { k, boundary, u: t.u, rank_next: r, moduli, free_map, chain_len: m })
    }

    pub fn betti(&self) -> usize {
        self.free_map.len()
    }

    pub fn torsion(&self) -> TorsionSignature {
        TorsionSignature::from_invariants(self.moduli.iter().map(|(_, d)| d.clone()))
    }

    pub fn coordinates(&self, z: &[BigInt]) -> Result<ClassCoordinates> {
        if z.len() != self.chain_len {
            return Err(Error::Precondition(format!(
                "chain has {} coefficients, expected {}",
                z.len(),
                self.chain_len
            )));
        }
        if let Some(a) = &self.boundary {
            if a.apply(z).iter().any(|x| !x.is_zero()) {
                return Err(Error::NotACycle(self.k));
            }
        }
        let y = dense_apply(&self.u, z);
        let torsion = self.moduli.iter().map(|(i, d)| (y[*i].mod_floor(d), d.clone())).collect();
        let free = dense_apply(&self.free_map, &y[self.rank_next..]);
        Ok(ClassCoordinates { torsion, free })
    }
}

/// Decides whether k-chains are boundaries, using invariant factors only.
///
/// `z` lies in the lattice spanned by the columns of `∂_{k+1}` exactly when
/// appending it as a column changes neither the rank nor the product of the
/// invariant factors.
#[derive(Clone, Debug)]
pub struct BoundaryTest {
    k: usize,
    cycle_check: Option<IntegerMatrix>,
    image: IntegerMatrix,
    rank: usize,
    index: BigInt,
}

impl BoundaryTest {
    pub fn new(x: &SimplicialComplex, k: usize) -> Result<Self> {
        let dim = x.dim().ok_or_else(|| Error::OutOfRange("homology of the empty complex".into()))?;
        if k > dim {
            return Err(Error::OutOfRange(format!("degree {k} exceeds dimension {dim}")));
        }
        let image = if k < dim { x.boundary_matrix(k + 1)? } else { IntegerMatrix::zeros(x.num_faces(k), 0) };
        let s = smith_normal_form(&image);
        let cycle_check = if k >= 1 { Some(x.boundary_matrix(k)?) } else { None };
        Ok(BoundaryTest { k, cycle_check, rank: s.rank(), index: s.invariants.iter().product(), image })
    }

    /// Errors with [`Error::NotACycle`] when `z` is not a cycle.
    pub fn is_boundary(&self, z: &[BigInt]) -> Result<bool> {
        if z.len() != self.image.nrows() {
            return Err(Error::Precondition(format!(
                "chain has {} coefficients, expected {}",
                z.len(),
                self.image.nrows()
            )));
        }
        if let Some(a) = &self.cycle_check {
            if a.apply(z).iter().any(|x| !x.is_zero()) {
                return Err(Error::NotACycle(self.k));
            }
        }
        let s = smith_normal_form(&self.image.with_column(z));
        Ok(s.rank() == self.rank && s.invariants.iter().product::<BigInt>() == self.index)
    }
}

/// Coordinates of the class of the k-cycle `z` in `H_k(X)`.
pub fn class_coordinates(x: &SimplicialComplex, k: usize, z: &[BigInt]) -> Result<ClassCoordinates> {
    HomologyBasis::new(x, k)?.coordinates(z)
}
