//! Counting abelian 2-groups and realising all of them at a given order.
//!
//! The groups of order `2^e` correspond to the partitions of `e`. A census
//! builds one complex per partition and certifies its torsion; since
//! distinct groups have distinct invariant-factor lists, a verified census
//! exhibits `π(e)` complexes that are pairwise not homotopy equivalent.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::construction::{power_of_two_exponent, realize_group, TwoGroup};
use crate::error::{Error, Result};
use crate::homology::{torsion_in_dimension, TorsionSignature};

/// `π(0), ..., π(N)` from Euler's pentagonal-number recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<BigUint>,
}

impl PartitionTable {
    pub fn new(max: usize) -> Self {
        let mut values: Vec<BigUint> = Vec::with_capacity(max + 1);
        values.push(BigUint::one());
        for n in 1..=max {
            let mut plus = BigUint::zero();
            let mut minus = BigUint::zero();
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
                *acc += &values[n - g1];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    *acc += &values[n - g2];
                }
            }
            values.push(plus - minus);
        }
        PartitionTable { values }
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

pub fn partition_count(n: usize) -> BigUint {
    PartitionTable::new(n).values.pop().expect("table is nonempty")
}

/// Partitions of `n >= 1` in reverse lexicographic order, `(n)` first and
/// `(1, ..., 1)` last.
pub fn partitions_of(n: u32) -> Partitions {
    Partitions { next: (n > 0).then(|| vec![n]) }
}

pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = TwoGroup;

    fn next(&mut self) -> Option<TwoGroup> {
        let current = self.next.take()?;
        // Successor: decrement the last part exceeding one and refill greedily.
        let mut parts = current.clone();
        let mut ones = 0u32;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let cap = *last;
            let mut rest = ones + 1;
            while rest > 0 {
                let part = rest.min(cap);
                parts.push(part);
                rest -= part;
            }
            self.next = Some(parts);
        }
        Some(TwoGroup::new(current).expect("parts are positive"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub group: TwoGroup,
    pub vertices: usize,
    /// Certified torsion of `H_{d-1}`; `None` when the census ran unverified.
    pub torsion: Option<TorsionSignature>,
    pub complex: SimplicialComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub d: usize,
    pub e: u32,
    pub group_count: BigUint,
    pub realized: Vec<CensusEntry>,
    pub distinctness_certified: bool,
}

impl CensusReport {
    /// Largest vertex count allowed by `2(d+1) log_2 |G|`.
    pub fn vertex_bound(&self) -> usize {
        2 * (self.d + 1) * self.e as usize
    }

    pub fn max_vertices(&self) -> usize {
        self.realized.iter().map(|r| r.vertices).max().unwrap_or(0)
    }
}

/// Builds and (optionally) certifies a complex for every abelian group of order `2^e`.
pub fn run_census(d: usize, e: u32, verify: bool) -> Result<CensusReport> {
    if d < 2 || e < 1 {
        return Err(Error::Precondition(format!("census needs d >= 2 and e >= 1, got d = {d}, e = {e}")));
    }
    let groups: Vec<TwoGroup> = partitions_of(e).collect();
    let realized = groups
        .par_iter()
        .map(|g| -> Result<CensusEntry> {
            let x = realize_group(d, g)?.complex;
            let torsion = if verify {
                let got = torsion_in_dimension(&x, d - 1);
                let want = g.invariant_factors();
                if got != want {
                    return Err(Error::CensusIntegrity(format!("group {g}: expected torsion {want}, certified {got}")));
                }
                Some(got)
            } else {
                None
            };
            Ok(CensusEntry { group: g.clone(), vertices: x.num_vertices(), torsion, complex: x })
        })
        .collect::<Result<Vec<_>>>()?;

    let group_count = partition_count(e as usize);
    if BigUint::from(realized.len()) != group_count {
        return Err(Error::CensusIntegrity(format!(
            "enumerated {} partitions of {e}, expected {group_count}",
            realized.len()
        )));
    }
    let distinctness_certified = verify && {
        let mut sigs: Vec<&TorsionSignature> = realized.iter().filter_map(|r| r.torsion.as_ref()).collect();
        sigs.sort();
        sigs.dedup();
        sigs.len() == realized.len()
    };
    Ok(CensusReport { d, e, group_count, realized, distinctness_certified })
}

/// Census of the groups of the given order, which must be a power of two.
pub fn run_census_for_order(d: usize, order: &BigInt, verify: bool) -> Result<CensusReport> {
    let e = power_of_two_exponent(order)
        .filter(|&e| e > 0)
        .ok_or_else(|| Error::NotTwoGroup(format!("order {order} is not a positive power of two")))?;
    run_census(d, e, verify)
}

/// Largest `d` for which the growth table computes `π(2^d)` exactly.
pub const EXACT_GROWTH_LIMIT: u32 = 16;

/// One row of the growth table for `π(2^d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticRow {
    pub d: u32,
    /// Vertex budget `25d` of the final complexes.
    pub n: u64,
    /// Exact `π(2^d)`, present for `d <= EXACT_GROWTH_LIMIT`.
    pub groups: Option<BigUint>,
    /// `log_2 π(2^d)`; from the leading term of the convergent series when
    /// the exact value is absent.
    pub log2_groups: f64,
    /// `2^{d/2}`
    pub threshold_log2: f64,
    /// `log_2 π(2^d) / 2^{d/2}`
    pub ratio: f64,
    /// `π(2^d) >= 2^{2^{d/2}}`
    pub doubly_exponential: bool,
    /// `log_2 log_2 π(2^d) / n`, to compare with `0.02`.
    pub implied_exponent: f64,
}

/// `log_2 π(n)` from the first term of the Rademacher series,
/// `(π√2)^{-1} d/dn[sinh(Cλ)/λ]` with `λ = √(n - 1/24)`, `C = π√(2/3)`.
///
/// The neglected terms are relatively of order `exp(-Cλ/2)`, far below
/// double precision once `n` is in the hundreds.
pub fn log2_partition_estimate(n: u64) -> f64 {
    use std::f64::consts::{LN_2, PI, SQRT_2};
    let lambda = (n as f64 - 1.0 / 24.0).sqrt();
    let c = PI * (2.0f64 / 3.0).sqrt();
    let mu = c * lambda;
    // ln(C cosh μ / λ - sinh μ / λ²) with cosh, sinh = e^μ (1 ± e^{-2μ}) / 2.
    let e = (-2.0 * mu).exp();
    let bracket = (c / lambda) * (1.0 + e) - (1.0 - e) / (lambda * lambda);
    let ln_p = mu - LN_2 + bracket.ln() - (2.0 * lambda).ln() - (PI * SQRT_2).ln();
    ln_p / LN_2
}

/// Growth of the number of abelian groups of order `2^{2^d}` for `1 <= d <= d_max`.
pub fn asymptotic_report(d_max: u32) -> Vec<AsymptoticRow> {
    if d_max == 0 {
        return Vec::new();
    }
    let table = PartitionTable::new(1usize << d_max.min(EXACT_GROWTH_LIMIT));
    (1..=d_max)
        .map(|d| {
            let groups = (d <= EXACT_GROWTH_LIMIT).then(|| table.get(1usize << d).clone());
            let log2_groups = groups.as_ref().map_or_else(|| log2_partition_estimate(1u64 << d), log2);
            let threshold_log2 = 2f64.powf(d as f64 / 2.0);
            let n = 25 * d as u64;
            AsymptoticRow {
                d,
                n,
                doubly_exponential: log2_groups >= threshold_log2,
                ratio: log2_groups / threshold_log2,
                implied_exponent: log2_groups.log2() / n as f64,
                threshold_log2,
                log2_groups,
                groups,
            }
        })
        .collect()
}

/// `log_2` of a big integer, using the top 64 bits.
fn log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().map_or(f64::NAN, |v| (v as f64).log2());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits fit");
    (top as f64).log2() + shift as f64
}
