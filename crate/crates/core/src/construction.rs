//! The deterministic constructions: the building blocks `P(d)`, telescopes
//! `X(d, t)` with `H_{d-1}` torsion `Z/2^t`, and disjoint unions of
//! telescopes realising any finite abelian 2-group.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::homology::{BoundaryTest, TorsionSignature};

/// Triangles of the six-vertex projective plane with one face removed.
pub const P2_FACETS: [[i64; 3]; 9] = [
    [1, 2, 6],
    [1, 3, 6],
    [2, 4, 6],
    [3, 5, 6],
    [2, 3, 4],
    [2, 3, 5],
    [1, 3, 4],
    [1, 4, 5],
    [1, 2, 5],
];

/// A copy of `P(d)` with its two distinguished sphere vertex lists.
///
/// In `H_{d-1}` the boundary of the b-simplex is `±2` times the boundary of
/// the a-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub complex: SimplicialComplex,
    pub d: usize,
    pub a_sphere: Vec<VertexId>,
    pub b_sphere: Vec<VertexId>,
}

/// `Z/2^{e_1} + ... + Z/2^{e_l}` with `e_1 >= ... >= e_l >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoGroup {
    exponents: Vec<u32>,
}

impl TwoGroup {
    /// Exponents in any order; they are sorted nonincreasing.
    pub fn new(mut exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Precondition("a 2-group needs at least one cyclic factor".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::Precondition("exponents must be positive".into()));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TwoGroup { exponents })
    }

    pub fn cyclic(e: u32) -> Result<Self> {
        Self::new(vec![e])
    }

    /// Direct sum of cyclic groups of the given orders, each a power of two
    /// greater than one.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Result<Self> {
        let exps = orders
            .iter()
            .map(|o| {
                power_of_two_exponent(o)
                    .filter(|&e| e > 0)
                    .ok_or_else(|| Error::NotTwoGroup(format!("cyclic factor of order {o}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `log_2 |G|`.
    pub fn log2_order(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn order(&self) -> BigInt {
        BigInt::one() << self.log2_order()
    }

    pub fn invariant_factors(&self) -> TorsionSignature {
        TorsionSignature::from_cyclic_orders(self.exponents.iter().map(|&e| BigInt::one() << e))
    }
}

impl fmt::Display for TwoGroup {
    /// `2^3+2^1` notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exponents.iter().map(|e| format!("2^{e}")).join("+"))
    }
}

impl FromStr for TwoGroup {
    type Err = Error;

    /// Accepts `2^a+2^b+...`; terms may also be plain integers, which must be
    /// powers of two.
    fn from_str(s: &str) -> Result<Self> {
        let orders = s
            .split('+')
            .map(|term| {
                let term = term.trim();
                if let Some(e) = term.strip_prefix("2^") {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Precondition(format!("bad exponent in {term:?}")))?;
                    Ok(BigInt::one() << e)
                } else {
                    term.parse::<BigInt>().map_err(|_| Error::Precondition(format!("bad group term {term:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cyclic_orders(&orders)
    }
}

/// `Some(e)` when `n = 2^e`.
pub fn power_of_two_exponent(n: &BigInt) -> Option<u32> {
    if *n <= BigInt::zero() {
        return None;
    }
    let tz = n.trailing_zeros()?;
    (n >> tz).is_one().then_some(tz as u32)
}

/// A telescope `X(d, t)` and its sphere vertex lists `S_0, ..., S_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Telescope {
    pub complex: SimplicialComplex,
    pub d: usize,
    pub t: usize,
    pub sphere_lists: Vec<Vec<VertexId>>,
}

impl Telescope {
    /// The same telescope with every label prefixed.
    pub fn prefixed(&self, prefix: &str) -> Result<Telescope> {
        Ok(Telescope {
            complex: self.complex.relabel(|v| v.prefixed(prefix))?,
            d: self.d,
            t: self.t,
            sphere_lists: self
                .sphere_lists
                .iter()
                .map(|s| s.iter().map(|v| v.prefixed(prefix)).collect())
                .collect(),
        })
    }
}

pub fn build_p2() -> Result<Block> {
    let complex = SimplicialComplex::from_facets(P2_FACETS)?;
    identify_roles(complex, 2, &ids(&[1, 2, 3]), &ids(&[4, 5, 6]))
}

fn ids(v: &[i64]) -> Vec<VertexId> {
    v.iter().map(|&i| VertexId::Int(i)).collect()
}

/// Decides which of two candidate spheres is the a-sphere.
///
/// Both vertex lists must have `d + 1` distinct vertices, be disjoint,
/// span a simplex absent from the complex and have its boundary present.
/// The a/b assignment is the unique one with `[∂b] = ±2[∂a]`, `[∂a] != 0`,
/// in `H_{d-1}`.
pub fn identify_roles(
    complex: SimplicialComplex,
    d: usize,
    first: &[VertexId],
    second: &[VertexId],
) -> Result<Block> {
    for s in [first, second] {
        if s.len() != d + 1 {
            return Err(Error::ConstructionIntegrity(format!("sphere list has {} vertices, expected {}", s.len(), d + 1)));
        }
        let face = Face::new(s.iter().cloned())?;
        if complex.contains_face(&face) {
            return Err(Error::ConstructionIntegrity(format!("simplex {face} is filled")));
        }
    }
    if first.iter().any(|v| second.contains(v)) {
        return Err(Error::ConstructionIntegrity("sphere lists intersect".into()));
    }
    let test = BoundaryTest::new(&complex, d - 1)?;
    let chain = |s: &[VertexId]| {
        complex
            .simplex_boundary_chain(s)
            .map_err(|e| Error::ConstructionIntegrity(format!("sphere boundary missing: {e}")))
    };
    let z1 = chain(first)?;
    let z2 = chain(second)?;
    // [b] = ±2[a] with [a] != 0.
    let doubles = |a: &[BigInt], b: &[BigInt]| -> Result<bool> {
        if test.is_boundary(a)? {
            return Ok(false);
        }
        for sign in [2, -2] {
            let diff: Vec<BigInt> = b.iter().zip(a).map(|(y, x)| y - x * sign).collect();
            if test.is_boundary(&diff)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let (a, b) = match (doubles(&z1, &z2)?, doubles(&z2, &z1)?) {
        (true, false) => (first, second),
        (false, true) => (second, first),
        _ => {
            return Err(Error::ConstructionIntegrity(
                "neither sphere is twice the other in homology".into(),
            ))
        }
    };
    Ok(Block { complex, d, a_sphere: a.to_vec(), b_sphere: b.to_vec() })
}

/// `P(d)` for `d >= 2`: suspension of `P(d-1)` with apexes `v'`, `u'` plus
/// the facets `[u', v_1..v_d]` and `[v', u_1..u_d]`, where `v` is the
/// a-sphere and `u` the b-sphere of `P(d-1)`.
///
/// Vertices are labelled `1..=2(d+1)`; `v' = 2d + 1`, `u' = 2d + 2`.
pub fn build_p(d: usize) -> Result<Block> {
    if d < 2 {
        return Err(Error::Precondition(format!("P(d) needs d >= 2, got {d}")));
    }
    let mut block = build_p2()?;
    for dim in 3..=d {
        let v_new = VertexId::Int(2 * dim as i64 + 1);
        let u_new = VertexId::Int(2 * dim as i64 + 2);
        let susp = block.complex.suspension_with_points(v_new.clone(), u_new.clone())?;
        let mut upper_a = vec![u_new.clone()];
        upper_a.extend(block.a_sphere.iter().cloned());
        let mut upper_b = vec![v_new.clone()];
        upper_b.extend(block.b_sphere.iter().cloned());
        let complex = susp.with_faces([upper_a, upper_b])?;

        let mut a = vec![v_new];
        a.extend(block.a_sphere.iter().cloned());
        let mut b = vec![u_new];
        b.extend(block.b_sphere.iter().cloned());
        let next = identify_roles(complex, dim, &a, &b)?;
        if next.a_sphere != a {
            return Err(Error::ConstructionIntegrity(format!(
                "suspension bookkeeping swapped the sphere roles in P({dim})"
            )));
        }
        block = next;
    }
    Ok(block)
}

/// Number of top faces of `P(d)` from the recursion `f(2) = 9`, `f(d) = 2 f(d-1) + 2`.
pub fn p_top_faces(d: usize) -> usize {
    (3..=d).fold(9, |f, _| 2 * f + 2)
}

/// `X(d, t)`: `t` copies of `P(d)` glued b-sphere to next a-sphere in index
/// order, with the last b-sphere filled.
pub fn build_telescope(d: usize, t: usize) -> Result<Telescope> {
    build_telescope_with(d, t, |_| (0..=d).collect())
}

/// As [`build_telescope`], gluing the j-th vertex of the b-sphere of copy `i`
/// to vertex `glue(i)[j]` of the a-sphere of copy `i + 1`.
pub fn build_telescope_with<F>(d: usize, t: usize, glue: F) -> Result<Telescope>
where
    F: Fn(usize) -> Vec<usize>,
{
    if t == 0 {
        return Err(Error::Precondition("telescope needs t >= 1".into()));
    }
    let block = build_p(d)?;
    let width = t.to_string().len();
    let prefix = |i: usize| format!("p{i:0width$}.");

    let mut facets = Vec::new();
    for i in 0..t {
        for f in block.complex.facets() {
            facets.push(Face::new(f.vertices().iter().map(|v| v.prefixed(&prefix(i))))?);
        }
    }
    let copies = SimplicialComplex::from_faces(&facets);

    let sphere = |s: &[VertexId], i: usize| -> Vec<VertexId> { s.iter().map(|v| v.prefixed(&prefix(i))).collect() };
    let mut pairs = Vec::new();
    let mut sphere_lists = vec![sphere(&block.a_sphere, 0)];
    for i in 0..t - 1 {
        let b = sphere(&block.b_sphere, i);
        let a = sphere(&block.a_sphere, i + 1);
        let perm = glue(i);
        if perm.iter().copied().sorted().collect::<Vec<_>>() != (0..=d).collect::<Vec<_>>() {
            return Err(Error::Gluing(format!("gluing map {perm:?} is not a bijection")));
        }
        let mut survivors = Vec::with_capacity(d + 1);
        for (j, &k) in perm.iter().enumerate() {
            survivors.push(b[j].clone().min(a[k].clone()));
            pairs.push((b[j].clone(), a[k].clone()));
        }
        sphere_lists.push(survivors);
    }
    let last = sphere(&block.b_sphere, t - 1);
    sphere_lists.push(last.clone());

    let complex = copies.identify_vertices(&pairs)?.with_faces([last])?;
    Ok(Telescope { complex, d, t, sphere_lists })
}

/// A complex realising a 2-group together with its component telescopes,
/// labelled as they appear in the union.
#[derive(Clone, Debug)]
pub struct GroupComplex {
    pub complex: SimplicialComplex,
    pub d: usize,
    pub group: TwoGroup,
    pub telescopes: Vec<Telescope>,
}

pub fn realize_group(d: usize, group: &TwoGroup) -> Result<GroupComplex> {
    let telescopes = group
        .exponents()
        .iter()
        .enumerate()
        .map(|(i, &e)| build_telescope(d, e as usize)?.prefixed(&SimplicialComplex::union_prefix(i)))
        .collect::<Result<Vec<_>>>()?;
    let facets: Vec<Face> = telescopes.iter().flat_map(|t| t.complex.facets()).collect();
    let complex = SimplicialComplex::from_faces(&facets);
    Ok(GroupComplex { complex, d, group: group.clone(), telescopes })
}

/// Disjoint union of `X(d, e_i)` over the exponents of `group`.
pub fn build_for_group(d: usize, group: &TwoGroup) -> Result<SimplicialComplex> {
    Ok(realize_group(d, group)?.complex)
}

/// Size and degree bounds of an initial construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub d: usize,
    pub vertices: usize,
    /// `sum (d + 1)(e_i + 1)`
    pub vertex_formula: usize,
    /// `2 (d + 1) log_2 |G|`
    pub vertex_bound: usize,
    /// `Δ_{0,d-1}(X)`
    pub degree: usize,
    /// Twice the number of (d-1)-faces of `P(d)`.
    pub degree_bound: usize,
}

impl BoundsReport {
    pub fn vertex_formula_holds(&self) -> bool {
        self.vertices == self.vertex_formula
    }

    pub fn vertex_bound_holds(&self) -> bool {
        self.vertices <= self.vertex_bound
    }

    pub fn degree_bound_holds(&self) -> bool {
        self.degree <= self.degree_bound
    }

    pub fn passed(&self) -> bool {
        self.vertex_formula_holds() && self.vertex_bound_holds() && self.degree_bound_holds()
    }
}

pub fn check_bounds(x: &SimplicialComplex, d: usize, group: &TwoGroup) -> Result<BoundsReport> {
    let p = build_p(d)?;
    Ok(BoundsReport {
        d,
        vertices: x.num_vertices(),
        vertex_formula: group.exponents().iter().map(|&e| (d + 1) * (e as usize + 1)).sum(),
        vertex_bound: 2 * (d + 1) * group.log2_order() as usize,
        degree: x.delta_degree(0, d - 1),
        degree_bound: 2 * p.complex.num_faces(d - 1),
    })
}
