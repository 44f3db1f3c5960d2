//! Faces, simplicial complexes and their structural operations.
//!
//! A [`SimplicialComplex`] keeps its vertex labels in a sorted table and
//! stores every face as a strictly increasing list of indices into that
//! table, grouped by dimension and sorted lexicographically. Because the
//! index order agrees with the label order, the stored form is canonical:
//! two complexes with the same faces compare equal, and the orientation of a
//! face is always the sorted order of its vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A vertex label. Integers order numerically and sort before names; names
/// order lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    Int(i64),
    Name(String),
}

impl VertexId {
    /// The label `prefix` followed by this label's text.
    pub fn prefixed(&self, prefix: &str) -> VertexId {
        VertexId::Name(format!("{prefix}{self}"))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Name(s) => f.write_str(s),
        }
    }
}

impl From<i64> for VertexId {
    fn from(i: i64) -> Self {
        VertexId::Int(i)
    }
}

impl From<i32> for VertexId {
    fn from(i: i32) -> Self {
        VertexId::Int(i as i64)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId::Int(i as i64)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        s.parse().unwrap_or_else(|_| VertexId::Name(s.to_string()))
    }
}

impl From<&VertexId> for VertexId {
    fn from(v: &VertexId) -> Self {
        v.clone()
    }
}

impl FromStr for VertexId {
    type Err = Error;

    /// Tokens that parse as `i64` become integer labels; anything else
    /// becomes a name. Names may not be empty, contain whitespace or start
    /// with `#`.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(i) = s.parse::<i64>() {
            return Ok(VertexId::Int(i));
        }
        if s.is_empty() || s.starts_with('#') || s.chars().any(char::is_whitespace) {
            return Err(Error::MalformedFace(format!("invalid vertex label {s:?}")));
        }
        Ok(VertexId::Name(s.to_string()))
    }
}

/// A face given by its vertex labels, stored sorted and without repeats.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<VertexId>);

impl Face {
    pub fn new<I, V>(vertices: I) -> Result<Face>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        if vs.is_empty() {
            return Err(Error::MalformedFace("face has no vertices".into()));
        }
        vs.sort();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedFace(format!("vertex {} repeated", w[0])));
        }
        Ok(Face(vs))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// Face counts `f_0, f_1, ..., f_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn top(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A downward-closed family of faces over a sorted vertex table.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    vertices: Vec<VertexId>,
    /// `faces[k]` holds the k-faces as sorted index lists, sorted lexicographically.
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of a facet list.
    ///
    /// Every facet must be nonempty and free of repeated vertices.
    pub fn from_facets<I, F, V>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let facets = facets.into_iter().map(Face::new).collect::<Result<Vec<_>>>()?;
        if facets.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        Ok(Self::from_faces(&facets))
    }

    /// Downward closure of already-validated faces. An empty slice gives the
    /// empty complex.
    pub fn from_faces(faces: &[Face]) -> Self {
        let vertices: Vec<VertexId> = faces
            .iter()
            .flat_map(|f| f.vertices().iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let facets: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .map(|v| vertices.binary_search(v).expect("vertex collected above"))
                    .collect()
            })
            .collect();
        Self::closure(vertices, facets)
    }

    /// Closure of index facets over a sorted, duplicate-free vertex table.
    /// Each facet must be strictly increasing.
    fn closure(vertices: Vec<VertexId>, facets: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
        for f in facets {
            let k = f.len() - 1;
            if by_dim.len() <= k {
                by_dim.resize_with(k + 1, BTreeSet::new);
            }
            by_dim[k].insert(f);
        }
        for k in (1..by_dim.len()).rev() {
            let mut lower = std::mem::take(&mut by_dim[k - 1]);
            for f in &by_dim[k] {
                for j in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(j);
                    lower.insert(sub);
                }
            }
            by_dim[k - 1] = lower;
        }
        for i in 0..vertices.len() {
            by_dim[0].insert(vec![i]);
        }
        if vertices.is_empty() {
            return Self::empty();
        }
        let faces = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        SimplicialComplex { vertices, faces }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Maximal face dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn vertex_index(&self, v: &VertexId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn vertex(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    /// The k-faces as sorted vertex-index lists. Empty when `k` exceeds the dimension.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_faces(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Position of an index face within `simplices(k)`.
    pub fn face_index(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.simplices(k).binary_search_by(|f| f.as_slice().cmp(simplex)).ok()
    }

    /// Converts a labelled face to index form if all its vertices exist.
    pub fn indices_of(&self, face: &Face) -> Option<Vec<usize>> {
        face.vertices().iter().map(|v| self.vertex_index(v)).collect()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.indices_of(face).is_some_and(|s| self.face_index(&s).is_some())
    }

    pub fn face_labels(&self, simplex: &[usize]) -> Face {
        Face(simplex.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    /// The i-faces in canonical order; empty when `i` is out of range.
    pub fn skeleton(&self, i: usize) -> Vec<Face> {
        self.simplices(i).iter().map(|s| self.face_labels(s)).collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(Vec::len).collect())
    }

    /// Maximal faces as index lists, ordered lexicographically.
    pub fn facet_indices(&self) -> Vec<Vec<usize>> {
        let mut covered: Vec<Vec<bool>> = self.faces.iter().map(|f| vec![false; f.len()]).collect();
        for k in 1..self.faces.len() {
            for f in &self.faces[k] {
                for j in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(j);
                    let idx = self.face_index(&sub).expect("complex is downward closed");
                    covered[k - 1][idx] = true;
                }
            }
        }
        let mut out: Vec<Vec<usize>> = self
            .faces
            .iter()
            .zip(&covered)
            .flat_map(|(fs, cov)| fs.iter().zip(cov).filter(|(_, c)| !**c).map(|(f, _)| f.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn facets(&self) -> Vec<Face> {
        self.facet_indices().iter().map(|s| self.face_labels(s)).collect()
    }

    /// `max` over i-faces of the number of j-faces containing it; 0 when the
    /// indices are out of range.
    pub fn delta_degree(&self, i: usize, j: usize) -> usize {
        if i > j || self.dim().is_none_or(|d| j > d) {
            return 0;
        }
        let mut counts = vec![0usize; self.num_faces(i)];
        for f in self.simplices(j) {
            for sub in f.iter().copied().combinations(i + 1) {
                let idx = self.face_index(&sub).expect("complex is downward closed");
                counts[idx] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    /// Checks that every face is strictly increasing, every vertex is a
    /// 0-face and every codimension-one subface of a face is present.
    pub fn is_downward_closed(&self) -> bool {
        if self.faces.is_empty() {
            return self.vertices.is_empty();
        }
        if self.faces[0].len() != self.vertices.len() {
            return false;
        }
        for (k, fs) in self.faces.iter().enumerate() {
            for f in fs {
                if f.len() != k + 1 || f.windows(2).any(|w| w[0] >= w[1]) {
                    return false;
                }
                if k > 0 {
                    for j in 0..f.len() {
                        let mut sub = f.clone();
                        sub.remove(j);
                        if self.face_index(&sub).is_none() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Applies an injective relabelling.
    pub fn relabel<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&VertexId) -> VertexId,
    {
        let new: Vec<VertexId> = self.vertices.iter().map(&mut f).collect();
        let mut sorted = new.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::LabelCollision(format!("relabelling sends two vertices to {}", w[0])));
        }
        let pos: Vec<usize> = new.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
        let faces = self
            .faces
            .iter()
            .map(|fs| {
                let mut out: Vec<Vec<usize>> = fs
                    .iter()
                    .map(|s| {
                        let mut t: Vec<usize> = s.iter().map(|&i| pos[i]).collect();
                        t.sort_unstable();
                        t
                    })
                    .collect();
                out.sort();
                out
            })
            .collect();
        Ok(SimplicialComplex { vertices: sorted, faces })
    }

    /// Labels of the i-th summand of a disjoint union are prefixed with `"{i}:"`.
    pub fn union_prefix(i: usize) -> String {
        format!("{i}:")
    }

    /// Disjoint union; the left summand's labels are prefixed `0:`, the right's `1:`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::disjoint_union_all(&[self, other])
    }

    /// Disjoint union of any number of complexes with the i-th summand's
    /// labels prefixed by [`SimplicialComplex::union_prefix`].
    pub fn disjoint_union_all(parts: &[&SimplicialComplex]) -> SimplicialComplex {
        let mut facets = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            let prefix = Self::union_prefix(i);
            for s in part.facet_indices() {
                let labels = s.iter().map(|&v| part.vertices[v].prefixed(&prefix));
                facets.push(Face::new(labels).expect("prefixing preserves distinctness"));
            }
        }
        Self::from_faces(&facets)
    }

    /// Adds the given faces (and their closures) to the complex.
    pub fn with_faces<I, F, V>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut facets = self.facets();
        for f in extra {
            facets.push(Face::new(f)?);
        }
        Ok(Self::from_faces(&facets))
    }

    /// Quotient identifying `pairs[i].0` with `pairs[i].1` for every `i`.
    ///
    /// The two sides of the pairing must be disjoint lists of existing,
    /// pairwise distinct vertices. Each merged vertex keeps the smaller of
    /// its two labels. Faces that land on the same image merge; a face whose
    /// image would repeat a vertex is a gluing error.
    pub fn identify_vertices(&self, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (x, y) in pairs {
            for v in [x, y] {
                if self.vertex_index(v).is_none() {
                    return Err(Error::Gluing(format!("vertex {v} is not in the complex")));
                }
                if !seen.insert(v) {
                    return Err(Error::Gluing(format!("vertex {v} appears twice in the pairing")));
                }
            }
        }
        let mut image: BTreeMap<&VertexId, &VertexId> = BTreeMap::new();
        for (x, y) in pairs {
            let keep = x.min(y);
            image.insert(x, keep);
            image.insert(y, keep);
        }
        let mut facets = Vec::new();
        for s in self.facet_indices() {
            let mapped: Vec<VertexId> = s
                .iter()
                .map(|&i| {
                    let v = &self.vertices[i];
                    (*image.get(v).unwrap_or(&v)).clone()
                })
                .collect();
            let face = Face::new(mapped).map_err(|_| {
                Error::Gluing(format!("face {} collapses under the identification", self.face_labels(&s)))
            })?;
            facets.push(face);
        }
        Ok(Self::from_faces(&facets))
    }

    /// Suspension with apexes `v_new` and `u_new`: every face gets coned off
    /// to each apex.
    pub fn suspension_with_points(&self, v_new: VertexId, u_new: VertexId) -> Result<Self> {
        for v in [&v_new, &u_new] {
            if self.vertex_index(v).is_some() {
                return Err(Error::LabelCollision(format!("suspension point {v} already used")));
            }
        }
        if v_new == u_new {
            return Err(Error::LabelCollision(format!("suspension points coincide ({v_new})")));
        }
        let mut facets = Vec::new();
        for f in self.facets() {
            for apex in [&v_new, &u_new] {
                let mut vs = f.vertices().to_vec();
                vs.push(apex.clone());
                facets.push(Face::new(vs)?);
            }
        }
        if facets.is_empty() {
            facets.push(Face::new([v_new])?);
            facets.push(Face::new([u_new])?);
        }
        Ok(Self::from_faces(&facets))
    }

    /// Boundary operator from k-chains to (k-1)-chains, `1 <= k <= dim`.
    ///
    /// Column `j` is the boundary of the j-th k-face: deleting the vertex in
    /// sorted position `i` contributes `(-1)^i`.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntegerMatrix> {
        if k == 0 || self.dim().is_none_or(|d| k > d) {
            return Err(Error::OutOfRange(format!(
                "boundary matrix in degree {k} for a complex of dimension {:?}",
                self.dim()
            )));
        }
        let columns = self
            .simplices(k)
            .iter()
            .map(|f| {
                let mut col: Vec<(usize, BigInt)> = (0..f.len())
                    .map(|i| {
                        let mut sub = f.clone();
                        sub.remove(i);
                        let row = self.face_index(&sub).expect("complex is downward closed");
                        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        (row, sign)
                    })
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        Ok(IntegerMatrix { rows: self.num_faces(k - 1), cols: self.num_faces(k), columns })
    }

    /// Boundary of the simplex on `vertices` as a chain on the (|vertices|-2)-faces.
    ///
    /// Every codimension-one face of that simplex must be present.
    pub fn simplex_boundary_chain(&self, vertices: &[VertexId]) -> Result<Vec<BigInt>> {
        let face = Face::new(vertices.iter().cloned())?;
        let idx = self
            .indices_of(&face)
            .ok_or_else(|| Error::Precondition(format!("{face} uses vertices outside the complex")))?;
        if idx.len() < 2 {
            return Err(Error::Precondition("boundary of a vertex is not a chain".into()));
        }
        let k = idx.len() - 2;
        let mut chain = vec![BigInt::zero(); self.num_faces(k)];
        for i in 0..idx.len() {
            let mut sub = idx.clone();
            sub.remove(i);
            let row = self
                .face_index(&sub)
                .ok_or_else(|| Error::Precondition(format!("{} is not a face", self.face_labels(&sub))))?;
            chain[row] = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        }
        Ok(chain)
    }

    /// Edges as index pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.simplices(1).iter().map(|e| (e[0], e[1]))
    }
}

/// Sparse integer matrix in column-major form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    /// Nonzero entries of each column, sorted by row.
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// From a row-major dense array. All rows must have the same length.
    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, x) in row.iter().enumerate() {
                let x: BigInt = x.clone().into();
                if !x.is_zero() {
                    m.columns[c].push((r, x));
                }
            }
        }
        m
    }

    /// Builds a matrix from explicit `(row, col, value)` triples; repeated
    /// positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, x) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            *acc[c].entry(r).or_default() += x;
        }
        let columns = acc
            .into_iter()
            .map(|col| col.into_iter().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        IntegerMatrix { rows, cols, columns }
    }

    /// This matrix with `v` appended as a last column.
    pub fn with_column(&self, v: &[BigInt]) -> IntegerMatrix {
        assert_eq!(v.len(), self.rows, "column length");
        let mut columns = self.columns.clone();
        columns.push(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(r, x)| (r, x.clone())).collect());
        IntegerMatrix { rows: self.rows, cols: self.cols + 1, columns }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col {
                out[*r][c] = x.clone();
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, y) in rcol {
                    for (r, x) in &self.columns[*k] {
                        *acc.entry(*r).or_default() += x * y;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        IntegerMatrix { rows: self.rows, cols: rhs.cols, columns }
    }

    /// `self * v` for a dense vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, x) in col {
                out[*r] += x * &v[c];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> SimplicialComplex {
        SimplicialComplex::from_facets([
            [1, 2, 6],
            [1, 3, 6],
            [2, 4, 6],
            [3, 5, 6],
            [2, 3, 4],
            [2, 3, 5],
            [1, 3, 4],
            [1, 4, 5],
            [1, 2, 5],
        ])
        .unwrap()
    }

    fn boundary_of_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets([[1, 2], [1, 3], [2, 3]]).unwrap()
    }

    #[test]
    fn closure_of_one_triangle() {
        let x = SimplicialComplex::from_facets([[1, 2, 3]]).unwrap();
        assert_eq!(x.f_vector(), FVector(vec![3, 3, 1]));
        assert_eq!(x.dim(), Some(2));
        assert!(x.contains_face(&Face::new([1, 3]).unwrap()));
        assert_eq!(x.facets(), vec![Face::new([1, 2, 3]).unwrap()]);
    }

    #[test]
    fn p2_closure() {
        let x = p2();
        assert_eq!(x.f_vector(), FVector(vec![6, 15, 9]));
        assert_eq!(x.skeleton(1).len(), 15);
        assert!(x.is_downward_closed());
    }

    #[test]
    fn two_points() {
        let x = SimplicialComplex::from_facets([[1], [2]]).unwrap();
        assert_eq!(x.dim(), Some(0));
        assert_eq!(x.f_vector(), FVector(vec![2]));
    }

    #[test]
    fn from_facets_errors() {
        assert_eq!(
            SimplicialComplex::from_facets([[1, 1, 2]]),
            Err(Error::MalformedFace("vertex 1 repeated".into()))
        );
        assert_eq!(SimplicialComplex::from_facets(Vec::<Vec<i64>>::new()), Err(Error::EmptyFacetList));
    }

    #[test]
    fn skeleton_examples() {
        let s = boundary_of_triangle().skeleton(1);
        let want: Vec<Face> = [[1, 2], [1, 3], [2, 3]].into_iter().map(|f| Face::new(f).unwrap()).collect();
        assert_eq!(s, want);
        let v = SimplicialComplex::from_facets([["v"]]).unwrap();
        assert_eq!(v.skeleton(0), vec![Face::new(["v"]).unwrap()]);
        assert!(v.skeleton(3).is_empty());
    }

    #[test]
    fn delta_degree_examples() {
        assert_eq!(boundary_of_triangle().delta_degree(0, 1), 2);
        assert_eq!(p2().delta_degree(0, 2), 5);
        assert_eq!(p2().delta_degree(0, 1), 5);
        assert_eq!(p2().delta_degree(1, 2), 2);
        assert_eq!(p2().delta_degree(0, 3), 0);
    }

    #[test]
    fn f_vector_of_tetrahedron_boundary() {
        let x = SimplicialComplex::from_facets([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        assert_eq!(x.f_vector(), FVector(vec![4, 6, 4]));
    }

    #[test]
    fn disjoint_union_adds() {
        let u = p2().disjoint_union(&p2());
        assert_eq!(u.f_vector(), FVector(vec![12, 30, 18]));
        let e = p2().disjoint_union(&SimplicialComplex::empty());
        assert_eq!(e.f_vector(), p2().f_vector());
        assert!(e.vertices().iter().all(|v| v.to_string().starts_with("0:")));
    }

    #[test]
    fn identify_two_edges() {
        let x = SimplicialComplex::from_facets([["a", "b"], ["c", "d"]]).unwrap();
        let pairs = vec![("a".into(), "c".into()), ("b".into(), "d".into())];
        let y = x.identify_vertices(&pairs).unwrap();
        assert_eq!(y.f_vector(), FVector(vec![2, 1]));
        assert_eq!(y.vertices(), &[VertexId::from("a"), VertexId::from("b")]);
    }

    #[test]
    fn identify_glues_two_blocks() {
        let x = p2().disjoint_union(&p2());
        let pairs: Vec<(VertexId, VertexId)> =
            (4..=6).map(|i| (format!("0:{i}").as_str().into(), format!("1:{}", i - 3).as_str().into())).collect();
        let y = x.identify_vertices(&pairs).unwrap();
        assert_eq!(y.num_vertices(), 9);
        assert_eq!(y.num_faces(2), 18);
        assert!(y.is_downward_closed());
    }

    #[test]
    fn identify_errors() {
        let x = SimplicialComplex::from_facets([["a", "b"], ["c", "d"]]).unwrap();
        let overlap = vec![("a".into(), "c".into()), ("c".into(), "d".into())];
        assert!(matches!(x.identify_vertices(&overlap), Err(Error::Gluing(_))));
        let collapse = vec![("a".into(), "b".into())];
        assert!(matches!(x.identify_vertices(&collapse), Err(Error::Gluing(_))));
        let missing = vec![("a".into(), "z".into())];
        assert!(matches!(x.identify_vertices(&missing), Err(Error::Gluing(_))));
    }

    #[test]
    fn suspension_examples() {
        let pts = SimplicialComplex::from_facets([[1], [2]]).unwrap();
        let s = pts.suspension_with_points(3.into(), 4.into()).unwrap();
        assert_eq!(s.f_vector(), FVector(vec![4, 4]));

        let s2 = boundary_of_triangle().suspension_with_points(4.into(), 5.into()).unwrap();
        assert_eq!(s2.f_vector(), FVector(vec![5, 9, 6]));
        assert_eq!(s2.num_faces(2), 2 * boundary_of_triangle().num_faces(1));

        assert!(matches!(pts.suspension_with_points(1.into(), 9.into()), Err(Error::LabelCollision(_))));
    }

    #[test]
    fn boundary_matrix_examples() {
        let e = SimplicialComplex::from_facets([[1, 2]]).unwrap();
        let d1 = e.boundary_matrix(1).unwrap();
        assert_eq!(d1.to_dense(), vec![vec![BigInt::from(-1)], vec![BigInt::from(1)]]);

        let t = SimplicialComplex::from_facets([[1, 2, 3]]).unwrap();
        let d2 = t.boundary_matrix(2).unwrap();
        let col: Vec<i64> = d2.to_dense().iter().map(|r| r[0].clone().try_into().unwrap()).collect();
        assert_eq!(col, vec![1, -1, 1]);

        let x = p2();
        assert!(x.boundary_matrix(1).unwrap().mul(&x.boundary_matrix(2).unwrap()).is_zero());
        assert!(matches!(x.boundary_matrix(0), Err(Error::OutOfRange(_))));
        assert!(matches!(x.boundary_matrix(3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn vertex_order_puts_integers_first() {
        let mut vs: Vec<VertexId> = vec!["b".into(), 10.into(), 2.into(), "a".into()];
        vs.sort();
        assert_eq!(vs, vec![2.into(), 10.into(), "a".into(), "b".into()]);
        assert!("#x".parse::<VertexId>().is_err());
    }
}
