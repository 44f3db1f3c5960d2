//! Vertex colorings, face patterns and the pattern-complex quotient.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::construction::Telescope;
use crate::error::{Error, Result};
use crate::homology::{torsion_in_dimension, TorsionSignature};

/// A color: a tuple of components. Base colorings use one component;
/// a product coloring `(c, c2)` appends the second coloring's value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(Vec<u32>);

impl Color {
    pub fn base(c: u32) -> Self {
        Color(vec![c])
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn with(&self, extra: u32) -> Self {
        let mut v = self.0.clone();
        v.push(extra);
        Color(v)
    }

    /// Vertex label of this color in a pattern complex.
    pub fn to_vertex(&self) -> VertexId {
        match self.0.as_slice() {
            [c] => VertexId::Int(*c as i64),
            _ => VertexId::Name(self.to_string()),
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [c] => write!(f, "{c}"),
            cs => write!(f, "({})", cs.iter().join(",")),
        }
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        let comps = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Precondition(format!("invalid color {s:?}")))?;
        Ok(Color(comps))
    }
}

/// Total vertex-to-color map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    assignment: BTreeMap<VertexId, Color>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: VertexId, c: Color) {
        self.assignment.insert(v, c);
    }

    pub fn get(&self, v: &VertexId) -> Option<&Color> {
        self.assignment.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &Color)> {
        self.assignment.iter()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn palette(&self) -> BTreeSet<Color> {
        self.assignment.values().cloned().collect()
    }

    /// Gives every vertex the color `(c(v), second(v))`.
    pub fn product<F>(&self, mut second: F) -> Coloring
    where
        F: FnMut(&VertexId) -> u32,
    {
        Coloring {
            assignment: self.assignment.iter().map(|(v, c)| (v.clone(), c.with(second(v)))).collect(),
        }
    }

    /// Colors of the complex's vertices, indexed like `x.vertices()`.
    pub fn per_vertex<'a>(&'a self, x: &SimplicialComplex) -> Result<Vec<&'a Color>> {
        x.vertices()
            .iter()
            .map(|v| self.get(v).ok_or_else(|| Error::PartialColoring(v.to_string())))
            .collect()
    }
}

impl FromIterator<(VertexId, Color)> for Coloring {
    fn from_iter<T: IntoIterator<Item = (VertexId, Color)>>(iter: T) -> Self {
        Coloring { assignment: iter.into_iter().collect() }
    }
}

/// Multiset of colors on a face, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(Vec<Color>);

impl Pattern {
    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn is_set(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

/// The first monochromatic edge, if any.
fn monochromatic_edge(x: &SimplicialComplex, colors: &[&Color]) -> Option<(usize, usize)> {
    x.edges().find(|&(a, b)| colors[a] == colors[b])
}

/// Whether every edge of `x` is bichromatic. Errors when `c` misses a vertex.
pub fn is_proper(x: &SimplicialComplex, c: &Coloring) -> Result<bool> {
    let colors = c.per_vertex(x)?;
    Ok(monochromatic_edge(x, &colors).is_none())
}

pub(crate) fn require_proper(x: &SimplicialComplex, c: &Coloring) -> Result<()> {
    let colors = c.per_vertex(x)?;
    match monochromatic_edge(x, &colors) {
        Some((a, b)) => Err(Error::ImproperColoring(x.face_labels(&[a, b]).to_string())),
        None => Ok(()),
    }
}

pub fn pattern_of(face: &Face, c: &Coloring) -> Result<Pattern> {
    let mut colors = face
        .vertices()
        .iter()
        .map(|v| c.get(v).cloned().ok_or_else(|| Error::PartialColoring(v.to_string())))
        .collect::<Result<Vec<_>>>()?;
    colors.sort();
    Ok(Pattern(colors))
}

fn pattern_of_simplex(simplex: &[usize], colors: &[&Color]) -> Pattern {
    let mut p: Vec<Color> = simplex.iter().map(|&i| colors[i].clone()).collect();
    p.sort();
    Pattern(p)
}

/// Block coloring of a telescope: the vertices of `S_i` get distinct colors
/// from palette block `i mod 3`, block `b` being `b(d+1)+1 ..= b(d+1)+d+1`.
pub fn block_coloring(t: &Telescope) -> Coloring {
    let width = t.d as u32 + 1;
    t.sphere_lists
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            let block = (i % 3) as u32;
            s.iter().enumerate().map(move |(j, v)| (v.clone(), Color::base(block * width + j as u32 + 1)))
        })
        .collect()
}

/// Block coloring of every telescope of a group realisation, over one shared palette.
pub fn block_coloring_all<'a>(telescopes: impl IntoIterator<Item = &'a Telescope>) -> Coloring {
    telescopes.into_iter().flat_map(|t| block_coloring(t).assignment).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistinctMode {
    /// Only pairs of faces sharing a vertex must differ.
    IntersectingOnly,
    AllPairs,
}

/// The k-faces grouped by pattern, each group in canonical face order.
pub fn pattern_classes(x: &SimplicialComplex, c: &Coloring, k: usize) -> Result<Vec<Vec<usize>>> {
    let colors = c.per_vertex(x)?;
    let mut classes: HashMap<Pattern, Vec<usize>> = HashMap::new();
    for (i, f) in x.simplices(k).iter().enumerate() {
        classes.entry(pattern_of_simplex(f, &colors)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    Ok(out)
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

pub(crate) fn faces_intersect(a: &[usize], b: &[usize]) -> bool {
    intersects(a, b)
}

/// Whether distinct k-faces (sharing a vertex, in intersecting mode) have
/// distinct patterns.
pub fn patterns_distinct(x: &SimplicialComplex, c: &Coloring, k: usize, mode: DistinctMode) -> Result<bool> {
    let faces = x.simplices(k);
    for class in pattern_classes(x, c, k)? {
        if class.len() < 2 {
            continue;
        }
        match mode {
            DistinctMode::AllPairs => return Ok(false),
            DistinctMode::IntersectingOnly => {
                let clash = class
                    .iter()
                    .tuple_combinations()
                    .any(|(&a, &b)| intersects(&faces[a], &faces[b]));
                if clash {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The complex on the colors of `c` whose faces are the patterns of faces of `x`.
pub fn pattern_complex(x: &SimplicialComplex, c: &Coloring) -> Result<SimplicialComplex> {
    require_proper(x, c)?;
    let colors = c.per_vertex(x)?;
    let facets: Vec<Face> = x
        .facet_indices()
        .iter()
        .map(|f| Face::new(f.iter().map(|&i| colors[i].to_vertex())))
        .collect::<Result<_>>()?;
    Ok(SimplicialComplex::from_faces(&facets))
}

/// Torsion of `H_{d-1}` for `x` and for its pattern complex under `c`.
///
/// Requires `c` proper with pairwise distinct patterns on the (d-1)-faces.
pub fn quotient_torsion(x: &SimplicialComplex, c: &Coloring) -> Result<(TorsionSignature, TorsionSignature)> {
    let d = x
        .dim()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Precondition("complex must have dimension at least 1".into()))?;
    require_proper(x, c).map_err(|e| Error::Precondition(e.to_string()))?;
    if !patterns_distinct(x, c, d - 1, DistinctMode::AllPairs)? {
        return Err(Error::Precondition(format!("two {}-faces share a pattern", d - 1)));
    }
    let q = pattern_complex(x, c)?;
    Ok((torsion_in_dimension(x, d - 1), torsion_in_dimension(&q, d - 1)))
}

/// Whether `H_{d-1}` torsion of `x` and of its pattern complex agree.
pub fn verify_quotient_torsion(x: &SimplicialComplex, c: &Coloring) -> Result<bool> {
    let (a, b) = quotient_torsion(x, c)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_telescope;

    fn injective(x: &SimplicialComplex) -> Coloring {
        x.vertices().iter().enumerate().map(|(i, v)| (v.clone(), Color::base(i as u32))).collect()
    }

    fn edge() -> SimplicialComplex {
        SimplicialComplex::from_facets([[1, 2]]).unwrap()
    }

    #[test]
    fn properness() {
        let t = build_telescope(2, 2).unwrap();
        assert!(is_proper(&t.complex, &injective(&t.complex)).unwrap());
        let constant: Coloring = t.complex.vertices().iter().map(|v| (v.clone(), Color::base(0))).collect();
        assert!(!is_proper(&t.complex, &constant).unwrap());
        assert!(is_proper(&t.complex, &block_coloring(&t)).unwrap());
        let partial: Coloring = [(VertexId::Int(1), Color::base(1))].into_iter().collect();
        assert_eq!(is_proper(&edge(), &partial), Err(Error::PartialColoring("2".into())));
    }

    #[test]
    fn patterns() {
        let c: Coloring = [(1.into(), Color::base(1)), (2.into(), Color::base(2)), (3.into(), Color::base(1))]
            .into_iter()
            .collect();
        let p = pattern_of(&Face::new([1, 2]).unwrap(), &c).unwrap();
        assert_eq!(p.colors(), &[Color::base(1), Color::base(2)]);
        assert!(p.is_set());
        let q = pattern_of(&Face::new([1, 2, 3]).unwrap(), &c).unwrap();
        assert_eq!(q.colors(), &[Color::base(1), Color::base(1), Color::base(2)]);
        assert!(!q.is_set());
    }

    #[test]
    fn block_coloring_palettes() {
        let t = build_telescope(2, 2).unwrap();
        let c = block_coloring(&t);
        assert_eq!(c.palette().len(), 9);

        let t = build_telescope(2, 1).unwrap();
        let c = block_coloring(&t);
        assert_eq!(c.len(), 6);
        assert!(c.palette().iter().all(|k| k.components()[0] <= 6));

        let t = build_telescope(3, 5).unwrap();
        let c = block_coloring(&t);
        assert!(c.palette().len() <= 12);
        assert!(patterns_distinct(&t.complex, &c, 2, DistinctMode::IntersectingOnly).unwrap());
    }

    #[test]
    fn distinctness_modes() {
        let t = build_telescope(2, 3).unwrap();
        let inj = injective(&t.complex);
        for mode in [DistinctMode::AllPairs, DistinctMode::IntersectingOnly] {
            assert!(patterns_distinct(&t.complex, &inj, 1, mode).unwrap());
        }
        let c = block_coloring(&t);
        assert!(patterns_distinct(&t.complex, &c, 1, DistinctMode::IntersectingOnly).unwrap());

        let two = SimplicialComplex::from_facets([["a", "b", "c"], ["x", "y", "z"]]).unwrap();
        let same: Coloring = ["a", "b", "c", "x", "y", "z"]
            .iter()
            .enumerate()
            .map(|(i, v)| (VertexId::from(*v), Color::base(i as u32 % 3)))
            .collect();
        assert!(!patterns_distinct(&two, &same, 1, DistinctMode::AllPairs).unwrap());
        assert!(patterns_distinct(&two, &same, 1, DistinctMode::IntersectingOnly).unwrap());
    }

    #[test]
    fn pattern_complex_examples() {
        let x = build_telescope(2, 2).unwrap().complex;
        let q = pattern_complex(&x, &injective(&x)).unwrap();
        assert_eq!(q.f_vector(), x.f_vector());

        let c: Coloring = [(1.into(), Color::base(7)), (2.into(), Color::base(9))].into_iter().collect();
        let q = pattern_complex(&edge(), &c).unwrap();
        assert_eq!(q.facets(), vec![Face::new([7, 9]).unwrap()]);

        let bad: Coloring = [(1.into(), Color::base(7)), (2.into(), Color::base(7))].into_iter().collect();
        assert!(matches!(pattern_complex(&edge(), &bad), Err(Error::ImproperColoring(_))));
    }

    #[test]
    fn quotient_verification() {
        let x = build_telescope(2, 3).unwrap().complex;
        assert!(verify_quotient_torsion(&x, &injective(&x)).unwrap());
        let t = build_telescope(2, 3).unwrap();
        // The block coloring repeats patterns on disjoint edges.
        assert!(matches!(verify_quotient_torsion(&t.complex, &block_coloring(&t)), Err(Error::Precondition(_))));
    }

    #[test]
    fn color_text() {
        let c = Color::base(3).with(12);
        assert_eq!(c.to_string(), "(3,12)");
        assert_eq!("(3,12)".parse::<Color>().unwrap(), c);
        assert_eq!("5".parse::<Color>().unwrap(), Color::base(5));
        assert_eq!(c.to_vertex(), VertexId::Name("(3,12)".into()));
    }
}
