//! Simplicial complexes over a ground set `[n]`, `n <= 64`.
//!
//! The full face set is materialized at construction. Every query (link,
//! star, f-vector, extensions) then reduces to bitmask tests over that set.

mod face;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use face::{keyed, Face, Vertex, MAX_VERTICES};

use crate::error::{Error, Result};

/// A downward-closed family of faces of `[n]`.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    /// Canonically ordered: cardinality, then lexicographic.
    faces: Vec<Face>,
    members: HashSet<Face>,
    facets: Vec<Face>,
    rank: usize,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

/// `(f_{-1}, f_0, ..., f_{rank-1})`: entry `k` counts faces of cardinality `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// Number of faces of cardinality `k`, i.e. `f_{k-1}`; zero past the rank.
    pub fn count(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The JSON file form: `{"n": 5, "facets": [[1,2,3], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub n: usize,
    pub facets: Vec<Vec<Vertex>>,
}

impl SimplicialComplex {
    /// Closure of `facets` under taking subsets. Redundant (non-maximal)
    /// inputs are absorbed.
    pub fn from_facets<I>(n: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut members = HashSet::new();
        for facet in facets {
            if facet.max_vertex() > n {
                return Err(Error::VertexOutOfRange {
                    vertex: facet.max_vertex(),
                    n,
                });
            }
            if members.contains(&facet) {
                continue;
            }
            members.extend(facet.subsets());
        }
        Ok(Self::from_member_set(n, members))
    }

    /// Builds from lists of vertex ids.
    pub fn from_vertex_lists(n: usize, facets: &[Vec<Vertex>]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let faces = facets
            .iter()
            .map(|f| Face::from_vertices(f.iter().copied(), n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(n, faces)
    }

    pub fn from_spec(spec: &ComplexSpec) -> Result<Self> {
        Self::from_vertex_lists(spec.n, &spec.facets)
    }

    pub fn to_spec(&self) -> ComplexSpec {
        ComplexSpec {
            n: self.n,
            facets: self.facets.iter().map(|f| f.to_vec()).collect(),
        }
    }

    /// The full simplex `2^[n]`.
    pub fn simplex(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self::from_facets(n, [Face::from_bits(all)])
    }

    // `members` must already be downward closed.
    fn from_member_set(n: usize, members: HashSet<Face>) -> Self {
        let mut faces: Vec<Face> = members.iter().copied().collect();
        faces.sort();
        let rank = faces.last().map_or(0, |f| f.len());
        let facets = faces
            .iter()
            .copied()
            .filter(|&f| {
                (1..=n)
                    .filter(|&v| !f.contains(v))
                    .all(|v| !members.contains(&f.with(v)))
            })
            .collect();
        SimplicialComplex {
            n,
            faces,
            members,
            facets,
            rank,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All faces in canonical order, `EMPTY` first.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.members.contains(&face)
    }

    pub fn is_facet(&self, face: Face) -> bool {
        self.contains(face) && self.extension_count_unchecked(face) == 0
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        (1..=self.n).contains(&v) && self.contains(Face::singleton(v))
    }

    /// Vertex ids `i` with `{i}` in the complex, increasing.
    pub fn vertices(&self) -> Vec<Vertex> {
        (1..=self.n).filter(|&v| self.has_vertex(v)).collect()
    }

    pub fn nonempty_faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied().filter(|f| !f.is_empty())
    }

    fn require(&self, face: Face) -> Result<()> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(Error::FaceNotInComplex(face))
        }
    }

    pub(crate) fn require_vertex(&self, v: Vertex) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::VertexNotInComplex(v))
        }
    }

    /// `{T : T ∩ S = ∅, T ∪ S ∈ Δ}` on the same ground set.
    pub fn link(&self, s: Face) -> Result<SimplicialComplex> {
        self.require(s)?;
        let members: HashSet<Face> = self.link_faces_unchecked(s).collect();
        Ok(Self::from_member_set(self.n, members))
    }

    /// Faces of the link of `s`, in canonical order, without building a complex.
    pub fn link_faces(&self, s: Face) -> Result<Vec<Face>> {
        self.require(s)?;
        Ok(self.link_faces_unchecked(s).collect())
    }

    fn link_faces_unchecked(&self, s: Face) -> impl Iterator<Item = Face> + '_ {
        self.faces
            .iter()
            .copied()
            .filter(move |&t| t.is_disjoint(s) && self.contains(t.union(s)))
    }

    /// Link of a single vertex (the coalitions player `v` may join).
    pub fn vertex_link(&self, v: Vertex) -> Result<SimplicialComplex> {
        self.require_vertex(v)?;
        self.link(Face::singleton(v))
    }

    /// `{A : A ⊆ T, S ⊆ T ∈ Δ}` in canonical order.
    pub fn star(&self, s: Face) -> Result<Vec<Face>> {
        self.require(s)?;
        let facets: Vec<Face> = self
            .facets
            .iter()
            .copied()
            .filter(|f| s.is_subset(*f))
            .collect();
        Ok(self
            .faces
            .iter()
            .copied()
            .filter(|a| facets.iter().any(|f| a.is_subset(*f)))
            .collect())
    }

    pub fn f_vector(&self) -> Result<FVector> {
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut counts = vec![0u64; self.rank + 1];
        for f in &self.faces {
            counts[f.len()] += 1;
        }
        Ok(FVector(counts))
    }

    /// `{S ∈ Δ : |S| <= k}`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let members: HashSet<Face> = self
            .faces
            .iter()
            .copied()
            .filter(|f| f.len() <= k)
            .collect();
        Self::from_member_set(self.n, members)
    }

    /// Link f-vector of every vertex, keyed by vertex id.
    pub fn vertex_link_f_vectors(&self) -> Vec<(Vertex, FVector)> {
        self.vertices()
            .into_iter()
            .map(|v| {
                let link = self.link(Face::singleton(v)).expect("vertex is a face");
                (v, link.f_vector().expect("link of a face is nonempty"))
            })
            .collect()
    }

    /// True iff every vertex link is pure of cardinality `rank - 1`.
    pub fn has_pure_links(&self) -> Result<bool> {
        Ok(self.first_impure_vertex()?.is_none())
    }

    /// First vertex whose link has a facet of cardinality other than `rank - 1`.
    pub fn first_impure_vertex(&self) -> Result<Option<Vertex>> {
        let vertices = self.vertices();
        if vertices.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let target = self.rank - 1;
        for v in vertices {
            let link = self.link(Face::singleton(v))?;
            if link.facets().iter().any(|f| f.len() != target) {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// `Ext(T) = {j ∉ T : T ∪ j ∈ Δ}`.
    pub fn extension_set(&self, t: Face) -> Result<Vec<Vertex>> {
        self.require(t)?;
        Ok((1..=self.n)
            .filter(|&j| !t.contains(j) && self.contains(t.with(j)))
            .collect())
    }

    pub(crate) fn extension_count_unchecked(&self, t: Face) -> usize {
        (1..=self.n)
            .filter(|&j| !t.contains(j) && self.contains(t.with(j)))
            .count()
    }

    /// Facets containing `s`, in canonical order.
    pub fn facets_containing(&self, s: Face) -> Result<Vec<Face>> {
        self.require(s)?;
        Ok(self
            .facets
            .iter()
            .copied()
            .filter(|f| s.is_subset(*f))
            .collect())
    }
}
