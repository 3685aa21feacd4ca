//! Symmetries of a complex, the generated subgroup used by the symmetry
//! axiom, Shapley complexes and the common-probability linear system.

mod permutation;

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

pub use permutation::Permutation;

use crate::complex::{FVector, Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::exactnum::{solve_exact, LinearSolution, Rational, RationalMatrix};
use crate::values::TableSet;

/// Largest ground set accepted by the exhaustive search in [`symm_group`].
pub const EXHAUSTIVE_LIMIT: usize = 10;

/// `Symm(Δ)` listed explicitly, in lexicographic order of image arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryGroup {
    pub n: usize,
    pub elements: Vec<Permutation>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Identity, closure under composition and inverses, checked on the
    /// explicit element list.
    pub fn satisfies_group_axioms(&self) -> bool {
        let set: HashSet<&Permutation> = self.elements.iter().collect();
        set.contains(&Permutation::identity(self.n))
            && self.elements.iter().all(|a| set.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
    }
}

/// True iff `pi` maps every face of `complex` into `complex`. Checking the
/// facets suffices.
pub fn preserves(complex: &SimplicialComplex, pi: &Permutation) -> bool {
    first_escaping_facet(complex, pi).is_none()
}

/// A facet whose image under `pi` leaves the complex.
pub fn first_escaping_facet(complex: &SimplicialComplex, pi: &Permutation) -> Option<Face> {
    complex
        .facets()
        .iter()
        .copied()
        .find(|&f| !complex.contains(pi.apply_face(f)))
}

/// All permutations of `[n]` mapping the complex onto itself.
///
/// Exhaustive over `S_n`, with branches cut as soon as a partially mapped
/// facet leaves the complex; the output is the same set a plain scan gives.
pub fn symm_group(complex: &SimplicialComplex) -> Result<SymmetryGroup> {
    let n = complex.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::GroundSetTooLarge {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut search = Search {
        complex,
        n,
        images: vec![0; n],
        used: vec![false; n + 1],
        found: Vec::new(),
    };
    search.extend(0);
    let elements = search
        .found
        .into_iter()
        .map(|images| Permutation::from_images(images).expect("search builds bijections"))
        .collect();
    Ok(SymmetryGroup { n, elements })
}

struct Search<'a> {
    complex: &'a SimplicialComplex,
    n: usize,
    images: Vec<Vertex>,
    used: Vec<bool>,
    found: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize) {
        if k == self.n {
            self.found.push(self.images.clone());
            return;
        }
        let vertex = k + 1;
        for img in 1..=self.n {
            if self.used[img] {
                continue;
            }
            self.images[k] = img;
            if self.partial_ok(vertex) {
                self.used[img] = true;
                self.extend(k + 1);
                self.used[img] = false;
            }
        }
    }

    // Vertices 1..=last are assigned; every facet through `last`, cut down to
    // the assigned part, must still map to a face.
    fn partial_ok(&self, last: Vertex) -> bool {
        let assigned = if last == 64 {
            u64::MAX
        } else {
            (1u64 << last) - 1
        };
        self.complex
            .facets()
            .iter()
            .filter(|f| f.contains(last))
            .all(|f| {
                let part = Face::from_bits(f.bits() & assigned);
                let bits = part
                    .vertices()
                    .fold(0u64, |acc, v| acc | 1u64 << (self.images[v - 1] - 1));
                self.complex.contains(Face::from_bits(bits))
            })
    }
}

/// Where a generator of `π(Δ)` comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorOrigin {
    /// Swaps two equal-size faces `l`, `t` of the link of `vertex`. When they
    /// overlap, `l \ t` is paired with `t \ l` in sorted order and the
    /// intersection stays fixed (`overlapping = true`).
    LinkSwap {
        vertex: Vertex,
        l: Face,
        t: Face,
        overlapping: bool,
    },
    /// Transposition of two vertices whose links intersect.
    Transposition { i: Vertex, j: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiGenerator {
    pub perm: Permutation,
    pub origin: GeneratorOrigin,
}

/// Generators of `π(Δ)`, deduplicated by permutation (first origin kept).
/// Link swaps come first, by vertex and then canonical face order; the
/// transpositions follow.
pub fn pi_delta_generators(complex: &SimplicialComplex) -> Vec<PiGenerator> {
    let n = complex.n();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |perm: Permutation, origin: GeneratorOrigin| {
        if !perm.is_identity() && seen.insert(perm.clone()) {
            out.push(PiGenerator { perm, origin });
        }
    };

    let vertices = complex.vertices();
    let mut links = BTreeMap::new();
    for &i in &vertices {
        let link = complex
            .link_faces(Face::singleton(i))
            .expect("vertex is a face");
        for (a, &l) in link.iter().enumerate() {
            for &t in link[a + 1..].iter().take_while(|t| t.len() == l.len()) {
                let pairs: Vec<(Vertex, Vertex)> = l
                    .difference(t)
                    .vertices()
                    .zip(t.difference(l).vertices())
                    .collect();
                let perm = Permutation::from_pairs(n, &pairs).expect("link faces lie in [n]");
                push(
                    perm,
                    GeneratorOrigin::LinkSwap {
                        vertex: i,
                        l,
                        t,
                        overlapping: !l.is_disjoint(t),
                    },
                );
            }
        }
        links.insert(i, link.into_iter().collect::<HashSet<_>>());
    }
    for (a, &i) in vertices.iter().enumerate() {
        for &j in &vertices[a + 1..] {
            if !links[&i].is_disjoint(&links[&j]) {
                push(
                    Permutation::transposition(n, i, j).expect("vertices lie in [n]"),
                    GeneratorOrigin::Transposition { i, j },
                );
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorVerdict {
    pub generator: PiGenerator,
    /// A facet mapped outside the complex, if any.
    pub escaping_facet: Option<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiDeltaCheck {
    pub contained: bool,
    pub verdicts: Vec<GeneratorVerdict>,
}

impl PiDeltaCheck {
    /// First generator that fails, with the facet it maps outside the complex.
    pub fn counterexample(&self) -> Option<(&PiGenerator, Face)> {
        self.verdicts
            .iter()
            .find_map(|v| v.escaping_facet.map(|f| (&v.generator, f)))
    }
}

/// Whether `π(Δ) ⊆ Symm(Δ)`, decided on the generators.
pub fn check_pi_delta_contained(complex: &SimplicialComplex) -> PiDeltaCheck {
    let verdicts: Vec<GeneratorVerdict> = pi_delta_generators(complex)
        .into_iter()
        .map(|g| GeneratorVerdict {
            escaping_facet: first_escaping_facet(complex, &g.perm),
            generator: g,
        })
        .collect();
    PiDeltaCheck {
        contained: verdicts.iter().all(|v| v.escaping_facet.is_none()),
        verdicts,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapleyClassification {
    pub is_shapley: bool,
    /// The common link f-vector `(s_0, ..., s_{r-1})`.
    pub s_vector: Option<FVector>,
    /// Two vertices with different link f-vectors.
    pub witness: Option<(Vertex, Vertex)>,
    pub link_f_vectors: Vec<(Vertex, FVector)>,
}

/// A complex is Shapley when all vertex links share one f-vector.
pub fn classify_shapley(complex: &SimplicialComplex) -> Result<ShapleyClassification> {
    let link_f_vectors = complex.vertex_link_f_vectors();
    let Some((first_vertex, first)) = link_f_vectors.first().cloned() else {
        return Err(Error::EmptyComplex);
    };
    let witness = link_f_vectors
        .iter()
        .find(|(_, f)| *f != first)
        .map(|(v, _)| (first_vertex, *v));
    Ok(ShapleyClassification {
        is_shapley: witness.is_none(),
        s_vector: witness.is_none().then_some(first),
        witness,
        link_f_vectors,
    })
}

/// The system `f(Link(i, Δ)) · p = 1`, one row per distinct link f-vector.
#[derive(Clone, Debug, Serialize)]
pub struct PSystem {
    pub rank: usize,
    /// Distinct rows with the vertices that produced them.
    pub rows: Vec<(FVector, Vec<Vertex>)>,
    pub solution: LinearSolution,
}

impl PSystem {
    pub fn matrix(&self) -> RationalMatrix {
        build_p_matrix(self.rank, &self.rows)
    }

    /// `row · p - 1` for every row.
    pub fn residuals(&self, p: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self
            .matrix()
            .mul_vec(p)?
            .into_iter()
            .map(|x| x - Rational::one())
            .collect())
    }

    pub fn is_satisfied_by(&self, p: &[Rational]) -> Result<bool> {
        Ok(self.residuals(p)?.iter().all(Rational::is_zero))
    }
}

fn build_p_matrix(rank: usize, rows: &[(FVector, Vec<Vertex>)]) -> RationalMatrix {
    let rows = rows
        .iter()
        .map(|(f, _)| (0..rank).map(|k| Rational::from(f.count(k))).collect())
        .collect();
    RationalMatrix::from_rows(rank, rows).expect("rows have length rank")
}

/// Builds and solves the common-probability system. Requires pure links, so
/// every row has exactly `rank` entries.
pub fn solve_p_system(complex: &SimplicialComplex) -> Result<PSystem> {
    if let Some(v) = complex.first_impure_vertex()? {
        return Err(Error::NotPureLinks(v));
    }
    let rank = complex.rank();
    let mut rows: Vec<(FVector, Vec<Vertex>)> = Vec::new();
    for (v, f) in complex.vertex_link_f_vectors() {
        match rows.iter_mut().find(|(g, _)| *g == f) {
            Some((_, vs)) => vs.push(v),
            None => rows.push((f, vec![v])),
        }
    }
    let matrix = build_p_matrix(rank, &rows);
    let ones = vec![Rational::one(); rows.len()];
    let solution = solve_exact(&matrix, &ones)?;
    Ok(PSystem {
        rank,
        rows,
        solution,
    })
}

/// `p_k = 1 / (r · s_k)` for a Shapley vector `s` of length `r`.
pub fn shapley_probabilities(s: &FVector) -> Vec<Rational> {
    let r = s.len() as u64;
    s.entries()
        .iter()
        .map(|&sk| Rational::recip_of(r * sk).expect("f-vector entries of a link are positive"))
        .collect()
}

/// A table entry that breaks "depends only on |T|, shared by all players".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionViolation {
    pub cardinality: usize,
    pub reference: (Vertex, Face, Rational),
    pub offending: (Vertex, Face, Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReduction {
    /// `t -> p_t` for every cardinality `t >= 1` that occurs in some link.
    pub common: BTreeMap<usize, Rational>,
    pub violation: Option<ReductionViolation>,
}

impl SymmetryReduction {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `p_T^i` depends only on `|T|` (for nonempty `T`) across all
/// players. Requires `π(Δ) ⊆ Symm(Δ)`.
pub fn check_symmetry_reduction(
    complex: &SimplicialComplex,
    tables: &TableSet,
) -> Result<SymmetryReduction> {
    let check = check_pi_delta_contained(complex);
    if let Some((g, face)) = check.counterexample() {
        return Err(Error::HypothesisNotMet {
            generator: g.perm.to_string(),
            face,
        });
    }
    let mut reference: BTreeMap<usize, (Vertex, Face, Rational)> = BTreeMap::new();
    for i in complex.vertices() {
        let table = tables.get(i)?;
        for t in complex.link_faces(Face::singleton(i))? {
            if t.is_empty() {
                continue;
            }
            let p = table.weight(t);
            match reference.get(&t.len()) {
                None => {
                    reference.insert(t.len(), (i, t, p));
                }
                Some(r) if r.2 != p => {
                    return Ok(SymmetryReduction {
                        common: BTreeMap::new(),
                        violation: Some(ReductionViolation {
                            cardinality: t.len(),
                            reference: r.clone(),
                            offending: (i, t, p),
                        }),
                    });
                }
                Some(_) => {}
            }
        }
    }
    Ok(SymmetryReduction {
        common: reference.into_iter().map(|(k, (_, _, p))| (k, p)).collect(),
        violation: None,
    })
}

/// The map `Link(i) → Link(j)` induced by the transposition `(i j)`:
/// `T ↦ T` if `j ∉ T`, else `(T ∪ i) \ j`.
pub fn link_transport(
    complex: &SimplicialComplex,
    i: Vertex,
    j: Vertex,
) -> Result<Vec<(Face, Face)>> {
    complex.require_vertex(i)?;
    complex.require_vertex(j)?;
    let link = complex.link_faces(Face::singleton(i))?;
    Ok(link
        .into_iter()
        .map(|t| {
            let image = if t.contains(j) {
                t.with(i).without(j)
            } else {
                t
            };
            (t, image)
        })
        .collect())
}

/// True iff [`link_transport`] is a cardinality-preserving bijection onto
/// `Link(j)`.
pub fn link_transport_is_isomorphism(
    complex: &SimplicialComplex,
    i: Vertex,
    j: Vertex,
) -> Result<bool> {
    let map = link_transport(complex, i, j)?;
    let target: HashSet<Face> = complex
        .link_faces(Face::singleton(j))?
        .into_iter()
        .collect();
    let images: HashSet<Face> = map.iter().map(|(_, t)| *t).collect();
    Ok(
        map.iter().all(|(s, t)| s.len() == t.len())
            && images.len() == map.len()
            && images == target,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::SolveStatus;
    use crate::fixtures;

    fn perm(pairs: &[(Vertex, Vertex)], n: usize) -> Permutation {
        Permutation::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn symmetric_group_of_simplex() {
        for (n, order) in [(1, 1), (2, 2), (3, 6), (4, 24)] {
            let g = symm_group(&fixtures::simplex(n)).unwrap();
            assert_eq!(g.order(), order);
            assert!(g.satisfies_group_axioms());
        }
    }

    #[test]
    fn dihedral_group_of_square() {
        let g = symm_group(&fixtures::cycle(4)).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.satisfies_group_axioms());
        assert!(g.contains(&Permutation::from_images(vec![2, 3, 4, 1]).unwrap()));
        assert!(!g.contains(&perm(&[(1, 2)], 4)));
    }

    #[test]
    fn bowtie_symmetries() {
        let d = fixtures::bowtie();
        let g = symm_group(&d).unwrap();
        for p in [
            perm(&[(1, 2)], 5),
            perm(&[(4, 5)], 5),
            perm(&[(1, 4), (2, 5)], 5),
        ] {
            assert!(g.contains(&p), "{p}");
        }
        // vertex 3 is fixed; the two wings swap as blocks: (2 x 2) x 2
        assert_eq!(g.order(), 8);
        assert!(g.elements.iter().all(|p| p.apply(3) == 3));
        assert!(g.satisfies_group_axioms());
    }

    #[test]
    fn exhaustive_limit() {
        let big = fixtures::cycle(11);
        assert!(matches!(
            symm_group(&big),
            Err(Error::GroundSetTooLarge { n: 11, limit: 10 })
        ));
    }

    #[test]
    fn generators() {
        let s3 = fixtures::simplex(3);
        let gens = pi_delta_generators(&s3);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(gens.iter().any(|g| g.perm == perm(&[(i, j)], 3)));
        }

        let a = fixtures::triangle_strip();
        let gens = pi_delta_generators(&a);
        let wanted = perm(&[(1, 4), (2, 5)], 5);
        let found = gens.iter().find(|g| g.perm == wanted).unwrap();
        assert_eq!(
            found.origin,
            GeneratorOrigin::LinkSwap {
                vertex: 3,
                l: Face::of(&[1, 2]),
                t: Face::of(&[4, 5]),
                overlapping: false
            }
        );

        let edge = SimplicialComplex::from_vertex_lists(2, &[vec![1, 2]]).unwrap();
        assert!(pi_delta_generators(&edge)
            .iter()
            .any(|g| g.perm == perm(&[(1, 2)], 2)));
    }

    #[test]
    fn overlapping_swap_pairs_differences() {
        let s4 = fixtures::simplex(4);
        let gens = pi_delta_generators(&s4);
        // link of 4 contains {1,2} and {1,3}: the swap fixes 1 and exchanges 2, 3
        let g = gens
            .iter()
            .find(|g| {
                matches!(g.origin, GeneratorOrigin::LinkSwap { l, t, overlapping: true, .. }
                    if l == Face::of(&[1, 2]) && t == Face::of(&[1, 3]))
            })
            .or_else(|| gens.iter().find(|g| g.perm == perm(&[(2, 3)], 4)))
            .unwrap();
        assert_eq!(g.perm, perm(&[(2, 3)], 4));
    }

    #[test]
    fn containment_checks() {
        for n in 1..=4 {
            assert!(check_pi_delta_contained(&fixtures::simplex(n)).contained);
        }
        let b = fixtures::bowtie();
        let check = check_pi_delta_contained(&b);
        assert!(!check.contained);
        let (g, face) = check.counterexample().unwrap();
        assert!(!b.contains(g.perm.apply_face(face)));
        // (1 4)(2 5) passes, (1 3) fails on {3,4,5}
        let v = |p: &Permutation| {
            check
                .verdicts
                .iter()
                .find(|v| &v.generator.perm == p)
                .unwrap()
        };
        assert!(v(&perm(&[(1, 4), (2, 5)], 5)).escaping_facet.is_none());
        assert!(v(&perm(&[(1, 3)], 5)).escaping_facet.is_some());
        assert!(!b.contains(perm(&[(1, 3)], 5).apply_face(Face::of(&[3, 4, 5]))));

        let p = fixtures::path(3);
        let check = check_pi_delta_contained(&p);
        assert!(!check.contained);
        assert!(preserves(&p, &perm(&[(1, 3)], 3)));
        assert_eq!(
            first_escaping_facet(&p, &perm(&[(1, 2)], 3)),
            Some(Face::of(&[2, 3]))
        );
    }

    #[test]
    fn shapley_classification() {
        let s4 = fixtures::simplex(4);
        let c = classify_shapley(&s4).unwrap();
        assert!(c.is_shapley);
        assert_eq!(c.s_vector, Some(FVector(vec![1, 3, 3, 1])));

        let petersen = classify_shapley(&fixtures::petersen()).unwrap();
        assert_eq!(petersen.s_vector, Some(FVector(vec![1, 3])));
        assert!(!classify_shapley(&fixtures::path(3)).unwrap().is_shapley);

        let b = classify_shapley(&fixtures::bowtie()).unwrap();
        assert!(!b.is_shapley);
        assert_eq!(b.witness, Some((1, 3)));
        assert_eq!(b.link_f_vectors[0].1, FVector(vec![1, 2, 1]));
        assert_eq!(b.link_f_vectors[2].1, FVector(vec![1, 4, 2]));

        let empty = SimplicialComplex::from_facets(2, [Face::EMPTY]).unwrap();
        assert!(matches!(classify_shapley(&empty), Err(Error::EmptyComplex)));
    }

    #[test]
    fn p_system_on_shapley_complexes() {
        let s3 = fixtures::simplex(3);
        let sys = solve_p_system(&s3).unwrap();
        assert_eq!(sys.rows.len(), 1);
        assert_eq!(sys.rows[0].0, FVector(vec![1, 2, 1]));
        let p: Vec<Rational> = ["1/3", "1/6", "1/3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert!(sys.is_satisfied_by(&p).unwrap());
        assert_eq!(shapley_probabilities(&sys.rows[0].0), p);

        let c4 = solve_p_system(&fixtures::cycle(4)).unwrap();
        assert_eq!(c4.solution.status, SolveStatus::Underdetermined);
        let p = shapley_probabilities(&FVector(vec![1, 2]));
        assert_eq!(
            p,
            vec![Rational::new(1, 2).unwrap(), Rational::new(1, 4).unwrap()]
        );
        assert!(c4.is_satisfied_by(&p).unwrap());
    }

    #[test]
    fn p_system_requires_pure_links() {
        let mixed = SimplicialComplex::from_vertex_lists(3, &[vec![1, 2], vec![3]]).unwrap();
        assert!(matches!(
            solve_p_system(&mixed),
            Err(Error::NotPureLinks(3))
        ));
    }

    #[test]
    fn p_system_with_distinct_rows() {
        let b = fixtures::bowtie();
        let sys = solve_p_system(&b).unwrap();
        assert_eq!(sys.rows.len(), 2);
        assert_eq!(sys.rows[1].1, vec![3]);
        assert!(sys.solution.is_consistent());
        let x = sys.solution.particular.clone().unwrap();
        assert!(sys.is_satisfied_by(&x).unwrap());
    }

    #[test]
    fn link_transport_maps() {
        let s4 = fixtures::simplex(4);
        assert!(link_transport_is_isomorphism(&s4, 1, 2).unwrap());
        let map = link_transport(&s4, 1, 2).unwrap();
        assert!(map.contains(&(Face::of(&[2, 3]), Face::of(&[1, 3]))));
        assert!(map.contains(&(Face::of(&[3, 4]), Face::of(&[3, 4]))));
        let b = fixtures::bowtie();
        assert!(link_transport_is_isomorphism(&b, 1, 2).unwrap());
        assert!(!link_transport_is_isomorphism(&b, 1, 3).unwrap());
    }
}
