use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{classical_shapley, generalized_shapley, link_profile};
use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::Result;
use crate::exactnum::{
    binomial, solve_exact, LinearSolution, Rational, RationalMatrix, SolveStatus,
};
use crate::random;

/// Number of random games used to cross-check an exact decomposition.
pub const CROSS_CHECK_GAMES: usize = 20;

const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecompositionStatus {
    Exact,
    Infeasible,
}

/// Weights `c_F` over the facets through a player such that
/// `Σ_F c_F · Shapley^F_i(v|_F)` equals the generalized Shapley value.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub player: Vertex,
    pub status: DecompositionStatus,
    /// Unknowns, in canonical facet order.
    pub facets: Vec<Face>,
    /// One equation per link face `T`.
    pub equations: Vec<Face>,
    /// `c_F` (free unknowns set to zero); empty when infeasible.
    #[serde(with = "crate::complex::keyed")]
    pub facet_weights: BTreeMap<Face, Rational>,
    /// `c̃_{F,t} = c_F (r_i + 1) / (|F| · C(|F|−1, t))` for each facet and each
    /// coalition size `t < |F|`.
    #[serde(serialize_with = "c_tilde_entries")]
    pub c_tilde: BTreeMap<(Face, usize), Rational>,
    /// Dimension of the solution family (number of free facets).
    pub free_dimension: usize,
    /// For an infeasible system: weights on the equations whose combination
    /// cancels every unknown but not the right-hand side.
    pub certificate: Option<Vec<(Face, Rational)>>,
    /// Random games on which the weighted facet sum matched the generalized
    /// Shapley value exactly.
    pub cross_checked_games: usize,
    #[serde(skip)]
    matrix: RationalMatrix,
    #[serde(skip)]
    rhs: Vec<Rational>,
    #[serde(skip)]
    solution: LinearSolution,
}

#[derive(Serialize)]
struct CTildeEntry<'a> {
    facet: Face,
    size: usize,
    value: &'a Rational,
}

fn c_tilde_entries<S: serde::Serializer>(
    map: &BTreeMap<(Face, usize), Rational>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(map.iter().map(|(&(facet, size), value)| CTildeEntry {
        facet,
        size,
        value,
    }))
}

impl Decomposition {
    /// The coefficient matrix (rows follow `equations`, columns `facets`) and
    /// right-hand side.
    pub fn system(&self) -> (&RationalMatrix, &[Rational]) {
        (&self.matrix, &self.rhs)
    }

    pub fn solution(&self) -> &LinearSolution {
        &self.solution
    }
}

/// [`decompose_shapley_with_seed`] with the default seed.
pub fn decompose_shapley(complex: &SimplicialComplex, player: Vertex) -> Result<Decomposition> {
    decompose_shapley_with_seed(complex, player, DEFAULT_SEED)
}

/// Solves, for every `T` in the link of `player`,
/// `Σ_{F ⊇ T ∪ i} c_F / (|F| · C(|F|−1, |T|)) = 1 / ((r_i + 1) · f_{|T|−1}(Link(i)))`
/// in the unknowns `c_F`, `F` a facet through `player`.
pub fn decompose_shapley_with_seed(
    complex: &SimplicialComplex,
    player: Vertex,
    seed: u64,
) -> Result<Decomposition> {
    let (link, link_rank, counts) = link_profile(complex, player)?;
    let me = Face::singleton(player);
    let facets = complex.facets_containing(me)?;

    let mut rows = Vec::with_capacity(link.len());
    let mut rhs = Vec::with_capacity(link.len());
    for &t in &link {
        let coalition = t.union(me);
        let row = facets
            .iter()
            .map(|&f| {
                if coalition.is_subset(f) {
                    Rational::new(1, binomial(f.len() - 1, t.len()) * f.len()).expect("positive")
                } else {
                    Rational::zero()
                }
            })
            .collect();
        rows.push(row);
        rhs.push(Rational::recip_of((link_rank as u64 + 1) * counts[t.len()]).expect("positive"));
    }
    let matrix = RationalMatrix::from_rows(facets.len(), rows)?;
    let solution = solve_exact(&matrix, &rhs)?;

    let mut out = Decomposition {
        player,
        status: DecompositionStatus::Infeasible,
        facets: facets.clone(),
        equations: link.clone(),
        facet_weights: BTreeMap::new(),
        c_tilde: BTreeMap::new(),
        free_dimension: 0,
        certificate: None,
        cross_checked_games: 0,
        matrix,
        rhs,
        solution: solution.clone(),
    };

    if solution.status == SolveStatus::Inconsistent {
        let y = solution
            .certificate
            .expect("inconsistent solve carries a certificate");
        out.certificate = Some(
            link.iter()
                .copied()
                .zip(y)
                .filter(|(_, w)| !w.is_zero())
                .collect(),
        );
        return Ok(out);
    }

    let c = solution
        .particular
        .expect("consistent solve has a particular solution");
    out.status = DecompositionStatus::Exact;
    out.free_dimension = solution.nullspace_basis.len();
    let scale = Rational::from(link_rank + 1);
    for (&f, cf) in facets.iter().zip(&c) {
        out.facet_weights.insert(f, cf.clone());
        for t in 0..f.len() {
            let denom = Rational::from(binomial(f.len() - 1, t) * f.len());
            out.c_tilde.insert((f, t), &(cf * &scale) / &denom);
        }
    }

    let shared = Arc::new(complex.clone());
    let mut rng = random::seeded(seed);
    for _ in 0..CROSS_CHECK_GAMES {
        let v = random::game(&shared, &mut rng);
        let mut weighted = Rational::zero();
        for (f, cf) in &out.facet_weights {
            if !cf.is_zero() {
                weighted += cf * &classical_shapley(&v, *f, player)?;
            }
        }
        if weighted != generalized_shapley(&v, player)? {
            break;
        }
        out.cross_checked_games += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    #[test]
    fn simplex_has_unit_weight() {
        for n in 1..=5 {
            let d = fixtures::simplex(n);
            for i in 1..=n {
                let dec = decompose_shapley(&d, i).unwrap();
                assert_eq!(dec.status, DecompositionStatus::Exact);
                assert_eq!(dec.facet_weights.len(), 1);
                assert_eq!(dec.facet_weights.values().next(), Some(&Rational::one()));
                assert_eq!(dec.cross_checked_games, CROSS_CHECK_GAMES);
                assert_eq!(dec.free_dimension, 0);
            }
        }
    }

    #[test]
    fn triangle_strip_centre_is_infeasible() {
        // T = {1}: c_{123} = 1/2; T = {1,2}: c_{123} = 1/3.
        let d = fixtures::triangle_strip();
        let dec = decompose_shapley(&d, 3).unwrap();
        assert_eq!(dec.equations.len(), 8);
        assert_eq!(dec.facets.len(), 3);
        assert_eq!(dec.status, DecompositionStatus::Infeasible);
        let cert = dec.certificate.as_ref().unwrap();
        let (a, b) = dec.system();
        let mut y = vec![Rational::zero(); a.rows()];
        for (t, w) in cert {
            y[dec.equations.iter().position(|e| e == t).unwrap()] = w.clone();
        }
        assert!(a.left_mul_vec(&y).unwrap().iter().all(Rational::is_zero));
        let yb: Rational = y.iter().zip(b).map(|(u, v)| u * v).sum();
        assert!(!yb.is_zero());
    }

    #[test]
    fn graphs_with_one_edge_per_facet() {
        // On a graph, Link(i) = {∅} ∪ neighbours and each facet is an edge:
        // the system is c_F/2 = 1/(2 deg) per neighbour and Σ c_F / 2 = 1/2.
        let d = fixtures::cycle(5);
        let dec = decompose_shapley(&d, 1).unwrap();
        assert_eq!(dec.status, DecompositionStatus::Exact);
        for c in dec.facet_weights.values() {
            assert_eq!(c, &Rational::new(1, 2).unwrap());
        }
        assert_eq!(dec.cross_checked_games, CROSS_CHECK_GAMES);
        let c_tilde = dec.c_tilde[&(Face::of(&[1, 2]), 1)].clone();
        // c̃ · f_0(Link) = 1 for the T = {2} row
        assert_eq!(c_tilde * Rational::from(2), Rational::one());
    }

    #[test]
    fn unknown_vertex() {
        let d = fixtures::triangle_strip();
        assert!(matches!(
            decompose_shapley(&d, 6),
            Err(Error::VertexNotInComplex(6))
        ));
    }
}
