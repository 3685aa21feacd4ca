//! Probabilistic values, the generalized Shapley value and the classical
//! Shapley value on facets.
//!
//! A probabilistic value for player `i` is
//! `φ_i(v) = Σ_{T ∈ Link(i)} p_T (v(T ∪ i) − v(T))`. The generalized Shapley
//! value takes `p_T = 1 / ((r_i + 1) · f_{|T|−1}(Link(i)))`, where `r_i` is the
//! rank of the link: uniform over coalition sizes, uniform within a size.

mod axioms;
mod decompose;
mod efficiency;

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

pub use axioms::{axiom_suite, AxiomCheck, AxiomReport, PlayerAxioms};
pub use decompose::{
    decompose_shapley, decompose_shapley_with_seed, Decomposition, DecompositionStatus,
};
pub use efficiency::{
    check_efficiency_identity, efficiency_coefficients, shapley_efficiency_closed_form,
    EfficiencyCheck, EfficiencyCoefficients,
};

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, Rational};
use crate::games::Game;

/// Weights `{p_T}` over the link of one player.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbabilityTable {
    player: Vertex,
    #[serde(with = "crate::complex::keyed")]
    weights: BTreeMap<Face, Rational>,
}

impl ProbabilityTable {
    /// Validates that every key lies in `Link(player, Δ)`.
    pub fn new<I>(complex: &SimplicialComplex, player: Vertex, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Face, Rational)>,
    {
        complex.require_vertex(player)?;
        let i = Face::singleton(player);
        let weights: BTreeMap<Face, Rational> = weights.into_iter().collect();
        for &t in weights.keys() {
            if t.contains(player) || !complex.contains(t.union(i)) {
                return Err(Error::KeyOutsideLink { player, face: t });
            }
        }
        Ok(ProbabilityTable { player, weights })
    }

    pub fn player(&self) -> Vertex {
        self.player
    }

    pub fn weight(&self, t: Face) -> Rational {
        self.weights.get(&t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> &BTreeMap<Face, Rational> {
        &self.weights
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    /// `Σ p_T = 1`.
    pub fn is_normalized(&self) -> bool {
        self.total() == Rational::one()
    }

    /// Normalized with every weight nonnegative.
    pub fn is_probability(&self) -> bool {
        self.is_normalized() && self.weights.values().all(|p| !p.is_negative())
    }

    pub fn set_weight(&mut self, t: Face, p: Rational) {
        self.weights.insert(t, p);
    }
}

/// One table per player.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSet {
    tables: BTreeMap<Vertex, ProbabilityTable>,
}

impl TableSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, table: ProbabilityTable) {
        self.tables.insert(table.player(), table);
    }

    pub fn get(&self, player: Vertex) -> Result<&ProbabilityTable> {
        self.tables
            .get(&player)
            .ok_or(Error::MissingPlayerTable(player))
    }

    pub fn get_mut(&mut self, player: Vertex) -> Result<&mut ProbabilityTable> {
        self.tables
            .get_mut(&player)
            .ok_or(Error::MissingPlayerTable(player))
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProbabilityTable> {
        self.tables.values()
    }

    /// Fails on the first vertex of `complex` without a table.
    pub fn require_all(&self, complex: &SimplicialComplex) -> Result<()> {
        for v in complex.vertices() {
            self.get(v)?;
        }
        Ok(())
    }
}

impl FromIterator<ProbabilityTable> for TableSet {
    fn from_iter<I: IntoIterator<Item = ProbabilityTable>>(iter: I) -> Self {
        let mut set = TableSet::new();
        for t in iter {
            set.insert(t);
        }
        set
    }
}

/// `(φ_1(v), ..., φ_n(v))` over the vertices of the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupValue {
    pub values: BTreeMap<Vertex, Rational>,
}

impl GroupValue {
    pub fn total(&self) -> Rational {
        self.values.values().sum()
    }

    pub fn get(&self, player: Vertex) -> Option<&Rational> {
        self.values.get(&player)
    }
}

/// `Σ_{T ∈ Link(i)} p_T (v(T ∪ i) − v(T))`.
pub fn probabilistic_value(v: &Game, i: Vertex, table: &ProbabilityTable) -> Result<Rational> {
    if table.player() != i {
        return Err(Error::PlayerMismatch {
            expected: i,
            found: table.player(),
        });
    }
    let complex = v.complex();
    complex.require_vertex(i)?;
    let mut acc = Rational::zero();
    for (&t, p) in table.weights() {
        if t.contains(i) || !complex.contains(t.with(i)) {
            return Err(Error::KeyOutsideLink { player: i, face: t });
        }
        if !p.is_zero() {
            acc += p * &v.marginal(t, i);
        }
    }
    Ok(acc)
}

/// Link faces of `i` together with `r_i` and the per-cardinality counts.
fn link_profile(complex: &SimplicialComplex, i: Vertex) -> Result<(Vec<Face>, usize, Vec<u64>)> {
    complex.require_vertex(i)?;
    let link = complex.link_faces(Face::singleton(i))?;
    let rank = link.last().map_or(0, |t| t.len());
    let mut counts = vec![0u64; rank + 1];
    for t in &link {
        counts[t.len()] += 1;
    }
    Ok((link, rank, counts))
}

/// The generalized Shapley value of player `i`.
pub fn generalized_shapley(v: &Game, i: Vertex) -> Result<Rational> {
    let (link, rank, counts) = link_profile(v.complex(), i)?;
    let per_size: Vec<Rational> = counts
        .iter()
        .map(|&c| Rational::recip_of(c).expect("every size up to the rank occurs"))
        .collect();
    let sum: Rational = link
        .iter()
        .map(|&t| &per_size[t.len()] * &v.marginal(t, i))
        .sum();
    Ok(sum * Rational::recip_of(rank + 1).expect("rank + 1 > 0"))
}

/// `p_T^i = 1 / ((r_i + 1) · f_{|T|−1}(Link(i)))` for every vertex.
pub fn canonical_shapley_tables(complex: &SimplicialComplex) -> Result<TableSet> {
    complex
        .vertices()
        .into_iter()
        .map(|i| {
            let (link, rank, counts) = link_profile(complex, i)?;
            let weights = link.into_iter().map(|t| {
                let p = Rational::recip_of((rank as u64 + 1) * counts[t.len()]).expect("positive");
                (t, p)
            });
            ProbabilityTable::new(complex, i, weights)
        })
        .collect()
}

/// Applies each player's table.
pub fn group_value(v: &Game, tables: &TableSet) -> Result<GroupValue> {
    let values = v
        .complex()
        .vertices()
        .into_iter()
        .map(|i| Ok((i, probabilistic_value(v, i, tables.get(i)?)?)))
        .collect::<Result<_>>()?;
    Ok(GroupValue { values })
}

/// Generalized Shapley value of every vertex.
pub fn shapley_group_value(v: &Game) -> Result<GroupValue> {
    let values = v
        .complex()
        .vertices()
        .into_iter()
        .map(|i| Ok((i, generalized_shapley(v, i)?)))
        .collect::<Result<_>>()?;
    Ok(GroupValue { values })
}

fn check_player_in_face(v: &Game, facet: Face, i: Vertex) -> Result<()> {
    if !v.complex().contains(facet) {
        return Err(Error::FaceNotInComplex(facet));
    }
    if !facet.contains(i) {
        return Err(Error::PlayerNotInFace {
            player: i,
            face: facet,
        });
    }
    Ok(())
}

/// Classical Shapley value of `i` in the game `v` restricted to `2^facet`,
/// by the subset-weight formula
/// `Σ_{T ⊆ F∖i} |T|!(|F|−|T|−1)!/|F|! · (v(T ∪ i) − v(T))`.
pub fn classical_shapley(v: &Game, facet: Face, i: Vertex) -> Result<Rational> {
    check_player_in_face(v, facet, i)?;
    let size = facet.len();
    let weights: Vec<Rational> = (0..size)
        .map(|t| Rational::new(1, binomial(size - 1, t) * size).expect("positive"))
        .collect();
    Ok(facet
        .without(i)
        .subsets()
        .map(|t| &weights[t.len()] * &v.marginal(t, i))
        .sum())
}

/// Largest facet accepted by [`classical_shapley_oracle`].
pub const ORACLE_PLAYER_LIMIT: usize = 10;

/// Classical Shapley value by enumerating every ordering of the facet and
/// averaging `i`'s marginal contribution to its predecessors.
pub fn classical_shapley_oracle(v: &Game, facet: Face, i: Vertex) -> Result<Rational> {
    check_player_in_face(v, facet, i)?;
    let size = facet.len();
    if size > ORACLE_PLAYER_LIMIT {
        return Err(Error::TooManyPlayers {
            found: size,
            limit: ORACLE_PLAYER_LIMIT,
        });
    }
    let players = facet.to_vec();
    let mut total = Rational::zero();
    for order in players.iter().copied().permutations(size) {
        let pos = order
            .iter()
            .position(|&p| p == i)
            .expect("i is in the facet");
        let before = Face::from_vertices(order[..pos].iter().copied(), 64).expect("valid ids");
        total += v.marginal(before, i);
    }
    Ok(total * Rational::new(1, factorial(size)).expect("positive"))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;
    use crate::games::{carrier_game, indicator_game, CarrierKind};
    use crate::random;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn arc(d: SimplicialComplex) -> Arc<SimplicialComplex> {
        Arc::new(d)
    }

    #[test]
    fn point_mass_on_empty_set() {
        let d = arc(fixtures::triangle_strip());
        let v = random::game(&d, &mut random::seeded(3));
        for i in d.vertices() {
            let t = ProbabilityTable::new(&d, i, [(Face::EMPTY, Rational::one())]).unwrap();
            assert_eq!(
                probabilistic_value(&v, i, &t).unwrap(),
                v.value(Face::singleton(i))
            );
        }
    }

    #[test]
    fn table_validation() {
        let d = fixtures::triangle_strip();
        assert!(matches!(
            ProbabilityTable::new(&d, 1, [(Face::of(&[4]), Rational::one())]),
            Err(Error::KeyOutsideLink { player: 1, .. })
        ));
        assert!(matches!(
            ProbabilityTable::new(&d, 1, [(Face::of(&[1]), Rational::one())]),
            Err(Error::KeyOutsideLink { .. })
        ));
        let t = ProbabilityTable::new(&d, 1, [(Face::EMPTY, Rational::one())]).unwrap();
        let v = Game::zero(arc(d.clone()));
        assert!(matches!(
            probabilistic_value(&v, 2, &t),
            Err(Error::PlayerMismatch {
                expected: 2,
                found: 1
            })
        ));
        // a table built for a larger complex can carry keys outside this link
        let big = fixtures::simplex(5);
        let foreign = ProbabilityTable::new(&big, 1, [(Face::of(&[4]), Rational::one())]).unwrap();
        assert!(matches!(
            probabilistic_value(&v, 1, &foreign),
            Err(Error::KeyOutsideLink { .. })
        ));
    }

    #[test]
    fn singleton_carrier_and_dummy() {
        let d = arc(fixtures::triangle_strip());
        let tables = canonical_shapley_tables(&d).unwrap();
        let mut rng = random::seeded(11);
        for i in d.vertices() {
            let vi = carrier_game(&d, Face::singleton(i), CarrierKind::Containing).unwrap();
            assert_eq!(
                probabilistic_value(&vi, i, tables.get(i).unwrap()).unwrap(),
                Rational::one()
            );
            let dummy = random::dummy_game(&d, i, &mut rng).unwrap();
            assert_eq!(
                probabilistic_value(&dummy, i, tables.get(i).unwrap()).unwrap(),
                dummy.value(Face::singleton(i))
            );
        }
    }

    #[test]
    fn squares_on_three_players() {
        let d = arc(fixtures::simplex(3));
        let v = Game::from_fn(d.clone(), |s| Rational::from(s.len() * s.len()));
        for i in 1..=3 {
            assert_eq!(generalized_shapley(&v, i).unwrap(), Rational::from(3));
        }
        assert_eq!(shapley_group_value(&v).unwrap().total(), Rational::from(9));
    }

    #[test]
    fn isolated_vertex() {
        let d = arc(SimplicialComplex::from_vertex_lists(1, &[vec![1]]).unwrap());
        let v = Game::new(d, [(Face::of(&[1]), q("7/3"))]).unwrap();
        assert_eq!(generalized_shapley(&v, 1).unwrap(), q("7/3"));
        assert!(matches!(
            generalized_shapley(&v, 2),
            Err(Error::VertexNotInComplex(2))
        ));
    }

    #[test]
    fn classical_examples() {
        let d = arc(fixtures::simplex(2));
        let v = Game::new(d.clone(), [(Face::of(&[1, 2]), Rational::one())]).unwrap();
        let full = Face::of(&[1, 2]);
        for i in 1..=2 {
            assert_eq!(classical_shapley_oracle(&v, full, i).unwrap(), q("1/2"));
            assert_eq!(classical_shapley(&v, full, i).unwrap(), q("1/2"));
        }

        let d3 = arc(fixtures::simplex(3));
        let majority = Game::from_fn(d3.clone(), |s| Rational::from(u64::from(s.len() >= 2)));
        let f3 = Face::of(&[1, 2, 3]);
        for i in 1..=3 {
            assert_eq!(
                classical_shapley_oracle(&majority, f3, i).unwrap(),
                q("1/3")
            );
        }

        let w = [q("2/3"), q("-1"), q("5")];
        let additive = Game::from_fn(d3, |s| s.vertices().map(|j| w[j - 1].clone()).sum());
        for i in 1..=3 {
            assert_eq!(
                classical_shapley_oracle(&additive, f3, i).unwrap(),
                w[i - 1]
            );
        }
    }

    #[test]
    fn classical_errors() {
        let d = arc(fixtures::triangle_strip());
        let v = Game::zero(d.clone());
        assert!(matches!(
            classical_shapley_oracle(&v, Face::of(&[1, 2, 3]), 4),
            Err(Error::PlayerNotInFace { .. })
        ));
        assert!(matches!(
            classical_shapley(&v, Face::of(&[1, 4]), 1),
            Err(Error::FaceNotInComplex(_))
        ));
        let big = arc(fixtures::simplex(11));
        let z = Game::zero(big);
        assert!(matches!(
            classical_shapley_oracle(&z, Face::from_bits((1 << 11) - 1), 1),
            Err(Error::TooManyPlayers {
                found: 11,
                limit: 10
            })
        ));
    }

    #[test]
    fn canonical_tables() {
        for (name, d) in fixtures::standard() {
            let tables = canonical_shapley_tables(&d).unwrap();
            for t in tables.iter() {
                assert!(t.is_normalized() && t.is_probability(), "{name}");
            }
        }
        let c4 = fixtures::cycle(4);
        let tables = canonical_shapley_tables(&c4).unwrap();
        let t1 = tables.get(1).unwrap();
        assert_eq!(t1.weight(Face::EMPTY), q("1/2"));
        assert_eq!(t1.weight(Face::of(&[2])), q("1/4"));
        assert_eq!(t1.weight(Face::of(&[4])), q("1/4"));
        assert_eq!(t1.weights().len(), 3);

        // full simplex: (1/n) / C(n-1, |T|)
        let n = 5;
        let s = fixtures::simplex(n);
        let tables = canonical_shapley_tables(&s).unwrap();
        for t in tables.iter() {
            for (f, p) in t.weights() {
                let expected = Rational::new(1, binomial(n - 1, f.len()) * n).unwrap();
                assert_eq!(p, &expected);
            }
        }
    }

    #[test]
    fn group_value_paths_agree() {
        let d = arc(fixtures::triangle_strip());
        let tables = canonical_shapley_tables(&d).unwrap();
        let ind = indicator_game(&d, Face::of(&[3, 4, 5])).unwrap();
        let gv = group_value(&ind, &tables).unwrap();
        assert_eq!(gv, shapley_group_value(&ind).unwrap());
        // only players 3, 4, 5 touch {3,4,5}; each gets p_{F \ i}
        assert_eq!(gv.get(1), Some(&Rational::zero()));
        assert_eq!(gv.get(4), Some(&q("1/3")));
        assert_eq!(gv.get(3), Some(&q("1/9")));

        let zero = Game::zero(d.clone());
        assert!(group_value(&zero, &tables)
            .unwrap()
            .values
            .values()
            .all(Rational::is_zero));

        let mut partial = tables.clone();
        partial.tables.remove(&2);
        assert!(matches!(
            group_value(&zero, &partial),
            Err(Error::MissingPlayerTable(2))
        ));
    }

    #[test]
    fn cycle_edge_indicator() {
        let d = arc(fixtures::cycle(4));
        let v = indicator_game(&d, Face::of(&[1, 2])).unwrap();
        let gv = shapley_group_value(&v).unwrap();
        assert_eq!(gv.get(1), Some(&q("1/4")));
        assert_eq!(gv.get(2), Some(&q("1/4")));
        assert_eq!(gv.get(3), Some(&Rational::zero()));
        assert_eq!(gv.total(), q("1/2"));
    }
}
