use std::sync::Arc;

use serde::Serialize;

use super::{probabilistic_value, ProbabilityTable, TableSet};
use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::Result;

use crate::games::{carrier_game, indicator_game, CarrierKind, Game};
use crate::random::{self, GameRng};

/// Random games per player and per check.
const RANDOM_GAMES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub passed: bool,
    /// Number of games (or game pairs) examined.
    pub checked: usize,
    /// First failure, described.
    pub failure: Option<String>,
}

impl AxiomCheck {
    fn new() -> Self {
        AxiomCheck {
            passed: true,
            checked: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.failure = Some(describe());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayerAxioms {
    pub player: Vertex,
    pub normalized: bool,
    pub probability: bool,
    /// `φ(a·v + b·w) = a·φ(v) + b·φ(w)`.
    pub linearity: AxiomCheck,
    /// `φ(v)` ignores values off the star of the player.
    pub star_locality: AxiomCheck,
    /// `φ(v) = v({i})` whenever the player is a dummy.
    pub dummy: AxiomCheck,
    /// `φ(v) >= 0` on monotone games.
    pub monotonicity: AxiomCheck,
}

impl PlayerAxioms {
    pub fn all_passed(&self) -> bool {
        self.linearity.passed
            && self.star_locality.passed
            && self.dummy.passed
            && self.monotonicity.passed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub players: Vec<PlayerAxioms>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.players.iter().all(PlayerAxioms::all_passed)
    }
}

/// Runs the linearity, star-locality, dummy and monotonicity checks for every
/// player on carrier, indicator and seeded random games.
///
/// The checks run regardless of the table flags; a table that is not
/// normalized is expected to fail the dummy check, and one with a negative
/// weight to fail monotonicity on the strict carrier game of that face.
pub fn axiom_suite(
    complex: &SimplicialComplex,
    tables: &TableSet,
    seed: u64,
) -> Result<AxiomReport> {
    tables.require_all(complex)?;
    let shared = Arc::new(complex.clone());
    let mut rng = random::seeded(seed);
    let players = complex
        .vertices()
        .into_iter()
        .map(|i| player_axioms(&shared, i, tables.get(i)?, &mut rng))
        .collect::<Result<_>>()?;
    Ok(AxiomReport { players })
}

fn player_axioms(
    complex: &Arc<SimplicialComplex>,
    i: Vertex,
    table: &ProbabilityTable,
    rng: &mut GameRng,
) -> Result<PlayerAxioms> {
    let phi = |v: &Game| probabilistic_value(v, i, table);

    let mut probes = Vec::new();
    for t in complex.nonempty_faces() {
        probes.push(carrier_game(complex, t, CarrierKind::Containing)?);
        probes.push(indicator_game(complex, t)?);
    }
    for &t in complex.faces() {
        probes.push(carrier_game(complex, t, CarrierKind::StrictlyContaining)?);
    }

    let mut linearity = AxiomCheck::new();
    let randoms: Vec<Game> = (0..RANDOM_GAMES)
        .map(|_| random::game(complex, rng))
        .collect();
    for (k, v) in probes.iter().chain(&randoms).enumerate() {
        let w = &randoms[k % randoms.len()];
        let (a, b) = (random::rational(rng), random::rational(rng));
        let lhs = phi(&v.scale_add(w, &a, &b)?)?;
        let rhs = &a * &phi(v)? + &b * &phi(w)?;
        linearity.record(lhs == rhs, || format!("a={a}, b={b}: {lhs} != {rhs}"));
    }

    let star: std::collections::HashSet<Face> =
        complex.star(Face::singleton(i))?.into_iter().collect();
    let mut star_locality = AxiomCheck::new();
    for v in &randoms {
        let perturbed = Game::from_fn(complex.clone(), |s| {
            if star.contains(&s) {
                v.value(s)
            } else {
                random::rational(rng)
            }
        });
        let (before, after) = (phi(v)?, phi(&perturbed)?);
        star_locality.record(before == after, || {
            format!("{before} changed to {after} off the star")
        });
    }

    let mut dummy = AxiomCheck::new();
    let mut dummy_games = vec![carrier_game(
        complex,
        Face::singleton(i),
        CarrierKind::Containing,
    )?];
    for _ in 0..RANDOM_GAMES {
        dummy_games.push(random::dummy_game(complex, i, rng)?);
    }
    for v in &dummy_games {
        debug_assert!(v.is_dummy(i)?);
        let (got, own) = (phi(v)?, v.value(Face::singleton(i)));
        dummy.record(got == own, || {
            format!("dummy value {got} != v({{{i}}}) = {own}")
        });
    }

    let mut monotonicity = AxiomCheck::new();
    let mut monotone: Vec<Game> = complex
        .link_faces(Face::singleton(i))?
        .into_iter()
        .map(|t| carrier_game(complex, t, CarrierKind::StrictlyContaining))
        .collect::<Result<_>>()?;
    for _ in 0..RANDOM_GAMES {
        monotone.push(random::monotone_game(complex, rng));
    }
    for v in &monotone {
        let got = phi(v)?;
        monotonicity.record(!got.is_negative(), || {
            let support: Vec<String> = v
                .support()
                .take(4)
                .map(|(f, x)| format!("{f}={x}"))
                .collect();
            format!(
                "negative value {got} on monotone game [{} ...]",
                support.join(", ")
            )
        });
    }

    Ok(PlayerAxioms {
        player: i,
        normalized: table.is_normalized(),
        probability: table.is_probability(),
        linearity,
        star_locality,
        dummy,
        monotonicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::fixtures;
    use crate::values::canonical_shapley_tables;

    #[test]
    fn canonical_tables_pass_everywhere() {
        for (name, d) in fixtures::standard().into_iter().filter(|(_, d)| d.n() <= 5) {
            let tables = canonical_shapley_tables(&d).unwrap();
            let report = axiom_suite(&d, &tables, 7).unwrap();
            assert!(report.all_passed(), "{name}: {report:?}");
        }
    }

    #[test]
    fn negative_weight_breaks_monotonicity() {
        let d = fixtures::triangle_strip();
        let mut tables = canonical_shapley_tables(&d).unwrap();
        let t = Face::of(&[2]);
        let table = tables.get_mut(1).unwrap();
        table.set_weight(t, Rational::new(-1, 4).unwrap());
        table.set_weight(Face::EMPTY, Rational::new(3, 4).unwrap());
        assert!(table.is_normalized() && !table.is_probability());
        let report = axiom_suite(&d, &tables, 7).unwrap();
        let p1 = &report.players[0];
        assert!(!p1.monotonicity.passed);
        assert!(p1.dummy.passed && p1.linearity.passed && p1.star_locality.passed);
        // the first failing probe is the strict carrier game of {2}
        assert!(p1.monotonicity.failure.as_ref().unwrap().contains("-1/4"));
    }

    #[test]
    fn unnormalized_table_breaks_dummy() {
        let d = fixtures::cycle(4);
        let mut tables = canonical_shapley_tables(&d).unwrap();
        tables
            .get_mut(2)
            .unwrap()
            .set_weight(Face::EMPTY, Rational::one());
        let report = axiom_suite(&d, &tables, 0).unwrap();
        let p2 = &report.players[1];
        assert!(!p2.normalized);
        assert!(!p2.dummy.passed);
        assert!(p2
            .dummy
            .failure
            .as_ref()
            .unwrap()
            .contains("dummy value 3/2"));
        assert!(report.players[0].all_passed());
    }
}
