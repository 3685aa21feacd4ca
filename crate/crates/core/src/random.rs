//! Seeded generators for random rational games. ChaCha8 keeps streams
//! identical across platforms and crate versions for a given seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::Result;
use crate::exactnum::Rational;
use crate::games::Game;

pub type GameRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> GameRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p` in `-20..=20`, `q` in `1..=12`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let p: i64 = rng.gen_range(-20..=20);
    let q: i64 = rng.gen_range(1..=12);
    Rational::new(p, q).expect("q > 0")
}

/// Nonnegative `p/q` with `p` in `0..=20`.
pub fn nonnegative_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let p: i64 = rng.gen_range(0..=20);
    let q: i64 = rng.gen_range(1..=12);
    Rational::new(p, q).expect("q > 0")
}

/// Independent random value on every nonempty face.
pub fn game<R: Rng + ?Sized>(complex: &Arc<SimplicialComplex>, rng: &mut R) -> Game {
    Game::from_fn(complex.clone(), |_| rational(rng))
}

/// Monotone game built bottom-up: each face gets the largest value among its
/// codimension-one subfaces plus a nonnegative increment.
pub fn monotone_game<R: Rng + ?Sized>(complex: &Arc<SimplicialComplex>, rng: &mut R) -> Game {
    let mut values: std::collections::HashMap<Face, Rational> = std::collections::HashMap::new();
    values.insert(Face::EMPTY, Rational::zero());
    // faces() is ordered by cardinality, so subfaces are filled first
    for &s in complex.faces().iter().skip(1) {
        let floor = s
            .vertices()
            .map(|v| values[&s.without(v)].clone())
            .max()
            .expect("nonempty face");
        values.insert(s, floor + nonnegative_rational(rng));
    }
    Game::from_fn(complex.clone(), |s| values[&s].clone())
}

/// A random game in which `player` is a dummy: values off the star of the
/// player are free, and `v(T ∪ i) = v(T) + v({i})` on the link.
pub fn dummy_game<R: Rng + ?Sized>(
    complex: &Arc<SimplicialComplex>,
    player: Vertex,
    rng: &mut R,
) -> Result<Game> {
    complex.require_vertex(player)?;
    let own = rational(rng);
    let base: std::collections::HashMap<Face, Rational> = complex
        .faces()
        .iter()
        .filter(|f| !f.contains(player))
        .map(|&f| {
            (
                f,
                if f.is_empty() {
                    Rational::zero()
                } else {
                    rational(rng)
                },
            )
        })
        .collect();
    Ok(Game::from_fn(complex.clone(), |s| {
        if s.contains(player) {
            &base[&s.without(player)] + &own
        } else {
            base[&s].clone()
        }
    }))
}
