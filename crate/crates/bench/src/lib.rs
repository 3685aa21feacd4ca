//! Inputs shared by the benchmarks: named complexes with one seeded game each.

use std::sync::Arc;

use cxgame::{fixtures, random, Game, SimplicialComplex};

pub struct Workload {
    pub name: &'static str,
    pub complex: Arc<SimplicialComplex>,
    pub game: Game,
}

fn workload(name: &'static str, complex: SimplicialComplex, seed: u64) -> Workload {
    let complex = Arc::new(complex);
    let game = random::game(&complex, &mut random::seeded(seed));
    Workload {
        name,
        complex,
        game,
    }
}

/// Value computations, from small to a few thousand faces.
pub fn value_workloads() -> Vec<Workload> {
    vec![
        workload("strip", fixtures::triangle_strip(), 1),
        workload("cycle-8", fixtures::cycle(8), 2),
        workload("petersen", fixtures::petersen(), 3),
        workload("simplex-8", fixtures::simplex(8), 4),
        workload("skeleton-10-3", fixtures::simplex(10).skeleton(3), 5),
    ]
}

/// Symmetry-group searches; the full simplex is the worst case for pruning.
pub fn symmetry_workloads() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("cycle-8", fixtures::cycle(8)),
        ("strip", fixtures::triangle_strip()),
        ("simplex-6", fixtures::simplex(6)),
        ("petersen", fixtures::petersen()),
    ]
}
