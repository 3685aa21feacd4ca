//! Small named complexes used by tests, benchmarks and the CLI.

use crate::complex::{SimplicialComplex, Vertex};

fn build(n: usize, facets: &[&[Vertex]]) -> SimplicialComplex {
    let lists: Vec<Vec<Vertex>> = facets.iter().map(|f| f.to_vec()).collect();
    SimplicialComplex::from_vertex_lists(n, &lists).expect("fixture is well formed")
}

/// Three triangles `{1,2,3}, {2,3,5}, {3,4,5}` on five vertices.
pub fn triangle_strip() -> SimplicialComplex {
    build(5, &[&[1, 2, 3], &[2, 3, 5], &[3, 4, 5]])
}

/// Two triangles `{1,2,3}, {3,4,5}` sharing vertex 3.
pub fn bowtie() -> SimplicialComplex {
    build(5, &[&[1, 2, 3], &[3, 4, 5]])
}

pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::simplex(n).expect("n <= 64")
}

/// Boundary of the `n`-vertex simplex: every proper subset of `[n]`.
pub fn simplex_boundary(n: usize) -> SimplicialComplex {
    simplex(n).skeleton(n.saturating_sub(1))
}

/// Cycle graph `C_n` with edges `{i, i+1}` and `{1, n}`.
pub fn cycle(n: usize) -> SimplicialComplex {
    let edges: Vec<Vec<Vertex>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
    SimplicialComplex::from_vertex_lists(n, &edges).expect("fixture is well formed")
}

/// Path graph `1 - 2 - ... - n`.
pub fn path(n: usize) -> SimplicialComplex {
    let edges: Vec<Vec<Vertex>> = (1..n).map(|i| vec![i, i + 1]).collect();
    SimplicialComplex::from_vertex_lists(n, &edges).expect("fixture is well formed")
}

/// The Petersen graph: outer 5-cycle on 1..5, inner pentagram on 6..10,
/// spokes `{i, i+5}`.
pub fn petersen() -> SimplicialComplex {
    let mut edges = Vec::new();
    for i in 1..=5 {
        edges.push(vec![i, i % 5 + 1]);
        edges.push(vec![i + 5, (i + 1) % 5 + 6]);
        edges.push(vec![i, i + 5]);
    }
    SimplicialComplex::from_vertex_lists(10, &edges).expect("fixture is well formed")
}

/// The fixture set exercised by the acceptance suite, with display names.
pub fn standard() -> Vec<(String, SimplicialComplex)> {
    let mut out = vec![
        ("strip".to_string(), triangle_strip()),
        ("bowtie".to_string(), bowtie()),
    ];
    for n in 1..=5 {
        out.push((format!("simplex-{n}"), simplex(n)));
    }
    out.push(("boundary-4".to_string(), simplex_boundary(4)));
    out.push(("skeleton-5-2".to_string(), simplex(5).skeleton(2)));
    out.push(("cycle-4".to_string(), cycle(4)));
    out.push(("cycle-5".to_string(), cycle(5)));
    out.push(("petersen".to_string(), petersen()));
    out
}

/// Looks up a fixture by the names used in [`standard`], plus `cycle-N`,
/// `path-N`, `simplex-N` and `boundary-N` for any `N`.
pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    match name {
        "strip" => return Some(triangle_strip()),
        "bowtie" => return Some(bowtie()),
        "petersen" => return Some(petersen()),
        "skeleton-5-2" => return Some(simplex(5).skeleton(2)),
        _ => {}
    }
    let (kind, arg) = name.rsplit_once('-')?;
    let n: usize = arg.parse().ok()?;
    if n == 0 || n > 64 {
        return None;
    }
    match kind {
        "simplex" => Some(simplex(n)),
        "boundary" => Some(simplex_boundary(n)),
        "cycle" if n >= 3 => Some(cycle(n)),
        "path" => Some(path(n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FVector;

    #[test]
    fn petersen_is_cubic() {
        let p = petersen();
        assert_eq!(p.f_vector().unwrap(), FVector(vec![1, 10, 15]));
        for (_, f) in p.vertex_link_f_vectors() {
            assert_eq!(f, FVector(vec![1, 3]));
        }
    }

    #[test]
    fn named_lookup() {
        assert_eq!(by_name("cycle-6").unwrap(), cycle(6));
        assert_eq!(
            by_name("boundary-4").unwrap().f_vector().unwrap(),
            FVector(vec![1, 4, 6, 4])
        );
        assert!(by_name("cycle-2").is_none());
        assert!(by_name("nonsense").is_none());
        for (name, d) in standard() {
            assert_eq!(by_name(&name).unwrap(), d, "{name}");
        }
    }
}
