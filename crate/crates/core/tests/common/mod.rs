//! Definition-level oracles shared by the integration tests. Nothing here
//! calls the library's own link/star/f-vector or elimination code.

#![allow(dead_code)]

use cxgame::{Face, Rational, SimplicialComplex};

/// Membership by the definition: a subset of one of the listed facets.
pub struct Brute {
    pub n: usize,
    pub facets: Vec<u64>,
}

impl Brute {
    pub fn new(complex: &SimplicialComplex) -> Self {
        Brute {
            n: complex.n(),
            facets: complex.facets().iter().map(|f| f.bits()).collect(),
        }
    }

    pub fn member(&self, s: u64) -> bool {
        self.facets.iter().any(|&f| s & !f == 0)
    }

    /// Every subset of `[n]`, by increasing mask.
    pub fn all_subsets(&self) -> impl Iterator<Item = u64> {
        0..(1u64 << self.n)
    }

    pub fn faces(&self) -> Vec<u64> {
        self.all_subsets().filter(|&s| self.member(s)).collect()
    }

    pub fn link(&self, s: u64) -> Vec<u64> {
        self.all_subsets()
            .filter(|&t| t & s == 0 && self.member(t | s))
            .collect()
    }

    pub fn star(&self, s: u64) -> Vec<u64> {
        let containing: Vec<u64> = self.faces().into_iter().filter(|&t| s & !t == 0).collect();
        self.all_subsets()
            .filter(|&a| containing.iter().any(|&t| a & !t == 0))
            .collect()
    }

    pub fn f_vector(&self, faces: &[u64]) -> Vec<u64> {
        let top = faces
            .iter()
            .map(|f| f.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut out = vec![0u64; top + 1];
        for f in faces {
            out[f.count_ones() as usize] += 1;
        }
        out
    }

    pub fn ext(&self, t: u64) -> Vec<usize> {
        (1..=self.n)
            .filter(|&j| t & (1 << (j - 1)) == 0 && self.member(t | 1 << (j - 1)))
            .collect()
    }
}

pub fn sorted_bits(faces: &[Face]) -> Vec<u64> {
    let mut v: Vec<u64> = faces.iter().map(|f| f.bits()).collect();
    v.sort_unstable();
    v
}

/// Rank of a rational matrix by elimination with last-row pivoting, written
/// independently of the library solver.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).rev().find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for k in r + 1..m.len() {
            if m[k][c].is_zero() {
                continue;
            }
            let factor = &m[k][c] / &m[r][c];
            let (top, rest) = m.split_at_mut(k);
            for (x, pivot) in rest[0][c..].iter_mut().zip(&top[r][c..]) {
                *x = &*x - &(&factor * pivot);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// True iff `A x = b` has no solution: rank(A) < rank([A | b]).
pub fn inconsistent(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    rank(a) < rank(&augmented)
}

pub fn matrix_rows(m: &cxgame::RationalMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}
