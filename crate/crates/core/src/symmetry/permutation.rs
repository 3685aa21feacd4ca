use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, Vertex};
use crate::error::{Error, Result};

/// A bijection of `[n]`. `images[k]` is the image of vertex `k + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PermutationJson", into = "PermutationJson")]
pub struct Permutation {
    images: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    perm: Vec<Vertex>,
}

impl TryFrom<PermutationJson> for Permutation {
    type Error = Error;
    fn try_from(value: PermutationJson) -> Result<Self> {
        Permutation::from_images(value.perm)
    }
}

impl From<Permutation> for PermutationJson {
    fn from(p: Permutation) -> Self {
        PermutationJson { perm: p.images }
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Validates that `images` is a permutation of `1..=images.len()`.
    pub fn from_images(images: Vec<Vertex>) -> Result<Self> {
        let n = images.len();
        if n > crate::complex::MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: Vertex, b: Vertex) -> Result<Self> {
        Self::from_pairs(n, &[(a, b)])
    }

    /// Product of the disjoint swaps `(a b)` listed in `pairs`.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut images: Vec<Vertex> = (1..=n).collect();
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::VertexOutOfRange {
                    vertex: a.max(b),
                    n,
                });
            }
            images.swap(a - 1, b - 1);
        }
        Self::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vertex] {
        &self.images
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.images[v - 1]
    }

    /// Image of a face; vertices beyond `n` are left fixed.
    pub fn apply_face(&self, face: Face) -> Face {
        let bits = face
            .vertices()
            .map(|v| if v <= self.n() { self.apply(v) } else { v })
            .fold(0u64, |acc, v| acc | 1u64 << (v - 1));
        Face::from_bits(bits)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (k, &img) in self.images.iter().enumerate() {
            images[img - 1] = k + 1;
        }
        Permutation { images }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.n(),
            other.n(),
            "composing permutations of different degree"
        );
        Permutation {
            images: other.images.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Disjoint cycles of length >= 2, each starting at its smallest vertex.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::new();
        for start in 1..=self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_pairs(5, &[(1, 4), (2, 5)]).unwrap();
        assert_eq!(p.to_string(), "(1 4)(2 5)");
        assert_eq!(p.images(), &[4, 5, 3, 1, 2]);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        let c = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(c.to_string(), "(1 2 3)");
    }

    #[test]
    fn group_ops() {
        let c = Permutation::from_images(vec![2, 3, 1, 4]).unwrap();
        assert!(c.compose(&c.inverse()).is_identity());
        let t = Permutation::transposition(4, 1, 2).unwrap();
        // apply t first, then c
        assert_eq!(c.compose(&t).apply(1), c.apply(2));
        assert_eq!(c.apply_face(Face::of(&[1, 4])), Face::of(&[2, 4]));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_images(vec![3, 1]).is_err());
    }

    #[test]
    fn json_form() {
        let p = Permutation::from_images(vec![2, 1, 3]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"perm":[2,1,3]}"#);
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>(r#"{"perm":[2,2]}"#).is_err());
    }
}
