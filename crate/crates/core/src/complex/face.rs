use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set; faces are 64-bit vertex masks.
pub const MAX_VERTICES: usize = 64;

/// A vertex identifier in `1..=n`.
pub type Vertex = usize;

/// A finite set of vertices, stored as a bitmask where bit `v - 1` marks
/// vertex `v`.
///
/// Ordering is canonical: by cardinality first, then lexicographic on the
/// sorted vertex list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: Vertex) -> Face {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1u64 << (v - 1))
    }

    /// Builds a face from vertex ids, rejecting ids outside `1..=n`.
    /// Repeated ids collapse.
    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I, n: usize) -> Result<Face> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > n || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(Face(bits))
    }

    /// Unchecked convenience constructor for literals; ids must be in `1..=64`.
    pub fn of(vertices: &[Vertex]) -> Face {
        Face::from_vertices(vertices.iter().copied(), MAX_VERTICES).expect("vertex id out of range")
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: Vertex) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Face) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: Vertex) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: Vertex) -> Face {
        self.difference(Face::singleton(v))
    }

    /// Largest vertex id, or 0 for the empty face.
    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> impl Iterator<Item = Vertex> + Clone {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    /// All subsets, including `EMPTY` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = Some(full);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(Face(cur))
        })
    }

    /// Comma-joined sorted vertex ids, the key form used by game files.
    pub fn key(self) -> String {
        self.vertices()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(key: &str, n: usize) -> Result<Face> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Face::EMPTY);
        }
        let ids = key
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad face key {key:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Face::from_vertices(ids, n)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // self holds the smallest differing vertex
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        Face::from_vertices(ids, MAX_VERTICES).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `BTreeMap<Face, V>`: JSON objects need string keys, so
/// faces are written in their `"1,2,3"` key form (`""` for the empty face).
pub mod keyed {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{Face, MAX_VERTICES};

    pub fn serialize<V: Serialize, S: Serializer>(
        map: &BTreeMap<Face, V>,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(map.iter().map(|(f, v)| (f.key(), v)))
    }

    pub fn deserialize<'de, V: Deserialize<'de>, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<BTreeMap<Face, V>, D::Error> {
        BTreeMap::<String, V>::deserialize(deserializer)?
            .into_iter()
            .map(|(k, v)| {
                Ok((
                    Face::parse_key(&k, MAX_VERTICES).map_err(serde::de::Error::custom)?,
                    v,
                ))
            })
            .collect()
    }
}
