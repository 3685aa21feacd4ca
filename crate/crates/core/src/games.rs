//! Characteristic functions on a complex, carrier and indicator games, and
//! the game predicates used by the axioms.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::symmetry::Permutation;

/// An exact game `v : Δ → ℚ` with `v(∅) = 0`.
///
/// Only nonzero values are stored; every other face of the complex has value 0.
#[derive(Clone, Debug)]
pub struct Game {
    complex: Arc<SimplicialComplex>,
    values: BTreeMap<Face, Rational>,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.complex, &other.complex) && self.values == other.values
    }
}

impl Eq for Game {}

fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Which carrier family: `v_T(S) = [T ⊆ S]` or `v̂_T(S) = [T ⊊ S]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CarrierKind {
    Containing,
    StrictlyContaining,
}

impl Game {
    pub fn zero(complex: Arc<SimplicialComplex>) -> Self {
        Game {
            complex,
            values: BTreeMap::new(),
        }
    }

    /// Builds a game from explicit face values. Zeros are dropped; faces
    /// outside the complex and nonzero `v(∅)` are rejected.
    pub fn new<I>(complex: Arc<SimplicialComplex>, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Face, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (face, value) in values {
            if !complex.contains(face) {
                return Err(Error::GameFaceNotInComplex(face));
            }
            if face.is_empty() {
                if !value.is_zero() {
                    return Err(Error::NonzeroEmptyValue(value.to_string()));
                }
                continue;
            }
            if value.is_zero() {
                map.remove(&face);
            } else {
                map.insert(face, value);
            }
        }
        Ok(Game {
            complex,
            values: map,
        })
    }

    /// Evaluates `f` on every nonempty face.
    pub fn from_fn<F>(complex: Arc<SimplicialComplex>, mut f: F) -> Self
    where
        F: FnMut(Face) -> Rational,
    {
        let values = complex
            .nonempty_faces()
            .map(|s| (s, f(s)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Game { complex, values }
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    /// `v(S)`, zero for faces without a stored value (including faces outside
    /// the complex).
    pub fn value(&self, s: Face) -> Rational {
        self.values.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    /// Stored nonzero values in canonical face order.
    pub fn support(&self) -> impl Iterator<Item = (Face, &Rational)> {
        self.values.iter().map(|(f, x)| (*f, x))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Marginal contribution `v(T ∪ i) - v(T)`.
    pub fn marginal(&self, t: Face, i: Vertex) -> Rational {
        self.value(t.with(i)) - self.value(t)
    }

    /// True iff `v(S) <= v(T)` for every covering pair `S ⊂ T`, `|T| = |S| + 1`.
    pub fn is_monotone(&self) -> bool {
        let n = self.complex.n();
        self.complex.faces().iter().all(|&s| {
            let vs = self.value(s);
            (1..=n)
                .filter(|&j| !s.contains(j))
                .map(|j| s.with(j))
                .filter(|&t| self.complex.contains(t))
                .all(|t| vs <= self.value(t))
        })
    }

    /// True iff `v(T ∪ i) = v(T) + v({i})` for every `T` in the link of `i`.
    pub fn is_dummy(&self, i: Vertex) -> Result<bool> {
        self.complex.require_vertex(i)?;
        let vi = self.value(Face::singleton(i));
        let link = self.complex.link_faces(Face::singleton(i))?;
        Ok(link.into_iter().all(|t| self.marginal(t, i) == vi))
    }

    /// `(π·v)(T) = v(πT)`. `π` must map the complex onto itself.
    pub fn permute(&self, pi: &Permutation) -> Result<Game> {
        if pi.n() != self.complex.n() {
            return Err(Error::InvalidPermutation(format!(
                "permutation of degree {} applied to a complex on {} vertices",
                pi.n(),
                self.complex.n()
            )));
        }
        if let Some(face) = self
            .complex
            .facets()
            .iter()
            .copied()
            .find(|&f| !self.complex.contains(pi.apply_face(f)))
        {
            return Err(Error::PermutationNotSymmetry {
                perm: pi.to_string(),
                face,
            });
        }
        Ok(Game::from_fn(self.complex.clone(), |t| {
            self.value(pi.apply_face(t))
        }))
    }

    /// `a·v + b·w` pointwise.
    pub fn scale_add(&self, other: &Game, a: &Rational, b: &Rational) -> Result<Game> {
        if !same_complex(&self.complex, &other.complex) {
            return Err(Error::ComplexMismatch);
        }
        let mut values = BTreeMap::new();
        for (f, x) in &self.values {
            values.insert(*f, a * x);
        }
        for (f, y) in &other.values {
            let entry = values.entry(*f).or_insert_with(Rational::zero);
            *entry += b * y;
        }
        values.retain(|_, x| !x.is_zero());
        Ok(Game {
            complex: self.complex.clone(),
            values,
        })
    }
}

/// Carrier game `v_T` or `v̂_T` on `complex`.
pub fn carrier_game(complex: &Arc<SimplicialComplex>, t: Face, kind: CarrierKind) -> Result<Game> {
    if !complex.contains(t) {
        return Err(Error::FaceNotInComplex(t));
    }
    match kind {
        CarrierKind::Containing => {
            if t.is_empty() {
                return Err(Error::EmptyCarrierNotAllowed);
            }
            Ok(Game::from_fn(complex.clone(), |s| {
                indicator(t.is_subset(s))
            }))
        }
        CarrierKind::StrictlyContaining => Ok(Game::from_fn(complex.clone(), |s| {
            indicator(t.is_proper_subset(s))
        })),
    }
}

/// `𝟙_T`: value 1 at `T`, 0 elsewhere.
pub fn indicator_game(complex: &Arc<SimplicialComplex>, t: Face) -> Result<Game> {
    if !complex.contains(t) {
        return Err(Error::FaceNotInComplex(t));
    }
    if t.is_empty() {
        return Err(Error::EmptyCarrierNotAllowed);
    }
    Game::new(complex.clone(), [(t, Rational::one())])
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}
