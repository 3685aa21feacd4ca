use std::collections::BTreeMap;

use serde::Serialize;

use super::{group_value, TableSet};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::games::Game;
use crate::symmetry::classify_shapley;

/// Coefficients `a_T` with `Σ_i φ_i(v) = Σ_T a_T v(T)`, one per nonempty face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EfficiencyCoefficients {
    #[serde(with = "crate::complex::keyed")]
    pub coefficients: BTreeMap<Face, Rational>,
}

impl EfficiencyCoefficients {
    pub fn get(&self, t: Face) -> Option<&Rational> {
        self.coefficients.get(&t)
    }

    /// `Σ_T a_T v(T)`.
    pub fn evaluate(&self, v: &Game) -> Rational {
        v.support()
            .filter_map(|(t, x)| self.coefficients.get(&t).map(|a| a * x))
            .sum()
    }

    /// Faces where the two coefficient maps disagree.
    pub fn differences(&self, other: &EfficiencyCoefficients) -> Vec<Face> {
        let zero = Rational::zero();
        self.coefficients
            .keys()
            .chain(other.coefficients.keys())
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|t| {
                self.coefficients.get(t).unwrap_or(&zero)
                    != other.coefficients.get(t).unwrap_or(&zero)
            })
            .collect()
    }
}

/// `a_T = Σ_{i ∈ T} p^i_{T∖i} − Σ_{j ∈ Ext(T)} p^j_T`; the second sum is
/// empty on facets.
pub fn efficiency_coefficients(
    complex: &SimplicialComplex,
    tables: &TableSet,
) -> Result<EfficiencyCoefficients> {
    tables.require_all(complex)?;
    let mut coefficients = BTreeMap::new();
    for t in complex.nonempty_faces() {
        let mut a = Rational::zero();
        for i in t.vertices() {
            a += tables.get(i)?.weight(t.without(i));
        }
        for j in complex.extension_set(t)? {
            a -= tables.get(j)?.weight(t);
        }
        coefficients.insert(t, a);
    }
    Ok(EfficiencyCoefficients { coefficients })
}

/// The closed-form coefficients of the generalized Shapley value on a
/// Shapley complex `s = (s_0, ..., s_{r−1})` with pure links:
/// `a_F = 1/s_{r−1}` on facets and
/// `a_T = (1/r)(|T|/s_{|T|−1} − ext(T)/s_{|T|})` on smaller faces.
///
/// The facet entry uses `s_{r−1}`, the last entry of `s`, which is what the
/// per-facet sum `r · 1/(r s_{r−1})` produces.
pub fn shapley_efficiency_closed_form(
    complex: &SimplicialComplex,
) -> Result<EfficiencyCoefficients> {
    if let Some(v) = complex.first_impure_vertex()? {
        return Err(Error::NotPureLinks(v));
    }
    let class = classify_shapley(complex)?;
    let Some(s) = class.s_vector else {
        let (a, b) = class.witness.expect("non-Shapley has a witness");
        return Err(Error::NotShapley(a, b));
    };
    let r = complex.rank();
    let s_at = |k: usize| Rational::from(s.count(k));
    let inv_r = Rational::recip_of(r).expect("r > 0 when vertices exist");
    let mut coefficients = BTreeMap::new();
    for t in complex.nonempty_faces() {
        let a = if complex.is_facet(t) {
            s_at(r - 1).recip()?
        } else {
            let k = t.len();
            let ext = complex.extension_set(t)?.len();
            let lhs = Rational::from(k).checked_div(&s_at(k - 1))?;
            let rhs = Rational::from(ext).checked_div(&s_at(k))?;
            &inv_r * &(lhs - rhs)
        };
        coefficients.insert(t, a);
    }
    Ok(EfficiencyCoefficients { coefficients })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EfficiencyCheck {
    /// `Σ_i φ_i(v)` computed player by player.
    pub total_value: Rational,
    /// `Σ_T a_T v(T)` from the constructed coefficients.
    pub coefficient_sum: Rational,
    pub residual: Rational,
}

impl EfficiencyCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Compares the direct total with the coefficient form. The residual is zero
/// for every input; a nonzero residual indicates a bug.
pub fn check_efficiency_identity(
    complex: &SimplicialComplex,
    tables: &TableSet,
    v: &Game,
) -> Result<EfficiencyCheck> {
    let coefficients = efficiency_coefficients(complex, tables)?;
    let total_value = group_value(v, tables)?.total();
    let coefficient_sum = coefficients.evaluate(v);
    Ok(EfficiencyCheck {
        residual: &total_value - &coefficient_sum,
        total_value,
        coefficient_sum,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;
    use crate::random;
    use crate::values::{canonical_shapley_tables, ProbabilityTable};

    #[test]
    fn classical_efficiency_on_the_simplex() {
        for n in 1..=5 {
            let d = fixtures::simplex(n);
            let a = efficiency_coefficients(&d, &canonical_shapley_tables(&d).unwrap()).unwrap();
            for (t, x) in &a.coefficients {
                let expected = if t.len() == n {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(x, &expected, "n={n} T={t}");
            }
        }
    }

    #[test]
    fn closed_form_matches_constructed() {
        for name in [
            "simplex-4",
            "boundary-4",
            "skeleton-5-2",
            "cycle-4",
            "cycle-5",
            "petersen",
        ] {
            let d = fixtures::by_name(name).unwrap();
            let built =
                efficiency_coefficients(&d, &canonical_shapley_tables(&d).unwrap()).unwrap();
            let closed = shapley_efficiency_closed_form(&d).unwrap();
            assert!(built.differences(&closed).is_empty(), "{name}");
        }
    }

    #[test]
    fn closed_form_gates() {
        assert!(matches!(
            shapley_efficiency_closed_form(&fixtures::bowtie()),
            Err(Error::NotShapley(1, 3))
        ));
        let mixed = SimplicialComplex::from_vertex_lists(3, &[vec![1, 2], vec![3]]).unwrap();
        assert!(matches!(
            shapley_efficiency_closed_form(&mixed),
            Err(Error::NotPureLinks(3))
        ));
    }

    #[test]
    fn zero_tables() {
        let d = fixtures::triangle_strip();
        let tables: TableSet = d
            .vertices()
            .into_iter()
            .map(|i| ProbabilityTable::new(&d, i, []).unwrap())
            .collect();
        let a = efficiency_coefficients(&d, &tables).unwrap();
        assert_eq!(a.coefficients.len(), 15);
        assert!(a.coefficients.values().all(Rational::is_zero));
    }

    #[test]
    fn identity_holds_on_random_games() {
        for (name, d) in fixtures::standard() {
            let d = Arc::new(d);
            let tables = canonical_shapley_tables(&d).unwrap();
            let mut rng = random::seeded(5);
            for _ in 0..5 {
                let v = random::game(&d, &mut rng);
                let check = check_efficiency_identity(&d, &tables, &v).unwrap();
                assert!(check.holds(), "{name}");
            }
        }
    }

    #[test]
    fn identity_holds_for_arbitrary_signed_tables() {
        let d = Arc::new(fixtures::bowtie());
        let mut rng = random::seeded(9);
        let tables: TableSet = d
            .vertices()
            .into_iter()
            .map(|i| {
                let link = d.link_faces(Face::singleton(i)).unwrap();
                ProbabilityTable::new(
                    &d,
                    i,
                    link.into_iter().map(|t| (t, random::rational(&mut rng))),
                )
                .unwrap()
            })
            .collect();
        let v = random::game(&d, &mut rng);
        assert!(check_efficiency_identity(&d, &tables, &v).unwrap().holds());
    }

    #[test]
    fn coefficients_serialize_with_face_keys() {
        let d = fixtures::cycle(4);
        let json = serde_json::to_string(&shapley_efficiency_closed_form(&d).unwrap()).unwrap();
        assert!(
            json.starts_with(r#"{"coefficients":{"1":"0","2":"0""#),
            "{json}"
        );
        assert!(json.contains(r#""1,2":"1/2""#));
    }

    #[test]
    fn cycle_facet_coefficient() {
        let d = fixtures::cycle(4);
        let closed = shapley_efficiency_closed_form(&d).unwrap();
        assert_eq!(
            closed.get(Face::of(&[1, 2])),
            Some(&Rational::new(1, 2).unwrap())
        );
        // vertices: (1/2)(1/1 - 2/2) = 0
        assert_eq!(closed.get(Face::of(&[1])), Some(&Rational::zero()));
    }
}
