//! JSON file formats.
//!
//! Complex: `{"n": 5, "facets": [[1,2,3], [2,3,5]]}`.
//! Game: `{"values": {"1,2,3": "5/2", "2": "-1"}}`, keys are comma-joined
//! sorted vertex ids; the empty key is rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexSpec, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::games::Game;

// serde_json messages already end in "at line L column C".
fn json_error(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let spec: ComplexSpec = serde_json::from_str(text).map_err(json_error)?;
    SimplicialComplex::from_spec(&spec)
}

pub fn complex_to_json(complex: &SimplicialComplex) -> String {
    serde_json::to_string(&complex.to_spec()).expect("plain data serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    values: BTreeMap<String, Rational>,
}

pub fn parse_game(text: &str, complex: &Arc<SimplicialComplex>) -> Result<Game> {
    let file: GameFile = serde_json::from_str(text).map_err(json_error)?;
    let mut values = Vec::with_capacity(file.values.len());
    for (key, value) in file.values {
        if key.trim().is_empty() {
            return Err(Error::Format("the empty face cannot carry a value".into()));
        }
        let face = Face::parse_key(&key, complex.n())?;
        if face.len() != key.split(',').count() {
            return Err(Error::Format(format!(
                "repeated vertex in face key {key:?}"
            )));
        }
        values.push((face, value));
    }
    Game::new(complex.clone(), values)
}

pub fn game_to_json(game: &Game) -> String {
    let file = GameFile {
        values: game.support().map(|(f, x)| (f.key(), x.clone())).collect(),
    };
    serde_json::to_string(&file).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn complex_file() {
        let d = parse_complex(r#"{"n": 5, "facets": [[1,2,3],[2,3,5],[3,4,5]]}"#).unwrap();
        assert_eq!(d, fixtures::triangle_strip());
        assert_eq!(parse_complex(&complex_to_json(&d)).unwrap(), d);
        assert!(matches!(
            parse_complex(r#"{"n": 2, "facets": [[1,3]]}"#),
            Err(Error::VertexOutOfRange { .. })
        ));
        let err = parse_complex("{\"n\": 2,\n \"facets\": [[1,2]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn game_file() {
        let d = Arc::new(fixtures::triangle_strip());
        let g = parse_game(r#"{"values": {"1,2,3": "5/2", "2": "-1", "3,4": "0"}}"#, &d).unwrap();
        assert_eq!(g.value(Face::of(&[1, 2, 3])), "5/2".parse().unwrap());
        assert_eq!(g.value(Face::of(&[2])), Rational::from(-1));
        assert_eq!(g.support().count(), 2);
        assert_eq!(parse_game(&game_to_json(&g), &d).unwrap(), g);
        assert_eq!(game_to_json(&g), r#"{"values":{"1,2,3":"5/2","2":"-1"}}"#);
    }

    #[test]
    fn game_file_errors() {
        let d = Arc::new(fixtures::triangle_strip());
        assert!(matches!(
            parse_game(r#"{"values": {"": "1"}}"#, &d),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            parse_game(r#"{"values": {"1,4": "1"}}"#, &d),
            Err(Error::GameFaceNotInComplex(_))
        ));
        assert!(parse_game(r#"{"values": {"1,1": "1"}}"#, &d).is_err());
        assert!(parse_game(r#"{"values": {"1": "x"}}"#, &d).is_err());
        assert!(parse_game(r#"{"values": {"9": "1"}}"#, &d).is_err());
    }
}
