use thiserror::Error;

use crate::complex::{Face, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} is outside the ground set 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0} vertices requested, at most 64 are supported")]
    TooManyVertices(usize),
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Face),
    #[error("the complex is empty")]
    EmptyComplex,
    #[error("vertex {0} is not a vertex of the complex")]
    VertexNotInComplex(Vertex),

    #[error("carrier game v_T needs a nonempty T")]
    EmptyCarrierNotAllowed,
    #[error("v(empty set) must be 0, got {0}")]
    NonzeroEmptyValue(String),
    #[error("game assigns a value to face {0}, which is not in the complex")]
    GameFaceNotInComplex(Face),
    #[error("games are defined on different complexes")]
    ComplexMismatch,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation {perm} maps face {face} outside the complex")]
    PermutationNotSymmetry { perm: String, face: Face },
    #[error("exhaustive symmetry search supports n <= {limit}, got n = {n}")]
    GroundSetTooLarge { n: usize, limit: usize },
    #[error("the complex does not have pure links (vertex {0})")]
    NotPureLinks(Vertex),
    #[error("symmetry hypothesis not met: generator {generator} maps {face} outside the complex")]
    HypothesisNotMet { generator: String, face: Face },
    #[error("the complex is not Shapley: vertices {0} and {1} have different link f-vectors")]
    NotShapley(Vertex, Vertex),

    #[error("table is for player {found}, expected player {expected}")]
    PlayerMismatch { expected: Vertex, found: Vertex },
    #[error("table of player {player} has key {face} outside the link")]
    KeyOutsideLink { player: Vertex, face: Face },
    #[error("no probability table for player {0}")]
    MissingPlayerTable(Vertex),
    #[error("permutation enumeration supports at most {limit} players, got {found}")]
    TooManyPlayers { found: usize, limit: usize },
    #[error("player {player} is not in face {face}")]
    PlayerNotInFace { player: Vertex, face: Face },

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable code, used as the CLI error prefix.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::ParseRational(_) => "PARSE_RATIONAL",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::VertexOutOfRange { .. } => "VERTEX_OUT_OF_RANGE",
            Error::TooManyVertices(_) => "TOO_MANY_VERTICES",
            Error::FaceNotInComplex(_) => "FACE_NOT_IN_COMPLEX",
            Error::EmptyComplex => "EMPTY_COMPLEX",
            Error::VertexNotInComplex(_) => "VERTEX_NOT_IN_COMPLEX",
            Error::EmptyCarrierNotAllowed => "EMPTY_CARRIER_NOT_ALLOWED",
            Error::NonzeroEmptyValue(_) => "NONZERO_EMPTY_VALUE",
            Error::GameFaceNotInComplex(_) => "GAME_FACE_NOT_IN_COMPLEX",
            Error::ComplexMismatch => "COMPLEX_MISMATCH",
            Error::InvalidPermutation(_) => "INVALID_PERMUTATION",
            Error::PermutationNotSymmetry { .. } => "PERMUTATION_NOT_SYMMETRY",
            Error::GroundSetTooLarge { .. } => "GROUND_SET_TOO_LARGE",
            Error::NotPureLinks(_) => "NOT_PURE_LINKS",
            Error::HypothesisNotMet { .. } => "HYPOTHESIS_NOT_MET",
            Error::NotShapley(..) => "NOT_SHAPLEY",
            Error::PlayerMismatch { .. } => "PLAYER_MISMATCH",
            Error::KeyOutsideLink { .. } => "KEY_OUTSIDE_LINK",
            Error::MissingPlayerTable(_) => "MISSING_PLAYER_TABLE",
            Error::TooManyPlayers { .. } => "TOO_MANY_PLAYERS",
            Error::PlayerNotInFace { .. } => "PLAYER_NOT_IN_FACE",
            Error::Format(_) => "FORMAT",
        }
    }

    /// True for errors caused by malformed input rather than by a violated
    /// mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ParseRational(_)
                | Error::Format(_)
                | Error::VertexOutOfRange { .. }
                | Error::TooManyVertices(_)
                | Error::GameFaceNotInComplex(_)
                | Error::NonzeroEmptyValue(_)
                | Error::InvalidPermutation(_)
                | Error::DimensionMismatch { .. }
        )
    }
}
