use thiserror::Error;

use crate::types::{Color, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositionError {
    #[error("malformed square `{0}`")]
    BadSquare(String),
    #[error("malformed board size `{0}`")]
    BadSizeText(String),
    #[error("unsupported board size {files}x{ranks} (files 4..=26, ranks 4..=64)")]
    BadSize { files: u8, ranks: u8 },
    #[error("square {0} is off the board")]
    OffBoard(Square),
    #[error("expected exactly one {color} king, found {count}")]
    KingCount { color: Color, count: usize },
    #[error("the side not to move ({0}) is in check")]
    OpponentInCheck(Color),
    #[error("invalid en-passant target {0}")]
    BadEnPassant(Square),
    #[error("fullmove number must be at least 1")]
    BadFullmove,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XfenError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("castling field must be `-`, found `{0}`")]
    Castling(String),
    #[error(transparent)]
    Invalid(#[from] PositionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("cannot parse move `{0}`")]
    Parse(String),
    #[error("illegal move `{0}`")]
    Illegal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StipulationError {
    #[error("cannot parse stipulation `{0}` (expected #n, s#n, r#n or semi-r#n)")]
    Parse(String),
    #[error("stipulation horizon must be at least 1")]
    ZeroHorizon,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("stipulation is for {forcing} to play but {to_move} is to move")]
    SideMismatch { forcing: Color, to_move: Color },
    #[error("`{0}` is not a playable move in this position")]
    NotPlayable(String),
    #[error("node cap of {0} exceeded")]
    NodeCap(u64),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G3Error {
    #[error("variable `{0}` has no value in the assignment")]
    UnboundVariable(String),
    #[error("variable `{0}` is not declared for either player")]
    UnknownVariable(String),
    #[error("variable `{0}` is declared for both players")]
    SharedVariable(String),
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("clause of width {0} exceeds the 12-literal bound")]
    ClauseTooWide(usize),
    #[error("instance has {count} variables, limit is {limit}")]
    TooLarge { count: usize, limit: usize },
    #[error("turn must be 1 or 2, found {0}")]
    BadTurn(u8),
    #[error("instance json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("unknown gadget kind `{0}`")]
    UnknownKind(String),
    #[error("gadget footprint {width}x{height} at {anchor} does not fit on a {board} board")]
    Overflow {
        width: u8,
        height: u8,
        anchor: Square,
        board: String,
    },
    #[error("square {0} is occupied in both the position and the gadget")]
    Collision(Square),
    #[error("gadget is built for a {gadget} board, position is {position}")]
    BoardMismatch { gadget: String, position: String },
    #[error(transparent)]
    Position(#[from] PositionError),
}
