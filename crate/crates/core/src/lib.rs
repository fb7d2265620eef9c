//! Generalized F×R chess, a stipulation solver for direct, self, reflex and
//! semi-reflex mates, the formula game G3, and the terminal gadgets used to
//! carry the G3 hardness reduction over to these stipulations.

pub mod error;
pub mod g3;
pub mod gadget;
pub mod moves;
pub mod perft;
pub mod position;
pub mod solver;
pub mod stipulation;
pub mod types;
pub mod xfen;

pub use error::{
    G3Error, GadgetError, MoveError, PositionError, SolveError, StipulationError, XfenError,
};
pub use g3::{
    eval_dnf, g3_moves, solve_g3, solve_g3_with, DnfFormula, G3Options, G3Solution, G3State,
    G3Verdict, Literal, Player,
};
pub use gadget::{
    build_gadget, merge_into, verify_gadget, verify_gadget_at, GadgetKind, GadgetSpec,
    VerificationReport,
};
pub use moves::Move;
pub use position::{Position, StateKey};
pub use solver::{refute, solve, solve_unbounded, SearchOptions, SolutionTree, TryOutcome};
pub use stipulation::{playable_moves, Stipulation, StipulationKind};
pub use types::{BoardSize, Color, Piece, PieceKind, Square};
pub use xfen::{parse_xfen, serialize_xfen};
