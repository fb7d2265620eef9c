//! Shared fixtures for the benchmarks.

use selfmate_core::gadget::{build_gadget, GadgetKind};
use selfmate_core::{parse_xfen, DnfFormula, G3State, Literal, Player, Position, Square};

pub const INITIAL: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w - - 0 1";
pub const PAULY: &str = "8x8 KB3N2/P1P1p1P1/5P1k/4P2p/7P/8/6B1/7b w - - 0 1";
pub const BURBACH: &str = "8x8 1R4B1/5r2/5P1Q/p5r1/P7/KN6/1p1P1p1P/1k2b2R w - - 0 1";

pub fn position(text: &str) -> Position {
    parse_xfen(text).expect("fixture parses")
}

/// The selfmate gadget with the white queen on a5.
pub fn selfmate_entry() -> Position {
    build_gadget(
        GadgetKind::Selfmate,
        Square::new(1, 1),
        GadgetKind::Selfmate.figure_board(),
    )
    .and_then(|g| g.entry_position(0))
    .expect("figure builds")
}

/// A G3 chain on `n` variables per side: player I loses when any adjacent
/// pair of its variables is both set.
pub fn g3_chain(n: usize) -> G3State {
    let xs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
    let pairs = |v: &[String]| {
        DnfFormula::new(
            v.windows(2)
                .map(|w| vec![Literal::pos(&w[0]), Literal::pos(&w[1])])
                .collect(),
        )
    };
    let i_lose = pairs(&xs);
    let ii_lose = DnfFormula::new(
        xs.iter()
            .zip(&ys)
            .map(|(x, y)| vec![Literal::neg(x), Literal::pos(y)])
            .collect(),
    );
    G3State::new(
        Player::I,
        xs,
        ys,
        i_lose,
        ii_lose,
        Default::default(),
        false,
    )
    .expect("valid chain")
}
