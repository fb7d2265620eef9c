//! Placement data for the four terminal gadgets, with anchor a1.

use serde::{Deserialize, Serialize};

use crate::types::{Color, PieceKind};

pub(super) struct Figure {
    pub files: u8,
    pub ranks: u8,
    /// (colour, kind, squares)
    pub pieces: &'static [(Color, PieceKind, &'static str)],
    /// Pieces added so both kings are present; not part of the gadget.
    pub harness: &'static [(Color, PieceKind, &'static str)],
    /// Gadget pieces allowed to move.
    pub exceptions: &'static [&'static str],
    pub entries: &'static [EntryData],
}

pub(super) struct EntryData {
    pub color: Color,
    pub square: &'static str,
    /// (from, to) pairs; the first is the entering queen's move.
    pub line: &'static [(&'static str, &'static str)],
    /// Square of the piece that delivers the final mate.
    pub attacker: &'static str,
    pub reply_rule: ReplyRule,
    /// Line obtained by symmetry rather than taken from the figure.
    pub derived: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplyRule {
    /// The entering move mates by itself.
    None,
    /// The reply is the only legal move.
    OnlyLegal,
    /// The reply is forced by the mating obligation on the replying side.
    ReflexForced,
}

use Color::{Black, White};
use PieceKind::{Bishop, King, Pawn, Rook};

pub(super) const CHECKMATE: Figure = Figure {
    files: 5,
    ranks: 10,
    pieces: &[
        (Black, King, "d9"),
        (White, Pawn, "a1 b2 c3 d4 e5 e6 e7 a4 b5 c6 c7"),
        (Black, Pawn, "a2 b3 c4 d5 a5 b6 c8 c9 c10 d10 e8 e9 e10"),
    ],
    harness: &[(White, King, "e1")],
    exceptions: &[],
    entries: &[EntryData {
        color: White,
        square: "a3",
        line: &[("a3", "d6")],
        attacker: "d6",
        reply_rule: ReplyRule::None,
        derived: false,
    }],
};

pub(super) const REFLEXMATE: Figure = Figure {
    files: 8,
    ranks: 12,
    pieces: &[
        (White, King, "e9"),
        (White, Pawn, "a1 b2 c3 d4 a4 b5 c6 d8 f5 h5"),
        (
            Black,
            Pawn,
            "a2 b3 c4 d5 a5 b6 c7 d9 e10 e11 e12 f6 f7 f8 f9 g8 g9 g10 g11 g12 h6 h7 h8",
        ),
        (Black, Bishop, "f11 g7"),
    ],
    // Black king in the far corner, boxed in: a11/c11 block the bishop on
    // b12, a10/c10 jam those pawns and cover b11.
    harness: &[
        (Black, King, "a12"),
        (Black, Bishop, "b12"),
        (Black, Pawn, "a11 c11"),
        (White, Pawn, "a10 c10"),
    ],
    exceptions: &[],
    entries: &[EntryData {
        color: White,
        square: "a3",
        line: &[("a3", "e7"), ("f8", "e7")],
        attacker: "g7",
        reply_rule: ReplyRule::ReflexForced,
        derived: false,
    }],
};

pub(super) const SELFMATE: Figure = Figure {
    files: 15,
    ranks: 16,
    pieces: &[
        (White, King, "l5"),
        (Black, King, "l12"),
        (
            White,
            Pawn,
            "a3 b2 c1 d2 a6 b5 c4 a10 b11 c12 a13 b14 c15 d14 m1 o1 l9 l10 l11 n9 n10 n11 n12 m12 m14 m15 o13 o14 o15",
        ),
        (
            Black,
            Pawn,
            "a4 b3 c2 d3 a7 b6 c5 a11 b12 c13 a14 b15 c16 d15 l6 l7 l8 n5 n6 n7 n8 m2 m3 m5 o2 o3 o4 m16 o16",
        ),
        (Black, Bishop, "m7 n3"),
        (Black, Rook, "m4 n4"),
        (White, Bishop, "m10 n14"),
        (White, Rook, "m13 n13"),
    ],
    harness: &[],
    exceptions: &["m4", "m13"],
    entries: &[
        EntryData {
            color: White,
            square: "a5",
            line: &[("a5", "c3"), ("m4", "d4")],
            attacker: "n3",
            reply_rule: ReplyRule::OnlyLegal,
            derived: false,
        },
        EntryData {
            color: Black,
            square: "a12",
            line: &[("a12", "c14"), ("m13", "d13")],
            attacker: "n14",
            reply_rule: ReplyRule::OnlyLegal,
            derived: true,
        },
    ],
};

pub(super) const SEMI_REFLEXMATE: Figure = Figure {
    files: 15,
    ranks: 18,
    pieces: &[
        (White, King, "l7"),
        (Black, King, "l14"),
        (
            White,
            Pawn,
            "a12 b13 c14 a15 b16 c17 d16 m3 o3 l11 l12 l13 n11 n12 n13 n14 m14 m16 m17 o15 o16 o17 g1 h2 i3 j4 k6 j1 k2",
        ),
        (
            Black,
            Pawn,
            "a13 b14 c15 a16 b17 c18 d17 l8 l9 l10 n7 n8 n9 n10 m4 m5 m7 o4 o5 o6 m6 n6 m18 o18 f1 g2 h3 i4 j5 i1 j2 k3 k7",
        ),
        (Black, Bishop, "m9 n5"),
        (White, Bishop, "m12 n16"),
        (White, Rook, "m15 n15"),
    ],
    harness: &[],
    exceptions: &["m15"],
    entries: &[
        EntryData {
            color: White,
            square: "h1",
            line: &[("h1", "l5"), ("m6", "l5")],
            attacker: "n5",
            reply_rule: ReplyRule::ReflexForced,
            derived: false,
        },
        EntryData {
            color: Black,
            square: "a14",
            line: &[("a14", "c16"), ("m15", "d15")],
            attacker: "n16",
            reply_rule: ReplyRule::OnlyLegal,
            derived: false,
        },
    ],
};
